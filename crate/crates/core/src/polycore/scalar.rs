//! Scalar arithmetic: arbitrary-precision rationals and Gaussian rationals.
//!
//! `GRat` is the coefficient field for every exact computation in this crate.
//! It is Q(i): pairs of reduced rationals. Divisibility questions (does a
//! cyclotomic polynomial divide a characteristic polynomial?) must be decided
//! exactly, which is why nothing in the exact layer ever touches floats.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Reduced arbitrary-precision rational with positive denominator.
pub type Rational = BigRational;

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact square root of a non-negative rational, if it exists in Q.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Gaussian rational: an element of Q(i) with reduced components.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GRat {
    pub re: Rational,
    pub im: Rational,
}

impl GRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        GRat { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GRat {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(rat(num, den))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GRat {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// re^2 + im^2, a non-negative rational.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in Q(i)");
        let n = self.norm();
        GRat {
            re: &self.re / &n,
            im: -(&self.im / &n),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GRat::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact square root in Q(i), if one exists. The representative returned
    /// has re > 0, or re == 0 and im >= 0.
    pub fn sqrt(&self) -> Option<GRat> {
        if self.is_zero() {
            return Some(GRat::zero());
        }
        if self.im.is_zero() {
            if !self.re.is_negative() {
                return rational_sqrt(&self.re).map(GRat::from_rational);
            }
            // sqrt of a negative rational is purely imaginary
            return rational_sqrt(&(-self.re.clone())).map(|r| GRat {
                re: Rational::zero(),
                im: r,
            });
        }
        // (a+bi)^2 = x+yi with a^2 = (x + |x+yi|)/2, b = y/(2a)
        let r = rational_sqrt(&self.norm())?;
        let a2 = (&self.re + &r) / rat_int(2);
        let a = rational_sqrt(&a2)?;
        if a.is_zero() {
            return None;
        }
        let b = &self.im / &(&a * rat_int(2));
        let cand = GRat { re: a, im: b };
        if &(&cand * &cand) == self {
            Some(canonical_sqrt_sign(cand))
        } else {
            None
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Serialize in the external coefficient format: "a/b" or "a/b+c/d*i".
    pub fn to_coeff_string(&self) -> String {
        if self.im.is_zero() {
            return fmt_rat(&self.re);
        }
        let im_abs = self.im.abs();
        let sign = if self.im.is_negative() { '-' } else { '+' };
        format!("{}{}{}*i", fmt_rat(&self.re), sign, fmt_rat(&im_abs))
    }

    /// Parse the external coefficient format; accepts "a/b", "a/b+c/d*i",
    /// "a/b-c/d*i" and a bare imaginary part "c/d*i".
    pub fn parse(s: &str) -> Result<GRat, String> {
        let s = s.trim().replace(' ', "");
        if s.is_empty() {
            return Err("empty coefficient".into());
        }
        if let Some(body) = s.strip_suffix("*i") {
            // find a sign separating re and im (not at position 0)
            if let Some(k) = find_separator(body) {
                let re = parse_rat(&body[..k])?;
                let im = parse_rat(&body[k..])?;
                return Ok(GRat { re, im });
            }
            return Ok(GRat {
                re: Rational::zero(),
                im: parse_rat(body)?,
            });
        }
        Ok(GRat {
            re: parse_rat(&s)?,
            im: Rational::zero(),
        })
    }
}

fn canonical_sqrt_sign(c: GRat) -> GRat {
    let flip = c.re.is_negative() || (c.re.is_zero() && c.im.is_negative());
    if flip {
        -&c
    } else {
        c
    }
}

fn find_separator(body: &str) -> Option<usize> {
    body.char_indices()
        .skip(1)
        .find(|&(_, ch)| ch == '+' || ch == '-')
        .map(|(k, _)| k)
}

fn fmt_rat(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| format!("bad rational '{s}'"))?;
    let d: BigInt = den.parse().map_err(|_| format!("bad rational '{s}'"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in '{s}'"));
    }
    Ok(BigRational::new(n, d))
}

macro_rules! grat_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a, 'b> $trait<&'b GRat> for &'a GRat {
            type Output = GRat;
            fn $method(self, rhs: &'b GRat) -> GRat {
                let $a = self;
                let $b = rhs;
                $body
            }
        }
        impl $trait<GRat> for GRat {
            type Output = GRat;
            fn $method(self, rhs: GRat) -> GRat {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

grat_binop!(Add, add, |a, b| GRat {
    re: &a.re + &b.re,
    im: &a.im + &b.im
});
grat_binop!(Sub, sub, |a, b| GRat {
    re: &a.re - &b.re,
    im: &a.im - &b.im
});
grat_binop!(Mul, mul, |a, b| GRat {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});
impl<'b> Div<&'b GRat> for &GRat {
    type Output = GRat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'b GRat) -> GRat {
        self * &rhs.inv()
    }
}

impl Div<GRat> for GRat {
    type Output = GRat;
    fn div(self, rhs: GRat) -> GRat {
        &self / &rhs
    }
}

impl Neg for &GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        GRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Neg for GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        -&self
    }
}

impl fmt::Debug for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_coeff_string())
    }
}

impl fmt::Display for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_coeff_string())
    }
}
