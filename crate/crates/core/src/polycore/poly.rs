//! Dense univariate polynomials over the Gaussian rationals.
//!
//! Coefficients are stored lowest degree first and the top coefficient is
//! kept nonzero (the zero polynomial has an empty coefficient vector).
//! Degrees here are desk scale, so dense O(n^2) arithmetic is used
//! throughout.

use crate::error::Error;
use crate::polycore::scalar::{GRat, Rational};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<GRat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GRat>) -> Self {
        while coeffs.last().is_some_and(GRat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(GRat::one())
    }

    pub fn constant(c: GRat) -> Self {
        Poly::new(vec![c])
    }

    /// The identity polynomial z.
    pub fn var() -> Self {
        Poly::new(vec![GRat::zero(), GRat::one()])
    }

    /// c * z^n
    pub fn monomial(n: usize, c: GRat) -> Self {
        let mut coeffs = vec![GRat::zero(); n + 1];
        coeffs[n] = c;
        Poly::new(coeffs)
    }

    pub fn linear(a: GRat, b: GRat) -> Self {
        Poly::new(vec![b, a])
    }

    pub fn from_int_coeffs(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&n| GRat::from_int(n)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as usize, treating the zero polynomial as degree 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[GRat] {
        &self.coeffs
    }

    /// Coefficient of z^k (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> GRat {
        self.coeffs.get(k).cloned().unwrap_or_else(GRat::zero)
    }

    pub fn leading(&self) -> GRat {
        self.coeffs.last().cloned().unwrap_or_else(GRat::zero)
    }

    pub fn scale(&self, c: &GRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        assert!(!self.is_zero(), "monic of zero polynomial");
        self.scale(&self.leading().inv())
    }

    pub fn eval(&self, z: &GRat) -> GRat {
        let mut acc = GRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * &GRat::from_int((i + 1) as i64))
                .collect(),
        )
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.deg();
        if self.coeffs.len() < div.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let inv_lead = div.leading().inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![GRat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] * &inv_lead;
            for j in 0..dd {
                rem[k - dd + j] = &rem[k - dd + j] - &(&q * &div.coeffs[j]);
            }
            rem[k] = GRat::zero();
            quot[k - dd] = q;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divrem(self).1.is_zero()
    }

    /// Exact quotient, or None when the division leaves a remainder.
    pub fn exact_div(&self, div: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(div);
        r.is_zero().then_some(q)
    }

    /// p(z + a): Taylor coefficients at a by repeated synthetic division.
    pub fn taylor_shift(&self, a: &GRat) -> Poly {
        let n = self.coeffs.len();
        if n == 0 || a.is_zero() {
            return self.clone();
        }
        let mut out = vec![GRat::zero(); n];
        let mut work = self.coeffs.clone();
        for item in out.iter_mut() {
            // divide work by (z - a): remainder is work(a), quotient replaces work
            let mut carry = GRat::zero();
            let mut q = Vec::with_capacity(work.len() - 1);
            for k in (1..work.len()).rev() {
                carry = &work[k] + &(&carry * a);
                q.push(carry.clone());
            }
            q.reverse();
            *item = &work[0] + &(&carry * a);
            work = q;
            if work.is_empty() {
                break;
            }
        }
        Poly::new(out)
    }

    /// p(a*z + b) by composition with a linear polynomial.
    pub fn affine_sub(&self, a: &GRat, b: &GRat) -> Poly {
        compose(self, &Poly::linear(a.clone(), b.clone()))
    }
}

/// outer(inner(z)), exact.
pub fn compose(outer: &Poly, inner: &Poly) -> Poly {
    let mut acc = Poly::zero();
    for c in outer.coeffs.iter().rev() {
        acc = &(&acc * inner) + &Poly::constant(c.clone());
    }
    acc
}

/// Compose a sequence of factors, outermost first.
pub fn compose_all(factors: &[Poly]) -> Poly {
    assert!(!factors.is_empty());
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = compose(&acc, f);
    }
    acc
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a, 'b> $trait<&'b Poly> for &'a Poly {
            type Output = Poly;
            fn $method(self, rhs: &'b Poly) -> Poly {
                let n = self.coeffs.len().max(rhs.coeffs.len());
                let mut out = Vec::with_capacity(n);
                for k in 0..n {
                    out.push(&self.coeff(k) $op &rhs.coeff(k));
                }
                Poly::new(out)
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

poly_binop!(Add, add, +);
poly_binop!(Sub, sub, -);

impl<'b> Mul<&'b Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &'b Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![GRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Mul<Poly> for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = match k {
                0 => format!("({})", c),
                1 => format!("({})*z", c),
                _ => format!("({})*z^{}", c, k),
            };
            if first {
                write!(f, "{term}")?;
                first = false;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// special families
// ---------------------------------------------------------------------------

/// Chebyshev polynomial of the first kind, T_n.
pub fn chebyshev(n: usize) -> Poly {
    let mut t0 = Poly::one();
    let mut t1 = Poly::var();
    if n == 0 {
        return t0;
    }
    let two_z = Poly::new(vec![GRat::zero(), GRat::from_int(2)]);
    for _ in 1..n {
        let next = &(&two_z * &t1) - &t0;
        t0 = t1;
        t1 = next;
    }
    t1
}

/// n-th cyclotomic polynomial, monic with integer coefficients.
pub fn cyclotomic(n: usize) -> Poly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut num = Poly::monomial(n, GRat::one());
    num = &num - &Poly::one(); // z^n - 1
    for d in crate::polycore::divisors(n) {
        if d < n {
            num = num
                .exact_div(&cyclotomic(d))
                .expect("cyclotomic division is exact");
        }
    }
    num
}

/// Power sums s_0..s_{count-1} of the roots of h(z) - w.
///
/// These come from Newton's identities applied to the coefficients of h and
/// are independent of w; asking for count > deg(h) is refused because s_k
/// for k >= deg(h) would depend on w.
pub fn power_sums(h: &Poly, count: usize) -> Result<Vec<GRat>, Error> {
    let d = match h.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::InvalidBase("power sums need deg(h) >= 1".into())),
    };
    if count > d {
        return Err(Error::OutOfRange(format!(
            "power sum index {} exceeds deg(h) = {}; higher sums depend on w",
            count - 1,
            d
        )));
    }
    let lead_inv = h.leading().inv();
    // elementary symmetric functions of the roots of h(z) - w; e_k for k < d
    // only involves the top coefficients, never the constant term.
    let mut e = vec![GRat::one()];
    for k in 1..count.max(1) {
        if k >= d {
            break;
        }
        let sign = if k % 2 == 0 {
            GRat::one()
        } else {
            -GRat::one()
        };
        e.push(&(&h.coeff(d - k) * &lead_inv) * &sign);
    }
    let mut s: Vec<GRat> = Vec::with_capacity(count);
    if count > 0 {
        s.push(GRat::from_int(d as i64));
    }
    for k in 1..count {
        // s_k = e_1 s_{k-1} - e_2 s_{k-2} + ... + (-1)^{k-1} k e_k
        let mut acc = GRat::zero();
        for j in 1..k {
            let sign = if j % 2 == 1 {
                GRat::one()
            } else {
                -GRat::one()
            };
            acc = &acc + &(&(&e[j] * &s[k - j]) * &sign);
        }
        let sign = if k % 2 == 1 {
            GRat::one()
        } else {
            -GRat::one()
        };
        let ke = &GRat::from_int(k as i64) * &e[k];
        acc = &acc + &(&ke * &sign);
        s.push(acc);
    }
    Ok(s)
}

// ---------------------------------------------------------------------------
// base-f expansion
// ---------------------------------------------------------------------------

/// g written as sum_k digit_k(f(z)) * z^k with deg of the z-part < deg f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FAdicExpansion {
    pub base: Poly,
    /// digit_k as a polynomial in t = f(z); length = deg(base).
    pub digits: Vec<Poly>,
}

impl FAdicExpansion {
    /// Reassemble sum_k digits_k(base(z)) * z^k; must reproduce the input.
    pub fn reassemble(&self) -> Poly {
        let mut acc = Poly::zero();
        for (k, d) in self.digits.iter().enumerate() {
            let in_z = compose(d, &self.base);
            acc = &acc + &(&in_z * &Poly::monomial(k, GRat::one()));
        }
        acc
    }
}

/// Expand g in base f by iterated division: g = sum r_j(z) f^j, then regroup
/// coefficients of each power of z into polynomials in t.
pub fn f_adic_expand(g: &Poly, f: &Poly) -> Result<FAdicExpansion, Error> {
    let m = match f.degree() {
        Some(m) if m >= 1 => m,
        _ => {
            return Err(Error::InvalidBase(
                "expansion base must have degree >= 1".into(),
            ))
        }
    };
    let mut remainders: Vec<Poly> = Vec::new();
    let mut cur = g.clone();
    while !cur.is_zero() {
        let (q, r) = cur.divrem(f);
        remainders.push(r);
        cur = q;
    }
    let mut digits = Vec::with_capacity(m);
    for k in 0..m {
        let digit = Poly::new(remainders.iter().map(|r| r.coeff(k)).collect());
        digits.push(digit);
    }
    Ok(FAdicExpansion {
        base: f.clone(),
        digits,
    })
}

// ---------------------------------------------------------------------------
// Chebyshev basis
// ---------------------------------------------------------------------------

/// Coefficients of p in the basis T_0, T_1, ..., T_deg(p).
pub fn to_chebyshev_basis(p: &Poly) -> Vec<GRat> {
    let mut rest = p.clone();
    let n = p.deg();
    let mut out = vec![GRat::zero(); n + 1];
    while let Some(d) = rest.degree() {
        let lead_t = if d == 0 {
            GRat::one()
        } else {
            GRat::from_rational(Rational::from_integer(
                num_bigint::BigInt::from(2).pow(d as u32 - 1),
            ))
        };
        let gamma = &rest.leading() / &lead_t;
        rest = &rest - &chebyshev(d).scale(&gamma);
        out[d] = gamma;
        if rest.deg() >= d && !rest.is_zero() {
            // cancellation must strictly reduce the degree
            unreachable!("chebyshev reduction did not reduce degree");
        }
    }
    out
}

pub fn from_chebyshev_basis(coeffs: &[GRat]) -> Poly {
    let mut acc = Poly::zero();
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &chebyshev(k).scale(c);
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// serialization helpers (external coefficient format)
// ---------------------------------------------------------------------------

pub fn poly_to_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(GRat::to_coeff_string).collect()
}

pub fn poly_from_strings(strings: &[String]) -> Result<Poly, Error> {
    let coeffs = strings
        .iter()
        .map(|s| GRat::parse(s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Error::InvalidInput)?;
    Ok(Poly::new(coeffs))
}
