//! Canonical composition chains: refine f into primitive factors by the
//! classical coefficient-matching construction, fuse adjacent factors whose
//! composition is again monomial- or Chebyshev-equivalent, classify each
//! factor, and check the non-merging hypothesis on critical values.

use crate::error::Error;
use crate::monodromy::{monodromy_generators, DEFAULT_ELEMENT_CAP};
use crate::numeric::{all_roots, CPoly, C64};
use crate::polycore::{
    chebyshev, compose, compose_all, divisors, f_adic_expand, GRat, Poly, Rational,
};
use num_bigint::BigInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorTag {
    TwoTransitive,
    MonomialEquiv,
    ChebyshevEquiv,
}

impl FactorTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            FactorTag::TwoTransitive => "two-transitive",
            FactorTag::MonomialEquiv => "monomial-equivalent",
            FactorTag::ChebyshevEquiv => "chebyshev-equivalent",
        }
    }

    pub fn is_base(&self) -> bool {
        matches!(self, FactorTag::MonomialEquiv | FactorTag::ChebyshevEquiv)
    }
}

/// Classification of one factor p = post o core o pre with linear
/// pre(z) = a z + b and post(w) = c w + e; the core is z^n or T_n for the
/// two base classes, and p itself for two-transitive factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorClass {
    pub tag: FactorTag,
    pub pre_linear: (GRat, GRat),
    pub post_linear: (GRat, GRat),
    pub core_degree: usize,
}

impl FactorClass {
    fn plain(tag: FactorTag, core_degree: usize) -> Self {
        FactorClass {
            tag,
            pre_linear: (GRat::one(), GRat::zero()),
            post_linear: (GRat::one(), GRat::zero()),
            core_degree,
        }
    }

    /// The inner linear map applied before the core.
    pub fn pre(&self) -> Poly {
        Poly::linear(self.pre_linear.0.clone(), self.pre_linear.1.clone())
    }

    pub fn core(&self) -> Poly {
        match self.tag {
            FactorTag::MonomialEquiv => Poly::monomial(self.core_degree, GRat::one()),
            FactorTag::ChebyshevEquiv => chebyshev(self.core_degree),
            FactorTag::TwoTransitive => panic!("two-transitive factors have no core"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Factor {
    pub poly: Poly,
    pub class: FactorClass,
}

/// Ordered factor list f_0 o ... o f_d (outermost first) with class tags and
/// the non-merging hypothesis verdict for every cumulative prefix pair.
#[derive(Clone, Debug)]
pub struct DecompositionChain {
    pub factors: Vec<Factor>,
    pub composed: Poly,
    pub hypothesis_ok: bool,
    pub hypothesis_witness: Option<String>,
}

impl DecompositionChain {
    pub fn degree(&self) -> usize {
        self.composed.deg()
    }

    pub fn factor_degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.poly.deg()).collect()
    }

    pub fn factor_tags(&self) -> Vec<FactorTag> {
        self.factors.iter().map(|f| f.class.tag).collect()
    }

    pub fn innermost(&self) -> &Factor {
        self.factors.last().expect("chain has at least one factor")
    }
}

// ---------------------------------------------------------------------------
// splitting and refinement
// ---------------------------------------------------------------------------

/// Try to write f = outer o inner with deg(inner) = e, inner monic with
/// inner(0) = 0 (the twist-canonical representative). The candidate inner is
/// built by matching the top coefficients of f against inner^k, then the
/// split is verified exactly through the base-inner digit expansion.
pub fn split_once(f: &Poly, e: usize) -> Option<(Poly, Poly)> {
    let m = f.degree()?;
    if e < 2 || e >= m || m % e != 0 {
        return None;
    }
    let k = m / e;
    let lead_inv = f.leading().inv();
    let mut inner = Poly::monomial(e, GRat::one());
    for j in 1..e {
        // [z^(m-j)] of inner^k is k * c_{e-j} plus terms from known top
        // coefficients; lower outer terms cannot reach degree m - j
        let pw = poly_pow(&inner, k);
        let want = &f.coeff(m - j) * &lead_inv;
        let have = pw.coeff(m - j);
        let delta = &(&want - &have) / &GRat::from_int(k as i64);
        if !delta.is_zero() {
            inner = &inner + &Poly::monomial(e - j, delta);
        }
    }
    let expansion = f_adic_expand(f, &inner).ok()?;
    if expansion.digits[1..].iter().any(|d| !d.is_zero()) {
        return None;
    }
    let outer = expansion.digits[0].clone();
    debug_assert_eq!(compose(&outer, &inner), *f);
    Some((outer, inner))
}

fn poly_pow(p: &Poly, k: usize) -> Poly {
    let mut acc = Poly::one();
    for _ in 0..k {
        acc = &acc * p;
    }
    acc
}

/// Full refinement into primitive factors, outermost first.
fn refine(f: &Poly) -> Vec<Poly> {
    let m = f.deg();
    for e in divisors(m) {
        if e < 2 || e >= m {
            continue;
        }
        if let Some((outer, inner)) = split_once(f, e) {
            // inner has the smallest splittable degree, hence is primitive
            let mut chain = refine(&outer);
            chain.push(inner);
            return chain;
        }
    }
    vec![f.clone()]
}

// ---------------------------------------------------------------------------
// classification
// ---------------------------------------------------------------------------

/// Exact monomial-equivalence test: p = post o z^n o (z + b) iff the Taylor
/// expansion of p at the unique (n-1)-fold critical point has only the
/// constant and degree-n terms.
fn monomial_class(p: &Poly) -> Option<FactorClass> {
    let n = p.degree()?;
    if n < 2 {
        return None;
    }
    let dp = p.derivative();
    // p' must be lead * (z - r)^(n-1); r = -[z^(n-2)]p' / ((n-1) [z^(n-1)]p')
    let r = -&(&dp.coeff(n - 2) / &(&dp.leading() * &GRat::from_int((n - 1) as i64)));
    let shifted = p.taylor_shift(&r);
    if (1..n).any(|k| !shifted.coeff(k).is_zero()) {
        return None;
    }
    Some(FactorClass {
        tag: FactorTag::MonomialEquiv,
        pre_linear: (GRat::one(), -&r),
        post_linear: (shifted.coeff(n), shifted.coeff(0)),
        core_degree: n,
    })
}

/// Exact Chebyshev-equivalence test over Q(i): solve for the linear maps
/// from the top three coefficients, then verify the whole composition.
fn chebyshev_class(p: &Poly) -> Option<FactorClass> {
    let n = p.degree()?;
    if n < 3 {
        return None;
    }
    let pn = p.coeff(n);
    let kappa = &p.coeff(n - 1) / &(&pn * &GRat::from_int(n as i64));
    // p_{n-2}/p_n = C(n,2) kappa^2 - n / (4 a^2)
    let binom = GRat::from_rational(Rational::new(
        BigInt::from(n as i64 * (n as i64 - 1)),
        BigInt::from(2),
    ));
    let denom = &(&binom * &(&kappa * &kappa)) - &(&p.coeff(n - 2) / &pn);
    if denom.is_zero() {
        return None;
    }
    let a2 = &GRat::from_rational(Rational::new(BigInt::from(n as i64), BigInt::from(4))) / &denom;
    let a = a2.sqrt()?;
    let b = &kappa * &a;
    let two_pow = GRat::from_rational(Rational::from_integer(BigInt::from(2).pow(n as u32 - 1)));
    let c = &pn / &(&two_pow * &a.pow(n as u32));
    let core = compose(&chebyshev(n), &Poly::linear(a.clone(), b.clone()));
    let rest = p - &core.scale(&c);
    if !rest.is_constant() {
        return None;
    }
    Some(FactorClass {
        tag: FactorTag::ChebyshevEquiv,
        pre_linear: (a, b),
        post_linear: (c, rest.coeff(0)),
        core_degree: n,
    })
}

/// Base-class test only (no monodromy); used by the fusion pass.
fn classify_base(p: &Poly) -> Option<FactorClass> {
    monomial_class(p).or_else(|| chebyshev_class(p))
}

/// Classify a composition factor. Monomial equivalence is decided exactly;
/// then 2-transitivity by the pair-orbit test on monodromy generators, and
/// finally exact Chebyshev equivalence. In degree 3 the dihedral group is
/// the full symmetric group, so cubics can be both two-transitive and
/// Chebyshev-equivalent; they are reported as two-transitive.
pub fn classify_factor(p: &Poly) -> Result<FactorClass, Error> {
    let n = p.degree().unwrap_or(0);
    assert!(n >= 2, "classification needs deg p >= 2");
    if let Some(class) = monomial_class(p) {
        return Ok(class);
    }
    let mono = monodromy_generators(p)?;
    let group = mono.group(DEFAULT_ELEMENT_CAP);
    if group.is_two_transitive() {
        return Ok(FactorClass::plain(FactorTag::TwoTransitive, n));
    }
    if let Some(class) = chebyshev_class(p) {
        return Ok(class);
    }
    Err(Error::UnsupportedFactor(format!(
        "degree-{n} factor is neither two-transitive nor linearly equivalent to z^n or T_n"
    )))
}

// ---------------------------------------------------------------------------
// non-merging check
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct MergeWitness {
    pub condition: u8,
    pub value_a: C64,
    pub value_b: C64,
}

#[derive(Clone, Debug)]
pub struct MergeReport {
    pub ok: bool,
    pub exact: bool,
    pub witness: Option<MergeWitness>,
}

/// Check that the critical values of `ftilde` and `h` do not merge in
/// f = ftilde o h:
/// (1) the f-images of the two kinds of critical points are disjoint, and
/// (2) ftilde is injective on the critical values of h.
///
/// Decided exactly when every critical point of both factors lies in Q(i);
/// otherwise numerically, refusing with DegenerateGeometry when the margin
/// is too thin to call.
pub fn check_no_merge(ftilde: &Poly, h: &Poly) -> Result<MergeReport, Error> {
    assert!(
        ftilde.deg() >= 2 && h.deg() >= 2,
        "non-merging needs deg >= 2 on both sides"
    );
    if let (Some(ft_crit), Some(h_crit)) = (
        gaussian_rational_roots(&ftilde.derivative()),
        gaussian_rational_roots(&h.derivative()),
    ) {
        return Ok(check_no_merge_exact(ftilde, h, &ft_crit, &h_crit));
    }
    check_no_merge_numeric(ftilde, h)
}

fn check_no_merge_exact(ftilde: &Poly, h: &Poly, ft_crit: &[GRat], h_crit: &[GRat]) -> MergeReport {
    // set A: critical values of ftilde; set B: ftilde(critical values of h)
    let a_vals: Vec<GRat> = ft_crit.iter().map(|r| ftilde.eval(r)).collect();
    let h_vals: Vec<GRat> = {
        let mut vs: Vec<GRat> = h_crit.iter().map(|r| h.eval(r)).collect();
        vs.dedup_by(|x, y| x == y);
        let mut uniq: Vec<GRat> = Vec::new();
        for v in vs {
            if !uniq.contains(&v) {
                uniq.push(v);
            }
        }
        uniq
    };
    let b_vals: Vec<GRat> = h_vals.iter().map(|v| ftilde.eval(v)).collect();
    for av in &a_vals {
        for bv in &b_vals {
            if av == bv {
                return MergeReport {
                    ok: false,
                    exact: true,
                    witness: Some(MergeWitness {
                        condition: 1,
                        value_a: av.to_c64(),
                        value_b: bv.to_c64(),
                    }),
                };
            }
        }
    }
    for i in 0..h_vals.len() {
        for j in (i + 1)..h_vals.len() {
            if b_vals[i] == b_vals[j] {
                return MergeReport {
                    ok: false,
                    exact: true,
                    witness: Some(MergeWitness {
                        condition: 2,
                        value_a: h_vals[i].to_c64(),
                        value_b: h_vals[j].to_c64(),
                    }),
                };
            }
        }
    }
    MergeReport {
        ok: true,
        exact: true,
        witness: None,
    }
}

fn check_no_merge_numeric(ftilde: &Poly, h: &Poly) -> Result<MergeReport, Error> {
    let ftp = CPoly::from_poly(ftilde);
    let hp = CPoly::from_poly(h);
    let ft_crit = all_roots(&ftp.derivative())?;
    let h_crit = all_roots(&hp.derivative())?;
    let a_vals: Vec<C64> = ft_crit.iter().map(|&z| ftp.eval(z)).collect();
    let h_vals: Vec<C64> = h_crit.iter().map(|&z| hp.eval(z)).collect();
    let b_vals: Vec<C64> = h_vals.iter().map(|&w| ftp.eval(w)).collect();
    let scale = 1.0
        + a_vals
            .iter()
            .chain(&b_vals)
            .map(|v| v.norm())
            .fold(0.0, f64::max);
    let coincide_tol = 1e-10 * scale;
    let distinct_tol = 1e-8 * scale;

    let verdict = |d: f64, condition: u8, x: C64, y: C64| -> Option<Result<MergeReport, Error>> {
        if d <= coincide_tol {
            Some(Ok(MergeReport {
                ok: false,
                exact: false,
                witness: Some(MergeWitness {
                    condition,
                    value_a: x,
                    value_b: y,
                }),
            }))
        } else if d < distinct_tol {
            Some(Err(Error::DegenerateGeometry(format!(
                "critical-value distance {d:.3e} is inside the undecidable band"
            ))))
        } else {
            None
        }
    };
    for &av in &a_vals {
        for &bv in &b_vals {
            if let Some(out) = verdict((av - bv).norm(), 1, av, bv) {
                return out;
            }
        }
    }
    // injectivity of ftilde on the distinct critical values of h
    let h_scale = 1.0 + h_vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut h_distinct: Vec<C64> = Vec::new();
    for &v in &h_vals {
        if h_distinct.iter().all(|&w| (w - v).norm() > 1e-8 * h_scale) {
            h_distinct.push(v);
        }
    }
    for i in 0..h_distinct.len() {
        for j in (i + 1)..h_distinct.len() {
            let (x, y) = (ftp.eval(h_distinct[i]), ftp.eval(h_distinct[j]));
            if let Some(out) = verdict((x - y).norm(), 2, h_distinct[i], h_distinct[j]) {
                return out;
            }
        }
    }
    Ok(MergeReport {
        ok: true,
        exact: false,
        witness: None,
    })
}

/// All roots of p as exact Gaussian rationals (with multiplicity), or None
/// when some root does not rationalize.
fn gaussian_rational_roots(p: &Poly) -> Option<Vec<GRat>> {
    let deg = p.degree()?;
    if deg == 0 {
        return Some(vec![]);
    }
    let numeric = all_roots(&CPoly::from_poly(p)).ok()?;
    let mut rest = p.clone();
    let mut found: Vec<GRat> = Vec::new();
    let mut candidates: Vec<GRat> = Vec::new();
    for z in numeric {
        let re = rationalize(z.re)?;
        let im = rationalize(z.im)?;
        let cand = GRat::new(re, im);
        if !candidates.contains(&cand) {
            candidates.push(cand);
        }
    }
    for cand in candidates {
        if !rest.eval(&cand).is_zero() {
            continue;
        }
        let linear = Poly::new(vec![-&cand, GRat::one()]);
        while let Some(q) = rest.exact_div(&linear) {
            found.push(cand.clone());
            rest = q;
            if rest.is_constant() {
                break;
            }
        }
    }
    rest.is_constant()
        .then_some(found)
        .filter(|f| f.len() == deg)
}

/// Continued-fraction rationalization with a denominator bound; verified to
/// reproduce the float closely before being accepted.
fn rationalize(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    const MAX_DEN: i64 = 1_000_000;
    if x.abs() > 1e12 {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0i64, x.round() as i64, 1i64);
    let mut frac = x - x.round();
    for _ in 0..40 {
        let approx = p1 as f64 / q1 as f64;
        if (x - approx).abs() <= 1e-9 * (1.0 + x.abs()) {
            return Some(Rational::new(BigInt::from(p1), BigInt::from(q1)));
        }
        if frac.abs() < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor() as i64;
        let (p2, q2) = (
            a.checked_mul(p1)?.checked_add(p0)?,
            a.checked_mul(q1)?.checked_add(q0)?,
        );
        if q2.abs() > MAX_DEN {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        frac = inv - a as f64;
    }
    None
}

// ---------------------------------------------------------------------------
// the canonical chain
// ---------------------------------------------------------------------------

/// Maximal-refinement decomposition with adjacent base factors fused back
/// whenever their composition is itself monomial- or Chebyshev-equivalent
/// (a composition of pure monomials is a monomial, likewise for Chebyshev).
pub fn decompose_chain(f: &Poly) -> Result<DecompositionChain, Error> {
    let m = f.degree().unwrap_or(0);
    assert!(m >= 2, "decomposition needs deg f >= 2");
    let mut polys = refine(f);
    // fusion pass
    loop {
        let mut fused = false;
        for i in 0..polys.len().saturating_sub(1) {
            let cand = compose(&polys[i], &polys[i + 1]);
            if classify_base(&cand).is_some() {
                polys[i] = cand;
                polys.remove(i + 1);
                fused = true;
                break;
            }
        }
        if !fused {
            break;
        }
    }
    let mut factors = Vec::with_capacity(polys.len());
    for p in &polys {
        factors.push(Factor {
            poly: p.clone(),
            class: classify_factor(p)?,
        });
    }
    let (hypothesis_ok, hypothesis_witness) = evaluate_hypothesis(&polys);
    let composed = compose_all(&polys);
    debug_assert_eq!(&composed, f);
    Ok(DecompositionChain {
        factors,
        composed,
        hypothesis_ok,
        hypothesis_witness,
    })
}

/// The non-merging hypothesis over every cumulative prefix pair
/// (f_0 o ... o f_{k-1}, f_k).
fn evaluate_hypothesis(polys: &[Poly]) -> (bool, Option<String>) {
    for k in 1..polys.len() {
        let prefix = compose_all(&polys[..k]);
        match check_no_merge(&prefix, &polys[k]) {
            Ok(report) if report.ok => {}
            Ok(report) => {
                let w = report
                    .witness
                    .map(|w| {
                        format!(
                            "condition ({}) fails at factor {}: values {:.6}+{:.6}i vs {:.6}+{:.6}i",
                            w.condition, k, w.value_a.re, w.value_a.im, w.value_b.re, w.value_b.im
                        )
                    })
                    .unwrap_or_else(|| format!("merge at factor {k}"));
                return (false, Some(w));
            }
            Err(e) => {
                return (false, Some(format!("undecided at factor {k}: {e}")));
            }
        }
    }
    (true, None)
}

// ---------------------------------------------------------------------------
// right factors
// ---------------------------------------------------------------------------

/// All pairs (ftilde, h) with f = ftilde o h and deg h > 1, generated from
/// the proper tails of the chain, where a trailing monomial or Chebyshev
/// factor of core degree n also contributes one right factor per divisor
/// e | n, e > 1. Pairs are deduplicated up to the linear middle twist and
/// sorted by decreasing deg h.
pub fn enumerate_right_factors(chain: &DecompositionChain) -> Vec<(Poly, Poly)> {
    let polys: Vec<Poly> = chain.factors.iter().map(|f| f.poly.clone()).collect();
    let mut out: Vec<(Poly, Poly)> = Vec::new();
    let mut seen: Vec<Poly> = Vec::new();
    let push = |ftilde: Poly, h: Poly, seen: &mut Vec<Poly>, out: &mut Vec<(Poly, Poly)>| {
        let key = twist_canonical(&h);
        if !seen.contains(&key) {
            seen.push(key);
            out.push((ftilde, h));
        }
    };
    for k in 1..polys.len() {
        let ftilde = compose_all(&polys[..k]);
        let h = compose_all(&polys[k..]);
        push(ftilde, h, &mut seen, &mut out);
    }
    let trailing = chain.innermost();
    if trailing.class.tag.is_base() {
        let n = trailing.class.core_degree;
        let pre = trailing.class.pre();
        let (c, e0) = trailing.class.post_linear.clone();
        let post = Poly::linear(c, e0);
        for e in divisors(n) {
            if e <= 1 {
                continue;
            }
            let inner_core = match trailing.class.tag {
                FactorTag::MonomialEquiv => Poly::monomial(e, GRat::one()),
                FactorTag::ChebyshevEquiv => chebyshev(e),
                FactorTag::TwoTransitive => unreachable!(),
            };
            let outer_core = match trailing.class.tag {
                FactorTag::MonomialEquiv => Poly::monomial(n / e, GRat::one()),
                FactorTag::ChebyshevEquiv => chebyshev(n / e),
                FactorTag::TwoTransitive => unreachable!(),
            };
            let h = compose(&inner_core, &pre);
            let outer_part = compose(&post, &outer_core);
            let ftilde = if polys.len() >= 2 {
                compose(&compose_all(&polys[..polys.len() - 1]), &outer_part)
            } else {
                outer_part
            };
            debug_assert_eq!(compose(&ftilde, &h), chain.composed);
            push(ftilde, h, &mut seen, &mut out);
        }
    }
    out.sort_by_key(|(_, h)| std::cmp::Reverse(h.deg()));
    out
}

/// Twist-canonical representative of a right factor: monic with zero
/// constant term.
fn twist_canonical(h: &Poly) -> Poly {
    let monic = h.monic();
    &monic - &Poly::constant(monic.coeff(0))
}

/// The divisor set D(f): degrees of all right factors, plus 1 and deg f.
pub fn divisor_set(chain: &DecompositionChain) -> Vec<usize> {
    let mut out: Vec<usize> = enumerate_right_factors(chain)
        .iter()
        .map(|(_, h)| h.deg())
        .collect();
    out.push(1);
    out.push(chain.degree());
    out.sort_unstable();
    out.dedup();
    out
}
