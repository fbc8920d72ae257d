//! The recursive solution space for the vanishing of 0-dimensional abelian
//! integrals.
//!
//! Dispatch on a cycle C of f = f_0 o ... o f_d:
//! - the zero cycle admits every g;
//! - a single monomial/Chebyshev factor gives the exponent space cut out by
//!   cyclotomic divisibility of the characteristic polynomial;
//! - a single two-transitive factor with a balanced chain gives the
//!   digit-orthogonality constraint against the Newton-Girard vector;
//! - an unbalanced cycle reduces to a sum of composition solutions over the
//!   right factors of f, each child solving the projected cycle;
//! - a balanced cycle peels the innermost factor h: for two-transitive h the
//!   digit combination sum s_i g_i must solve the projected problem, and for
//!   monomial/Chebyshev h the solution is g = gt(h)/(d-1) + u where gt
//!   solves the projected problem and u solves the invariant parts.

use crate::cycles::{allowed_exponents, invariant_parts, is_balanced, project, Chain};
use crate::decompose::{decompose_chain, DecompositionChain, FactorTag};
use crate::error::Error;
use crate::monodromy::{monodromy_generators, BlockSystem};
use crate::oracle::{integral_residuals, SamplePlan};
use crate::polycore::{
    chebyshev, compose, compose_all, f_adic_expand, power_sums, to_chebyshev_basis, GRat, Poly,
};
use crate::rng::SplitMix64;
use serde_json::{json, Value};

pub const DEFAULT_DEPTH_BUDGET: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    Power,
    Chebyshev,
}

impl BaseKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BaseKind::Power => "power",
            BaseKind::Chebyshev => "chebyshev",
        }
    }

    fn from_tag(tag: FactorTag) -> Option<BaseKind> {
        match tag {
            FactorTag::MonomialEquiv => Some(BaseKind::Power),
            FactorTag::ChebyshevEquiv => Some(BaseKind::Chebyshev),
            FactorTag::TwoTransitive => None,
        }
    }
}

/// Solutions over a monomial/Chebyshev core of degree m, precomposed with
/// the linear map pre: all sums of c_j(core(pre(z))) * E_j(pre(z)) with j in
/// the allowed exponent set and c_j free polynomials (E_j = z^j or T_j).
#[derive(Clone, Debug)]
pub struct ExponentsNode {
    pub kind: BaseKind,
    pub m: usize,
    pub allowed: Vec<usize>,
    pub pre: (GRat, GRat),
}

impl ExponentsNode {
    fn core(&self) -> Poly {
        match self.kind {
            BaseKind::Power => Poly::monomial(self.m, GRat::one()),
            BaseKind::Chebyshev => chebyshev(self.m),
        }
    }

    fn pre_poly(&self) -> Poly {
        Poly::linear(self.pre.0.clone(), self.pre.1.clone())
    }

    fn basis_elem(&self, j: usize) -> Poly {
        match self.kind {
            BaseKind::Power => Poly::monomial(j, GRat::one()),
            BaseKind::Chebyshev => chebyshev(j),
        }
    }

    /// Rewrite g in the pre-image coordinate y = pre(z).
    fn to_inner_coords(&self, g: &Poly) -> Poly {
        let (a, b) = &self.pre;
        let a_inv = a.inv();
        g.affine_sub(&a_inv, &-&(b * &a_inv))
    }

    /// Residue classes mod m present in g (power basis or Chebyshev basis).
    fn residues(&self, g: &Poly) -> Vec<usize> {
        let inner = self.to_inner_coords(g);
        let coeffs = match self.kind {
            BaseKind::Power => inner.coeffs().to_vec(),
            BaseKind::Chebyshev => to_chebyshev_basis(&inner),
        };
        let mut out: Vec<usize> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, _)| e % self.m)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn residue_allowed(&self, r: usize) -> bool {
        match self.kind {
            BaseKind::Power => self.allowed.contains(&r),
            // T_{km+j} and T_{km-j} generate each other, so a residue and
            // its mirror are interchangeable
            BaseKind::Chebyshev => {
                self.allowed.contains(&r) || self.allowed.contains(&((self.m - r) % self.m))
            }
        }
    }

    pub fn is_member(&self, g: &Poly) -> bool {
        self.residues(g).iter().all(|&r| self.residue_allowed(r))
    }
}

/// Digit orthogonality against the Newton-Girard vector of f: the f-adic
/// digit vector of g must satisfy sum s_i g_i(t) = 0.
#[derive(Clone, Debug)]
pub struct DigitOrthogonalNode {
    pub f: Poly,
    pub s: Vec<GRat>,
}

/// Inner two-transitive factor h of degree d: g = sum z^i g_i(h) is a
/// solution iff gt = sum s_i g_i solves the projected problem.
#[derive(Clone, Debug)]
pub struct PowerSumLiftNode {
    pub h: Poly,
    pub s: Vec<GRat>,
    pub projected: Box<SolutionSpace>,
}

/// Inner monomial/Chebyshev factor of degree d: g = gt(h)/(d-1) + u with gt
/// solving the projected problem and u solving every invariant part.
#[derive(Clone, Debug)]
pub struct InvariantPartLiftNode {
    /// the effective inner polynomial core(pre(z))
    pub h: Poly,
    pub kind: BaseKind,
    pub d: usize,
    pub pre: (GRat, GRat),
    pub projected: Box<SolutionSpace>,
    pub parts: Vec<ExponentsNode>,
    /// intersection of the parts' allowed sets
    pub allowed: Vec<usize>,
}

impl InvariantPartLiftNode {
    /// The exponent space the u component ranges over.
    pub fn u_node(&self) -> ExponentsNode {
        ExponentsNode {
            kind: self.kind,
            m: self.d,
            allowed: self.allowed.clone(),
            pre: self.pre.clone(),
        }
    }
}

/// Sum of composition solutions over the right factors of f (the reduction
/// for unbalanced cycles): g = sum g_i o h_i with g_i solving the cycle
/// projected along h_i.
#[derive(Clone, Debug)]
pub struct CompositionSumNode {
    pub ambient: Poly,
    pub cycle: Chain,
    pub children: Vec<(Poly, SolutionSpace)>,
}

#[derive(Clone, Debug)]
pub enum SolutionSpace {
    /// every polynomial integrates to zero (the cycle is the zero chain)
    Full,
    /// only the zero polynomial
    Zero,
    Exponents(ExponentsNode),
    DigitOrthogonal(DigitOrthogonalNode),
    PowerSumLift(PowerSumLiftNode),
    InvariantPartLift(InvariantPartLiftNode),
    CompositionSum(CompositionSumNode),
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub depth_budget: usize,
    pub element_cap: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            depth_budget: DEFAULT_DEPTH_BUDGET,
            element_cap: crate::monodromy::DEFAULT_ELEMENT_CAP,
        }
    }
}

// ---------------------------------------------------------------------------
// base cases
// ---------------------------------------------------------------------------

/// Exponent space for a chain of z^m or T_m: j is allowed iff
/// Phi_{m/gcd(m,j)} divides the characteristic polynomial of the chain.
pub fn solve_base_monomial_chebyshev(chain: &Chain, kind: BaseKind, m: usize) -> ExponentsNode {
    assert_eq!(chain.m(), m, "chain length must equal the base degree");
    ExponentsNode {
        kind,
        m,
        allowed: allowed_exponents(chain),
        pre: (GRat::one(), GRat::zero()),
    }
}

/// Balanced chain of a two-transitive polynomial: constant coefficient n.
/// n = 0 admits everything; otherwise the digit vector must be orthogonal to
/// the Newton-Girard vector. A non-constant balanced chain contradicts the
/// rigidity of two-transitive actions and signals an upstream monodromy bug.
pub fn solve_base_two_transitive(chain: &Chain, f: &Poly) -> Result<SolutionSpace, Error> {
    let m = f.degree().unwrap_or(0);
    assert_eq!(chain.m(), m);
    match chain.is_constant() {
        Some(0) => Ok(SolutionSpace::Full),
        Some(_) => Ok(SolutionSpace::DigitOrthogonal(DigitOrthogonalNode {
            f: f.clone(),
            s: power_sums(f, m)?,
        })),
        None => Err(Error::NonConstantBalanced),
    }
}

/// Particular solution of the inhomogeneous problem: the integral over the
/// chain equals p(t). Solvable iff the chain is not a cycle, with particular
/// solution (p o f) / (sum n_i).
pub fn solve_inhomogeneous(chain: &Chain, f: &Poly, p: &Poly) -> Result<Poly, Error> {
    if p.is_zero() {
        return Err(Error::InvalidInput(
            "right-hand side must be nonzero".into(),
        ));
    }
    let total = chain.sum();
    if total == 0 {
        return Err(Error::NoSolution);
    }
    Ok(compose(p, f).scale(&GRat::from_int(total).inv()))
}

// ---------------------------------------------------------------------------
// recursive solve
// ---------------------------------------------------------------------------

/// Solve the vanishing problem for a cycle of the composed polynomial of a
/// hypothesis-satisfying chain.
pub fn solve(
    chain: &DecompositionChain,
    cycle: &Chain,
    opts: &SolveOptions,
) -> Result<SolutionSpace, Error> {
    if !chain.hypothesis_ok {
        return Err(Error::HypothesisViolated(
            chain
                .hypothesis_witness
                .clone()
                .unwrap_or_else(|| "non-merging check failed".into()),
        ));
    }
    if cycle.m() != chain.degree() {
        return Err(Error::ShapeError(format!(
            "cycle length {} does not match deg f = {}",
            cycle.m(),
            chain.degree()
        )));
    }
    if !cycle.is_cycle() {
        return Err(Error::InvalidInput(
            "chain coefficients must sum to zero".into(),
        ));
    }
    solve_rec(chain, cycle, opts.depth_budget, opts)
}

fn solve_rec(
    chain: &DecompositionChain,
    cycle: &Chain,
    depth: usize,
    opts: &SolveOptions,
) -> Result<SolutionSpace, Error> {
    if depth == 0 {
        return Err(Error::DepthExceeded);
    }
    if cycle.is_zero() {
        return Ok(SolutionSpace::Full);
    }
    let m = chain.degree();
    if m <= 1 {
        // nonzero chain over a linear polynomial: only g = 0 integrates to 0
        return Ok(SolutionSpace::Zero);
    }

    if chain.factors.len() == 1 {
        let factor = &chain.factors[0];
        if let Some(kind) = BaseKind::from_tag(factor.class.tag) {
            let mut node = solve_base_monomial_chebyshev(cycle, kind, factor.class.core_degree);
            node.pre = factor.class.pre_linear.clone();
            return Ok(SolutionSpace::Exponents(node));
        }
    }

    let group = monodromy_generators(&chain.composed)?.group(opts.element_cap);
    let balanced = is_balanced(cycle, &group);

    if !balanced {
        return composition_sum(chain, cycle, depth, opts);
    }

    if chain.factors.len() == 1 {
        // single two-transitive factor with a balanced cycle
        return solve_base_two_transitive(cycle, &chain.composed);
    }

    // peel the innermost factor
    let inner = chain.innermost();
    let d = inner.poly.deg();
    let blocks = BlockSystem::residue_classes(m, d);
    let projected_cycle = project(cycle, &blocks)?;
    let prefix: Vec<Poly> = chain.factors[..chain.factors.len() - 1]
        .iter()
        .map(|f| f.poly.clone())
        .collect();

    match BaseKind::from_tag(inner.class.tag) {
        None => {
            // inner factor two-transitive: balanced cycles are constant on
            // blocks, and the digit combination must solve the projection
            for cell in blocks.blocks() {
                let first = cycle.coeff(cell[0]);
                if cell.iter().any(|&i| cycle.coeff(i) != first) {
                    return Err(Error::NonConstantBalanced);
                }
            }
            let s = power_sums(&inner.poly, d)?;
            let ftilde = compose_all(&prefix);
            let projected = solve_on_poly(&ftilde, &projected_cycle, depth - 1, opts)?;
            Ok(SolutionSpace::PowerSumLift(PowerSumLiftNode {
                h: inner.poly.clone(),
                s,
                projected: Box::new(projected),
            }))
        }
        Some(kind) => {
            // inner factor monomial/Chebyshev: post-linear moves to the
            // outer side, the core with its pre-linear stays inside
            let pre = inner.class.pre_linear.clone();
            let h_eff = compose(
                &inner.class.core(),
                &Poly::linear(pre.0.clone(), pre.1.clone()),
            );
            let post = Poly::linear(
                inner.class.post_linear.0.clone(),
                inner.class.post_linear.1.clone(),
            );
            let ftilde = compose(&compose_all(&prefix), &post);
            let parts: Vec<ExponentsNode> = invariant_parts(cycle, &blocks)?
                .iter()
                .map(|part| {
                    let mut node = solve_base_monomial_chebyshev(part, kind, d);
                    node.pre = pre.clone();
                    node
                })
                .collect();
            let allowed: Vec<usize> = (0..d)
                .filter(|j| parts.iter().all(|p| p.allowed.contains(j)))
                .collect();
            let projected = solve_on_poly(&ftilde, &projected_cycle, depth - 1, opts)?;
            Ok(SolutionSpace::InvariantPartLift(InvariantPartLiftNode {
                h: h_eff,
                kind,
                d,
                pre,
                projected: Box::new(projected),
                parts,
                allowed,
            }))
        }
    }
}

/// Solve over an arbitrary composite (used for the recursive projections):
/// degree < 2 collapses to Full/Zero, otherwise decompose and recurse.
fn solve_on_poly(
    f: &Poly,
    cycle: &Chain,
    depth: usize,
    opts: &SolveOptions,
) -> Result<SolutionSpace, Error> {
    if cycle.is_zero() {
        return Ok(SolutionSpace::Full);
    }
    if f.deg() < 2 {
        return Ok(if cycle.is_zero() {
            SolutionSpace::Full
        } else {
            SolutionSpace::Zero
        });
    }
    let chain = decompose_chain(f)?;
    if !chain.hypothesis_ok {
        return Err(Error::HypothesisViolated(
            chain
                .hypothesis_witness
                .unwrap_or_else(|| "projected factor merges".into()),
        ));
    }
    solve_rec(&chain, cycle, depth, opts)
}

/// Unbalanced reduction: one summand per right factor of f, plus the always
/// admissible summand through f itself (its projection is the zero chain).
fn composition_sum(
    chain: &DecompositionChain,
    cycle: &Chain,
    depth: usize,
    opts: &SolveOptions,
) -> Result<SolutionSpace, Error> {
    let m = chain.degree();
    let mut children: Vec<(Poly, SolutionSpace)> = Vec::new();
    for (ftilde, h) in crate::decompose::enumerate_right_factors(chain) {
        let d = h.deg();
        let blocks = BlockSystem::residue_classes(m, d);
        let projected_cycle = project(cycle, &blocks)?;
        let space = solve_on_poly(&ftilde, &projected_cycle, depth - 1, opts)?;
        children.push((h, space));
    }
    if !children.iter().any(|(h, _)| h.deg() == m) {
        // composing with f itself always integrates a cycle to zero
        children.push((chain.composed.clone(), SolutionSpace::Full));
    }
    Ok(SolutionSpace::CompositionSum(CompositionSumNode {
        ambient: chain.composed.clone(),
        cycle: cycle.clone(),
        children,
    }))
}

// ---------------------------------------------------------------------------
// sampling
// ---------------------------------------------------------------------------

/// Deterministic pseudo-random members of the space with total degree at
/// most degree_bound. An empty result means the space holds nothing nonzero
/// at this bound.
pub fn sample_solutions(
    space: &SolutionSpace,
    degree_bound: usize,
    count: usize,
    seed: u64,
) -> Vec<Poly> {
    let mut rng = SplitMix64::new(seed ^ 0x5EED_CAFE);
    let mut out = Vec::new();
    for _ in 0..count {
        if let Some(sample) = sample_one(space, degree_bound, &mut rng) {
            if !sample.is_zero() {
                out.push(sample);
            }
        }
    }
    out
}

fn random_poly(rng: &mut SplitMix64, deg_bound: usize) -> Poly {
    let mut coeffs: Vec<GRat> = (0..=deg_bound)
        .map(|_| GRat::from_int(rng.int_in(-3, 3)))
        .collect();
    let last = coeffs.len() - 1;
    if coeffs[last].is_zero() {
        coeffs[last] = GRat::from_int(rng.nonzero_int_in(-3, 3));
    }
    Poly::new(coeffs)
}

fn sample_one(space: &SolutionSpace, bound: usize, rng: &mut SplitMix64) -> Option<Poly> {
    match space {
        SolutionSpace::Full => Some(random_poly(rng, bound)),
        SolutionSpace::Zero => None,
        SolutionSpace::Exponents(node) => sample_exponents(node, bound, rng),
        SolutionSpace::DigitOrthogonal(node) => {
            let m = node.f.deg();
            let digits = sample_orthogonal_digits(&node.s, m, bound, rng)?;
            Some(assemble_digits(&digits, &node.f))
        }
        SolutionSpace::PowerSumLift(node) => {
            let d = node.h.deg();
            let slot = bound / d;
            let gt = sample_one(&node.projected, slot, rng).unwrap_or_else(Poly::zero);
            // particular digit vector g_0 = gt/s_0 plus a random kernel part
            let mut digits = sample_orthogonal_digits(&node.s, d, bound, rng)?;
            digits[0] = &digits[0] + &gt.scale(&node.s[0].inv());
            Some(assemble_digits(&digits, &node.h))
        }
        SolutionSpace::InvariantPartLift(node) => {
            let slot = bound / node.d;
            let gt = sample_one(&node.projected, slot, rng).unwrap_or_else(Poly::zero);
            let u = sample_exponents(&node.u_node(), bound, rng).unwrap_or_else(Poly::zero);
            let scale = GRat::from_int(node.d as i64 - 1).inv();
            Some(&compose(&gt, &node.h).scale(&scale) + &u)
        }
        SolutionSpace::CompositionSum(node) => {
            let mut acc = Poly::zero();
            for (h, child) in &node.children {
                let slot = bound / h.deg().max(1);
                if let Some(g) = sample_one(child, slot, rng) {
                    acc = &acc + &compose(&g, h);
                }
            }
            Some(acc)
        }
    }
}

fn sample_exponents(node: &ExponentsNode, bound: usize, rng: &mut SplitMix64) -> Option<Poly> {
    let usable: Vec<usize> = node
        .allowed
        .iter()
        .copied()
        .filter(|&j| j <= bound)
        .collect();
    if usable.is_empty() {
        return None;
    }
    let h_eff = compose(&node.core(), &node.pre_poly());
    let pre = node.pre_poly();
    let mut acc = Poly::zero();
    let mut used_any = false;
    for &j in &usable {
        // include each exponent with probability ~2/3
        if rng.next_u64().is_multiple_of(3) && usable.len() > 1 {
            continue;
        }
        used_any = true;
        let slot = (bound - j) / node.m;
        let c = random_poly(rng, slot);
        let term = &compose(&c, &h_eff) * &compose(&node.basis_elem(j), &pre);
        acc = &acc + &term;
    }
    if !used_any {
        let j = usable[rng.next_u64() as usize % usable.len()];
        let slot = (bound - j) / node.m;
        let c = random_poly(rng, slot);
        acc = &compose(&c, &h_eff) * &compose(&node.basis_elem(j), &pre);
    }
    Some(acc)
}

/// Random digit vector orthogonal to s: digits 1.. are free, digit 0
/// balances (s_0 = deg never vanishes).
fn sample_orthogonal_digits(
    s: &[GRat],
    m: usize,
    bound: usize,
    rng: &mut SplitMix64,
) -> Option<Vec<Poly>> {
    let mut digits = vec![Poly::zero(); m];
    for (i, digit) in digits.iter_mut().enumerate().skip(1) {
        if i > bound {
            break;
        }
        let slot = (bound - i) / m;
        if rng.next_u64().is_multiple_of(2) {
            *digit = random_poly(rng, slot);
        }
    }
    let mut balance = Poly::zero();
    for i in 1..m {
        balance = &balance + &digits[i].scale(&s[i]);
    }
    digits[0] = -&balance.scale(&s[0].inv());
    Some(digits)
}

fn assemble_digits(digits: &[Poly], base: &Poly) -> Poly {
    let mut acc = Poly::zero();
    for (i, d) in digits.iter().enumerate() {
        acc = &acc + &(&compose(d, base) * &Poly::monomial(i, GRat::one()));
    }
    acc
}

// ---------------------------------------------------------------------------
// membership
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    MemberExact,
    MemberNumeric { residual: f64 },
    NotMember { residual: Option<f64> },
    Inconclusive { residual: f64 },
}

impl Verdict {
    pub fn is_member(&self) -> bool {
        matches!(self, Verdict::MemberExact | Verdict::MemberNumeric { .. })
    }
}

/// Membership of g in the space: structural nodes decide exactly, sum nodes
/// defer to the numeric integral oracle over their own ambient data.
pub fn contains(
    space: &SolutionSpace,
    g: &Poly,
    f: &Poly,
    cycle: &Chain,
    plan: &SamplePlan,
) -> Result<Verdict, Error> {
    let _ = (f, cycle); // ambient data for sum nodes lives in the nodes
    contains_rec(space, g, plan)
}

fn contains_rec(space: &SolutionSpace, g: &Poly, plan: &SamplePlan) -> Result<Verdict, Error> {
    if g.is_zero() {
        // zero belongs to every space
        return Ok(Verdict::MemberExact);
    }
    match space {
        SolutionSpace::Full => Ok(Verdict::MemberExact),
        SolutionSpace::Zero => Ok(Verdict::NotMember { residual: None }),
        SolutionSpace::Exponents(node) => Ok(if node.is_member(g) {
            Verdict::MemberExact
        } else {
            Verdict::NotMember { residual: None }
        }),
        SolutionSpace::DigitOrthogonal(node) => {
            let exp = f_adic_expand(g, &node.f)?;
            let mut acc = Poly::zero();
            for (digit, si) in exp.digits.iter().zip(&node.s) {
                acc = &acc + &digit.scale(si);
            }
            Ok(if acc.is_zero() {
                Verdict::MemberExact
            } else {
                Verdict::NotMember { residual: None }
            })
        }
        SolutionSpace::PowerSumLift(node) => {
            let exp = f_adic_expand(g, &node.h)?;
            let mut gt = Poly::zero();
            for (digit, si) in exp.digits.iter().zip(&node.s) {
                gt = &gt + &digit.scale(si);
            }
            contains_rec(&node.projected, &gt, plan)
        }
        SolutionSpace::InvariantPartLift(node) => {
            // split g into residue classes of the inner coordinate
            let u_node = node.u_node();
            let inner = u_node.to_inner_coords(g);
            let coeffs = match node.kind {
                BaseKind::Power => inner.coeffs().to_vec(),
                BaseKind::Chebyshev => to_chebyshev_basis(&inner),
            };
            let mut class_zero = Vec::new();
            for (e, c) in coeffs.iter().enumerate() {
                let r = e % node.d;
                if r == 0 {
                    class_zero.push((e / node.d, c.clone()));
                } else if !u_node.residue_allowed(r) && !c.is_zero() {
                    return Ok(Verdict::NotMember { residual: None });
                }
            }
            if u_node.residue_allowed(0) {
                // the u component absorbs the whole class-zero content
                return Ok(Verdict::MemberExact);
            }
            // class-zero content must come from gt(h)/(d-1); in the
            // Chebyshev basis T_{kd} = T_k(T_d), so gt is reassembled from
            // Chebyshev coefficients there
            let gt = match node.kind {
                BaseKind::Power => {
                    let mut acc = Poly::zero();
                    for (k, c) in class_zero {
                        if !c.is_zero() {
                            acc = &acc + &Poly::monomial(k, c);
                        }
                    }
                    acc
                }
                BaseKind::Chebyshev => {
                    let top = class_zero.iter().map(|(k, _)| *k).max().unwrap_or(0);
                    let mut cheb_coeffs = vec![GRat::zero(); top + 1];
                    for (k, c) in class_zero {
                        cheb_coeffs[k] = c;
                    }
                    crate::polycore::from_chebyshev_basis(&cheb_coeffs)
                }
            };
            contains_rec(&node.projected, &gt, plan)
        }
        SolutionSpace::CompositionSum(node) => {
            let residuals = integral_residuals(&node.ambient, &node.cycle, g, plan)?;
            Ok(classify_residuals(&residuals, plan))
        }
    }
}

/// Three-valued verdict from per-sample residuals: member below the plan
/// tolerance, non-member when clearly nonzero at three or more samples,
/// inconclusive in between.
pub fn classify_residuals(residuals: &[f64], plan: &SamplePlan) -> Verdict {
    let max = residuals.iter().copied().fold(0.0, f64::max);
    if max < plan.tolerance {
        return Verdict::MemberNumeric { residual: max };
    }
    let clear = residuals.iter().filter(|&&r| r > 1e-4).count();
    if clear >= 3 {
        Verdict::NotMember {
            residual: Some(max),
        }
    } else {
        Verdict::Inconclusive { residual: max }
    }
}

// ---------------------------------------------------------------------------
// rendering
// ---------------------------------------------------------------------------

fn fmt_exponent_set(allowed: &[usize]) -> String {
    let parts: Vec<String> = allowed.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Human-readable tree mirroring the solution formulas.
pub fn render_text(space: &SolutionSpace, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match space {
        SolutionSpace::Full => format!("{pad}every polynomial g\n"),
        SolutionSpace::Zero => format!("{pad}only g = 0\n"),
        SolutionSpace::Exponents(node) => format!(
            "{pad}g = sum over allowed j of c_j(core) * {} with j in {} (core degree {})\n",
            match node.kind {
                BaseKind::Power => "z^j",
                BaseKind::Chebyshev => "T_j",
            },
            fmt_exponent_set(&node.allowed),
            node.m,
        ),
        SolutionSpace::DigitOrthogonal(node) => {
            let s: Vec<String> = node.s.iter().map(|v| v.to_coeff_string()).collect();
            format!(
                "{pad}digit constraint: sum s_i g_i = 0 with s = ({})\n",
                s.join(", ")
            )
        }
        SolutionSpace::PowerSumLift(node) => {
            let s: Vec<String> = node.s.iter().map(|v| v.to_coeff_string()).collect();
            let mut out = format!(
                "{pad}g = sum z^i g_i(h) with sum s_i g_i = gt, s = ({}), h = {}\n",
                s.join(", "),
                node.h
            );
            out.push_str(&format!("{pad}where gt solves the projected problem:\n"));
            out.push_str(&render_text(&node.projected, indent + 1));
            out
        }
        SolutionSpace::InvariantPartLift(node) => {
            let mut out = format!(
                "{pad}g = gt(h)/(d-1) + u with d = {}, h = {}, u-exponents {} (mod {})\n",
                node.d,
                node.h,
                fmt_exponent_set(&node.allowed),
                node.d,
            );
            out.push_str(&format!("{pad}where gt solves the projected problem:\n"));
            out.push_str(&render_text(&node.projected, indent + 1));
            out
        }
        SolutionSpace::CompositionSum(node) => {
            let mut out = format!(
                "{pad}g = sum of g_i o h_i over {} right factor(s):\n",
                node.children.len()
            );
            for (h, child) in &node.children {
                out.push_str(&format!("{pad}  through h = {h} (degree {}):\n", h.deg()));
                out.push_str(&render_text(child, indent + 2));
            }
            out
        }
    }
}

/// JSON tree of the space (kinds, exponent sets, constraint vectors,
/// children).
pub fn space_to_json(space: &SolutionSpace) -> Value {
    match space {
        SolutionSpace::Full => json!({"node": "full"}),
        SolutionSpace::Zero => json!({"node": "zero"}),
        SolutionSpace::Exponents(node) => json!({
            "node": "exponents",
            "kind": node.kind.as_str(),
            "degree": node.m,
            "allowed": node.allowed,
            "pre_linear": [node.pre.0.to_coeff_string(), node.pre.1.to_coeff_string()],
        }),
        SolutionSpace::DigitOrthogonal(node) => json!({
            "node": "digit_orthogonal",
            "f": crate::polycore::poly_to_strings(&node.f),
            "newton_girard": node.s.iter().map(|v| v.to_coeff_string()).collect::<Vec<_>>(),
        }),
        SolutionSpace::PowerSumLift(node) => json!({
            "node": "power_sum_lift",
            "h": crate::polycore::poly_to_strings(&node.h),
            "newton_girard": node.s.iter().map(|v| v.to_coeff_string()).collect::<Vec<_>>(),
            "projected": space_to_json(&node.projected),
        }),
        SolutionSpace::InvariantPartLift(node) => json!({
            "node": "invariant_part_lift",
            "kind": node.kind.as_str(),
            "inner_degree": node.d,
            "h": crate::polycore::poly_to_strings(&node.h),
            "allowed": node.allowed,
            "parts": node.parts.iter().map(|p| json!({
                "allowed": p.allowed,
            })).collect::<Vec<_>>(),
            "projected": space_to_json(&node.projected),
        }),
        SolutionSpace::CompositionSum(node) => json!({
            "node": "composition_sum",
            "children": node.children.iter().map(|(h, child)| json!({
                "h": crate::polycore::poly_to_strings(h),
                "inner_degree": h.deg(),
                "space": space_to_json(child),
            })).collect::<Vec<_>>(),
        }),
    }
}

/// Convenience: the expanded allowed exponent set of a monomial-type space
/// up to a degree bound (used by reports and tests).
pub fn expanded_exponents(node: &ExponentsNode, bound: usize) -> Vec<usize> {
    (0..=bound)
        .filter(|&e| node.residue_allowed(e % node.m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::Chain;
    use crate::decompose::decompose_chain;
    use crate::polycore::Poly;

    fn z_pow(n: usize) -> Poly {
        Poly::monomial(n, GRat::one())
    }

    #[test]
    fn base_exponent_spaces() {
        let node = solve_base_monomial_chebyshev(
            &Chain::new(vec![1, -1, 1, -1, 1, -1]),
            BaseKind::Power,
            6,
        );
        assert_eq!(node.allowed, vec![0, 1, 2, 4, 5]);
        assert!(!node.is_member(&z_pow(3)));
        assert!(node.is_member(&z_pow(2)));
        assert!(node.is_member(&(&z_pow(7) + &z_pow(6)))); // 7 = 6+1, 6 = 6+0

        let node2 = solve_base_monomial_chebyshev(
            &Chain::new(vec![2, -1, -1, 2, -1, -1]),
            BaseKind::Power,
            6,
        );
        assert_eq!(node2.allowed, vec![0, 1, 3, 5]);
    }

    #[test]
    fn base_two_transitive() {
        let f = Poly::from_int_coeffs(&[0, -1, 0, 1]); // z^3 - z
        let space = solve_base_two_transitive(&Chain::new(vec![1, 1, 1]), &f).unwrap();
        let SolutionSpace::DigitOrthogonal(node) = &space else {
            panic!("expected digit constraint")
        };
        assert_eq!(
            node.s,
            vec![GRat::from_int(3), GRat::zero(), GRat::from_int(2)]
        );
        // g = 2 - 3z^2 satisfies 3*2 + 2*(-3) = 0
        let g = Poly::from_int_coeffs(&[2, 0, -3]);
        let plan = SamplePlan::default();
        assert_eq!(
            contains(&space, &g, &f, &Chain::new(vec![1, 1, 1]), &plan).unwrap(),
            Verdict::MemberExact
        );
        let bad = Poly::from_int_coeffs(&[1]);
        assert_eq!(
            contains(&space, &bad, &f, &Chain::new(vec![1, 1, 1]), &plan).unwrap(),
            Verdict::NotMember { residual: None }
        );
        // zero cycle admits everything
        assert!(matches!(
            solve_base_two_transitive(&Chain::zero(3), &f).unwrap(),
            SolutionSpace::Full
        ));
        // non-constant balanced chain is a contract violation
        assert!(matches!(
            solve_base_two_transitive(&Chain::new(vec![1, 0, 0]), &f),
            Err(Error::NonConstantBalanced)
        ));
    }

    #[test]
    fn inhomogeneous_solutions() {
        let f = Poly::from_int_coeffs(&[-1, 0, 2, 1]);
        // single point with weight 2: g = p o f / 2
        let g = solve_inhomogeneous(&Chain::new(vec![2]), &f, &Poly::var()).unwrap();
        assert_eq!(g, f.scale(&GRat::from_ratio(1, 2)));
        assert!(matches!(
            solve_inhomogeneous(&Chain::new(vec![1, -1]), &f, &Poly::one()),
            Err(Error::NoSolution)
        ));
        let g = solve_inhomogeneous(&Chain::new(vec![1, 1, 1]), &f, &Poly::var()).unwrap();
        assert_eq!(g, f.scale(&GRat::from_ratio(1, 3)));
    }

    #[test]
    fn sampler_respects_exponent_sets() {
        let node = ExponentsNode {
            kind: BaseKind::Power,
            m: 6,
            allowed: vec![0, 1, 2, 4, 5],
            pre: (GRat::one(), GRat::zero()),
        };
        let space = SolutionSpace::Exponents(node.clone());
        let samples = sample_solutions(&space, 5, 20, 99);
        assert!(!samples.is_empty());
        for s in &samples {
            assert!(node.is_member(s));
            assert!(s.coeff(3).is_zero(), "z^3 must never appear");
            assert!(s.deg() <= 5);
        }
    }

    #[test]
    fn digit_kernel_sampling_at_low_bound() {
        // digits are constants at bound 2: the kernel of s = (3, 0, 2) is
        // spanned by 2 - 3z^2 and z
        let f = Poly::from_int_coeffs(&[0, -1, 0, 1]);
        let space = solve_base_two_transitive(&Chain::new(vec![1, 1, 1]), &f).unwrap();
        let samples = sample_solutions(&space, 2, 20, 0x11);
        assert!(!samples.is_empty());
        let plan = SamplePlan::default();
        for g in &samples {
            assert!(g.deg() <= 2);
            assert_eq!(
                contains(&space, g, &f, &Chain::new(vec![1, 1, 1]), &plan).unwrap(),
                Verdict::MemberExact,
                "sample {g} violates the digit constraint"
            );
        }
    }

    #[test]
    fn solve_sextic_monomial() {
        let chain = decompose_chain(&z_pow(6)).unwrap();
        let space = solve(
            &chain,
            &Chain::new(vec![1, -1, 1, -1, 1, -1]),
            &SolveOptions::default(),
        )
        .unwrap();
        let SolutionSpace::Exponents(node) = &space else {
            panic!("expected exponents")
        };
        assert_eq!(node.allowed, vec![0, 1, 2, 4, 5]);
    }

    #[test]
    fn solve_zero_cycle_is_full() {
        let chain = decompose_chain(&z_pow(4)).unwrap();
        let space = solve(&chain, &Chain::zero(4), &SolveOptions::default()).unwrap();
        assert!(matches!(space, SolutionSpace::Full));
    }

    #[test]
    fn solve_rejects_non_cycles() {
        let chain = decompose_chain(&z_pow(4)).unwrap();
        assert!(matches!(
            solve(
                &chain,
                &Chain::new(vec![1, 0, 0, 0]),
                &SolveOptions::default()
            ),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn solve_unbalanced_cycle_of_primitive() {
        // unbalanced cycle over a two-transitive cubic: solutions are k0 o f
        let f = Poly::from_int_coeffs(&[0, 1, -1, 1]);
        let chain = decompose_chain(&f).unwrap();
        let space = solve(
            &chain,
            &Chain::new(vec![1, -1, 0]),
            &SolveOptions::default(),
        )
        .unwrap();
        let SolutionSpace::CompositionSum(node) = &space else {
            panic!("expected sum")
        };
        assert_eq!(node.children.len(), 1);
        assert_eq!(node.children[0].0, f);
        assert!(matches!(node.children[0].1, SolutionSpace::Full));
    }
}
