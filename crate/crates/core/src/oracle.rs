//! Independent numerical and brute-force verification: direct evaluation of
//! the abelian integral along continued fibers, Newton-Girard cross-checks,
//! the Chebyshev closed form, brute-force balancedness over a full group
//! enumeration, and the semidirect-product structure check.

use crate::cycles::{characteristic_poly, Chain};
use crate::decompose::check_no_merge;
use crate::error::Error;
use crate::monodromy::{
    base_labeling, critical_data, monodromy_generators, normal_closure_elements, subgroup_closure,
    BlockSystem, ContinuationSettings, Labeling, PermGroup, Permutation,
};
use crate::numeric::{all_roots, CPoly, C64};
use crate::polycore::{compose, cyclotomic, power_sums, Poly};
use crate::rng::SplitMix64;
use std::collections::HashSet;

/// Where and how to sample: real points beyond every critical value (so a
/// single straight-line transport from the basepoint stays regular), a seed
/// for reproducibility, and the membership tolerance.
#[derive(Clone, Debug)]
pub struct SamplePlan {
    pub count: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            count: 10,
            seed: 0x5EED,
            tolerance: 1e-8,
        }
    }
}

impl SamplePlan {
    pub fn with_count(count: usize) -> Self {
        SamplePlan {
            count,
            ..Default::default()
        }
    }

    /// Real sample points in the regular band between the critical disk and
    /// the basepoint, sorted ascending.
    fn points(&self, max_crit: f64, t0: f64) -> Vec<f64> {
        let margin = 1e-3 * (1.0 + max_crit);
        let lo = max_crit + margin + 0.5;
        let hi = t0;
        let mut rng = SplitMix64::new(self.seed ^ 0x0C0FFEE);
        let mut pts: Vec<f64> = (0..self.count)
            .map(|_| lo + rng.next_f64() * (hi - lo).max(1e-3))
            .collect();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts
    }
}

/// Reusable evaluator: the labeled fiber is transported to every sample
/// point once, then any number of integrands can be tested.
pub struct IntegralEvaluator {
    pub labeling: Labeling,
    pub samples: Vec<f64>,
    fibers: Vec<Vec<C64>>,
}

impl IntegralEvaluator {
    pub fn new(f: &Poly, plan: &SamplePlan) -> Result<Self, Error> {
        Self::with_settings(f, plan, &ContinuationSettings::default())
    }

    /// The labeled fiber at each sample point, in sample order.
    pub fn fibers(&self) -> &[Vec<C64>] {
        &self.fibers
    }

    pub fn with_settings(
        f: &Poly,
        plan: &SamplePlan,
        settings: &ContinuationSettings,
    ) -> Result<Self, Error> {
        let labeling = base_labeling(f)?;
        let samples = plan.points(labeling.critical.max_value_abs(), labeling.t0);
        let mut fibers = Vec::with_capacity(samples.len());
        for &t in &samples {
            fibers.push(crate::monodromy::transport_fiber(
                f,
                &labeling,
                C64::new(t, 0.0),
                settings,
            )?);
        }
        Ok(IntegralEvaluator {
            labeling,
            samples,
            fibers,
        })
    }

    /// Per-sample relative residuals |sum n_i g(z_i)| / (1 + max |g(z_i)|).
    pub fn residuals(&self, chain: &Chain, g: &Poly) -> Vec<f64> {
        let gp = CPoly::from_poly(g);
        self.fibers
            .iter()
            .map(|fiber| {
                let mut acc = C64::new(0.0, 0.0);
                let mut scale = 0.0_f64;
                for (i, &z) in fiber.iter().enumerate() {
                    let val = gp.eval(z);
                    scale = scale.max(val.norm());
                    acc += val * chain.coeff(i) as f64;
                }
                acc.norm() / (1.0 + scale)
            })
            .collect()
    }
}

/// Per-sample residuals of the integral of g over the chain.
pub fn integral_residuals(
    f: &Poly,
    chain: &Chain,
    g: &Poly,
    plan: &SamplePlan,
) -> Result<Vec<f64>, Error> {
    Ok(IntegralEvaluator::new(f, plan)?.residuals(chain, g))
}

/// Max residual over the sample plan.
pub fn abelian_integral(
    f: &Poly,
    chain: &Chain,
    g: &Poly,
    plan: &SamplePlan,
) -> Result<f64, Error> {
    Ok(integral_residuals(f, chain, g, plan)?
        .into_iter()
        .fold(0.0, f64::max))
}

/// Compare the exact Newton-Girard power sums of h against the numerically
/// summed root powers at sample values of w; returns the max deviation.
pub fn ng_crosscheck(h: &Poly, plan: &SamplePlan) -> Result<f64, Error> {
    let d = h.degree().unwrap_or(0);
    assert!(d >= 1, "power sums need deg h >= 1");
    let s = power_sums(h, d)?;
    let s_num: Vec<C64> = s.iter().map(|v| v.to_c64()).collect();
    let crit_max = if d >= 2 {
        critical_data(h)?.max_value_abs()
    } else {
        0.0
    };
    let hp = CPoly::from_poly(h);
    let mut worst = 0.0_f64;
    for w in plan.points(crit_max, 2.0 * crit_max + 2.0) {
        let mut shifted = hp.clone();
        shifted.coeffs[0] -= C64::new(w, 0.0);
        let roots = all_roots(&shifted)?;
        for (k, expect) in s_num.iter().enumerate() {
            let total: C64 = roots.iter().map(|z| z.powu(k as u32)).sum();
            worst = worst.max((total - expect).norm());
        }
    }
    Ok(worst)
}

/// Closed form of the integral of T_j over a real-coefficient chain of T_m
/// at a real sample t > 1:
/// alpha_j(t) P_C(eps^j) + conj(alpha_j(t)) P_C(conj(eps)^j) with
/// alpha_j(t) = exp(i xi(t) j / m) / 2 on the arccos branch matched to the
/// canonical labeling.
pub fn chebyshev_integral_closed_form(chain: &Chain, j: usize, m: usize, t: f64) -> C64 {
    assert_eq!(chain.m(), m);
    assert!(t > 1.0, "closed form is used on the real branch t > 1");
    let s = (t + (t * t - 1.0).sqrt()).ln();
    let xi = C64::new(0.0, -s);
    let alpha = (C64::i() * xi * j as f64 / m as f64).exp() / 2.0;
    // on the real segment the second coefficient is conj(alpha); for t > 1
    // it continues to exp(-i xi j / m)/2, which is what the identity needs
    let beta = (-C64::i() * xi * j as f64 / m as f64).exp() / 2.0;
    let pc = CPoly::from_poly(&characteristic_poly(chain));
    let eps = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / m as f64);
    let at = pc.eval(eps.powu(j as u32));
    let at_conj = pc.eval(eps.conj().powu(j as u32));
    alpha * at + beta * at_conj
}

/// Direct evaluation of the integral of T_j over a chain of T_m at t, using
/// the continued labeled fiber; the reference the closed form must match.
pub fn chebyshev_integral_direct(
    chain: &Chain,
    j: usize,
    m: usize,
    t: f64,
    evaluator: &IntegralEvaluator,
) -> C64 {
    assert_eq!(chain.m(), m);
    let tj = CPoly::from_poly(&crate::polycore::chebyshev(j));
    let idx = evaluator
        .samples
        .iter()
        .position(|&x| (x - t).abs() < 1e-12)
        .expect("t must be one of the evaluator samples");
    let fiber = &evaluator.fibers[idx];
    let mut acc = C64::new(0.0, 0.0);
    for (i, &z) in fiber.iter().enumerate() {
        acc += tj.eval(z) * chain.coeff(i) as f64;
    }
    acc
}

/// Brute-force balancedness over the full enumeration: for every sigma the
/// relabeled characteristic polynomial must be divisible by Phi_m (the exact
/// cyclotomic form of sum n_{sigma(i)} eps^i = 0).
pub fn brute_force_balanced(chain: &Chain, group: &PermGroup) -> Result<bool, Error> {
    let m = chain.m();
    if chain.is_zero() {
        return Ok(true);
    }
    let phi = cyclotomic(m);
    for sigma in group.elements()? {
        let relabeled = chain.relabel(sigma);
        if !phi.divides(&characteristic_poly(&relabeled)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Structure report for f = ftilde o h under the non-merging hypothesis.
#[derive(Clone, Debug)]
pub struct SemidirectReport {
    pub order_full: usize,
    pub order_normal: usize,
    pub order_outer: usize,
    /// |G_f| = |N_h| * |G_ftilde|
    pub product_matches: bool,
    /// N_h and G_ftilde meet only in the identity
    pub intersection_trivial: bool,
    /// loops around outer-factor values map blocks onto blocks
    pub alpha_blocks_ok: bool,
    /// loops around inner-factor values move points of one block only
    pub beta_blocks_ok: bool,
}

impl SemidirectReport {
    pub fn all_ok(&self) -> bool {
        self.product_matches
            && self.intersection_trivial
            && self.alpha_blocks_ok
            && self.beta_blocks_ok
    }
}

/// Verify the semidirect splitting of the monodromy of ftilde o h: the
/// normal closure of the inner loops against the subgroup generated by the
/// outer loops.
pub fn semidirect_check(
    ftilde: &Poly,
    h: &Poly,
    element_cap: usize,
) -> Result<SemidirectReport, Error> {
    let merge = check_no_merge(ftilde, h)?;
    if !merge.ok {
        return Err(Error::HypothesisViolated(
            "critical values of the factors merge; the splitting is not applicable".into(),
        ));
    }
    let f = compose(ftilde, h);
    let m = f.deg();
    let d = h.deg();
    let mono = monodromy_generators(&f)?;

    // outer loop values are the critical values of ftilde; inner loop values
    // are the ftilde-images of the critical values of h
    let ft_data = critical_data(ftilde)?;
    let ftp = CPoly::from_poly(ftilde);
    let h_data = critical_data(h)?;
    let beta_values: Vec<C64> = h_data
        .critical_values
        .iter()
        .map(|&v| ftp.eval(v))
        .collect();
    let scale = 1.0 + mono.loops.iter().map(|(v, _)| v.norm()).fold(0.0, f64::max);

    let mut alphas: Vec<Permutation> = Vec::new();
    let mut betas: Vec<Permutation> = Vec::new();
    for (value, perm) in &mono.loops {
        let da = ft_data
            .critical_values
            .iter()
            .map(|&a| (a - value).norm())
            .fold(f64::INFINITY, f64::min);
        let db = beta_values
            .iter()
            .map(|&b| (b - value).norm())
            .fold(f64::INFINITY, f64::min);
        if da.min(db) > 1e-6 * scale || (da - db).abs() < 1e-8 * scale {
            return Err(Error::NumericFailure(
                "cannot attribute a critical value to one factor".into(),
            ));
        }
        if da < db {
            alphas.push(perm.clone());
        } else {
            betas.push(perm.clone());
        }
    }

    let full = subgroup_closure(
        m,
        &mono
            .loops
            .iter()
            .map(|(_, p)| p.clone())
            .collect::<Vec<_>>(),
        element_cap,
    )?;
    let outer = subgroup_closure(m, &alphas, element_cap)?;
    let normal = normal_closure_elements(m, &full, &betas, element_cap)?;

    let outer_set: HashSet<Vec<usize>> = outer.iter().map(|p| p.images().to_vec()).collect();
    let mut intersection = 0usize;
    for p in &normal {
        if outer_set.contains(p.images()) {
            intersection += 1;
        }
    }

    let blocks = BlockSystem::residue_classes(m, d);
    let alpha_blocks_ok = alphas.iter().all(|p| blocks.invariant_under(p));
    let beta_blocks_ok = betas.iter().all(|p| moves_single_block(p, &blocks));

    Ok(SemidirectReport {
        order_full: full.len(),
        order_normal: normal.len(),
        order_outer: outer.len(),
        product_matches: full.len() == normal.len() * outer.len(),
        intersection_trivial: intersection == 1,
        alpha_blocks_ok,
        beta_blocks_ok,
    })
}

/// p fixes every point outside a single block and maps that block to itself.
fn moves_single_block(p: &Permutation, blocks: &BlockSystem) -> bool {
    let moved: Vec<usize> = (0..p.len()).filter(|&i| p.apply(i) != i).collect();
    if moved.is_empty() {
        return true;
    }
    let Some(block) = blocks.block_index_of(moved[0]) else {
        return false;
    };
    moved
        .iter()
        .all(|&i| blocks.block_index_of(i) == Some(block))
}
