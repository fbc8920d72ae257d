//! Floating-point layer: complex polynomial evaluation and root finding.
//! Everything here is double precision; exact decisions never depend on it.

use crate::error::Error;
use crate::polycore::Poly;
use num_complex::Complex64;

pub type C64 = Complex64;

/// Dense complex polynomial, lowest degree first.
#[derive(Clone, Debug)]
pub struct CPoly {
    pub coeffs: Vec<C64>,
}

impl CPoly {
    pub fn from_poly(p: &Poly) -> Self {
        CPoly {
            coeffs: p.coeffs().iter().map(|c| c.to_c64()).collect(),
        }
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> CPoly {
        if self.coeffs.len() <= 1 {
            return CPoly { coeffs: vec![] };
        }
        CPoly {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * (i as f64 + 1.0))
                .collect(),
        }
    }

    /// Scale of |p| at |z|, for backward-error style residual tests.
    pub fn magnitude_at(&self, z_abs: f64) -> f64 {
        let mut acc = 0.0;
        let mut pw = 1.0;
        for c in &self.coeffs {
            acc += c.norm() * pw;
            pw *= z_abs;
        }
        acc
    }
}

/// All roots of p by the Aberth-Ehrlich iteration with Newton polishing.
/// Multiple roots converge as clusters, which is fine for the callers here:
/// they only consume the (deduplicated) values.
pub fn all_roots(p: &CPoly) -> Result<Vec<C64>, Error> {
    let mut coeffs = p.coeffs.clone();
    while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return Ok(vec![]);
    }
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<C64> = coeffs.iter().map(|c| c / lead).collect();
    let p = CPoly { coeffs: monic };
    let dp = p.derivative();

    // initial guesses on a slightly irrational circle inside the Cauchy bound
    let radius = 1.0
        + p.coeffs[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0_f64, f64::max)
            .sqrt();
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.3999;
            C64::from_polar(radius.max(0.5), theta)
        })
        .collect();

    let mut converged = false;
    for _ in 0..400 {
        let mut max_step = 0.0_f64;
        for i in 0..n {
            let pv = p.eval(z[i]);
            let dv = dp.eval(z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let newton = if dv.norm() > 0.0 { pv / dv } else { pv };
            let mut sum = C64::new(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let d = z[i] - zj;
                    if d.norm() > 0.0 {
                        sum += 1.0 / d;
                    }
                }
            }
            let denom = 1.0 - newton * sum;
            let step = if denom.norm() > 1e-290 {
                newton / denom
            } else {
                newton
            };
            z[i] -= step;
            let scale = 1.0 + z[i].norm();
            max_step = max_step.max(step.norm() / scale);
        }
        if max_step < 1e-14 {
            converged = true;
            break;
        }
    }
    // polish simple roots; clustered roots keep their Aberth positions
    for zi in z.iter_mut() {
        *zi = newton_refine(&p, &dp, *zi, 8);
    }
    let worst = z
        .iter()
        .map(|&zi| p.eval(zi).norm() / (1.0 + p.magnitude_at(zi.norm())))
        .fold(0.0_f64, f64::max);
    if !converged && worst > 1e-10 {
        return Err(Error::NumericFailure(format!(
            "root finding did not converge (relative residual {worst:.3e})"
        )));
    }
    Ok(z)
}

pub fn newton_refine(p: &CPoly, dp: &CPoly, mut z: C64, iters: usize) -> C64 {
    for _ in 0..iters {
        let pv = p.eval(z);
        let dv = dp.eval(z);
        if dv.norm() < 1e-280 {
            break;
        }
        let step = pv / dv;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        let next = z - step;
        if p.eval(next).norm() >= pv.norm() {
            // stalled, typically a multiple root; keep the better iterate
            break;
        }
        z = next;
    }
    z
}

/// Newton iteration for f(z) = target starting from a prediction.
/// Returns None when it fails to reach the residual tolerance.
pub fn newton_solve(
    f: &CPoly,
    df: &CPoly,
    target: C64,
    start: C64,
    max_iters: usize,
) -> Option<C64> {
    let mut z = start;
    for _ in 0..max_iters {
        let val = f.eval(z) - target;
        let scale = f.magnitude_at(z.norm()) + target.norm() + 1.0;
        if val.norm() <= 1e-13 * scale {
            return Some(z);
        }
        let dv = df.eval(z);
        if dv.norm() < 1e-280 {
            return None;
        }
        let step = val / dv;
        if !step.re.is_finite() || !step.im.is_finite() {
            return None;
        }
        z -= step;
    }
    let val = f.eval(z) - target;
    let scale = f.magnitude_at(z.norm()) + target.norm() + 1.0;
    (val.norm() <= 1e-12 * scale).then_some(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Poly;

    #[test]
    fn roots_of_cubic() {
        // z^3 - z: roots 0, 1, -1
        let p = CPoly::from_poly(&Poly::from_int_coeffs(&[0, -1, 0, 1]));
        let mut roots = all_roots(&p).unwrap();
        roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((roots[0] - C64::new(-1.0, 0.0)).norm() < 1e-10);
        assert!(roots[1].norm() < 1e-10);
        assert!((roots[2] - C64::new(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn roots_with_multiplicity_cluster() {
        // (z-2)^4: a cluster near 2
        let p = CPoly::from_poly(&Poly::from_int_coeffs(&[16, -32, 24, -8, 1]));
        let roots = all_roots(&p).unwrap();
        assert_eq!(roots.len(), 4);
        for r in roots {
            assert!((r - C64::new(2.0, 0.0)).norm() < 1e-2);
        }
    }

    #[test]
    fn high_degree_roots_of_unity() {
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let p = CPoly::from_poly(&Poly::from_int_coeffs(&c));
        let roots = all_roots(&p).unwrap();
        for r in roots {
            assert!((r.norm() - 1.0).abs() < 1e-9);
        }
    }
}
