//! Numerical monodromy: critical data, the canonical root labeling, and
//! loop permutations by predictor-corrector continuation of the full fiber.
//!
//! Conventions fixed here (the text never pins them down):
//! - basepoint t0 = R on the positive real axis, R > 2 max|critical value| + 1;
//! - the labeling is anchored at a large radius where roots follow the
//!   asymptotic branches (t/lead)^(1/m) * e^(2 pi i (k-1)/m), then transported
//!   inward along the real axis, so the counter-clockwise circle |t| = R
//!   shifts labels by one;
//! - a loop around a critical value is a radial segment (with detour arcs
//!   around any other critical value it would graze), a counter-clockwise
//!   circle, and the reverse segment;
//! - generators are ordered by the angle of (value - t0), ties broken
//!   farther-first, which makes their in-order product the full cycle.

use crate::error::Error;
use crate::monodromy::perm::Permutation;
use crate::numeric::{all_roots, newton_solve, CPoly, C64};
use crate::polycore::{GRat, Poly};

const DEDUP_TOL: f64 = 1e-8;
const MATCH_SAFETY: f64 = 3.0;

/// Critical points and deduplicated critical values of f, floating.
#[derive(Clone, Debug)]
pub struct CriticalData {
    pub critical_points: Vec<C64>,
    pub critical_values: Vec<C64>,
    pub dedup_tolerance: f64,
}

impl CriticalData {
    pub fn max_value_abs(&self) -> f64 {
        self.critical_values
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }
}

/// Roots of f' and the distinct values of f there.
pub fn critical_data(f: &Poly) -> Result<CriticalData, Error> {
    let m = f.degree().unwrap_or(0);
    assert!(m >= 2, "critical data needs deg f >= 2");
    let fp = CPoly::from_poly(f);
    let dfp = fp.derivative();
    let points = all_roots(&dfp)?;
    for z in &points {
        let scale = 1.0 + dfp.magnitude_at(z.norm());
        if dfp.eval(*z).norm() / scale > 1e-10 {
            return Err(Error::NumericFailure(
                "critical point residual above tolerance".into(),
            ));
        }
    }
    let values_raw: Vec<C64> = points.iter().map(|&z| fp.eval(z)).collect();
    let scale = 1.0 + values_raw.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let tol = DEDUP_TOL * scale;

    // single-link clustering at the dedup tolerance
    let mut clusters: Vec<Vec<C64>> = Vec::new();
    for v in values_raw {
        match clusters
            .iter_mut()
            .find(|c| c.iter().any(|&w| (w - v).norm() <= tol))
        {
            Some(c) => c.push(v),
            None => clusters.push(vec![v]),
        }
    }
    // genuinely equal values agree to evaluation noise; a cluster that is
    // spread wider than that but still inside the dedup tolerance cannot be
    // told apart from two distinct colliding values, so refuse to decide
    for cluster in &clusters {
        let mut diameter = 0.0_f64;
        for i in 0..cluster.len() {
            for j in (i + 1)..cluster.len() {
                diameter = diameter.max((cluster[i] - cluster[j]).norm());
            }
        }
        if diameter > 1e-3 * tol {
            return Err(Error::DegenerateGeometry(format!(
                "critical values collide within tolerance (cluster spread {diameter:.3e})"
            )));
        }
    }
    let values: Vec<C64> = clusters
        .iter()
        .map(|c| c.iter().sum::<C64>() / c.len() as f64)
        .collect();
    // and refuse when distinct clusters almost touch
    for i in 0..values.len() {
        for j in (i + 1)..values.len() {
            if (values[i] - values[j]).norm() < 10.0 * tol {
                return Err(Error::DegenerateGeometry(format!(
                    "critical values {:.6e}+{:.6e}i and {:.6e}+{:.6e}i collide within tolerance",
                    values[i].re, values[i].im, values[j].re, values[j].im
                )));
            }
        }
    }
    let mut values = values;
    values.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    Ok(CriticalData {
        critical_points: points,
        critical_values: values,
        dedup_tolerance: tol,
    })
}

// ---------------------------------------------------------------------------
// paths
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum PathSeg {
    Line {
        from: C64,
        to: C64,
    },
    /// Circular arc center + radius, parameter from a0 to a1 (radians,
    /// traversed linearly; a1 > a0 is counter-clockwise).
    Arc {
        center: C64,
        radius: f64,
        a0: f64,
        a1: f64,
    },
}

impl PathSeg {
    pub fn point(&self, s: f64) -> C64 {
        match self {
            PathSeg::Line { from, to } => from + (to - from) * s,
            PathSeg::Arc {
                center,
                radius,
                a0,
                a1,
            } => {
                let a = a0 + (a1 - a0) * s;
                center + C64::from_polar(*radius, a)
            }
        }
    }

    pub fn reversed(&self) -> PathSeg {
        match self {
            PathSeg::Line { from, to } => PathSeg::Line {
                from: *to,
                to: *from,
            },
            PathSeg::Arc {
                center,
                radius,
                a0,
                a1,
            } => PathSeg::Arc {
                center: *center,
                radius: *radius,
                a0: *a1,
                a1: *a0,
            },
        }
    }
}

pub fn reverse_path(path: &[PathSeg]) -> Vec<PathSeg> {
    path.iter().rev().map(PathSeg::reversed).collect()
}

/// Loop radius around a critical value: stay well inside the gap to the
/// nearest other value and approach no closer than a tenth of the way back
/// to the basepoint.
fn loop_radius(values: &[C64], j: usize, t0: C64) -> f64 {
    let gap = values
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != j)
        .map(|(_, &v)| (v - values[j]).norm())
        .fold(f64::INFINITY, f64::min);
    let to_base = (values[j] - t0).norm();
    (gap / 3.0).min(0.1 * to_base)
}

/// Obstacle for a lasso stem: a disk to go around and the unit direction of
/// the side the detour arc must bulge toward.
struct Obstacle {
    center: C64,
    radius: f64,
    side: C64,
}

/// Straight segment from `from` to `to` with a detour arc around every
/// obstacle disk the segment crosses, each passed on its prescribed side.
fn segment_with_detours(from: C64, to: C64, obstacles: &[Obstacle]) -> Result<Vec<PathSeg>, Error> {
    let dir = to - from;
    let len = dir.norm();
    if len == 0.0 {
        return Ok(vec![]);
    }
    let u = dir / len;
    // collect crossings as (entry s, exit s, obstacle index)
    let mut crossings: Vec<(f64, f64, usize)> = Vec::new();
    for (idx, ob) in obstacles.iter().enumerate() {
        let w = ob.center - from;
        let along = (w * u.conj()).re;
        let perp = (w * u.conj()).im;
        if perp.abs() >= ob.radius {
            continue;
        }
        let half = (ob.radius * ob.radius - perp * perp).sqrt();
        let (s_in, s_out) = (along - half, along + half);
        if s_out <= 1e-12 || s_in >= len - 1e-12 {
            continue;
        }
        if s_in < -1e-9 || s_out > len + 1e-9 {
            return Err(Error::NumericFailure(
                "path endpoint falls inside an obstacle disk".into(),
            ));
        }
        crossings.push((s_in.max(0.0), s_out.min(len), idx));
    }
    crossings.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    for w in crossings.windows(2) {
        if w[0].1 > w[1].0 {
            return Err(Error::NumericFailure(
                "detour disks overlap along a monodromy path".into(),
            ));
        }
    }
    let mut segs = Vec::new();
    let mut cursor = from;
    for &(s_in, s_out, idx) in &crossings {
        let ob = &obstacles[idx];
        let entry = from + u * s_in;
        let exit = from + u * s_out;
        if (entry - cursor).norm() > 1e-14 {
            segs.push(PathSeg::Line {
                from: cursor,
                to: entry,
            });
        }
        let a_entry = (entry - ob.center).arg();
        let a_exit = (exit - ob.center).arg();
        let side_angle = ob.side.arg();
        let sweep_ccw = normalize_sweep(a_exit - a_entry, true);
        let sweep_cw = normalize_sweep(a_exit - a_entry, false);
        let mid_ccw = a_entry + sweep_ccw / 2.0;
        let mid_cw = a_entry + sweep_cw / 2.0;
        let pick_ccw = angle_distance(mid_ccw, side_angle) <= angle_distance(mid_cw, side_angle);
        let sweep = if pick_ccw { sweep_ccw } else { sweep_cw };
        segs.push(PathSeg::Arc {
            center: ob.center,
            radius: ob.radius,
            a0: a_entry,
            a1: a_entry + sweep,
        });
        cursor = exit;
    }
    if (to - cursor).norm() > 1e-14 {
        segs.push(PathSeg::Line { from: cursor, to });
    }
    Ok(segs)
}

fn normalize_sweep(delta: f64, ccw: bool) -> f64 {
    let tau = 2.0 * std::f64::consts::PI;
    let mut d = delta.rem_euclid(tau);
    if ccw {
        if d == 0.0 {
            d = tau;
        }
        d
    } else {
        if d == 0.0 {
            return -tau;
        }
        d - tau
    }
}

fn angle_distance(a: f64, b: f64) -> f64 {
    let tau = 2.0 * std::f64::consts::PI;
    let d = (a - b).rem_euclid(tau);
    d.min(tau - d)
}

/// Sort key for loops: angle of (value - t0) normalized into (pi/2, 3pi/2),
/// ties broken farther-first. The same key decides which side a lasso stem
/// passes an obstructing value on, which keeps the lassos pairwise
/// non-crossing (two stems only meet at the basepoint).
pub(crate) fn loop_key(value: C64, t0: C64) -> (f64, f64) {
    let d = value - t0;
    let mut a = d.arg();
    if a < 0.0 {
        a += 2.0 * std::f64::consts::PI;
    }
    (a, -d.norm())
}

/// Lasso from t0 around critical value j with all radii scaled by `shrink`.
/// Shrinking is always safe (the circle still encloses only its own value);
/// it resolves stem configurations whose detour chords would overlap, e.g.
/// nearly conjugate value pairs straddling a stem.
fn lasso_path_scaled(
    data: &CriticalData,
    j: usize,
    t0: C64,
    shrink: f64,
) -> Result<Vec<PathSeg>, Error> {
    let values = &data.critical_values;
    let v = values[j];
    let r = shrink * loop_radius(values, j, t0);
    let toward = (t0 - v) / (t0 - v).norm();
    let approach = v + toward * r;
    let key_j = loop_key(v, t0);
    let obstacles: Vec<Obstacle> = values
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != j)
        .map(|(k, &c)| {
            // bulge toward increasing angle when this stem sits on the
            // increasing-angle side of the obstacle's own stem
            let increasing = C64::i() * (c - t0) / (c - t0).norm();
            let side = if key_j < loop_key(c, t0) {
                -increasing
            } else {
                increasing
            };
            // strictly larger than the obstacle's own loop circle so the
            // detour never touches it
            Obstacle {
                center: c,
                radius: shrink * 1.5 * loop_radius(values, k, t0),
                side,
            }
        })
        .collect();
    let mut path = segment_with_detours(t0, approach, &obstacles)?;
    let a0 = (approach - v).arg();
    path.push(PathSeg::Arc {
        center: v,
        radius: r,
        a0,
        a1: a0 + 2.0 * std::f64::consts::PI,
    });
    path.extend(reverse_path(&segment_with_detours(
        t0, approach, &obstacles,
    )?));
    Ok(path)
}

/// Lasso from t0 around critical value j: approach, ccw circle, return.
pub fn lasso_path(data: &CriticalData, j: usize, t0: C64) -> Result<Vec<PathSeg>, Error> {
    lasso_path_scaled(data, j, t0, 1.0)
}

// ---------------------------------------------------------------------------
// continuation
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ContinuationSettings {
    /// Scale on the initial/maximum step size (smaller = finer tracking).
    pub step_scale: f64,
}

impl Default for ContinuationSettings {
    fn default() -> Self {
        ContinuationSettings { step_scale: 1.0 }
    }
}

/// Transport the whole labeled fiber along a path. Steps are accepted only
/// when every tracked root has an unambiguous nearest origin (safety factor
/// 3); otherwise the step is halved.
pub fn continue_fiber(
    f: &CPoly,
    df: &CPoly,
    fiber: &[C64],
    path: &[PathSeg],
    settings: &ContinuationSettings,
) -> Result<Vec<C64>, Error> {
    let mut z = fiber.to_vec();
    for seg in path {
        let mut s = 0.0_f64;
        let max_step = 0.25 * settings.step_scale;
        let mut step = max_step;
        // paths can sweep several orders of magnitude (a lasso stem from a
        // far basepoint down to a tight cluster), so the floor is small and
        // a step budget guards against stalls instead
        let min_step = 1e-13;
        let mut steps = 0usize;
        while s < 1.0 {
            steps += 1;
            if steps > 200_000 {
                return Err(Error::NumericFailure(
                    "continuation exceeded its step budget".into(),
                ));
            }
            let s_next = (s + step).min(1.0);
            let target = seg.point(s_next);
            match try_step(f, df, &z, target) {
                Some(next) => {
                    z = next;
                    s = s_next;
                    step = (step * 1.5).min(max_step);
                }
                None => {
                    step *= 0.5;
                    if step < min_step {
                        return Err(Error::NumericFailure(
                            "continuation step underflow (ambiguous root matching)".into(),
                        ));
                    }
                }
            }
        }
    }
    Ok(z)
}

fn try_step(f: &CPoly, df: &CPoly, z: &[C64], target: C64) -> Option<Vec<C64>> {
    let mut next = Vec::with_capacity(z.len());
    for &zi in z {
        let n = newton_solve(f, df, target, zi, 30)?;
        next.push(n);
    }
    // matching must be unambiguous: each new root stays closest to its own
    // origin by a factor of 3 against every other origin
    for (i, &ni) in next.iter().enumerate() {
        let own = (ni - z[i]).norm();
        for (j, &zj) in z.iter().enumerate() {
            if i != j && MATCH_SAFETY * own >= (ni - zj).norm() {
                return None;
            }
        }
    }
    // and distinct roots must not have merged
    for i in 0..next.len() {
        for j in (i + 1)..next.len() {
            if (next[i] - next[j]).norm() == 0.0 {
                return None;
            }
        }
    }
    Some(next)
}

// ---------------------------------------------------------------------------
// labeling
// ---------------------------------------------------------------------------

/// The canonical labeled fiber over the real basepoint t0. Public fields are
/// in the frame of f itself. Continuation internally runs in a rescaled
/// frame z = scale_z * y, t = scale_t * w with power-of-two scales (exact in
/// both the rational and floating representations), which keeps the fiber
/// tracking well conditioned for factors with large coefficients.
#[derive(Clone, Debug)]
pub struct Labeling {
    pub t0: f64,
    /// entry k of the fiber is the root carrying label k+1.
    pub fiber: Vec<C64>,
    pub critical: CriticalData,
    scale_z: f64,
    shift_z: C64,
    scale_t: f64,
    norm_poly: CPoly,
    norm_dpoly: CPoly,
    norm_t0: f64,
    norm_fiber: Vec<C64>,
    norm_critical: CriticalData,
}

fn pow2_rational(k: i64) -> crate::polycore::Rational {
    use num_bigint::BigInt;
    if k >= 0 {
        crate::polycore::Rational::from_integer(BigInt::from(1) << (k as usize))
    } else {
        crate::polycore::Rational::new(BigInt::from(1), BigInt::from(1) << ((-k) as usize))
    }
}

/// Frame for the continuation: f(scale_z * y + center) / scale_t. The shift
/// is the exact mean root (which depresses the subleading coefficient), the
/// z-scale is a power of two sized by the root spread of the depressed
/// polynomial, and the t-scale is a power of two sized by the critical
/// values. Because the rescaled coefficients are recomputed exactly before
/// a single rounding to floats, evaluation near the root region loses the
/// cancellation the original frame may have had (twist-normalized factors
/// routinely have all roots in a tight cluster far from the origin).
fn normalized_frame(f: &Poly) -> Result<(Poly, CriticalData, f64, C64, f64), Error> {
    let m = f.deg();
    let center = -&(&f.coeff(m - 1) / &(&f.leading() * &GRat::from_int(m as i64)));
    let centered = f.taylor_shift(&center);
    let coeff_abs: Vec<f64> = centered
        .coeffs()
        .iter()
        .map(|c| c.to_c64().norm())
        .collect();
    let lead = coeff_abs[m].max(f64::MIN_POSITIVE);
    let mut spread = 1.0_f64;
    for k in 2..=m {
        let ratio = (coeff_abs[m - k] / lead).powf(1.0 / k as f64);
        spread = spread.max(2.0 * ratio);
    }
    let z_exp = spread.log2().ceil().clamp(0.0, 900.0) as i64;
    let lambda = GRat::from_rational(pow2_rational(z_exp));
    let rescaled = centered.affine_sub(&lambda, &GRat::zero());
    let crit = if m >= 2 {
        critical_data(&rescaled)?
    } else {
        CriticalData {
            critical_points: vec![],
            critical_values: vec![],
            dedup_tolerance: 0.0,
        }
    };
    // t-scale from the critical-value magnitude (t is untouched so far)
    let t_exp = (1.0 + crit.max_value_abs())
        .log2()
        .round()
        .clamp(-900.0, 900.0) as i64;
    let s = (t_exp as f64).exp2();
    let s_inv = GRat::from_rational(pow2_rational(-t_exp));
    let fnorm = rescaled.scale(&s_inv);
    let crit_norm = CriticalData {
        critical_points: crit.critical_points,
        critical_values: crit.critical_values.iter().map(|&v| v / s).collect(),
        dedup_tolerance: crit.dedup_tolerance / s,
    };
    Ok((fnorm, crit_norm, (z_exp as f64).exp2(), center.to_c64(), s))
}

/// Label the fiber over t0 = R so that the counter-clockwise circle |t| = R
/// shifts labels by one, anchored at the principal asymptotic branch.
///
/// The anchor radius is chosen so that |t/lead|^(1/m) dominates the root
/// bound, where the fiber genuinely follows the asymptotic branches; the
/// fiber is then transported inward along the real axis on a geometric
/// schedule (the band |t| >= t0 is free of critical values).
pub fn base_labeling(f: &Poly) -> Result<Labeling, Error> {
    let m = f.degree().unwrap_or(0);
    assert!(m >= 1, "labeling needs deg f >= 1");
    let (fnorm, norm_critical, scale_z, shift_z, scale_t) = normalized_frame(f)?;
    // basepoint in the normalized frame; chosen so that the original-frame
    // basepoint also clears 2 max|critical value| + 1
    let r0 = 2.0 * norm_critical.max_value_abs() + (2.0 / scale_t).max(2.0);
    let fp = CPoly::from_poly(&fnorm);
    let dfp = fp.derivative();

    let lead = fp.coeffs[m];
    let sub = fp.coeffs[m - 1];
    let shift = -sub / (lead * m as f64);

    // roots of the normalized polynomial are at order one, so the branches
    // are asymptotic once |t/lead|^(1/m) clears ~8
    let wanted = lead.norm() * (8.0f64).powi(m as i32);
    let mut anchor_radius = wanted.clamp(1e4_f64.max(r0 * 8.0), 1e250);
    loop {
        // predicted asymptotic fiber at the anchor radius, then polish
        let t_anchor = C64::new(anchor_radius, 0.0);
        let principal = (t_anchor / lead).powf(1.0 / m as f64);
        let mut ok = true;
        let mut fiber = Vec::with_capacity(m);
        for k in 0..m {
            let eps = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64);
            let guess = principal * eps + shift;
            match newton_solve(&fp, &dfp, t_anchor, guess, 60) {
                Some(root) => fiber.push(root),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            // predictions must identify the roots unambiguously
            'check: for i in 0..m {
                let eps = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * i as f64 / m as f64);
                let guess = principal * eps + shift;
                let own = (fiber[i] - guess).norm();
                for (j, zj) in fiber.iter().enumerate() {
                    if i != j && MATCH_SAFETY * own >= (guess - zj).norm() {
                        ok = false;
                        break 'check;
                    }
                }
            }
            if ok {
                // inward along the real axis on a geometric schedule, so
                // each leg changes the scale by at most a factor of 4
                let mut path = Vec::new();
                let mut radius = anchor_radius;
                while radius > r0 {
                    let next = (radius / 4.0).max(r0);
                    path.push(PathSeg::Line {
                        from: C64::new(radius, 0.0),
                        to: C64::new(next, 0.0),
                    });
                    radius = next;
                }
                let norm_fiber =
                    continue_fiber(&fp, &dfp, &fiber, &path, &ContinuationSettings::default())?;
                let critical = CriticalData {
                    critical_points: norm_critical
                        .critical_points
                        .iter()
                        .map(|&z| z * scale_z + shift_z)
                        .collect(),
                    critical_values: norm_critical
                        .critical_values
                        .iter()
                        .map(|&v| v * scale_t)
                        .collect(),
                    dedup_tolerance: norm_critical.dedup_tolerance * scale_t,
                };
                return Ok(Labeling {
                    t0: r0 * scale_t,
                    fiber: norm_fiber.iter().map(|&y| y * scale_z + shift_z).collect(),
                    critical,
                    scale_z,
                    shift_z,
                    scale_t,
                    norm_poly: fp,
                    norm_dpoly: dfp,
                    norm_t0: r0,
                    norm_fiber,
                    norm_critical,
                });
            }
        }
        anchor_radius *= 1e4;
        if !anchor_radius.is_finite() || anchor_radius > 1e290 {
            return Err(Error::NumericFailure(
                "could not anchor the asymptotic labeling".into(),
            ));
        }
    }
}

// ---------------------------------------------------------------------------
// loop permutations and generators
// ---------------------------------------------------------------------------

/// Permutation of root labels induced by the standard loop around one
/// critical value (given in the frame of f).
pub fn loop_permutation(f: &Poly, labeling: &Labeling, value: C64) -> Result<Permutation, Error> {
    let _ = f;
    let data = &labeling.critical;
    let j = data
        .critical_values
        .iter()
        .position(|&v| (v - value).norm() <= data.dedup_tolerance.max(1e-12) * 10.0)
        .ok_or_else(|| Error::InvalidInput("value is not a critical value of f".into()))?;
    let t0 = C64::new(labeling.norm_t0, 0.0);
    let mut last = Error::NumericFailure("loop construction failed".into());
    for attempt in 0..6 {
        let shrink = 0.6f64.powi(attempt);
        match lasso_path_scaled(&labeling.norm_critical, j, t0, shrink)
            .and_then(|path| loop_permutation_along(labeling, &path))
        {
            Ok(perm) => return Ok(perm),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn loop_permutation_along(labeling: &Labeling, path: &[PathSeg]) -> Result<Permutation, Error> {
    let end = continue_fiber(
        &labeling.norm_poly,
        &labeling.norm_dpoly,
        &labeling.norm_fiber,
        path,
        &ContinuationSettings::default(),
    )?;
    match_fibers(&labeling.norm_fiber, &end)
}

/// image of i is j when the continuation of root i lands on root j's start.
pub fn match_fibers(start: &[C64], end: &[C64]) -> Result<Permutation, Error> {
    let m = start.len();
    let mut images = vec![usize::MAX; m];
    let mut taken = vec![false; m];
    for (i, &e) in end.iter().enumerate() {
        let mut best = (f64::INFINITY, usize::MAX);
        let mut second = f64::INFINITY;
        for (j, &s) in start.iter().enumerate() {
            let d = (e - s).norm();
            if d < best.0 {
                second = best.0;
                best = (d, j);
            } else if d < second {
                second = d;
            }
        }
        if best.1 == usize::MAX || MATCH_SAFETY * best.0 >= second || taken[best.1] {
            return Err(Error::NumericFailure(
                "ambiguous fiber matching after continuation".into(),
            ));
        }
        taken[best.1] = true;
        images[i] = best.1;
    }
    Permutation::from_images(images)
}

/// Generators sorted in loop order together with the labeling they act on.
#[derive(Clone, Debug)]
pub struct Monodromy {
    pub labeling: Labeling,
    /// (critical value, loop permutation), in composition order.
    pub loops: Vec<(C64, Permutation)>,
    pub tau_infinity_ok: bool,
}

impl Monodromy {
    pub fn group(&self, element_cap: usize) -> crate::monodromy::perm::PermGroup {
        crate::monodromy::perm::PermGroup::with_cap(
            self.labeling.fiber.len(),
            self.loops.iter().map(|(_, p)| p.clone()).collect(),
            element_cap,
        )
    }
}

/// Loop permutations over all critical values, ordered by the angle of
/// (value - t0); their in-order product must be the full cycle (1 2 ... m).
pub fn monodromy_generators(f: &Poly) -> Result<Monodromy, Error> {
    let m = f.degree().unwrap_or(0);
    assert!(m >= 2, "monodromy needs deg f >= 2");
    let labeling = base_labeling(f)?;
    let t0 = C64::new(labeling.norm_t0, 0.0);
    let mut order: Vec<usize> = (0..labeling.norm_critical.critical_values.len()).collect();
    let key = |j: usize| loop_key(labeling.norm_critical.critical_values[j], t0);
    order.sort_by(|&a, &b| key(a).partial_cmp(&key(b)).unwrap());

    // a single shrink factor for all lassos, so the loop circles and the
    // detours other lassos take around them stay coherent
    let mut last = Error::NumericFailure("loop construction failed".into());
    'attempts: for attempt in 0..6 {
        let shrink = 0.6f64.powi(attempt);
        let mut loops = Vec::with_capacity(order.len());
        for &j in &order {
            let v = labeling.critical.critical_values[j];
            let outcome = lasso_path_scaled(&labeling.norm_critical, j, t0, shrink)
                .and_then(|path| loop_permutation_along(&labeling, &path));
            match outcome {
                Ok(perm) => loops.push((v, perm)),
                Err(e) => {
                    last = e;
                    continue 'attempts;
                }
            }
        }
        let product = loops
            .iter()
            .fold(Permutation::identity(m), |acc, (_, p)| acc.then(p));
        let tau = Permutation::full_cycle(m);
        if product != tau {
            last = Error::NumericFailure(format!(
                "monodromy consistency check failed: loop product {product} != {tau}"
            ));
            continue;
        }
        return Ok(Monodromy {
            labeling,
            loops,
            tau_infinity_ok: true,
        });
    }
    Err(last)
}

/// Defining property of the labeling: the counter-clockwise circle through
/// the basepoint shifts labels by one.
pub fn around_infinity(labeling: &Labeling) -> Result<Permutation, Error> {
    let circle = [PathSeg::Arc {
        center: C64::new(0.0, 0.0),
        radius: labeling.norm_t0,
        a0: 0.0,
        a1: 2.0 * std::f64::consts::PI,
    }];
    loop_permutation_along(labeling, &circle)
}

/// Transport the labeled fiber to a regular target (in the frame of f)
/// along a straight segment from the basepoint.
pub fn transport_fiber(
    f: &Poly,
    labeling: &Labeling,
    target: C64,
    settings: &ContinuationSettings,
) -> Result<Vec<C64>, Error> {
    let _ = f;
    let path = [PathSeg::Line {
        from: C64::new(labeling.norm_t0, 0.0),
        to: target / labeling.scale_t,
    }];
    let end = continue_fiber(
        &labeling.norm_poly,
        &labeling.norm_dpoly,
        &labeling.norm_fiber,
        &path,
        settings,
    )?;
    Ok(end
        .into_iter()
        .map(|y| y * labeling.scale_z + labeling.shift_z)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{chebyshev, compose, Poly};

    #[test]
    fn critical_data_examples() {
        // z^2: point 0, value 0
        let d = critical_data(&Poly::from_int_coeffs(&[0, 0, 1])).unwrap();
        assert_eq!(d.critical_values.len(), 1);
        assert!(d.critical_values[0].norm() < 1e-12);

        // z^3 - z: points +-1/sqrt(3), values -+2/(3 sqrt 3)
        let d = critical_data(&Poly::from_int_coeffs(&[0, -1, 0, 1])).unwrap();
        assert_eq!(d.critical_values.len(), 2);
        let c = 2.0 / (3.0 * 3.0_f64.sqrt());
        assert!((d.critical_values[0] - C64::new(-c, 0.0)).norm() < 1e-10);
        assert!((d.critical_values[1] - C64::new(c, 0.0)).norm() < 1e-10);

        // z^3 + 2z^2 - 1: points 0 and -4/3, values -1 and 5/27
        let d = critical_data(&Poly::from_int_coeffs(&[-1, 0, 2, 1])).unwrap();
        assert_eq!(d.critical_values.len(), 2);
        assert!((d.critical_values[0] - C64::new(-1.0, 0.0)).norm() < 1e-10);
        assert!((d.critical_values[1] - C64::new(5.0 / 27.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn nearly_merged_critical_values_are_refused() {
        // z^4 - 2z^2 + eps*z splits the symmetric double value -1 by about
        // eps, inside the undecidable band
        let mut f = Poly::from_int_coeffs(&[0, 0, -2, 0, 1]);
        f = &f
            + &Poly::new(vec![
                GRat::zero(),
                GRat::from_rational(crate::polycore::rat(1, 1_000_000_000)),
            ]);
        match critical_data(&f) {
            Err(Error::DegenerateGeometry(_)) => {}
            other => panic!("expected a degeneracy refusal, got {other:?}"),
        }
        // the exactly symmetric case deduplicates cleanly instead
        let sym = Poly::from_int_coeffs(&[0, 0, -2, 0, 1]);
        let data = critical_data(&sym).unwrap();
        assert_eq!(data.critical_values.len(), 2);
    }

    #[test]
    fn labeling_of_pure_power() {
        let f = Poly::from_int_coeffs(&[0, 0, 0, 0, 0, 0, 1]); // z^6
        let lab = base_labeling(&f).unwrap();
        let r = lab.t0.powf(1.0 / 6.0);
        for (k, z) in lab.fiber.iter().enumerate() {
            let expect = C64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / 6.0);
            assert!((z - expect).norm() < 1e-8, "label {} off", k + 1);
        }
    }

    #[test]
    fn labeling_of_chebyshev_matches_arccos_branches() {
        let m = 5usize;
        let f = chebyshev(m);
        let lab = base_labeling(&f).unwrap();
        let t = lab.t0;
        // z_k = cos((xi + 2 pi (k-1))/m) with xi = -i arccosh(t) for t > 1
        let s = (t + (t * t - 1.0).sqrt()).ln();
        let xi = C64::new(0.0, -s);
        for (k, z) in lab.fiber.iter().enumerate() {
            let arg = (xi + 2.0 * std::f64::consts::PI * k as f64) / m as f64;
            let expect = (arg * C64::i()).exp();
            let expect = (expect + 1.0 / expect) / 2.0; // cos
            assert!((z - expect).norm() < 1e-8, "label {} off", k + 1);
        }
    }

    #[test]
    fn full_circle_is_tau_infinity() {
        for f in [
            Poly::from_int_coeffs(&[0, -1, 0, 1]),
            Poly::from_int_coeffs(&[-1, 0, 2, 1]),
            chebyshev(4),
        ] {
            let lab = base_labeling(&f).unwrap();
            let m = f.degree().unwrap();
            let perm = around_infinity(&lab).unwrap();
            assert_eq!(perm, Permutation::full_cycle(m));
        }
    }

    #[test]
    fn monomial_loop_is_full_cycle() {
        let f = Poly::from_int_coeffs(&[0, 0, 0, 0, 0, 1]); // z^5
        let mono = monodromy_generators(&f).unwrap();
        assert_eq!(mono.loops.len(), 1);
        assert_eq!(mono.loops[0].1, Permutation::full_cycle(5));
    }

    #[test]
    fn cubic_with_two_real_critical_values() {
        let f = Poly::from_int_coeffs(&[0, -1, 0, 1]); // z^3 - z
        let mono = monodromy_generators(&f).unwrap();
        assert_eq!(mono.loops.len(), 2);
        for (_, p) in &mono.loops {
            assert_eq!(p.cycles().len(), 1);
            assert_eq!(
                p.cycles()[0].len(),
                2,
                "simple critical point gives a 2-cycle"
            );
        }
        assert!(mono.tau_infinity_ok);
        let g = mono.group(10_000);
        assert_eq!(g.order().unwrap(), 6);
        assert!(g.is_two_transitive());
    }

    #[test]
    fn loop_reversal_gives_inverse() {
        let f = Poly::from_int_coeffs(&[-1, 0, 2, 1]);
        let lab = base_labeling(&f).unwrap();
        let t0 = C64::new(lab.norm_t0, 0.0);
        for j in 0..lab.norm_critical.critical_values.len() {
            let path = lasso_path(&lab.norm_critical, j, t0).unwrap();
            let fwd = loop_permutation_along(&lab, &path).unwrap();
            let back = loop_permutation_along(&lab, &reverse_path(&path)).unwrap();
            assert_eq!(fwd.then(&back), Permutation::identity(3));
        }
    }

    #[test]
    fn composed_nonic_consistency() {
        let outer = Poly::from_int_coeffs(&[0, 1, -1, 1]);
        let inner = Poly::from_int_coeffs(&[-1, 0, 2, 1]);
        let f = compose(&outer, &inner);
        let mono = monodromy_generators(&f).unwrap();
        assert!(mono.tau_infinity_ok);
        assert_eq!(mono.labeling.fiber.len(), 9);
        // blocks of the inner factor are the residue classes mod 3
        let group = mono.group(2_000_000);
        let systems = group.imprimitivity_blocks().unwrap();
        assert_eq!(systems.len(), 1);
        assert_eq!(
            systems[0],
            crate::monodromy::perm::BlockSystem::residue_classes(9, 3)
        );
    }

    #[test]
    fn public_loop_permutation_by_value() {
        // the two finite loops of z^3 + 2z^2 - 1 are transpositions whose
        // in-order product is the 3-cycle
        let f = Poly::from_int_coeffs(&[-1, 0, 2, 1]);
        let lab = base_labeling(&f).unwrap();
        let p1 = loop_permutation(&f, &lab, C64::new(-1.0, 0.0)).unwrap();
        let p2 = loop_permutation(&f, &lab, C64::new(5.0 / 27.0, 0.0)).unwrap();
        assert_eq!(p1.cycles()[0].len(), 2);
        assert_eq!(p2.cycles()[0].len(), 2);
        let mono = monodromy_generators(&f).unwrap();
        let product = mono
            .loops
            .iter()
            .fold(Permutation::identity(3), |acc, (_, p)| acc.then(p));
        assert_eq!(product, Permutation::full_cycle(3));
        // an off-critical value is rejected
        assert!(loop_permutation(&f, &lab, C64::new(9.9, 0.0)).is_err());
    }
}
