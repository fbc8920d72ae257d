//! Newton-Girard power sums of the roots of h(z) - w: computed exactly from
//! the coefficients, then cross-checked numerically at sample values of w.
//!
//!     cargo run --example newton_girard

use zerocycle::oracle::{ng_crosscheck, SamplePlan};
use zerocycle::polycore::{chebyshev, power_sums, Poly};

fn main() {
    let plan = SamplePlan::with_count(5);
    for h in [
        Poly::from_int_coeffs(&[-1, 0, 2, 1]),
        Poly::from_int_coeffs(&[0, 0, 0, 1]),
        chebyshev(3),
        chebyshev(4),
    ] {
        let d = h.deg();
        let s = power_sums(&h, d).expect("power sums");
        let rendered: Vec<String> = s.iter().map(|v| v.to_coeff_string()).collect();
        println!("h = {h}");
        println!("  s(h) = ({})", rendered.join(", "));
        let deviation = ng_crosscheck(&h, &plan).expect("crosscheck");
        println!("  max deviation from summed root powers: {deviation:.3e}\n");
    }

    // asking for s_k with k >= deg(h) is refused: those sums depend on w
    let err = power_sums(&chebyshev(3), 4).unwrap_err();
    println!("power_sums(T_3, 4) -> {err}");
}
