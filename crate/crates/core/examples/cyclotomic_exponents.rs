//! The monomial base case: which powers z^j integrate to zero over a cycle
//! of z^m is decided by cyclotomic divisibility of the characteristic
//! polynomial, and the answer matches the direct numeric integrals.
//!
//!     cargo run --example cyclotomic_exponents

use zerocycle::cycles::{characteristic_poly, module_structure, Chain};
use zerocycle::oracle::{IntegralEvaluator, SamplePlan};
use zerocycle::polycore::{divisors, GRat, Poly};
use zerocycle::solver::{solve_base_monomial_chebyshev, BaseKind};

fn main() {
    let m = 6usize;
    let f = Poly::monomial(m, GRat::one());
    let plan = SamplePlan::with_count(5);
    let evaluator = IntegralEvaluator::new(&f, &plan).expect("evaluator");

    for coeffs in [vec![1, -1, 1, -1, 1, -1], vec![2, -1, -1, 2, -1, -1]] {
        let chain = Chain::new(coeffs.clone());
        println!("cycle {coeffs:?}");
        println!("  P_C = {}", characteristic_poly(&chain));

        let node = solve_base_monomial_chebyshev(&chain, BaseKind::Power, m);
        println!("  allowed exponents: {:?}", node.allowed);

        let structure = module_structure(&chain, &divisors(m));
        for s in &structure.summands {
            println!(
                "  summand divisor {}: dimension {} (exponents {:?})",
                s.divisor, s.dimension, s.indices
            );
        }

        print!("  oracle residuals:");
        for j in 0..m {
            let g = Poly::monomial(j, GRat::one());
            let worst = evaluator
                .residuals(&chain, &g)
                .into_iter()
                .fold(0.0_f64, f64::max);
            print!("  z^{j}: {worst:.1e}");
        }
        println!("\n");
    }
}
