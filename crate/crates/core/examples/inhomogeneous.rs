//! The inhomogeneous problem: integral over a chain equal to a prescribed
//! polynomial p(t). Solvable exactly when the chain is not a cycle, with
//! particular solution (p o f) / (sum of coefficients).
//!
//!     cargo run --example inhomogeneous

use zerocycle::cycles::Chain;
use zerocycle::polycore::Poly;
use zerocycle::solver::solve_inhomogeneous;

fn main() {
    let f = Poly::from_int_coeffs(&[-1, 0, 2, 1]);
    let p = Poly::var();

    // chain with nonzero total weight: a particular solution exists
    let chain = Chain::new(vec![1, 1, 1]);
    let g = solve_inhomogeneous(&chain, &f, &p).expect("particular solution");
    println!(
        "sum n_i g(z_i(t)) = t over {:?} is solved by g = {g}",
        chain.coeffs()
    );

    // over a cycle the integral of any g vanishes after averaging, so a
    // nonzero right-hand side is unreachable
    let cycle = Chain::new(vec![1, -1]);
    match solve_inhomogeneous(&cycle, &Poly::from_int_coeffs(&[0, 0, 1]), &Poly::one()) {
        Err(e) => println!("over the cycle {:?}: {e}", cycle.coeffs()),
        Ok(_) => unreachable!("cycles admit no inhomogeneous solution"),
    }
}
