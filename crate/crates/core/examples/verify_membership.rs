//! Membership verdicts: structural nodes decide exactly, composition sums
//! defer to the numeric integral oracle.
//!
//!     cargo run --example verify_membership

use zerocycle::cycles::Chain;
use zerocycle::decompose::decompose_chain;
use zerocycle::oracle::SamplePlan;
use zerocycle::polycore::{compose, Poly};
use zerocycle::solver::{contains, solve, SolveOptions};

fn main() {
    let outer = Poly::from_int_coeffs(&[0, 1, -1, 1]);
    let inner = Poly::from_int_coeffs(&[-1, 0, 2, 1]);
    let f = compose(&outer, &inner);
    let cycle = Chain::new(vec![1, -1, 0, 1, -1, 0, 1, -1, 0]);

    let chain = decompose_chain(&f).expect("decomposition");
    let space = solve(&chain, &cycle, &SolveOptions::default()).expect("solve");
    let plan = SamplePlan::with_count(10);

    for g in [
        Poly::one(),
        Poly::var(),
        Poly::from_int_coeffs(&[0, 0, 0, 1]),
        f.clone(),
        Poly::from_int_coeffs(&[5, 2]),
    ] {
        let verdict = contains(&space, &g, &f, &cycle, &plan).expect("verdict");
        println!("g = {g}\n  -> {verdict:?}\n");
    }
}
