//! End-to-end run on a two-transitive cubic over z^6 with a balanced
//! degree-18 cycle: solutions split as g = gt(h)/(d-1) + u, where the
//! allowed exponents of u avoid the multiples of 3.
//!
//!     cargo run --example solve_monomial_tower

use zerocycle::cycles::{characteristic_poly, invariant_parts, project, Chain};
use zerocycle::decompose::decompose_chain;
use zerocycle::monodromy::BlockSystem;
use zerocycle::oracle::{IntegralEvaluator, SamplePlan};
use zerocycle::polycore::{compose, GRat, Poly};
use zerocycle::solver::{
    contains, expanded_exponents, sample_solutions, solve, SolutionSpace, SolveOptions,
};

fn main() {
    let outer = Poly::from_int_coeffs(&[0, 1, -1, 1]);
    let inner = Poly::monomial(6, GRat::one());
    let f = compose(&outer, &inner);
    let mut coeffs = vec![0i64; 18];
    for base in [0, 6, 12] {
        coeffs[base] = 1;
        coeffs[base + 1] = -1;
    }
    let cycle = Chain::new(coeffs);

    let blocks = BlockSystem::residue_classes(18, 6);
    println!(
        "projected cycle: {:?}",
        project(&cycle, &blocks).unwrap().coeffs()
    );
    for (k, part) in invariant_parts(&cycle, &blocks).unwrap().iter().enumerate() {
        println!("part {}: P = {}", k + 1, characteristic_poly(part));
    }

    let chain = decompose_chain(&f).expect("decomposition");
    let space = solve(&chain, &cycle, &SolveOptions::default()).expect("solve");
    if let SolutionSpace::InvariantPartLift(node) = &space {
        println!(
            "\ninner degree {}, allowed residues {:?}",
            node.d, node.allowed
        );
        println!(
            "u-exponents up to 12: {:?}",
            expanded_exponents(&node.u_node(), 12)
        );
    }

    let plan = SamplePlan::with_count(8);
    let evaluator = IntegralEvaluator::new(&f, &plan).expect("evaluator");
    for g in sample_solutions(&space, 12, 4, 3) {
        let worst = evaluator
            .residuals(&cycle, &g)
            .into_iter()
            .fold(0.0_f64, f64::max);
        println!("member residual {worst:.2e} for g = {g}");
    }

    let z3 = Poly::monomial(3, GRat::one());
    let verdict = contains(&space, &z3, &f, &cycle, &plan).expect("verdict");
    let worst = evaluator
        .residuals(&cycle, &z3)
        .into_iter()
        .fold(0.0_f64, f64::max);
    println!("\nz^3 verdict: {verdict:?} (oracle residual {worst:.2e})");
}
