//! End-to-end run on a composition of two two-transitive cubics with a
//! balanced cycle: the solution space is cut out by a digit constraint
//! against the Newton-Girard vector of the inner factor, with the combined
//! digit solving the projected problem.
//!
//!     cargo run --example solve_two_transitive_tower

use zerocycle::cycles::{is_balanced, project, Chain};
use zerocycle::decompose::decompose_chain;
use zerocycle::monodromy::{monodromy_generators, BlockSystem};
use zerocycle::oracle::{IntegralEvaluator, SamplePlan};
use zerocycle::polycore::{compose, Poly};
use zerocycle::solver::{render_text, sample_solutions, solve, SolveOptions};

fn main() {
    let outer = Poly::from_int_coeffs(&[0, 1, -1, 1]);
    let inner = Poly::from_int_coeffs(&[-1, 0, 2, 1]);
    let f = compose(&outer, &inner);
    let cycle = Chain::new(vec![1, -1, 0, 1, -1, 0, 1, -1, 0]);

    let chain = decompose_chain(&f).expect("decomposition");
    println!("factors: {:?}", chain.factor_degrees());
    println!("classes: {:?}\n", chain.factor_tags());

    let group = monodromy_generators(&f)
        .expect("monodromy")
        .group(2_000_000);
    println!("cycle balanced: {}", is_balanced(&cycle, &group));
    let blocks = BlockSystem::residue_classes(9, 3);
    let projected = project(&cycle, &blocks).expect("projection");
    println!("projected cycle: {:?}\n", projected.coeffs());

    let space = solve(&chain, &cycle, &SolveOptions::default()).expect("solve");
    print!("{}", render_text(&space, 0));

    let samples = sample_solutions(&space, 12, 5, 7);
    let plan = SamplePlan::with_count(8);
    let evaluator = IntegralEvaluator::new(&f, &plan).expect("evaluator");
    println!("\nsampled members and their oracle residuals:");
    for g in &samples {
        let worst = evaluator
            .residuals(&cycle, g)
            .into_iter()
            .fold(0.0_f64, f64::max);
        println!("  residual {worst:.2e}   g = {g}");
    }
}
