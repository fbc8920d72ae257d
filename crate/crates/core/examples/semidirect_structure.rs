//! The monodromy group of a non-merging composition splits as a semidirect
//! product: the normal closure of the inner loops against the subgroup
//! generated by the outer loops.
//!
//!     cargo run --example semidirect_structure

use zerocycle::oracle::semidirect_check;
use zerocycle::polycore::{GRat, Poly};

fn main() {
    let outer = Poly::from_int_coeffs(&[0, 1, -1, 1]);
    for inner in [
        Poly::from_int_coeffs(&[-1, 0, 2, 1]),
        Poly::monomial(6, GRat::one()),
    ] {
        println!("f = ({outer}) o ({inner})");
        match semidirect_check(&outer, &inner, 2_000_000) {
            Ok(rep) => {
                println!(
                    "  |G_f| = {} = {} * {} (normal x outer): {}",
                    rep.order_full,
                    rep.order_normal,
                    rep.order_outer,
                    if rep.product_matches {
                        "splits"
                    } else {
                        "MISMATCH"
                    }
                );
                println!("  trivial intersection: {}", rep.intersection_trivial);
                println!(
                    "  outer loops map blocks onto blocks: {}",
                    rep.alpha_blocks_ok
                );
                println!(
                    "  inner loops move one block only:    {}",
                    rep.beta_blocks_ok
                );
            }
            Err(e) => println!("  {e}"),
        }
        println!();
    }

    // a merged tower is gated
    let merged = semidirect_check(
        &Poly::monomial(2, GRat::one()),
        &Poly::monomial(3, GRat::one()),
        1_000_000,
    );
    println!("z^2 o z^3 -> {:?}", merged.err().map(|e| e.to_string()));
}
