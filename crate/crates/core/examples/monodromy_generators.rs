//! Compute the monodromy generators of a polynomial by numerical
//! continuation of the full root fiber around each critical value.
//!
//!     cargo run --example monodromy_generators

use zerocycle::monodromy::monodromy_generators;
use zerocycle::polycore::Poly;

fn main() {
    for f in [
        Poly::from_int_coeffs(&[0, -1, 0, 1]),         // z^3 - z
        Poly::from_int_coeffs(&[-1, 0, 2, 1]),         // z^3 + 2z^2 - 1
        Poly::from_int_coeffs(&[0, 0, 0, 0, 0, 0, 1]), // z^6
    ] {
        println!("f = {f}");
        let mono = monodromy_generators(&f).expect("monodromy");
        println!("  basepoint t0 = {:.6}", mono.labeling.t0);
        for (value, perm) in &mono.loops {
            println!("  loop around {:>24}: {perm}", format!("{:.6}", value));
        }
        println!(
            "  in-order product is the full cycle: {}",
            mono.tau_infinity_ok
        );

        let group = mono.group(1_000_000);
        println!("  |G_f| = {:?}", group.order());
        println!("  two-transitive: {}", group.is_two_transitive());
        let blocks = group.imprimitivity_blocks().expect("transitive");
        if blocks.is_empty() {
            println!("  primitive action (no nontrivial block systems)");
        } else {
            for sys in blocks {
                println!("  block system: {:?}", sys.one_based());
            }
        }
        println!();
    }
}
