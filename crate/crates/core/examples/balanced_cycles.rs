//! Balancedness of chains: the exact orbit-span criterion (divisibility of
//! every basis polynomial by the m-th cyclotomic), brute force over the full
//! group, and invariance under relabeling.
//!
//!     cargo run --example balanced_cycles

use zerocycle::cycles::{is_balanced, orbit_span, Chain};
use zerocycle::monodromy::monodromy_generators;
use zerocycle::oracle::brute_force_balanced;
use zerocycle::polycore::{GRat, Poly};

fn main() {
    let f = Poly::monomial(6, GRat::one());
    let group = monodromy_generators(&f).expect("monodromy").group(100_000);

    for coeffs in [
        vec![1, -1, 1, -1, 1, -1],
        vec![2, -1, -1, 2, -1, -1],
        vec![1, -1, 0, 0, 0, 0],
    ] {
        let chain = Chain::new(coeffs.clone());
        let span = orbit_span(&chain, &group);
        let balanced = is_balanced(&chain, &group);
        let brute = brute_force_balanced(&chain, &group).expect("enumeration");
        println!(
            "chain {coeffs:?}: orbit rank {}, balanced = {balanced} (brute force {brute})",
            span.rank()
        );
        assert_eq!(balanced, brute);

        // relabeling by group elements never changes the verdict
        for sigma in group.elements().expect("enumeration").iter().take(6) {
            assert_eq!(is_balanced(&chain.relabel(sigma), &group), balanced);
        }
    }

    // over a two-transitive polynomial, balanced chains are constant
    let f = Poly::from_int_coeffs(&[0, -1, 0, 1]);
    let group = monodromy_generators(&f).expect("monodromy").group(100_000);
    println!("\nz^3 - z (two-transitive):");
    for coeffs in [vec![1, 1, 1], vec![1, -1, 0], vec![2, 2, 2]] {
        let chain = Chain::new(coeffs.clone());
        println!("  {coeffs:?} balanced = {}", is_balanced(&chain, &group));
    }
}
