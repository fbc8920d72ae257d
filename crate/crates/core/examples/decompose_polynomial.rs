//! Decompose a polynomial into its canonical composition chain and check
//! the non-merging hypothesis on critical values.
//!
//!     cargo run --example decompose_polynomial

use zerocycle::decompose::{decompose_chain, enumerate_right_factors};
use zerocycle::polycore::{compose, GRat, Poly};

fn main() {
    // (z^3 - z^2 + z) o z^6: a two-transitive outer factor over a monomial
    let outer = Poly::from_int_coeffs(&[0, 1, -1, 1]);
    let inner = Poly::monomial(6, GRat::one());
    let f = compose(&outer, &inner);
    println!("f = {f}\n");

    let chain = decompose_chain(&f).expect("decomposition");
    for (k, factor) in chain.factors.iter().enumerate() {
        println!(
            "factor {k}: degree {:2}  class {:22}  {}",
            factor.poly.deg(),
            factor.class.tag.as_str(),
            factor.poly
        );
    }
    println!("\nhypothesis_ok = {}", chain.hypothesis_ok);
    if let Some(w) = &chain.hypothesis_witness {
        println!("witness: {w}");
    }

    println!("\nright factors (f = ftilde o h):");
    for (ftilde, h) in enumerate_right_factors(&chain) {
        println!("  deg h = {:2}: h = {h}", h.deg());
        assert_eq!(compose(&ftilde, &h), f);
    }
}
