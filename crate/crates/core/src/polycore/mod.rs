//! Exact univariate polynomial arithmetic over the Gaussian rationals,
//! plus the special families (Chebyshev, cyclotomic) and base-f expansion.

pub mod poly;
pub mod scalar;

pub use poly::{
    chebyshev, compose, compose_all, cyclotomic, f_adic_expand, from_chebyshev_basis,
    poly_from_strings, poly_to_strings, power_sums, to_chebyshev_basis, FAdicExpansion, Poly,
};
pub use scalar::{rat, rat_int, rational_sqrt, GRat, Rational};

/// Divisors of n in ascending order.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    let mut result = n;
    let mut n = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_and_totient_tables() {
        assert_eq!(divisors(6), vec![1, 2, 3, 6]);
        assert_eq!(divisors(1), vec![1]);
        let phi: Vec<usize> = (1..=12).map(totient).collect();
        assert_eq!(phi, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }
}
