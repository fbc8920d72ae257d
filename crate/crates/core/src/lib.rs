//! Solver for the tangential center problem on 0-cycles.
//!
//! Given a polynomial f of degree m, the m algebraic functions z_k(t) defined
//! by f(z_k(t)) = t, and an integer 0-cycle C(t) = sum n_i z_i(t) with
//! sum n_i = 0, this crate computes and verifies the space of polynomials g
//! whose 0-dimensional abelian integral sum n_i g(z_i(t)) vanishes
//! identically.
//!
//! The pipeline:
//! - [`polycore`]: exact polynomial arithmetic over Q(i), Chebyshev and
//!   cyclotomic families, base-f digit expansions, Newton-Girard power sums;
//! - [`monodromy`]: numerical monodromy generators under a canonical root
//!   labeling, plus permutation-group algorithms (2-transitivity, blocks);
//! - [`decompose`]: the canonical composition chain of f into 2-transitive,
//!   monomial-equivalent and Chebyshev-equivalent factors, with the
//!   non-merging check on critical values;
//! - [`cycles`]: 0-chains, characteristic polynomials, exact balancedness,
//!   projections and invariant parts along an inner factor;
//! - [`solver`]: the recursive solution space (composition sums for
//!   unbalanced cycles, cyclotomic exponent spaces and power-sum digit
//!   constraints for balanced ones);
//! - [`oracle`]: independent numerical verification by direct evaluation of
//!   the integrals along continued fibers.

pub mod cli;
pub mod cycles;
pub mod decompose;
pub mod error;
pub mod linalg;
pub mod monodromy;
pub mod numeric;
pub mod oracle;
pub mod polycore;
pub mod rng;
pub mod solver;

pub use error::Error;
