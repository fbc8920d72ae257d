//! 0-chains and 0-cycles under the canonical labeling: characteristic
//! polynomial, exact balancedness via cyclotomic divisibility on the orbit
//! span, projection along an inner factor, invariant parts, and the module
//! structure of the solution space.
//!
//! Every root-of-unity decision here is a divisibility test by a cyclotomic
//! polynomial in exact arithmetic; no floating epsilon_m appears anywhere on
//! a decision path.

use crate::error::Error;
use crate::linalg;
use crate::monodromy::{BlockSystem, PermGroup, Permutation};
use crate::polycore::{cyclotomic, totient, GRat, Poly};
use serde::Serialize;

/// Integer coefficient vector (n_1, ..., n_m) of a 0-chain in the canonical
/// labeling; entry i carries the coefficient of root label i+1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chain {
    coeffs: Vec<i64>,
}

impl Chain {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Chain { coeffs }
    }

    pub fn zero(m: usize) -> Self {
        Chain { coeffs: vec![0; m] }
    }

    pub fn m(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    pub fn sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// A chain is a cycle when its coefficients sum to zero.
    pub fn is_cycle(&self) -> bool {
        self.sum() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&n| n == 0)
    }

    pub fn is_constant(&self) -> Option<i64> {
        let first = *self.coeffs.first()?;
        self.coeffs.iter().all(|&n| n == first).then_some(first)
    }

    /// Relabeled chain with coefficients n_{sigma(i)}.
    pub fn relabel(&self, sigma: &Permutation) -> Chain {
        Chain {
            coeffs: (0..self.m()).map(|i| self.coeffs[sigma.apply(i)]).collect(),
        }
    }
}

/// P_C(z) = sum_j n_j z^(j-1).
pub fn characteristic_poly(chain: &Chain) -> Poly {
    Poly::new(chain.coeffs.iter().map(|&n| GRat::from_int(n)).collect())
}

/// Rational span of the orbit of the chain under the group action, kept in
/// reduced row echelon form.
#[derive(Clone, Debug)]
pub struct OrbitSpan {
    basis: Vec<Vec<GRat>>,
    pivots: Vec<usize>,
}

impl OrbitSpan {
    pub fn basis(&self) -> &[Vec<GRat>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[GRat]) -> bool {
        linalg::in_span(&self.basis, &self.pivots, v)
    }
}

/// Closure: apply generators to basis vectors until the rank stabilizes.
pub fn orbit_span(chain: &Chain, group: &PermGroup) -> OrbitSpan {
    assert_eq!(
        group.degree(),
        chain.m(),
        "group degree must match chain length"
    );
    let start: Vec<GRat> = chain.coeffs.iter().map(|&n| GRat::from_int(n)).collect();
    let mut basis: Vec<Vec<GRat>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        if v.iter().all(GRat::is_zero) {
            continue;
        }
        if !basis.is_empty() && linalg::in_span(&basis, &pivots, &v) {
            continue;
        }
        basis.push(v.clone());
        pivots = linalg::rref(&mut basis);
        for g in group.generators() {
            let image: Vec<GRat> = (0..v.len()).map(|i| v[g.apply(i)].clone()).collect();
            queue.push(image);
        }
    }
    OrbitSpan { basis, pivots }
}

/// Exact balancedness: the primitive-root vector is orthogonal to the orbit
/// span, tested as divisibility of each basis polynomial by Phi_m.
pub fn is_balanced(chain: &Chain, group: &PermGroup) -> bool {
    let m = chain.m();
    if m == 0 || chain.is_zero() {
        return true;
    }
    let phi = cyclotomic(m);
    let span = orbit_span(chain, group);
    span.basis
        .iter()
        .all(|b| phi.divides(&Poly::new(b.clone())))
}

/// Projection of the chain along the imprimitivity system of an inner
/// factor: coefficient of block k is the sum over that block.
pub fn project(chain: &Chain, blocks: &BlockSystem) -> Result<Chain, Error> {
    validate_blocks(chain, blocks)?;
    let coeffs = blocks
        .blocks()
        .iter()
        .map(|cell| cell.iter().map(|&i| chain.coeffs[i]).sum())
        .collect();
    Ok(Chain { coeffs })
}

/// The restrictions of the chain to individual blocks, each read as a chain
/// of the inner factor with within-block positions in label order.
pub fn invariant_parts(chain: &Chain, blocks: &BlockSystem) -> Result<Vec<Chain>, Error> {
    validate_blocks(chain, blocks)?;
    Ok(blocks
        .blocks()
        .iter()
        .map(|cell| Chain::new(cell.iter().map(|&i| chain.coeffs[i]).collect()))
        .collect())
}

fn validate_blocks(chain: &Chain, blocks: &BlockSystem) -> Result<(), Error> {
    let m = chain.m();
    let total: usize = blocks.blocks().iter().map(Vec::len).sum();
    let size = blocks.block_size();
    if total != m
        || blocks.blocks().iter().any(|b| b.len() != size)
        || blocks.blocks().iter().flatten().any(|&i| i >= m)
    {
        return Err(Error::ShapeError(format!(
            "block system does not partition 1..{m} into equal cells"
        )));
    }
    let mut seen = vec![false; m];
    for &i in blocks.blocks().iter().flatten() {
        if seen[i] {
            return Err(Error::ShapeError("blocks overlap".into()));
        }
        seen[i] = true;
    }
    Ok(())
}

/// One irreducible summand of the solution module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub divisor: usize,
    pub dimension: usize,
    /// exponents k in 0..m with gcd(m, k) = m/divisor (k = 0 counts as m)
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleStructure {
    pub summands: Vec<Summand>,
}

impl ModuleStructure {
    /// Union of all summand indices.
    pub fn solution_indices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .summands
            .iter()
            .flat_map(|s| s.indices.clone())
            .collect();
        out.sort_unstable();
        out
    }
}

/// Module structure of the solution space for a chain: the summand for
/// divisor d enters exactly when Phi_d divides P_C, carrying the exponents k
/// with gcd(m, k) = m/d and dimension phi(d).
pub fn module_structure(chain: &Chain, divisors_of_f: &[usize]) -> ModuleStructure {
    let m = chain.m();
    let p_c = characteristic_poly(chain);
    let mut summands = Vec::new();
    for &d in divisors_of_f {
        if d == 0 || !m.is_multiple_of(d) {
            continue;
        }
        if !cyclotomic(d).divides(&p_c) {
            continue;
        }
        let indices: Vec<usize> = (0..m)
            .filter(|&k| {
                let g = if k == 0 { m } else { gcd(m, k) };
                m / g == d
            })
            .collect();
        debug_assert_eq!(indices.len(), totient(d));
        summands.push(Summand {
            divisor: d,
            dimension: totient(d),
            indices,
        });
    }
    summands.sort_by_key(|s| s.divisor);
    ModuleStructure { summands }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Allowed base exponents for a chain of z^m or T_m: j in 0..m such that
/// Phi_{m / gcd(m, j)} divides P_C.
pub fn allowed_exponents(chain: &Chain) -> Vec<usize> {
    let m = chain.m();
    let p_c = characteristic_poly(chain);
    let mut cache: std::collections::BTreeMap<usize, bool> = Default::default();
    (0..m)
        .filter(|&j| {
            let g = if j == 0 { m } else { gcd(m, j) };
            let d = m / g;
            *cache
                .entry(d)
                .or_insert_with(|| cyclotomic(d).divides(&p_c))
        })
        .collect()
}
