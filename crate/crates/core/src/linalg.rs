//! Small exact linear algebra over Q(i): row reduction, rank, kernels.
//! Matrices are plain Vec-of-rows; dimensions here never exceed a few dozen.

use crate::polycore::GRat;

/// Reduced row echelon form in place; returns pivot column per row.
pub fn rref(rows: &mut Vec<Vec<GRat>>) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                    let sub = &factor * p;
                    *x = &*x - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    pivots
}

pub fn rank(rows: &[Vec<GRat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Is v in the row span of basis (basis assumed in RREF)?
pub fn in_span(basis: &[Vec<GRat>], pivots: &[usize], v: &[GRat]) -> bool {
    let mut v = v.to_vec();
    for (row, &p) in basis.iter().zip(pivots) {
        if !v[p].is_zero() {
            let factor = v[p].clone();
            for j in 0..v.len() {
                let sub = &factor * &row[j];
                v[j] = &v[j] - &sub;
            }
        }
    }
    v.iter().all(GRat::is_zero)
}

/// Basis of the kernel of the linear map x -> M x (rows of m are equations).
pub fn kernel_basis(m: &[Vec<GRat>], ncols: usize) -> Vec<Vec<GRat>> {
    let mut rows = m.to_vec();
    let pivots = rref(&mut rows);
    let mut out = Vec::new();
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![GRat::zero(); ncols];
        v[free] = GRat::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::GRat;

    fn g(n: i64) -> GRat {
        GRat::from_int(n)
    }

    #[test]
    fn rank_and_kernel() {
        let m = vec![
            vec![g(1), g(2), g(3)],
            vec![g(2), g(4), g(6)],
            vec![g(0), g(1), g(1)],
        ];
        assert_eq!(rank(&m), 2);
        let ker = kernel_basis(&m, 3);
        assert_eq!(ker.len(), 1);
        for row in &m {
            let dot = row
                .iter()
                .zip(&ker[0])
                .fold(GRat::zero(), |acc, (a, b)| &acc + &(a * b));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn span_membership() {
        let mut basis = vec![vec![g(1), g(0), g(1)], vec![g(0), g(1), g(1)]];
        let pivots = rref(&mut basis);
        assert!(in_span(&basis, &pivots, &[g(2), g(3), g(5)]));
        assert!(!in_span(&basis, &pivots, &[g(0), g(0), g(1)]));
    }
}
