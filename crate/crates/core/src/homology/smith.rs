//! Exact integer elimination: kernels with unimodular change of basis and
//! Smith normal form with tracked row transformations.
//!
//! Pivots are always chosen with minimal absolute value among the
//! candidates, which keeps intermediate entries small on the sparse boundary
//! matrices this crate produces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major dense matrix of big integers.
pub(crate) type BigMatrix = Vec<Vec<BigInt>>;

pub(crate) fn identity(n: usize) -> BigMatrix {
    (0..n)
        .map(|i| {
            let mut row = vec![BigInt::zero(); n];
            row[i] = BigInt::one();
            row
        })
        .collect()
}

/// `dst += q * src` on slices of equal length, skipping zeros.
fn axpy(dst: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += q * s;
        }
    }
}

/// Result of reducing the columns of an `m × n` matrix `A` by unimodular
/// column operations: `A·W` has its nonzero columns in echelon form and the
/// remaining columns zero.
pub(crate) struct KernelReduction {
    /// Columns of `W` spanning `ker A` (a basis of a saturated lattice).
    pub kernel_basis: Vec<Vec<BigInt>>,
    /// Matching rows of `W⁻¹`: for `x ∈ ker A`, `x = Σ (row_i · x) basis_i`.
    pub kernel_coordinates: Vec<Vec<BigInt>>,
    pub rank: usize,
}

/// `columns[j]` is column `j` of `A` (each of length `m`).
pub(crate) fn kernel_reduction(mut columns: Vec<Vec<BigInt>>, m: usize) -> KernelReduction {
    let n = columns.len();
    let mut w_cols = identity(n); // w_cols[j] is column j of W
    let mut w_inv = identity(n); // w_inv[i] is row i of W⁻¹
    let mut active: Vec<bool> = vec![true; n];
    let mut rank = 0;

    for i in 0..m {
        loop {
            let nz: Vec<usize> = (0..n)
                .filter(|j| active[*j] && !columns[*j][i].is_zero())
                .collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz
                .iter()
                .min_by(|a, b| columns[**a][i].abs().cmp(&columns[**b][i].abs()).then(a.cmp(b)))
                .expect("nonempty");
            if nz.len() == 1 {
                active[p] = false;
                rank += 1;
                break;
            }
            let pivot_col = columns[p].clone();
            let pivot_w = w_cols[p].clone();
            for &j in nz.iter().filter(|j| **j != p) {
                let q = columns[j][i].div_floor(&pivot_col[i]);
                if q.is_zero() {
                    continue;
                }
                let neg = -&q;
                axpy(&mut columns[j], &neg, &pivot_col);
                axpy(&mut w_cols[j], &neg, &pivot_w);
                // W⁻¹ ← E⁻¹ W⁻¹ with E⁻¹ adding q·row_j to row_p
                let row_j = w_inv[j].clone();
                axpy(&mut w_inv[p], &q, &row_j);
            }
        }
    }

    let mut kernel_basis = Vec::new();
    let mut kernel_coordinates = Vec::new();
    for j in 0..n {
        if active[j] {
            debug_assert!(columns[j].iter().all(Zero::is_zero));
            kernel_basis.push(std::mem::take(&mut w_cols[j]));
            kernel_coordinates.push(std::mem::take(&mut w_inv[j]));
        }
    }
    KernelReduction {
        kernel_basis,
        kernel_coordinates,
        rank,
    }
}

/// Smith normal form `P·M·Q = D` of an `r × c` matrix, keeping `P` and
/// `P⁻¹`. The diagonal holds the positive invariant factors `d₀ | d₁ | ⋯`.
pub(crate) struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub p: BigMatrix,
    pub p_inv: BigMatrix,
}

pub(crate) fn smith_form(mut m: BigMatrix, cols: usize) -> SmithForm {
    let r = m.len();
    let mut p = identity(r);
    let mut p_inv = identity(r);
    let mut diagonal = Vec::new();

    // row_a += q·row_b, tracked
    let row_add = |m: &mut BigMatrix, p: &mut BigMatrix, p_inv: &mut BigMatrix, a: usize, b: usize, q: &BigInt| {
        let src = m[b].clone();
        axpy(&mut m[a], q, &src);
        let src = p[b].clone();
        axpy(&mut p[a], q, &src);
        // P⁻¹ ← P⁻¹ E⁻¹: column b −= q·column a
        for row in p_inv.iter_mut() {
            if !row[a].is_zero() {
                let delta = q * &row[a];
                row[b] -= delta;
            }
        }
    };
    let row_swap = |m: &mut BigMatrix, p: &mut BigMatrix, p_inv: &mut BigMatrix, a: usize, b: usize| {
        m.swap(a, b);
        p.swap(a, b);
        for row in p_inv.iter_mut() {
            row.swap(a, b);
        }
    };
    let col_add = |m: &mut BigMatrix, a: usize, b: usize, q: &BigInt| {
        for row in m.iter_mut() {
            if !row[b].is_zero() {
                let delta = q * &row[b];
                row[a] += delta;
            }
        }
    };
    let col_swap = |m: &mut BigMatrix, a: usize, b: usize| {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    };

    let mut t = 0;
    while t < r.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..cols {
                if m[i][j].is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => m[i][j].abs() < m[bi][bj].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        if bi != t {
            row_swap(&mut m, &mut p, &mut p_inv, t, bi);
        }
        if bj != t {
            col_swap(&mut m, t, bj);
        }

        loop {
            let mut clean = true;
            for i in t + 1..r {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = -m[i][t].div_floor(&m[t][t]);
                row_add(&mut m, &mut p, &mut p_inv, i, t, &q);
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = -m[t][j].div_floor(&m[t][t]);
                col_add(&mut m, j, t, &q);
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // move the smallest remainder in row/column t onto the pivot
                let mut best = (t, t);
                for i in t + 1..r {
                    if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    row_swap(&mut m, &mut p, &mut p_inv, t, best.0);
                } else if best.1 != t {
                    col_swap(&mut m, t, best.1);
                }
                continue;
            }
            // divisibility of the trailing block by the pivot
            let offender = (t + 1..r).find(|i| {
                (t + 1..cols).any(|j| !m[*i][j].is_zero() && !m[*i][j].is_multiple_of(&m[t][t]))
            });
            match offender {
                Some(i) => row_add(&mut m, &mut p, &mut p_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut().chain(p[t].iter_mut()) {
                *x = -&*x;
            }
            for row in p_inv.iter_mut() {
                row[t] = -&row[t];
            }
        }
        diagonal.push(m[t][t].clone());
        t += 1;
    }
    SmithForm { diagonal, p, p_inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> BigMatrix {
        rows.iter()
            .map(|r| r.iter().map(|x| BigInt::from(*x)).collect())
            .collect()
    }

    fn mul(a: &BigMatrix, b: &BigMatrix, inner: usize, cols: usize) -> BigMatrix {
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn smith_of_small_matrix() {
        let m = big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_form(m.clone(), 3);
        let d: Vec<i64> = s.diagonal.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
        let prod = mul(&s.p, &s.p_inv, 3, 3);
        assert_eq!(prod, identity(3));
    }

    #[test]
    fn kernel_of_rank_one() {
        // A = [1 1 1]
        let cols = vec![vec![BigInt::one()]; 3];
        let k = kernel_reduction(cols, 1);
        assert_eq!(k.rank, 1);
        assert_eq!(k.kernel_basis.len(), 2);
        for (v, row) in k.kernel_basis.iter().zip(&k.kernel_coordinates) {
            let s: BigInt = v.iter().sum();
            assert!(s.is_zero());
            let dot: BigInt = row.iter().zip(v).map(|(a, b)| a * b).sum();
            assert_eq!(dot, BigInt::one());
        }
    }
}
