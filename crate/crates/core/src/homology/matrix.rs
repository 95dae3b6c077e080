use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex};

/// Dense row-major `i64` matrix, used for exported boundary operators.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: i64) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| *x == 0)
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// The boundary map `∂_k : C_k → C_{k−1}` together with the simplex bases
/// indexing its columns (`k`-simplices) and rows (`(k−1)`-simplices), both
/// in canonical order.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub matrix: IntMatrix,
    pub row_basis: Vec<Simplex>,
    pub col_basis: Vec<Simplex>,
}

/// Absolute boundary operator of `k` in the given degree. Degree 0 yields a
/// matrix with no rows.
pub fn boundary_operator(k: &SimplicialComplex, degree: usize) -> BoundaryMatrix {
    relative_boundary_operator(k, &SimplicialComplex::new(), degree)
}

/// Boundary operator on relative chains `C_*(K)/C_*(A)`: simplices of `A`
/// are dropped from both bases.
pub fn relative_boundary_operator(
    k: &SimplicialComplex,
    a: &SimplicialComplex,
    degree: usize,
) -> BoundaryMatrix {
    let col_basis: Vec<Simplex> = k
        .simplices_of_dim(degree)
        .into_iter()
        .filter(|s| !a.contains(s))
        .collect();
    let row_basis: Vec<Simplex> = if degree == 0 {
        Vec::new()
    } else {
        k.simplices_of_dim(degree - 1)
            .into_iter()
            .filter(|s| !a.contains(s))
            .collect()
    };
    let row_index: BTreeMap<&Simplex, usize> =
        row_basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut matrix = IntMatrix::zeros(row_basis.len(), col_basis.len());
    if degree > 0 {
        for (c, s) in col_basis.iter().enumerate() {
            for (i, f) in s.facets().iter().enumerate() {
                if let Some(r) = row_index.get(f) {
                    matrix.set(*r, c, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
    }
    BoundaryMatrix {
        matrix,
        row_basis,
        col_basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn edge_and_triangle_conventions() {
        let e = boundary_operator(&fixtures::simplex(1), 1);
        assert_eq!(e.matrix.column(0), vec![-1, 1]);
        let t = boundary_operator(&fixtures::simplex(2), 2);
        // rows [0,1],[0,2],[1,2]; facets of [0,1,2]: [1,2]+, [0,2]-, [0,1]+
        assert_eq!(t.matrix.column(0), vec![1, -1, 1]);
    }

    #[test]
    fn boundary_squares_to_zero_on_sphere() {
        let k = fixtures::boundary_of_simplex(3);
        for d in 1..=2 {
            let a = boundary_operator(&k, d);
            let b = boundary_operator(&k, d + 1);
            if b.col_basis.is_empty() {
                continue;
            }
            assert!(a.matrix.mul(&b.matrix).is_zero());
        }
    }

    #[test]
    fn relative_drops_subcomplex() {
        let k = fixtures::simplex(2);
        let a = fixtures::boundary_of_simplex(2);
        let m = relative_boundary_operator(&k, &a, 2);
        assert_eq!(m.matrix.rows(), 0);
        assert_eq!(m.matrix.cols(), 1);
    }
}
