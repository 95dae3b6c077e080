//! Integer simplicial homology of pairs, with explicit generators and a
//! coordinate functional for every group, plus orientations, fundamental
//! classes and the evaluation of circuits in a target pair.

mod chain;
mod evaluate;
mod matrix;
mod orientation;
mod smith;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};

pub use chain::{oriented_simplex, IntChain};
pub use evaluate::{connecting_image, evaluate, induced_map, Evaluation};
pub use matrix::{boundary_operator, relative_boundary_operator, BoundaryMatrix, IntMatrix};
pub use orientation::{
    coherent_orientation, fundamental_class, induced_boundary_orientation, orient_circuit,
    OrientationAssignment,
};

/// `H_d(K, A; Z) ≅ Z^betti ⊕ ⊕ Z/tᵢ` with chosen generators.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<i64>,
    /// Free generators first, then one generator per torsion summand.
    pub generators: Vec<IntChain>,
    basis: Vec<Simplex>,
    index: BTreeMap<Simplex, usize>,
    /// One row per generator: coordinate of a cycle `x` is `row · x`.
    functionals: Vec<Vec<BigInt>>,
}

/// Free and torsion coordinates of a class in the chosen basis. Torsion
/// coordinates are reduced into `0..tᵢ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct Coordinates {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

impl Coordinates {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(|x| *x == 0)
    }
}

/// Homology of a pair `(K, A)` in every degree `0..=dim K`.
#[derive(Clone, Debug)]
pub struct HomologyResult {
    complex: SimplicialComplex,
    sub: SimplicialComplex,
    groups: Vec<HomologyGroup>,
}

/// Betti number and torsion of one degree, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct GroupSummary {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<i64>,
}

fn to_i64(x: &BigInt, what: &str) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(format!("{what}: {x}")))
}

/// `H_*(K, A; Z)`; pass an empty `a` for absolute homology.
pub fn homology(k: &SimplicialComplex, a: &SimplicialComplex) -> Result<HomologyResult> {
    a.check_subcomplex_of(k, "relative homology needs A ⊆ K")?;
    let top = k.dim();
    let mut groups = Vec::new();
    for d in 0..=top.max(-1) {
        groups.push(group_in_degree(k, a, d as usize)?);
    }
    Ok(HomologyResult {
        complex: k.clone(),
        sub: a.clone(),
        groups,
    })
}

fn group_in_degree(k: &SimplicialComplex, a: &SimplicialComplex, d: usize) -> Result<HomologyGroup> {
    let dmat = relative_boundary_operator(k, a, d);
    let basis = dmat.col_basis.clone();
    let n = basis.len();
    let m = dmat.row_basis.len();
    let columns: Vec<Vec<BigInt>> = (0..n)
        .map(|c| (0..m).map(|r| BigInt::from(dmat.matrix.get(r, c))).collect())
        .collect();
    let kernel = smith::kernel_reduction(columns, m);
    let z = kernel.kernel_basis.len();
    debug_assert_eq!(kernel.rank + z, n, "rank-nullity");

    // boundaries in kernel coordinates: M = (W⁻¹)_ker · ∂_{d+1}
    let up = relative_boundary_operator(k, a, d + 1);
    let cols_up = up.col_basis.len();
    let mut mmat = vec![vec![BigInt::zero(); cols_up]; z];
    for j in 0..cols_up {
        let nz: Vec<(usize, i64)> = (0..n)
            .map(|l| (l, up.matrix.get(l, j)))
            .filter(|(_, x)| *x != 0)
            .collect();
        for (i, row) in kernel.kernel_coordinates.iter().enumerate() {
            let mut acc = BigInt::zero();
            for (l, x) in &nz {
                if !row[*l].is_zero() {
                    acc += &row[*l] * *x;
                }
            }
            mmat[i][j] = acc;
        }
    }
    let snf = smith::smith_form(mmat, cols_up);
    let r = snf.diagonal.len();

    let mut free_idx = Vec::new();
    let mut torsion_idx = Vec::new();
    for i in 0..z {
        if i >= r {
            free_idx.push(i);
        } else if snf.diagonal[i] > BigInt::from(1) {
            torsion_idx.push(i);
        }
    }
    let mut torsion = Vec::new();
    for i in &torsion_idx {
        torsion.push(to_i64(&snf.diagonal[*i], "torsion coefficient")?);
    }

    let mut generators = Vec::new();
    let mut functionals = Vec::new();
    for &i in free_idx.iter().chain(&torsion_idx) {
        // generator: Σ_l kernel_basis[l] · P⁻¹[l][i]
        let mut coeffs = vec![BigInt::zero(); n];
        for l in 0..z {
            let c = &snf.p_inv[l][i];
            if c.is_zero() {
                continue;
            }
            for (acc, x) in coeffs.iter_mut().zip(&kernel.kernel_basis[l]) {
                if !x.is_zero() {
                    *acc += c * x;
                }
            }
        }
        let mut terms = Vec::new();
        for (s, c) in basis.iter().zip(&coeffs) {
            if !c.is_zero() {
                terms.push((s.clone(), to_i64(c, "generator coefficient")?));
            }
        }
        generators.push(IntChain::from_terms(d, terms)?);

        // functional: Σ_l P[i][l] · (W⁻¹)_ker[l]
        let mut row = vec![BigInt::zero(); n];
        for l in 0..z {
            let c = &snf.p[i][l];
            if c.is_zero() {
                continue;
            }
            for (acc, x) in row.iter_mut().zip(&kernel.kernel_coordinates[l]) {
                if !x.is_zero() {
                    *acc += c * x;
                }
            }
        }
        functionals.push(row);
    }

    let index = basis.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    Ok(HomologyGroup {
        degree: d,
        betti: free_idx.len(),
        torsion,
        generators,
        basis,
        index,
        functionals,
    })
}

impl HomologyResult {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn sub(&self) -> &SimplicialComplex {
        &self.sub
    }

    pub fn groups(&self) -> &[HomologyGroup] {
        &self.groups
    }

    pub fn group(&self, degree: usize) -> Option<&HomologyGroup> {
        self.groups.get(degree)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn summary(&self) -> Vec<GroupSummary> {
        self.groups
            .iter()
            .map(|g| GroupSummary {
                degree: g.degree,
                betti: g.betti,
                torsion: g.torsion.clone(),
            })
            .collect()
    }

    /// Checks that `z` is a relative cycle of `(K, A)`: every simplex in
    /// `K`, and `∂z` carried by `A`.
    pub fn check_relative_cycle(&self, z: &IntChain) -> Result<()> {
        if let Some(s) = z.support().find(|s| !self.complex.contains(s)) {
            return Err(Error::NotACycle(format!("simplex {s} is not in the complex")));
        }
        let rel = z.modulo(&self.sub);
        let b = rel.boundary()?.modulo(&self.sub);
        if let Some(s) = b.support().next() {
            return Err(Error::NotACycle(format!(
                "boundary has coefficient {} on {s} outside the subcomplex",
                b.coefficient(s)
            )));
        }
        Ok(())
    }

    /// Coordinates of the class of the relative cycle `z`.
    pub fn coordinates(&self, z: &IntChain) -> Result<Coordinates> {
        self.check_relative_cycle(z)?;
        let Some(g) = self.groups.get(z.degree) else {
            return Ok(Coordinates::default());
        };
        let rel = z.modulo(&self.sub);
        let x: Vec<(usize, i64)> = rel
            .coefficients()
            .iter()
            .map(|(s, c)| (g.index[s], *c))
            .collect();
        let mut coords = Coordinates::default();
        for (pos, row) in g.functionals.iter().enumerate() {
            let mut acc = BigInt::zero();
            for (i, c) in &x {
                if !row[*i].is_zero() {
                    acc += &row[*i] * *c;
                }
            }
            if pos < g.betti {
                coords.free.push(to_i64(&acc, "homology coordinate")?);
            } else {
                let t = BigInt::from(g.torsion[pos - g.betti]);
                coords.torsion.push(to_i64(&acc.mod_floor(&t), "torsion coordinate")?);
            }
        }
        Ok(coords)
    }

    /// The chain-level basis (simplices outside `A`) of a degree.
    pub fn chain_basis(&self, degree: usize) -> &[Simplex] {
        self.groups.get(degree).map_or(&[], |g| g.basis.as_slice())
    }

    /// `true` when `f` maps this pair's complex and subcomplex into the
    /// other's; needed before inducing maps.
    pub fn accepts_map_to(&self, f: &SimplicialMap, other: &HomologyResult) -> bool {
        f.source() == &self.complex
            && self.complex.iter().all(|s| other.complex.contains(&f.image(s)))
            && self.sub.iter().all(|s| other.sub.contains(&f.image(s)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn summary(k: &SimplicialComplex, a: &SimplicialComplex) -> Vec<(usize, Vec<i64>)> {
        homology(k, a)
            .unwrap()
            .groups()
            .iter()
            .map(|g| (g.betti, g.torsion.clone()))
            .collect()
    }

    #[test]
    fn sphere_and_disk_pair() {
        let empty = SimplicialComplex::new();
        assert_eq!(
            summary(&fixtures::boundary_of_simplex(3), &empty),
            vec![(1, vec![]), (0, vec![]), (1, vec![])]
        );
        assert_eq!(
            summary(&fixtures::simplex(2), &fixtures::boundary_of_simplex(2)),
            vec![(0, vec![]), (0, vec![]), (1, vec![])]
        );
        assert_eq!(
            summary(&fixtures::wedge_of_spheres(), &empty),
            vec![(1, vec![]), (0, vec![]), (2, vec![])]
        );
    }

    #[test]
    fn projective_plane_torsion() {
        let empty = SimplicialComplex::new();
        assert_eq!(
            summary(&fixtures::projective_plane(), &empty),
            vec![(1, vec![]), (0, vec![2]), (0, vec![])]
        );
        assert_eq!(
            summary(&fixtures::torus(), &empty),
            vec![(1, vec![]), (2, vec![]), (1, vec![])]
        );
    }

    #[test]
    fn generators_have_unit_coordinates() {
        let h = homology(&fixtures::torus(), &SimplicialComplex::new()).unwrap();
        for g in h.groups() {
            for (i, z) in g.generators.iter().enumerate() {
                let c = h.coordinates(z).unwrap();
                let mut expected = vec![0; g.betti];
                expected[i] = 1;
                assert_eq!(c.free, expected);
            }
        }
    }

    #[test]
    fn torsion_generator_coordinate() {
        let h = homology(&fixtures::projective_plane(), &SimplicialComplex::new()).unwrap();
        let g = h.group(1).unwrap();
        let z = &g.generators[0];
        assert_eq!(h.coordinates(z).unwrap().torsion, vec![1]);
        assert_eq!(h.coordinates(&z.scale(2).unwrap()).unwrap().torsion, vec![0]);
    }

    #[test]
    fn non_cycle_is_rejected() {
        let h = homology(&fixtures::boundary_of_simplex(2), &SimplicialComplex::new()).unwrap();
        let e = IntChain::from_terms(1, [(Simplex::new([0, 1]).unwrap(), 1)]).unwrap();
        assert!(matches!(h.coordinates(&e), Err(Error::NotACycle(_))));
    }
}
