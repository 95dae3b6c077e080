use serde::Serialize;

use crate::complex::{barycentric_subdivision, join_decompose, Simplex, SimplicialComplex, Subdivision};

/// The subcomplex of `K′` spanned by chains `τ₁ < ⋯ < τ_s` with
/// `dim τ₁ > r`: the union of the dual cells of the simplices of dimension
/// above `r`. The complement of the `r`-skeleton deformation retracts onto it.
#[derive(Clone, Debug)]
pub struct DualComplex {
    pub complex: SimplicialComplex,
    pub subdivision: Subdivision,
    pub r: isize,
    /// `dim K − r − 1`.
    pub dimension_bound: isize,
    pub join: JoinCheck,
}

impl DualComplex {
    pub fn dim(&self) -> isize {
        self.complex.dim()
    }

    pub fn within_bound(&self) -> bool {
        self.dim() <= self.dimension_bound
    }
}

/// Result of splitting every simplex of `K′` as `λ ∗ μ`, with `λ` a chain in
/// the `r`-skeleton and `μ` a chain of the dual complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinCheck {
    pub simplices: usize,
    /// Every simplex splits, with both parts in the expected complexes.
    pub total: bool,
    /// Exactly one split point is admissible for every simplex.
    pub unique: bool,
    pub witness: Option<Simplex>,
}

pub fn dual_complex(k: &SimplicialComplex, r: isize) -> DualComplex {
    let sd = barycentric_subdivision(k);
    let chain_of = |s: &Simplex| sd.flag_of(s).expect("simplex of the subdivision");
    let members = sd
        .complex
        .iter()
        .filter(|s| chain_of(s).first().is_some_and(|t| t.dim() as isize > r))
        .cloned();
    let complex = SimplicialComplex::closure_of(members);
    let low = sd.restrict(&k.skeleton(r));

    let mut join = JoinCheck {
        simplices: sd.complex.len(),
        total: true,
        unique: true,
        witness: None,
    };
    for s in sd.complex.iter() {
        let flag = chain_of(s);
        let ok = join_decompose(&flag, r).ok().is_some_and(|(lambda, mu)| {
            let part = |c: &[Simplex], host: &SimplicialComplex| {
                c.is_empty() || sd.simplex_of_flag(c).is_ok_and(|x| host.contains(&x))
            };
            lambda.len() + mu.len() == flag.len()
                && lambda.iter().chain(&mu).eq(flag.iter())
                && part(&lambda, &low)
                && part(&mu, &complex)
        });
        let splits = (0..=flag.len())
            .filter(|&i| {
                flag[..i].iter().all(|t| t.dim() as isize <= r)
                    && flag[i..].iter().all(|t| t.dim() as isize > r)
            })
            .count();
        if !ok {
            join.total = false;
        }
        if splits != 1 {
            join.unique = false;
        }
        if (!ok || splits != 1) && join.witness.is_none() {
            join.witness = Some(s.clone());
        }
    }
    DualComplex {
        dimension_bound: k.dim() - r - 1,
        complex,
        subdivision: sd,
        r,
        join,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn triangle_dual_above_vertices() {
        let d = dual_complex(&fixtures::simplex(2), 0);
        // barycenters of the three edges and the triangle, joined to the center
        assert_eq!(d.complex.f_vector(), vec![4, 3]);
        assert_eq!(d.dim(), 1);
        assert!(d.within_bound());
        assert!(d.join.total && d.join.unique);
    }

    #[test]
    fn top_dimension_gives_empty_dual() {
        let k = fixtures::boundary_of_simplex(3);
        let d = dual_complex(&k, 2);
        assert!(d.complex.is_empty());
        assert_eq!(d.dim(), -1);
        assert_eq!(d.dimension_bound, -1);
    }

    #[test]
    fn sphere_dual_graph() {
        let d = dual_complex(&fixtures::boundary_of_simplex(3), 0);
        // the dual graph of the tetrahedron boundary, subdivided once
        assert_eq!(d.complex.f_vector(), vec![10, 12]);
        assert_eq!(d.complex.euler_characteristic(), -2);
    }

    #[test]
    fn negative_r_is_the_whole_subdivision() {
        let k = fixtures::simplex(2);
        let d = dual_complex(&k, -1);
        assert_eq!(d.complex, d.subdivision.complex);
        assert!(d.within_bound());
    }
}
