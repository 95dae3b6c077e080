use std::collections::{BTreeMap, BTreeSet};

use super::{SimplicialComplex, SimplicialMap, Simplex, Vertex};

/// Staircase triangulation of `|K| × |L|`.
///
/// Vertices are pairs `(v, w)`; a set of pairs is a simplex iff it lies in
/// `σ × τ` for simplices `σ ∈ K`, `τ ∈ L` and is totally ordered by the
/// componentwise order induced by the chosen vertex orders. The open simplex
/// of such a chain lies in `σ̊' × τ̊'` where `σ'`, `τ'` are its projections,
/// so subsets of the form `A × B` (unions of open simplices) are exactly the
/// chains whose projections lie in `A` and `B`.
#[derive(Clone, Debug)]
pub struct Product {
    pub complex: SimplicialComplex,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    pair_of: BTreeMap<Vertex, (Vertex, Vertex)>,
    vertex_of: BTreeMap<(Vertex, Vertex), Vertex>,
}

/// Product with both factors ordered canonically.
pub fn product_complex(k: &SimplicialComplex, l: &SimplicialComplex) -> Product {
    product_complex_ordered(k, &k.vertices(), l, &l.vertices())
}

/// Product using explicit total orders on the vertices of each factor.
/// Any pair of orders yields a triangulation of the same space; choosing an
/// order pulled back from a target makes product maps simplicial.
pub fn product_complex_ordered(
    k: &SimplicialComplex,
    order_k: &[Vertex],
    l: &SimplicialComplex,
    order_l: &[Vertex],
) -> Product {
    let vk = k.vertices();
    let vl = l.vertices();
    let rank_k: BTreeMap<Vertex, usize> = order_k.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let rank_l: BTreeMap<Vertex, usize> = order_l.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    assert_eq!(rank_k.len(), vk.len(), "order must list every vertex of the left factor");
    assert_eq!(rank_l.len(), vl.len(), "order must list every vertex of the right factor");

    let n_l = vl.len() as Vertex;
    let mut pair_of = BTreeMap::new();
    let mut vertex_of = BTreeMap::new();
    for (i, v) in vk.iter().enumerate() {
        for (j, w) in vl.iter().enumerate() {
            let id = i as Vertex * n_l + j as Vertex;
            pair_of.insert(id, (*v, *w));
            vertex_of.insert((*v, *w), id);
        }
    }

    let mut tops = Vec::new();
    let max_l = l.maximal_simplices();
    for sigma in k.maximal_simplices() {
        let mut a: Vec<Vertex> = sigma.vertices().to_vec();
        a.sort_by_key(|v| rank_k[v]);
        for tau in &max_l {
            let mut b: Vec<Vertex> = tau.vertices().to_vec();
            b.sort_by_key(|v| rank_l[v]);
            staircases(&a, &b, &mut |path| {
                let verts = path.iter().map(|(i, j)| vertex_of[&(a[*i], b[*j])]);
                tops.push(Simplex::new(verts).expect("distinct pairs"));
            });
        }
    }
    let complex = SimplicialComplex::closure_of(tops);
    let left = SimplicialMap::new(
        complex.clone(),
        k.clone(),
        pair_of.iter().map(|(id, (v, _))| (*id, *v)).collect(),
    )
    .expect("projection onto a factor is simplicial");
    let right = SimplicialMap::new(
        complex.clone(),
        l.clone(),
        pair_of.iter().map(|(id, (_, w))| (*id, *w)).collect(),
    )
    .expect("projection onto a factor is simplicial");
    Product {
        complex,
        left,
        right,
        pair_of,
        vertex_of,
    }
}

/// Monotone lattice paths from `(0,0)` to `(p,q)`.
fn staircases(a: &[Vertex], b: &[Vertex], f: &mut dyn FnMut(&[(usize, usize)])) {
    fn rec(
        i: usize,
        j: usize,
        p: usize,
        q: usize,
        path: &mut Vec<(usize, usize)>,
        f: &mut dyn FnMut(&[(usize, usize)]),
    ) {
        path.push((i, j));
        if i == p && j == q {
            f(path);
        } else {
            if i < p {
                rec(i + 1, j, p, q, path, f);
            }
            if j < q {
                rec(i, j + 1, p, q, path, f);
            }
        }
        path.pop();
    }
    rec(0, 0, a.len() - 1, b.len() - 1, &mut Vec::new(), f);
}

impl Product {
    pub fn pair_of(&self, v: Vertex) -> Option<(Vertex, Vertex)> {
        self.pair_of.get(&v).copied()
    }

    pub fn vertex_of(&self, v: Vertex, w: Vertex) -> Option<Vertex> {
        self.vertex_of.get(&(v, w)).copied()
    }

    pub fn project_left(&self, s: &Simplex) -> Simplex {
        self.left.image(s)
    }

    pub fn project_right(&self, s: &Simplex) -> Simplex {
        self.right.image(s)
    }

    /// Simplices whose projections lie in `a` and `b` respectively: the
    /// triangulation of `|A| × |B|` when both are subcomplexes, and the open
    /// set `|A| × |B|` when both are open simplex sets.
    pub fn product_set(&self, a: &BTreeSet<Simplex>, b: &BTreeSet<Simplex>) -> BTreeSet<Simplex> {
        self.complex
            .iter()
            .filter(|s| a.contains(&self.project_left(s)) && b.contains(&self.project_right(s)))
            .cloned()
            .collect()
    }

    /// Subcomplex triangulating `|A| × |B|` for subcomplexes `A`, `B`.
    pub fn sub_product(&self, a: &SimplicialComplex, b: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex::from_closed_set(self.product_set(a.simplex_set(), b.simplex_set()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::find_isomorphism;
    use crate::fixtures;

    #[test]
    fn point_times_k_is_k() {
        let pt = fixtures::simplex(0);
        let k = fixtures::boundary_of_simplex(3);
        let p = product_complex(&pt, &k);
        assert!(find_isomorphism(&p.complex, &k).is_some());
    }

    #[test]
    fn square_is_two_triangles() {
        let e = fixtures::simplex(1);
        let p = product_complex(&e, &e);
        assert_eq!(p.complex.f_vector(), vec![4, 5, 2]);
    }

    #[test]
    fn euler_characteristic_multiplies() {
        let c = fixtures::boundary_of_simplex(2);
        let e = fixtures::simplex(1);
        let p = product_complex(&c, &e);
        assert_eq!(p.complex.euler_characteristic(), c.euler_characteristic() * e.euler_characteristic());
        assert_eq!(p.complex.dim(), 2);
    }

    #[test]
    fn reversed_order_still_triangulates() {
        let e = fixtures::simplex(1);
        let t = fixtures::simplex(2);
        let p = product_complex_ordered(&t, &[2, 1, 0], &e, &[0, 1]);
        assert_eq!(p.complex.f_vector()[3], 3);
        assert_eq!(p.complex.euler_characteristic(), 1);
    }
}
