//! Small named complexes used by the CLI examples, the test suites and the
//! documentation. Every constructor is deterministic.

use std::collections::BTreeMap;

use crate::complex::{barycentric_subdivision, SimplicialComplex, SimplicialMap, Vertex};

/// The full simplex on vertices `0..=n`.
pub fn simplex(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_maximal([(0..=n as Vertex).collect::<Vec<_>>()]).expect("valid")
}

/// The boundary of the `n`-simplex on vertices `0..=n`, a PL `(n-1)`-sphere.
pub fn boundary_of_simplex(n: usize) -> SimplicialComplex {
    assert!(n >= 1, "the boundary of a point is empty");
    let all: Vec<Vertex> = (0..=n as Vertex).collect();
    SimplicialComplex::from_maximal((0..=n).map(|skip| {
        all.iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, v)| *v)
            .collect::<Vec<_>>()
    }))
    .expect("valid")
}

/// Cycle graph on `n ≥ 3` vertices with edges `[i, i+1 mod n]`.
pub fn polygon(n: usize) -> SimplicialComplex {
    assert!(n >= 3);
    let n = n as Vertex;
    SimplicialComplex::from_maximal((0..n).map(|i| vec![i, (i + 1) % n])).expect("valid")
}

/// Path with `n` edges on vertices `0..=n`.
pub fn path(n: usize) -> SimplicialComplex {
    let n = n as Vertex;
    SimplicialComplex::from_maximal((0..n).map(|i| vec![i, i + 1])).expect("valid")
}

/// Two tetrahedron boundaries sharing vertex `0`: `∂[0,1,2,3] ∨ ∂[0,4,5,6]`.
pub fn wedge_of_spheres() -> SimplicialComplex {
    let a = boundary_of_simplex(3);
    let relabel: BTreeMap<Vertex, Vertex> = [(0, 0), (1, 4), (2, 5), (3, 6)].into_iter().collect();
    a.union(&a.relabel(&relabel).expect("injective"))
}

/// The shared vertex of [`wedge_of_spheres`].
pub const WEDGE_POINT: Vertex = 0;

/// Triangles `[0,1,2]` and `[0,3,4]` meeting only in vertex `0`.
pub fn two_triangles_at_vertex() -> SimplicialComplex {
    SimplicialComplex::from_maximal([vec![0, 1, 2], vec![0, 3, 4]]).expect("valid")
}

/// The edges of [`two_triangles_at_vertex`]: its manifold boundary.
pub fn two_triangles_boundary() -> SimplicialComplex {
    two_triangles_at_vertex().skeleton(1)
}

/// Three triangles sharing the edge `[0,1]`.
pub fn three_triangles_on_edge() -> SimplicialComplex {
    SimplicialComplex::from_maximal([vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]]).expect("valid")
}

/// Triangle `[0,1,2]` with a dangling edge `[2,3]`.
pub fn triangle_with_dangling_edge() -> SimplicialComplex {
    SimplicialComplex::from_maximal([vec![0, 1, 2], vec![2, 3]]).expect("valid")
}

/// The six-vertex real projective plane.
pub fn projective_plane() -> SimplicialComplex {
    SimplicialComplex::from_maximal([
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 4, 5],
        vec![0, 1, 5],
        vec![1, 2, 4],
        vec![2, 3, 5],
        vec![1, 3, 4],
        vec![2, 4, 5],
        vec![1, 3, 5],
    ])
    .expect("valid")
}

/// The seven-vertex torus.
pub fn torus() -> SimplicialComplex {
    let m = |x: Vertex| x % 7;
    SimplicialComplex::from_maximal((0..7).flat_map(|i| {
        [vec![m(i), m(i + 1), m(i + 3)], vec![m(i), m(i + 2), m(i + 3)]]
    }))
    .expect("valid")
}

/// Barycentric subdivision of the 2-simplex.
pub fn subdivided_triangle() -> SimplicialComplex {
    barycentric_subdivision(&simplex(2)).complex
}

/// A degree-two simplicial map from the subdivided triangle boundary (a
/// hexagon `0-3-1-5-2-4-0`) onto `∂Δ²`.
pub fn degree_two_wrap() -> SimplicialMap {
    let source = barycentric_subdivision(&boundary_of_simplex(2)).complex;
    let map: BTreeMap<Vertex, Vertex> =
        [(0, 0), (3, 1), (1, 2), (5, 0), (2, 1), (4, 2)].into_iter().collect();
    SimplicialMap::new(source, boundary_of_simplex(2), map).expect("simplicial")
}

/// A single vertex.
pub fn point() -> SimplicialComplex {
    simplex(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shapes() {
        assert_eq!(boundary_of_simplex(3).f_vector(), vec![4, 6, 4]);
        assert_eq!(wedge_of_spheres().f_vector(), vec![7, 12, 8]);
        assert_eq!(projective_plane().euler_characteristic(), 1);
        assert_eq!(torus().euler_characteristic(), 0);
        assert_eq!(torus().f_vector(), vec![7, 21, 14]);
        assert_eq!(subdivided_triangle().f_vector(), vec![7, 12, 6]);
        assert_eq!(path(4).f_vector(), vec![5, 4]);
    }
}
