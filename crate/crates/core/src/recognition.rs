//! Manifold-point classification by link analysis.
//!
//! A point in the open simplex `σ` of a `k`-dimensional complex is an
//! interior manifold point when `lk σ` is a PL `(k − dim σ − 1)`-sphere and a
//! boundary point when it is a PL ball of that dimension. Links of dimension
//! at most two are recognized exactly; larger links are screened with
//! necessary conditions and otherwise reported as [`PointClass::Unknown`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::{OpenSimplexSet, Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::homology::{coherent_orientation, homology};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    InteriorManifold,
    BoundaryManifold,
    NonManifold,
    Unknown,
}

/// Outcome of recognizing a link as a sphere or a ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum LinkShape {
    Sphere,
    Ball,
    Neither,
    Undecided,
}

/// Per-vertex incidence lists over a fixed set of simplices, so that
/// cofaces and links can be read off without scanning everything.
struct Incidence<'a> {
    by_vertex: BTreeMap<Vertex, Vec<&'a Simplex>>,
}

impl<'a> Incidence<'a> {
    fn new(simplices: impl Iterator<Item = &'a Simplex>) -> Self {
        let mut by_vertex: BTreeMap<Vertex, Vec<&'a Simplex>> = BTreeMap::new();
        for s in simplices {
            for v in s.vertices() {
                by_vertex.entry(*v).or_default().push(s);
            }
        }
        Self { by_vertex }
    }

    fn proper_cofaces(&self, sigma: &Simplex) -> impl Iterator<Item = &'a Simplex> + '_ {
        let pivot = sigma
            .vertices()
            .iter()
            .min_by_key(|v| self.by_vertex.get(v).map_or(0, Vec::len))
            .expect("nonempty");
        let sigma = sigma.clone();
        self.by_vertex
            .get(pivot)
            .into_iter()
            .flatten()
            .copied()
            .filter(move |t| sigma.is_proper_face_of(t))
    }

    fn link(&self, sigma: &Simplex) -> SimplicialComplex {
        SimplicialComplex::closure_of(self.proper_cofaces(sigma).filter_map(|t| t.difference(sigma)))
    }
}

fn shape_to_class(shape: LinkShape) -> PointClass {
    match shape {
        LinkShape::Sphere => PointClass::InteriorManifold,
        LinkShape::Ball => PointClass::BoundaryManifold,
        LinkShape::Neither => PointClass::NonManifold,
        LinkShape::Undecided => PointClass::Unknown,
    }
}

fn class_from_link(sigma: &Simplex, link: &SimplicialComplex, k: usize) -> PointClass {
    let m = k as isize - sigma.dim() as isize - 1;
    if m < -1 {
        return PointClass::NonManifold;
    }
    shape_to_class(recognize(link, m))
}

/// Classifies the points of the open simplex `sigma` in the `k`-dimensional
/// complex `complex`.
pub fn classify_point(sigma: &Simplex, complex: &SimplicialComplex, k: usize) -> Result<PointClass> {
    if !complex.contains(sigma) {
        return Err(Error::NotFound(sigma.clone()));
    }
    let index = Incidence::new(complex.iter());
    Ok(class_from_link(sigma, &index.link(sigma), k))
}

fn recognize(l: &SimplicialComplex, m: isize) -> LinkShape {
    match m {
        -1 => {
            if l.is_empty() {
                LinkShape::Sphere
            } else {
                LinkShape::Neither
            }
        }
        0 => {
            if l.dim() != 0 {
                return LinkShape::Neither;
            }
            match l.len() {
                2 => LinkShape::Sphere,
                1 => LinkShape::Ball,
                _ => LinkShape::Neither,
            }
        }
        1 => recognize_graph(l),
        2 => recognize_surface(l),
        _ => screen_high_dimensional(l, m as usize),
    }
}

fn connected(k: &SimplicialComplex) -> bool {
    let verts = k.vertices();
    let Some(first) = verts.first() else {
        return false;
    };
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for e in k.simplices_of_dim(1) {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut seen = BTreeSet::from([*first]);
    let mut queue = VecDeque::from([*first]);
    while let Some(v) = queue.pop_front() {
        for w in adj.get(&v).into_iter().flatten() {
            if seen.insert(*w) {
                queue.push_back(*w);
            }
        }
    }
    seen.len() == verts.len()
}

fn is_pure(k: &SimplicialComplex, d: usize) -> bool {
    k.dim() == d as isize
        && k.maximal_simplices().iter().all(|s| s.dim() == d)
}

/// Circle (all degrees two) or arc (exactly two ends), connected.
fn recognize_graph(l: &SimplicialComplex) -> LinkShape {
    if !is_pure(l, 1) || !connected(l) {
        return LinkShape::Neither;
    }
    let mut degree: BTreeMap<Vertex, usize> = BTreeMap::new();
    for e in l.simplices_of_dim(1) {
        for v in e.vertices() {
            *degree.entry(*v).or_default() += 1;
        }
    }
    if degree.values().any(|d| *d > 2) {
        return LinkShape::Neither;
    }
    match degree.values().filter(|d| **d == 1).count() {
        0 => LinkShape::Sphere,
        2 => LinkShape::Ball,
        _ => LinkShape::Neither,
    }
}

fn recognize_surface(l: &SimplicialComplex) -> LinkShape {
    if !is_pure(l, 2) || !connected(l) {
        return LinkShape::Neither;
    }
    let triangles = l.simplices_of_dim(2);
    let mut edge_count: BTreeMap<Simplex, usize> = BTreeMap::new();
    for t in &triangles {
        for e in t.facets() {
            *edge_count.entry(e).or_default() += 1;
        }
    }
    if edge_count.values().any(|c| *c > 2) {
        return LinkShape::Neither;
    }
    // no pinched vertices: every vertex link is a circle or an arc
    let index = Incidence::new(l.iter());
    for v in l.vertices() {
        match recognize_graph(&index.link(&Simplex::vertex(v))) {
            LinkShape::Sphere | LinkShape::Ball => {}
            _ => return LinkShape::Neither,
        }
    }
    let boundary_edges: Vec<Simplex> = edge_count
        .iter()
        .filter(|(_, c)| **c == 1)
        .map(|(e, _)| e.clone())
        .collect();
    let chi = l.euler_characteristic();
    let orientable = coherent_orientation(&triangles, &|_| true).orientable;
    if boundary_edges.is_empty() {
        if chi == 2 && orientable {
            LinkShape::Sphere
        } else {
            LinkShape::Neither
        }
    } else {
        let boundary = SimplicialComplex::closure_of(boundary_edges);
        if chi == 1 && orientable && count_components(&boundary) == 1 {
            LinkShape::Ball
        } else {
            LinkShape::Neither
        }
    }
}

fn count_components(k: &SimplicialComplex) -> usize {
    let mut parent: BTreeMap<Vertex, Vertex> = k.vertices().into_iter().map(|v| (v, v)).collect();
    fn find(parent: &mut BTreeMap<Vertex, Vertex>, v: Vertex) -> Vertex {
        let p = parent[&v];
        if p == v {
            return v;
        }
        let r = find(parent, p);
        parent.insert(v, r);
        r
    }
    for e in k.simplices_of_dim(1) {
        let a = find(&mut parent, e.vertices()[0]);
        let b = find(&mut parent, e.vertices()[1]);
        if a != b {
            parent.insert(a, b);
        }
    }
    let vs: Vec<Vertex> = parent.keys().copied().collect();
    vs.into_iter()
        .map(|v| find(&mut parent, v))
        .collect::<BTreeSet<_>>()
        .len()
}

/// Necessary conditions for an `m`-sphere or `m`-ball when `m ≥ 3`. Passing
/// them is not a proof, so the answer is then [`LinkShape::Undecided`].
fn screen_high_dimensional(l: &SimplicialComplex, m: usize) -> LinkShape {
    if !is_pure(l, m) || !connected(l) {
        return LinkShape::Neither;
    }
    let mut face_count: BTreeMap<Simplex, usize> = BTreeMap::new();
    for t in l.simplices_of_dim(m) {
        for f in t.facets() {
            *face_count.entry(f).or_default() += 1;
        }
    }
    if face_count.values().any(|c| *c > 2) {
        return LinkShape::Neither;
    }
    let has_boundary = face_count.values().any(|c| *c == 1);
    let Ok(h) = homology(l, &SimplicialComplex::new()) else {
        return LinkShape::Undecided;
    };
    let torsion_free = h.groups().iter().all(|g| g.torsion.is_empty());
    let betti = h.betti_numbers();
    let expected: Vec<usize> = (0..=m)
        .map(|d| usize::from(d == 0 || (d == m && !has_boundary)))
        .collect();
    if torsion_free && betti == expected {
        LinkShape::Undecided
    } else {
        LinkShape::Neither
    }
}

/// Per-simplex classification of a whole complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldReport {
    pub classification: BTreeMap<Simplex, PointClass>,
    pub non_manifold_subcomplex: SimplicialComplex,
    pub exact: bool,
}

#[derive(Serialize)]
struct ManifoldReportJson {
    exact: bool,
    non_manifold: Vec<Vec<Vertex>>,
    by_simplex: BTreeMap<String, PointClass>,
}

impl ManifoldReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ManifoldReportJson {
            exact: self.exact,
            non_manifold: self
                .non_manifold_subcomplex
                .maximal_simplices()
                .into_iter()
                .map(Vec::from)
                .collect(),
            by_simplex: self
                .classification
                .iter()
                .map(|(s, c)| (s.to_string(), *c))
                .collect(),
        })
        .expect("serializable")
    }
}

/// Classifies every simplex of `k` with respect to `dim k`. The
/// non-manifold simplices are closed under faces; the closure is taken
/// anyway so that faces reported as unknown are included.
pub fn non_manifold_set(k: &SimplicialComplex) -> ManifoldReport {
    classify_all(k, k.dim().max(0) as usize)
}

/// Same as [`non_manifold_set`] with an explicit manifold dimension.
pub fn classify_all(k: &SimplicialComplex, dim: usize) -> ManifoldReport {
    let index = Incidence::new(k.iter());
    let classification: BTreeMap<Simplex, PointClass> = k
        .iter()
        .map(|s| (s.clone(), class_from_link(s, &index.link(s), dim)))
        .collect();
    let non_manifold_subcomplex = SimplicialComplex::closure_of(
        classification
            .iter()
            .filter(|(_, c)| **c == PointClass::NonManifold)
            .map(|(s, _)| s.clone()),
    );
    let exact = classification.values().all(|c| *c != PointClass::Unknown);
    ManifoldReport {
        classification,
        non_manifold_subcomplex,
        exact,
    }
}

/// Pass/fail of one structural condition with an optional witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub passed: bool,
    pub witness: Option<Simplex>,
}

impl CheckResult {
    fn from_witness(witness: Option<Simplex>) -> Self {
        Self {
            passed: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudomanifoldReport {
    /// Every simplex is a face of a `k`-simplex, and nothing exceeds `k`.
    pub pure: CheckResult,
    /// Every `(k−1)`-simplex lies in at most two `k`-simplices.
    pub thin: CheckResult,
    /// The `k`-simplices are connected through shared `(k−1)`-faces.
    pub strongly_connected: CheckResult,
}

impl PseudomanifoldReport {
    pub fn passed(&self) -> bool {
        self.pure.passed && self.thin.passed && self.strongly_connected.passed
    }
}

pub fn pseudomanifold_check(k: &SimplicialComplex, dim: usize) -> PseudomanifoldReport {
    let pure = k.maximal_simplices().into_iter().find(|s| s.dim() != dim);
    let tops = k.simplices_of_dim(dim);
    let mut incidence: BTreeMap<Simplex, Vec<usize>> = BTreeMap::new();
    for (i, t) in tops.iter().enumerate() {
        for f in t.facets() {
            incidence.entry(f).or_default().push(i);
        }
    }
    let thin = incidence
        .iter()
        .find(|(_, ts)| ts.len() > 2)
        .map(|(f, _)| f.clone());

    let mut strongly_connected = None;
    if !tops.is_empty() {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); tops.len()];
        for ts in incidence.values() {
            for a in ts {
                for b in ts {
                    if a != b {
                        adj[*a].push(*b);
                    }
                }
            }
        }
        let mut seen = vec![false; tops.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        strongly_connected = seen.iter().position(|x| !x).map(|i| tops[i].clone());
    }
    PseudomanifoldReport {
        pure: CheckResult::from_witness(pure),
        thin: CheckResult::from_witness(thin),
        strongly_connected: CheckResult::from_witness(strongly_connected),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RegionVerdict {
    Yes,
    No { witness: Simplex },
    Unknown { witness: Simplex },
}

/// Result of testing whether `|U|` is a PL `k`-manifold. `boundary` lists
/// the simplices of `U` made of manifold-boundary points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionReport {
    pub verdict: RegionVerdict,
    pub boundary: BTreeSet<Simplex>,
}

impl RegionReport {
    pub fn is_yes(&self) -> bool {
        self.verdict == RegionVerdict::Yes
    }
}

/// Classifies each open simplex of `U` using its link inside `U` (the
/// cofaces of `σ` that belong to `U`). For a `U` that is open in its
/// closure, as all singular-set complements are, this is the link in the
/// closure of the star of `U`.
pub fn region_is_pl_manifold(u: &OpenSimplexSet, k: usize) -> RegionReport {
    let index = Incidence::new(u.iter());
    let mut boundary = BTreeSet::new();
    let mut unknown = None;
    for s in u.iter() {
        match class_from_link(s, &index.link(s), k) {
            PointClass::InteriorManifold => {}
            PointClass::BoundaryManifold => {
                boundary.insert(s.clone());
            }
            PointClass::NonManifold => {
                return RegionReport {
                    verdict: RegionVerdict::No { witness: s.clone() },
                    boundary,
                }
            }
            PointClass::Unknown => {
                if unknown.is_none() {
                    unknown = Some(s.clone());
                }
            }
        }
    }
    RegionReport {
        verdict: match unknown {
            Some(w) => RegionVerdict::Unknown { witness: w },
            None => RegionVerdict::Yes,
        },
        boundary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s(v: &[Vertex]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn point_classes() {
        let sphere = fixtures::boundary_of_simplex(3);
        assert_eq!(classify_point(&s(&[0]), &sphere, 2).unwrap(), PointClass::InteriorManifold);
        let wedge = fixtures::wedge_of_spheres();
        assert_eq!(classify_point(&s(&[0]), &wedge, 2).unwrap(), PointClass::NonManifold);
        let disk = fixtures::simplex(2);
        assert_eq!(classify_point(&s(&[0]), &disk, 2).unwrap(), PointClass::BoundaryManifold);
        assert!(classify_point(&s(&[7]), &disk, 2).is_err());
    }

    #[test]
    fn non_manifold_sets() {
        let r = non_manifold_set(&fixtures::boundary_of_simplex(3));
        assert!(r.exact && r.non_manifold_subcomplex.is_empty());
        let r = non_manifold_set(&fixtures::wedge_of_spheres());
        assert_eq!(r.non_manifold_subcomplex.maximal_simplices(), vec![s(&[0])]);
        assert!(non_manifold_set(&fixtures::simplex(2)).non_manifold_subcomplex.is_empty());
    }

    #[test]
    fn pseudomanifold_conditions() {
        let r = pseudomanifold_check(&fixtures::boundary_of_simplex(3), 2);
        assert!(r.passed());
        let r = pseudomanifold_check(&fixtures::triangle_with_dangling_edge(), 2);
        assert_eq!(r.pure.witness, Some(s(&[2, 3])));
        let r = pseudomanifold_check(&fixtures::three_triangles_on_edge(), 2);
        assert_eq!(r.thin.witness, Some(s(&[0, 1])));
    }

    #[test]
    fn regions() {
        let sphere = fixtures::boundary_of_simplex(3);
        assert!(region_is_pl_manifold(&OpenSimplexSet::from_complex(&sphere), 2).is_yes());
        let wedge = fixtures::wedge_of_spheres();
        let punctured = wedge.minus(&SimplicialComplex::from_maximal([vec![0]]).unwrap());
        assert!(region_is_pl_manifold(&punctured, 2).is_yes());
        assert!(region_is_pl_manifold(&OpenSimplexSet::empty(), 2).is_yes());
        let whole = OpenSimplexSet::from_complex(&wedge);
        assert_eq!(
            region_is_pl_manifold(&whole, 2).verdict,
            RegionVerdict::No { witness: s(&[0]) }
        );
    }

    #[test]
    fn surfaces_and_high_dimensional_links() {
        assert_eq!(recognize(&fixtures::boundary_of_simplex(3), 2), LinkShape::Sphere);
        assert_eq!(recognize(&fixtures::simplex(2), 2), LinkShape::Ball);
        assert_eq!(recognize(&fixtures::torus(), 2), LinkShape::Neither);
        assert_eq!(recognize(&fixtures::projective_plane(), 2), LinkShape::Neither);
        assert_eq!(recognize(&fixtures::boundary_of_simplex(4), 3), LinkShape::Undecided);
        assert_eq!(recognize(&fixtures::simplex(3), 3), LinkShape::Undecided);
        let two = fixtures::boundary_of_simplex(4).union(&fixtures::boundary_of_simplex(4).shifted(10));
        assert_eq!(recognize(&two, 3), LinkShape::Neither);
    }
}
