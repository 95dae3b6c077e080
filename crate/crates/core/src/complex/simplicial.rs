use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Simplex, Vertex};
use crate::error::{Error, Result};

/// A finite abstract simplicial complex: a face-closed set of simplices.
///
/// Every constructor takes the face closure of its input, so the invariant
/// holds for every value of this type.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
}

/// Serialized form: the list of maximal simplices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub maximal: Vec<Vec<Vertex>>,
}

impl SimplicialComplex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Face closure of the given vertex sequences.
    pub fn from_maximal<I, S>(maximal: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = Vertex>,
    {
        let simplices = maximal
            .into_iter()
            .map(Simplex::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::closure_of(simplices))
    }

    /// Face closure of an arbitrary collection of simplices.
    pub fn closure_of(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let mut set = BTreeSet::new();
        for s in simplices {
            if set.contains(&s) {
                continue;
            }
            for f in s.faces() {
                set.insert(f);
            }
        }
        Self { simplices: set }
    }

    /// Wraps a set the caller guarantees to be face-closed.
    pub(crate) fn from_closed_set(simplices: BTreeSet<Simplex>) -> Self {
        debug_assert!(is_face_closed(&simplices));
        Self { simplices }
    }

    /// Wraps a set after checking that it is face-closed.
    pub fn try_from_closed_set(simplices: BTreeSet<Simplex>) -> Result<Self> {
        if let Some(w) = first_missing_face(&simplices) {
            return Err(Error::NotSubcomplex {
                context: "set is not face-closed".into(),
                witness: w,
            });
        }
        Ok(Self { simplices })
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        Self::from_maximal(json.maximal.iter().map(|s| s.iter().copied()))
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            maximal: self
                .maximal_simplices()
                .into_iter()
                .map(Vec::from)
                .collect(),
        }
    }

    /// Dimension, `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.simplices
            .iter()
            .map(|s| s.dim() as isize)
            .max()
            .unwrap_or(-1)
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter()
    }

    pub fn simplex_set(&self) -> &BTreeSet<Simplex> {
        &self.simplices
    }

    /// Simplices of exactly dimension `d`, in canonical order.
    pub fn simplices_of_dim(&self, d: usize) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|s| s.dim() == d)
            .cloned()
            .collect()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.simplices
            .iter()
            .filter(|s| s.dim() == 0)
            .map(|s| s.vertices()[0])
            .collect()
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.vertices().last().copied()
    }

    /// Simplices that are not a proper face of another member.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<&Simplex> = BTreeSet::new();
        let mut facets_buf = Vec::new();
        for s in &self.simplices {
            facets_buf.clear();
            facets_buf.extend(s.facets());
            for f in &facets_buf {
                if let Some(r) = self.simplices.get(f) {
                    covered.insert(r);
                }
            }
        }
        self.simplices
            .iter()
            .filter(|s| !covered.contains(s))
            .cloned()
            .collect()
    }

    /// Number of simplices in each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.dim();
        let mut f = vec![0; (d + 1).max(0) as usize];
        for s in &self.simplices {
            f[s.dim()] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, n)| if d % 2 == 0 { *n as i64 } else { -(*n as i64) })
            .sum()
    }

    /// All simplices of dimension at most `i` (`i >= -1`).
    pub fn skeleton(&self, i: isize) -> SimplicialComplex {
        Self {
            simplices: self
                .simplices
                .iter()
                .filter(|s| (s.dim() as isize) <= i)
                .cloned()
                .collect(),
        }
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    /// Errors with a witness unless `self ⊆ other`.
    pub fn check_subcomplex_of(&self, other: &SimplicialComplex, context: &str) -> Result<()> {
        match self.simplices.difference(&other.simplices).next() {
            None => Ok(()),
            Some(w) => Err(Error::NotSubcomplex {
                context: context.to_string(),
                witness: w.clone(),
            }),
        }
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        Self {
            simplices: self.simplices.union(&other.simplices).cloned().collect(),
        }
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        Self {
            simplices: self
                .simplices
                .intersection(&other.simplices)
                .cloned()
                .collect(),
        }
    }

    /// Members of `self` not in `other`, as an open simplex set.
    pub fn minus(&self, other: &SimplicialComplex) -> OpenSimplexSet {
        OpenSimplexSet {
            members: self.simplices.difference(&other.simplices).cloned().collect(),
        }
    }

    /// Members containing `s` (including `s` itself if present).
    pub fn cofaces(&self, s: &Simplex) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|t| s.is_face_of(t))
            .cloned()
            .collect()
    }

    /// Members of dimension `d` containing `s`.
    pub fn cofaces_of_dim(&self, s: &Simplex, d: usize) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|t| t.dim() == d && s.is_face_of(t))
            .cloned()
            .collect()
    }

    /// Smallest subcomplex containing every member of `set`.
    pub fn closure(set: &OpenSimplexSet) -> SimplicialComplex {
        Self::closure_of(set.members.iter().cloned())
    }

    /// Relabels vertices. The map must be injective on the vertices of `self`.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Result<SimplicialComplex> {
        let mut out = BTreeSet::new();
        for s in &self.simplices {
            let image = s
                .vertices()
                .iter()
                .map(|v| {
                    map.get(v).copied().ok_or_else(|| {
                        Error::MalformedInput(format!("relabeling misses vertex {v}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            out.insert(Simplex::new(image)?);
        }
        Ok(Self { simplices: out })
    }

    /// Vertex relabeling `v ↦ v + offset`.
    pub fn shifted(&self, offset: Vertex) -> SimplicialComplex {
        Self {
            simplices: self
                .simplices
                .iter()
                .map(|s| Simplex::from_sorted(s.vertices().iter().map(|v| v + offset).collect()))
                .collect(),
        }
    }

    pub fn star_of_simplex(&self, s: &Simplex) -> OpenSimplexSet {
        OpenSimplexSet {
            members: self.cofaces(s).into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a SimplicialComplex {
    type Item = &'a Simplex;
    type IntoIter = std::collections::btree_set::Iter<'a, Simplex>;

    fn into_iter(self) -> Self::IntoIter {
        self.simplices.iter()
    }
}

/// `true` iff every nonempty face of every member is a member.
pub fn is_face_closed(set: &BTreeSet<Simplex>) -> bool {
    first_missing_face(set).is_none()
}

fn first_missing_face(set: &BTreeSet<Simplex>) -> Option<Simplex> {
    set.iter()
        .flat_map(|s| s.facets())
        .find(|f| !set.contains(f))
}

/// A set of simplices of some host complex, read as the union of their open
/// simplices. Singular sets, limit sets and punctures live here.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct OpenSimplexSet {
    members: BTreeSet<Simplex>,
}

impl OpenSimplexSet {
    /// Checks `members ⊆ host`.
    pub fn new(host: &SimplicialComplex, members: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let members: BTreeSet<Simplex> = members.into_iter().collect();
        if let Some(w) = members.iter().find(|s| !host.contains(s)) {
            return Err(Error::NotSubcomplex {
                context: "open simplex set is not hosted in the complex".into(),
                witness: w.clone(),
            });
        }
        Ok(Self { members })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_complex(k: &SimplicialComplex) -> Self {
        Self {
            members: k.simplices.clone(),
        }
    }

    pub fn members(&self) -> &BTreeSet<Simplex> {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.members.contains(s)
    }

    pub fn dim(&self) -> isize {
        self.members
            .iter()
            .map(|s| s.dim() as isize)
            .max()
            .unwrap_or(-1)
    }

    /// Face-closed, i.e. the set is a subcomplex and `|S|` is closed.
    pub fn is_closed(&self) -> bool {
        is_face_closed(&self.members)
    }

    /// The subcomplex these simplices form, if face-closed.
    pub fn as_complex(&self) -> Option<SimplicialComplex> {
        self.is_closed()
            .then(|| SimplicialComplex::from_closed_set(self.members.clone()))
    }

    pub fn closure(&self) -> SimplicialComplex {
        SimplicialComplex::closure(self)
    }

    pub fn complement_in(&self, host: &SimplicialComplex) -> OpenSimplexSet {
        Self {
            members: host.simplices.difference(&self.members).cloned().collect(),
        }
    }

    pub fn union(&self, other: &OpenSimplexSet) -> OpenSimplexSet {
        Self {
            members: self.members.union(&other.members).cloned().collect(),
        }
    }

    pub fn intersection(&self, other: &OpenSimplexSet) -> OpenSimplexSet {
        Self {
            members: self.members.intersection(&other.members).cloned().collect(),
        }
    }

    pub fn minus(&self, other: &OpenSimplexSet) -> OpenSimplexSet {
        Self {
            members: self.members.difference(&other.members).cloned().collect(),
        }
    }

    pub fn is_subset(&self, other: &OpenSimplexSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn to_vec(&self) -> Vec<Simplex> {
        self.members.iter().cloned().collect()
    }
}

impl FromIterator<Simplex> for OpenSimplexSet {
    fn from_iter<T: IntoIterator<Item = Simplex>>(iter: T) -> Self {
        Self {
            members: iter.into_iter().collect(),
        }
    }
}

/// All simplices of `k` having some face in `s`. The complement of the
/// result in `k` is always face-closed, i.e. `|St(S,K)|` is open.
pub fn star(s: &OpenSimplexSet, k: &SimplicialComplex) -> OpenSimplexSet {
    if s.is_empty() {
        return OpenSimplexSet::empty();
    }
    k.iter()
        .filter(|sigma| sigma.faces().iter().any(|f| s.contains(f)))
        .cloned()
        .collect()
}

/// `{τ ∈ K : τ ∩ σ = ∅, τ ∪ σ ∈ K}`.
pub fn link(sigma: &Simplex, k: &SimplicialComplex) -> Result<SimplicialComplex> {
    if !k.contains(sigma) {
        return Err(Error::NotFound(sigma.clone()));
    }
    let members: BTreeSet<Simplex> = k
        .iter()
        .filter(|t| sigma.is_proper_face_of(t))
        .filter_map(|t| t.difference(sigma))
        .collect();
    Ok(SimplicialComplex::from_closed_set(members))
}

/// Searches for a vertex bijection carrying `a` onto `b` simplex-for-simplex.
/// Backtracking over vertices; meant for the small complexes used in tests
/// and gluing checks.
pub fn find_isomorphism(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
) -> Option<BTreeMap<Vertex, Vertex>> {
    if a.f_vector() != b.f_vector() {
        return None;
    }
    let va = a.vertices();
    let vb = b.vertices();
    // degree profile per vertex: number of cofaces in each dimension
    let profile = |k: &SimplicialComplex, v: Vertex| -> Vec<usize> {
        let mut p = vec![0usize; (k.dim() + 1).max(0) as usize];
        for s in k.iter().filter(|s| s.contains_vertex(v)) {
            p[s.dim()] += 1;
        }
        p
    };
    let pa: BTreeMap<Vertex, Vec<usize>> = va.iter().map(|v| (*v, profile(a, *v))).collect();
    let pb: BTreeMap<Vertex, Vec<usize>> = vb.iter().map(|v| (*v, profile(b, *v))).collect();
    let edges_a: Vec<Simplex> = a.simplices_of_dim(1);
    let edge_set_b: BTreeSet<Simplex> = b.simplices_of_dim(1).into_iter().collect();

    fn extend(
        idx: usize,
        va: &[Vertex],
        vb: &[Vertex],
        pa: &BTreeMap<Vertex, Vec<usize>>,
        pb: &BTreeMap<Vertex, Vec<usize>>,
        edges_a: &[Simplex],
        edge_set_b: &BTreeSet<Simplex>,
        map: &mut BTreeMap<Vertex, Vertex>,
        used: &mut BTreeSet<Vertex>,
        a: &SimplicialComplex,
        b: &SimplicialComplex,
    ) -> bool {
        if idx == va.len() {
            return a.iter().all(|s| {
                let img = s.vertices().iter().map(|v| map[v]);
                b.contains(&Simplex::new(img).expect("injective"))
            });
        }
        let v = va[idx];
        for &w in vb {
            if used.contains(&w) || pa[&v] != pb[&w] {
                continue;
            }
            let edges_ok = edges_a.iter().all(|e| {
                let (x, y) = (e.vertices()[0], e.vertices()[1]);
                let (mx, my) = if x == v {
                    (Some(w), map.get(&y).copied())
                } else if y == v {
                    (map.get(&x).copied(), Some(w))
                } else {
                    return true;
                };
                match (mx, my) {
                    (Some(p), Some(q)) => edge_set_b.contains(&Simplex::new([p, q]).unwrap()),
                    _ => true,
                }
            });
            if !edges_ok {
                continue;
            }
            map.insert(v, w);
            used.insert(w);
            if extend(idx + 1, va, vb, pa, pb, edges_a, edge_set_b, map, used, a, b) {
                return true;
            }
            map.remove(&v);
            used.remove(&w);
        }
        false
    }

    let mut map = BTreeMap::new();
    let mut used = BTreeSet::new();
    extend(
        0, &va, &vb, &pa, &pb, &edges_a, &edge_set_b, &mut map, &mut used, a, b,
    )
    .then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s(v: &[Vertex]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn build_examples() {
        let k = SimplicialComplex::from_maximal([vec![0, 1, 2]]).unwrap();
        assert_eq!(k.len(), 7);
        assert_eq!(k.f_vector(), vec![3, 3, 1]);

        let b = SimplicialComplex::from_maximal([vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(b.len(), 6);
        assert_eq!(b.dim(), 1);

        let e = SimplicialComplex::from_maximal(Vec::<Vec<Vertex>>::new()).unwrap();
        assert_eq!(e.dim(), -1);
        assert!(e.is_empty());

        assert!(SimplicialComplex::from_maximal([vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn skeleton_examples() {
        let sphere = fixtures::boundary_of_simplex(3);
        assert_eq!(sphere.skeleton(0).len(), 4);
        let one = sphere.skeleton(1);
        assert_eq!(one.f_vector(), vec![4, 6]);
        assert_eq!(sphere.skeleton(sphere.dim()), sphere);
        assert!(sphere.skeleton(-1).is_empty());
    }

    #[test]
    fn star_examples() {
        let tri = fixtures::boundary_of_simplex(2);
        let v = OpenSimplexSet::new(&tri, [s(&[0])]).unwrap();
        let st = star(&v, &tri);
        assert_eq!(st.to_vec(), vec![s(&[0]), s(&[0, 1]), s(&[0, 2])]);
        assert!(st.complement_in(&tri).is_closed());

        assert!(star(&OpenSimplexSet::empty(), &tri).is_empty());

        let verts = OpenSimplexSet::from_complex(&tri.skeleton(0));
        assert_eq!(star(&verts, &tri), OpenSimplexSet::from_complex(&tri));
    }

    #[test]
    fn link_examples() {
        let sphere = fixtures::boundary_of_simplex(3);
        let lv = link(&s(&[0]), &sphere).unwrap();
        assert_eq!(lv, fixtures::boundary_of_simplex(2).relabel(&[(0, 1), (1, 2), (2, 3)].into_iter().collect()).unwrap());
        let le = link(&s(&[0, 1]), &sphere).unwrap();
        assert_eq!(le.maximal_simplices(), vec![s(&[2]), s(&[3])]);
        assert!(link(&s(&[0, 1, 2]), &sphere).unwrap().is_empty());
        assert!(matches!(link(&s(&[0, 9]), &sphere), Err(Error::NotFound(_))));
    }

    #[test]
    fn maximal_and_euler() {
        let sphere = fixtures::boundary_of_simplex(3);
        assert_eq!(sphere.maximal_simplices().len(), 4);
        assert_eq!(sphere.euler_characteristic(), 2);
    }

    #[test]
    fn isomorphism_search() {
        let a = fixtures::boundary_of_simplex(2);
        let b = a.shifted(10);
        let iso = find_isomorphism(&a, &b).unwrap();
        assert_eq!(iso[&0], 10);
        let path = SimplicialComplex::from_maximal([vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        assert!(find_isomorphism(&a, &path).is_none());
    }
}
