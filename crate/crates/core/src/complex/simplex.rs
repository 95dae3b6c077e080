use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex identifier. Vertices are plain non-negative integers.
pub type Vertex = u32;

/// An abstract simplex stored as its strictly increasing vertex list.
///
/// The derived ordering is lexicographic on the vertex list, which is the
/// canonical order used everywhere a deterministic enumeration is needed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Simplex {
    vertices: Vec<Vertex>,
}

impl Simplex {
    /// Builds a simplex from any vertex sequence, sorting it. Duplicates and
    /// empty input are rejected.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut vertices: Vec<Vertex> = vertices.into_iter().collect();
        if vertices.is_empty() {
            return Err(Error::MalformedInput("empty simplex".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedInput(format!(
                "duplicate vertex in simplex {vertices:?}"
            )));
        }
        Ok(Self { vertices })
    }

    /// Builds a simplex from a vertex list already known to be strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self { vertices }
    }

    /// Builds a simplex from a vertex set that may contain repeats (used for
    /// images under simplicial maps). Returns the deduplicated simplex.
    pub fn spanned_by(vertices: impl IntoIterator<Item = Vertex>) -> Option<Self> {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        if v.is_empty() {
            return None;
        }
        v.sort_unstable();
        v.dedup();
        Some(Self { vertices: v })
    }

    pub fn vertex(v: Vertex) -> Self {
        Self { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// `self` is a (not necessarily proper) face of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.vertices.len() > other.vertices.len() {
            return false;
        }
        let mut it = other.vertices.iter();
        'outer: for v in &self.vertices {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_proper_face_of(&self, other: &Simplex) -> bool {
        self.vertices.len() < other.vertices.len() && self.is_face_of(other)
    }

    pub fn is_disjoint_from(&self, other: &Simplex) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.vertices.len() && j < other.vertices.len() {
            match self.vertices[i].cmp(&other.vertices[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// Vertex union. Always a valid simplex (as a vertex set).
    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v = self.vertices.clone();
        v.extend_from_slice(&other.vertices);
        v.sort_unstable();
        v.dedup();
        Simplex { vertices: v }
    }

    /// The codimension-one faces, in the order obtained by deleting vertex
    /// `i` for `i = 0..=dim`. Empty for a vertex.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.vertices.len() == 1 {
            return Vec::new();
        }
        (0..self.vertices.len())
            .map(|i| {
                let mut v = self.vertices.clone();
                v.remove(i);
                Simplex { vertices: v }
            })
            .collect()
    }

    /// All nonempty faces including `self`.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.vertices.len();
        assert!(n < 32, "simplex of dimension {} is too large to enumerate faces", n - 1);
        (1u32..(1u32 << n))
            .map(|mask| {
                let v = (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| self.vertices[i])
                    .collect();
                Simplex { vertices: v }
            })
            .collect()
    }

    /// Vertices of `self` not in `other`, or `None` if nothing remains.
    pub fn difference(&self, other: &Simplex) -> Option<Simplex> {
        let v: Vec<Vertex> = self
            .vertices
            .iter()
            .copied()
            .filter(|x| !other.contains_vertex(*x))
            .collect();
        (!v.is_empty()).then_some(Simplex { vertices: v })
    }

    pub fn intersection(&self, other: &Simplex) -> Option<Simplex> {
        let v: Vec<Vertex> = self
            .vertices
            .iter()
            .copied()
            .filter(|x| other.contains_vertex(*x))
            .collect();
        (!v.is_empty()).then_some(Simplex { vertices: v })
    }
}

impl TryFrom<Vec<Vertex>> for Simplex {
    type Error = Error;

    fn try_from(value: Vec<Vertex>) -> Result<Self> {
        Simplex::new(value)
    }
}

impl From<Simplex> for Vec<Vertex> {
    fn from(s: Simplex) -> Self {
        s.vertices
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_and_duplicates() {
        let s = Simplex::new([2, 0, 1]).unwrap();
        assert_eq!(s.vertices(), &[0, 1, 2]);
        assert_eq!(s.dim(), 2);
        assert!(Simplex::new([1, 1]).is_err());
        assert!(Simplex::new([]).is_err());
    }

    #[test]
    fn face_relations() {
        let t = Simplex::new([0, 1, 2]).unwrap();
        let e = Simplex::new([0, 2]).unwrap();
        assert!(e.is_face_of(&t));
        assert!(e.is_proper_face_of(&t));
        assert!(!t.is_face_of(&e));
        assert!(!Simplex::new([0, 3]).unwrap().is_face_of(&t));
        assert_eq!(t.faces().len(), 7);
        assert_eq!(
            t.facets(),
            vec![
                Simplex::new([1, 2]).unwrap(),
                Simplex::new([0, 2]).unwrap(),
                Simplex::new([0, 1]).unwrap()
            ]
        );
    }

    #[test]
    fn serde_round_trip_rejects_bad_input() {
        let s: Simplex = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(s.vertices(), &[1, 3]);
        assert!(serde_json::from_str::<Simplex>("[1,1]").is_err());
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,3]");
    }
}
