use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{OpenSimplexSet, Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// A simplicial map given by a vertex assignment. Construction checks that
/// the image of every source simplex spans a simplex of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: BTreeMap<Vertex, Vertex>,
}

/// Serialized form `{ "vertex_map": { "src": tgt, ... } }`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub vertex_map: BTreeMap<String, Vertex>,
}

impl MapJson {
    pub fn from_map(map: &BTreeMap<Vertex, Vertex>) -> Self {
        Self {
            vertex_map: map.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    pub fn to_map(&self) -> Result<BTreeMap<Vertex, Vertex>> {
        self.vertex_map
            .iter()
            .map(|(k, v)| {
                k.trim()
                    .parse::<Vertex>()
                    .map(|k| (k, *v))
                    .map_err(|_| Error::MalformedInput(format!("bad vertex key {k:?}")))
            })
            .collect()
    }
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: BTreeMap<Vertex, Vertex>,
    ) -> Result<Self> {
        for v in source.vertices() {
            match vertex_map.get(&v) {
                None => {
                    return Err(Error::MalformedInput(format!(
                        "vertex map has no image for source vertex {v}"
                    )))
                }
                Some(w) if !target.contains(&Simplex::vertex(*w)) => {
                    return Err(Error::NotSimplicial {
                        source_simplex: Simplex::vertex(v),
                    })
                }
                _ => {}
            }
        }
        let vertex_map: BTreeMap<Vertex, Vertex> = vertex_map
            .into_iter()
            .filter(|(v, _)| source.contains(&Simplex::vertex(*v)))
            .collect();
        for s in source.maximal_simplices() {
            let img = Simplex::spanned_by(s.vertices().iter().map(|v| vertex_map[v]))
                .expect("nonempty");
            if !target.contains(&img) {
                return Err(Error::NotSimplicial { source_simplex: s });
            }
        }
        Ok(Self {
            source,
            target,
            vertex_map,
        })
    }

    pub fn identity(k: &SimplicialComplex) -> Self {
        Self {
            source: k.clone(),
            target: k.clone(),
            vertex_map: k.vertices().into_iter().map(|v| (v, v)).collect(),
        }
    }

    /// Every source vertex to `point`, which must be a vertex of `target`.
    pub fn constant(source: &SimplicialComplex, target: &SimplicialComplex, point: Vertex) -> Result<Self> {
        Self::new(
            source.clone(),
            target.clone(),
            source.vertices().into_iter().map(|v| (v, point)).collect(),
        )
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.vertex_map
    }

    pub fn apply_vertex(&self, v: Vertex) -> Option<Vertex> {
        self.vertex_map.get(&v).copied()
    }

    /// Image simplex of a source simplex (deduplicated vertex set).
    pub fn image(&self, s: &Simplex) -> Simplex {
        Simplex::spanned_by(s.vertices().iter().map(|v| self.vertex_map[v])).expect("nonempty")
    }

    /// `true` when two vertices of `s` share an image.
    pub fn is_degenerate_on(&self, s: &Simplex) -> bool {
        self.image(s).dim() < s.dim()
    }

    /// Image of a set of open simplices, as open simplices of the target.
    pub fn image_of_set<'a>(&self, set: impl IntoIterator<Item = &'a Simplex>) -> OpenSimplexSet {
        set.into_iter().map(|s| self.image(s)).collect()
    }

    /// Image of the whole source.
    pub fn image_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_closed_set(self.source.iter().map(|s| self.image(s)).collect())
    }

    /// Source simplices whose image lies in the subcomplex `a` of the target.
    /// The result is face-closed since `a` is.
    pub fn preimage(&self, a: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex::from_closed_set(
            self.source
                .iter()
                .filter(|s| a.contains(&self.image(s)))
                .cloned()
                .collect(),
        )
    }

    /// `self` followed by `next`. The middle complexes must agree.
    pub fn then(&self, next: &SimplicialMap) -> Result<SimplicialMap> {
        if self.target != next.source {
            return Err(Error::Contract(
                "composition of simplicial maps with mismatched middle complex".into(),
            ));
        }
        Ok(SimplicialMap {
            source: self.source.clone(),
            target: next.target.clone(),
            vertex_map: self
                .vertex_map
                .iter()
                .map(|(v, w)| (*v, next.vertex_map[w]))
                .collect(),
        })
    }

    /// Restriction to a subcomplex of the source.
    pub fn restrict(&self, sub: &SimplicialComplex) -> Result<SimplicialMap> {
        sub.check_subcomplex_of(&self.source, "restriction domain")?;
        Ok(SimplicialMap {
            source: sub.clone(),
            target: self.target.clone(),
            vertex_map: sub.vertices().into_iter().map(|v| (v, self.vertex_map[&v])).collect(),
        })
    }

    /// Same vertex assignment viewed with a larger target.
    pub fn with_target(&self, target: &SimplicialComplex) -> Result<SimplicialMap> {
        SimplicialMap::new(self.source.clone(), target.clone(), self.vertex_map.clone())
    }

    /// Checks that `sub ⊆ source` is carried into `a ⊆ target`.
    pub fn check_map_of_pairs(&self, sub: &SimplicialComplex, a: &SimplicialComplex) -> Result<()> {
        for s in sub.iter() {
            if !a.contains(&self.image(s)) {
                return Err(Error::NotMapOfPairs { simplex: s.clone() });
            }
        }
        Ok(())
    }

    /// Injective on vertices and carrying distinct simplices to distinct simplices.
    pub fn is_injective(&self) -> bool {
        let images: BTreeSet<Vertex> = self.vertex_map.values().copied().collect();
        images.len() == self.vertex_map.len()
    }

    pub fn to_json(&self) -> MapJson {
        MapJson::from_map(&self.vertex_map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn rejects_non_simplicial_assignment() {
        let path = SimplicialComplex::from_maximal([vec![0, 1], vec![1, 2]]).unwrap();
        let square = fixtures::polygon(4);
        // 0->0, 1->2 : [0,2] is not an edge of the square
        let bad: BTreeMap<_, _> = [(0, 0), (1, 2), (2, 3)].into_iter().collect();
        assert!(matches!(
            SimplicialMap::new(path.clone(), square.clone(), bad),
            Err(Error::NotSimplicial { .. })
        ));
        let fold: BTreeMap<_, _> = [(0, 0), (1, 1), (2, 0)].into_iter().collect();
        let f = SimplicialMap::new(path, square, fold).unwrap();
        assert_eq!(f.image_complex().f_vector(), vec![2, 1]);
    }

    #[test]
    fn composition_and_preimage() {
        let k = fixtures::boundary_of_simplex(2);
        let id = SimplicialMap::identity(&k);
        let pt = SimplicialComplex::from_maximal([vec![7]]).unwrap();
        let c = SimplicialMap::constant(&k, &pt, 7).unwrap();
        let comp = id.then(&c).unwrap();
        assert!(comp.is_degenerate_on(&Simplex::new([0, 1]).unwrap()));
        assert_eq!(comp.preimage(&pt), k);
    }

    #[test]
    fn json_keys_are_strings() {
        let m: BTreeMap<Vertex, Vertex> = [(0, 3), (10, 4)].into_iter().collect();
        let j = MapJson::from_map(&m);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(text, r#"{"vertex_map":{"0":3,"10":4}}"#);
        let back: MapJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_map().unwrap(), m);
    }
}
