//! Limit sets of maps between open spaces presented as compactifications.
//!
//! A [`PuncturedComplex`] `(W, S)` stands for the open space `|W| ∖ |S|`.
//! A map between such spaces is given by a simplicial extension
//! `g: W_X → W_Y`; its limit set is `g(W_X ∖ X) ∩ Y`, computed here as the
//! open simplices `g(σ)`, `σ ∈ S_X`, that avoid `S_Y`.

mod laws;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::{MapJson, OpenSimplexSet, Simplex, SimplicialComplex, SimplicialMap, Vertex};
use crate::error::{Error, Result};
use crate::fixtures;

pub use laws::{
    basic_laws, compose, equal_at_infinity, limit_dimension_monotone_under_composition, precompose_projection,
    preimage_restrict, product, restrict_closed, union_law, Composition, LawCheck, LawRecord,
    ProductMap,
};

/// The open space `|W| ∖ |S|`. `S` is a subcomplex, so the space is open in
/// `|W|`; no maximal simplex of `W` lies in `S`, so it is dense.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuncturedComplex {
    complex: SimplicialComplex,
    punctures: SimplicialComplex,
}

impl PuncturedComplex {
    pub fn new(complex: SimplicialComplex, punctures: SimplicialComplex) -> Result<Self> {
        punctures.check_subcomplex_of(&complex, "punctures must lie in the compactification")?;
        if let Some(m) = complex
            .maximal_simplices()
            .into_iter()
            .find(|m| punctures.contains(m))
        {
            return Err(Error::Contract(format!(
                "maximal simplex {m} is punctured; the open part would not be dense"
            )));
        }
        Ok(Self { complex, punctures })
    }

    /// A compact space: nothing punctured.
    pub fn compact(complex: SimplicialComplex) -> Self {
        Self {
            complex,
            punctures: SimplicialComplex::new(),
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn punctures(&self) -> &SimplicialComplex {
        &self.punctures
    }

    /// Open simplices making up the represented space.
    pub fn interior(&self) -> OpenSimplexSet {
        self.complex.minus(&self.punctures)
    }

    pub fn is_compact(&self) -> bool {
        self.punctures.is_empty()
    }

    /// Dimension of the represented space.
    pub fn dim(&self) -> isize {
        self.complex.dim()
    }

    pub fn from_json(json: &PuncturedJson) -> Result<Self> {
        let complex = SimplicialComplex::from_maximal(json.maximal.iter().map(|s| s.iter().copied()))?;
        let punctures =
            SimplicialComplex::from_maximal(json.punctures.iter().map(|s| s.iter().copied()))?;
        Self::new(complex, punctures)
    }

    pub fn to_json(&self) -> PuncturedJson {
        let list = |k: &SimplicialComplex| k.maximal_simplices().into_iter().map(Vec::from).collect();
        PuncturedJson {
            maximal: list(&self.complex),
            punctures: list(&self.punctures),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuncturedJson {
    pub maximal: Vec<Vec<Vertex>>,
    #[serde(default)]
    pub punctures: Vec<Vec<Vertex>>,
}

/// A map `X → Y` of represented spaces with its simplicial extension
/// `g: W_X → W_Y`. Every simplex outside `S_X` must land outside `S_Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactifiedMap {
    domain: PuncturedComplex,
    target: PuncturedComplex,
    extension: SimplicialMap,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompactifiedMapJson {
    pub domain: PuncturedJson,
    pub target: PuncturedJson,
    pub vertex_map: std::collections::BTreeMap<String, Vertex>,
}

impl CompactifiedMap {
    pub fn new(domain: PuncturedComplex, target: PuncturedComplex, extension: SimplicialMap) -> Result<Self> {
        if extension.source() != domain.complex() || extension.target() != target.complex() {
            return Err(Error::Contract(
                "extension must go from the domain compactification to the target compactification".into(),
            ));
        }
        for s in domain.complex().iter().filter(|s| !domain.punctures().contains(s)) {
            if target.punctures().contains(&extension.image(s)) {
                return Err(Error::NotMapOfPairs { simplex: s.clone() });
            }
        }
        Ok(Self {
            domain,
            target,
            extension,
        })
    }

    /// Builds the extension from a vertex assignment.
    pub fn from_vertex_map(
        domain: PuncturedComplex,
        target: PuncturedComplex,
        vertex_map: std::collections::BTreeMap<Vertex, Vertex>,
    ) -> Result<Self> {
        let g = SimplicialMap::new(domain.complex().clone(), target.complex().clone(), vertex_map)?;
        Self::new(domain, target, g)
    }

    pub fn identity(p: &PuncturedComplex) -> Self {
        Self {
            domain: p.clone(),
            target: p.clone(),
            extension: SimplicialMap::identity(p.complex()),
        }
    }

    pub fn domain(&self) -> &PuncturedComplex {
        &self.domain
    }

    pub fn target(&self) -> &PuncturedComplex {
        &self.target
    }

    pub fn extension(&self) -> &SimplicialMap {
        &self.extension
    }

    /// The image of the represented domain, as open simplices of `W_Y`.
    pub fn image(&self) -> OpenSimplexSet {
        self.extension.image_of_set(self.domain.interior().iter())
    }

    /// Closure of the image inside the represented target: the closure in
    /// `W_Y` with the punctures removed.
    pub fn image_closure(&self) -> OpenSimplexSet {
        self.image().closure().minus(self.target.punctures())
    }

    /// `X` onto `Y`: every open simplex of `Y` is hit.
    pub fn is_surjective(&self) -> bool {
        self.image() == self.target.interior()
    }

    pub fn from_json(json: &CompactifiedMapJson) -> Result<Self> {
        let domain = PuncturedComplex::from_json(&json.domain)?;
        let target = PuncturedComplex::from_json(&json.target)?;
        let vm = MapJson {
            vertex_map: json.vertex_map.clone(),
        }
        .to_map()?;
        Self::from_vertex_map(domain, target, vm)
    }

    pub fn to_json(&self) -> CompactifiedMapJson {
        CompactifiedMapJson {
            domain: self.domain.to_json(),
            target: self.target.to_json(),
            vertex_map: self.extension.to_json().vertex_map,
        }
    }
}

/// Open simplices of the target making up `L(f)`, and their largest
/// dimension (`−1` for the empty set).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitSetResult {
    pub carrier: OpenSimplexSet,
    pub limit_dimension: isize,
}

impl LimitSetResult {
    pub fn new(carrier: OpenSimplexSet) -> Self {
        Self {
            limit_dimension: carrier.dim(),
            carrier,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }
}

pub fn limit_set(f: &CompactifiedMap) -> LimitSetResult {
    let carrier = f
        .extension
        .image_of_set(f.domain.punctures().iter())
        .minus(&OpenSimplexSet::from_complex(f.target.punctures()));
    LimitSetResult::new(carrier)
}

/// Proper iff the limit set is empty.
pub fn is_proper(f: &CompactifiedMap) -> bool {
    limit_set(f).is_empty()
}

/// Properness read off from preimages: every point of `Y` has a compact
/// preimage. For a point in the open simplex `τ` the preimage is compact
/// exactly when no punctured simplex of the domain maps onto `τ`.
pub fn proper_by_preimages(f: &CompactifiedMap) -> bool {
    let hit_from_infinity: BTreeSet<Simplex> = f
        .domain
        .punctures()
        .iter()
        .map(|s| f.extension.image(s))
        .collect();
    f.target.interior().iter().all(|t| !hit_from_infinity.contains(t))
}

/// The open interval as a path with `n ≥ 2` edges and both endpoints
/// punctured.
pub fn open_interval(n: usize) -> PuncturedComplex {
    let path = fixtures::path(n);
    let ends = SimplicialComplex::closure_of([Simplex::vertex(0), Simplex::vertex(n as Vertex)]);
    PuncturedComplex::new(path, ends).expect("endpoints are not maximal")
}

/// The open interval wrapped once around an `n`-gon (`i ↦ i mod n`), both
/// endpoints going to vertex `0`.
pub fn circle_wrap(n: usize) -> CompactifiedMap {
    let domain = open_interval(n);
    let target = PuncturedComplex::compact(fixtures::polygon(n));
    let vm = (0..=n as Vertex).map(|i| (i, i % n as Vertex)).collect();
    CompactifiedMap::from_vertex_map(domain, target, vm).expect("wrap is simplicial")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_of_open_interval_is_proper() {
        let f = CompactifiedMap::identity(&open_interval(4));
        let l = limit_set(&f);
        assert!(l.is_empty());
        assert_eq!(l.limit_dimension, -1);
        assert!(is_proper(&f));
        assert!(proper_by_preimages(&f));
    }

    #[test]
    fn circle_wrap_limit_is_one_vertex() {
        let f = circle_wrap(4);
        let l = limit_set(&f);
        assert_eq!(l.carrier.to_vec(), vec![Simplex::vertex(0)]);
        assert_eq!(l.limit_dimension, 0);
        assert!(!is_proper(&f));
        assert!(!proper_by_preimages(&f));
    }

    #[test]
    fn compact_domain_is_proper() {
        let k = fixtures::boundary_of_simplex(3);
        let f = CompactifiedMap::identity(&PuncturedComplex::compact(k));
        assert!(is_proper(&f));
    }

    #[test]
    fn density_and_map_checks() {
        let e = fixtures::simplex(1);
        assert!(PuncturedComplex::new(e.clone(), e.clone()).is_err());
        let into_puncture = CompactifiedMap::from_vertex_map(
            PuncturedComplex::compact(fixtures::point()),
            open_interval(2),
            [(0, 0)].into(),
        );
        assert!(matches!(into_puncture, Err(Error::NotMapOfPairs { .. })));
    }

    #[test]
    fn json_round_trip() {
        let f = circle_wrap(4);
        let text = serde_json::to_string(&f.to_json()).unwrap();
        let back = CompactifiedMap::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, f);
    }
}
