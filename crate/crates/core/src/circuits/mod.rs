//! Circuits (pseudomanifolds with a codimension-two singular set), their
//! nullbordisms, the singular sets `Σ` whose complements are manifolds, and
//! gluing and cylinder constructions.

mod cylinder;
mod glue;
mod sigma;
mod verify;

use serde::{Deserialize, Serialize};

use crate::complex::{OpenSimplexSet, Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

pub use cylinder::{cylinder, subdivision_cylinder, Cylinder, SubdivisionCylinder};
pub use glue::{glue, glue_self, GlueResult, SelfGlueResult};
pub use sigma::{sigma, verify_sigma_complement, SigmaCase, SigmaInput, SigmaSet};
pub use verify::{
    boundary_circuit, default_singular_set, verify_circuit, verify_nullbordism, NullbordismKind,
};

/// Outcome of one named condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub status: Status,
    pub witness: Vec<Simplex>,
    pub detail: String,
}

/// A list of checked conditions. The overall status is `Fail` if any
/// condition failed, else `Unknown` if any is undecided, else `Pass`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub conditions: Vec<Condition>,
}

impl Verdict {
    pub fn status(&self) -> Status {
        if self.conditions.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.conditions.iter().any(|c| c.status == Status::Unknown) {
            Status::Unknown
        } else {
            Status::Pass
        }
    }

    pub fn is_valid(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn first_failure(&self) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.status == Status::Fail)
    }

    pub fn first_unknown(&self) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.status == Status::Unknown)
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub(crate) fn check(&mut self, name: &str, witness: Option<Simplex>, detail: impl Into<String>) {
        self.conditions.push(Condition {
            name: name.to_string(),
            status: if witness.is_some() { Status::Fail } else { Status::Pass },
            witness: witness.into_iter().collect(),
            detail: detail.into(),
        });
    }

    pub(crate) fn push(&mut self, name: &str, status: Status, witness: Vec<Simplex>, detail: impl Into<String>) {
        self.conditions.push(Condition {
            name: name.to_string(),
            status,
            witness,
            detail: detail.into(),
        });
    }

    pub(crate) fn absorb(&mut self, prefix: &str, other: Verdict) {
        for mut c in other.conditions {
            c.name = format!("{prefix}.{}", c.name);
            self.conditions.push(c);
        }
    }
}

/// A relative `k`-circuit `(Q, δQ)` triangulated by `(complex, boundary)`
/// with singular set `S(Q)` given by `singular`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeCircuitData {
    pub complex: SimplicialComplex,
    pub boundary: SimplicialComplex,
    pub k: usize,
    pub singular: SimplicialComplex,
}

/// Serialized circuit: maximal simplices, boundary and singular simplex
/// lists (face closures are taken), optional dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitJson {
    pub maximal: Vec<Vec<Vertex>>,
    #[serde(default)]
    pub boundary: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singular: Option<Vec<Vec<Vertex>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

fn simplices_to_json(k: &SimplicialComplex) -> Vec<Vec<Vertex>> {
    k.maximal_simplices().into_iter().map(Vec::from).collect()
}

impl RelativeCircuitData {
    /// Checks the structural requirements (`boundary`, `singular` inside the
    /// complex; complex of dimension `k` unless empty). `singular = None`
    /// selects [`default_singular_set`].
    pub fn new(
        complex: SimplicialComplex,
        boundary: SimplicialComplex,
        k: usize,
        singular: Option<SimplicialComplex>,
    ) -> Result<Self> {
        boundary.check_subcomplex_of(&complex, "circuit boundary must lie in the circuit")?;
        if !complex.is_empty() && complex.dim() != k as isize {
            return Err(Error::DimensionMismatch(format!(
                "complex has dimension {} but the circuit dimension is {k}",
                complex.dim()
            )));
        }
        if k == 0 && !boundary.is_empty() {
            return Err(Error::DimensionMismatch(
                "a 0-circuit has empty boundary".into(),
            ));
        }
        let singular = match singular {
            Some(s) => {
                s.check_subcomplex_of(&complex, "singular set must lie in the circuit")?;
                s
            }
            None => default_singular_set(&complex, &boundary, k),
        };
        Ok(Self {
            complex,
            boundary,
            k,
            singular,
        })
    }

    /// A closed circuit with the default singular set.
    pub fn closed(complex: SimplicialComplex, k: usize) -> Result<Self> {
        Self::new(complex, SimplicialComplex::new(), k, None)
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.is_empty()
    }

    /// `Q ∖ S(Q)` as open simplices.
    pub fn manifold_part(&self) -> OpenSimplexSet {
        self.complex.minus(&self.singular)
    }

    pub fn from_json(json: &CircuitJson) -> Result<Self> {
        let complex = SimplicialComplex::from_maximal(json.maximal.iter().map(|s| s.iter().copied()))?;
        let boundary = SimplicialComplex::from_maximal(json.boundary.iter().map(|s| s.iter().copied()))?;
        let singular = json
            .singular
            .as_ref()
            .map(|s| SimplicialComplex::from_maximal(s.iter().map(|x| x.iter().copied())))
            .transpose()?;
        let k = json.k.unwrap_or(complex.dim().max(0) as usize);
        Self::new(complex, boundary, k, singular)
    }

    pub fn to_json(&self) -> CircuitJson {
        CircuitJson {
            maximal: simplices_to_json(&self.complex),
            boundary: simplices_to_json(&self.boundary),
            singular: Some(simplices_to_json(&self.singular)),
            k: Some(self.k),
        }
    }

    /// Disjoint union with a copy of `other` shifted past this circuit's
    /// vertices. Returns the union and the shift applied to `other`.
    pub fn disjoint_union(&self, other: &RelativeCircuitData) -> Result<(RelativeCircuitData, Vertex)> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch(format!(
                "disjoint union of a {}-circuit and a {}-circuit",
                self.k, other.k
            )));
        }
        let offset = self.complex.max_vertex().map_or(0, |v| v + 1);
        let union = RelativeCircuitData::new(
            self.complex.union(&other.complex.shifted(offset)),
            self.boundary.union(&other.boundary.shifted(offset)),
            self.k,
            Some(self.singular.union(&other.singular.shifted(offset))),
        )?;
        Ok((union, offset))
    }
}

/// A relative `(k+1)`-circuit `R` triangulated by `(complex, boundary)`,
/// together with a `k`-circuit `(Q, P)` triangulated by
/// `(circuit, circuit_boundary)` that should sit in `δR`, and `S(R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BordismData {
    pub complex: SimplicialComplex,
    pub boundary: SimplicialComplex,
    pub circuit: SimplicialComplex,
    pub circuit_boundary: SimplicialComplex,
    pub k: usize,
    pub singular: SimplicialComplex,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BordismJson {
    pub maximal: Vec<Vec<Vertex>>,
    pub boundary: Vec<Vec<Vertex>>,
    pub q: Vec<Vec<Vertex>>,
    #[serde(default)]
    pub q_boundary: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singular: Option<Vec<Vec<Vertex>>>,
    pub k: usize,
}

impl BordismData {
    /// Structural checks: `P ⊆ Q`, `δR ⊆ R`, `Q ⊆ R`, `S(R) ⊆ R`, and
    /// `dim R = k + 1`. Whether `Q ⊆ δR` is a verified condition, not a
    /// precondition. `singular = None` selects the default singular set of
    /// `(R, δR)`.
    pub fn new(
        complex: SimplicialComplex,
        boundary: SimplicialComplex,
        circuit: SimplicialComplex,
        circuit_boundary: SimplicialComplex,
        k: usize,
        singular: Option<SimplicialComplex>,
    ) -> Result<Self> {
        boundary.check_subcomplex_of(&complex, "bordism boundary must lie in the bordism")?;
        circuit.check_subcomplex_of(&complex, "circuit must lie in the bordism")?;
        circuit_boundary.check_subcomplex_of(&circuit, "circuit boundary must lie in the circuit")?;
        if complex.dim() != k as isize + 1 {
            return Err(Error::DimensionMismatch(format!(
                "bordism of dimension {} for a {k}-circuit",
                complex.dim()
            )));
        }
        let singular = match singular {
            Some(s) => {
                s.check_subcomplex_of(&complex, "singular set must lie in the bordism")?;
                s
            }
            None => default_singular_set(&complex, &boundary, k + 1),
        };
        Ok(Self {
            complex,
            boundary,
            circuit,
            circuit_boundary,
            k,
            singular,
        })
    }

    /// `(R, δR)` as a relative `(k+1)`-circuit.
    pub fn as_circuit(&self) -> RelativeCircuitData {
        RelativeCircuitData {
            complex: self.complex.clone(),
            boundary: self.boundary.clone(),
            k: self.k + 1,
            singular: self.singular.clone(),
        }
    }

    /// `(Q, P)` with singular set `S(R) ∩ Q`.
    pub fn end_circuit(&self) -> RelativeCircuitData {
        RelativeCircuitData {
            complex: self.circuit.clone(),
            boundary: self.circuit_boundary.clone(),
            k: self.k,
            singular: self.singular.intersection(&self.circuit),
        }
    }

    /// The closure of `δR ∖ Q`.
    pub fn side(&self) -> SimplicialComplex {
        SimplicialComplex::closure(&self.boundary.minus(&self.circuit))
    }

    pub fn from_json(json: &BordismJson) -> Result<Self> {
        let c = |v: &Vec<Vec<Vertex>>| SimplicialComplex::from_maximal(v.iter().map(|s| s.iter().copied()));
        let singular = json.singular.as_ref().map(c).transpose()?;
        Self::new(
            c(&json.maximal)?,
            c(&json.boundary)?,
            c(&json.q)?,
            c(&json.q_boundary)?,
            json.k,
            singular,
        )
    }

    pub fn to_json(&self) -> BordismJson {
        BordismJson {
            maximal: simplices_to_json(&self.complex),
            boundary: simplices_to_json(&self.boundary),
            q: simplices_to_json(&self.circuit),
            q_boundary: simplices_to_json(&self.circuit_boundary),
            singular: Some(simplices_to_json(&self.singular)),
            k: self.k,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn structural_errors() {
        let d = fixtures::simplex(2);
        assert!(matches!(
            RelativeCircuitData::new(d.clone(), SimplicialComplex::new(), 3, None),
            Err(Error::DimensionMismatch(_))
        ));
        let outside = SimplicialComplex::from_maximal([vec![7, 8]]).unwrap();
        assert!(matches!(
            RelativeCircuitData::new(d, outside, 2, None),
            Err(Error::NotSubcomplex { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let q = RelativeCircuitData::new(
            fixtures::simplex(2),
            fixtures::boundary_of_simplex(2),
            2,
            None,
        )
        .unwrap();
        let text = serde_json::to_string(&q.to_json()).unwrap();
        let back = RelativeCircuitData::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn default_singular_set_of_wedge() {
        let q = RelativeCircuitData::closed(fixtures::wedge_of_spheres(), 2).unwrap();
        assert_eq!(
            q.singular.maximal_simplices(),
            vec![Simplex::vertex(fixtures::WEDGE_POINT)]
        );
    }
}
