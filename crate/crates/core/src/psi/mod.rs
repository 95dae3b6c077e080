//! From a relative circuit and a map into a pair to a certified
//! pseudocycle, and the matching certificate for nullbordisms.
//!
//! Every construction runs as a sequence of gated stages. A stage that
//! does not pass aborts the run with [`Error::StageFailed`] and its
//! witness; later stages are never executed.

mod bordism;
mod certificate;
mod dual;
mod obstruction;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::circuits::{Status, Verdict};
use crate::complex::{OpenSimplexSet, Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

pub use bordism::{
    bordism_invariance_check, compare_across_subdivision, end_boundary_signs, induced_end_orientation,
    verify_bordism_certificate, BordismCertificate, BordismJson as BordismCertificateJson, EndComparison,
    InvarianceReport,
};
pub use certificate::{psi, psi_with_orientation, PseudocycleCertificate, PseudocycleJson, SigmaJson};
pub use dual::{dual_complex, DualComplex, JoinCheck};
pub use obstruction::{
    cw_dimension_bound, cw_dimension_bound_with, nominal_bound, GammaGroup, GammaTable, ObstructionReport,
};

/// A target pair `(X, A)` with `A ⊆ X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetPair {
    pub complex: SimplicialComplex,
    pub sub: SimplicialComplex,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetJson {
    pub maximal: Vec<Vec<Vertex>>,
    #[serde(default)]
    pub rel: Vec<Vec<Vertex>>,
}

impl TargetPair {
    pub fn new(complex: SimplicialComplex, sub: SimplicialComplex) -> Result<Self> {
        sub.check_subcomplex_of(&complex, "target pair needs A ⊆ X")?;
        Ok(Self { complex, sub })
    }

    pub fn absolute(complex: SimplicialComplex) -> Self {
        Self {
            complex,
            sub: SimplicialComplex::new(),
        }
    }

    pub fn from_json(json: &TargetJson) -> Result<Self> {
        let c = |v: &Vec<Vec<Vertex>>| SimplicialComplex::from_maximal(v.iter().map(|s| s.iter().copied()));
        Self::new(c(&json.maximal)?, c(&json.rel)?)
    }

    pub fn to_json(&self) -> TargetJson {
        let list = |k: &SimplicialComplex| k.maximal_simplices().into_iter().map(Vec::from).collect();
        TargetJson {
            maximal: list(&self.complex),
            rel: list(&self.sub),
        }
    }
}

/// One executed stage and the conditions it checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: String,
    pub status: Status,
    pub verdict: Verdict,
}

#[derive(Default)]
pub(crate) struct Pipeline {
    records: Vec<StageRecord>,
}

impl Pipeline {
    /// Records the stage; anything but a pass aborts.
    pub(crate) fn stage(&mut self, name: &str, verdict: Verdict) -> Result<()> {
        let status = verdict.status();
        if status != Status::Pass {
            let c = verdict
                .first_failure()
                .or_else(|| verdict.first_unknown())
                .expect("a non-passing verdict has a non-passing condition");
            return Err(Error::StageFailed {
                stage: name.to_string(),
                unknown: status == Status::Unknown,
                witness: c.witness.clone(),
                detail: format!("{}: {}", c.name, c.detail),
                completed: self.records.iter().map(|r| r.stage.clone()).collect(),
            });
        }
        self.records.push(StageRecord {
            stage: name.to_string(),
            status,
            verdict,
        });
        Ok(())
    }

    pub(crate) fn finish(self) -> Vec<StageRecord> {
        self.records
    }
}

/// A limit dimension against its bound `max(−1, ·)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub limit_dimension: isize,
    pub bound: isize,
    pub holds: bool,
}

impl BoundCheck {
    pub fn new(limit_dimension: isize, bound: isize) -> Self {
        Self {
            limit_dimension,
            bound,
            holds: limit_dimension <= bound,
        }
    }
}

/// The two limit-dimension conditions of a pseudocycle (or of a bordism
/// between pseudocycles): one for the whole map, one for its boundary part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionBounds {
    pub main: BoundCheck,
    pub boundary: BoundCheck,
}

impl DimensionBounds {
    pub fn holds(&self) -> bool {
        self.main.holds && self.boundary.holds
    }

    pub(crate) fn verdict(&self, main: &OpenSimplexSet, boundary: &OpenSimplexSet) -> Verdict {
        let mut v = Verdict::default();
        v.check(
            "main",
            first_above(main.iter(), self.main.bound),
            format!("ld = {} ≤ {}", self.main.limit_dimension, self.main.bound),
        );
        v.check(
            "boundary",
            first_above(boundary.iter(), self.boundary.bound),
            format!("ld = {} ≤ {}", self.boundary.limit_dimension, self.boundary.bound),
        );
        v
    }
}

/// `max(−1, n)` for a signed `n`.
pub(crate) fn floor_bound(n: isize) -> isize {
    n.max(-1)
}

pub(crate) fn first_above<'a>(set: impl IntoIterator<Item = &'a Simplex>, bound: isize) -> Option<Simplex> {
    set.into_iter().find(|s| s.dim() as isize > bound).cloned()
}

/// Smallest simplex in exactly one of the two sets.
pub(crate) fn first_difference(a: &OpenSimplexSet, b: &OpenSimplexSet) -> Option<Simplex> {
    a.members().symmetric_difference(b.members()).next().cloned()
}

pub(crate) fn obstruction_verdict(o: &ObstructionReport, table: &GammaTable) -> Verdict {
    let mut v = Verdict::default();
    let nonzero: Vec<usize> = o.required_gamma.iter().copied().filter(|n| !table.vanishes(*n)).collect();
    if nonzero.is_empty() {
        v.check("all_vanish", None, format!("Γ_n = 0 for n in {:?}", o.required_gamma));
    } else {
        v.push("all_vanish", Status::Fail, Vec::new(), format!("Γ_n not known to vanish for n in {nonzero:?}"));
    }
    if o.witness_within_bound {
        v.check("dual_complex", None, format!("dual complex of dimension {} ≤ {}", o.dual_complex_dim, o.cw_dimension_bound));
    } else {
        v.push(
            "dual_complex",
            Status::Fail,
            Vec::new(),
            format!("dual complex of dimension {} exceeds {}", o.dual_complex_dim, o.cw_dimension_bound),
        );
    }
    v
}

/// Result of recomputing a certificate from the inputs it embeds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recheck {
    pub kind: String,
    /// Leaf values compared.
    pub leaves: usize,
    /// JSON paths whose stored value differs from the recomputed one.
    pub mismatches: Vec<String>,
    /// The recomputation itself succeeded and reports a valid certificate.
    pub valid: bool,
    pub error: Option<String>,
}

impl Recheck {
    pub fn reproduced(&self) -> bool {
        self.valid && self.mismatches.is_empty()
    }
}

/// Rebuilds the inputs embedded in a certificate, reruns the pipeline and
/// compares every value of the stored certificate with the recomputed one.
pub fn verify_certificate(stored: &Value) -> Result<Recheck> {
    let kind = stored
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::MalformedInput("certificate has no `kind`".into()))?
        .to_string();
    let recomputed = match kind.as_str() {
        "pseudocycle" => {
            let json: PseudocycleJson = serde_json::from_value(stored.clone())
                .map_err(|e| Error::MalformedInput(format!("certificate: {e}")))?;
            certificate::recompute(&json).map(|c| serde_json::to_value(c.to_json()))
        }
        "bordism" => {
            let json: BordismCertificateJson = serde_json::from_value(stored.clone())
                .map_err(|e| Error::MalformedInput(format!("certificate: {e}")))?;
            bordism::recompute(&json).map(|c| serde_json::to_value(c.to_json()))
        }
        other => return Err(Error::MalformedInput(format!("unknown certificate kind `{other}`"))),
    };
    let mut leaves = 0;
    let mut mismatches = Vec::new();
    match recomputed {
        Ok(value) => {
            let value = value.map_err(|e| Error::MalformedInput(e.to_string()))?;
            compare(stored, &value, String::new(), &mut leaves, &mut mismatches);
            let valid = value.get("valid").and_then(Value::as_bool).unwrap_or(false);
            Ok(Recheck {
                kind,
                leaves,
                mismatches,
                valid,
                error: None,
            })
        }
        Err(e @ Error::StageFailed { .. }) => {
            count_leaves(stored, &mut leaves);
            Ok(Recheck {
                kind,
                leaves,
                mismatches: vec!["/stages".into()],
                valid: false,
                error: Some(e.to_string()),
            })
        }
        Err(e) => Err(e),
    }
}

fn count_leaves(v: &Value, leaves: &mut usize) {
    match v {
        Value::Array(a) => a.iter().for_each(|x| count_leaves(x, leaves)),
        Value::Object(o) => o.values().for_each(|x| count_leaves(x, leaves)),
        _ => *leaves += 1,
    }
}

fn compare(stored: &Value, fresh: &Value, path: String, leaves: &mut usize, out: &mut Vec<String>) {
    match (stored, fresh) {
        (Value::Object(a), Value::Object(b)) => {
            for (key, x) in a {
                let p = format!("{path}/{key}");
                match b.get(key) {
                    Some(y) => compare(x, y, p, leaves, out),
                    None => {
                        count_leaves(x, leaves);
                        out.push(p);
                    }
                }
            }
            for key in b.keys().filter(|k| !a.contains_key(*k)) {
                out.push(format!("{path}/{key}"));
            }
        }
        (Value::Array(a), Value::Array(b)) => {
            for (i, x) in a.iter().enumerate() {
                let p = format!("{path}/{i}");
                match b.get(i) {
                    Some(y) => compare(x, y, p, leaves, out),
                    None => {
                        count_leaves(x, leaves);
                        out.push(p);
                    }
                }
            }
            if b.len() > a.len() {
                out.push(format!("{path}/{}", a.len()));
            }
        }
        _ => {
            *leaves += 1;
            if stored != fresh {
                out.push(path);
            }
        }
    }
}
