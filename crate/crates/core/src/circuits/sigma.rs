use serde::{Deserialize, Serialize};

use super::verify::frontier;
use super::{BordismData, RelativeCircuitData, Status, Verdict};
use crate::complex::{is_face_closed, star, OpenSimplexSet, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::recognition::{region_is_pl_manifold, RegionVerdict};

/// Which construction of the low-dimensional set `Σ` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaCase {
    /// Closed circuit `(K, ∅)` of dimension `n`: `Σ = K^{n−2}`.
    A,
    /// Relative `k`-circuit `(L, K)`: `Σ = L^{k−3} ∪ {(k−2)-simplices of L not in K}`.
    B,
    /// Relative nullbordism `(N, M)` of `(L, K)`:
    /// `Σ = N^{≤k−1} ∖ (M(k−1) ∪ St(K(k−2), N))`.
    C,
}

#[derive(Clone, Copy, Debug)]
pub enum SigmaInput<'a> {
    Closed(&'a RelativeCircuitData),
    Relative(&'a RelativeCircuitData),
    Bordism(&'a BordismData),
}

impl SigmaInput<'_> {
    pub fn case(&self) -> SigmaCase {
        match self {
            SigmaInput::Closed(_) => SigmaCase::A,
            SigmaInput::Relative(_) => SigmaCase::B,
            SigmaInput::Bordism(_) => SigmaCase::C,
        }
    }

    /// The complex carrying `Σ`.
    pub fn ambient(&self) -> &SimplicialComplex {
        match self {
            SigmaInput::Closed(q) | SigmaInput::Relative(q) => &q.complex,
            SigmaInput::Bordism(r) => &r.complex,
        }
    }

    /// Dimension of the ambient complex.
    pub fn ambient_dim(&self) -> usize {
        match self {
            SigmaInput::Closed(q) | SigmaInput::Relative(q) => q.k,
            SigmaInput::Bordism(r) => r.k + 1,
        }
    }

    /// The `k` with `Σ ⊇` the `(k−3)`-skeleton: one more than the closed
    /// circuit's dimension in case A, the circuit dimension otherwise.
    pub fn circuit_dim(&self) -> usize {
        match self {
            SigmaInput::Closed(q) => q.k + 1,
            SigmaInput::Relative(q) => q.k,
            SigmaInput::Bordism(r) => r.k,
        }
    }
}

/// `Σ` together with the two facts it is supposed to satisfy, both
/// computed rather than assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSet {
    pub case: SigmaCase,
    /// The selected simplices.
    pub members: OpenSimplexSet,
    /// Closure of `members`; equal to it when `face_closed`.
    pub complex: SimplicialComplex,
    pub face_closed: bool,
    pub ambient_dim: usize,
    /// `ambient_dim − dim Σ`, with `dim ∅ = −1`.
    pub codimension: isize,
}

impl SigmaSet {
    pub fn codimension_ok(&self) -> bool {
        self.codimension >= 2
    }
}

pub fn sigma(input: SigmaInput<'_>) -> Result<SigmaSet> {
    let k = input.circuit_dim() as isize;
    let members: OpenSimplexSet = match input {
        SigmaInput::Closed(q) => {
            if !q.is_closed() {
                return Err(Error::Contract(
                    "the closed-circuit construction needs an empty boundary".into(),
                ));
            }
            q.complex.skeleton(k - 3).iter().cloned().collect()
        }
        SigmaInput::Relative(q) => q
            .complex
            .iter()
            .filter(|s| {
                let d = s.dim() as isize;
                d < k - 2 || (d == k - 2 && !q.boundary.contains(s))
            })
            .cloned()
            .collect(),
        SigmaInput::Bordism(r) => {
            let boundary_ridges: OpenSimplexSet = if k >= 2 {
                r.circuit_boundary
                    .simplices_of_dim((k - 2) as usize)
                    .into_iter()
                    .collect()
            } else {
                OpenSimplexSet::empty()
            };
            let near = star(&boundary_ridges, &r.complex);
            r.complex
                .iter()
                .filter(|s| {
                    let d = s.dim() as isize;
                    d < k
                        && !(d == k - 1 && r.boundary.contains(s))
                        && !near.contains(s)
                })
                .cloned()
                .collect()
        }
    };
    let face_closed = is_face_closed(members.members());
    let complex = members.closure();
    let ambient_dim = input.ambient_dim();
    Ok(SigmaSet {
        case: input.case(),
        codimension: ambient_dim as isize - complex.dim(),
        members,
        complex,
        face_closed,
        ambient_dim,
    })
}

fn first_of(set: impl IntoIterator<Item = Simplex>) -> Option<Simplex> {
    set.into_iter().min_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)))
}

fn region_conditions(
    v: &mut Verdict,
    prefix: &str,
    region: &OpenSimplexSet,
    dim: usize,
    expected_boundary: &OpenSimplexSet,
) {
    let report = region_is_pl_manifold(region, dim);
    let name = format!("{prefix}_manifold");
    match &report.verdict {
        RegionVerdict::Yes => v.check(&name, None, format!("complement is a PL {dim}-manifold")),
        RegionVerdict::No { witness } => {
            v.check(&name, Some(witness.clone()), "complement is not a manifold here")
        }
        RegionVerdict::Unknown { witness } => v.push(
            &name,
            Status::Unknown,
            vec![witness.clone()],
            "link could not be recognized",
        ),
    }
    let name = format!("{prefix}_boundary");
    if matches!(report.verdict, RegionVerdict::No { .. }) {
        v.push(&name, Status::Unknown, Vec::new(), "not evaluated");
        return;
    }
    let diff = first_of(
        report
            .boundary
            .symmetric_difference(expected_boundary.members())
            .cloned(),
    );
    v.check(&name, diff, "manifold boundary of the complement");
}

/// Checks what `Σ` is built for: face-closed, codimension at least two,
/// containing the `(k−3)`-skeleton, and with a manifold complement whose
/// boundary is the expected one. In the bordism case the circuit part of the
/// complement must be a manifold with boundary `K ∖ Σ`, and the frontier of
/// `L` in `M` must lie in `K` away from `Σ`.
pub fn verify_sigma_complement(input: SigmaInput<'_>, s: &SigmaSet) -> Verdict {
    let mut v = Verdict::default();
    let k = input.circuit_dim() as isize;
    let missing = s.members.iter().flat_map(|m| m.facets()).find(|f| !s.members.contains(f));
    v.check("face_closed", missing, "every face of a member is a member");
    let high = first_of(
        s.members
            .iter()
            .filter(|m| m.dim() as isize > s.ambient_dim as isize - 2)
            .cloned(),
    );
    v.check("codimension", high, "members have codimension at least two");
    let low = first_of(
        input
            .ambient()
            .skeleton(k - 3)
            .iter()
            .filter(|m| !s.members.contains(m))
            .cloned(),
    );
    v.check("contains_low_skeleton", low, format!("contains the {}-skeleton", k - 3));

    let sigma = &s.complex;
    match input {
        SigmaInput::Closed(q) => {
            region_conditions(&mut v, "complement", &q.complex.minus(sigma), q.k, &OpenSimplexSet::empty());
        }
        SigmaInput::Relative(q) => {
            region_conditions(&mut v, "complement", &q.complex.minus(sigma), q.k, &q.boundary.minus(sigma));
            let high = first_of(
                sigma
                    .intersection(&q.boundary)
                    .iter()
                    .filter(|m| m.dim() as isize > k - 3)
                    .cloned(),
            );
            v.check("boundary_codimension", high, "Σ meets the boundary in codimension two");
        }
        SigmaInput::Bordism(r) => {
            region_conditions(
                &mut v,
                "complement",
                &r.complex.minus(sigma),
                r.k + 1,
                &r.boundary.minus(sigma),
            );
            region_conditions(
                &mut v,
                "circuit_complement",
                &r.circuit.minus(sigma),
                r.k,
                &r.circuit_boundary.minus(sigma),
            );
            let stray = first_of(
                frontier(&r.circuit, &r.boundary)
                    .iter()
                    .filter(|m| !sigma.contains(m) && !r.circuit_boundary.contains(m))
                    .cloned(),
            );
            v.check(
                "properly_embedded",
                stray,
                "circuit meets the rest of the bordism boundary only in its boundary, away from Σ",
            );
        }
    }
    v
}
