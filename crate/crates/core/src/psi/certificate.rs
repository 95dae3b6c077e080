use serde::{Deserialize, Serialize};

use super::{
    cw_dimension_bound, first_above, first_difference, floor_bound, obstruction_verdict, BoundCheck,
    DimensionBounds, GammaTable, ObstructionReport, Pipeline, StageRecord, TargetJson, TargetPair,
};
use crate::circuits::{
    sigma, verify_circuit, verify_sigma_complement, CircuitJson, RelativeCircuitData, SigmaCase, SigmaInput,
    SigmaSet, Status, Verdict,
};
use crate::complex::{MapJson, OpenSimplexSet, Simplex, SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::homology::{
    evaluate, fundamental_class, homology, orient_circuit, Coordinates, GroupSummary, IntChain,
    OrientationAssignment,
};
use crate::io::check_size;
use crate::limit::{limit_set, restrict_closed, CompactifiedMap, PuncturedComplex};

/// The pseudocycle obtained from a relative circuit `(Q, δQ)` and a map
/// `a: (Q, δQ) → (X, A)`: the manifold part `Q ∖ Σ` with `a` restricted to
/// it, its limit carriers, their dimension bounds, the smoothing
/// obstruction report and the homology class `a_*[Q]`.
#[derive(Clone, Debug)]
pub struct PseudocycleCertificate {
    pub circuit: RelativeCircuitData,
    pub target: TargetPair,
    pub map: SimplicialMap,
    pub k: usize,
    pub sigma: SigmaSet,
    pub orientation: OrientationAssignment,
    pub fundamental_class: IntChain,
    /// `L(a|Q∖Σ)`, which equals `a(Σ)`.
    pub limit_carrier: OpenSimplexSet,
    /// `L(a|δQ∖Σ)`, which equals `a(Σ ∩ δQ)`.
    pub boundary_limit_carrier: OpenSimplexSet,
    pub bounds: DimensionBounds,
    pub obstruction: ObstructionReport,
    pub target_group: GroupSummary,
    pub homology_coordinates: Coordinates,
    pub stages: Vec<StageRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaJson {
    pub case: SigmaCase,
    pub members: Vec<Simplex>,
    /// `Σ` intersected with the boundary part (`δQ`, or the side of a bordism).
    pub boundary_part: Vec<Simplex>,
    pub face_closed: bool,
    pub codimension: isize,
}

impl SigmaJson {
    pub fn new(s: &SigmaSet, boundary: &SimplicialComplex) -> Self {
        Self {
            case: s.case,
            members: s.members.to_vec(),
            boundary_part: s.complex.intersection(boundary).iter().cloned().collect(),
            face_closed: s.face_closed,
            codimension: s.codimension,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyJson {
    pub group: GroupSummary,
    pub coordinates: Coordinates,
}

/// The certificate as written to disk. The inputs are embedded so that it
/// can be recomputed from the file alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudocycleJson {
    pub kind: String,
    pub valid: bool,
    pub k: usize,
    pub circuit: CircuitJson,
    pub target: TargetJson,
    pub map: MapJson,
    pub orientation: Vec<(Simplex, i8)>,
    pub sigma: SigmaJson,
    pub fundamental_class: IntChain,
    pub limit_carrier: Vec<Simplex>,
    pub boundary_limit_carrier: Vec<Simplex>,
    pub bounds: DimensionBounds,
    pub obstruction: ObstructionReport,
    pub homology: HomologyJson,
    pub stages: Vec<StageRecord>,
}

impl PseudocycleCertificate {
    /// Recomputed from the stored parts: every stage passed, both bounds
    /// hold and the obstructions vanish.
    pub fn is_valid(&self) -> bool {
        self.stages.iter().all(|s| s.status == Status::Pass)
            && self.bounds.holds()
            && self.obstruction.all_vanish
    }

    pub fn to_json(&self) -> PseudocycleJson {
        PseudocycleJson {
            kind: "pseudocycle".into(),
            valid: self.is_valid(),
            k: self.k,
            circuit: self.circuit.to_json(),
            target: self.target.to_json(),
            map: self.map.to_json(),
            orientation: self.orientation.signs.iter().map(|(s, x)| (s.clone(), *x)).collect(),
            sigma: SigmaJson::new(&self.sigma, &self.circuit.boundary),
            fundamental_class: self.fundamental_class.clone(),
            limit_carrier: self.limit_carrier.to_vec(),
            boundary_limit_carrier: self.boundary_limit_carrier.to_vec(),
            bounds: self.bounds,
            obstruction: self.obstruction.clone(),
            homology: HomologyJson {
                group: self.target_group.clone(),
                coordinates: self.homology_coordinates.clone(),
            },
            stages: self.stages.clone(),
        }
    }

    /// Pretty JSON; identical inputs give byte-identical output.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("certificate serializes")
    }
}

pub fn psi(q: &RelativeCircuitData, a: &SimplicialMap, target: &TargetPair) -> Result<PseudocycleCertificate> {
    run(q, a, target, None)
}

/// As [`psi`], with the orientation of `Q` supplied instead of chosen.
pub fn psi_with_orientation(
    q: &RelativeCircuitData,
    a: &SimplicialMap,
    target: &TargetPair,
    orientation: &OrientationAssignment,
) -> Result<PseudocycleCertificate> {
    run(q, a, target, Some(orientation))
}

pub(crate) fn recompute(json: &PseudocycleJson) -> Result<PseudocycleCertificate> {
    let q = RelativeCircuitData::from_json(&json.circuit)?;
    let target = TargetPair::from_json(&json.target)?;
    let a = SimplicialMap::new(q.complex.clone(), target.complex.clone(), json.map.to_map()?)?;
    let orientation = OrientationAssignment {
        signs: json.orientation.iter().cloned().collect(),
        orientable: true,
        witness: Vec::new(),
    };
    psi_with_orientation(&q, &a, &target, &orientation)
}

/// The map with its target widened to `X`, checked against the pair.
pub(crate) fn map_stage(
    source: &SimplicialComplex,
    carried: &SimplicialComplex,
    a: &SimplicialMap,
    target: &TargetPair,
) -> Result<(Verdict, Option<SimplicialMap>)> {
    let mut v = Verdict::default();
    let src = first_difference(
        &OpenSimplexSet::from_complex(a.source()),
        &OpenSimplexSet::from_complex(source),
    );
    let defined = src.is_none();
    v.check("source_is_domain", src, "the map is defined on exactly the domain complex");
    if !defined {
        v.push("lands_in_target", Status::Unknown, Vec::new(), "not evaluated");
        return Ok((v, None));
    }
    let map = match a.with_target(&target.complex) {
        Ok(m) => m,
        Err(Error::NotSimplicial { source_simplex }) => {
            v.check("lands_in_target", Some(source_simplex), "image is not a simplex of X");
            return Ok((v, None));
        }
        Err(e) => return Err(e),
    };
    v.check("lands_in_target", None, "every image is a simplex of X");
    let stray = carried.iter().find(|s| !target.sub.contains(&map.image(s))).cloned();
    v.check("carried_into_subcomplex", stray, "the boundary part is carried into A");
    Ok((v, Some(map)))
}

fn orientation_stage(
    q: &RelativeCircuitData,
    given: Option<&OrientationAssignment>,
) -> Result<(Verdict, OrientationAssignment, Option<IntChain>)> {
    let orientation = given.cloned().unwrap_or_else(|| orient_circuit(q));
    let mut v = Verdict::default();
    if !orientation.orientable {
        v.push("orientable", Status::Fail, orientation.witness.clone(), "no coherent orientation");
        return Ok((v, orientation, None));
    }
    v.check("orientable", None, "top simplices coherently oriented");
    match fundamental_class(q, &orientation) {
        Ok(z) => {
            v.check("relative_cycle", None, "the boundary of the fundamental chain lies in δQ");
            Ok((v, orientation, Some(z)))
        }
        Err(Error::NotACycle(d)) | Err(Error::Contract(d)) => {
            v.push("relative_cycle", Status::Fail, Vec::new(), d);
            Ok((v, orientation, None))
        }
        Err(e) => Err(e),
    }
}

fn run(
    q: &RelativeCircuitData,
    a: &SimplicialMap,
    target: &TargetPair,
    given: Option<&OrientationAssignment>,
) -> Result<PseudocycleCertificate> {
    check_size(&q.complex)?;
    check_size(&target.complex)?;
    let k = q.k;
    let main_bound = floor_bound(k as isize - 2);
    let boundary_bound = floor_bound(k as isize - 3);
    let mut p = Pipeline::default();

    p.stage("circuit", verify_circuit(q))?;

    let (v, map) = map_stage(&q.complex, &q.boundary, a, target)?;
    p.stage("map_of_pairs", v)?;
    let map = map.expect("map stage passed");

    let input = SigmaInput::Relative(q);
    let s = sigma(input)?;
    let sigma_boundary = s.complex.intersection(&q.boundary);
    let mut v = verify_sigma_complement(input, &s);
    v.check(
        "sigma_dimension",
        first_above(s.complex.iter(), main_bound),
        format!("dim Σ ≤ {main_bound}"),
    );
    v.check(
        "sigma_boundary_dimension",
        first_above(sigma_boundary.iter(), boundary_bound),
        format!("dim Σ ∩ δQ ≤ {boundary_bound}"),
    );
    p.stage("sigma", v)?;

    let (v, orientation, z) = orientation_stage(q, given)?;
    p.stage("orientation", v)?;
    let z = z.expect("orientation stage passed");

    let h = homology(&target.complex, &target.sub)?;
    let e = evaluate(&map, &q.boundary, &z, &h)?;
    let mut v = Verdict::default();
    let cycle = h.check_relative_cycle(&e.chain).err().map(|err| err.to_string());
    match cycle {
        None => v.check("relative_cycle", None, "a_*[Q] is a cycle of (X, A)"),
        Some(d) => v.push("relative_cycle", Status::Fail, Vec::new(), d),
    }
    p.stage("evaluation", v)?;
    let target_group = h
        .summary()
        .into_iter()
        .find(|g| g.degree == k)
        .unwrap_or(GroupSummary {
            degree: k,
            betti: 0,
            torsion: Vec::new(),
        });

    let f = CompactifiedMap::new(
        PuncturedComplex::new(q.complex.clone(), s.complex.clone())?,
        PuncturedComplex::compact(target.complex.clone()),
        map.clone(),
    )?;
    let limit_carrier = limit_set(&f).carrier;
    let (on_boundary, _) = restrict_closed(&f, &q.boundary)?;
    let boundary_limit_carrier = limit_set(&on_boundary).carrier;
    let mut v = Verdict::default();
    v.check(
        "carrier_is_image_of_sigma",
        first_difference(&limit_carrier, &map.image_of_set(s.complex.iter())),
        "L(a|Q∖Σ) = a(Σ)",
    );
    v.check(
        "boundary_carrier_is_image",
        first_difference(&boundary_limit_carrier, &map.image_of_set(sigma_boundary.iter())),
        "L(a|δQ∖Σ) = a(Σ ∩ δQ)",
    );
    p.stage("limit", v)?;

    let bounds = DimensionBounds {
        main: BoundCheck::new(limit_carrier.dim(), main_bound),
        boundary: BoundCheck::new(boundary_limit_carrier.dim(), boundary_bound),
    };
    p.stage("dimension_bounds", bounds.verdict(&limit_carrier, &boundary_limit_carrier))?;

    let obstruction = cw_dimension_bound(input);
    p.stage("obstruction", obstruction_verdict(&obstruction, &GammaTable::standard()))?;

    Ok(PseudocycleCertificate {
        circuit: q.clone(),
        target: target.clone(),
        map,
        k,
        sigma: s,
        orientation,
        fundamental_class: z,
        limit_carrier,
        boundary_limit_carrier,
        bounds,
        obstruction,
        target_group,
        homology_coordinates: e.coordinates,
        stages: p.finish(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::psi::verify_certificate;

    fn disk() -> RelativeCircuitData {
        RelativeCircuitData::new(fixtures::simplex(2), fixtures::boundary_of_simplex(2), 2, None).unwrap()
    }

    #[test]
    fn disk_into_itself() {
        let q = disk();
        let target = TargetPair::new(q.complex.clone(), q.boundary.clone()).unwrap();
        let c = psi(&q, &SimplicialMap::identity(&q.complex), &target).unwrap();
        assert!(c.is_valid());
        assert!(c.sigma.members.is_empty());
        assert_eq!(c.bounds.main, BoundCheck::new(-1, 0));
        assert_eq!(c.bounds.boundary, BoundCheck::new(-1, -1));
        assert_eq!(c.target_group.betti, 1);
        assert_eq!(c.homology_coordinates.free.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1]);
        assert_eq!(c.stages.len(), 8);
    }

    #[test]
    fn wedge_has_vertex_carrier() {
        let w = fixtures::wedge_of_spheres();
        let q = RelativeCircuitData::closed(w.clone(), 2).unwrap();
        let c = psi(&q, &SimplicialMap::identity(&w), &TargetPair::absolute(w)).unwrap();
        assert_eq!(c.bounds.main.limit_dimension, 0);
        assert_eq!(c.bounds.boundary.limit_dimension, -1);
        assert!(c.limit_carrier.iter().all(|s| s.dim() == 0));
        assert_eq!(c.target_group.betti, 2);
    }

    #[test]
    fn json_is_reproducible_and_rechecks() {
        let q = disk();
        let target = TargetPair::new(q.complex.clone(), q.boundary.clone()).unwrap();
        let a = SimplicialMap::identity(&q.complex);
        let first = psi(&q, &a, &target).unwrap().to_json_string();
        let second = psi(&q, &a, &target).unwrap().to_json_string();
        assert_eq!(first, second);
        let stored: serde_json::Value = serde_json::from_str(&first).unwrap();
        let r = verify_certificate(&stored).unwrap();
        assert!(r.reproduced(), "{r:?}");
        assert!(r.leaves > 20);
    }

    #[test]
    fn tampered_certificate_is_caught() {
        let q = disk();
        let target = TargetPair::new(q.complex.clone(), q.boundary.clone()).unwrap();
        let c = psi(&q, &SimplicialMap::identity(&q.complex), &target).unwrap();
        let mut stored = serde_json::to_value(c.to_json()).unwrap();
        stored["bounds"]["main"]["limit_dimension"] = serde_json::json!(5);
        let r = verify_certificate(&stored).unwrap();
        assert_eq!(r.mismatches, vec!["/bounds/main/limit_dimension".to_string()]);
    }

    #[test]
    fn gate_stops_at_the_circuit() {
        let k = fixtures::two_triangles_at_vertex();
        let q = RelativeCircuitData::new(k.clone(), fixtures::two_triangles_boundary(), 2, None).unwrap();
        let err = psi(&q, &SimplicialMap::identity(&k), &TargetPair::absolute(k.clone())).unwrap_err();
        match err {
            Error::StageFailed { stage, completed, .. } => {
                assert_eq!(stage, "circuit");
                assert!(completed.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn boundary_must_land_in_subcomplex() {
        let q = disk();
        let target = TargetPair::absolute(q.complex.clone());
        let target = TargetPair::new(target.complex, SimplicialComplex::closure_of([Simplex::vertex(0)])).unwrap();
        let err = psi(&q, &SimplicialMap::identity(&q.complex), &target).unwrap_err();
        assert!(matches!(err, Error::StageFailed { ref stage, .. } if stage == "map_of_pairs"), "{err}");
    }
}
