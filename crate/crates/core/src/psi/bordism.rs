use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::certificate::{map_stage, SigmaJson};
use super::{
    cw_dimension_bound, first_above, first_difference, floor_bound, obstruction_verdict, psi_with_orientation,
    BoundCheck, DimensionBounds, GammaTable, ObstructionReport, Pipeline, PseudocycleCertificate, StageRecord,
    TargetJson, TargetPair,
};
use crate::circuits::{
    sigma, subdivision_cylinder, verify_nullbordism, verify_sigma_complement, BordismData, BordismJson as DataJson,
    NullbordismKind, RelativeCircuitData, SigmaInput, SigmaSet, Status, Verdict,
};
use crate::complex::{MapJson, OpenSimplexSet, Simplex, SimplicialMap, Vertex};
use crate::error::{Error, Result};
use crate::homology::{evaluate, fundamental_class, homology, orient_circuit, Coordinates, IntChain, OrientationAssignment};
use crate::io::check_size;
use crate::limit::{limit_set, restrict_closed, CompactifiedMap, PuncturedComplex};

/// A relative nullbordism `(R, δR)` of `(Q, P)` with a map `d: R → X`
/// sending the side `closure(δR ∖ Q)` into `A`, certified as a bordism of
/// pseudocycles: limit carriers, their bounds `max(−1, k−1)` and
/// `max(−1, k−2)`, the obstruction report, and the fact that `d_*` of the
/// induced orientation of `Q` vanishes in `H_k(X, A)`.
#[derive(Clone, Debug)]
pub struct BordismCertificate {
    pub bordism: BordismData,
    pub target: TargetPair,
    pub map: SimplicialMap,
    pub k: usize,
    pub sigma: SigmaSet,
    pub orientation: OrientationAssignment,
    /// Coefficients of `∂[R]` on the top simplices of `Q`.
    pub end_signs: BTreeMap<Simplex, i8>,
    pub end_coordinates: Coordinates,
    /// `L(d|R∖Σ)`, which equals `d(Σ)`.
    pub limit_carrier: OpenSimplexSet,
    /// `L(d|side∖Σ)`, which equals `d(Σ ∩ side)`.
    pub side_limit_carrier: OpenSimplexSet,
    pub bounds: DimensionBounds,
    pub obstruction: ObstructionReport,
    pub stages: Vec<StageRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BordismJson {
    pub kind: String,
    pub valid: bool,
    pub k: usize,
    pub bordism: DataJson,
    pub target: TargetJson,
    pub map: MapJson,
    pub orientation: Vec<(Simplex, i8)>,
    pub end_signs: Vec<(Simplex, i8)>,
    pub end_coordinates: Coordinates,
    pub sigma: SigmaJson,
    pub limit_carrier: Vec<Simplex>,
    pub side_limit_carrier: Vec<Simplex>,
    pub bounds: DimensionBounds,
    pub obstruction: ObstructionReport,
    pub stages: Vec<StageRecord>,
}

impl BordismCertificate {
    pub fn is_valid(&self) -> bool {
        self.stages.iter().all(|s| s.status == Status::Pass)
            && self.bounds.holds()
            && self.obstruction.all_vanish
            && self.end_coordinates.is_zero()
    }

    pub fn to_json(&self) -> BordismJson {
        let pairs = |m: &BTreeMap<Simplex, i8>| m.iter().map(|(s, x)| (s.clone(), *x)).collect();
        BordismJson {
            kind: "bordism".into(),
            valid: self.is_valid(),
            k: self.k,
            bordism: self.bordism.to_json(),
            target: self.target.to_json(),
            map: self.map.to_json(),
            orientation: pairs(&self.orientation.signs),
            end_signs: pairs(&self.end_signs),
            end_coordinates: self.end_coordinates.clone(),
            sigma: SigmaJson::new(&self.sigma, &self.bordism.side()),
            limit_carrier: self.limit_carrier.to_vec(),
            side_limit_carrier: self.side_limit_carrier.to_vec(),
            bounds: self.bounds,
            obstruction: self.obstruction.clone(),
            stages: self.stages.clone(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("certificate serializes")
    }
}

pub(crate) fn recompute(json: &BordismJson) -> Result<BordismCertificate> {
    let r = BordismData::from_json(&json.bordism)?;
    let target = TargetPair::from_json(&json.target)?;
    let d = SimplicialMap::new(r.complex.clone(), target.complex.clone(), json.map.to_map()?)?;
    verify_bordism_certificate(&r, &d, &target)
}

/// Orients `R` and reads off `∂[R]` on the top simplices of `Q`. Fails if
/// `R` is not orientable or some coefficient is not `±1`.
pub fn end_boundary_signs(r: &BordismData) -> Result<(OrientationAssignment, IntChain, BTreeMap<Simplex, i8>)> {
    let whole = r.as_circuit();
    let o = orient_circuit(&whole);
    let z = fundamental_class(&whole, &o)?;
    let b = z.boundary()?;
    let mut signs = BTreeMap::new();
    for s in r.circuit.simplices_of_dim(r.k) {
        match b.coefficient(&s) {
            c @ (1 | -1) => {
                signs.insert(s, c as i8);
            }
            c => {
                return Err(Error::NotACycle(format!(
                    "boundary of the bordism's fundamental chain has coefficient {c} on {s}"
                )))
            }
        }
    }
    Ok((o, z, signs))
}

/// The orientation of an end circuit, given in its own labels and embedded
/// in `R` by `embedding`, induced by `∂[R]`; `negate` flips it, as is done
/// for the incoming end.
pub fn induced_end_orientation(
    end_signs: &BTreeMap<Simplex, i8>,
    end: &RelativeCircuitData,
    embedding: &BTreeMap<Vertex, Vertex>,
    negate: bool,
) -> Result<OrientationAssignment> {
    let mut signs = BTreeMap::new();
    for s in end.complex.simplices_of_dim(end.k) {
        let image = Simplex::new(
            s.vertices()
                .iter()
                .map(|v| embedding.get(v).copied().ok_or_else(|| Error::NotFound(Simplex::vertex(*v))))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let sign = *end_signs.get(&image).ok_or(Error::NotFound(image.clone()))?;
        // embedding may reorder vertices; compare orientations of the vertex lists
        let sign = sign * permutation_sign(s.vertices().iter().map(|v| embedding[v]).collect());
        signs.insert(s, if negate { -sign } else { sign });
    }
    Ok(OrientationAssignment {
        signs,
        orientable: true,
        witness: Vec::new(),
    })
}

fn permutation_sign(mut v: Vec<Vertex>) -> i8 {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    sign
}

pub fn verify_bordism_certificate(r: &BordismData, d: &SimplicialMap, target: &TargetPair) -> Result<BordismCertificate> {
    check_size(&r.complex)?;
    check_size(&target.complex)?;
    let k = r.k;
    let main_bound = floor_bound(k as isize - 1);
    let side_bound = floor_bound(k as isize - 2);
    let side = r.side();
    let mut p = Pipeline::default();

    p.stage(
        "bordism",
        verify_nullbordism(r, &r.end_circuit(), NullbordismKind::Relative)?,
    )?;

    let (v, map) = map_stage(&r.complex, &side, d, target)?;
    p.stage("map_of_pairs", v)?;
    let map = map.expect("map stage passed");

    let input = SigmaInput::Bordism(r);
    let s = sigma(input)?;
    let sigma_side = s.complex.intersection(&side);
    let mut v = verify_sigma_complement(input, &s);
    v.check("sigma_dimension", first_above(s.complex.iter(), main_bound), format!("dim Σ ≤ {main_bound}"));
    v.check(
        "sigma_side_dimension",
        first_above(sigma_side.iter(), side_bound),
        format!("dim Σ ∩ side ≤ {side_bound}"),
    );
    p.stage("sigma", v)?;

    let mut v = Verdict::default();
    let oriented = match end_boundary_signs(r) {
        Ok(x) => {
            v.check("end_orientation", None, "∂[R] restricts to ±1 on every top simplex of Q");
            Some(x)
        }
        Err(Error::NonOrientable { witness }) => {
            v.push("end_orientation", Status::Fail, witness, "R is not orientable");
            None
        }
        Err(Error::NotACycle(detail)) | Err(Error::Contract(detail)) => {
            v.push("end_orientation", Status::Fail, Vec::new(), detail);
            None
        }
        Err(e) => return Err(e),
    };
    p.stage("orientation", v)?;
    let (orientation, _, end_signs) = oriented.expect("orientation stage passed");

    let h = homology(&target.complex, &target.sub)?;
    let z_end = IntChain::from_terms(k, end_signs.iter().map(|(s, x)| (s.clone(), *x as i64)))?;
    let e = evaluate(&map.restrict(&r.circuit)?, &r.circuit_boundary, &z_end, &h)?;
    let mut v = Verdict::default();
    if e.coordinates.is_zero() {
        v.check("ends_cancel", None, "d_* of the induced end orientation vanishes in H_k(X, A)");
    } else {
        v.push(
            "ends_cancel",
            Status::Fail,
            Vec::new(),
            format!("d_*∂[R] has coordinates {:?}", e.coordinates),
        );
    }
    p.stage("evaluation", v)?;

    let f = CompactifiedMap::new(
        PuncturedComplex::new(r.complex.clone(), s.complex.clone())?,
        PuncturedComplex::compact(target.complex.clone()),
        map.clone(),
    )?;
    let limit_carrier = limit_set(&f).carrier;
    let (on_side, _) = restrict_closed(&f, &side)?;
    let side_limit_carrier = limit_set(&on_side).carrier;
    let mut v = Verdict::default();
    v.check(
        "carrier_is_image_of_sigma",
        first_difference(&limit_carrier, &map.image_of_set(s.complex.iter())),
        "L(d|R∖Σ) = d(Σ)",
    );
    v.check(
        "side_carrier_is_image",
        first_difference(&side_limit_carrier, &map.image_of_set(sigma_side.iter())),
        "L(d|side∖Σ) = d(Σ ∩ side)",
    );
    p.stage("limit", v)?;

    let bounds = DimensionBounds {
        main: BoundCheck::new(limit_carrier.dim(), main_bound),
        boundary: BoundCheck::new(side_limit_carrier.dim(), side_bound),
    };
    p.stage("dimension_bounds", bounds.verdict(&limit_carrier, &side_limit_carrier))?;

    let obstruction = cw_dimension_bound(input);
    p.stage("obstruction", obstruction_verdict(&obstruction, &GammaTable::standard()))?;

    Ok(BordismCertificate {
        bordism: r.clone(),
        target: target.clone(),
        map,
        k,
        sigma: s,
        orientation,
        end_signs,
        end_coordinates: e.coordinates,
        limit_carrier,
        side_limit_carrier,
        bounds,
        obstruction,
        stages: p.finish(),
    })
}

/// Whether two pseudocycle certificates are joined by a certified bordism
/// and carry the same homology coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub bordism_valid: bool,
    /// The two embedded ends are disjoint and make up `Q`.
    pub ends_cover: bool,
    /// The bordism map restricts to each certificate's map.
    pub maps_compatible: bool,
    pub targets_match: bool,
    /// Each certificate uses the orientation induced by `∂[R]`, the first
    /// one reversed.
    pub orientations_induced: bool,
    pub first_coordinates: Coordinates,
    pub second_coordinates: Coordinates,
    pub coordinates_equal: bool,
    pub holds: bool,
}

pub fn bordism_invariance_check(
    first: &PseudocycleCertificate,
    second: &PseudocycleCertificate,
    bordism: &BordismCertificate,
    first_embedding: &BTreeMap<Vertex, Vertex>,
    second_embedding: &BTreeMap<Vertex, Vertex>,
) -> InvarianceReport {
    let embedded = |c: &PseudocycleCertificate, e: &BTreeMap<Vertex, Vertex>| c.circuit.complex.relabel(e).ok();
    let tops = |k: &crate::complex::SimplicialComplex| -> BTreeSet<Simplex> {
        k.simplices_of_dim(bordism.k).into_iter().collect()
    };
    let ends_cover = match (embedded(first, first_embedding), embedded(second, second_embedding)) {
        (Some(a), Some(b)) => {
            let (ta, tb) = (tops(&a), tops(&b));
            ta.is_disjoint(&tb) && a.union(&b) == bordism.bordism.circuit
        }
        _ => false,
    };
    let compatible = |c: &PseudocycleCertificate, e: &BTreeMap<Vertex, Vertex>| {
        c.map.vertex_map().iter().all(|(v, w)| {
            e.get(v).and_then(|x| bordism.map.apply_vertex(*x)) == Some(*w)
        })
    };
    let maps_compatible = compatible(first, first_embedding) && compatible(second, second_embedding);
    let targets_match = first.target == bordism.target && second.target == bordism.target;
    let induced = |c: &PseudocycleCertificate, e: &BTreeMap<Vertex, Vertex>, negate: bool| {
        induced_end_orientation(&bordism.end_signs, &c.circuit, e, negate)
            .is_ok_and(|o| o.signs == c.orientation.signs)
    };
    let orientations_induced = induced(first, first_embedding, true) && induced(second, second_embedding, false);
    let coordinates_equal = first.homology_coordinates == second.homology_coordinates;
    let bordism_valid = bordism.is_valid();
    InvarianceReport {
        holds: bordism_valid && ends_cover && maps_compatible && targets_match && coordinates_equal,
        bordism_valid,
        ends_cover,
        maps_compatible,
        targets_match,
        orientations_induced,
        first_coordinates: first.homology_coordinates.clone(),
        second_coordinates: second.homology_coordinates.clone(),
        coordinates_equal,
    }
}

/// A circuit with a map, compared with its barycentric subdivision under a
/// second map, across the subdivision cylinder.
#[derive(Clone, Debug)]
pub struct EndComparison {
    pub first: PseudocycleCertificate,
    pub second: PseudocycleCertificate,
    pub bordism: Option<BordismCertificate>,
    /// Why no bordism certificate exists, when it does not.
    pub bordism_error: Option<String>,
    pub report: Option<InvarianceReport>,
    pub coordinates_equal: bool,
}

impl EndComparison {
    pub fn holds(&self) -> bool {
        self.report.as_ref().is_some_and(|r| r.holds)
    }
}

/// Certifies `(Q, a)` and `(Q′, b)`, where `b` is given on
/// `barycentric_subdivision(Q)`, with the orientations induced by the
/// subdivision cylinder, then tries to join the two maps across it.
pub fn compare_across_subdivision(
    q: &RelativeCircuitData,
    a: &SimplicialMap,
    b: &SimplicialMap,
    target: &TargetPair,
) -> Result<EndComparison> {
    let cyl = subdivision_cylinder(q)?;
    let top_map = cyl.top_from_subdivision(b)?;
    let (_, _, end_signs) = end_boundary_signs(&cyl.bordism)?;
    let identity = |c: &RelativeCircuitData| -> BTreeMap<Vertex, Vertex> {
        c.complex.vertices().into_iter().map(|v| (v, v)).collect()
    };
    let (bottom_embedding, top_embedding) = (identity(&cyl.bottom), identity(&cyl.top));
    let first = psi_with_orientation(
        &cyl.bottom,
        a,
        target,
        &induced_end_orientation(&end_signs, &cyl.bottom, &bottom_embedding, true)?,
    )?;
    let second = psi_with_orientation(
        &cyl.top,
        &top_map,
        target,
        &induced_end_orientation(&end_signs, &cyl.top, &top_embedding, false)?,
    )?;
    let coordinates_equal = first.homology_coordinates == second.homology_coordinates;
    let joined = cyl
        .extend_ends(&first.map, &second.map)
        .and_then(|d| verify_bordism_certificate(&cyl.bordism, &d, target));
    let (bordism, bordism_error) = match joined {
        Ok(c) => (Some(c), None),
        Err(e @ (Error::NotSimplicial { .. } | Error::StageFailed { .. })) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let report = bordism
        .as_ref()
        .map(|c| bordism_invariance_check(&first, &second, c, &bottom_embedding, &top_embedding));
    Ok(EndComparison {
        first,
        second,
        bordism,
        bordism_error,
        report,
        coordinates_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::cylinder;
    use crate::fixtures;
    use crate::psi::{psi, verify_certificate};

    fn circle() -> RelativeCircuitData {
        RelativeCircuitData::closed(fixtures::boundary_of_simplex(2), 1).unwrap()
    }

    #[test]
    fn cylinder_with_projection() {
        let q = circle();
        let c = cylinder(&q).unwrap();
        let target = TargetPair::absolute(q.complex.clone());
        let cert = verify_bordism_certificate(&c.bordism, c.projection(), &target).unwrap();
        assert!(cert.is_valid());
        assert!(cert.end_coordinates.is_zero());
        let a = SimplicialMap::identity(&q.complex);
        let one = psi(&q, &a, &target).unwrap();
        let r = bordism_invariance_check(&one, &one, &cert, &c.bottom_embedding, &c.top_embedding);
        assert!(r.holds, "{r:?}");
        let stored = serde_json::to_value(cert.to_json()).unwrap();
        assert!(verify_certificate(&stored).unwrap().reproduced());
    }

    #[test]
    fn solid_tetrahedron_as_absolute_bordism() {
        let sphere = fixtures::boundary_of_simplex(3);
        let r = BordismData::new(
            fixtures::simplex(3),
            sphere.clone(),
            sphere.clone(),
            crate::complex::SimplicialComplex::new(),
            2,
            None,
        )
        .unwrap();
        let target = TargetPair::absolute(fixtures::simplex(3));
        let cert = verify_bordism_certificate(&r, &SimplicialMap::identity(&r.complex), &target).unwrap();
        assert!(cert.is_valid());
        assert!(cert.bounds.main.holds && cert.bounds.boundary.holds);
    }

    #[test]
    fn subdivision_keeps_coordinates() {
        let q = circle();
        let target = TargetPair::absolute(q.complex.clone());
        let a = SimplicialMap::identity(&q.complex);
        let sd = crate::complex::barycentric_subdivision(&q.complex);
        let vm = sd.barycenter_map().iter().map(|(v, t)| (*v, t.vertices()[0])).collect();
        let b = SimplicialMap::new(sd.complex.clone(), q.complex.clone(), vm).unwrap();
        let cmp = compare_across_subdivision(&q, &a, &b, &target).unwrap();
        assert!(cmp.coordinates_equal);
        assert!(cmp.holds(), "{:?}", cmp.report);
        assert!(cmp.report.unwrap().orientations_induced);
    }

    #[test]
    fn degree_two_has_no_bordism() {
        let q = circle();
        let target = TargetPair::absolute(q.complex.clone());
        let a = SimplicialMap::identity(&q.complex);
        let cmp = compare_across_subdivision(&q, &a, &fixtures::degree_two_wrap(), &target).unwrap();
        assert!(!cmp.coordinates_equal);
        assert!(cmp.bordism.is_none());
        assert!(!cmp.holds());
        assert_eq!(cmp.first.homology_coordinates.free[0].abs(), 1);
        assert_eq!(cmp.second.homology_coordinates.free[0].abs(), 2);
    }

    #[test]
    fn corrupted_singular_set_fails_first_stage() {
        let q = circle();
        let c = cylinder(&q).unwrap();
        let mut r = c.bordism.clone();
        // a singular edge crossing the interior violates the codimension bound
        r.singular = crate::complex::SimplicialComplex::closure_of(
            r.complex.simplices_of_dim(1).into_iter().take(1),
        );
        let target = TargetPair::absolute(q.complex.clone());
        match verify_bordism_certificate(&r, c.projection(), &target) {
            Err(Error::StageFailed { stage, completed, .. }) => {
                assert_eq!(stage, "bordism");
                assert!(completed.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
