use std::collections::BTreeMap;

use circuitsmith::circuits::{boundary_circuit, RelativeCircuitData};
use circuitsmith::complex::{SimplicialComplex, SimplicialMap, Vertex};
use circuitsmith::fixtures;
use circuitsmith::homology::{connecting_image, homology, induced_boundary_orientation, orient_circuit};
use circuitsmith::psi::{psi, psi_with_orientation, verify_certificate, TargetPair};
use circuitsmith::Error;

fn disk(n: usize) -> RelativeCircuitData {
    RelativeCircuitData::new(fixtures::simplex(n), fixtures::boundary_of_simplex(n), n, None).unwrap()
}

#[test]
fn disjoint_union_adds_coordinates() {
    let sphere = fixtures::boundary_of_simplex(3);
    let q = RelativeCircuitData::closed(sphere.clone(), 2).unwrap();
    let (twice, offset) = q.disjoint_union(&q).unwrap();
    let vm: BTreeMap<Vertex, Vertex> = twice
        .complex
        .vertices()
        .into_iter()
        .map(|v| (v, if v >= offset { v - offset } else { v }))
        .collect();
    let a = SimplicialMap::new(twice.complex.clone(), sphere.clone(), vm).unwrap();
    let target = TargetPair::absolute(sphere.clone());
    let one = psi(&q, &SimplicialMap::identity(&sphere), &target).unwrap();
    let two = psi(&twice, &a, &target).unwrap();
    let doubled: Vec<i64> = one.homology_coordinates.free.iter().map(|x| 2 * x).collect();
    assert_eq!(two.homology_coordinates.free, doubled);
}

#[test]
fn boundary_of_the_class_is_the_class_of_the_boundary() {
    for n in [2, 3] {
        let q = disk(n);
        let target = TargetPair::new(q.complex.clone(), q.boundary.clone()).unwrap();
        let a = SimplicialMap::identity(&q.complex);
        let cert = psi(&q, &a, &target).unwrap();

        let relative = homology(&q.complex, &q.boundary).unwrap();
        let absolute = homology(&q.boundary, &SimplicialComplex::new()).unwrap();
        let pushed = connecting_image(&cert.fundamental_class, &relative, &absolute).unwrap();

        let qb = boundary_circuit(&q).unwrap();
        let ob = induced_boundary_orientation(&q, &orient_circuit(&q)).unwrap();
        let on_boundary = psi_with_orientation(
            &qb,
            &SimplicialMap::identity(&qb.complex),
            &TargetPair::absolute(q.boundary.clone()),
            &ob,
        )
        .unwrap();
        assert_eq!(pushed, on_boundary.homology_coordinates, "dimension {n}");
    }
}

#[test]
fn torus_certificate_rechecks() {
    let t = fixtures::torus();
    let q = RelativeCircuitData::closed(t.clone(), 2).unwrap();
    let cert = psi(&q, &SimplicialMap::identity(&t), &TargetPair::absolute(t)).unwrap();
    assert!(cert.is_valid());
    assert_eq!(cert.target_group.betti, 1);
    let r = verify_certificate(&serde_json::to_value(cert.to_json()).unwrap()).unwrap();
    assert!(r.reproduced(), "{r:?}");
}

#[test]
fn non_orientable_circuit_stops_at_orientation() {
    let p = fixtures::projective_plane();
    let q = RelativeCircuitData::closed(p.clone(), 2).unwrap();
    match psi(&q, &SimplicialMap::identity(&p), &TargetPair::absolute(p)).unwrap_err() {
        Error::StageFailed { stage, completed, .. } => {
            assert_eq!(stage, "orientation");
            assert_eq!(completed, vec!["circuit", "map_of_pairs", "sigma"]);
        }
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn constant_map_has_zero_coordinates() {
    let sphere = fixtures::boundary_of_simplex(3);
    let q = RelativeCircuitData::closed(sphere.clone(), 2).unwrap();
    let a = SimplicialMap::constant(&sphere, &sphere, 0).unwrap();
    let cert = psi(&q, &a, &TargetPair::absolute(sphere)).unwrap();
    assert!(cert.homology_coordinates.is_zero());
}
