use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{BordismData, RelativeCircuitData, Status, Verdict};
use crate::complex::{OpenSimplexSet, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::recognition::{classify_all, region_is_pl_manifold, PointClass, RegionVerdict};

/// The smallest subcomplex containing the non-manifold simplices of the
/// complex (as a `k`-complex), those of the boundary (as a
/// `(k−1)`-complex), manifold-boundary simplices outside the boundary, and
/// boundary simplices that are interior manifold points.
pub fn default_singular_set(
    complex: &SimplicialComplex,
    boundary: &SimplicialComplex,
    k: usize,
) -> SimplicialComplex {
    let report = classify_all(complex, k);
    let mut bad: Vec<Simplex> = report.non_manifold_subcomplex.iter().cloned().collect();
    if k >= 1 && !boundary.is_empty() {
        bad.extend(classify_all(boundary, k - 1).non_manifold_subcomplex.iter().cloned());
    }
    for (s, c) in &report.classification {
        let misplaced = match c {
            PointClass::BoundaryManifold => !boundary.contains(s),
            PointClass::InteriorManifold => boundary.contains(s),
            _ => false,
        };
        if misplaced {
            bad.push(s.clone());
        }
    }
    SimplicialComplex::closure_of(bad)
}

fn first_of(set: impl IntoIterator<Item = Simplex>) -> Option<Simplex> {
    set.into_iter().min_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)))
}

/// Checks the defining conditions of a relative `k`-circuit:
///
/// * `singular_dimension`: `dim S ≤ k − 2`;
/// * `purity`: every maximal simplex has dimension `k`;
/// * `manifold_part`: `|Q ∖ S|` is a PL `k`-manifold;
/// * `boundary_match`: its manifold boundary is exactly `δQ ∖ S`;
/// * `boundary.*`: `(δQ, ∅)` with singular set `S ∩ δQ` is a closed
///   `(k−1)`-circuit, checked recursively.
pub fn verify_circuit(q: &RelativeCircuitData) -> Verdict {
    let mut v = Verdict::default();
    let k = q.k as isize;

    let high = first_of(q.singular.iter().filter(|s| s.dim() as isize > k - 2).cloned());
    v.check(
        "singular_dimension",
        high,
        format!("singular set has dimension {}, at most {} allowed", q.singular.dim(), k - 2),
    );

    let impure = first_of(q.complex.maximal_simplices().into_iter().filter(|s| s.dim() != q.k));
    v.check("purity", impure, format!("maximal simplices must have dimension {k}"));

    let region = q.complex.minus(&q.singular);
    let report = region_is_pl_manifold(&region, q.k);
    match &report.verdict {
        RegionVerdict::Yes => v.check("manifold_part", None, "complement of the singular set is a manifold"),
        RegionVerdict::No { witness } => v.check(
            "manifold_part",
            Some(witness.clone()),
            "point outside the singular set without a manifold neighborhood",
        ),
        RegionVerdict::Unknown { witness } => v.push(
            "manifold_part",
            Status::Unknown,
            vec![witness.clone()],
            "link of dimension three or more could not be recognized",
        ),
    }

    match &report.verdict {
        RegionVerdict::No { .. } => v.push(
            "boundary_match",
            Status::Unknown,
            Vec::new(),
            "not evaluated: the manifold part already fails",
        ),
        verdict => {
            let expected: BTreeSet<Simplex> = q.boundary.minus(&q.singular).members().clone();
            let diff = first_of(expected.symmetric_difference(&report.boundary).cloned());
            let detail = "manifold boundary of the complement must equal the circuit boundary outside the singular set";
            match (diff, verdict) {
                (Some(w), RegionVerdict::Unknown { .. }) => {
                    v.push("boundary_match", Status::Unknown, vec![w], detail)
                }
                (diff, _) => v.check("boundary_match", diff, detail),
            }
        }
    }

    if q.boundary.is_empty() {
        v.check("boundary_circuit", None, "closed circuit");
    } else if q.k == 0 || q.boundary.dim() != k - 1 {
        let w = first_of(
            q.boundary
                .maximal_simplices()
                .into_iter()
                .filter(|s| s.dim() as isize != k - 1),
        );
        v.check(
            "boundary_circuit",
            w.or_else(|| q.boundary.iter().next().cloned()),
            format!("boundary must have dimension {}", k - 1),
        );
    } else {
        let sub = RelativeCircuitData {
            complex: q.boundary.clone(),
            boundary: SimplicialComplex::new(),
            k: q.k - 1,
            singular: q.singular.intersection(&q.boundary),
        };
        v.absorb("boundary", verify_circuit(&sub));
    }
    v
}

/// `(δQ, ∅)` with singular set `S ∩ δQ`, a closed `(k−1)`-circuit.
/// Refuses circuits that fail verification.
pub fn boundary_circuit(q: &RelativeCircuitData) -> Result<RelativeCircuitData> {
    if q.k == 0 {
        return Err(Error::Contract("a 0-circuit has no boundary circuit".into()));
    }
    let verdict = verify_circuit(q);
    if let Some(c) = verdict.first_failure() {
        return Err(Error::Contract(format!(
            "boundary circuit of an invalid circuit: {} fails ({})",
            c.name, c.detail
        )));
    }
    Ok(RelativeCircuitData {
        complex: q.boundary.clone(),
        boundary: SimplicialComplex::new(),
        k: q.k - 1,
        singular: q.singular.intersection(&q.boundary),
    })
}

/// Absolute: `δR = Q` for a closed `Q`. Relative: `δR = Q ∪ side` with
/// `side ∩ Q = δQ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NullbordismKind {
    Absolute,
    Relative,
}

/// Checks that `r` is a nullbordism of `q`. `q` must be the circuit
/// designated in `r`; everything else is reported as conditions:
/// `bordism.*` and `circuit.*` (both circuits valid), `circuit_in_boundary`,
/// `singular_restriction` (`S(R) ∩ Q = S(Q)`),
/// `boundary_singular_restriction` (`S(R) ∩ δQ = S(Q) ∩ δQ`), and the
/// kind-specific `boundary_is_circuit` or `side_meets_circuit_in_boundary`.
pub fn verify_nullbordism(
    r: &BordismData,
    q: &RelativeCircuitData,
    kind: NullbordismKind,
) -> Result<Verdict> {
    for (mine, theirs, what) in [
        (&q.complex, &r.circuit, "circuit"),
        (&q.boundary, &r.circuit_boundary, "circuit boundary"),
    ] {
        if mine != theirs {
            let w = first_of(
                mine.simplex_set()
                    .symmetric_difference(theirs.simplex_set())
                    .cloned(),
            )
            .expect("different sets differ somewhere");
            return Err(Error::NotSubcomplex {
                context: format!("{what} is not the one designated in the bordism"),
                witness: w,
            });
        }
    }
    if q.k != r.k {
        return Err(Error::DimensionMismatch(format!(
            "bordism for {}-circuits given a {}-circuit",
            r.k, q.k
        )));
    }

    let mut v = Verdict::default();
    v.absorb("bordism", verify_circuit(&r.as_circuit()));
    v.absorb("circuit", verify_circuit(q));

    let outside = first_of(q.complex.iter().filter(|s| !r.boundary.contains(s)).cloned());
    v.check("circuit_in_boundary", outside, "circuit must lie in the bordism boundary");

    let restricted = r.singular.intersection(&q.complex);
    let w = first_of(
        restricted
            .simplex_set()
            .symmetric_difference(q.singular.simplex_set())
            .cloned(),
    );
    v.check("singular_restriction", w, "bordism singular set must restrict to the circuit's");

    let on_boundary = r.singular.intersection(&q.boundary);
    let expected = q.singular.intersection(&q.boundary);
    let w = first_of(
        on_boundary
            .simplex_set()
            .symmetric_difference(expected.simplex_set())
            .cloned(),
    );
    v.check(
        "boundary_singular_restriction",
        w,
        "bordism singular set must restrict to the circuit's on the circuit boundary",
    );

    match kind {
        NullbordismKind::Absolute => {
            let w = first_of(
                r.boundary
                    .simplex_set()
                    .symmetric_difference(q.complex.simplex_set())
                    .cloned(),
            );
            v.check("boundary_is_circuit", w, "bordism boundary must equal the circuit");
        }
        NullbordismKind::Relative => {
            let side = r.side();
            let meet = side.intersection(&q.complex);
            let w = first_of(
                meet.simplex_set()
                    .symmetric_difference(q.boundary.simplex_set())
                    .cloned(),
            );
            v.check(
                "side_meets_circuit_in_boundary",
                w,
                "rest of the bordism boundary must meet the circuit in its boundary",
            );
        }
    }
    Ok(v)
}

/// Simplices of `set` that are faces of some simplex of `host` outside it.
pub(crate) fn frontier(set: &SimplicialComplex, host: &SimplicialComplex) -> OpenSimplexSet {
    host.iter()
        .filter(|s| !set.contains(s))
        .flat_map(|s| s.faces())
        .filter(|f| set.contains(f))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::cylinder;
    use crate::fixtures;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn sphere_and_disk_pass() {
        let sphere = RelativeCircuitData::closed(fixtures::boundary_of_simplex(3), 2).unwrap();
        assert!(verify_circuit(&sphere).is_valid());
        let disk = RelativeCircuitData::new(
            fixtures::simplex(2),
            fixtures::boundary_of_simplex(2),
            2,
            None,
        )
        .unwrap();
        assert!(verify_circuit(&disk).is_valid());
        assert!(disk.singular.is_empty());
    }

    #[test]
    fn wedge_is_a_circuit() {
        let q = RelativeCircuitData::closed(fixtures::wedge_of_spheres(), 2).unwrap();
        assert!(verify_circuit(&q).is_valid(), "{:?}", verify_circuit(&q));
    }

    #[test]
    fn two_triangles_fail_on_boundary() {
        let q = RelativeCircuitData::new(
            fixtures::two_triangles_at_vertex(),
            fixtures::two_triangles_boundary(),
            2,
            None,
        )
        .unwrap();
        assert_eq!(q.singular.maximal_simplices(), vec![s(&[0])]);
        let v = verify_circuit(&q);
        let c = v.first_failure().unwrap();
        assert_eq!(c.name, "boundary.singular_dimension");
        assert_eq!(c.witness, vec![s(&[0])]);
    }

    #[test]
    fn dangling_edge_is_impure() {
        let q = RelativeCircuitData::closed(fixtures::triangle_with_dangling_edge(), 2).unwrap();
        let v = verify_circuit(&q);
        assert_eq!(v.condition("purity").unwrap().witness, vec![s(&[2, 3])]);
    }

    #[test]
    fn three_triangles_on_an_edge() {
        let k = fixtures::three_triangles_on_edge();
        let q = RelativeCircuitData::new(k.clone(), SimplicialComplex::new(), 2, Some(SimplicialComplex::new())).unwrap();
        assert_eq!(verify_circuit(&q).status(), Status::Fail);
        // the default singular set contains the shared edge, too big
        let q = RelativeCircuitData::closed(k, 2).unwrap();
        assert_eq!(
            verify_circuit(&q).first_failure().unwrap().name,
            "singular_dimension"
        );
    }

    #[test]
    fn boundary_circuit_of_disk() {
        let disk = RelativeCircuitData::new(
            fixtures::simplex(2),
            fixtures::boundary_of_simplex(2),
            2,
            None,
        )
        .unwrap();
        let b = boundary_circuit(&disk).unwrap();
        assert_eq!(b.complex, fixtures::boundary_of_simplex(2));
        assert!(b.is_closed());
        assert!(verify_circuit(&b).is_valid());
        let closed = RelativeCircuitData::closed(fixtures::boundary_of_simplex(3), 2).unwrap();
        assert!(boundary_circuit(&closed).unwrap().complex.is_empty());
    }

    #[test]
    fn cone_is_an_absolute_nullbordism() {
        let q = RelativeCircuitData::closed(fixtures::boundary_of_simplex(2), 1).unwrap();
        let r = BordismData::new(
            fixtures::simplex(2),
            fixtures::boundary_of_simplex(2),
            q.complex.clone(),
            SimplicialComplex::new(),
            1,
            None,
        )
        .unwrap();
        let v = verify_nullbordism(&r, &q, NullbordismKind::Absolute).unwrap();
        assert!(v.is_valid(), "{v:?}");
    }

    #[test]
    fn mislabeled_circuit_is_reported() {
        // the whole disk is named as the circuit inside a 3-simplex's boundary
        let q = RelativeCircuitData::new(
            fixtures::simplex(2),
            fixtures::boundary_of_simplex(2),
            2,
            None,
        )
        .unwrap();
        let r = BordismData::new(
            fixtures::simplex(3),
            fixtures::boundary_of_simplex(3),
            q.complex.clone(),
            q.boundary.clone(),
            2,
            None,
        )
        .unwrap();
        let v = verify_nullbordism(&r, &q, NullbordismKind::Absolute).unwrap();
        assert_eq!(v.condition("boundary_is_circuit").unwrap().status, Status::Fail);
        assert!(verify_nullbordism(&r, &q, NullbordismKind::Relative).unwrap().is_valid());
    }

    #[test]
    fn cylinder_is_relative_nullbordism_of_its_ends() {
        let q = RelativeCircuitData::new(fixtures::path(2), fixtures::path(2).skeleton(0).intersection(
            &SimplicialComplex::from_maximal([vec![0], vec![2]]).unwrap()), 1, None).unwrap();
        let c = cylinder(&q).unwrap();
        let ends = c.bordism.end_circuit();
        let v = verify_nullbordism(&c.bordism, &ends, NullbordismKind::Relative).unwrap();
        assert!(v.is_valid(), "{v:?}");
    }

    #[test]
    fn frontier_of_edge_in_triangle() {
        let t = fixtures::simplex(2);
        let e = SimplicialComplex::from_maximal([vec![0, 1]]).unwrap();
        assert_eq!(frontier(&e, &t).len(), 3);
    }
}
