use std::collections::{BTreeMap, BTreeSet};

use super::{verify_circuit, RelativeCircuitData, Verdict};
use crate::complex::{barycentric_subdivision, Simplex, SimplicialComplex, SimplicialMap, Vertex};
use crate::error::{Error, Result};
use crate::homology::{fundamental_class, orient_circuit, IntChain};

/// Gluing stops subdividing after this many rounds.
const MAX_SUBDIVISIONS: usize = 3;

/// Two circuits glued along boundary subcomplexes.
#[derive(Clone, Debug)]
pub struct GlueResult {
    pub circuit: RelativeCircuitData,
    pub verdict: Verdict,
    /// The inputs after any subdivision needed to glue them simplicially.
    pub left_source: RelativeCircuitData,
    pub right_source: RelativeCircuitData,
    /// Vertex maps of the (subdivided) inputs into the result.
    pub left_map: BTreeMap<Vertex, Vertex>,
    pub right_map: BTreeMap<Vertex, Vertex>,
    /// The identified subcomplex, in the result's labels.
    pub seam: SimplicialComplex,
    pub subdivisions: usize,
    /// `[A] ± [B]` has boundary in the new boundary, with the sign chosen by
    /// `reverse`.
    pub orientation_consistent: bool,
}

/// A circuit with two of its boundary subcomplexes identified.
#[derive(Clone, Debug)]
pub struct SelfGlueResult {
    pub circuit: RelativeCircuitData,
    pub verdict: Verdict,
    pub source: RelativeCircuitData,
    pub quotient_map: BTreeMap<Vertex, Vertex>,
    pub seam: SimplicialComplex,
    pub subdivisions: usize,
    pub orientation_consistent: bool,
}

fn full_subcomplex(k: &SimplicialComplex, vertices: &BTreeSet<Vertex>) -> SimplicialComplex {
    SimplicialComplex::closure_of(
        k.iter()
            .filter(|s| s.vertices().iter().all(|v| vertices.contains(v)))
            .cloned(),
    )
}

fn image(s: &Simplex, map: &BTreeMap<Vertex, Vertex>) -> Simplex {
    Simplex::spanned_by(s.vertices().iter().map(|v| map.get(v).copied().unwrap_or(*v))).expect("nonempty")
}

/// Checks `iso` carries `e` onto `f` simplex-for-simplex.
fn check_iso(e: &SimplicialComplex, f: &SimplicialComplex, iso: &BTreeMap<Vertex, Vertex>) -> Result<()> {
    let values: BTreeSet<Vertex> = iso.values().copied().collect();
    if values.len() != iso.len() {
        return Err(Error::MalformedInput("gluing map is not injective".into()));
    }
    for s in e.iter() {
        let t = image(s, iso);
        if !f.contains(&t) {
            return Err(Error::NotSimplicial { source_simplex: s.clone() });
        }
    }
    if e.len() != f.len() {
        let inv: BTreeMap<Vertex, Vertex> = iso.iter().map(|(a, b)| (*b, *a)).collect();
        let w = f.iter().find(|t| !e.contains(&image(t, &inv))).expect("sizes differ");
        return Err(Error::NotSubcomplex {
            context: "gluing map is not onto the target subcomplex".into(),
            witness: w.clone(),
        });
    }
    Ok(())
}

fn subdivide(q: &RelativeCircuitData) -> (RelativeCircuitData, crate::complex::Subdivision) {
    let sd = barycentric_subdivision(&q.complex);
    let out = RelativeCircuitData {
        complex: sd.complex.clone(),
        boundary: sd.restrict(&q.boundary),
        k: q.k,
        singular: sd.restrict(&q.singular),
    };
    (out, sd)
}

fn pushforward(z: &IntChain, map: &BTreeMap<Vertex, Vertex>, target: &SimplicialComplex, source: &SimplicialComplex) -> Result<IntChain> {
    let f = SimplicialMap::new(source.clone(), target.clone(), map.clone())?;
    z.pushforward(&f)
}

/// Glues `a` and `b` by identifying the full subcomplex of `δA` on the
/// domain of `iso` with the full subcomplex of `δB` on its range. When the
/// naive identification would merge simplices outside the seam, both sides
/// are barycentrically subdivided (at most a few times) and `iso` is
/// extended over the barycenters.
pub fn glue(
    a: &RelativeCircuitData,
    b: &RelativeCircuitData,
    iso: &BTreeMap<Vertex, Vertex>,
    reverse: bool,
) -> Result<GlueResult> {
    if a.k != b.k {
        return Err(Error::DimensionMismatch(format!(
            "gluing a {}-circuit to a {}-circuit",
            a.k, b.k
        )));
    }
    let dom: BTreeSet<Vertex> = iso.keys().copied().collect();
    let rng: BTreeSet<Vertex> = iso.values().copied().collect();
    for (v, side) in dom.iter().map(|v| (v, a)).chain(rng.iter().map(|v| (v, b))) {
        if !side.boundary.contains(&Simplex::vertex(*v)) {
            return Err(Error::NotSubcomplex {
                context: "glued vertices must lie on the boundary".into(),
                witness: Simplex::vertex(*v),
            });
        }
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut iso = iso.clone();
    let mut e = full_subcomplex(&a.boundary, &dom);
    let mut f = full_subcomplex(&b.boundary, &rng);
    check_iso(&e, &f, &iso)?;

    for round in 0..=MAX_SUBDIVISIONS {
        if let Some(r) = try_glue(&a, &b, &e, &f, &iso, reverse, round)? {
            return Ok(r);
        }
        if round == MAX_SUBDIVISIONS {
            break;
        }
        let (a2, sda) = subdivide(&a);
        let (b2, sdb) = subdivide(&b);
        let mut iso2 = BTreeMap::new();
        for s in e.iter() {
            let t = image(s, &iso);
            iso2.insert(
                sda.vertex_of(s).expect("barycenter"),
                sdb.vertex_of(&t).expect("barycenter"),
            );
        }
        e = sda.restrict(&e);
        f = sdb.restrict(&f);
        a = a2;
        b = b2;
        iso = iso2;
    }
    Err(Error::Contract(format!(
        "gluing still identifies simplices outside the seam after {MAX_SUBDIVISIONS} subdivisions"
    )))
}

fn try_glue(
    a: &RelativeCircuitData,
    b: &RelativeCircuitData,
    e: &SimplicialComplex,
    f: &SimplicialComplex,
    iso: &BTreeMap<Vertex, Vertex>,
    reverse: bool,
    round: usize,
) -> Result<Option<GlueResult>> {
    let inverse: BTreeMap<Vertex, Vertex> = iso.iter().map(|(x, y)| (*y, *x)).collect();
    let mut next = a.complex.max_vertex().map_or(0, |v| v + 1);
    let mut right_map = BTreeMap::new();
    for v in b.complex.vertices() {
        let w = match inverse.get(&v) {
            Some(w) => *w,
            None => {
                next += 1;
                next - 1
            }
        };
        right_map.insert(v, w);
    }
    let relabel = |k: &SimplicialComplex| k.relabel(&right_map);
    let b_complex = relabel(&b.complex)?;
    for s in b.complex.iter().filter(|s| !f.contains(s)) {
        if a.complex.contains(&image(s, &right_map)) {
            return Ok(None);
        }
    }
    let seam = e.clone();
    let a_rest = SimplicialComplex::closure(&a.boundary.minus(e));
    let b_rest = relabel(&SimplicialComplex::closure(&b.boundary.minus(f)))?;
    let circuit = RelativeCircuitData::new(
        a.complex.union(&b_complex),
        a_rest.union(&b_rest),
        a.k,
        Some(a.singular.union(&relabel(&b.singular)?)),
    )?;
    let verdict = verify_circuit(&circuit);
    let left_map: BTreeMap<Vertex, Vertex> = a.complex.vertices().into_iter().map(|v| (v, v)).collect();

    let orientation_consistent = (|| -> Result<bool> {
        let (oa, ob) = (orient_circuit(a), orient_circuit(b));
        let (Ok(za), Ok(zb)) = (fundamental_class(a, &oa), fundamental_class(b, &ob)) else {
            return Ok(false);
        };
        let za = pushforward(&za, &left_map, &circuit.complex, &a.complex)?;
        let zb = pushforward(&zb, &right_map, &circuit.complex, &b.complex)?;
        let z = za.add(&if reverse { zb.neg() } else { zb })?;
        Ok(z.boundary()?.is_carried_by(&circuit.boundary))
    })()?;

    Ok(Some(GlueResult {
        circuit,
        verdict,
        left_source: a.clone(),
        right_source: b.clone(),
        left_map,
        right_map,
        seam,
        subdivisions: round,
        orientation_consistent,
    }))
}

impl GlueResult {
    /// Cuts the result along the seam: top simplices are grouped into pieces
    /// connected across codimension-one faces off the seam, and the pieces
    /// coming from each input are pulled back through the vertex maps.
    /// Returns the two inputs, or an error if some piece mixes both sides.
    pub fn cut(&self) -> Result<(SimplicialComplex, SimplicialComplex)> {
        let tops = self.circuit.complex.simplices_of_dim(self.circuit.k);
        let pieces = pieces_off_seam(&tops, &self.seam);
        let left_tops: BTreeSet<Simplex> = self
            .left_source
            .complex
            .simplices_of_dim(self.left_source.k)
            .iter()
            .map(|s| image(s, &self.left_map))
            .collect();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for piece in pieces {
            let n_left = piece.iter().filter(|t| left_tops.contains(t)).count();
            if n_left == piece.len() {
                left.extend(piece);
            } else if n_left == 0 {
                right.extend(piece);
            } else {
                return Err(Error::Contract("a piece off the seam mixes both inputs".into()));
            }
        }
        let back = |tops: Vec<Simplex>, map: &BTreeMap<Vertex, Vertex>| -> Result<SimplicialComplex> {
            let inv: BTreeMap<Vertex, Vertex> = map.iter().map(|(x, y)| (*y, *x)).collect();
            SimplicialComplex::closure_of(tops).relabel(&inv)
        };
        Ok((back(left, &self.left_map)?, back(right, &self.right_map)?))
    }
}

fn pieces_off_seam(tops: &[Simplex], seam: &SimplicialComplex) -> Vec<Vec<Simplex>> {
    let mut by_face: BTreeMap<Simplex, Vec<usize>> = BTreeMap::new();
    for (i, t) in tops.iter().enumerate() {
        for f in t.facets() {
            if !seam.contains(&f) {
                by_face.entry(f).or_default().push(i);
            }
        }
    }
    let mut parent: Vec<usize> = (0..tops.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for ts in by_face.values() {
        for w in ts.windows(2) {
            let (ra, rb) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[ra] = rb;
        }
    }
    let mut groups: BTreeMap<usize, Vec<Simplex>> = BTreeMap::new();
    for (i, t) in tops.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(t.clone());
    }
    groups.into_values().collect()
}

/// Identifies the full subcomplex of `δQ` on the domain of `iso` with the
/// full subcomplex on its range; the two must be vertex-disjoint. Each
/// vertex in the range is replaced by its preimage.
pub fn glue_self(q: &RelativeCircuitData, iso: &BTreeMap<Vertex, Vertex>) -> Result<SelfGlueResult> {
    let dom: BTreeSet<Vertex> = iso.keys().copied().collect();
    let rng: BTreeSet<Vertex> = iso.values().copied().collect();
    if let Some(v) = dom.intersection(&rng).next() {
        return Err(Error::MalformedInput(format!(
            "identified subcomplexes share vertex {v}"
        )));
    }
    for v in dom.iter().chain(&rng) {
        if !q.boundary.contains(&Simplex::vertex(*v)) {
            return Err(Error::NotSubcomplex {
                context: "glued vertices must lie on the boundary".into(),
                witness: Simplex::vertex(*v),
            });
        }
    }
    let mut q = q.clone();
    let mut iso = iso.clone();
    let mut e = full_subcomplex(&q.boundary, &dom);
    let mut f = full_subcomplex(&q.boundary, &rng);
    check_iso(&e, &f, &iso)?;

    for round in 0..=MAX_SUBDIVISIONS {
        if let Some(r) = try_glue_self(&q, &e, &f, &iso, round)? {
            return Ok(r);
        }
        if round == MAX_SUBDIVISIONS {
            break;
        }
        let (q2, sd) = subdivide(&q);
        let mut iso2 = BTreeMap::new();
        for s in e.iter() {
            iso2.insert(
                sd.vertex_of(s).expect("barycenter"),
                sd.vertex_of(&image(s, &iso)).expect("barycenter"),
            );
        }
        e = sd.restrict(&e);
        f = sd.restrict(&f);
        q = q2;
        iso = iso2;
    }
    Err(Error::Contract(format!(
        "self-gluing still identifies simplices outside the seam after {MAX_SUBDIVISIONS} subdivisions"
    )))
}

fn try_glue_self(
    q: &RelativeCircuitData,
    e: &SimplicialComplex,
    f: &SimplicialComplex,
    iso: &BTreeMap<Vertex, Vertex>,
    round: usize,
) -> Result<Option<SelfGlueResult>> {
    let inverse: BTreeMap<Vertex, Vertex> = iso.iter().map(|(x, y)| (*y, *x)).collect();
    let quotient_map: BTreeMap<Vertex, Vertex> = q
        .complex
        .vertices()
        .into_iter()
        .map(|v| (v, inverse.get(&v).copied().unwrap_or(v)))
        .collect();
    let mut seen: BTreeMap<Simplex, Simplex> = BTreeMap::new();
    for s in q.complex.iter().filter(|s| !f.contains(s)) {
        let t = image(s, &quotient_map);
        if t.dim() != s.dim() {
            return Ok(None);
        }
        if seen.insert(t, s.clone()).is_some() {
            return Ok(None);
        }
    }
    let push = |k: &SimplicialComplex| SimplicialComplex::closure_of(k.iter().map(|s| image(s, &quotient_map)));
    let complex = push(&q.complex);
    let rest = SimplicialComplex::closure(&q.boundary.minus(&e.union(f)));
    let circuit = RelativeCircuitData::new(complex, push(&rest), q.k, Some(push(&q.singular)))?;
    let verdict = verify_circuit(&circuit);
    let orientation_consistent = (|| -> Result<bool> {
        let o = orient_circuit(q);
        let Ok(z) = fundamental_class(q, &o) else {
            return Ok(false);
        };
        let z = pushforward(&z, &quotient_map, &circuit.complex, &q.complex)?;
        Ok(z.boundary()?.is_carried_by(&circuit.boundary))
    })()?;
    Ok(Some(SelfGlueResult {
        seam: push(e),
        circuit,
        verdict,
        source: q.clone(),
        quotient_map,
        subdivisions: round,
        orientation_consistent,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::cylinder;
    use crate::fixtures;
    use crate::homology::homology;

    fn disk() -> RelativeCircuitData {
        RelativeCircuitData::new(fixtures::simplex(2), fixtures::boundary_of_simplex(2), 2, None).unwrap()
    }

    #[test]
    fn two_disks_make_a_sphere() {
        let iso: BTreeMap<Vertex, Vertex> = [(0, 0), (1, 1), (2, 2)].into();
        let r = glue(&disk(), &disk(), &iso, true).unwrap();
        assert!(r.subdivisions >= 1);
        assert!(r.circuit.is_closed());
        assert!(r.verdict.is_valid(), "{:?}", r.verdict);
        assert!(r.orientation_consistent);
        let h = homology(&r.circuit.complex, &SimplicialComplex::new()).unwrap();
        assert_eq!(h.betti_numbers(), vec![1, 0, 1]);
        let (left, right) = r.cut().unwrap();
        assert_eq!(left, r.left_source.complex);
        assert_eq!(right, r.right_source.complex);
    }

    #[test]
    fn gluing_along_an_edge_needs_no_subdivision() {
        let iso: BTreeMap<Vertex, Vertex> = [(0, 0), (1, 1)].into();
        let r = glue(&disk(), &disk(), &iso, true).unwrap();
        assert_eq!(r.subdivisions, 0);
        assert!(r.verdict.is_valid(), "{:?}", r.verdict);
        assert_eq!(r.circuit.complex.f_vector(), vec![4, 5, 2]);
        assert_eq!(r.circuit.boundary.f_vector(), vec![4, 4]);
    }

    #[test]
    fn bad_iso_is_rejected() {
        let iso: BTreeMap<Vertex, Vertex> = [(0, 0), (1, 0)].into();
        assert!(glue(&disk(), &disk(), &iso, true).is_err());
    }

    #[test]
    fn cylinder_ends_glue_to_torus() {
        let q = RelativeCircuitData::closed(fixtures::polygon(3), 1).unwrap();
        let c = cylinder(&q).unwrap();
        let ann = c.bordism.as_circuit();
        let ann = RelativeCircuitData::new(ann.complex, ann.boundary, 2, None).unwrap();
        let iso: BTreeMap<Vertex, Vertex> = q
            .complex
            .vertices()
            .into_iter()
            .map(|v| (c.bottom_embedding[&v], c.top_embedding[&v]))
            .collect();
        let r = glue_self(&ann, &iso).unwrap();
        assert!(r.circuit.is_closed());
        assert!(r.verdict.is_valid(), "{:?}", r.verdict);
        assert!(r.orientation_consistent);
        assert_eq!(r.circuit.complex.euler_characteristic(), 0);
        let h = homology(&r.circuit.complex, &SimplicialComplex::new()).unwrap();
        assert_eq!(h.betti_numbers(), vec![1, 2, 1]);
    }
}
