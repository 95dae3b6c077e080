use serde::Serialize;

use super::{Coordinates, HomologyResult, IntChain};
use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};

/// The pushforward of a fundamental class and its homology coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    /// `a_*(z)` with simplices of the target subcomplex dropped.
    pub chain: IntChain,
    pub coordinates: Coordinates,
}

/// `e[Q, a] = a_*[Q]` in `H_k(X, A)`. `boundary` is the subcomplex of the
/// source carrying `∂z`; it must be mapped into `A`.
pub fn evaluate(
    a: &SimplicialMap,
    boundary: &SimplicialComplex,
    z: &IntChain,
    target: &HomologyResult,
) -> Result<Evaluation> {
    a.check_map_of_pairs(boundary, target.sub())?;
    if let Some(s) = a.target().iter().find(|s| !target.complex().contains(s)) {
        return Err(Error::NotSubcomplex {
            context: "map target is not inside the homology complex".into(),
            witness: s.clone(),
        });
    }
    let b = z.boundary()?;
    if let Some(s) = b.support().find(|s| !boundary.contains(s)) {
        return Err(Error::NotACycle(format!(
            "boundary of the evaluated chain meets {s} outside the designated boundary"
        )));
    }
    let pushed = z.pushforward(a)?.modulo(target.sub());
    let coordinates = target.coordinates(&pushed)?;
    Ok(Evaluation {
        chain: pushed,
        coordinates,
    })
}

/// Coordinates (in `target`) of the images of the generators of `source`
/// in the given degree: the matrix of `f_*`, one entry per source generator.
pub fn induced_map(
    f: &SimplicialMap,
    source: &HomologyResult,
    target: &HomologyResult,
    degree: usize,
) -> Result<Vec<Coordinates>> {
    if !source.accepts_map_to(f, target) {
        return Err(Error::Contract(
            "induced map needs a map of pairs between the homology complexes".into(),
        ));
    }
    let Some(g) = source.group(degree) else {
        return Ok(Vec::new());
    };
    g.generators
        .iter()
        .map(|z| target.coordinates(&z.pushforward(f)?.modulo(target.sub())))
        .collect()
}

/// Image of a relative class under the connecting map `H_k(X,A) → H_{k−1}(A)`:
/// coordinates of `∂z` in `boundary_target`, the absolute homology of `A`.
pub fn connecting_image(
    z: &IntChain,
    relative: &HomologyResult,
    boundary_target: &HomologyResult,
) -> Result<Coordinates> {
    relative.check_relative_cycle(z)?;
    if boundary_target.complex() != relative.sub() || !boundary_target.sub().is_empty() {
        return Err(Error::Contract(
            "connecting map needs the absolute homology of the subcomplex".into(),
        ));
    }
    if z.degree == 0 {
        return Ok(Coordinates::default());
    }
    let b = z.modulo(relative.sub()).boundary()?;
    boundary_target.coordinates(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::RelativeCircuitData;
    use crate::fixtures;
    use crate::homology::{fundamental_class, homology, orient_circuit};

    #[test]
    fn identity_and_constant() {
        let k = fixtures::boundary_of_simplex(3);
        let empty = SimplicialComplex::new();
        let q = RelativeCircuitData::new(k.clone(), empty.clone(), 2, Some(empty.clone())).unwrap();
        let z = fundamental_class(&q, &orient_circuit(&q)).unwrap();
        let h = homology(&k, &empty).unwrap();
        let e = evaluate(&SimplicialMap::identity(&k), &empty, &z, &h).unwrap();
        assert_eq!(e.coordinates.free.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1]);

        let pt = fixtures::point();
        let c = SimplicialMap::constant(&k, &pt, 0).unwrap();
        let hp = homology(&pt, &empty).unwrap();
        let e = evaluate(&c, &empty, &z, &hp).unwrap();
        assert!(e.chain.is_zero());
        assert!(e.coordinates.is_zero());
    }

    #[test]
    fn degree_two_wrap() {
        let wrap = fixtures::degree_two_wrap();
        let empty = SimplicialComplex::new();
        let q = RelativeCircuitData::new(wrap.source().clone(), empty.clone(), 1, Some(empty.clone())).unwrap();
        let z = fundamental_class(&q, &orient_circuit(&q)).unwrap();
        let h = homology(wrap.target(), &empty).unwrap();
        let e = evaluate(&wrap, &empty, &z, &h).unwrap();
        assert_eq!(e.coordinates.free.len(), 1);
        assert_eq!(e.coordinates.free[0].abs(), 2);
    }

    #[test]
    fn connecting_map_of_disk() {
        let d = fixtures::simplex(2);
        let s = fixtures::boundary_of_simplex(2);
        let rel = homology(&d, &s).unwrap();
        let abs = homology(&s, &SimplicialComplex::new()).unwrap();
        let z = &rel.group(2).unwrap().generators[0];
        let c = connecting_image(z, &rel, &abs).unwrap();
        assert_eq!(c.free.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1]);
    }
}
