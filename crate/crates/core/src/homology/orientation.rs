use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::IntChain;
use crate::circuits::RelativeCircuitData;
use crate::complex::Simplex;
use crate::error::{Error, Result};

/// A sign per top simplex. `+1` means the canonical (increasing vertex)
/// orientation. When propagation conflicts, `orientable` is false and
/// `witness` lists a closed walk of top simplices along which the signs
/// cannot be made consistent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientationAssignment {
    pub signs: BTreeMap<Simplex, i8>,
    pub orientable: bool,
    pub witness: Vec<Simplex>,
}

impl OrientationAssignment {
    pub fn sign(&self, s: &Simplex) -> Option<i8> {
        self.signs.get(s).copied()
    }

    /// The same assignment with every sign flipped.
    pub fn reversed(&self) -> OrientationAssignment {
        OrientationAssignment {
            signs: self.signs.iter().map(|(s, x)| (s.clone(), -x)).collect(),
            orientable: self.orientable,
            witness: self.witness.clone(),
        }
    }

    /// The signed sum of the top simplices.
    pub fn chain(&self, degree: usize) -> IntChain {
        IntChain::from_terms(degree, self.signs.iter().map(|(s, x)| (s.clone(), *x as i64)))
            .expect("signs are ±1 on simplices of one degree")
    }
}

/// Propagates co-orientations across codimension-one faces shared by
/// exactly two of `tops` and accepted by `passable`. Each propagation
/// component is rooted at its smallest simplex, which gets `+1`.
///
/// Two top simplices `σ ⊃ F ⊂ τ` with `F` obtained by deleting vertex
/// position `i` of `σ` and `j` of `τ` are coherent when
/// `ε_σ (−1)^i + ε_τ (−1)^j = 0`.
pub fn coherent_orientation(
    tops: &[Simplex],
    passable: &dyn Fn(&Simplex) -> bool,
) -> OrientationAssignment {
    let mut incidences: BTreeMap<Simplex, Vec<(usize, usize)>> = BTreeMap::new();
    for (t, s) in tops.iter().enumerate() {
        for (i, f) in s.facets().into_iter().enumerate() {
            incidences.entry(f).or_default().push((t, i));
        }
    }
    // adjacency: (neighbor, relative sign)
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); tops.len()];
    for (f, inc) in &incidences {
        if inc.len() != 2 || !passable(f) {
            continue;
        }
        let ((a, i), (b, j)) = (inc[0], inc[1]);
        let rel: i8 = if (i + j) % 2 == 0 { -1 } else { 1 };
        adj[a].push((b, rel));
        adj[b].push((a, rel));
    }

    let mut sign: Vec<i8> = vec![0; tops.len()];
    let mut parent: Vec<Option<usize>> = vec![None; tops.len()];
    let mut order: Vec<usize> = (0..tops.len()).collect();
    order.sort_by(|a, b| tops[*a].cmp(&tops[*b]));
    let mut witness = Vec::new();

    for root in order {
        if sign[root] != 0 {
            continue;
        }
        sign[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(a) = queue.pop_front() {
            for &(b, rel) in &adj[a] {
                let want = sign[a] * rel;
                if sign[b] == 0 {
                    sign[b] = want;
                    parent[b] = Some(a);
                    queue.push_back(b);
                } else if sign[b] != want && witness.is_empty() {
                    witness = conflict_cycle(a, b, &parent)
                        .into_iter()
                        .map(|t| tops[t].clone())
                        .collect();
                }
            }
        }
    }

    OrientationAssignment {
        signs: tops
            .iter()
            .cloned()
            .zip(sign.iter().copied())
            .collect(),
        orientable: witness.is_empty(),
        witness,
    }
}

/// Closed walk `a → … → lca → … → b → a` through the BFS tree.
fn conflict_cycle(a: usize, b: usize, parent: &[Option<usize>]) -> Vec<usize> {
    let ancestors = |mut x: usize| {
        let mut path = vec![x];
        while let Some(p) = parent[x] {
            path.push(p);
            x = p;
        }
        path
    };
    let pa = ancestors(a);
    let pb = ancestors(b);
    let lca = *pa.iter().find(|x| pb.contains(x)).expect("same component");
    let mut cycle: Vec<usize> = pa.iter().copied().take_while(|x| *x != lca).collect();
    cycle.push(lca);
    let tail: Vec<usize> = pb.iter().copied().take_while(|x| *x != lca).collect();
    cycle.extend(tail.into_iter().rev());
    cycle
}

/// Orients the top simplices of a circuit, propagating only across faces
/// outside the singular set.
pub fn orient_circuit(q: &RelativeCircuitData) -> OrientationAssignment {
    let tops = q.complex.simplices_of_dim(q.k);
    coherent_orientation(&tops, &|f| !q.singular.contains(f))
}

/// The signed sum of the oriented top simplices. Verifies that its boundary
/// is carried by the circuit boundary.
pub fn fundamental_class(q: &RelativeCircuitData, o: &OrientationAssignment) -> Result<IntChain> {
    if !o.orientable {
        return Err(Error::NonOrientable {
            witness: o.witness.clone(),
        });
    }
    let tops = q.complex.simplices_of_dim(q.k);
    if let Some(s) = tops.iter().find(|s| o.sign(s).is_none()) {
        return Err(Error::Contract(format!(
            "orientation does not assign a sign to {s}"
        )));
    }
    let z = IntChain::from_terms(q.k, tops.iter().map(|s| (s.clone(), o.signs[s] as i64)))?;
    let b = z.boundary()?;
    if let Some(s) = b.support().find(|s| !q.boundary.contains(s)) {
        return Err(Error::NotACycle(format!(
            "boundary of the fundamental chain has coefficient {} on {s}, outside the circuit boundary",
            b.coefficient(s)
        )));
    }
    Ok(z)
}

/// The orientation the boundary circuit inherits: the coefficients of
/// `∂[Q]` on its top simplices, which must all be `±1`.
pub fn induced_boundary_orientation(
    q: &RelativeCircuitData,
    o: &OrientationAssignment,
) -> Result<OrientationAssignment> {
    let z = fundamental_class(q, o)?;
    let b = z.boundary()?;
    let mut signs = BTreeMap::new();
    if q.k == 0 {
        return Ok(OrientationAssignment {
            signs,
            orientable: true,
            witness: Vec::new(),
        });
    }
    for s in q.boundary.simplices_of_dim(q.k - 1) {
        let c = b.coefficient(&s);
        if c != 1 && c != -1 {
            return Err(Error::NotACycle(format!(
                "boundary of the fundamental chain has coefficient {c} on boundary simplex {s}"
            )));
        }
        signs.insert(s, c as i8);
    }
    Ok(OrientationAssignment {
        signs,
        orientable: true,
        witness: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::fixtures;

    fn closed(k: SimplicialComplex, dim: usize) -> RelativeCircuitData {
        RelativeCircuitData::new(k, SimplicialComplex::new(), dim, Some(SimplicialComplex::new())).unwrap()
    }

    #[test]
    fn sphere_is_orientable_and_closed() {
        let q = closed(fixtures::boundary_of_simplex(3), 2);
        let o = orient_circuit(&q);
        assert!(o.orientable);
        let z = fundamental_class(&q, &o).unwrap();
        assert!(z.boundary().unwrap().is_zero());
    }

    #[test]
    fn projective_plane_conflicts() {
        let q = closed(fixtures::projective_plane(), 2);
        let o = orient_circuit(&q);
        assert!(!o.orientable);
        assert!(o.witness.len() >= 3);
        assert!(matches!(fundamental_class(&q, &o), Err(Error::NonOrientable { .. })));
    }

    #[test]
    fn disk_boundary_orientation() {
        let q = RelativeCircuitData::new(
            fixtures::simplex(2),
            fixtures::boundary_of_simplex(2),
            2,
            Some(SimplicialComplex::new()),
        )
        .unwrap();
        let o = orient_circuit(&q);
        let ob = induced_boundary_orientation(&q, &o).unwrap();
        assert_eq!(ob.signs.len(), 3);
        let zb = ob.chain(1);
        assert_eq!(zb, fundamental_class(&q, &o).unwrap().boundary().unwrap());
    }

    #[test]
    fn components_are_rooted_independently() {
        let a = fixtures::boundary_of_simplex(2);
        let b = a.shifted(10);
        let q = closed(a.union(&b), 1);
        let o = orient_circuit(&q);
        assert!(o.orientable);
        assert_eq!(o.sign(&Simplex::new([0, 1]).unwrap()), Some(1));
        assert_eq!(o.sign(&Simplex::new([10, 11]).unwrap()), Some(1));
    }
}
