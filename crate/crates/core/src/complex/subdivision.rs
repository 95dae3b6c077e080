use std::collections::{BTreeMap, BTreeSet};

use super::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// The barycentric subdivision `K′` of a complex `K` together with the
/// correspondence between new vertices and original simplices.
///
/// Barycenters of vertices keep the original vertex id; barycenters of
/// higher simplices are numbered after the largest original vertex in
/// canonical (dimension, then lexicographic) order. With this labeling `K′`
/// is a genuine subdivision: the original vertices are vertices of `K′`.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub original: SimplicialComplex,
    pub complex: SimplicialComplex,
    barycenter_of: BTreeMap<Vertex, Simplex>,
    vertex_of: BTreeMap<Simplex, Vertex>,
}

pub fn barycentric_subdivision(k: &SimplicialComplex) -> Subdivision {
    let mut vertex_of = BTreeMap::new();
    let mut barycenter_of = BTreeMap::new();
    let mut next = k.max_vertex().map_or(0, |v| v + 1);
    for v in k.vertices() {
        vertex_of.insert(Simplex::vertex(v), v);
        barycenter_of.insert(v, Simplex::vertex(v));
    }
    let mut higher: Vec<&Simplex> = k.iter().filter(|s| s.dim() > 0).collect();
    higher.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
    for s in higher {
        vertex_of.insert(s.clone(), next);
        barycenter_of.insert(next, s.clone());
        next += 1;
    }

    let mut tops = Vec::new();
    for sigma in k.maximal_simplices() {
        for_each_full_flag(&sigma, &mut |flag| {
            let verts = flag.iter().map(|t| vertex_of[t]);
            tops.push(Simplex::new(verts).expect("distinct barycenters"));
        });
    }
    Subdivision {
        original: k.clone(),
        complex: SimplicialComplex::closure_of(tops),
        barycenter_of,
        vertex_of,
    }
}

/// Calls `f` on every maximal flag `τ₀ < τ₁ < … < τ_d = σ` of faces of `σ`.
fn for_each_full_flag(sigma: &Simplex, f: &mut dyn FnMut(&[Simplex])) {
    fn rec(
        remaining: &[Vertex],
        current: &mut Vec<Vertex>,
        flag: &mut Vec<Simplex>,
        f: &mut dyn FnMut(&[Simplex]),
    ) {
        if remaining.is_empty() {
            f(flag);
            return;
        }
        for i in 0..remaining.len() {
            let mut rest = remaining.to_vec();
            let v = rest.remove(i);
            current.push(v);
            flag.push(Simplex::new(current.iter().copied()).expect("distinct"));
            rec(&rest, current, flag, f);
            flag.pop();
            current.pop();
        }
    }
    rec(sigma.vertices(), &mut Vec::new(), &mut Vec::new(), f);
}

impl Subdivision {
    /// Original simplex whose barycenter is `v`.
    pub fn barycenter_of(&self, v: Vertex) -> Option<&Simplex> {
        self.barycenter_of.get(&v)
    }

    /// Vertex of `K′` at the barycenter of `s`.
    pub fn vertex_of(&self, s: &Simplex) -> Option<Vertex> {
        self.vertex_of.get(s).copied()
    }

    pub fn barycenter_map(&self) -> &BTreeMap<Vertex, Simplex> {
        &self.barycenter_of
    }

    /// The chain `τ₁ < ⋯ < τ_s` of original simplices spanned by a simplex
    /// of `K′`, ordered by dimension.
    pub fn flag_of(&self, s: &Simplex) -> Result<Vec<Simplex>> {
        if !self.complex.contains(s) {
            return Err(Error::NotFound(s.clone()));
        }
        let mut flag: Vec<Simplex> = s
            .vertices()
            .iter()
            .map(|v| self.barycenter_of[v].clone())
            .collect();
        flag.sort_by_key(|t| t.dim());
        Ok(flag)
    }

    /// The simplex of `K′` spanned by the barycenters of a chain.
    pub fn simplex_of_flag(&self, flag: &[Simplex]) -> Result<Simplex> {
        check_chain(flag)?;
        let verts = flag
            .iter()
            .map(|t| self.vertex_of(t).ok_or_else(|| Error::NotFound(t.clone())))
            .collect::<Result<Vec<_>>>()?;
        Simplex::new(verts)
    }

    /// The subdivision `A′` of a subcomplex `A ⊆ K`, as a subcomplex of `K′`:
    /// chains whose largest member lies in `A`.
    pub fn restrict(&self, a: &SimplicialComplex) -> SimplicialComplex {
        let members: BTreeSet<Simplex> = self
            .complex
            .iter()
            .filter(|s| {
                s.vertices()
                    .iter()
                    .all(|v| a.contains(&self.barycenter_of[v]))
            })
            .cloned()
            .collect();
        SimplicialComplex::from_closed_set(members)
    }

    /// Simplices of `K′` whose open simplex lies in the open simplex of some
    /// member of `set`, i.e. whose largest flag element is in `set`.
    pub fn carried_by(&self, set: &BTreeSet<Simplex>) -> BTreeSet<Simplex> {
        self.complex
            .iter()
            .filter(|s| {
                let top = s
                    .vertices()
                    .iter()
                    .map(|v| &self.barycenter_of[v])
                    .max_by_key(|t| t.dim())
                    .expect("nonempty");
                set.contains(top)
            })
            .cloned()
            .collect()
    }
}

fn check_chain(flag: &[Simplex]) -> Result<()> {
    for w in flag.windows(2) {
        if !w[0].is_proper_face_of(&w[1]) {
            return Err(Error::MalformedInput(format!(
                "{} is not a proper face of {}; not a chain",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Splits a chain `τ₁ < ⋯ < τ_s` as `λ ∗ μ` where `λ` is the prefix of
/// members of dimension `≤ r` and `μ` the remaining suffix.
pub fn join_decompose(flag: &[Simplex], r: isize) -> Result<(Vec<Simplex>, Vec<Simplex>)> {
    check_chain(flag)?;
    let split = flag
        .iter()
        .position(|t| (t.dim() as isize) > r)
        .unwrap_or(flag.len());
    Ok((flag[..split].to_vec(), flag[split..].to_vec()))
}
