use std::collections::BTreeMap;

use super::{BordismData, RelativeCircuitData};
use crate::complex::{
    barycentric_subdivision, product_complex, Product, Simplex, SimplicialComplex, SimplicialMap,
    Vertex,
};
use crate::error::{Error, Result};
use crate::fixtures;

/// `Q × [0, 1]` as a relative nullbordism of `Q × {0, 1}`: boundary
/// `Q × ∂I ∪ δQ × I`, circuit `Q × ∂I` with boundary `δQ × ∂I`, and
/// singular set `S(Q) × I`.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub bordism: BordismData,
    pub product: Product,
    /// `Q × {0}` and `Q × {1}` as circuits in the cylinder's labels.
    pub bottom: RelativeCircuitData,
    pub top: RelativeCircuitData,
    /// Vertex of `Q` to its copy in the bottom and top ends.
    pub bottom_embedding: BTreeMap<Vertex, Vertex>,
    pub top_embedding: BTreeMap<Vertex, Vertex>,
}

impl Cylinder {
    /// The projection `Q × I → Q`.
    pub fn projection(&self) -> &SimplicialMap {
        &self.product.left
    }
}

pub fn cylinder(q: &RelativeCircuitData) -> Result<Cylinder> {
    let interval = fixtures::simplex(1);
    let p = product_complex(&q.complex, &interval);
    let end = |t: Vertex| SimplicialComplex::closure_of([Simplex::vertex(t)]);
    let ends = interval.skeleton(0);
    let circuit = p.sub_product(&q.complex, &ends);
    let circuit_boundary = p.sub_product(&q.boundary, &ends);
    let boundary = circuit.union(&p.sub_product(&q.boundary, &interval));
    let singular = p.sub_product(&q.singular, &interval);
    let at = |t: Vertex| RelativeCircuitData {
        complex: p.sub_product(&q.complex, &end(t)),
        boundary: p.sub_product(&q.boundary, &end(t)),
        k: q.k,
        singular: p.sub_product(&q.singular, &end(t)),
    };
    let embedding = |t: Vertex| -> BTreeMap<Vertex, Vertex> {
        q.complex
            .vertices()
            .into_iter()
            .map(|v| (v, p.vertex_of(v, t).expect("product vertex")))
            .collect()
    };
    Ok(Cylinder {
        bordism: BordismData::new(
            p.complex.clone(),
            boundary,
            circuit,
            circuit_boundary,
            q.k,
            Some(singular),
        )?,
        bottom: at(0),
        top: at(1),
        bottom_embedding: embedding(0),
        top_embedding: embedding(1),
        product: p,
    })
}

/// The cylinder from `Q` to its barycentric subdivision `Q′`: simplices
/// `σ ∪ {τ̂₁, …, τ̂_s}` with `σ ⊆ τ₁ ⊂ ⋯ ⊂ τ_s` in `Q` (either part may be
/// empty). The bottom end keeps the vertices of `Q`; the barycenter `τ̂` of
/// every simplex gets a fresh vertex in the top end.
#[derive(Clone, Debug)]
pub struct SubdivisionCylinder {
    pub bordism: BordismData,
    pub bottom: RelativeCircuitData,
    pub top: RelativeCircuitData,
    barycenter_of: BTreeMap<Vertex, Simplex>,
    vertex_of: BTreeMap<Simplex, Vertex>,
}

pub fn subdivision_cylinder(q: &RelativeCircuitData) -> Result<SubdivisionCylinder> {
    let sd = barycentric_subdivision(&q.complex);
    let offset = q.complex.max_vertex().map_or(0, |v| v + 1);
    let mut order: Vec<&Simplex> = q.complex.iter().collect();
    order.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
    let vertex_of: BTreeMap<Simplex, Vertex> = order
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), offset + i as Vertex))
        .collect();
    let barycenter_of: BTreeMap<Vertex, Simplex> =
        vertex_of.iter().map(|(s, v)| (*v, s.clone())).collect();

    let mut tops = Vec::new();
    for top in sd.complex.maximal_simplices() {
        let flag = sd.flag_of(&top)?;
        for j in 0..flag.len() {
            let verts = flag[j]
                .vertices()
                .iter()
                .copied()
                .chain(flag[j..].iter().map(|t| vertex_of[t]));
            tops.push(Simplex::new(verts)?);
        }
    }
    let complex = SimplicialComplex::closure_of(tops);

    let split = |s: &Simplex| -> (Option<Simplex>, Vec<&Simplex>) {
        let bottom = Simplex::spanned_by(s.vertices().iter().copied().filter(|v| *v < offset));
        let chain = s
            .vertices()
            .iter()
            .filter(|v| **v >= offset)
            .map(|v| &barycenter_of[v])
            .collect();
        (bottom, chain)
    };
    let cyl = |x: &SimplicialComplex| {
        SimplicialComplex::closure_of(complex.iter().filter(|s| {
            let (b, c) = split(s);
            b.is_none_or(|b| x.contains(&b)) && c.iter().all(|t| x.contains(t))
        }).cloned())
    };
    let top_of = |x: &SimplicialComplex| {
        SimplicialComplex::closure_of(complex.iter().filter(|s| {
            let (b, c) = split(s);
            b.is_none() && c.iter().all(|t| x.contains(t))
        }).cloned())
    };

    let bottom = q.clone();
    let top = RelativeCircuitData {
        complex: top_of(&q.complex),
        boundary: top_of(&q.boundary),
        k: q.k,
        singular: top_of(&q.singular),
    };
    let circuit = bottom.complex.union(&top.complex);
    let circuit_boundary = bottom.boundary.union(&top.boundary);
    let boundary = circuit.union(&cyl(&q.boundary));
    let singular = cyl(&q.singular);
    Ok(SubdivisionCylinder {
        bordism: BordismData::new(complex, boundary, circuit, circuit_boundary, q.k, Some(singular))?,
        bottom,
        top,
        barycenter_of,
        vertex_of,
    })
}

impl SubdivisionCylinder {
    /// Simplex of `Q` whose barycenter is the top vertex `v`.
    pub fn barycenter_of(&self, v: Vertex) -> Option<&Simplex> {
        self.barycenter_of.get(&v)
    }

    /// Top vertex at the barycenter of `s`.
    pub fn top_vertex(&self, s: &Simplex) -> Option<Vertex> {
        self.vertex_of.get(s).copied()
    }

    /// Extends `a: Q → X` over the cylinder by sending `τ̂` to the image of
    /// the smallest vertex of `τ`. Every simplex lands in `a(τ_s)`.
    pub fn extend_map(&self, a: &SimplicialMap) -> Result<SimplicialMap> {
        let mut vm = a.vertex_map().clone();
        for (v, t) in &self.barycenter_of {
            let first = t.vertices()[0];
            vm.insert(*v, a.apply_vertex(first).ok_or_else(|| Error::NotFound(Simplex::vertex(first)))?);
        }
        SimplicialMap::new(self.bordism.complex.clone(), a.target().clone(), vm)
    }

    /// The map on the cylinder given separately on the two ends. Fails with
    /// [`Error::NotSimplicial`] when the two ends cannot be joined
    /// simplicially.
    pub fn extend_ends(&self, bottom: &SimplicialMap, top: &SimplicialMap) -> Result<SimplicialMap> {
        if bottom.target() != top.target() {
            return Err(Error::Contract("end maps must share a target".into()));
        }
        let mut vm = bottom.vertex_map().clone();
        vm.extend(top.vertex_map().iter().map(|(k, v)| (*k, *v)));
        SimplicialMap::new(self.bordism.complex.clone(), bottom.target().clone(), vm)
    }

    /// A map given on `barycentric_subdivision(Q)`, moved to the top end's
    /// labels.
    pub fn top_from_subdivision(&self, a: &SimplicialMap) -> Result<SimplicialMap> {
        let sd = barycentric_subdivision(&self.bottom.complex);
        if a.source() != &sd.complex {
            return Err(Error::Contract("map must be defined on the subdivision of the bottom".into()));
        }
        let mut vm = BTreeMap::new();
        for (v, t) in sd.barycenter_map() {
            let top = self.top_vertex(t).ok_or_else(|| Error::NotFound(t.clone()))?;
            vm.insert(top, a.vertex_map()[v]);
        }
        SimplicialMap::new(self.top.complex.clone(), a.target().clone(), vm)
    }

    /// `a′`: the extension of `a` restricted to the top end.
    pub fn top_map(&self, a: &SimplicialMap) -> Result<SimplicialMap> {
        self.extend_map(a)?.restrict(&self.top.complex)
    }
}
