use std::collections::BTreeMap;

use serde::Serialize;

use super::{is_proper, limit_set, proper_by_preimages, CompactifiedMap, LimitSetResult, PuncturedComplex};
use crate::complex::{
    product_complex, product_complex_ordered, OpenSimplexSet, Product, Simplex, SimplicialComplex,
    SimplicialMap, Vertex,
};
use crate::error::{Error, Result};

/// One checked identity, inclusion or inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub holds: bool,
    /// A simplex on the wrong side of an inclusion, if any.
    pub witness: Vec<Simplex>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LawRecord {
    pub checks: Vec<LawCheck>,
}

impl LawRecord {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn get(&self, law: &str) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.law == law)
    }

    pub fn extend(&mut self, other: LawRecord) {
        self.checks.extend(other.checks);
    }

    fn subset(&mut self, law: &str, a: &OpenSimplexSet, b: &OpenSimplexSet) {
        let witness: Vec<Simplex> = a.minus(b).iter().take(1).cloned().collect();
        self.checks.push(LawCheck {
            law: law.into(),
            holds: witness.is_empty(),
            witness,
            detail: format!("{} ⊆ {} simplices", a.len(), b.len()),
        });
    }

    fn equal(&mut self, law: &str, a: &OpenSimplexSet, b: &OpenSimplexSet) {
        let mut witness: Vec<Simplex> = a.minus(b).iter().take(1).cloned().collect();
        witness.extend(b.minus(a).iter().take(1).cloned());
        self.checks.push(LawCheck {
            law: law.into(),
            holds: witness.is_empty(),
            witness,
            detail: format!("{} vs {} simplices", a.len(), b.len()),
        });
    }

    fn at_most(&mut self, law: &str, lhs: isize, rhs: isize) {
        self.checks.push(LawCheck {
            law: law.into(),
            holds: lhs <= rhs,
            witness: Vec::new(),
            detail: format!("{lhs} ≤ {rhs}"),
        });
    }

    fn holds(&mut self, law: &str, holds: bool, detail: impl Into<String>) {
        self.checks.push(LawCheck {
            law: law.into(),
            holds,
            witness: Vec::new(),
            detail: detail.into(),
        });
    }
}

/// Checks that do not need a second map: properness agrees with empty limit
/// set; the limit dimension is bounded by the dimension of the punctures;
/// an injective extension of a surjective map is proper.
pub fn basic_laws(f: &CompactifiedMap) -> LawRecord {
    let mut r = LawRecord::default();
    let l = limit_set(f);
    r.holds(
        "proper_iff_empty_limit",
        is_proper(f) == proper_by_preimages(f),
        format!("limit set has {} simplices", l.carrier.len()),
    );
    r.at_most("limit_dimension_at_most_punctures", l.limit_dimension, f.domain().punctures().dim());
    if f.extension().is_injective() && f.is_surjective() {
        r.holds("homeomorphism_is_proper", l.is_empty(), "injective extension onto the target");
    }
    r
}

fn image_set(g: &SimplicialMap, set: &OpenSimplexSet) -> OpenSimplexSet {
    g.image_of_set(set.iter())
}

pub struct Composition {
    pub map: CompactifiedMap,
    pub laws: LawRecord,
}

/// `h ∘ f` with punctures `S_f ∪ g_f⁻¹(S_h)`. Records
/// `g_h(L f) ⊆ L(hf) ⊆ g_h(L f) ∪ L(h)`, equality `L(hf) = g_h(L f)` when `h`
/// is proper, `L(h) ⊆ L(hf)` when `f` is onto (equality if also proper), and
/// `dim g_h(L f) ≤ ld(hf) ≤ max(ld f, ld h)`.
pub fn compose(f: &CompactifiedMap, h: &CompactifiedMap) -> Result<Composition> {
    if f.target() != h.domain() {
        return Err(Error::Contract(
            "composition needs the first map's target to be the second map's domain".into(),
        ));
    }
    let g = f.extension().then(h.extension())?;
    let punctures = f
        .domain()
        .punctures()
        .union(&f.extension().preimage(h.domain().punctures()));
    let domain = PuncturedComplex::new(f.domain().complex().clone(), punctures)?;
    let map = CompactifiedMap::new(domain, h.target().clone(), g)?;

    let lf = limit_set(f);
    let lh = limit_set(h);
    let lhf = limit_set(&map);
    let pushed = image_set(h.extension(), &lf.carrier);

    let mut laws = LawRecord::default();
    laws.subset("composite_lower_inclusion", &pushed, &lhf.carrier);
    laws.subset("composite_upper_inclusion", &lhf.carrier, &pushed.union(&lh.carrier));
    if lh.is_empty() {
        laws.equal("proper_outer_equality", &lhf.carrier, &pushed);
    }
    if f.is_surjective() {
        laws.subset("surjective_inclusion", &lh.carrier, &lhf.carrier);
        if lf.is_empty() {
            laws.equal("surjective_proper_equality", &lh.carrier, &lhf.carrier);
        }
    }
    laws.at_most(
        "composite_dimension_upper",
        lhf.limit_dimension,
        lf.limit_dimension.max(lh.limit_dimension),
    );
    laws.at_most("composite_dimension_lower", pushed.dim(), lhf.limit_dimension);
    laws.extend(basic_laws(&map));
    Ok(Composition { map, laws })
}

/// `ld(f) ≤ ld(h ∘ f)` taken literally. This fails whenever `h` lowers the
/// dimension of `L(f)`; [`compose`] records the valid form
/// `dim h(L f) ≤ ld(h ∘ f)` instead.
pub fn limit_dimension_monotone_under_composition(f: &CompactifiedMap, h: &CompactifiedMap) -> Result<bool> {
    let c = compose(f, h)?;
    Ok(limit_set(f).limit_dimension <= limit_set(&c.map).limit_dimension)
}

pub struct ProductMap {
    pub map: CompactifiedMap,
    pub domain_product: Product,
    pub target_product: Product,
    pub laws: LawRecord,
}

/// Orders the vertices of the source by their image first, so that the
/// product of maps is simplicial on staircase products.
fn keyed_order(g: &SimplicialMap) -> Vec<Vertex> {
    let mut vs = g.source().vertices();
    vs.sort_by_key(|v| (g.vertex_map()[v], *v));
    vs
}

fn punctured_product(p: &Product, a: &PuncturedComplex, b: &PuncturedComplex) -> Result<PuncturedComplex> {
    let punctures = SimplicialComplex::closure_of(
        p.complex
            .iter()
            .filter(|c| {
                a.punctures().contains(&p.project_left(c)) || b.punctures().contains(&p.project_right(c))
            })
            .cloned(),
    );
    PuncturedComplex::new(p.complex.clone(), punctures)
}

/// `f × f′` on staircase products. Records
/// `L(f × f′) = L(f) × cl f′(X′) ∪ cl f(X) × L(f′)` and, when one factor is
/// proper, `ld(f × f′) ≤ ld(other) + dim(proper factor's domain)`.
pub fn product(f: &CompactifiedMap, f2: &CompactifiedMap) -> Result<ProductMap> {
    let target_product = product_complex(f.target().complex(), f2.target().complex());
    let domain_product = product_complex_ordered(
        f.domain().complex(),
        &keyed_order(f.extension()),
        f2.domain().complex(),
        &keyed_order(f2.extension()),
    );
    let vm: BTreeMap<Vertex, Vertex> = domain_product
        .complex
        .vertices()
        .into_iter()
        .map(|p| {
            let (v, w) = domain_product.pair_of(p).expect("product vertex");
            let image = target_product
                .vertex_of(f.extension().vertex_map()[&v], f2.extension().vertex_map()[&w])
                .expect("target product vertex");
            (p, image)
        })
        .collect();
    let domain = punctured_product(&domain_product, f.domain(), f2.domain())?;
    let target = punctured_product(&target_product, f.target(), f2.target())?;
    let map = CompactifiedMap::from_vertex_map(domain, target, vm)?;

    let lf = limit_set(f);
    let lf2 = limit_set(f2);
    let lhs = limit_set(&map);
    let rhs: OpenSimplexSet = target_product
        .product_set(lf.carrier.members(), f2.image_closure().members())
        .into_iter()
        .chain(target_product.product_set(f.image_closure().members(), lf2.carrier.members()))
        .collect();
    let mut laws = LawRecord::default();
    laws.equal("product_equality", &lhs.carrier, &rhs);
    if lf2.is_empty() {
        laws.at_most(
            "product_dimension_bound",
            lhs.limit_dimension,
            lf.limit_dimension + f2.domain().dim(),
        );
    }
    if lf.is_empty() {
        laws.at_most(
            "product_dimension_bound_swapped",
            lhs.limit_dimension,
            lf2.limit_dimension + f.domain().dim(),
        );
    }
    laws.extend(basic_laws(&map));
    Ok(ProductMap {
        map,
        domain_product,
        target_product,
        laws,
    })
}

/// `f ∘ pr` for the projection `X × K → X` with `K` compact. Records
/// `L(f ∘ pr) = L(f)` and equal limit dimensions.
pub fn precompose_projection(f: &CompactifiedMap, k: &SimplicialComplex) -> Result<(CompactifiedMap, LawRecord)> {
    if k.is_empty() {
        return Err(Error::Contract("projection from an empty product".into()));
    }
    let p = product_complex(f.domain().complex(), k);
    let domain = punctured_product(&p, f.domain(), &PuncturedComplex::compact(k.clone()))?;
    let g = p.left.then(f.extension())?;
    let map = CompactifiedMap::new(domain, f.target().clone(), g)?;
    let lf = limit_set(f);
    let lp = limit_set(&map);
    let mut laws = LawRecord::default();
    laws.equal("projection_equality", &lp.carrier, &lf.carrier);
    laws.holds(
        "projection_dimension",
        lp.limit_dimension == lf.limit_dimension,
        format!("{} = {}", lp.limit_dimension, lf.limit_dimension),
    );
    Ok((map, laws))
}

/// Restriction to the closed subset `|W₁| ∖ |S|`, presented by the closure of
/// `W₁ ∖ S` with punctures `S ∩` that closure. Records
/// `L(f|X₁) ⊆ L(f)` and `ld(f|X₁) ≤ ld(f)`.
pub fn restrict_closed(f: &CompactifiedMap, w1: &SimplicialComplex) -> Result<(CompactifiedMap, LawRecord)> {
    w1.check_subcomplex_of(f.domain().complex(), "restriction to a subcomplex of the domain")?;
    let w = SimplicialComplex::closure(&w1.minus(f.domain().punctures()));
    let s = f.domain().punctures().intersection(&w);
    let domain = PuncturedComplex::new(w.clone(), s)?;
    let map = CompactifiedMap::new(domain, f.target().clone(), f.extension().restrict(&w)?)?;
    let lf = limit_set(f);
    let lr = limit_set(&map);
    let mut laws = LawRecord::default();
    laws.subset("restriction_inclusion", &lr.carrier, &lf.carrier);
    laws.at_most("restriction_dimension", lr.limit_dimension, lf.limit_dimension);
    Ok((map, laws))
}

/// For closed pieces `W₁ ∪ W₂ = W`: `L(f) = L(f|X₁) ∪ L(f|X₂)` and
/// `ld(f) = max(ld f|X₁, ld f|X₂)`.
pub fn union_law(f: &CompactifiedMap, w1: &SimplicialComplex, w2: &SimplicialComplex) -> Result<LawRecord> {
    if &w1.union(w2) != f.domain().complex() {
        return Err(Error::Contract("pieces must cover the domain".into()));
    }
    let (f1, mut laws) = restrict_closed(f, w1)?;
    let (f2, l2) = restrict_closed(f, w2)?;
    laws.extend(l2);
    let (l, l1, l2) = (limit_set(f), limit_set(&f1), limit_set(&f2));
    laws.equal("union_equality", &l.carrier, &l1.carrier.union(&l2.carrier));
    laws.holds(
        "union_dimension",
        l.limit_dimension == l1.limit_dimension.max(l2.limit_dimension),
        format!("{} = max({}, {})", l.limit_dimension, l1.limit_dimension, l2.limit_dimension),
    );
    Ok(laws)
}

/// Limit set of `f` restricted to `g⁻¹(A)` for a subcomplex `A` of `W_Y`,
/// with `L(f|f⁻¹(A)) ⊆ L(f) ∩ A` recorded.
pub fn preimage_restrict(f: &CompactifiedMap, a: &SimplicialComplex) -> Result<(LimitSetResult, LawRecord)> {
    a.check_subcomplex_of(f.target().complex(), "preimage of a subcomplex of the target")?;
    let w1 = f.extension().preimage(a);
    let (r, mut laws) = restrict_closed(f, &w1)?;
    let l = limit_set(&r);
    let bound = limit_set(f).carrier.intersection(&OpenSimplexSet::from_complex(a));
    laws.subset("preimage_inclusion", &l.carrier, &bound);
    Ok((l, laws))
}

/// Agreement of the extensions on `|S_X|`, i.e. on its vertices. When the
/// maps agree, their limit sets are checked to be equal.
pub fn equal_at_infinity(f: &CompactifiedMap, h: &CompactifiedMap) -> Result<(bool, LawRecord)> {
    if f.domain() != h.domain() || f.target() != h.target() {
        return Err(Error::Contract("equality at infinity needs the same domain and target".into()));
    }
    let agree = f
        .domain()
        .punctures()
        .vertices()
        .into_iter()
        .all(|v| f.extension().apply_vertex(v) == h.extension().apply_vertex(v));
    let mut laws = LawRecord::default();
    if agree {
        laws.equal("equal_limit_sets", &limit_set(f).carrier, &limit_set(h).carrier);
    }
    Ok((agree, laws))
}
