use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex, SimplicialMap, Vertex};
use crate::error::{Error, Result};

/// Integer chain of a fixed degree. Each simplex carries its canonical
/// orientation (increasing vertex order); zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntChain {
    pub degree: usize,
    #[serde(with = "coefficient_list")]
    coefficients: BTreeMap<Simplex, i64>,
}

mod coefficient_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(c: &BTreeMap<Simplex, i64>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(c.iter())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Simplex, i64>, D::Error> {
        let terms: Vec<(Simplex, i64)> = Vec::deserialize(d)?;
        Ok(terms.into_iter().filter(|(_, c)| *c != 0).collect())
    }
}

impl IntChain {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coefficients: BTreeMap::new(),
        }
    }

    /// Builds a chain from terms; repeated simplices are summed.
    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Simplex, i64)>) -> Result<Self> {
        let mut c = Self::zero(degree);
        for (s, x) in terms {
            if s.dim() != degree {
                return Err(Error::DimensionMismatch(format!(
                    "simplex {s} in a chain of degree {degree}"
                )));
            }
            c.add_term(s, x)?;
        }
        Ok(c)
    }

    fn add_term(&mut self, s: Simplex, x: i64) -> Result<()> {
        let entry = self.coefficients.entry(s.clone()).or_insert(0);
        *entry = entry
            .checked_add(x)
            .ok_or_else(|| Error::Overflow(format!("coefficient of {s}")))?;
        if *entry == 0 {
            self.coefficients.remove(&s);
        }
        Ok(())
    }

    pub fn coefficients(&self) -> &BTreeMap<Simplex, i64> {
        &self.coefficients
    }

    pub fn coefficient(&self, s: &Simplex) -> i64 {
        self.coefficients.get(s).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.coefficients.keys()
    }

    pub fn add(&self, other: &IntChain) -> Result<IntChain> {
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DimensionMismatch(format!(
                "adding chains of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = other.degree;
        }
        for (s, x) in &other.coefficients {
            out.add_term(s.clone(), *x)?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: i64) -> Result<IntChain> {
        let mut out = IntChain::zero(self.degree);
        for (s, x) in &self.coefficients {
            let y = x
                .checked_mul(factor)
                .ok_or_else(|| Error::Overflow(format!("coefficient of {s}")))?;
            out.add_term(s.clone(), y)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> IntChain {
        self.scale(-1).expect("negation of i64 coefficients other than MIN")
    }

    /// Simplicial boundary with `∂[v₀…v_d] = Σ (−1)^i [v₀…v̂ᵢ…v_d]`.
    /// The boundary of a 0-chain is the zero 0-chain.
    pub fn boundary(&self) -> Result<IntChain> {
        let mut out = IntChain::zero(self.degree.saturating_sub(1));
        if self.degree == 0 {
            return Ok(out);
        }
        for (s, x) in &self.coefficients {
            for (i, f) in s.facets().into_iter().enumerate() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                out.add_term(f, sign * x)?;
            }
        }
        Ok(out)
    }

    /// `true` when every simplex in the support lies in `k`.
    pub fn is_carried_by(&self, k: &SimplicialComplex) -> bool {
        self.coefficients.keys().all(|s| k.contains(s))
    }

    /// Terms whose simplex is in `k`.
    pub fn restrict_to(&self, k: &SimplicialComplex) -> IntChain {
        IntChain {
            degree: self.degree,
            coefficients: self
                .coefficients
                .iter()
                .filter(|(s, _)| k.contains(s))
                .map(|(s, x)| (s.clone(), *x))
                .collect(),
        }
    }

    /// Terms whose simplex is not in `a`: the image in relative chains.
    pub fn modulo(&self, a: &SimplicialComplex) -> IntChain {
        IntChain {
            degree: self.degree,
            coefficients: self
                .coefficients
                .iter()
                .filter(|(s, _)| !a.contains(s))
                .map(|(s, x)| (s.clone(), *x))
                .collect(),
        }
    }

    /// Pushforward along a simplicial map. Degenerate images contribute
    /// zero; otherwise the sign is the parity of the permutation sorting the
    /// image vertices.
    pub fn pushforward(&self, f: &SimplicialMap) -> Result<IntChain> {
        let mut out = IntChain::zero(self.degree);
        for (s, x) in &self.coefficients {
            let images: Vec<Vertex> = s
                .vertices()
                .iter()
                .map(|v| f.apply_vertex(*v).ok_or_else(|| Error::NotFound(s.clone())))
                .collect::<Result<_>>()?;
            if let Some((t, sign)) = oriented_simplex(&images) {
                out.add_term(t, sign * x)?;
            }
        }
        Ok(out)
    }
}

/// The canonical simplex on an ordered vertex list with the sign of the
/// sorting permutation, or `None` when a vertex repeats.
pub fn oriented_simplex(vertices: &[Vertex]) -> Option<(Simplex, i64)> {
    let mut v = vertices.to_vec();
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((Simplex::new(v).expect("distinct"), sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s(v: &[Vertex]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn boundary_of_edge_and_triangle() {
        let e = IntChain::from_terms(1, [(s(&[0, 1]), 1)]).unwrap();
        let b = e.boundary().unwrap();
        assert_eq!(b.coefficient(&s(&[0])), -1);
        assert_eq!(b.coefficient(&s(&[1])), 1);
        let t = IntChain::from_terms(2, [(s(&[0, 1, 2]), 1)]).unwrap();
        assert!(t.boundary().unwrap().boundary().unwrap().is_zero());
    }

    #[test]
    fn pushforward_signs_and_degeneracy() {
        let k = fixtures::simplex(1);
        let swap = SimplicialMap::new(k.clone(), k.clone(), [(0, 1), (1, 0)].into_iter().collect()).unwrap();
        let e = IntChain::from_terms(1, [(s(&[0, 1]), 3)]).unwrap();
        assert_eq!(e.pushforward(&swap).unwrap().coefficient(&s(&[0, 1])), -3);
        let pt = fixtures::point();
        let c = SimplicialMap::constant(&k, &pt, 0).unwrap();
        assert!(e.pushforward(&c).unwrap().is_zero());
    }

    #[test]
    fn oriented_simplex_parity() {
        assert_eq!(oriented_simplex(&[2, 0, 1]).unwrap().1, 1);
        assert_eq!(oriented_simplex(&[1, 0, 2]).unwrap().1, -1);
        assert!(oriented_simplex(&[1, 1]).is_none());
    }
}
