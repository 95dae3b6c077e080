//! Shared generators and oracles for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use circuitsmith::complex::{Simplex, SimplicialComplex, SimplicialMap, Vertex};
use circuitsmith::limit::{CompactifiedMap, PuncturedComplex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Closure of `count` random simplices of dimension `≤ max_dim` on
/// `vertices` vertices.
pub fn random_complex(rng: &mut ChaCha8Rng, vertices: u32, count: usize, max_dim: usize) -> SimplicialComplex {
    let all: Vec<Vertex> = (0..vertices).collect();
    let tops = (0..count).map(|_| {
        let size = rng.gen_range(1..=(max_dim + 1).min(vertices as usize));
        Simplex::new(all.choose_multiple(rng, size).copied()).expect("distinct vertices")
    });
    SimplicialComplex::closure_of(tops)
}

/// A random complex with at most `cap` simplices.
pub fn random_complex_capped(rng: &mut ChaCha8Rng, cap: usize) -> SimplicialComplex {
    loop {
        let n = rng.gen_range(3..=10);
        let count = rng.gen_range(1..=12);
        let k = random_complex(rng, n, count, 3);
        if !k.is_empty() && k.len() <= cap {
            return k;
        }
    }
}

/// Closure of a random selection of simplices of `k`.
pub fn random_subcomplex(rng: &mut ChaCha8Rng, k: &SimplicialComplex, p: f64) -> SimplicialComplex {
    SimplicialComplex::closure_of(k.iter().filter(|_| rng.gen_bool(p)).cloned())
}

/// Degree-wise betti number and torsion coefficients.
pub type HomologyTable = Vec<(usize, Vec<i64>)>;

/// Dense Smith normal form: the nonzero invariant factors, each dividing
/// the next.
pub fn smith_invariants(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(a, b)| m[i][j].abs() < m[a][b].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if !m[i][t].is_zero() {
                    let q = m[i][t].div_floor(&m[t][t]);
                    for j in t..cols {
                        let x = &q * &m[t][j];
                        m[i][j] -= x;
                    }
                    if !m[i][t].is_zero() {
                        m.swap(t, i);
                        changed = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() {
                    let q = m[t][j].div_floor(&m[t][t]);
                    for i in t..rows {
                        let x = &q * &m[i][t];
                        m[i][j] -= x;
                    }
                    if !m[t][j].is_zero() {
                        for row in m.iter_mut() {
                            row.swap(t, j);
                        }
                        changed = true;
                    }
                }
            }
            if changed {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let x = m[i][j].clone();
                        m[t][j] += x;
                    }
                }
                None => break,
            }
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}

/// Relative homology by dense Smith normal form of every boundary matrix.
pub fn oracle_homology(k: &SimplicialComplex, a: &SimplicialComplex) -> HomologyTable {
    let top = k.dim();
    if top < 0 {
        return Vec::new();
    }
    let basis: Vec<Vec<Simplex>> = (0..=top as usize + 1)
        .map(|d| k.simplices_of_dim(d).into_iter().filter(|s| !a.contains(s)).collect())
        .collect();
    // invariants of ∂_d : C_d → C_{d−1}, d ≥ 1
    let invariants: Vec<Vec<BigInt>> = (0..=top as usize + 1)
        .map(|d| {
            if d == 0 {
                return Vec::new();
            }
            let index: BTreeMap<&Simplex, usize> = basis[d - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
            let mut m = vec![vec![BigInt::zero(); basis[d].len()]; basis[d - 1].len()];
            for (j, s) in basis[d].iter().enumerate() {
                for (i, f) in s.facets().iter().enumerate() {
                    if let Some(r) = index.get(f) {
                        m[*r][j] = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
                    }
                }
            }
            smith_invariants(m)
        })
        .collect();
    (0..=top as usize)
        .map(|d| {
            let rank_out = invariants[d].len();
            let rank_in = invariants[d + 1].len();
            let betti = basis[d].len() - rank_out - rank_in;
            let torsion = invariants[d + 1]
                .iter()
                .filter(|x| **x > BigInt::from(1))
                .map(|x| x.to_i64().expect("small torsion"))
                .collect();
            (betti, torsion)
        })
        .collect()
}

/// Random `(W, S)` with `S` a face-closed set of non-maximal simplices.
pub fn random_punctured(rng: &mut ChaCha8Rng, vertices: u32, count: usize, max_dim: usize) -> PuncturedComplex {
    let w = random_complex(rng, vertices, count, max_dim);
    let maximal: BTreeSet<Simplex> = w.maximal_simplices().into_iter().collect();
    let candidates: Vec<Simplex> = w.iter().filter(|s| !maximal.contains(*s)).cloned().collect();
    let picks = candidates.into_iter().filter(|_| rng.gen_bool(0.3));
    PuncturedComplex::new(w, SimplicialComplex::closure_of(picks)).expect("non-maximal punctures")
}

/// A random map out of `domain` into a target on `m` vertices. The target
/// compactification is the closure of the image plus a few extra simplices;
/// its punctures are chosen among simplices that no point of the domain
/// reaches.
pub fn random_map_from(rng: &mut ChaCha8Rng, domain: PuncturedComplex, m: u32) -> CompactifiedMap {
    let vm: BTreeMap<Vertex, Vertex> = domain
        .complex()
        .vertices()
        .into_iter()
        .map(|v| (v, rng.gen_range(0..m)))
        .collect();
    let image: Vec<Simplex> = domain
        .complex()
        .iter()
        .map(|s| Simplex::new(s.vertices().iter().map(|v| vm[v]).collect::<BTreeSet<_>>()).expect("nonempty"))
        .collect();
    let mut extra = Vec::new();
    if rng.gen_bool(0.5) {
        let extra_vertices = m + 2;
        let all: Vec<Vertex> = (0..extra_vertices).collect();
        for _ in 0..rng.gen_range(1..=3) {
            let size = rng.gen_range(1..=3);
            extra.push(Simplex::new(all.choose_multiple(rng, size).copied()).expect("distinct"));
        }
    }
    let w_y = SimplicialComplex::closure_of(image.iter().cloned().chain(extra));
    let reached: BTreeSet<Simplex> = domain
        .complex()
        .iter()
        .filter(|s| !domain.punctures().contains(s))
        .map(|s| Simplex::new(s.vertices().iter().map(|v| vm[v]).collect::<BTreeSet<_>>()).expect("nonempty"))
        .collect();
    let maximal: BTreeSet<Simplex> = w_y.maximal_simplices().into_iter().collect();
    let picks: Vec<Simplex> = w_y
        .iter()
        .filter(|t| !maximal.contains(*t) && t.faces().iter().all(|f| !reached.contains(f)))
        .filter(|_| rng.gen_bool(0.5))
        .cloned()
        .collect();
    let target = PuncturedComplex::new(w_y, SimplicialComplex::closure_of(picks)).expect("non-maximal punctures");
    CompactifiedMap::from_vertex_map(domain, target, vm).expect("valid random map")
}

pub fn random_compactified(rng: &mut ChaCha8Rng) -> CompactifiedMap {
    let n = rng.gen_range(3..=7);
    let count = rng.gen_range(1..=5);
    let domain = random_punctured(rng, n, count, 2);
    let m = rng.gen_range(2..=6);
    random_map_from(rng, domain, m)
}

/// Splits `W` into two closed pieces covering it.
pub fn random_cover(rng: &mut ChaCha8Rng, w: &SimplicialComplex) -> (SimplicialComplex, SimplicialComplex) {
    let maximal = w.maximal_simplices();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (i, s) in maximal.into_iter().enumerate() {
        if i == 0 || (i > 1 && rng.gen_bool(0.5)) {
            a.push(s);
        } else {
            b.push(s);
        }
    }
    if b.is_empty() {
        b = a.clone();
    }
    (SimplicialComplex::closure_of(a), SimplicialComplex::closure_of(b))
}

/// The identity of `k` as a simplicial map.
pub fn identity(k: &SimplicialComplex) -> SimplicialMap {
    SimplicialMap::identity(k)
}
