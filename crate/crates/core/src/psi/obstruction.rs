use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::dual::dual_complex;
use crate::circuits::{SigmaCase, SigmaInput};

/// What is known about `Γ_n`, the group of diffeomorphisms of `S^{n−1}`
/// modulo those extending over the disk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaGroup {
    Trivial,
    /// Finite abelian, possibly nonzero.
    FiniteAbelian,
}

/// A finite table of `Γ_n`. Indices not listed are treated as
/// [`GammaGroup::FiniteAbelian`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTable {
    entries: BTreeMap<usize, GammaGroup>,
}

impl GammaTable {
    /// `Γ_n = 0` for `n ≤ 6`; nothing recorded above.
    pub fn standard() -> Self {
        Self {
            entries: (0..=6).map(|n| (n, GammaGroup::Trivial)).collect(),
        }
    }

    pub fn with_entry(mut self, n: usize, g: GammaGroup) -> Self {
        self.entries.insert(n, g);
        self
    }

    pub fn get(&self, n: usize) -> GammaGroup {
        self.entries.get(&n).copied().unwrap_or(GammaGroup::FiniteAbelian)
    }

    pub fn vanishes(&self, n: usize) -> bool {
        self.get(n) == GammaGroup::Trivial
    }
}

impl Default for GammaTable {
    fn default() -> Self {
        Self::standard()
    }
}

/// Smoothing obstructions on the complement of `Σ`. Over a space homotopy
/// equivalent (rel the part already smoothed) to a CW complex of dimension
/// `d`, existence is obstructed in `H^i(−; Γ_{i−1})` and uniqueness in
/// `H^i(−; Γ_i)` for `i ≤ d`, so the indices `0..=d` are consulted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub case: SigmaCase,
    pub cw_dimension_bound: usize,
    pub required_gamma: Vec<usize>,
    pub all_vanish: bool,
    /// Dimension of the dual complex onto which the complement of the
    /// low skeleton retracts.
    pub dual_complex_dim: isize,
    /// The skeleton dimension removed: `max(k − 3, −1)`.
    pub dual_r: isize,
    pub witness_within_bound: bool,
}

/// Nominal CW dimension per case: 1 for a closed circuit, 2 for a relative
/// circuit, 3 for a nullbordism.
pub fn nominal_bound(case: SigmaCase) -> usize {
    match case {
        SigmaCase::A => 1,
        SigmaCase::B => 2,
        SigmaCase::C => 3,
    }
}

pub fn cw_dimension_bound(input: SigmaInput<'_>) -> ObstructionReport {
    cw_dimension_bound_with(input, &GammaTable::standard())
}

pub fn cw_dimension_bound_with(input: SigmaInput<'_>, table: &GammaTable) -> ObstructionReport {
    let case = input.case();
    let bound = nominal_bound(case);
    let r = (input.circuit_dim() as isize - 3).max(-1);
    let dual = dual_complex(input.ambient(), r);
    let required_gamma: Vec<usize> = (0..=bound).collect();
    ObstructionReport {
        case,
        cw_dimension_bound: bound,
        all_vanish: required_gamma.iter().all(|n| table.vanishes(*n)),
        required_gamma,
        dual_complex_dim: dual.dim(),
        dual_r: r,
        witness_within_bound: dual.within_bound() && dual.dim() <= bound as isize,
    }
}
