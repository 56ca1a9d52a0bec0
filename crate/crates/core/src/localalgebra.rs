//! Dimension of the local quotient ℰ/I by degree-truncated exact linear
//! algebra.
//!
//! For N ≥ 1 let d_N = dim ℰ/(I + 𝔐^N). The space I + 𝔐^N is spanned
//! modulo 𝔐^N by truncations trunc_N(m·g) with deg(m) + val(g) < N, so d_N
//! is the number of monomials of degree < N minus the rank of those
//! truncations. If d_N = d_{N+1} then 𝔐^N ⊆ I + 𝔐^{N+1}, and Nakayama's
//! lemma gives 𝔐^N ⊆ I; hence d_N = dim ℰ/I. That equality is the only
//! certificate of finiteness we ever report.

use std::collections::HashMap;

use crate::doublepoint::IdealGens;
use crate::linalg::{Echelon, SparseRow};
use crate::polycore::{Monomial, Poly};

pub const DEFAULT_N_MAX: u32 = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimStatus {
    Finite(u64),
    Unstabilized { lower_bound: u64, n_max: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimResult {
    pub status: DimStatus,
    /// (N, d_N) for N = 1, 2, ...
    pub trace: Vec<(u32, u64)>,
}

impl DimResult {
    pub fn finite(&self) -> Option<u64> {
        match self.status {
            DimStatus::Finite(d) => Some(d),
            DimStatus::Unstabilized { .. } => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite().is_some()
    }
}

/// Monomials of degree < `level`, sorted by degree, with their column index.
struct Columns {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Columns {
    fn new(nvars: usize, level: u32) -> Self {
        let mut monomials = Monomial::below_degree(nvars, level);
        monomials.sort();
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Columns { monomials, index }
    }

    /// Number of monomials of each degree < level.
    fn count_by_degree(&self, level: u32) -> Vec<u64> {
        let mut counts = vec![0u64; level as usize];
        for m in &self.monomials {
            counts[m.degree() as usize] += 1;
        }
        counts
    }

    fn row(&self, g: &Poly, m: &Monomial, level: u32) -> SparseRow {
        let mut row: SparseRow = g
            .terms()
            .filter_map(|(gm, c)| {
                let prod = gm.mul(m);
                (prod.degree() < level).then(|| (self.index[&prod], c.clone()))
            })
            .collect();
        row.sort_by_key(|(c, _)| *c);
        row
    }
}

/// d_N for N = 1..=level, from a single echelon form at truncation `level`.
///
/// Columns are ordered by degree and each pivot is the lowest column of its
/// row, so the rows whose pivot has degree < N span trunc_N of the whole
/// space, which equals the level-N space.
fn dims_up_to(gens: &[(Poly, u32)], nvars: usize, level: u32) -> Vec<u64> {
    let cols = Columns::new(nvars, level);
    let mut ech = Echelon::new();
    for mdeg in 0..level {
        let mults = Monomial::of_degree(nvars, mdeg);
        for (g, val) in gens {
            if mdeg + val >= level {
                continue;
            }
            for m in &mults {
                ech.insert(cols.row(g, m, level));
            }
        }
    }
    let mono = cols.count_by_degree(level);
    let mut piv = vec![0u64; level as usize];
    for c in ech.pivot_columns() {
        piv[cols.monomials[c].degree() as usize] += 1;
    }
    let mut out = Vec::with_capacity(level as usize);
    let (mut total, mut rank) = (0u64, 0u64);
    for d in 0..level as usize {
        total += mono[d];
        rank += piv[d];
        out.push(total - rank);
    }
    out
}

/// Levels tried in turn; the last one is always `n_max`.
fn levels(n_max: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (1..)
        .map(|k| 1 + 3 * k)
        .take_while(|&l| l < n_max)
        .collect();
    out.push(n_max);
    out
}

/// dim ℰ/I for the ideal generated by `ideal.generators` in the local ring
/// at the origin, examining degrees up to `n_max`.
pub fn quotient_dim(ideal: &IdealGens, n_max: u32) -> DimResult {
    let n_max = n_max.max(2);
    let gens: Vec<(Poly, u32)> = ideal
        .generators
        .iter()
        .filter_map(|g| g.valuation().map(|v| (g.clone(), v)))
        .collect();
    let nvars = ideal.nvars();
    let mut dims = Vec::new();
    for level in levels(n_max) {
        dims = dims_up_to(&gens, nvars, level);
        if let Some(i) = dims.windows(2).position(|w| w[0] == w[1]) {
            return DimResult {
                status: DimStatus::Finite(dims[i]),
                trace: trace(&dims[..i + 2]),
            };
        }
    }
    DimResult {
        status: DimStatus::Unstabilized {
            lower_bound: *dims.last().expect("n_max >= 2"),
            n_max,
        },
        trace: trace(&dims),
    }
}

/// d_N for every N = 1..=level without the stopping rule.
pub fn truncated_dims(ideal: &IdealGens, level: u32) -> Vec<(u32, u64)> {
    let gens: Vec<(Poly, u32)> = ideal
        .generators
        .iter()
        .filter_map(|g| g.valuation().map(|v| (g.clone(), v)))
        .collect();
    trace(&dims_up_to(&gens, ideal.nvars(), level))
}

fn trace(dims: &[u64]) -> Vec<(u32, u64)> {
    dims.iter()
        .enumerate()
        .map(|(i, &d)| (i as u32 + 1, d))
        .collect()
}
