//! Exact linear algebra over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::polycore::Rational;

/// Sparse row: strictly increasing column indices with nonzero entries.
pub type SparseRow = Vec<(usize, Rational)>;

/// Row echelon form built incrementally. Every stored row has leading
/// coefficient 1 and a distinct leading (smallest) column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

fn axpy(row: &SparseRow, factor: &Rational, pivot: &SparseRow) -> SparseRow {
    // row - factor * pivot
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, -(factor * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - factor * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces the leading terms of `row` against the stored pivots.
    /// Returns the reduced row (empty when `row` lies in the span).
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some((lead, coeff)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(pivot) => row = axpy(&row, &coeff, pivot),
                None => break,
            }
        }
        row
    }

    /// Inserts a row; returns true when it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.reduce(row);
        let Some((lead, coeff)) = row.first().cloned() else {
            return false;
        };
        let row = if coeff.is_one() {
            row
        } else {
            let inv = coeff.recip();
            row.into_iter().map(|(c, v)| (c, v * &inv)).collect()
        };
        self.pivots.insert(lead, row);
        true
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Rank of a dense rational matrix.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        let sparse: SparseRow = r
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        ech.insert(sparse);
    }
    ech.rank()
}

/// Solves the small dense system `a x = b` by Gaussian elimination with
/// partial pivoting. Returns `None` when `a` is numerically singular.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            if factor != 0.0 {
                for c in col..n {
                    a[r][c] -= factor * a[col][c];
                }
                b[r] -= factor * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for j in i + 1..n {
            s -= a[i][j] * x[j];
        }
        x[i] = s / a[i][i];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}
