//! Divided-difference matrix, the maps Δf and Δ̃f, and the double point
//! ideal I²(f).
//!
//! Maps on the double space use the variables (x₁…xₙ, x'₁…x'ₙ) in that
//! order; primed names are the source names with a trailing `'`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg;
use crate::polycore::{rat, Monomial, Poly, PolyError, PolyMap, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DoublePointError {
    #[error("source dimension {n} exceeds target dimension {p}")]
    SourceTooLarge { n: usize, p: usize },
    #[error("map is not in corank-1 normal form: component {index} is not the coordinate {var}")]
    NotInNormalForm { index: usize, var: String },
    #[error("corank-1 reduction needs corank 1, map has corank {0}")]
    CorankNotOne(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Order in which the primed variables are introduced when telescoping
/// f(x') - f(x).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Telescoping {
    #[default]
    LeftToRight,
    RightToLeft,
}

/// p×n matrix with f(x') - f(x) = α(x,x')·(x' - x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaMatrix {
    vars: Vec<String>,
    entries: Vec<Vec<Poly>>,
}

impl AlphaMatrix {
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.vars.len() / 2
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    /// α(x,x) as a matrix over the original n variables.
    pub fn on_diagonal(&self) -> Vec<Vec<Poly>> {
        let n = self.cols();
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| restrict_to_diagonal(e, n)).collect())
            .collect()
    }
}

/// Generators of an ideal in a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGens {
    pub vars: Vec<String>,
    pub generators: Vec<Poly>,
}

impl IdealGens {
    pub fn new(vars: Vec<String>, generators: Vec<Poly>) -> Self {
        IdealGens { vars, generators }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
}

pub fn primed_vars(vars: &[String]) -> Vec<String> {
    vars.iter()
        .cloned()
        .chain(vars.iter().map(|v| format!("{v}'")))
        .collect()
}

/// Lifts `p` (in n variables) to the double space, sending variable `i`
/// to its primed copy whenever `primed(i)`.
fn lift(p: &Poly, double_vars: &[String], primed: impl Fn(usize) -> bool) -> Poly {
    let n = p.nvars();
    let map: Vec<usize> = (0..n).map(|i| if primed(i) { n + i } else { i }).collect();
    p.relabel(double_vars, &map)
}

/// Substitutes x' = x and drops back to the original n variables.
fn restrict_to_diagonal(p: &Poly, n: usize) -> Poly {
    let vars = &p.vars()[..n];
    let map: Vec<usize> = (0..2 * n).map(|i| i % n).collect();
    p.relabel(vars, &map)
}

pub fn build_alpha(f: &PolyMap) -> AlphaMatrix {
    build_alpha_with(f, Telescoping::LeftToRight)
}

pub fn build_alpha_with(f: &PolyMap, order: Telescoping) -> AlphaMatrix {
    let n = f.domain_dim();
    let vars = primed_vars(f.vars());
    let entries = f
        .components()
        .iter()
        .map(|fi| {
            (0..n)
                .map(|j| {
                    // endpoints of the j-th telescoping step
                    let (after, before) = match order {
                        Telescoping::LeftToRight => {
                            (lift(fi, &vars, |i| i <= j), lift(fi, &vars, |i| i < j))
                        }
                        Telescoping::RightToLeft => {
                            (lift(fi, &vars, |i| i >= j), lift(fi, &vars, |i| i > j))
                        }
                    };
                    (&after - &before)
                        .divide_by_linear(n + j, j)
                        .expect("telescoped difference vanishes on x'_j = x_j")
                })
                .collect()
        })
        .collect();
    AlphaMatrix { vars, entries }
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<Poly>], vars: &[String]) -> Poly {
    match m.len() {
        0 => Poly::constant(vars, Rational::one()),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        k => {
            let mut acc = Poly::zero(vars);
            for col in 0..k {
                if m[0][col].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != col)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * &determinant(&sub, vars);
                acc = if col % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// Row subsets of size `k` from `0..p`, lexicographic.
pub fn subsets(p: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, p: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..p {
            cur.push(i);
            rec(i + 1, p, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, p, k, &mut Vec::new(), &mut out);
    out
}

/// All maximal (n×n) minors, rows chosen in lexicographic order.
pub fn minors(a: &AlphaMatrix) -> Vec<Poly> {
    minors_of(a.entries(), a.cols(), a.vars())
}

fn minors_of(entries: &[Vec<Poly>], n: usize, vars: &[String]) -> Vec<Poly> {
    assert!(entries.len() >= n, "need at least as many rows as columns");
    subsets(entries.len(), n)
        .into_iter()
        .map(|rows| {
            let sub: Vec<Vec<Poly>> = rows.iter().map(|&r| entries[r].clone()).collect();
            determinant(&sub, vars)
        })
        .collect()
}

fn check_dims(f: &PolyMap) -> Result<(), DoublePointError> {
    let (n, p) = (f.domain_dim(), f.codomain_dim());
    if n > p {
        return Err(DoublePointError::SourceTooLarge { n, p });
    }
    Ok(())
}

/// Δ̃f(x,x') = (f(x') - f(x), D₁, …, D_r) with r = C(p, n).
pub fn delta_tilde(f: &PolyMap) -> Result<PolyMap, DoublePointError> {
    delta_tilde_with(f, Telescoping::LeftToRight)
}

pub fn delta_tilde_with(f: &PolyMap, order: Telescoping) -> Result<PolyMap, DoublePointError> {
    check_dims(f)?;
    let vars = primed_vars(f.vars());
    let mut comps: Vec<Poly> = f
        .components()
        .iter()
        .map(|fi| &lift(fi, &vars, |_| true) - &lift(fi, &vars, |_| false))
        .collect();
    comps.extend(minors(&build_alpha_with(f, order)));
    Ok(PolyMap::derived(vars, comps)?)
}

/// Δf(x,x') = f(x) - f(x').
pub fn delta(f: &PolyMap) -> PolyMap {
    let vars = primed_vars(f.vars());
    let comps = f
        .components()
        .iter()
        .map(|fi| &lift(fi, &vars, |_| false) - &lift(fi, &vars, |_| true))
        .collect();
    PolyMap::derived(vars, comps).expect("shared variables")
}

pub fn double_point_ideal(f: &PolyMap) -> Result<IdealGens, DoublePointError> {
    double_point_ideal_with(f, Telescoping::LeftToRight)
}

pub fn double_point_ideal_with(
    f: &PolyMap,
    order: Telescoping,
) -> Result<IdealGens, DoublePointError> {
    let dt = delta_tilde_with(f, order)?;
    Ok(IdealGens::new(dt.vars().to_vec(), dt.components().to_vec()))
}

/// Linear part of f at the origin as a rational p×n matrix.
pub fn linear_part(f: &PolyMap) -> Vec<Vec<Rational>> {
    let n = f.domain_dim();
    f.components()
        .iter()
        .map(|c| (0..n).map(|j| c.coeff(&Monomial::var(n, j))).collect())
        .collect()
}

/// n - rank Df(0), computed exactly.
pub fn corank(f: &PolyMap) -> usize {
    f.domain_dim() - linalg::rank(&linear_part(f))
}

/// Maximal minors of the Jacobian, i.e. the minors of α restricted to the
/// diagonal x' = x.
pub fn diagonal_minors(f: &PolyMap) -> Result<PolyMap, DoublePointError> {
    check_dims(f)?;
    let alpha = build_alpha(f);
    let diag = alpha.on_diagonal();
    let comps = minors_of(&diag, f.domain_dim(), f.vars());
    Ok(PolyMap::derived(f.vars().to_vec(), comps)?)
}

/// Corank-1 reduction Δ̃¹f(z, y, u) for f(z, y) = (z, f̃(z, y)):
/// components (f_j(z,u) - f_j(z,y)) / (u - y) for j = n..p.
pub fn corank1_reduce(f: &PolyMap) -> Result<PolyMap, DoublePointError> {
    check_dims(f)?;
    let n = f.domain_dim();
    let vars = f.vars();
    for i in 0..n - 1 {
        if f.components()[i] != Poly::var(vars, i) {
            return Err(DoublePointError::NotInNormalForm {
                index: i,
                var: vars[i].clone(),
            });
        }
    }
    let k = corank(f);
    if k != 1 {
        return Err(DoublePointError::CorankNotOne(k));
    }
    let y = &vars[n - 1];
    let u = if vars.iter().any(|v| v == "u") {
        format!("{y}'")
    } else {
        "u".to_string()
    };
    let mut new_vars = vars.to_vec();
    new_vars.push(u);
    let same: Vec<usize> = (0..n).collect();
    let moved: Vec<usize> = (0..n - 1).chain(std::iter::once(n)).collect();
    let comps = f.components()[n - 1..]
        .iter()
        .map(|fj| {
            let at_u = fj.relabel(&new_vars, &moved);
            let at_y = fj.relabel(&new_vars, &same);
            (&at_u - &at_y).divide_by_linear(n, n - 1)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolyMap::derived(new_vars, comps)?)
}

/// Grad ‖f‖²: component i is 2 Σ_j f_j ∂f_j/∂x_i.
pub fn grad_norm_sq(f: &PolyMap) -> PolyMap {
    let vars = f.vars();
    let two = rat(2);
    let comps = (0..f.domain_dim())
        .map(|i| {
            let mut acc = Poly::zero(vars);
            for fj in f.components() {
                acc = &acc + &(fj * &fj.partial(i));
            }
            acc.scale(&two)
        })
        .collect();
    PolyMap::new(vars.to_vec(), comps).expect("gradient of a germ vanishes at 0")
}

/// True when some generator has a nonzero constant term.
pub fn has_unit(gens: &[Poly]) -> bool {
    gens.iter().any(|g| !g.constant_term().is_zero())
}
