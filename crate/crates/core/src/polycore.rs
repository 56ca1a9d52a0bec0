//! Exact multivariate polynomials over the rationals.
//!
//! Terms are stored in graded lexicographic order (total degree first), so
//! jet truncation only ever drops a suffix of the term map.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("polynomial does not vanish on {a} = {b}; division leaves a remainder")]
    NonzeroRemainder { a: String, b: String },
    #[error("component {index} has a nonzero constant term")]
    GermViolation { index: usize },
    #[error("arc component {index} has a nonzero constant term")]
    ArcNotAtOrigin { index: usize },
    #[error("arc is identically zero")]
    ConstantArc,
}

/// Exponent vector ordered by total degree, then lexicographically with the
/// first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All monomials in `nvars` variables of total degree exactly `degree`,
    /// in ascending monomial order.
    pub fn of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == nvars {
                prefix.push(left);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in 0..=left {
                prefix.push(e);
                rec(nvars, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial(vec![]));
            }
            return out;
        }
        rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
        out
    }

    /// All monomials of total degree `< bound`, ascending.
    pub fn below_degree(nvars: usize, bound: u32) -> Vec<Monomial> {
        (0..bound)
            .flat_map(|d| Monomial::of_degree(nvars, d))
            .collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn zero(vars: &[String]) -> Self {
        Poly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], c: Rational) -> Self {
        Poly::monomial(vars, Monomial::one(vars.len()), c)
    }

    pub fn var(vars: &[String], index: usize) -> Self {
        Poly::monomial(vars, Monomial::var(vars.len(), index), Rational::one())
    }

    pub fn monomial(vars: &[String], m: Monomial, c: Rational) -> Self {
        assert_eq!(
            m.0.len(),
            vars.len(),
            "exponent length must match variables"
        );
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            vars: vars.to_vec(),
            terms,
        }
    }

    pub fn from_terms<I>(vars: &[String], terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(
            m.0.len(),
            self.vars.len(),
            "exponent length must match variables"
        );
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars()))
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Lowest total degree of a nonzero term (the order at the origin);
    /// `None` stands for +∞, i.e. the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// For a polynomial in one variable this is the usual valuation at 0.
    pub fn valuation(&self) -> Option<u32> {
        self.order()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(&self.vars, Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Drops every term of total degree `>= n`.
    pub fn truncate(&self, n: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .take_while(|(m, _)| m.degree() < n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Horner-style evaluation at a float point: coefficients are converted
    /// once and powers are accumulated incrementally per variable.
    pub fn evaluate(&self, point: &[f64]) -> Result<f64, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        Ok(self.eval_unchecked(point))
    }

    fn eval_unchecked(&self, point: &[f64]) -> f64 {
        let mut sum = 0.0;
        for (m, c) in &self.terms {
            let mut v = c.to_f64().unwrap_or(f64::NAN);
            for (x, &e) in point.iter().zip(&m.0) {
                v *= x.powi(e as i32);
            }
            sum += v;
        }
        sum
    }

    pub fn evaluate_exact(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            sum += v;
        }
        Ok(sum)
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Poly {
        assert!(var < self.nvars(), "variable index out of range");
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[var] -= 1;
            out.add_term(dm, c * rat(e as i64));
        }
        out
    }

    /// Replaces variable `var` by the polynomial `q` (in the same variables).
    pub fn substitute_var(&self, var: usize, q: &Poly) -> Poly {
        let mut powers: Vec<Poly> = vec![Poly::constant(&self.vars, Rational::one())];
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * q;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[var] = 0;
            out = &out + &powers[e].mul_monomial(&rest).scale(c);
        }
        out
    }

    /// Sets variable `var` to the constant `value` (the variable stays in the
    /// variable list with exponent 0 everywhere).
    pub fn substitute_constant(&self, var: usize, value: &Rational) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut rest = m.clone();
            rest.0[var] = 0;
            out.add_term(rest, c * num_traits::pow(value.clone(), e as usize));
        }
        out
    }

    /// Simultaneous substitution x_i := images[i]; all images share a common
    /// target variable list.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly, PolyError> {
        if images.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => return Ok(Poly::constant(&[], self.constant_term())),
        };
        let mut cache: Vec<Vec<Poly>> = images
            .iter()
            .map(|_| vec![Poly::constant(&target, Rational::one())])
            .collect();
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                if e > 0 {
                    term = &term * &cache[i][e];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over a different variable list; `map[i]`
    /// is the position of old variable `i` in `new_vars`.
    pub fn relabel(&self, new_vars: &[String], map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars());
        let mut out = Poly::zero(new_vars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; new_vars.len()];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Exact quotient `q` with `p = (x_a - x_b) * q`.
    ///
    /// Uses the identity x_a^i - x_b^i = (x_a - x_b) Σ_k x_a^k x_b^(i-1-k):
    /// p - p|_{x_a = x_b} is a sum of such slices, and the remainder
    /// p|_{x_a = x_b} must vanish.
    pub fn divide_by_linear(&self, a: usize, b: usize) -> Result<Poly, PolyError> {
        let n = self.nvars();
        if a >= n || b >= n {
            return Err(PolyError::VariableOutOfRange {
                index: a.max(b),
                nvars: n,
            });
        }
        assert_ne!(a, b, "cannot divide by x_a - x_a");
        let mut remainder = Poly::zero(&self.vars);
        let mut quotient = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let i = m.0[a];
            let mut base = m.clone();
            base.0[a] = 0;
            let mut collapsed = base.clone();
            collapsed.0[b] += i;
            remainder.add_term(collapsed, c.clone());
            for k in 0..i {
                let mut e = base.clone();
                e.0[a] += k;
                e.0[b] += i - 1 - k;
                quotient.add_term(e, c.clone());
            }
        }
        if !remainder.is_zero() {
            return Err(PolyError::NonzeroRemainder {
                a: self.vars[a].clone(),
                b: self.vars[b].clone(),
            });
        }
        Ok(quotient)
    }

    /// p(arc_1(s), ..., arc_m(s)), a polynomial in the single variable `s`.
    pub fn substitute_arc(&self, arc: &Arc) -> Result<Poly, PolyError> {
        if arc.components.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                got: arc.components.len(),
            });
        }
        if let Some(mono) = arc.monomial_form() {
            return Ok(self.substitute_monomial_arc(&mono));
        }
        self.compose(&arc.components)
    }

    fn substitute_monomial_arc(&self, mono: &[Option<(Rational, u32)>]) -> Poly {
        let svars = [Arc::PARAM.to_string()];
        let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
        'terms: for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut deg = 0u32;
            for (&e, comp) in m.0.iter().zip(mono) {
                if e == 0 {
                    continue;
                }
                match comp {
                    None => continue 'terms,
                    Some((a, d)) => {
                        if !a.is_one() {
                            coeff *= num_traits::pow(a.clone(), e as usize);
                        }
                        deg += d * e;
                    }
                }
            }
            *acc.entry(deg).or_insert_with(Rational::zero) += coeff;
        }
        Poly::from_terms(&svars, acc.into_iter().map(|(d, c)| (Monomial(vec![d]), c)))
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    fn assert_same_vars(&self, other: &Poly) {
        assert_eq!(
            self.vars, other.vars,
            "polynomials over different variables"
        );
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same_vars(rhs);
        let mut out = Poly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&rat(-1))
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    /// Renders in the map-file grammar, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(k, &e)| {
                        if e == 1 {
                            self.vars[k].clone()
                        } else {
                            format!("{}^{}", self.vars[k], e)
                        }
                    })
                    .collect();
            if factors.is_empty() {
                write_rational(f, &a)?;
            } else {
                if !a.is_one() {
                    write_rational(f, &a)?;
                    write!(f, "*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A polynomial map germ (or a derived map such as Δ̃f, whose minors may
/// have unit constant terms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    vars: Vec<String>,
    components: Vec<Poly>,
}

impl PolyMap {
    /// Builds a germ; every component must vanish at the origin.
    pub fn new(vars: Vec<String>, components: Vec<Poly>) -> Result<Self, PolyError> {
        let map = PolyMap::derived(vars, components)?;
        if let Some(index) = map
            .components
            .iter()
            .position(|c| !c.constant_term().is_zero())
        {
            return Err(PolyError::GermViolation { index });
        }
        Ok(map)
    }

    /// Builds a map without the germ condition.
    pub fn derived(vars: Vec<String>, components: Vec<Poly>) -> Result<Self, PolyError> {
        for c in &components {
            if c.vars() != vars.as_slice() {
                return Err(PolyError::DimensionMismatch {
                    expected: vars.len(),
                    got: c.nvars(),
                });
            }
        }
        Ok(PolyMap { vars, components })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn domain_dim(&self) -> usize {
        self.vars.len()
    }

    pub fn codomain_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn is_germ(&self) -> bool {
        self.components.iter().all(|c| c.constant_term().is_zero())
    }

    pub fn evaluate(&self, point: &[f64]) -> Result<Vec<f64>, PolyError> {
        self.components.iter().map(|c| c.evaluate(point)).collect()
    }

    pub fn partial(&self, var: usize) -> PolyMap {
        PolyMap {
            vars: self.vars.clone(),
            components: self.components.iter().map(|c| c.partial(var)).collect(),
        }
    }

    /// Jacobian as rows of polynomials (one row per component).
    pub fn jacobian(&self) -> Vec<Vec<Poly>> {
        self.components
            .iter()
            .map(|c| (0..self.domain_dim()).map(|j| c.partial(j)).collect())
            .collect()
    }

    pub fn truncate(&self, n: u32) -> PolyMap {
        PolyMap {
            vars: self.vars.clone(),
            components: self.components.iter().map(|c| c.truncate(n)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> PolyMap {
        PolyMap {
            vars: self.vars.clone(),
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Composition with a linear map on the source: x ↦ A x, where `a` is
    /// n×n with rational entries.
    pub fn precompose_linear(&self, a: &[Vec<Rational>]) -> PolyMap {
        let n = self.domain_dim();
        assert_eq!(a.len(), n);
        let images: Vec<Poly> = a
            .iter()
            .map(|row| {
                let mut p = Poly::zero(&self.vars);
                for (j, c) in row.iter().enumerate() {
                    p.add_term(Monomial::var(n, j), c.clone());
                }
                p
            })
            .collect();
        PolyMap {
            vars: self.vars.clone(),
            components: self
                .components
                .iter()
                .map(|c| c.compose(&images).expect("dimension checked"))
                .collect(),
        }
    }

    /// Composition with a linear map on the target: y ↦ B y, `b` is q×p.
    pub fn postcompose_linear(&self, b: &[Vec<Rational>]) -> PolyMap {
        let components = b
            .iter()
            .map(|row| {
                assert_eq!(row.len(), self.codomain_dim());
                let mut acc = Poly::zero(&self.vars);
                for (c, comp) in row.iter().zip(&self.components) {
                    acc = &acc + &comp.scale(c);
                }
                acc
            })
            .collect();
        PolyMap {
            vars: self.vars.clone(),
            components,
        }
    }

    /// Composition f(arc(s)) as one univariate polynomial per component.
    pub fn substitute_arc(&self, arc: &Arc) -> Result<Vec<Poly>, PolyError> {
        self.components
            .iter()
            .map(|c| c.substitute_arc(arc))
            .collect()
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f({}) = (", self.vars.join(","))?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A polynomial curve through the origin, one component per ambient
/// coordinate, parametrized by `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    components: Vec<Poly>,
}

impl Arc {
    pub const PARAM: &'static str = "s";

    pub fn new(components: Vec<Poly>) -> Result<Self, PolyError> {
        for (index, c) in components.iter().enumerate() {
            if c.nvars() != 1 {
                return Err(PolyError::DimensionMismatch {
                    expected: 1,
                    got: c.nvars(),
                });
            }
            if !c.constant_term().is_zero() {
                return Err(PolyError::ArcNotAtOrigin { index });
            }
        }
        if components.iter().all(Poly::is_zero) {
            return Err(PolyError::ConstantArc);
        }
        Ok(Arc { components })
    }

    /// Arc whose i-th component is `c_i s^{d_i}` (`None` for a zero component).
    pub fn monomial(parts: &[Option<(Rational, u32)>]) -> Result<Self, PolyError> {
        let svars = [Arc::PARAM.to_string()];
        let comps = parts
            .iter()
            .map(|p| match p {
                None => Poly::zero(&svars),
                Some((c, d)) => Poly::monomial(&svars, Monomial(vec![*d]), c.clone()),
            })
            .collect();
        Arc::new(comps)
    }

    /// Convenience constructor from integer coefficients.
    pub fn monomial_int(parts: &[(i64, u32)]) -> Result<Self, PolyError> {
        let parts: Vec<_> = parts
            .iter()
            .map(|&(c, d)| if c == 0 { None } else { Some((rat(c), d)) })
            .collect();
        Arc::monomial(&parts)
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// The order of the arc at s = 0: min valuation over components.
    pub fn order(&self) -> u32 {
        self.components
            .iter()
            .filter_map(Poly::valuation)
            .min()
            .expect("arc has a nonzero component")
    }

    /// `Some` when every component is zero or a single term.
    pub fn monomial_form(&self) -> Option<Vec<Option<(Rational, u32)>>> {
        self.components
            .iter()
            .map(|c| match c.num_terms() {
                0 => Some(None),
                1 => {
                    let (m, a) = c.terms().next().unwrap();
                    Some(Some((a.clone(), m.0[0])))
                }
                _ => None,
            })
            .collect()
    }

    /// Concatenation (a(s), b(s)) as an arc in the product space.
    pub fn concat(&self, other: &Arc) -> Arc {
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        Arc { components }
    }

    pub fn difference(&self, other: &Arc) -> Vec<Poly> {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a - b)
            .collect()
    }

    /// Float point of the arc at parameter s.
    pub fn point(&self, s: f64) -> Vec<f64> {
        self.components
            .iter()
            .map(|c| c.evaluate(&[s]).expect("univariate"))
            .collect()
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub fn var_names(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;

    /// Tiny term-list builder: `poly(&["x","y"], &[(3, &[2,1])])` = 3x²y.
    pub fn poly(vars: &[&str], terms: &[(i64, &[u32])]) -> Poly {
        let vars = var_names(vars);
        Poly::from_terms(
            &vars,
            terms.iter().map(|(c, e)| (Monomial(e.to_vec()), rat(*c))),
        )
    }
}
