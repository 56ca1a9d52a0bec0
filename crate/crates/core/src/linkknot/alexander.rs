//! Alexander polynomial and determinant of a knot diagram.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::diagram::KnotDiagram;
use super::wirtinger::crossing_arcs;

/// Integer Laurent polynomial in t, stored as coefficients of t^0, t^1, ...
/// after shifting the lowest exponent to 0 and making the top coefficient
/// positive. This is the normal form of Δ up to ±t^k.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let low = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..low);
        if coeffs.last().is_some_and(Signed::is_negative) {
            for c in &mut coeffs {
                *c = -&*c;
            }
        }
        LaurentPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree_span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Palindromic up to sign, as every Alexander polynomial of a knot is.
    pub fn is_symmetric(&self) -> bool {
        let rev: Vec<BigInt> = self.coeffs.iter().rev().cloned().collect();
        rev == self.coeffs || rev.iter().zip(&self.coeffs).all(|(a, b)| a == &-b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly { coeffs: Vec::new() };
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let show_mag = e == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Fraction-free Gaussian elimination.
pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Coefficients of the polynomial of degree < xs.len() through the points.
pub(crate) fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Vec<BigInt> {
    let n = xs.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial l_i
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let xj = BigRational::from_integer(xs[j].clone());
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &xj;
            }
            basis = next;
            denom *= BigRational::from_integer(&xs[i] - &xs[j]);
        }
        let scale = BigRational::from_integer(ys[i].clone()) / denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    coeffs
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

/// Rows of the Alexander matrix as (column, constant part, t part), one
/// row per crossing, one column per arc.
fn alexander_rows(d: &KnotDiagram) -> Vec<Vec<(usize, i64, i64)>> {
    let arcs = crossing_arcs(d);
    d.crossings
        .iter()
        .enumerate()
        .map(|(c, x)| {
            let (over, inc, out) = arcs[c];
            // positive: (1 - t) over + t in - out; negative is the negation of
            // (1 - t) over - in + t out
            if x.sign > 0 {
                vec![(over, 1, -1), (inc, 0, 1), (out, -1, 0)]
            } else {
                vec![(over, -1, 1), (inc, 1, 0), (out, 0, -1)]
            }
        })
        .collect()
}

/// Δ(t) from the diagram: the (n-1)-minor of the Alexander matrix,
/// evaluated at integer points with exact arithmetic and interpolated.
pub fn alexander_polynomial(d: &KnotDiagram) -> LaurentPoly {
    let n = d.crossing_count();
    if n <= 1 {
        return LaurentPoly::one();
    }
    let rows = alexander_rows(d);
    let xs: Vec<BigInt> = (2..=n as i64 + 1).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|t| {
            let mut m = vec![vec![BigInt::zero(); n - 1]; n - 1];
            for (r, row) in rows.iter().take(n - 1).enumerate() {
                for &(col, a, b) in row {
                    if col < n - 1 {
                        m[r][col] += BigInt::from(a) + BigInt::from(b) * t;
                    }
                }
            }
            bareiss_det(m)
        })
        .collect();
    LaurentPoly::new(interpolate(&xs, &ys))
}

/// |Δ(-1)|.
pub fn knot_determinant(p: &LaurentPoly) -> BigInt {
    p.eval(&BigInt::from(-1)).abs()
}

/// Δ(t) from a PD code, through the same arc relations read off the edge
/// labels. Used to cross-check the Gauss code route.
pub fn alexander_from_pd(pd: &[[usize; 4]]) -> LaurentPoly {
    let n = pd.len();
    if n <= 1 {
        return LaurentPoly::one();
    }
    let edges = 2 * n;
    // union edges joined through over-passages into arcs
    let mut parent: Vec<usize> = (0..=edges).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let over_pair = |x: &[usize; 4]| {
        // the under strand is x[0] -> x[2]; the over strand is x[1], x[3]
        (x[1], x[3])
    };
    for x in pd {
        let (a, b) = over_pair(x);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let mut arc_of = vec![usize::MAX; edges + 1];
    let mut count = 0;
    for e in 1..=edges {
        let r = find(&mut parent, e);
        if arc_of[r] == usize::MAX {
            arc_of[r] = count;
            count += 1;
        }
        arc_of[e] = arc_of[r];
    }
    let succ = |e: usize| e % edges + 1;
    let rows: Vec<Vec<(usize, i64, i64)>> = pd
        .iter()
        .map(|x| {
            let over = arc_of[x[1]];
            let (uin, uout) = (arc_of[x[0]], arc_of[x[2]]);
            // x[3] follows x[1] for a positive crossing
            if succ(x[3]) == x[1] {
                vec![(over, 1, -1), (uin, 0, 1), (uout, -1, 0)]
            } else {
                vec![(over, -1, 1), (uin, 1, 0), (uout, 0, -1)]
            }
        })
        .collect();
    let xs: Vec<BigInt> = (2..=n as i64 + 1).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|t| {
            let mut m = vec![vec![BigInt::zero(); n - 1]; n - 1];
            for (r, row) in rows.iter().take(n - 1).enumerate() {
                for &(col, a, b) in row {
                    if col < n - 1 {
                        m[r][col] += BigInt::from(a) + BigInt::from(b) * t;
                    }
                }
            }
            laplace_det(&m)
        })
        .collect();
    LaurentPoly::new(interpolate(&xs, &ys))
}

/// Cofactor expansion along the first row.
fn laplace_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * laplace_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trefoil() -> KnotDiagram {
        KnotDiagram::from_gauss(&[1, -2, 3, -1, 2, -3], &[1, 1, 1])
    }

    fn figure_eight() -> KnotDiagram {
        KnotDiagram::from_gauss(&[-1, -2, 3, -4, -5, 1, 4, -3, 2, 5], &[-1, 1, 1, 1, -1])
    }

    #[test]
    fn display() {
        assert_eq!(
            LaurentPoly::from_i64(&[1, -1, 1]).to_string(),
            "t^2 - t + 1"
        );
        assert_eq!(
            LaurentPoly::from_i64(&[0, -1, 3, -1]).to_string(),
            "t^2 - 3t + 1"
        );
        assert_eq!(LaurentPoly::one().to_string(), "1");
        assert_eq!(LaurentPoly::from_i64(&[2, 0, -2]).to_string(), "2t^2 - 2");
    }

    #[test]
    fn standard_knots() {
        assert_eq!(
            alexander_polynomial(&trefoil()),
            LaurentPoly::from_i64(&[1, -1, 1])
        );
        assert_eq!(
            alexander_polynomial(&figure_eight()),
            LaurentPoly::from_i64(&[1, -3, 1])
        );
        assert_eq!(
            knot_determinant(&alexander_polynomial(&trefoil())),
            BigInt::from(3)
        );
        assert_eq!(
            knot_determinant(&alexander_polynomial(&figure_eight())),
            BigInt::from(5)
        );
    }

    #[test]
    fn mirror_has_same_polynomial() {
        let mirror = KnotDiagram::from_gauss(&[-1, 2, -3, 1, -2, 3], &[-1, -1, -1]);
        assert_eq!(
            alexander_polynomial(&mirror),
            alexander_polynomial(&trefoil())
        );
    }

    #[test]
    fn pd_route_agrees() {
        for d in [trefoil(), figure_eight()] {
            assert_eq!(alexander_from_pd(&d.pd_code()), alexander_polynomial(&d));
        }
    }

    #[test]
    fn bareiss_matches_laplace() {
        let m: Vec<Vec<BigInt>> = [[2, -1, 0, 3], [1, 4, -2, 0], [0, 5, 1, -1], [7, 0, 2, 2]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        assert_eq!(bareiss_det(m.clone()), laplace_det(&m));
    }

    #[test]
    fn interpolation_roundtrip() {
        let xs: Vec<BigInt> = (0..4).map(BigInt::from).collect();
        let ys: Vec<BigInt> = xs
            .iter()
            .map(|x| x * x * x - BigInt::from(2) * x + 5)
            .collect();
        let c = interpolate(&xs, &ys);
        assert_eq!(c, [5, -2, 0, 1].map(BigInt::from).to_vec());
    }

    proptest! {
        #[test]
        fn bareiss_is_laplace(entries in proptest::collection::vec(-5i64..=5, 25)) {
            let m: Vec<Vec<BigInt>> = entries.chunks(5).map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            prop_assert_eq!(bareiss_det(m.clone()), laplace_det(&m));
        }

        #[test]
        fn normal_form_ignores_units(coeffs in proptest::collection::vec(-4i64..=4, 1..6), shift in 0usize..4, neg: bool) {
            let mut shifted = vec![0i64; shift];
            shifted.extend(coeffs.iter().map(|&c| if neg { -c } else { c }));
            prop_assert_eq!(LaurentPoly::from_i64(&shifted), LaurentPoly::from_i64(&coeffs));
        }
    }
}
