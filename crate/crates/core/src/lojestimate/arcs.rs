//! Exact exponents along analytic arcs.

use std::fmt;

use num_integer::Integer;

use crate::polycore::{rat_frac, Arc, Poly, PolyError, PolyMap, Rational};

/// val(g∘γ) / ord(γ), or +∞ when g vanishes identically along γ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ArcExponent {
    Finite(Rational),
    Infinite,
}

impl ArcExponent {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ArcExponent::Finite(r) => Some(r),
            ArcExponent::Infinite => None,
        }
    }
}

impl fmt::Display for ArcExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcExponent::Finite(r) => write!(f, "{r}"),
            ArcExponent::Infinite => write!(f, "inf"),
        }
    }
}

fn min_valuation(polys: &[Poly]) -> Option<u32> {
    polys.iter().filter_map(Poly::valuation).min()
}

pub fn arc_exponent(g: &PolyMap, arc: &Arc) -> Result<ArcExponent, PolyError> {
    let along = g.substitute_arc(arc)?;
    Ok(match min_valuation(&along) {
        Some(v) => ArcExponent::Finite(rat_frac(v as i64, arc.order() as i64)),
        None => ArcExponent::Infinite,
    })
}

/// Exponent of a pair of arcs given as one arc (γ, γ') in the doubled
/// variables: val(Δf∘(γ, γ')) / val(γ - γ'), with `delta` = Δf.
/// Returns `None` when the two halves coincide.
pub fn pair_exponent(delta: &PolyMap, doubled: &Arc) -> Result<Option<ArcExponent>, PolyError> {
    let n = doubled.dim() / 2;
    let c = doubled.components();
    let diff: Vec<Poly> = c[..n].iter().zip(&c[n..]).map(|(a, b)| a - b).collect();
    let Some(sep) = min_valuation(&diff) else {
        return Ok(None);
    };
    let along = delta.substitute_arc(doubled)?;
    Ok(Some(match min_valuation(&along) {
        Some(v) => ArcExponent::Finite(rat_frac(v as i64, sep as i64)),
        None => ArcExponent::Infinite,
    }))
}

/// Largest monomial degree used by the automatic pool in `dim` variables.
pub fn pool_degree(dim: usize) -> u32 {
    match dim {
        0..=2 => 6,
        3 => 4,
        4 => 3,
        _ => 2,
    }
}

/// Coordinate patterns: each entry is 0 or (±1, d) with 1 ≤ d ≤ `max_deg`,
/// not all zero, with coprime degrees (other patterns reparametrize these).
fn patterns(dim: usize, max_deg: u32) -> Vec<Vec<(i64, u32)>> {
    let choices: Vec<(i64, u32)> = std::iter::once((0, 0))
        .chain((1..=max_deg).flat_map(|d| [(1, d), (-1, d)]))
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; dim];
    loop {
        let parts: Vec<(i64, u32)> = idx.iter().map(|&i| choices[i]).collect();
        let g = parts
            .iter()
            .filter(|(c, _)| *c != 0)
            .fold(0u32, |g, (_, d)| g.gcd(d));
        if g == 1 {
            out.push(parts);
        }
        let mut k = 0;
        loop {
            if k == dim {
                return out;
            }
            idx[k] += 1;
            if idx[k] < choices.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Monomial arcs x_i = ±s^d (or 0) in `dim` variables: coordinate axes,
/// ±1 diagonals and curved arcs such as (-s², s, -s).
pub fn monomial_pool(dim: usize) -> Vec<Arc> {
    patterns(dim, pool_degree(dim))
        .iter()
        .map(|p| Arc::monomial_int(p).expect("nonconstant monomial arc"))
        .collect()
}

/// Pairs (γ, γ') of monomial arcs in n variables with γ ≠ γ', as arcs in
/// the 2n doubled variables.
pub fn monomial_pair_pool(n: usize) -> Vec<Arc> {
    patterns(2 * n, pool_degree(2 * n))
        .into_iter()
        .filter(|p| p[..n] != p[n..])
        .map(|p| Arc::monomial_int(&p).expect("nonconstant monomial arc"))
        .collect()
}

/// Best (largest) exponent over `arcs`, with the arc attaining it.
pub fn best_arc<'a>(
    g: &PolyMap,
    arcs: impl IntoIterator<Item = &'a Arc>,
) -> Result<Option<(ArcExponent, Arc)>, PolyError> {
    let mut best: Option<(ArcExponent, Arc)> = None;
    for a in arcs {
        let e = arc_exponent(g, a)?;
        if best.as_ref().is_none_or(|(b, _)| e > *b) {
            let done = e == ArcExponent::Infinite;
            best = Some((e, a.clone()));
            if done {
                break;
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doublepoint::{corank1_reduce, delta};
    use crate::polycore::testutil::poly;
    use crate::polycore::{rat, var_names};

    const XY: &[&str] = &["x", "y"];

    fn map(vars: &[&str], comps: Vec<Poly>) -> PolyMap {
        PolyMap::new(var_names(vars), comps).unwrap()
    }

    fn cusp_family(t: i64) -> PolyMap {
        map(
            XY,
            vec![
                poly(XY, &[(1, &[1, 0])]),
                poly(XY, &[(1, &[0, 2])]),
                poly(XY, &[(1, &[0, 3])]),
                poly(XY, &[(1, &[3, 1]), (t, &[2, 1])]),
            ],
        )
    }

    fn quintic_family(t: i64) -> PolyMap {
        map(
            XY,
            vec![
                poly(XY, &[(1, &[1, 0])]),
                poly(XY, &[(1, &[0, 2])]),
                poly(XY, &[(1, &[4, 1]), (t, &[1, 3])]),
                poly(XY, &[(1, &[0, 5]), (t, &[1, 3])]),
            ],
        )
    }

    #[test]
    fn homogeneous_along_diagonal() {
        let g = map(
            XY,
            vec![poly(XY, &[(1, &[4, 0])]), poly(XY, &[(1, &[0, 4])])],
        );
        let e = arc_exponent(&g, &Arc::monomial_int(&[(1, 1), (1, 1)]).unwrap()).unwrap();
        assert_eq!(e, ArcExponent::Finite(rat(4)));
    }

    #[test]
    fn known_arcs() {
        let x_axis = Arc::monomial_int(&[(1, 1), (0, 0), (0, 0)]).unwrap();
        let g1 = corank1_reduce(&cusp_family(1)).unwrap();
        assert_eq!(
            arc_exponent(&g1, &x_axis).unwrap(),
            ArcExponent::Finite(rat(2))
        );
        let g0 = corank1_reduce(&cusp_family(0)).unwrap();
        assert_eq!(
            arc_exponent(&g0, &x_axis).unwrap(),
            ArcExponent::Finite(rat(3))
        );
        let curve = Arc::monomial_int(&[(-1, 2), (1, 1), (-1, 1)]).unwrap();
        let g = corank1_reduce(&quintic_family(1)).unwrap();
        assert_eq!(
            arc_exponent(&g, &curve).unwrap(),
            ArcExponent::Finite(rat(4))
        );
    }

    #[test]
    fn zero_set_arc_is_infinite() {
        let g = map(XY, vec![poly(XY, &[(1, &[0, 1])])]);
        let e = arc_exponent(&g, &Arc::monomial_int(&[(1, 1), (0, 0)]).unwrap()).unwrap();
        assert_eq!(e, ArcExponent::Infinite);
    }

    #[test]
    fn fractional_exponent() {
        // (x^3, y) along (s^2, s^3): valuations 6 and 3 over order 2
        let g = map(
            XY,
            vec![poly(XY, &[(1, &[3, 0])]), poly(XY, &[(1, &[0, 1])])],
        );
        let e = arc_exponent(&g, &Arc::monomial_int(&[(1, 2), (1, 3)]).unwrap()).unwrap();
        assert_eq!(e, ArcExponent::Finite(rat_frac(3, 2)));
        let e = arc_exponent(&g, &Arc::monomial_int(&[(1, 1), (1, 3)]).unwrap()).unwrap();
        assert_eq!(e, ArcExponent::Finite(rat(3)));
        let e = arc_exponent(&g, &Arc::monomial_int(&[(1, 3), (1, 2)]).unwrap()).unwrap();
        assert_eq!(e, ArcExponent::Finite(rat_frac(2, 2)));
    }

    #[test]
    fn pool_contents() {
        let p = monomial_pool(3);
        assert!(p.contains(&Arc::monomial_int(&[(-1, 2), (1, 1), (-1, 1)]).unwrap()));
        assert!(p.contains(&Arc::monomial_int(&[(1, 1), (0, 0), (0, 0)]).unwrap()));
        assert!(!p.contains(&Arc::monomial_int(&[(1, 2), (0, 0), (0, 0)]).unwrap()));
        assert_eq!(monomial_pool(1).len(), 2);
    }

    #[test]
    fn pool_recovers_regression_exponents() {
        let pool = monomial_pool(3);
        let cases = [
            (cusp_family(1), 2),
            (cusp_family(0), 3),
            (quintic_family(1), 4),
            (quintic_family(0), 4),
        ];
        for (f, want) in cases {
            let g = corank1_reduce(&f).unwrap();
            let (e, _) = best_arc(&g, &pool).unwrap().unwrap();
            assert_eq!(e, ArcExponent::Finite(rat(want)), "{f}");
        }
    }

    #[test]
    fn pair_exponents() {
        let f = map(
            XY,
            vec![
                poly(XY, &[(1, &[1, 0])]),
                poly(XY, &[(1, &[0, 2])]),
                poly(XY, &[(1, &[0, 5])]),
                Poly::zero(&var_names(XY)),
            ],
        );
        let d = delta(&f);
        let a = Arc::monomial_int(&[(0, 0), (1, 1)]).unwrap();
        let b = Arc::monomial_int(&[(0, 0), (-1, 1)]).unwrap();
        let ab = a.concat(&b);
        assert_eq!(
            pair_exponent(&d, &ab).unwrap(),
            Some(ArcExponent::Finite(rat(5)))
        );
        assert_eq!(pair_exponent(&d, &a.concat(&a)).unwrap(), None);
        // one point fixed at the origin
        let ao = Arc::monomial_int(&[(0, 0), (1, 1), (0, 0), (0, 0)]).unwrap();
        assert_eq!(
            pair_exponent(&d, &ao).unwrap(),
            Some(ArcExponent::Finite(rat(2)))
        );
        let pool = monomial_pair_pool(2);
        assert!(pool.contains(&ab));
        assert!(!pool.contains(&a.concat(&a)));
    }
}
