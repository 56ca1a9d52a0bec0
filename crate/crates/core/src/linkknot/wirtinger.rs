//! Wirtinger presentation of the knot group and its abelianization.

use std::fmt;

use super::diagram::KnotDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }
}

/// Group presentation with generators x1..xn and relators as words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Vec<Letter>>,
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.generators).map(|i| format!("x{i}")).collect();
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|w| {
                w.iter()
                    .map(|l| {
                        if l.inverse {
                            format!("x{}^-1", l.generator + 1)
                        } else {
                            format!("x{}", l.generator + 1)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "<{} | {}>", gens.join(", "), rels.join(", "))
    }
}

/// Over, incoming-under and outgoing-under arc of every crossing.
pub(crate) fn crossing_arcs(d: &KnotDiagram) -> Vec<(usize, usize, usize)> {
    let n = d.crossing_count();
    let len = d.sequence.len();
    let Some(first_under) = d.sequence.iter().position(|e| !e.over) else {
        return Vec::new();
    };
    let mut arcs = vec![(0, 0, 0); n];
    let mut arc = 0;
    for k in 1..=len {
        let e = d.sequence[(first_under + k) % len];
        if e.over {
            arcs[e.crossing].0 = arc;
        } else {
            arcs[e.crossing].1 = arc;
            arc = (arc + 1) % n;
            arcs[e.crossing].2 = arc;
        }
    }
    arcs
}

/// One generator per arc and one relator per crossing: x_out = x_o x_in x_o⁻¹
/// at a positive crossing and x_out = x_o⁻¹ x_in x_o at a negative one. The
/// last relator follows from the others and is dropped.
pub fn wirtinger_presentation(d: &KnotDiagram) -> GroupPresentation {
    let n = d.crossing_count();
    if n == 0 {
        return GroupPresentation {
            generators: 1,
            relators: Vec::new(),
        };
    }
    let relators = crossing_arcs(d)
        .iter()
        .zip(&d.crossings)
        .take(n - 1)
        .map(|(&(o, i, j), c)| {
            let pos = c.sign > 0;
            vec![
                Letter::new(o, !pos),
                Letter::new(i, false),
                Letter::new(o, pos),
                Letter::new(j, true),
            ]
        })
        .collect();
    GroupPresentation {
        generators: n,
        relators,
    }
}

/// Abelianized group as (free rank, torsion coefficients > 1), via the
/// Smith normal form of the exponent-sum matrix.
pub fn abelianization(p: &GroupPresentation) -> (usize, Vec<i64>) {
    let mut m: Vec<Vec<i64>> = p
        .relators
        .iter()
        .map(|w| {
            let mut row = vec![0; p.generators];
            for l in w {
                row[l.generator] += if l.inverse { -1 } else { 1 };
            }
            row
        })
        .collect();
    let diag = smith_diagonal(&mut m, p.generators);
    let rank = diag.iter().filter(|&&d| d != 0).count();
    let torsion = diag.into_iter().filter(|&d| d > 1).collect();
    (p.generators - rank, torsion)
}

/// Diagonal of the Smith normal form, entries made nonnegative.
fn smith_diagonal(m: &mut [Vec<i64>], cols: usize) -> Vec<i64> {
    let rows = m.len();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return diag;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                for j in t..cols {
                    m[i][j] -= q * m[t][j];
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                for i in t..rows {
                    m[i][j] -= q * m[i][t];
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility of the rest of the block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| m[i][j] % p != 0);
            if let Some((i, _)) = bad {
                for j in t..cols {
                    m[t][j] += m[i][j];
                }
                continue;
            }
            diag.push(p.abs());
            break;
        }
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkknot::alexander::{bareiss_det, interpolate};
    use crate::linkknot::{alexander_polynomial, LaurentPoly};
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn knots() -> Vec<KnotDiagram> {
        vec![
            KnotDiagram::from_gauss(&[1, -2, 3, -1, 2, -3], &[1, 1, 1]),
            KnotDiagram::from_gauss(&[-1, -2, 3, -4, -5, 1, 4, -3, 2, 5], &[-1, 1, 1, 1, -1]),
        ]
    }

    #[test]
    fn knot_groups_abelianize_to_z() {
        for d in knots() {
            let p = wirtinger_presentation(&d);
            assert_eq!(p.generators, d.crossing_count());
            assert_eq!(p.relators.len(), d.crossing_count() - 1);
            assert_eq!(abelianization(&p), (1, vec![]));
        }
        let unknot = KnotDiagram::from_gauss(&[], &[]);
        assert_eq!(
            abelianization(&wirtinger_presentation(&unknot)),
            (1, vec![])
        );
    }

    #[test]
    fn smith_form_torsion() {
        let p = GroupPresentation {
            generators: 2,
            relators: vec![
                vec![Letter::new(0, false), Letter::new(0, false)],
                vec![Letter::new(1, false); 3],
            ],
        };
        let (free, mut tors) = abelianization(&p);
        tors.sort();
        assert_eq!(free, 0);
        assert_eq!(tors, vec![6]);
    }

    /// Fox derivatives of the relators at integer t give an Alexander
    /// matrix independent of the crossing-row construction.
    fn fox_alexander(p: &GroupPresentation) -> LaurentPoly {
        let n = p.generators;
        if n <= 1 {
            return LaurentPoly::one();
        }
        let xs: Vec<BigInt> = (2..=4 * n as i64 + 1).map(BigInt::from).collect();
        let shift = 2u32;
        let ys: Vec<BigInt> = xs
            .iter()
            .map(|t| {
                let mut m = vec![vec![BigInt::zero(); n - 1]; n - 1];
                for (r, w) in p.relators.iter().enumerate() {
                    // entries scaled by t^shift so negative powers clear
                    let mut prefix: i64 = 0;
                    for l in w {
                        if l.inverse {
                            prefix -= 1;
                        }
                        if l.generator < n - 1 {
                            let e = (prefix + shift as i64) as u32;
                            let v = t.pow(e);
                            if l.inverse {
                                m[r][l.generator] -= v;
                            } else {
                                m[r][l.generator] += v;
                            }
                        }
                        if !l.inverse {
                            prefix += 1;
                        }
                    }
                }
                bareiss_det(m)
            })
            .collect();
        LaurentPoly::new(interpolate(&xs, &ys))
    }

    #[test]
    fn fox_calculus_agrees() {
        for d in knots() {
            let fox = fox_alexander(&wirtinger_presentation(&d));
            assert_eq!(fox, alexander_polynomial(&d));
        }
    }

    #[test]
    fn display() {
        let d = KnotDiagram::from_gauss(&[1, -2, 3, -1, 2, -3], &[1, 1, 1]);
        let s = wirtinger_presentation(&d).to_string();
        assert!(s.starts_with("<x1, x2, x3 | "));
    }
}
