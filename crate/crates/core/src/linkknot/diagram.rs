//! Knot diagrams: generic projection of a link curve, Gauss and PD codes,
//! Reidemeister I/II simplification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LinkConfig, LinkCurve, LinkError};

/// Genericity tolerance, relative to the diagram size.
const GENERIC_TOL: f64 = 1e-6;
const POLE_CANDIDATES: usize = 4000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// +1 for a right-handed crossing, -1 otherwise.
    pub sign: i8,
}

/// One passage of the curve through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    pub crossing: usize,
    pub over: bool,
}

/// Planar picture of the projection, kept for rendering.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagramGeometry {
    pub points: Vec<[f64; 2]>,
    /// Positions of the under-passages as segment index + fraction.
    pub unders: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KnotDiagram {
    pub crossings: Vec<Crossing>,
    /// Events in the order the oriented curve meets them. Every crossing
    /// appears exactly twice, once over and once under.
    pub sequence: Vec<Event>,
    pub geometry: Option<DiagramGeometry>,
}

impl KnotDiagram {
    /// Diagram from a signed Gauss code: +k is an over-passage of crossing
    /// k, -k an under-passage, crossings numbered from 1.
    pub fn from_gauss(code: &[i64], signs: &[i8]) -> Self {
        let sequence = code
            .iter()
            .map(|&c| Event {
                crossing: (c.unsigned_abs() - 1) as usize,
                over: c > 0,
            })
            .collect();
        KnotDiagram {
            crossings: signs.iter().map(|&sign| Crossing { sign }).collect(),
            sequence,
            geometry: None,
        }
        .canonical()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    pub fn gauss_code(&self) -> Vec<i64> {
        self.sequence
            .iter()
            .map(|e| {
                let k = e.crossing as i64 + 1;
                if e.over {
                    k
                } else {
                    -k
                }
            })
            .collect()
    }

    pub fn signs(&self) -> Vec<i8> {
        self.crossings.iter().map(|c| c.sign).collect()
    }

    /// PD code. Edge k (1-based) enters event k-1; each tuple starts at the
    /// incoming under edge and runs counterclockwise.
    pub fn pd_code(&self) -> Vec<[usize; 4]> {
        let len = self.sequence.len();
        let edge_in = |i: usize| i + 1;
        let edge_out = |i: usize| (i + 1) % len + 1;
        let mut under = vec![0; self.crossings.len()];
        let mut over = vec![0; self.crossings.len()];
        for (i, e) in self.sequence.iter().enumerate() {
            if e.over {
                over[e.crossing] = i;
            } else {
                under[e.crossing] = i;
            }
        }
        self.crossings
            .iter()
            .enumerate()
            .map(|(c, x)| {
                let (u, o) = (under[c], over[c]);
                if x.sign > 0 {
                    [edge_in(u), edge_out(o), edge_out(u), edge_in(o)]
                } else {
                    [edge_in(u), edge_in(o), edge_out(u), edge_out(o)]
                }
            })
            .collect()
    }

    /// Rotation and renumbering (by first appearance) with the
    /// lexicographically smallest (Gauss code, signs).
    pub fn canonical(&self) -> Self {
        let len = self.sequence.len();
        let mut best: Option<(Vec<i64>, Vec<i8>)> = None;
        for start in 0..len.max(1) {
            let mut relabel = vec![usize::MAX; self.crossings.len()];
            let mut next = 0;
            let mut code = Vec::with_capacity(len);
            for k in 0..len {
                let e = self.sequence[(start + k) % len];
                if relabel[e.crossing] == usize::MAX {
                    relabel[e.crossing] = next;
                    next += 1;
                }
                let id = relabel[e.crossing] as i64 + 1;
                code.push(if e.over { id } else { -id });
            }
            let mut signs = vec![0i8; self.crossings.len()];
            for (old, &new) in relabel.iter().enumerate() {
                if new != usize::MAX {
                    signs[new] = self.crossings[old].sign;
                }
            }
            let cand = (code, signs);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        let (code, signs) = best.unwrap_or_default();
        KnotDiagram {
            crossings: signs.iter().map(|&sign| Crossing { sign }).collect(),
            sequence: code
                .iter()
                .map(|&c| Event {
                    crossing: (c.unsigned_abs() - 1) as usize,
                    over: c > 0,
                })
                .collect(),
            geometry: self.geometry.clone(),
        }
    }

    fn without(&self, drop: &[usize]) -> Self {
        let mut relabel = vec![usize::MAX; self.crossings.len()];
        let mut crossings = Vec::new();
        for (i, c) in self.crossings.iter().enumerate() {
            if !drop.contains(&i) {
                relabel[i] = crossings.len();
                crossings.push(*c);
            }
        }
        let sequence = self
            .sequence
            .iter()
            .filter(|e| !drop.contains(&e.crossing))
            .map(|e| Event {
                crossing: relabel[e.crossing],
                over: e.over,
            })
            .collect();
        KnotDiagram {
            crossings,
            sequence,
            geometry: self.geometry.clone(),
        }
    }
}

fn reidemeister_one(d: &KnotDiagram) -> Option<usize> {
    let len = d.sequence.len();
    (0..len).find_map(|i| {
        let (a, b) = (d.sequence[i], d.sequence[(i + 1) % len]);
        (a.crossing == b.crossing).then_some(a.crossing)
    })
}

fn reidemeister_two(d: &KnotDiagram) -> Option<[usize; 2]> {
    let len = d.sequence.len();
    if len < 4 {
        return None;
    }
    for i in 0..len {
        let (a, b) = (d.sequence[i], d.sequence[(i + 1) % len]);
        if a.crossing == b.crossing || a.over != b.over {
            continue;
        }
        if d.crossings[a.crossing].sign == d.crossings[b.crossing].sign {
            continue;
        }
        for j in 0..len {
            let (c, e) = (d.sequence[j], d.sequence[(j + 1) % len]);
            let pair = [c.crossing, e.crossing];
            if c.over != a.over
                && e.over != a.over
                && (pair == [a.crossing, b.crossing] || pair == [b.crossing, a.crossing])
            {
                return Some([a.crossing, b.crossing]);
            }
        }
    }
    None
}

/// Removes Reidemeister I kinks and II bigons until none remain.
pub fn simplify_diagram(d: &KnotDiagram) -> KnotDiagram {
    let mut cur = d.clone();
    loop {
        if let Some(c) = reidemeister_one(&cur) {
            cur = cur.without(&[c]);
        } else if let Some(pair) = reidemeister_two(&cur) {
            cur = cur.without(&pair);
        } else {
            return cur.canonical();
        }
    }
}

fn dot<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn unit_vector<const N: usize>(rng: &mut ChaCha8Rng) -> [f64; N] {
    loop {
        let v: [f64; N] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = dot(&v, &v).sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}

/// Orthonormal basis of the complement of a unit vector, by Gram-Schmidt
/// against the coordinate axes.
fn complement<const N: usize>(p: &[f64; N]) -> Vec<[f64; N]> {
    let mut basis: Vec<[f64; N]> = Vec::new();
    let mut axes: Vec<usize> = (0..N).collect();
    axes.sort_by(|&i, &j| p[i].abs().total_cmp(&p[j].abs()));
    for &k in &axes {
        let mut v = [0.0; N];
        v[k] = 1.0;
        let c = dot(&v, p);
        for i in 0..N {
            v[i] -= c * p[i];
        }
        for b in &basis {
            let c = dot(&v, b);
            for i in 0..N {
                v[i] -= c * b[i];
            }
        }
        let n = dot(&v, &v).sqrt();
        if n > 1e-8 {
            basis.push(v.map(|x| x / n));
        }
        if basis.len() == N - 1 {
            break;
        }
    }
    basis
}

/// Stereographic projection of the unit-scaled curve from the candidate
/// pole farthest from it.
fn stereographic(link: &LinkCurve, rng: &mut ChaCha8Rng) -> Vec<[f64; 3]> {
    let q: Vec<[f64; 4]> = link
        .points
        .iter()
        .map(|p| {
            let n = dot(p, p).sqrt();
            p.map(|x| x / n)
        })
        .collect();
    let mut pole = [0.0; 4];
    let mut best = f64::NEG_INFINITY;
    for _ in 0..POLE_CANDIDATES {
        let cand: [f64; 4] = unit_vector(rng);
        let near = q
            .iter()
            .map(|x| dot(x, &cand))
            .fold(f64::NEG_INFINITY, f64::max);
        if -near > best {
            best = -near;
            pole = cand;
        }
    }
    let basis = complement(&pole);
    let pts: Vec<[f64; 3]> = q
        .iter()
        .map(|x| {
            let d = 1.0 - dot(x, &pole);
            std::array::from_fn(|k| dot(x, &basis[k]) / d)
        })
        .collect();
    let scale = pts.iter().map(|p| dot(p, p).sqrt()).fold(0.0, f64::max);
    pts.into_iter().map(|p| p.map(|x| x / scale)).collect()
}

fn cross2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

struct RawCrossing {
    at: [f64; 2],
    over_pos: f64,
    under_pos: f64,
    sign: i8,
}

/// Crossings of the planar projection along `view`, or the reason the
/// projection is not generic.
fn planar_crossings(
    space: &[[f64; 3]],
    view: [f64; 3],
) -> Result<(Vec<[f64; 2]>, Vec<RawCrossing>), String> {
    let frame = complement(&view);
    let (mut e1, e2) = (frame[0], frame[1]);
    // make (e1, e2, view) right-handed
    let c = [
        e1[1] * e2[2] - e1[2] * e2[1],
        e1[2] * e2[0] - e1[0] * e2[2],
        e1[0] * e2[1] - e1[1] * e2[0],
    ];
    if dot(&c, &view) < 0.0 {
        e1 = e1.map(|x| -x);
    }
    let plane: Vec<[f64; 2]> = space.iter().map(|p| [dot(p, &e1), dot(p, &e2)]).collect();
    let depth: Vec<f64> = space.iter().map(|p| dot(p, &view)).collect();
    let n = plane.len();
    let seg = |i: usize| (plane[i], plane[(i + 1) % n]);
    let boxes: Vec<[f64; 4]> = (0..n)
        .map(|i| {
            let (a, b) = seg(i);
            [
                a[0].min(b[0]),
                a[0].max(b[0]),
                a[1].min(b[1]),
                a[1].max(b[1]),
            ]
        })
        .collect();
    let mut out: Vec<RawCrossing> = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (bi, bj) = (boxes[i], boxes[j]);
            if bi[1] < bj[0] || bj[1] < bi[0] || bi[3] < bj[2] || bj[3] < bi[2] {
                continue;
            }
            let (p, p1) = seg(i);
            let (q, q1) = seg(j);
            let r = [p1[0] - p[0], p1[1] - p[1]];
            let w = [q1[0] - q[0], q1[1] - q[1]];
            let den = cross2(r, w);
            let (lr, lw) = (r[0].hypot(r[1]), w[0].hypot(w[1]));
            let qp = [q[0] - p[0], q[1] - p[1]];
            if den.abs() <= 1e-14 * lr * lw {
                if cross2(qp, r).abs() <= GENERIC_TOL * lr {
                    let overlap = (0..2).all(|k| {
                        bi[2 * k] <= bj[2 * k + 1] + GENERIC_TOL
                            && bj[2 * k] <= bi[2 * k + 1] + GENERIC_TOL
                    });
                    if overlap {
                        return Err(format!("collinear segments {i} and {j}"));
                    }
                }
                continue;
            }
            let s = cross2(qp, w) / den;
            let u = cross2(qp, r) / den;
            let margin_s = GENERIC_TOL / lr.max(1e-300);
            let margin_u = GENERIC_TOL / lw.max(1e-300);
            if s < -margin_s || s > 1.0 + margin_s || u < -margin_u || u > 1.0 + margin_u {
                continue;
            }
            if s < margin_s || s > 1.0 - margin_s || u < margin_u || u > 1.0 - margin_u {
                return Err(format!("crossing at a vertex of segments {i} and {j}"));
            }
            if den.abs() < GENERIC_TOL * lr * lw {
                return Err(format!("tangential crossing of segments {i} and {j}"));
            }
            let zi = depth[i] + s * (depth[(i + 1) % n] - depth[i]);
            let zj = depth[j] + u * (depth[(j + 1) % n] - depth[j]);
            if (zi - zj).abs() < GENERIC_TOL {
                return Err(format!(
                    "segments {i} and {j} meet in the projection direction"
                ));
            }
            let at = [p[0] + s * r[0], p[1] + s * r[1]];
            let (pi, pj) = (i as f64 + s, j as f64 + u);
            let (over_pos, under_pos, over_dir, under_dir) = if zi > zj {
                (pi, pj, r, w)
            } else {
                (pj, pi, w, r)
            };
            let sign = if cross2(over_dir, under_dir) > 0.0 {
                1
            } else {
                -1
            };
            out.push(RawCrossing {
                at,
                over_pos,
                under_pos,
                sign,
            });
        }
    }
    for a in 0..out.len() {
        for b in a + 1..out.len() {
            let (x, y) = (out[a].at, out[b].at);
            if (x[0] - y[0]).hypot(x[1] - y[1]) < GENERIC_TOL {
                return Err("near triple point".to_string());
            }
        }
    }
    Ok((plane, out))
}

fn assemble(plane: Vec<[f64; 2]>, raw: Vec<RawCrossing>) -> KnotDiagram {
    let mut events: Vec<(f64, Event)> = Vec::with_capacity(2 * raw.len());
    for (c, x) in raw.iter().enumerate() {
        events.push((
            x.over_pos,
            Event {
                crossing: c,
                over: true,
            },
        ));
        events.push((
            x.under_pos,
            Event {
                crossing: c,
                over: false,
            },
        ));
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0));
    KnotDiagram {
        crossings: raw.iter().map(|x| Crossing { sign: x.sign }).collect(),
        sequence: events.into_iter().map(|(_, e)| e).collect(),
        geometry: Some(DiagramGeometry {
            points: plane,
            unders: raw.iter().map(|x| x.under_pos).collect(),
        }),
    }
    .canonical()
}

/// Generic planar diagram of the link: stereographic projection to R³ from
/// a pole far from the curve, then orthogonal projection along a random
/// direction. Non-generic directions are retried with fresh randomness.
pub fn project_diagram(link: &LinkCurve, cfg: &LinkConfig) -> Result<KnotDiagram, LinkError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let space = stereographic(link, &mut rng);
    let mut obstruction = String::from("no attempts");
    for _ in 0..cfg.max_retries.max(1) {
        let view: [f64; 3] = unit_vector(&mut rng);
        match planar_crossings(&space, view) {
            Ok((plane, raw)) => return Ok(assemble(plane, raw)),
            Err(why) => obstruction = why,
        }
    }
    Err(LinkError::GenericityFailure {
        retries: cfg.max_retries,
        obstruction,
    })
}

/// Generic views examined by `reduced_diagram`.
pub const REDUCTION_VIEWS: usize = 8;

/// Simplified diagram with the fewest crossings among several generic views
/// of the same stereographic image. R1 and R2 alone cannot undo every
/// projection, so a few views are compared; the first minimum wins.
pub fn reduced_diagram(link: &LinkCurve, cfg: &LinkConfig) -> Result<KnotDiagram, LinkError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let space = stereographic(link, &mut rng);
    let mut best: Option<KnotDiagram> = None;
    let mut obstruction = String::from("no attempts");
    for _ in 0..REDUCTION_VIEWS {
        let mut found = None;
        for _ in 0..cfg.max_retries.max(1) {
            let view: [f64; 3] = unit_vector(&mut rng);
            match planar_crossings(&space, view) {
                Ok((plane, raw)) => {
                    found = Some(simplify_diagram(&assemble(plane, raw)));
                    break;
                }
                Err(why) => obstruction = why,
            }
        }
        match found {
            Some(d)
                if best
                    .as_ref()
                    .map_or(true, |b| d.crossing_count() < b.crossing_count()) =>
            {
                best = Some(d)
            }
            Some(_) => {}
            None => break,
        }
    }
    best.ok_or(LinkError::GenericityFailure {
        retries: cfg.max_retries,
        obstruction,
    })
}
