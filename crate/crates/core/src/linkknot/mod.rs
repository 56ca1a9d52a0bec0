//! Links of (R², 0) → (R⁴, 0) germs: the fiber circle ‖f‖ = ε, its image
//! knot in S³_ε, knot diagrams and their invariants.

mod alexander;
mod diagram;
pub mod svg;
mod wirtinger;

use std::f64::consts::PI;

use thiserror::Error;

use crate::lojestimate::optimize::FloatMap;
use crate::polycore::PolyMap;
use crate::report::{AnalysisReport, ReportError};

pub use alexander::{alexander_from_pd, alexander_polynomial, knot_determinant, LaurentPoly};
pub use diagram::{
    project_diagram, reduced_diagram, simplify_diagram, Crossing, DiagramGeometry, Event,
    KnotDiagram,
};
pub use wirtinger::{abelianization, wirtinger_presentation, GroupPresentation, Letter};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinkError {
    #[error("link pipeline needs a map (R^2, 0) -> (R^4, 0), got ({n}, {p})")]
    WrongDimensions { n: usize, p: usize },
    #[error("epsilon must be positive")]
    BadEpsilon,
    #[error("no point with |f| = epsilon on the ray at angle {angle}")]
    NoCrossing { angle: f64 },
    #[error("fiber tracing stalled near ({x}, {y}): {reason}")]
    TracingStalled { x: f64, y: f64, reason: String },
    #[error("the traced fiber winds {0} times around the origin")]
    Winding(i64),
    #[error("the link curve meets itself near segments {0} and {1}")]
    SelfIntersection(usize, usize),
    #[error("no generic projection after {retries} attempts: {obstruction}")]
    GenericityFailure { retries: usize, obstruction: String },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkConfig {
    pub seed: u64,
    pub max_retries: usize,
}

impl Default for LinkConfig {
    fn default() -> Self {
        LinkConfig {
            seed: 0,
            max_retries: 25,
        }
    }
}

/// Threshold on ‖x‖·‖∇g‖/g for g = ‖f‖².
pub const MILNOR_THRESHOLD: f64 = 0.05;

#[derive(Clone, Debug, PartialEq)]
pub enum MilnorVerdict {
    Probable,
    FailedAt { value: f64, point: [f64; 2] },
}

/// g = ‖f‖² and its gradient.
struct SquaredNorm {
    map: FloatMap,
}

impl SquaredNorm {
    fn new(f: &PolyMap) -> Result<Self, LinkError> {
        let (n, p) = (f.domain_dim(), f.codomain_dim());
        if (n, p) != (2, 4) {
            return Err(LinkError::WrongDimensions { n, p });
        }
        Ok(SquaredNorm {
            map: FloatMap::new(f),
        })
    }

    fn value(&self, x: [f64; 2]) -> f64 {
        self.map.eval(&x).iter().map(|v| v * v).sum()
    }

    fn grad(&self, x: [f64; 2]) -> [f64; 2] {
        let v = self.map.eval(&x);
        let j = self.map.jacobian(&x);
        let mut g = [0.0; 2];
        for (fi, row) in v.iter().zip(&j) {
            g[0] += 2.0 * fi * row[0];
            g[1] += 2.0 * fi * row[1];
        }
        g
    }

    /// Smallest r > 0 on the ray at `angle` with g = level, by bracketing
    /// outward from the origin and bisecting.
    fn ray_point(&self, angle: f64, level: f64) -> Option<[f64; 2]> {
        let dir = [angle.cos(), angle.sin()];
        let at = |r: f64| [r * dir[0], r * dir[1]];
        let mut hi = 1e-4;
        let mut lo = 0.0;
        while self.value(at(hi)) < level {
            lo = hi;
            hi *= 1.25;
            if hi > 1e4 {
                return None;
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.value(at(mid)) < level {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-16 * hi {
                break;
            }
        }
        Some(at(0.5 * (lo + hi)))
    }
}

fn norm2(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

/// Heuristic check that ε is below a Milnor-Fukuda radius: on each level
/// ε²/2^j (j = 0..8) and 256 rays, ‖x‖·‖∇g‖/g must exceed the threshold.
pub fn milnor_radius_probe(f: &PolyMap, epsilon: f64) -> Result<MilnorVerdict, LinkError> {
    if !(epsilon > 0.0) {
        return Err(LinkError::BadEpsilon);
    }
    let g = SquaredNorm::new(f)?;
    const RAYS: usize = 256;
    for j in 0..=8 {
        let level = epsilon * epsilon / f64::powi(2.0, j);
        for i in 0..RAYS {
            let angle = 2.0 * PI * i as f64 / RAYS as f64;
            let Some(x) = g.ray_point(angle, level) else {
                return Ok(MilnorVerdict::FailedAt {
                    value: 0.0,
                    point: [angle.cos(), angle.sin()],
                });
            };
            let ratio = norm2(x) * norm2(g.grad(x)) / g.value(x);
            if !(ratio > MILNOR_THRESHOLD) {
                return Ok(MilnorVerdict::FailedAt {
                    value: ratio,
                    point: x,
                });
            }
        }
    }
    Ok(MilnorVerdict::Probable)
}

/// Total signed turning of the polyline around the origin, in turns.
pub fn winding_number(points: &[[f64; 2]]) -> i64 {
    let mut total = 0.0;
    for i in 0..points.len() {
        let a = points[i];
        let b = points[(i + 1) % points.len()];
        let d = b[1].atan2(b[0]) - a[1].atan2(a[0]);
        total += (d + PI).rem_euclid(2.0 * PI) - PI;
    }
    (total / (2.0 * PI)).round() as i64
}

/// Traces the closed curve ‖f‖² = ε² counterclockwise by predictor-corrector
/// continuation, starting on the positive x-axis.
pub fn trace_fiber(f: &PolyMap, epsilon: f64) -> Result<Vec<[f64; 2]>, LinkError> {
    if !(epsilon > 0.0) {
        return Err(LinkError::BadEpsilon);
    }
    let g = SquaredNorm::new(f)?;
    let level = epsilon * epsilon;
    let h0 = epsilon / 50.0;
    let h_min = epsilon / 5000.0;
    let seed = g
        .ray_point(0.0, level)
        .ok_or(LinkError::NoCrossing { angle: 0.0 })?;
    let stalled = |x: [f64; 2], reason: &str| LinkError::TracingStalled {
        x: x[0],
        y: x[1],
        reason: reason.to_string(),
    };

    let correct = |mut x: [f64; 2]| -> Option<[f64; 2]> {
        for _ in 0..30 {
            let gx = g.grad(x);
            let n2 = gx[0] * gx[0] + gx[1] * gx[1];
            if n2 == 0.0 {
                return None;
            }
            let r = g.value(x) - level;
            x = [x[0] - r * gx[0] / n2, x[1] - r * gx[1] / n2];
            if (g.value(x) - level).abs() <= 1e-13 * level {
                return Some(x);
            }
        }
        None
    };

    let mut pts = vec![seed];
    let mut h = h0;
    let mut x = seed;
    let max_steps = 4_000_000;
    // arc length travelled, used to keep the closing test away from the seed
    let mut travelled = 0.0;
    loop {
        if pts.len() > max_steps {
            return Err(stalled(x, "too many steps"));
        }
        let gx = g.grad(x);
        let gn = norm2(gx);
        if gn == 0.0 {
            return Err(stalled(x, "critical point on the fiber"));
        }
        let t = [-gx[1] / gn, gx[0] / gn];
        let pred = [x[0] + h * t[0], x[1] + h * t[1]];
        match correct(pred) {
            Some(next) if norm2([next[0] - x[0], next[1] - x[1]]) < 2.0 * h => {
                let step = norm2([next[0] - x[0], next[1] - x[1]]);
                travelled += step;
                let to_seed = norm2([next[0] - seed[0], next[1] - seed[1]]);
                if pts.len() >= 8 && travelled > 4.0 * h0 && to_seed < h / 2.0 {
                    break;
                }
                // overshoot: the seed lies between x and next
                let ahead = (seed[0] - x[0]) * t[0] + (seed[1] - x[1]) * t[1];
                let dist = norm2([seed[0] - x[0], seed[1] - x[1]]);
                if pts.len() >= 8
                    && travelled > 4.0 * h0
                    && ahead > 0.0
                    && ahead < step
                    && dist < step
                {
                    break;
                }
                pts.push(next);
                x = next;
                h = (h * 1.5).min(h0);
            }
            _ => {
                h /= 2.0;
                if h < h_min {
                    return Err(stalled(x, "corrector failed at the minimum step"));
                }
            }
        }
    }
    let w = winding_number(&pts);
    if w != 1 {
        return Err(LinkError::Winding(w));
    }
    Ok(pts)
}

/// The image knot K_ε(f) ⊂ S³_ε with its source fiber.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkCurve {
    pub epsilon: f64,
    pub points: Vec<[f64; 4]>,
    pub source_points: Vec<[f64; 2]>,
}

fn seg_dist4(p0: &[f64; 4], p1: &[f64; 4], q0: &[f64; 4], q1: &[f64; 4]) -> f64 {
    let sub = |a: &[f64; 4], b: &[f64; 4]| -> [f64; 4] { std::array::from_fn(|i| a[i] - b[i]) };
    let dot = |a: &[f64; 4], b: &[f64; 4]| -> f64 { (0..4).map(|i| a[i] * b[i]).sum() };
    let (u, v, w) = (sub(p1, p0), sub(q1, q0), sub(p0, q0));
    let (a, b, c, d, e) = (
        dot(&u, &u),
        dot(&u, &v),
        dot(&v, &v),
        dot(&u, &w),
        dot(&v, &w),
    );
    let den = a * c - b * b;
    let mut s = if den > 1e-300 {
        ((b * e - c * d) / den).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let mut t = if c > 0.0 {
        ((b * s + e) / c).clamp(0.0, 1.0)
    } else {
        0.0
    };
    if a > 0.0 {
        s = ((b * t - d) / a).clamp(0.0, 1.0);
    }
    if c > 0.0 {
        t = ((b * s + e) / c).clamp(0.0, 1.0);
    }
    let diff: [f64; 4] = std::array::from_fn(|i| w[i] + s * u[i] - t * v[i]);
    dot(&diff, &diff).sqrt()
}

/// First pair of non-adjacent segments closer than `tol`.
fn find_self_intersection(points: &[[f64; 4]], tol: f64) -> Option<(usize, usize)> {
    let n = points.len();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let d = seg_dist4(
                &points[i],
                &points[(i + 1) % n],
                &points[j],
                &points[(j + 1) % n],
            );
            if d < tol {
                return Some((i, j));
            }
        }
    }
    None
}

/// Pushes the fiber through f onto S³_ε and checks the image is embedded.
pub fn embed_link(f: &PolyMap, epsilon: f64, fiber: &[[f64; 2]]) -> Result<LinkCurve, LinkError> {
    let fm = FloatMap::new(f);
    let points: Vec<[f64; 4]> = fiber
        .iter()
        .map(|p| {
            let v = fm.eval(p);
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            std::array::from_fn(|i| v[i] * epsilon / n)
        })
        .collect();
    if let Some((i, j)) = find_self_intersection(&points, 1e-9 * epsilon) {
        return Err(LinkError::SelfIntersection(i, j));
    }
    Ok(LinkCurve {
        epsilon,
        points,
        source_points: fiber.to_vec(),
    })
}

/// Inverse stereographic image of a closed space curve on S³_ε, after
/// scaling the curve into the unit ball.
pub fn lift_to_sphere(curve: &[[f64; 3]], epsilon: f64) -> LinkCurve {
    let scale = curve
        .iter()
        .map(|p| (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt())
        .fold(0.0, f64::max);
    let points = curve
        .iter()
        .map(|p| {
            let q: [f64; 3] = std::array::from_fn(|i| p[i] / scale);
            let s = q.iter().map(|v| v * v).sum::<f64>();
            let d = 1.0 + s;
            [
                epsilon * 2.0 * q[0] / d,
                epsilon * 2.0 * q[1] / d,
                epsilon * 2.0 * q[2] / d,
                epsilon * (s - 1.0) / d,
            ]
        })
        .collect();
    LinkCurve {
        epsilon,
        points,
        source_points: Vec::new(),
    }
}

/// Standard space curves used as reference knots.
pub mod samples {
    use std::f64::consts::PI;

    fn sample(n: usize, f: impl Fn(f64) -> [f64; 3]) -> Vec<[f64; 3]> {
        (0..n).map(|k| f(2.0 * PI * k as f64 / n as f64)).collect()
    }

    pub fn trefoil(n: usize) -> Vec<[f64; 3]> {
        sample(n, |t| {
            [
                t.sin() + 2.0 * (2.0 * t).sin(),
                t.cos() - 2.0 * (2.0 * t).cos(),
                -(3.0 * t).sin(),
            ]
        })
    }

    pub fn figure_eight(n: usize) -> Vec<[f64; 3]> {
        sample(n, |t| {
            let r = 2.0 + (2.0 * t).cos();
            [r * (3.0 * t).cos(), r * (3.0 * t).sin(), (4.0 * t).sin()]
        })
    }

    /// Two trefoils side by side, each opened at its outermost point and
    /// joined by a pair of bridges.
    pub fn trefoil_sum(n: usize) -> Vec<[f64; 3]> {
        let a = trefoil(n);
        let b: Vec<[f64; 3]> = a.iter().map(|p| [p[0] + 8.0, p[1], p[2]]).collect();
        let far = |pts: &[[f64; 3]], key: fn(&[f64; 3]) -> f64| {
            (0..pts.len())
                .max_by(|&i, &j| key(&pts[i]).total_cmp(&key(&pts[j])))
                .unwrap_or(0)
        };
        let ia = far(&a, |p| p[0]);
        let ib = far(&b, |p| -p[0]);
        let w = (n / 60).max(1);
        let open = |pts: &[[f64; 3]], i: usize| -> Vec<[f64; 3]> {
            let m = pts.len();
            (w..m - w + 1).map(|k| pts[(i + k) % m]).collect()
        };
        let mut out = open(&a, ia);
        out.extend(open(&b, ib));
        out
    }
}

/// Link curve of f at radius ε: probe, trace and embed.
pub fn link_curve(f: &PolyMap, epsilon: f64) -> Result<LinkCurve, LinkError> {
    let fiber = trace_fiber(f, epsilon)?;
    embed_link(f, epsilon, &fiber)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkComparison {
    /// The named invariant differs, so the germs are not C⁰-equivalent.
    Distinguished(String),
    /// No computed invariant tells them apart.
    Consistent,
}

pub fn compare_alexander(a: &LaurentPoly, b: &LaurentPoly) -> LinkComparison {
    if a == b {
        LinkComparison::Consistent
    } else {
        LinkComparison::Distinguished("alexander".to_string())
    }
}

/// Compares the link sections of two reports.
pub fn compare_links(
    a: &AnalysisReport,
    b: &AnalysisReport,
) -> Result<LinkComparison, ReportError> {
    let (la, lb) = match (&a.link, &b.link) {
        (Some(la), Some(lb)) => (la, lb),
        _ => return Err(ReportError::MissingLink),
    };
    Ok(if la.alexander.value != lb.alexander.value {
        LinkComparison::Distinguished("alexander".to_string())
    } else if la.determinant.value != lb.determinant.value {
        LinkComparison::Distinguished("determinant".to_string())
    } else {
        LinkComparison::Consistent
    })
}
