//! Lojasiewicz exponent estimates: exact lower bounds from arcs and
//! numeric log-log fits of sphere minima.

mod arcs;
pub mod optimize;

use thiserror::Error;

use crate::doublepoint::{delta, diagonal_minors, DoublePointError};
use crate::polycore::{Arc, PolyError, PolyMap};
use optimize::{
    cube_to_sphere, multistart, norm, shifted_halton, FloatMap, PairProblem, Problem,
    SearchControl, SphereProblem,
};

pub use arcs::{
    arc_exponent, best_arc, monomial_pair_pool, monomial_pool, pair_exponent, pool_degree,
    ArcExponent,
};

/// Decay faster than r^A_MAX is read as an infinite exponent.
pub const A_MAX: f64 = 16.0;
/// Largest tolerated gap between a rigorous arc bound and the fit.
pub const CONSISTENCY_GAP: f64 = 0.25;
const MIN_RADII: usize = 4;
const MAX_ARC_STARTS: usize = 48;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LojError {
    #[error("invalid estimator configuration: {0}")]
    InvalidConfig(String),
    #[error("map does not vanish at the origin")]
    NotAGerm,
    #[error("probe arc {index} has dimension {got}, expected {expected}")]
    ProbeDimension {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("probe pair {index} consists of two identical arcs")]
    DegeneratePair { index: usize },
    #[error("only {converged} radii converged, at least 4 are needed")]
    OptimizerDivergence { converged: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    DoublePoint(#[from] DoublePointError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct EstimatorConfig {
    pub r0: f64,
    pub rho: f64,
    pub k: usize,
    pub starts: usize,
    pub seed: u64,
    pub max_iters: usize,
    pub tol: f64,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig {
            r0: 0.2,
            rho: 0.7,
            k: 12,
            starts: 24,
            seed: 0,
            max_iters: 400,
            tol: 1e-12,
        }
    }
}

impl EstimatorConfig {
    pub fn with_seed(seed: u64) -> Self {
        EstimatorConfig {
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), LojError> {
        let bad = |m: &str| Err(LojError::InvalidConfig(m.to_string()));
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return bad("rho must lie in (0, 1)");
        }
        if !(self.r0 > 0.0 && self.r0 <= 1.0) {
            return bad("r0 must lie in (0, 1]");
        }
        if self.k < MIN_RADII {
            return bad("at least 4 radii are needed");
        }
        if self.starts < 8 {
            return bad("at least 8 starts are needed");
        }
        if self.max_iters == 0 || !(self.tol > 0.0) {
            return bad("max_iters and tol must be positive");
        }
        Ok(())
    }

    pub fn radii(&self) -> Vec<f64> {
        (0..self.k)
            .map(|i| self.r0 * self.rho.powi(i as i32))
            .collect()
    }

    fn control(&self) -> SearchControl {
        SearchControl {
            max_iters: self.max_iters,
            tol: self.tol,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    FiniteEstimated,
    LikelyInfinite,
    /// Fit and arc bound disagree by more than the consistency gap.
    Withheld,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExponentEstimate {
    pub fitted_alpha: f64,
    /// Largest absolute deviation of log m from the fitted line.
    pub fit_residual: f64,
    /// exp(intercept) of the fit; indicative only.
    pub constant: f64,
    pub arc_lower_bound: Option<ArcExponent>,
    pub witness_arc: Option<Arc>,
    /// (r, min) pairs, r strictly decreasing.
    pub radii_trace: Vec<(f64, f64)>,
    pub diverged_radii: Vec<f64>,
    /// Minimizing point at the smallest converged radius.
    pub minimizer: Vec<f64>,
    pub verdict: Verdict,
    pub warnings: Vec<String>,
}

impl ExponentEstimate {
    /// Arc bound as a float, when finite.
    pub fn arc_bound_f64(&self) -> Option<f64> {
        use num_traits::ToPrimitive;
        self.arc_lower_bound
            .as_ref()
            .and_then(ArcExponent::finite)
            .and_then(|r| r.to_f64())
    }

    /// The arc bound and the fit agree within `tol`.
    pub fn bound_matches_fit(&self, tol: f64) -> bool {
        self.verdict == Verdict::FiniteEstimated
            && self
                .arc_bound_f64()
                .is_some_and(|b| (b - self.fitted_alpha).abs() <= tol)
    }
}

/// Least-squares line through (ln r, ln m): (slope, intercept, max residual).
pub fn loglog_fit(trace: &[(f64, f64)]) -> (f64, f64, f64) {
    let pts: Vec<(f64, f64)> = trace
        .iter()
        .map(|&(r, m)| (r.ln(), m.max(f64::MIN_POSITIVE).ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let resid = pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).abs())
        .fold(0.0, f64::max);
    (slope, intercept, resid)
}

/// Minimizes over each radius and fits; `make` builds the problem for a
/// radius and `extra` supplies radius-dependent starts.
fn sweep<'a, P, F, S>(
    cfg: &EstimatorConfig,
    starts: &[Vec<f64>],
    make: F,
    extra: S,
) -> Result<Sweep, LojError>
where
    P: Problem + 'a,
    F: Fn(f64) -> P,
    S: Fn(f64) -> Vec<Vec<f64>>,
{
    let mut out = Sweep::default();
    for r in cfg.radii() {
        let mut all = starts.to_vec();
        all.extend(extra(r));
        let problem = make(r);
        let best = multistart(&problem, &all, cfg.control());
        if best.converged && best.value.is_finite() {
            out.trace.push((r, best.value.sqrt()));
            out.minimizer = problem.ambient_point(&best.point);
        } else {
            out.diverged.push(r);
        }
    }
    if out.trace.len() < MIN_RADII {
        return Err(LojError::OptimizerDivergence {
            converged: out.trace.len(),
        });
    }
    Ok(out)
}

#[derive(Default)]
struct Sweep {
    trace: Vec<(f64, f64)>,
    diverged: Vec<f64>,
    minimizer: Vec<f64>,
}

/// Arcs whose exponent is within one of the best, strongest first.
fn leading_arcs(scored: Vec<(ArcExponent, Arc)>) -> Vec<Arc> {
    let mut scored: Vec<(ArcExponent, Arc)> = scored
        .into_iter()
        .filter(|(e, _)| *e != ArcExponent::Infinite)
        .collect();
    scored.sort_by(|a, b| b.0.cmp(&a.0));
    let Some(top) = scored.first().and_then(|(e, _)| e.finite().cloned()) else {
        return Vec::new();
    };
    let cut = top - crate::polycore::rat(1);
    scored
        .into_iter()
        .take_while(|(e, _)| e.finite().is_some_and(|v| *v >= cut))
        .take(MAX_ARC_STARTS)
        .map(|(_, a)| a)
        .collect()
}

/// Parameters s > 0 and s < 0 with ‖φ(γ(s))‖ = r, by bisection.
fn arc_params_at(arc: &Arc, r: f64, size: impl Fn(&[f64]) -> f64) -> Vec<f64> {
    let mut out = Vec::new();
    for sign in [1.0, -1.0] {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        while size(&arc.point(sign * hi)) < r && hi < 1e6 {
            hi *= 2.0;
        }
        if size(&arc.point(sign * hi)) < r {
            continue;
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if size(&arc.point(sign * mid)) < r {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(sign * hi);
    }
    out
}

fn assemble(sw: Sweep, best: Option<(ArcExponent, Arc)>) -> ExponentEstimate {
    let Sweep {
        trace,
        diverged,
        minimizer,
    } = sw;
    let (mut slope, intercept, mut resid) = loglog_fit(&trace);
    let mut warnings = Vec::new();
    if !diverged.is_empty() {
        warnings.push(format!(
            "local search did not converge at {} radii; they were left out of the fit",
            diverged.len()
        ));
    }
    let vanishes = trace.iter().any(|&(_, m)| m == 0.0);
    if vanishes {
        slope = f64::INFINITY;
        resid = 0.0;
    }
    let fast_decay = trace.iter().any(|&(r, m)| m < r.powf(A_MAX));
    let (arc_lower_bound, witness_arc) = match best {
        Some((e, a)) => (Some(e), Some(a)),
        None => (None, None),
    };
    let mut est = ExponentEstimate {
        fitted_alpha: slope,
        fit_residual: resid,
        constant: intercept.exp(),
        arc_lower_bound,
        witness_arc,
        radii_trace: trace,
        diverged_radii: diverged,
        minimizer,
        verdict: Verdict::FiniteEstimated,
        warnings,
    };
    if est.arc_lower_bound == Some(ArcExponent::Infinite) {
        est.verdict = Verdict::LikelyInfinite;
        est.warnings
            .push("an arc lies in the zero set: the exponent is infinite".to_string());
    } else if vanishes || fast_decay || slope > A_MAX {
        est.verdict = Verdict::LikelyInfinite;
    } else if let Some(b) = est.arc_bound_f64() {
        if slope < b - CONSISTENCY_GAP {
            est.verdict = Verdict::Withheld;
            est.warnings.push(format!(
                "fitted exponent {slope:.4} is below the rigorous arc bound {b}"
            ));
        }
    }
    est
}

/// Largest exponent in `scored`, first attaining arc on ties.
fn strongest(scored: &[(ArcExponent, Arc)]) -> Option<(ArcExponent, Arc)> {
    scored
        .iter()
        .fold(None, |best: Option<&(ArcExponent, Arc)>, c| match best {
            Some(b) if b.0 >= c.0 => Some(b),
            _ => Some(c),
        })
        .cloned()
}

fn sphere_starts(cfg: &EstimatorConfig, dim: usize) -> Vec<Vec<f64>> {
    let mut starts: Vec<Vec<f64>> = shifted_halton(cfg.starts, dim, cfg.seed)
        .iter()
        .map(|u| cube_to_sphere(u))
        .collect();
    for i in 0..dim {
        for s in [1.0, -1.0] {
            let mut e = vec![0.0; dim];
            e[i] = s;
            starts.push(e);
        }
    }
    starts
}

fn check_probes(arcs: &[Arc], dim: usize) -> Result<(), LojError> {
    for (index, a) in arcs.iter().enumerate() {
        if a.dim() != dim {
            return Err(LojError::ProbeDimension {
                index,
                expected: dim,
                got: a.dim(),
            });
        }
    }
    Ok(())
}

/// Same as [`estimate_exponent_at_zero`] without requiring g(0) = 0; a
/// map with g(0) ≠ 0 has exponent 0.
pub fn estimate_exponent_near_zero(
    g: &PolyMap,
    cfg: &EstimatorConfig,
    probe_arcs: &[Arc],
) -> Result<ExponentEstimate, LojError> {
    cfg.validate()?;
    let m = g.domain_dim();
    check_probes(probe_arcs, m)?;
    let pool = monomial_pool(m);
    let scored = probe_arcs
        .iter()
        .chain(&pool)
        .map(|a| Ok((arc_exponent(g, a)?, a.clone())))
        .collect::<Result<Vec<_>, LojError>>()?;
    let best = strongest(&scored);
    let guides = leading_arcs(scored);
    let fm = FloatMap::new(g);
    let starts = sphere_starts(cfg, m);
    let sw = sweep(
        cfg,
        &starts,
        |r| SphereProblem {
            map: &fm,
            radius: r,
        },
        |r| {
            guides
                .iter()
                .flat_map(|a| arc_params_at(a, r, norm).into_iter().map(|s| a.point(s)))
                .collect()
        },
    )?;
    Ok(assemble(sw, best))
}

/// Exponent α in ‖g(x)‖ ≥ C‖x‖^α near 0.
pub fn estimate_exponent_at_zero(
    g: &PolyMap,
    cfg: &EstimatorConfig,
    probe_arcs: &[Arc],
) -> Result<ExponentEstimate, LojError> {
    if !g.is_germ() {
        return Err(LojError::NotAGerm);
    }
    estimate_exponent_near_zero(g, cfg, probe_arcs)
}

/// Exponent α in ‖f(x) - f(x')‖ ≥ C‖x - x'‖^α near 0.
///
/// The numeric part minimizes ‖f(x) - f(x')‖ over pairs at separation ρ
/// whose midpoint lies within ρ of the origin, and fits the decay in ρ.
/// The exact part takes the best pair of monomial arcs. Values below 1
/// are clamped to 1.
pub fn estimate_double_point_exponent(
    f: &PolyMap,
    cfg: &EstimatorConfig,
    probe_pairs: &[(Arc, Arc)],
) -> Result<ExponentEstimate, LojError> {
    cfg.validate()?;
    if !f.is_germ() {
        return Err(LojError::NotAGerm);
    }
    let n = f.domain_dim();
    let mut probes = Vec::with_capacity(probe_pairs.len());
    for (index, (a, b)) in probe_pairs.iter().enumerate() {
        check_probes(std::slice::from_ref(a), n)
            .and_then(|_| check_probes(std::slice::from_ref(b), n))
            .map_err(|_| LojError::ProbeDimension {
                index,
                expected: n,
                got: a.dim().max(b.dim()),
            })?;
        if a == b {
            return Err(LojError::DegeneratePair { index });
        }
        probes.push(a.concat(b));
    }
    let d = delta(f);
    let mut scored = Vec::new();
    for arc in probes.iter().chain(&monomial_pair_pool(n)) {
        if let Some(e) = pair_exponent(&d, arc)? {
            scored.push((e, arc.clone()));
        }
    }
    let best = strongest(&scored);
    let guides = leading_arcs(scored);
    let separation = |z: &[f64]| -> f64 {
        norm(
            &z[..n]
                .iter()
                .zip(&z[n..])
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>(),
        )
    };

    let fm = FloatMap::new(f);
    let mut starts: Vec<Vec<f64>> = shifted_halton(cfg.starts, 2 * n, cfg.seed)
        .iter()
        .map(|u| {
            let mut z: Vec<f64> = u[..n].iter().map(|x| 2.0 * x - 1.0).collect();
            let c = norm(&z);
            if c > 1.0 {
                z.iter_mut().for_each(|x| *x /= c);
            }
            z.extend(cube_to_sphere(&u[n..]));
            z
        })
        .collect();
    for i in 0..n {
        let mut z = vec![0.0; 2 * n];
        z[n + i] = 1.0;
        starts.push(z);
    }
    let sw = sweep(
        cfg,
        &starts,
        |r| PairProblem {
            map: &fm,
            separation: r,
        },
        |r| {
            guides
                .iter()
                .flat_map(|a| {
                    arc_params_at(a, r, separation)
                        .into_iter()
                        .map(|s| a.point(s))
                })
                .map(|p| {
                    let mut z: Vec<f64> = (0..n).map(|i| (p[i] + p[n + i]) / (2.0 * r)).collect();
                    z.extend((0..n).map(|i| (p[i] - p[n + i]) / r));
                    z
                })
                .collect()
        },
    )?;
    let mut est = assemble(sw, best);
    if est.fitted_alpha < 1.0 {
        if est.fitted_alpha < 1.0 - 1e-9 {
            est.warnings.push(format!(
                "fitted double point exponent {:.6} clamped to 1",
                est.fitted_alpha
            ));
        }
        est.fitted_alpha = 1.0;
    }
    Ok(est)
}

/// Exponent of the maximal minors of the Jacobian, i.e. of the minors of
/// the divided-difference matrix on the diagonal x' = x.
pub fn diagonal_probe(f: &PolyMap, cfg: &EstimatorConfig) -> Result<ExponentEstimate, LojError> {
    let g = diagonal_minors(f)?;
    estimate_exponent_near_zero(&g, cfg, &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doublepoint::{corank1_reduce, delta_tilde};
    use crate::polycore::testutil::poly;
    use crate::polycore::{rat, var_names, Poly};

    const XY: &[&str] = &["x", "y"];

    fn map(comps: Vec<Poly>) -> PolyMap {
        PolyMap::new(var_names(XY), comps).unwrap()
    }

    fn x() -> Poly {
        poly(XY, &[(1, &[1, 0])])
    }
    fn y() -> Poly {
        poly(XY, &[(1, &[0, 1])])
    }
    fn zero() -> Poly {
        Poly::zero(&var_names(XY))
    }

    fn cusp_family(t: i64) -> PolyMap {
        map(vec![
            x(),
            poly(XY, &[(1, &[0, 2])]),
            poly(XY, &[(1, &[0, 3])]),
            poly(XY, &[(1, &[3, 1]), (t, &[2, 1])]),
        ])
    }

    fn quintic_family(t: i64) -> PolyMap {
        map(vec![
            x(),
            poly(XY, &[(1, &[0, 2])]),
            poly(XY, &[(1, &[4, 1]), (t, &[1, 3])]),
            poly(XY, &[(1, &[0, 5]), (t, &[1, 3])]),
        ])
    }

    fn unfolding(odd: u32) -> PolyMap {
        map(vec![
            x(),
            poly(XY, &[(1, &[0, 2])]),
            poly(XY, &[(1, &[0, odd])]),
            zero(),
        ])
    }

    fn finite(e: &ExponentEstimate) -> f64 {
        assert_eq!(e.verdict, Verdict::FiniteEstimated, "{e:?}");
        e.fitted_alpha
    }

    #[test]
    fn config_validation() {
        assert!(EstimatorConfig::default().validate().is_ok());
        let bad = EstimatorConfig {
            rho: 1.0,
            ..Default::default()
        };
        assert!(matches!(bad.validate(), Err(LojError::InvalidConfig(_))));
        let bad = EstimatorConfig {
            k: 3,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = EstimatorConfig {
            starts: 4,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn loglog_fit_of_power_law() {
        let trace: Vec<(f64, f64)> = EstimatorConfig::default()
            .radii()
            .iter()
            .map(|&r| (r, 3.0 * r.powi(5)))
            .collect();
        let (s, c, res) = loglog_fit(&trace);
        assert!((s - 5.0).abs() < 1e-12 && (c - 3f64.ln()).abs() < 1e-10 && res < 1e-10);
    }

    #[test]
    fn cusp_family_reduced_exponents() {
        let cfg = EstimatorConfig::with_seed(1);
        let e = estimate_exponent_at_zero(&corank1_reduce(&cusp_family(1)).unwrap(), &cfg, &[])
            .unwrap();
        assert_eq!(e.arc_lower_bound, Some(ArcExponent::Finite(rat(2))));
        assert!((finite(&e) - 2.0).abs() < 0.15, "{e:?}");
        let e = estimate_exponent_at_zero(&corank1_reduce(&cusp_family(0)).unwrap(), &cfg, &[])
            .unwrap();
        assert_eq!(e.arc_lower_bound, Some(ArcExponent::Finite(rat(3))));
        assert!((finite(&e) - 3.0).abs() < 0.2, "{e:?}");
    }

    #[test]
    fn quintic_family_reduced_exponents() {
        let cfg = EstimatorConfig::with_seed(7);
        for t in [0, 1] {
            let g = corank1_reduce(&quintic_family(t)).unwrap();
            let e = estimate_exponent_at_zero(&g, &cfg, &[]).unwrap();
            assert_eq!(e.arc_lower_bound, Some(ArcExponent::Finite(rat(4))));
            assert!((finite(&e) - 4.0).abs() < 0.2, "t={t} {e:?}");
        }
    }

    #[test]
    fn constant_unfolding_is_likely_infinite() {
        let g = delta_tilde(&unfolding(3)).unwrap();
        let e = estimate_exponent_at_zero(&g, &EstimatorConfig::default(), &[]).unwrap();
        assert_eq!(e.verdict, Verdict::LikelyInfinite);
        assert_eq!(e.arc_lower_bound, Some(ArcExponent::Infinite));
    }

    #[test]
    fn not_a_germ_is_rejected() {
        let g =
            PolyMap::derived(var_names(XY), vec![Poly::constant(&var_names(XY), rat(1))]).unwrap();
        assert_eq!(
            estimate_exponent_at_zero(&g, &EstimatorConfig::default(), &[]),
            Err(LojError::NotAGerm)
        );
    }

    #[test]
    fn scale_covariance() {
        let g = corank1_reduce(&cusp_family(1)).unwrap();
        let cfg = EstimatorConfig::with_seed(3);
        let a = estimate_exponent_at_zero(&g, &cfg, &[]).unwrap();
        let b = estimate_exponent_at_zero(&g.scale(&rat(5)), &cfg, &[]).unwrap();
        assert_eq!(a.arc_lower_bound, b.arc_lower_bound);
        assert!((a.fitted_alpha - b.fitted_alpha).abs() <= a.fit_residual.max(1e-9));
    }

    #[test]
    fn deterministic_trace() {
        let g = corank1_reduce(&quintic_family(1)).unwrap();
        let cfg = EstimatorConfig::with_seed(42);
        let a = estimate_exponent_at_zero(&g, &cfg, &[]).unwrap();
        let b = estimate_exponent_at_zero(&g, &cfg, &[]).unwrap();
        let bits = |e: &ExponentEstimate| -> Vec<(u64, u64)> {
            e.radii_trace
                .iter()
                .map(|(r, m)| (r.to_bits(), m.to_bits()))
                .collect()
        };
        assert_eq!(bits(&a), bits(&b));
        assert!(a.radii_trace.windows(2).all(|w| w[0].0 > w[1].0));
    }

    #[test]
    fn double_point_of_embedding_is_one() {
        let f = map(vec![x(), y(), zero(), zero()]);
        let e = estimate_double_point_exponent(&f, &EstimatorConfig::default(), &[]).unwrap();
        assert!((finite(&e) - 1.0).abs() < 1e-6);
        assert_eq!(e.arc_lower_bound, Some(ArcExponent::Finite(rat(1))));
    }

    #[test]
    fn double_point_of_constant_unfoldings() {
        // the symmetric pair y' = -y gives |f(x) - f(x')| ~ |y - y'|^(2l+1)
        let cfg = EstimatorConfig::with_seed(1);
        for l in 1..=3u32 {
            let a = Arc::monomial_int(&[(0, 0), (1, 1)]).unwrap();
            let b = Arc::monomial_int(&[(0, 0), (-1, 1)]).unwrap();
            let e = estimate_double_point_exponent(&unfolding(2 * l + 1), &cfg, &[(a, b)]).unwrap();
            let want = (2 * l + 1) as f64;
            assert_eq!(
                e.arc_lower_bound,
                Some(ArcExponent::Finite(rat(2 * l as i64 + 1)))
            );
            assert!((finite(&e) - want).abs() < 0.2, "l={l} {e:?}");
        }
    }

    #[test]
    fn degenerate_probe_pair() {
        let a = Arc::monomial_int(&[(1, 1), (0, 0)]).unwrap();
        let r = estimate_double_point_exponent(
            &unfolding(3),
            &EstimatorConfig::default(),
            &[(a.clone(), a)],
        );
        assert_eq!(r, Err(LojError::DegeneratePair { index: 0 }));
    }

    #[test]
    fn non_injective_is_likely_infinite() {
        // (x, y^2, 0, 0) folds the plane
        let f = map(vec![x(), poly(XY, &[(1, &[0, 2])]), zero(), zero()]);
        let e = estimate_double_point_exponent(&f, &EstimatorConfig::default(), &[]).unwrap();
        assert_eq!(e.verdict, Verdict::LikelyInfinite);
    }

    #[test]
    fn diagonal_probe_examples() {
        let cfg = EstimatorConfig::default();
        let e = diagonal_probe(&map(vec![x(), y(), zero(), zero()]), &cfg).unwrap();
        assert_eq!(e.arc_lower_bound, Some(ArcExponent::Finite(rat(0))));
        assert!(finite(&e).abs() < 1e-6);
        let e = diagonal_probe(&cusp_family(1), &cfg).unwrap();
        assert_eq!(e.arc_lower_bound, Some(ArcExponent::Finite(rat(2))));
        assert!((finite(&e) - 2.0).abs() < 0.2, "{e:?}");
        // the Jacobian minors of (x, y², 0, 0) all vanish on the x-axis
        let e = diagonal_probe(
            &map(vec![x(), poly(XY, &[(1, &[0, 2])]), zero(), zero()]),
            &cfg,
        )
        .unwrap();
        assert_eq!(e.verdict, Verdict::LikelyInfinite);
    }
}
