//! Isolated singularity test, C⁰ determinacy degree, jets, and the smooth
//! versus non-Lipschitz embedding dichotomy.
//!
//! Brackets: for an exponent α the determinacy bound uses [α] = ⌊α⌋, so an
//! exact exponent 3 contributes 3 + 2 = 5. A numeric fit without a matching
//! arc bound is first rounded up, as ⌈fit + residual⌉.

use thiserror::Error;

use crate::doublepoint::{corank, corank1_reduce, delta_tilde, grad_norm_sq, DoublePointError};
use crate::lojestimate::{
    estimate_double_point_exponent, estimate_exponent_at_zero, estimate_exponent_near_zero,
    ArcExponent, EstimatorConfig, ExponentEstimate, LojError, Verdict,
};
use crate::polycore::{Arc, PolyError, PolyMap};

/// Arc bound and fit must agree this closely for a rigorous degree.
pub const RIGOROUS_GAP: f64 = 0.25;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegularityError {
    #[error("the determinacy bound is only available for (2, 4) germs, got ({n}, {p})")]
    OutOfScope { n: usize, p: usize },
    #[error("the germ does not look like an isolated singularity")]
    NotIsolated,
    #[error("the gradient of the squared norm does not have an isolated zero")]
    GradientNotIsolated,
    #[error(transparent)]
    Estimate(#[from] LojError),
    #[error(transparent)]
    DoublePoint(#[from] DoublePointError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The map whose exponent at 0 is L₀(Δ̃f): the corank-1 reduction when f
/// is in corank-1 normal form, otherwise Δ̃f itself.
pub fn isolated_singularity_map(f: &PolyMap) -> Result<PolyMap, DoublePointError> {
    match corank1_reduce(f) {
        Ok(g) => Ok(g),
        Err(DoublePointError::NotInNormalForm { .. }) | Err(DoublePointError::CorankNotOne(_)) => {
            delta_tilde(f)
        }
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// An arc along which every component vanishes.
    Arc(Arc),
    /// The minimizing point found at the smallest radius.
    Point(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum IsolatedVerdict {
    Yes(ExponentEstimate),
    LikelyNo {
        witness: Witness,
        estimate: ExponentEstimate,
    },
}

impl IsolatedVerdict {
    pub fn estimate(&self) -> &ExponentEstimate {
        match self {
            IsolatedVerdict::Yes(e) => e,
            IsolatedVerdict::LikelyNo { estimate, .. } => estimate,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, IsolatedVerdict::Yes(_))
    }
}

/// Yes when L₀(Δ̃f) is finite at desk scale. A withheld estimate (fit and
/// arc bound disagree) still counts as Yes; its warnings are kept.
pub fn is_isolated_singularity(
    f: &PolyMap,
    cfg: &EstimatorConfig,
) -> Result<IsolatedVerdict, RegularityError> {
    let g = isolated_singularity_map(f)?;
    let est = estimate_exponent_near_zero(&g, cfg, &[])?;
    Ok(match est.verdict {
        Verdict::FiniteEstimated | Verdict::Withheld => IsolatedVerdict::Yes(est),
        Verdict::LikelyInfinite => {
            let witness = match (&est.arc_lower_bound, &est.witness_arc) {
                (Some(ArcExponent::Infinite), Some(a)) => Witness::Arc(a.clone()),
                _ => Witness::Point(est.minimizer.clone()),
            };
            IsolatedVerdict::LikelyNo {
                witness,
                estimate: est,
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeterminacyReport {
    pub alpha_tilde: ExponentEstimate,
    pub beta: ExponentEstimate,
    pub k: u32,
    /// Both exponents come from exact arc bounds that match their fits.
    pub rigorous: bool,
    /// The exponent values that entered the formula.
    pub alpha_used: f64,
    pub beta_used: f64,
}

/// k = max([α̃] + 2, [β] + 1) with [a] = ⌊a⌋. α̃ below 1 (an immersion) is
/// raised to 1.
pub fn determinacy_degree(alpha_tilde: f64, beta: f64) -> u32 {
    let a = alpha_tilde.max(1.0).floor() as u32;
    let b = beta.max(0.0).floor() as u32;
    (a + 2).max(b + 1)
}

/// Exponent value used in the determinacy formula: the exact arc bound when
/// it matches the fit, else the conservative ⌈fit + residual⌉.
fn exponent_used(e: &ExponentEstimate) -> (f64, bool) {
    if e.bound_matches_fit(RIGOROUS_GAP) {
        (e.arc_bound_f64().expect("matching bound is finite"), true)
    } else {
        ((e.fitted_alpha + e.fit_residual).ceil(), false)
    }
}

pub fn c0_determinacy_degree(
    f: &PolyMap,
    cfg: &EstimatorConfig,
) -> Result<DeterminacyReport, RegularityError> {
    let (n, p) = (f.domain_dim(), f.codomain_dim());
    if (n, p) != (2, 4) {
        return Err(RegularityError::OutOfScope { n, p });
    }
    let alpha_tilde = match is_isolated_singularity(f, cfg)? {
        IsolatedVerdict::Yes(e) => e,
        IsolatedVerdict::LikelyNo { .. } => return Err(RegularityError::NotIsolated),
    };
    let beta = estimate_exponent_at_zero(&grad_norm_sq(f), cfg, &[])?;
    if beta.verdict == Verdict::LikelyInfinite {
        return Err(RegularityError::GradientNotIsolated);
    }
    Ok(determinacy_from_estimates(alpha_tilde, beta))
}

/// Determinacy degree from already computed L₀(Δ̃f) and gradient estimates.
pub fn determinacy_from_estimates(
    alpha_tilde: ExponentEstimate,
    beta: ExponentEstimate,
) -> DeterminacyReport {
    let (alpha_used, ra) = exponent_used(&alpha_tilde);
    let (beta_used, rb) = exponent_used(&beta);
    DeterminacyReport {
        k: determinacy_degree(alpha_used, beta_used),
        rigorous: ra && rb,
        alpha_tilde,
        beta,
        alpha_used,
        beta_used,
    }
}

/// j^k f = j^k g: every component of f - g has order > k.
pub fn jet_agrees(f: &PolyMap, g: &PolyMap, k: u32) -> Result<bool, PolyError> {
    if f.domain_dim() != g.domain_dim() {
        return Err(PolyError::DimensionMismatch {
            expected: f.domain_dim(),
            got: g.domain_dim(),
        });
    }
    if f.codomain_dim() != g.codomain_dim() {
        return Err(PolyError::DimensionMismatch {
            expected: f.codomain_dim(),
            got: g.codomain_dim(),
        });
    }
    Ok(f.components()
        .iter()
        .zip(g.components())
        .all(|(a, b)| (a - b).truncate(k + 1).is_zero()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    SmoothEmbedding,
    NotLipschitzEmbedding,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityVerdict {
    pub corank0: bool,
    pub double_point_estimate: ExponentEstimate,
    pub classification: Classification,
}

/// Corank 0 decides smooth embedding exactly. Otherwise a double point
/// exponent clearly above 1 rules out a Lipschitz embedding.
pub fn classify_regularity(
    f: &PolyMap,
    cfg: &EstimatorConfig,
) -> Result<RegularityVerdict, RegularityError> {
    let corank0 = corank(f) == 0;
    let est = estimate_double_point_exponent(f, cfg, &[])?;
    let classification = if corank0 {
        Classification::SmoothEmbedding
    } else if est.verdict == Verdict::FiniteEstimated && est.fitted_alpha > 1.0 + est.fit_residual {
        Classification::NotLipschitzEmbedding
    } else {
        Classification::Inconclusive
    };
    Ok(RegularityVerdict {
        corank0,
        double_point_estimate: est,
        classification,
    })
}
