//! JSON analysis reports.
//!
//! Every numeric field is wrapped as `{"value": ..., "tag": ...}` where the
//! tag says how far the number can be trusted: `exact` (exact arithmetic or
//! an exact arc computation), `fitted` (numerical log-log fit) or
//! `heuristic` (numerical decision with no certificate). Floats are written
//! as strings with 12 significant digits so that reports are byte-stable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::doublepoint::{corank, double_point_ideal, grad_norm_sq};
use crate::linkknot::{
    alexander_polynomial, knot_determinant, link_curve, milnor_radius_probe, reduced_diagram,
    KnotDiagram, LinkConfig, MilnorVerdict,
};
use crate::localalgebra::{quotient_dim, DimResult, DimStatus};
use crate::lojestimate::{
    estimate_double_point_exponent, estimate_exponent_at_zero, EstimatorConfig, ExponentEstimate,
    Verdict,
};
use crate::polycore::PolyMap;
use crate::regularity::{
    determinacy_from_estimates, is_isolated_singularity, Classification, DeterminacyReport,
    IsolatedVerdict, RIGOROUS_GAP,
};

pub const SCHEMA: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("report has no link section")]
    MissingLink,
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Exact,
    Fitted,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tagged<T> {
    pub value: T,
    pub tag: Tag,
}

fn exact<T>(value: T) -> Tagged<T> {
    Tagged {
        value,
        tag: Tag::Exact,
    }
}

fn fitted<T>(value: T) -> Tagged<T> {
    Tagged {
        value,
        tag: Tag::Fitted,
    }
}

fn heuristic<T>(value: T) -> Tagged<T> {
    Tagged {
        value,
        tag: Tag::Heuristic,
    }
}

/// 12 significant digits, plain decimal for moderate magnitudes.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        return s;
    }
    let mant = mant.trim_end_matches('0').trim_end_matches('.');
    format!("{mant}e{exp}")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub map: String,
    pub n: usize,
    pub p: usize,
    pub parameters: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaReport {
    /// "finite" or "unstabilized".
    pub status: String,
    pub value: Option<Tagged<u64>>,
    pub lower_bound: Option<Tagged<u64>>,
    pub n_max: u32,
    pub trace: Vec<(u32, u64)>,
}

impl DeltaReport {
    fn new(d: &DimResult, n_max: u32) -> Self {
        let (status, value, lower_bound) = match d.status {
            DimStatus::Finite(v) => ("finite", Some(exact(v)), None),
            DimStatus::Unstabilized { lower_bound, .. } => {
                ("unstabilized", None, Some(exact(lower_bound)))
            }
        };
        DeltaReport {
            status: status.into(),
            value,
            lower_bound,
            n_max,
            trace: d.trace.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentReport {
    pub fitted_alpha: Tagged<String>,
    pub fit_residual: Tagged<String>,
    pub constant: Tagged<String>,
    pub arc_lower_bound: Option<Tagged<String>>,
    pub witness_arc: Option<String>,
    pub verdict: Tagged<String>,
    pub radii_trace: Tagged<Vec<(String, String)>>,
    pub diverged_radii: Vec<String>,
    pub warnings: Vec<String>,
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::FiniteEstimated => "finite_estimated",
        Verdict::LikelyInfinite => "likely_infinite",
        Verdict::Withheld => "withheld",
    }
}

impl From<&ExponentEstimate> for ExponentReport {
    fn from(e: &ExponentEstimate) -> Self {
        ExponentReport {
            fitted_alpha: fitted(fmt_float(e.fitted_alpha)),
            fit_residual: fitted(fmt_float(e.fit_residual)),
            constant: fitted(fmt_float(e.constant)),
            arc_lower_bound: e.arc_lower_bound.as_ref().map(|b| exact(b.to_string())),
            witness_arc: e.witness_arc.as_ref().map(|a| a.to_string()),
            verdict: heuristic(verdict_name(e.verdict).into()),
            radii_trace: fitted(
                e.radii_trace
                    .iter()
                    .map(|&(r, m)| (fmt_float(r), fmt_float(m)))
                    .collect(),
            ),
            diverged_radii: e.diverged_radii.iter().map(|&r| fmt_float(r)).collect(),
            warnings: e.warnings.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exponents {
    pub isolated_singularity: Option<ExponentReport>,
    pub double_point: Option<ExponentReport>,
    pub gradient: Option<ExponentReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminacyOut {
    pub k: Tagged<u32>,
    pub rigorous: bool,
    pub alpha_used: Tagged<String>,
    pub beta_used: Tagged<String>,
}

fn used_tag(e: &ExponentEstimate) -> Tag {
    if e.bound_matches_fit(RIGOROUS_GAP) {
        Tag::Exact
    } else {
        Tag::Heuristic
    }
}

impl From<&DeterminacyReport> for DeterminacyOut {
    fn from(d: &DeterminacyReport) -> Self {
        DeterminacyOut {
            k: Tagged {
                value: d.k,
                tag: if d.rigorous {
                    Tag::Exact
                } else {
                    Tag::Heuristic
                },
            },
            rigorous: d.rigorous,
            alpha_used: Tagged {
                value: fmt_float(d.alpha_used),
                tag: used_tag(&d.alpha_tilde),
            },
            beta_used: Tagged {
                value: fmt_float(d.beta_used),
                tag: used_tag(&d.beta),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityOut {
    pub isolated_singularity: Tagged<bool>,
    pub corank0: bool,
    /// smooth_embedding, not_lipschitz_embedding or inconclusive.
    pub classification: Tagged<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkReport {
    pub epsilon: String,
    pub milnor_probe: Tagged<String>,
    pub crossing_count: Tagged<usize>,
    pub gauss_code: Tagged<Vec<i64>>,
    pub crossing_signs: Vec<i8>,
    pub alexander: Tagged<String>,
    pub determinant: Tagged<String>,
}

impl LinkReport {
    pub fn new(epsilon: f64, milnor: &MilnorVerdict, d: &KnotDiagram) -> Self {
        let alex = alexander_polynomial(d);
        let milnor = match milnor {
            MilnorVerdict::Probable => "probable".to_string(),
            MilnorVerdict::FailedAt { value, point } => format!(
                "failed at ({}, {}) with ratio {}",
                fmt_float(point[0]),
                fmt_float(point[1]),
                fmt_float(*value)
            ),
        };
        LinkReport {
            epsilon: fmt_float(epsilon),
            milnor_probe: heuristic(milnor),
            crossing_count: heuristic(d.crossing_count()),
            gauss_code: heuristic(d.gauss_code()),
            crossing_signs: d.signs(),
            alexander: heuristic(alex.to_string()),
            determinant: heuristic(knot_determinant(&alex).to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub tool_version: String,
    pub seed: u64,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub input: InputEcho,
    pub corank: Tagged<usize>,
    pub delta: Option<DeltaReport>,
    pub exponents: Exponents,
    pub determinacy: Option<DeterminacyOut>,
    pub regularity: Option<RegularityOut>,
    pub link: Option<LinkReport>,
    pub meta: Meta,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Which parts of the analysis to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sections {
    pub delta: bool,
    pub exponents: bool,
    pub determinacy: bool,
    pub regularity: bool,
    pub link: bool,
}

impl Sections {
    pub const ALL: Sections = Sections {
        delta: true,
        exponents: true,
        determinacy: true,
        regularity: true,
        link: true,
    };
    pub const NONE: Sections = Sections {
        delta: false,
        exponents: false,
        determinacy: false,
        regularity: false,
        link: false,
    };
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisOptions {
    pub estimator: EstimatorConfig,
    pub n_max: u32,
    /// The link section is computed only when a radius is given.
    pub epsilon: Option<f64>,
    pub parameters: BTreeMap<String, String>,
    pub sections: Sections,
}

impl AnalysisOptions {
    pub fn new(estimator: EstimatorConfig) -> Self {
        AnalysisOptions {
            estimator,
            n_max: crate::localalgebra::DEFAULT_N_MAX,
            epsilon: None,
            parameters: BTreeMap::new(),
            sections: Sections::ALL,
        }
    }
}

/// Link section for a (2, 4) germ at radius ε.
pub fn link_report(
    f: &PolyMap,
    epsilon: f64,
    seed: u64,
) -> Result<LinkReport, crate::linkknot::LinkError> {
    let milnor = milnor_radius_probe(f, epsilon)?;
    let link = link_curve(f, epsilon)?;
    let d = reduced_diagram(
        &link,
        &LinkConfig {
            seed,
            ..Default::default()
        },
    )?;
    Ok(LinkReport::new(epsilon, &milnor, &d))
}

/// Runs the requested analyses. Mathematical failures (an estimate that
/// cannot be formed, a link that cannot be traced) become warnings and
/// empty sections, never errors.
pub fn analyze(f: &PolyMap, opts: &AnalysisOptions) -> AnalysisReport {
    let cfg = &opts.estimator;
    let s = opts.sections;
    let mut warnings = Vec::new();
    let (n, p) = (f.domain_dim(), f.codomain_dim());

    let delta = if s.delta {
        match double_point_ideal(f) {
            Ok(ideal) => Some(DeltaReport::new(
                &quotient_dim(&ideal, opts.n_max),
                opts.n_max,
            )),
            Err(e) => {
                warnings.push(format!("delta: {e}"));
                None
            }
        }
    } else {
        None
    };

    let need_alpha = s.exponents || s.determinacy || s.regularity;
    let isolated = if need_alpha {
        match is_isolated_singularity(f, cfg) {
            Ok(v) => Some(v),
            Err(e) => {
                warnings.push(format!("isolated singularity exponent: {e}"));
                None
            }
        }
    } else {
        None
    };
    let gradient = if s.exponents || s.determinacy {
        match estimate_exponent_at_zero(&grad_norm_sq(f), cfg, &[]) {
            Ok(e) => Some(e),
            Err(e) => {
                warnings.push(format!("gradient exponent: {e}"));
                None
            }
        }
    } else {
        None
    };
    let double_point = if s.exponents || s.regularity {
        match estimate_double_point_exponent(f, cfg, &[]) {
            Ok(e) => Some(e),
            Err(e) => {
                warnings.push(format!("double point exponent: {e}"));
                None
            }
        }
    } else {
        None
    };

    let exponents = if s.exponents {
        Exponents {
            isolated_singularity: isolated.as_ref().map(|v| v.estimate().into()),
            double_point: double_point.as_ref().map(Into::into),
            gradient: gradient.as_ref().map(Into::into),
        }
    } else {
        Exponents::default()
    };

    let determinacy = if !s.determinacy {
        None
    } else if (n, p) != (2, 4) {
        warnings.push(format!(
            "determinacy: only (2, 4) germs are in scope, got ({n}, {p})"
        ));
        None
    } else {
        match (&isolated, &gradient) {
            (Some(IsolatedVerdict::Yes(a)), Some(b)) if b.verdict != Verdict::LikelyInfinite => {
                Some((&determinacy_from_estimates(a.clone(), b.clone())).into())
            }
            (Some(IsolatedVerdict::LikelyNo { .. }), _) => {
                warnings.push("determinacy: the singularity is likely not isolated".into());
                None
            }
            (_, Some(_)) => {
                warnings.push("determinacy: the gradient exponent is likely infinite".into());
                None
            }
            _ => None,
        }
    };

    let regularity = match (s.regularity, &isolated, &double_point) {
        (true, Some(iso), Some(dp)) => {
            let corank0 = corank(f) == 0;
            let classification = if corank0 {
                Classification::SmoothEmbedding
            } else if dp.verdict == Verdict::FiniteEstimated
                && dp.fitted_alpha > 1.0 + dp.fit_residual
            {
                Classification::NotLipschitzEmbedding
            } else {
                Classification::Inconclusive
            };
            let name = match classification {
                Classification::SmoothEmbedding => "smooth_embedding",
                Classification::NotLipschitzEmbedding => "not_lipschitz_embedding",
                Classification::Inconclusive => "inconclusive",
            };
            Some(RegularityOut {
                isolated_singularity: heuristic(iso.is_yes()),
                corank0,
                classification: Tagged {
                    value: name.into(),
                    tag: if corank0 { Tag::Exact } else { Tag::Heuristic },
                },
            })
        }
        _ => None,
    };

    let link = match (s.link, opts.epsilon) {
        (true, Some(eps)) if (n, p) == (2, 4) => match link_report(f, eps, cfg.seed) {
            Ok(l) => Some(l),
            Err(e) => {
                warnings.push(format!("link: {e}"));
                None
            }
        },
        (true, Some(_)) => {
            warnings.push(format!(
                "link: only (2, 4) germs are in scope, got ({n}, {p})"
            ));
            None
        }
        _ => None,
    };

    AnalysisReport {
        schema: SCHEMA,
        input: InputEcho {
            map: f.to_string(),
            n,
            p,
            parameters: opts.parameters.clone(),
        },
        corank: exact(corank(f)),
        delta,
        exponents,
        determinacy,
        regularity,
        link,
        meta: Meta {
            tool_version: TOOL_VERSION.into(),
            seed: cfg.seed,
            warnings,
        },
    }
}
