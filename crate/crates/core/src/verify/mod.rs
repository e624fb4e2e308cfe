//! Numerical checks of the inequalities between spectral Barron, Sobolev,
//! `L^1` and `L^inf` norms on band-limited functions.
//!
//! Every check reports both sides, the constant, `slack = rhs - lhs` and a
//! verdict. Inequalities pass iff `slack >= -tol max(1, rhs)`; the isometry
//! passes iff `|slack| <= tol_iso rhs`.

mod generate;
mod suite;

pub use generate::{random_coefficients, random_symbol, Family};
pub use suite::{
    run_suite, run_suite_with, Counts, Environment, InterpolationGrid, KappaCensus, SuiteConfig,
    Tally, VerificationReport,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fourier::{FourierCoefficients, PointEvaluator, SpectralGrid};
use crate::group::TruncatedDual;
use crate::operators::{bessel_potential, convolve_spectral, pseudo_diff, SpectralSymbol};
use crate::precision::Tolerances;
use crate::spectra::{bessel_factor, lp_norm, EntryNorms, Gamma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremName {
    Isometry,
    Interpolation,
    PseudodiffBound,
    ConvolutionBound,
    OrderEmbedding,
    SobolevEmbedding,
    LinfEmbedding,
}

/// Which constant a Sobolev-embedding check uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `kappa = sum d (1 + gamma^2)^(t - s)`.
    KappaPaper,
    /// `kappa* = sum d^3 (1 + gamma^2)^(t - s)`.
    KappaStar,
}

/// Parameters identifying a check. Unused orders are omitted from JSON.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckParams {
    pub group: String,
    pub space: String,
    pub gamma: String,
    pub band: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub name: TheoremName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    pub slack: f64,
    pub pass: bool,
    pub params: CheckParams,
}

impl TheoremCheck {
    /// `kappa_paper` outcomes are findings and never count as failures.
    pub fn is_required(&self) -> bool {
        self.variant != Some(Variant::KappaPaper)
    }
}

/// Weight and tolerances shared by the checks of one case.
#[derive(Debug, Clone)]
pub struct CheckSettings {
    pub gamma: Gamma,
    pub tolerances: Tolerances,
}

impl CheckSettings {
    pub fn new(gamma: Gamma, tolerances: Tolerances) -> Self {
        CheckSettings { gamma, tolerances }
    }

    fn params(&self, f: &FourierCoefficients) -> CheckParams {
        CheckParams {
            group: f.group().to_string(),
            space: f.space.to_string(),
            gamma: self.gamma.id(),
            band: f.dual.band,
            ..CheckParams::default()
        }
    }

    fn inequality(&self, name: TheoremName, lhs: f64, rhs: f64, constant: f64, params: CheckParams) -> TheoremCheck {
        let slack = rhs - lhs;
        TheoremCheck {
            name,
            variant: None,
            lhs,
            rhs,
            constant,
            slack,
            pass: slack >= -self.tolerances.check * rhs.max(1.0),
            params,
        }
    }

    fn barron(&self, norms: &EntryNorms, s: f64) -> Result<f64> {
        Ok(norms.barron(&self.gamma, s)?.value)
    }
}

fn require(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(what()))
    }
}

fn order(name: &str, v: f64) -> Result<()> {
    require(v.is_finite() && v >= 0.0, || format!("{name} = {v} must be finite and >= 0"))
}

/// Largest irrep dimension in `dual`.
pub fn compute_rho(dual: &TruncatedDual) -> usize {
    dual.max_dim()
}

fn kappa_with(dual: &TruncatedDual, gamma: &Gamma, s: f64, t: f64, power: i32) -> Result<f64> {
    let gammas = gamma.values_on(dual)?;
    Ok(dual
        .irreps
        .iter()
        .zip(gammas)
        .map(|(r, g)| (r.dim as f64).powi(power) * bessel_factor(g, t - s))
        .sum())
}

/// `sum_sigma d_sigma (1 + gamma^2)^(t - s)` over the truncated dual.
pub fn compute_kappa(dual: &TruncatedDual, gamma: &Gamma, s: f64, t: f64) -> Result<f64> {
    kappa_with(dual, gamma, s, t, 1)
}

/// `sum_sigma d_sigma^3 (1 + gamma^2)^(t - s)` over the truncated dual.
pub fn compute_kappa_star(dual: &TruncatedDual, gamma: &Gamma, s: f64, t: f64) -> Result<f64> {
    kappa_with(dual, gamma, s, t, 3)
}

/// `||bessel(f, s)||_{B^0} = ||f||_{B^{2s}}`, `s >= 0`.
pub fn check_isometry(cfg: &CheckSettings, f: &FourierCoefficients, s: f64) -> Result<TheoremCheck> {
    isometry(cfg, f, &EntryNorms::of_with(f, Exec::Serial), cfg.params(f), s)
}

fn isometry(cfg: &CheckSettings, f: &FourierCoefficients, norms: &EntryNorms, params: CheckParams, s: f64) -> Result<TheoremCheck> {
    order("s", s)?;
    let lhs = cfg.barron(&EntryNorms::of_with(&bessel_potential(f, &cfg.gamma, s)?, Exec::Serial), 0.0)?;
    let rhs = cfg.barron(norms, 2.0 * s)?;
    let slack = rhs - lhs;
    Ok(TheoremCheck {
        name: TheoremName::Isometry,
        variant: None,
        lhs,
        rhs,
        constant: 1.0,
        slack,
        pass: slack.abs() <= cfg.tolerances.isometry * rhs,
        params: CheckParams { s: Some(s), ..params },
    })
}

/// `||f||_{B^s} <= ||f||_{B^r}^alpha ||f||_{B^t}^(1 - alpha)` with
/// `s = alpha r + (1 - alpha) t`, `0 <= r <= t`, `alpha in [0, 1]`.
pub fn check_interpolation(cfg: &CheckSettings, f: &FourierCoefficients, r: f64, t: f64, alpha: f64) -> Result<TheoremCheck> {
    interpolation(cfg, &EntryNorms::of_with(f, Exec::Serial), cfg.params(f), r, t, alpha)
}

fn interpolation(cfg: &CheckSettings, norms: &EntryNorms, params: CheckParams, r: f64, t: f64, alpha: f64) -> Result<TheoremCheck> {
    order("r", r)?;
    order("t", t)?;
    require(r <= t, || format!("interpolation needs r <= t, got r = {r}, t = {t}"))?;
    require((0.0..=1.0).contains(&alpha), || format!("alpha = {alpha} must lie in [0, 1]"))?;
    let s = alpha * r + (1.0 - alpha) * t;
    let lhs = cfg.barron(norms, s)?;
    let rhs = cfg.barron(norms, r)?.powf(alpha) * cfg.barron(norms, t)?.powf(1.0 - alpha);
    let params = CheckParams { s: Some(s), t: Some(t), r: Some(r), alpha: Some(alpha), ..params };
    Ok(cfg.inequality(TheoremName::Interpolation, lhs, rhs, 1.0, params))
}

/// `||f||_{B^s} <= ||f||_{B^t}` for `0 <= s < t`.
pub fn check_order_embedding(cfg: &CheckSettings, f: &FourierCoefficients, s: f64, t: f64) -> Result<TheoremCheck> {
    order_embedding(cfg, &EntryNorms::of_with(f, Exec::Serial), cfg.params(f), s, t)
}

fn strict_orders(s: f64, t: f64) -> Result<()> {
    order("s", s)?;
    order("t", t)?;
    require(s < t, || format!("the embedding needs s < t, got s = {s}, t = {t}"))
}

fn order_embedding(cfg: &CheckSettings, norms: &EntryNorms, params: CheckParams, s: f64, t: f64) -> Result<TheoremCheck> {
    strict_orders(s, t)?;
    let lhs = cfg.barron(norms, s)?;
    let rhs = cfg.barron(norms, t)?;
    let params = CheckParams { s: Some(s), t: Some(t), ..params };
    Ok(cfg.inequality(TheoremName::OrderEmbedding, lhs, rhs, 1.0, params))
}

/// `||P_a f||_{B^s} <= max_sigma (1 + gamma^2)^((s - t)/2) |a| ||f||_{B^t}`,
/// `s, t >= 0`.
pub fn check_pseudodiff_bound(cfg: &CheckSettings, f: &FourierCoefficients, a: &SpectralSymbol, s: f64, t: f64) -> Result<TheoremCheck> {
    pseudodiff_bound(cfg, f, &EntryNorms::of_with(f, Exec::Serial), cfg.params(f), a, s, t)
}

fn pseudodiff_bound(
    cfg: &CheckSettings,
    f: &FourierCoefficients,
    norms: &EntryNorms,
    params: CheckParams,
    a: &SpectralSymbol,
    s: f64,
    t: f64,
) -> Result<TheoremCheck> {
    order("s", s)?;
    order("t", t)?;
    let pf = pseudo_diff(f, a)?;
    let gammas = cfg.gamma.values_on(&f.dual)?;
    let mut constant = 0.0_f64;
    for (label, g) in f.dual.labels().zip(gammas) {
        let v = a.get(label).expect("pseudo_diff checked the symbol");
        constant = constant.max(bessel_factor(g, (s - t) / 2.0) * v.norm());
    }
    let lhs = cfg.barron(&EntryNorms::of_with(&pf, Exec::Serial), s)?;
    let rhs = constant * cfg.barron(norms, t)?;
    let params = CheckParams { s: Some(s), t: Some(t), ..params };
    Ok(cfg.inequality(TheoremName::PseudodiffBound, lhs, rhs, constant, params))
}

/// `||f * g||_{B^s} <= rho ||f||_{L^1} ||g||_{B^s}`. `||f||_{L^1}` is the
/// quadrature sum on `grid`, which bounds every entry of `f^` because the
/// rule is exact for `f` against matrix coefficients.
pub fn check_convolution_bound(
    cfg: &CheckSettings,
    grid: &SpectralGrid,
    f: &FourierCoefficients,
    g: &FourierCoefficients,
    s: f64,
) -> Result<TheoremCheck> {
    let l1 = lp_norm(&grid.synthesize_coefficients(f, Exec::Serial)?, 1.0)?;
    convolution_bound(cfg, f, g, l1, &EntryNorms::of_with(g, Exec::Serial), cfg.params(f), s)
}

fn convolution_bound(
    cfg: &CheckSettings,
    f: &FourierCoefficients,
    g: &FourierCoefficients,
    f_l1: f64,
    g_norms: &EntryNorms,
    params: CheckParams,
    s: f64,
) -> Result<TheoremCheck> {
    order("s", s)?;
    let fg = convolve_spectral(f, g)?;
    let rho = compute_rho(&f.dual) as f64;
    let lhs = cfg.barron(&EntryNorms::of_with(&fg, Exec::Serial), s)?;
    let rhs = rho * f_l1 * cfg.barron(g_norms, s)?;
    let params = CheckParams { s: Some(s), ..params };
    Ok(cfg.inequality(TheoremName::ConvolutionBound, lhs, rhs, rho, params))
}

/// `||f||_{B^t} <= c ||f||_{H^s}` for `0 <= s < t`, once with
/// `c = kappa^(1/2)` and once with `c = kappa*^(1/2)`.
pub fn check_sobolev_embedding(cfg: &CheckSettings, f: &FourierCoefficients, s: f64, t: f64) -> Result<[TheoremCheck; 2]> {
    sobolev_embedding(cfg, &EntryNorms::of_with(f, Exec::Serial), cfg.params(f), s, t)
}

fn sobolev_embedding(cfg: &CheckSettings, norms: &EntryNorms, params: CheckParams, s: f64, t: f64) -> Result<[TheoremCheck; 2]> {
    strict_orders(s, t)?;
    let dual = norms.dual();
    let lhs = cfg.barron(norms, t)?;
    let h = norms.sobolev(&cfg.gamma, s)?.value;
    let params = CheckParams { s: Some(s), t: Some(t), ..params };
    let mk = |variant, kappa: f64| {
        let constant = kappa.sqrt();
        TheoremCheck {
            variant: Some(variant),
            ..cfg.inequality(TheoremName::SobolevEmbedding, lhs, constant * h, constant, params.clone())
        }
    };
    Ok([
        mk(Variant::KappaPaper, compute_kappa(dual, &cfg.gamma, s, t)?),
        mk(Variant::KappaStar, compute_kappa_star(dual, &cfg.gamma, s, t)?),
    ])
}

/// `sup_x ||f(x)||_A <= ||f||_{B^s}`, `s >= 0`, with the sup taken over the
/// points of `points`. A grid sup never exceeds the true sup, so a pass is
/// sound.
pub fn check_linf_embedding(cfg: &CheckSettings, points: &PointEvaluator, f: &FourierCoefficients, s: f64) -> Result<TheoremCheck> {
    let sup = points.sup_norm(f, Exec::Serial)?;
    linf_embedding(cfg, &EntryNorms::of_with(f, Exec::Serial), sup, cfg.params(f), s)
}

fn linf_embedding(cfg: &CheckSettings, norms: &EntryNorms, sup: f64, params: CheckParams, s: f64) -> Result<TheoremCheck> {
    order("s", s)?;
    let rhs = cfg.barron(norms, s)?;
    let params = CheckParams { s: Some(s), ..params };
    Ok(cfg.inequality(TheoremName::LinfEmbedding, sup, rhs, 1.0, params))
}
