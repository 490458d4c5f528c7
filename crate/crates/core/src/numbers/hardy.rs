//! Hardy-number estimators and integral-trend diagnostics.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::fit::{fit_exponent_with, least_squares, ExponentEstimate, Method};
use crate::config::{FitThresholds, TrendThresholds};
use crate::error::{Error, Result};
use crate::geometry::DomainSpec;
use crate::walker::{self, ProfileKind, RadialProfile, WalkConfig};

/// Exponent of `ω(R)`. A polar complement gives 0 without sampling.
pub fn hardy_eks(spec: &DomainSpec, cfg: &WalkConfig, r_grid: &[f64]) -> Result<ExponentEstimate> {
    hardy_eks_with(spec, cfg, r_grid, &FitThresholds::default())
}

pub fn hardy_eks_with(
    spec: &DomainSpec,
    cfg: &WalkConfig,
    r_grid: &[f64],
    th: &FitThresholds,
) -> Result<ExponentEstimate> {
    if spec.complement_is_polar() {
        return Ok(ExponentEstimate::exact(
            0.0,
            Method::Eks,
            ProfileKind::OmegaEks,
        ));
    }
    let profile = walker::omega_profile(spec, r_grid, cfg)?;
    fit_exponent_with(&profile, th)
}

/// Exponent of `ψ(r)` from the base-exit estimator.
pub fn hardy_green(
    spec: &DomainSpec,
    cfg: &WalkConfig,
    r_grid: &[f64],
) -> Result<ExponentEstimate> {
    hardy_green_with(spec, cfg, r_grid, &FitThresholds::default())
}

pub fn hardy_green_with(
    spec: &DomainSpec,
    cfg: &WalkConfig,
    r_grid: &[f64],
    th: &FitThresholds,
) -> Result<ExponentEstimate> {
    if spec.complement_is_polar() {
        return Ok(ExponentEstimate::exact(
            0.0,
            Method::GreenProfile,
            ProfileKind::PsiGreen,
        ));
    }
    let profile = walker::psi_profile_from_base(spec, r_grid, cfg)?;
    fit_exponent_with(&profile, th)
}

/// Exponent of `ψ(r)` from the angular estimator (one walk per drawn angle).
pub fn hardy_green_angular(
    spec: &DomainSpec,
    cfg: &WalkConfig,
    r_grid: &[f64],
) -> Result<ExponentEstimate> {
    if spec.complement_is_polar() {
        return Ok(ExponentEstimate::exact(
            0.0,
            Method::GreenProfile,
            ProfileKind::PsiGreen,
        ));
    }
    let profile = walker::psi_profile(spec, r_grid, cfg)?;
    fit_exponent_with(&profile, &FitThresholds::default())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Trend {
    ConvergentTrend,
    DivergentTrend,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrendReport {
    pub verdict: Trend,
    /// Fitted `μ` in `increment_k ∝ r_k^μ` over the tail half; the integral
    /// converges when `μ < 0`.
    pub tail_exponent: f64,
    pub tail_exponent_stderr: f64,
    /// Trapezoid partial sums `(r_k, ∫_{r_0}^{r_k})` of the integrand.
    pub partial_sums: Vec<(f64, f64)>,
}

/// Trend of `∫ r^{p-1} ψ(r)^{power} dr` on the profile grid.
///
/// On a grid of ratio `λ`, trapezoid increments scale like `r^μ` with `μ`
/// the exponent of `r * integrand`; they decay geometrically exactly when
/// `μ < 0`. `μ` is fitted over the tail half and compared with the dead
/// band `±margin`.
pub fn integral_trend(
    profile: &RadialProfile,
    p: f64,
    power: f64,
    th: &TrendThresholds,
) -> Result<TrendReport> {
    if !(p.is_finite() && p > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "p must be positive, got {p}"
        )));
    }
    let drop_sigma = FitThresholds::default().drop_sigma;
    let pts: Vec<(f64, f64)> = profile
        .entries
        .iter()
        .filter(|e| e.estimate.mean > drop_sigma * e.estimate.stderr && e.estimate.mean > 0.0)
        .map(|e| {
            (
                e.radius,
                e.radius.powf(p - 1.0) * e.estimate.mean.powf(power),
            )
        })
        .collect();
    if pts.len() < 4 {
        return Err(Error::InsufficientEntries {
            needed: 4,
            got: pts.len(),
        });
    }
    let mut partial_sums = Vec::with_capacity(pts.len());
    let mut sum = 0.0;
    partial_sums.push((pts[0].0, 0.0));
    let mut lx = Vec::new();
    let mut ly = Vec::new();
    for w in pts.windows(2) {
        let inc = 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0);
        sum += inc;
        partial_sums.push((w[1].0, sum));
        lx.push((w[0].0 * w[1].0).sqrt().ln());
        ly.push(inc.ln());
    }
    let half = lx.len() / 2;
    let start = half.min(lx.len().saturating_sub(3));
    let fit = least_squares(&lx[start..], &ly[start..]);
    let verdict = if fit.slope < -th.margin {
        Trend::ConvergentTrend
    } else if fit.slope > th.margin {
        Trend::DivergentTrend
    } else {
        Trend::Inconclusive
    };
    Ok(TrendReport {
        verdict,
        tail_exponent: fit.slope,
        tail_exponent_stderr: fit.slope_stderr,
        partial_sums,
    })
}

/// Trend of `∫ r^{p-1} ψ(r) dr`, finite when `f_D ∈ H^p`.
pub fn hardy_integral_diagnostic(
    spec: &DomainSpec,
    p: f64,
    cfg: &WalkConfig,
    r_grid: &[f64],
) -> Result<TrendReport> {
    let profile = walker::psi_profile_from_base(spec, r_grid, cfg)?;
    integral_trend(&profile, p, 1.0, &TrendThresholds::default())
}

/// Trend of `∫ r^{p-1} ψ(r)^{α+2} dr`: a necessary-condition diagnostic
/// for `f_D ∈ A^p_α` under a Green-function comparison hypothesis.
pub fn bergman_alpha_profile(
    spec: &DomainSpec,
    p: f64,
    alpha: f64,
    cfg: &WalkConfig,
    r_grid: &[f64],
) -> Result<TrendReport> {
    if alpha <= -1.0 {
        return Err(Error::InvalidArgument(alloc::format!(
            "alpha must exceed -1, got {alpha}"
        )));
    }
    let profile = walker::psi_profile_from_base(spec, r_grid, cfg)?;
    integral_trend(&profile, p, alpha + 2.0, &TrendThresholds::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psi_like(exp: f64) -> RadialProfile {
        let radii: Vec<f64> = (2..=10).map(|k| (1u64 << k) as f64).collect();
        let values: Vec<f64> = radii.iter().map(|r| 3.0 * r.powf(-exp)).collect();
        RadialProfile::from_values(ProfileKind::PsiGreen, &radii, &values)
    }

    #[test]
    fn trend_transition_at_power_times_exponent() {
        let prof = psi_like(0.5);
        let th = TrendThresholds::default();
        assert_eq!(
            integral_trend(&prof, 0.25, 1.0, &th).unwrap().verdict,
            Trend::ConvergentTrend
        );
        assert_eq!(
            integral_trend(&prof, 1.0, 1.0, &th).unwrap().verdict,
            Trend::DivergentTrend
        );
        assert_eq!(
            integral_trend(&prof, 0.5, 1.0, &th).unwrap().verdict,
            Trend::Inconclusive
        );
        assert_eq!(
            integral_trend(&prof, 0.8, 2.0, &th).unwrap().verdict,
            Trend::ConvergentTrend
        );
        assert_eq!(
            integral_trend(&prof, 1.2, 2.0, &th).unwrap().verdict,
            Trend::DivergentTrend
        );
        let r = integral_trend(&prof, 0.75, 1.0, &th).unwrap();
        assert!((r.tail_exponent - 0.25).abs() < 0.02, "{}", r.tail_exponent);
    }
}
