//! Domain constructions: lattice punctures, the circular-arc domain with
//! its certified width search, class-𝒟 constants, and the annulus rate
//! check.

mod arc;
mod class_d;

use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

pub use arc::{
    arc_domain_spec, calibrate_arc_constant, certificate_target, search_arc_widths,
    search_arc_widths_with, ArcDomainParams, Certificate,
};
pub use class_d::{
    class_d_constants, class_d_constants_with, class_d_grid, green_ratio_diagnostic, probe_points,
    symmetrized_domain, symmetrized_reference_exact, symmetrized_reference_measure,
    ClassDConstants, GreenRatioPoint, GreenRatioReport, SpotCheck,
};

use crate::error::{Error, Result};
use crate::geometry::{DomainSpec, Obstacle};
use crate::numbers::least_squares;
use crate::stats::Estimate;
use crate::walker::{harmonic_measure_set, ExitFeature, Truncation, WalkConfig};

/// `spec` minus the lattice `{(m + 1/2) s + i (n + 1/2) s}`.
///
/// The lattice is offset by half a cell so that the base point at the
/// origin stays in the domain.
pub fn grid_puncture(spec: &DomainSpec, spacing: f64) -> Result<DomainSpec> {
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "spacing must be positive, got {spacing}"
        )));
    }
    spec.extended(
        alloc::format!("{}-grid({spacing})", spec.label()),
        alloc::vec![Obstacle::PolarLattice {
            origin: Complex64::new(0.5 * spacing, 0.5 * spacing),
            basis: [Complex64::new(spacing, 0.0), Complex64::new(0.0, spacing)],
            bound: None,
        }],
    )
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RateReport {
    pub r1: f64,
    pub r: f64,
    /// `(R2, ω(iR, {|z| = R2}, Ω))`.
    pub estimates: Vec<(f64, Estimate)>,
    /// Decay exponent from a log-log fit against `R2` over the upper half
    /// of the grid.
    pub exponent: f64,
    /// `min ω · √R2` over the grid.
    pub constant: f64,
}

/// Harmonic measure of the outer circle from `iR` in the slit annulus
/// `{R1 < |z| < R2} ∖ (-R2, -R1)`, for each `R2` in the grid.
pub fn rate_bound_check(r1: f64, r: f64, r2_grid: &[f64], cfg: &WalkConfig) -> Result<RateReport> {
    let min_r2 = r2_grid.iter().copied().fold(f64::INFINITY, f64::min);
    if !(r1 > 0.0 && r1 < r && r < min_r2) {
        return Err(Error::InvalidArgument("need 0 < R1 < R < min(R2)".into()));
    }
    let z0 = Complex64::new(0.0, r);
    let mut estimates = Vec::with_capacity(r2_grid.len());
    for &r2 in r2_grid {
        let spec = DomainSpec::with_base(
            "slit-annulus",
            alloc::vec![Obstacle::Segment {
                a: Complex64::new(-r2, 0.0),
                b: Complex64::new(-r1, 0.0),
            }],
            r,
            z0,
        )?;
        let trunc = Truncation {
            inner: Some(r1),
            outer: Some(r2),
        };
        let e = harmonic_measure_set(&spec, trunc, z0, cfg, |s| {
            s.feature == ExitFeature::OuterCircle
        })?;
        estimates.push((r2, e));
    }
    // Pre-asymptotic decay is faster; fit the upper half of the grid.
    let tail = &estimates[estimates.len() / 2..];
    let (xs, ys): (Vec<f64>, Vec<f64>) = tail
        .iter()
        .filter(|(_, e)| e.mean > 0.0)
        .map(|(r2, e)| (r2.ln(), e.mean.ln()))
        .unzip();
    let exponent = if xs.len() >= 2 {
        -least_squares(&xs, &ys).slope
    } else {
        f64::NAN
    };
    let constant = estimates
        .iter()
        .map(|(r2, e)| e.mean * r2.sqrt())
        .fold(f64::INFINITY, f64::min);
    Ok(RateReport {
        r1,
        r,
        estimates,
        exponent,
        constant,
    })
}
