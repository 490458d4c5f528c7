//! Constants `R < ρ < σ` of a class-𝒟 domain and their diagnostics.
//!
//! `ρ` is taken from the symmetrized comparison domain
//! `Ω* = ℂ ∖ ({|z| ≤ R} ∪ (-∞, -R))`, whose measure of the inner circle seen
//! from radius `r` bounds the same quantity for any domain whose complement
//! meets every circle `|z| = t > R`. `σ` comes from the closed-form
//! hyperbolic distance in `ℂ ∖ (-∞, -R]`.

use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI, TAU};

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::analytic::ClosedFormDomain;
use crate::config::{ConstructionThresholds, GeometryThresholds};
use crate::error::{Error, Result};
use crate::geometry::{class_d_check_with, omega_hull, ClassDReport, DomainSpec, Obstacle, Point};
use crate::stats::Estimate;
use crate::walker::{green_truncated, harmonic_measure_set, ExitFeature, Truncation, WalkConfig};

/// Default radius grid for the class-𝒟 scan: `scale / 2 · 2^{k/2}`.
pub fn class_d_grid(spec: &DomainSpec) -> Vec<f64> {
    let s = spec.scale_hint().max(1e-9);
    (0..=40)
        .map(|k| 0.5 * s * 2f64.powf(k as f64 / 2.0))
        .collect()
}

/// `ω(r, {|z| = R}, Ω*)` with walks started at the real point `r`.
/// Escaped walks count as misses; `escape_bias` bounds that effect.
pub fn symmetrized_reference_measure(r: f64, big_r: f64, cfg: &WalkConfig) -> Result<Estimate> {
    if !(big_r > 0.0 && r > big_r && r.is_finite()) {
        return Err(Error::InvalidArgument(alloc::format!(
            "need 0 < R < r, got R = {big_r}, r = {r}"
        )));
    }
    let spec = symmetrized_domain(big_r, r)?;
    harmonic_measure_set(&spec, Truncation::NONE, Complex64::new(r, 0.0), cfg, |s| {
        s.feature == ExitFeature::Obstacle(0)
    })
}

/// `Ω*` as obstacles: the closed disk first so that it wins exit ties at `-R`.
pub fn symmetrized_domain(big_r: f64, base: f64) -> Result<DomainSpec> {
    DomainSpec::with_base(
        "symmetrized",
        alloc::vec![
            Obstacle::ClosedDisk {
                center: Complex64::new(0.0, 0.0),
                radius: big_r,
            },
            Obstacle::HalfLine {
                anchor: Complex64::new(-big_r, 0.0),
                direction: Complex64::new(-1.0, 0.0),
            },
        ],
        big_r,
        Complex64::new(base, 0.0),
    )
}

/// Closed form `(4/π) arctan √(R/r)` of the reference measure.
pub fn symmetrized_reference_exact(r: f64, big_r: f64) -> f64 {
    4.0 / PI * (big_r / r).sqrt().atan()
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpotCheck {
    pub point: Point,
    pub omega: Estimate,
    /// `mean < bound + guard · stderr`.
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassDConstants {
    pub r: f64,
    pub rho: f64,
    pub sigma: f64,
    /// Reference measure at `rho`.
    pub reference: Estimate,
    /// `ρ_Ω̃(rho, sigma)`.
    pub sigma_distance: f64,
    /// Direct checks of `ω(a, {|z| = R}, D ∩ {|z| > R}) < 1/4` for `|a| = rho`.
    pub spot_checks: Vec<SpotCheck>,
    pub spot_ok: bool,
    pub report: ClassDReport,
}

pub fn class_d_constants(spec: &DomainSpec, cfg: &WalkConfig) -> Result<ClassDConstants> {
    class_d_constants_with(
        spec,
        &class_d_grid(spec),
        cfg,
        &GeometryThresholds::default(),
        &ConstructionThresholds::default(),
    )
}

pub fn class_d_constants_with(
    spec: &DomainSpec,
    r_grid: &[f64],
    cfg: &WalkConfig,
    geo: &GeometryThresholds,
    th: &ConstructionThresholds,
) -> Result<ClassDConstants> {
    let report = class_d_check_with(spec, r_grid, geo);
    if report.omega_is_plane {
        return Err(Error::HullIsPlane);
    }
    let big_r = match (report.is_class_d, report.r_constant) {
        (true, Some(r)) => r,
        _ => {
            return Err(Error::NotClassD(
                report
                    .reason
                    .clone()
                    .unwrap_or_else(|| "class-D check failed".into()),
            ))
        }
    };
    let guard = th.sigma_guard;

    // ρ: first doubling of R whose reference measure is certified below the bound.
    let mut rho = 2.0 * big_r;
    let reference = loop {
        if rho > th.doubling_limit * big_r {
            return Err(Error::DoublingExceeded {
                limit: th.doubling_limit,
            });
        }
        let e = symmetrized_reference_measure(rho, big_r, cfg)?;
        if e.mean + guard * e.stderr + e.escape_bias < th.rho_measure_bound {
            break e;
        }
        rho *= 2.0;
    };

    // σ: first doubling of ρ at hyperbolic distance above log 2 / 2 in ℂ ∖ (-∞, -R].
    let slit = ClosedFormDomain::SlitPlane { tip: -big_r };
    let mut sigma = 2.0 * rho;
    let sigma_distance = loop {
        if sigma > th.doubling_limit * rho {
            return Err(Error::DoublingExceeded {
                limit: th.doubling_limit,
            });
        }
        let d = slit.hyperbolic(Complex64::new(rho, 0.0), Complex64::new(sigma, 0.0))?;
        if d > LN_2 / 2.0 {
            break d;
        }
        sigma *= 2.0;
    };

    let probes = probe_points(spec, rho, th.spot_probes, geo.angular_resolution);
    let mut spot_checks = Vec::with_capacity(probes.len());
    for a in probes {
        let omega = harmonic_measure_set(spec, Truncation::inner(big_r), a, cfg, |s| {
            s.feature == ExitFeature::InnerCircle
        })?;
        spot_checks.push(SpotCheck {
            point: a,
            ok: omega.mean < th.rho_measure_bound + guard * omega.stderr,
            omega,
        });
    }
    let spot_ok = !spot_checks.is_empty() && spot_checks.iter().all(|s| s.ok);
    Ok(ClassDConstants {
        r: big_r,
        rho,
        sigma,
        reference,
        sigma_distance,
        spot_checks,
        spot_ok,
        report,
    })
}

/// `count` points of `{|z| = r} ∩ D`, spread evenly over the admissible
/// angular samples and kept away from their ends.
pub fn probe_points(spec: &DomainSpec, r: f64, count: usize, resolution: usize) -> Vec<Point> {
    let n = resolution.max(count * 4);
    let margin = r * TAU / n as f64;
    let ok: Vec<Point> = (0..n)
        .map(|k| Complex64::from_polar(r, TAU * (k as f64 + 0.5) / n as f64))
        .filter(|&z| spec.distance_to_complement(z) > margin)
        .collect();
    if ok.is_empty() || count == 0 {
        return Vec::new();
    }
    (0..count)
        .map(|i| ok[((2 * i + 1) * ok.len()) / (2 * count)])
        .collect()
}

/// The point of `{|z| = r}` farthest from the complement.
fn deepest_point(spec: &DomainSpec, r: f64, resolution: usize) -> Option<Point> {
    (0..resolution)
        .map(|k| Complex64::from_polar(r, TAU * (k as f64 + 0.5) / resolution as f64))
        .map(|z| (spec.distance_to_complement(z), z))
        .filter(|(d, _)| *d > 0.0)
        .max_by(|x, y| x.0.total_cmp(&y.0))
        .map(|(_, z)| z)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GreenRatioPoint {
    pub w: Point,
    pub hull: Estimate,
    pub truncated: Estimate,
    pub ratio: f64,
}

/// `ĝ_Ω(a, w) / ĝ_{D_R}(a, w)` over points `w` beyond `sigma`, where `Ω` is
/// the hull and `D_R = D ∩ {|z| > R}`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GreenRatioReport {
    pub a: Point,
    pub points: Vec<GreenRatioPoint>,
    pub median: f64,
    pub max: f64,
    /// Least-squares slope of the ratio against `log |w|`.
    pub trend_slope: f64,
    /// Every ratio is at most `green_ratio_factor` times the median.
    pub bounded: bool,
}

/// Ratio diagnostic at `n_points` points `w`, placed on the rays through
/// the deepest point `a` of `{|z| = rho}` at radii `sigma · 2^{k/4}`. Walks start at `a` because
/// `w` is far away, which keeps the variance of `log|ζ - w|` small.
pub fn green_ratio_diagnostic(
    spec: &DomainSpec,
    constants: &ClassDConstants,
    n_points: usize,
    cfg: &WalkConfig,
    th: &ConstructionThresholds,
) -> Result<GreenRatioReport> {
    let hull = omega_hull(spec)?;
    let a = deepest_point(spec, constants.rho, 4096)
        .ok_or_else(|| Error::InvalidArgument("no admissible point at radius rho".into()))?;
    let dir = a / a.norm();
    let mut points = Vec::with_capacity(n_points);
    for k in 0..n_points {
        let w = dir * (constants.sigma * 2f64.powf(k as f64 / 4.0));
        if !spec.contains(w) {
            continue;
        }
        let g_hull = green_truncated(&hull, Truncation::NONE, a, w, cfg)?;
        let g_trunc = green_truncated(spec, Truncation::inner(constants.r), a, w, cfg)?;
        points.push(GreenRatioPoint {
            w,
            ratio: g_hull.mean / g_trunc.mean,
            hull: g_hull,
            truncated: g_trunc,
        });
    }
    if points.len() < 2 {
        return Err(Error::InsufficientEntries {
            needed: 2,
            got: points.len(),
        });
    }
    let mut sorted: Vec<f64> = points.iter().map(|p| p.ratio).collect();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    let max = *sorted.last().expect("non-empty");
    let xs: Vec<f64> = points.iter().map(|p| p.w.norm().ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.ratio).collect();
    let fit = crate::numbers::least_squares(&xs, &ys);
    Ok(GreenRatioReport {
        a,
        median,
        max,
        trend_slope: fit.slope,
        bounded: median > 0.0
            && points
                .iter()
                .all(|p| p.ratio <= th.green_ratio_factor * median),
        points,
    })
}
