//! Harmonic measure and Green function estimators.
//!
//! Green function: for a bounded domain `G` and `z, w ∈ G`,
//! `u(x) = E_x[log|ζ - w|]` is harmonic in `G` with boundary values
//! `log|ζ - w|`, so `g_G(z, w) = u(z) - log|z - w|`. Untruncated walks run in
//! `D ∩ {|x| < r_escape}`; escaped walks therefore contribute their exact
//! truncated value and the estimate is `g` of the truncated domain, which
//! increases to `g_D` as `r_escape → ∞`.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::{
    run_batches, ExitFeature, ExitSample, ExitStatus, Outcome, Truncation, WalkConfig, Walker,
};
use crate::error::{Error, Result};
use crate::geometry::{DomainSpec, Point};
use crate::stats::Estimate;

fn check_start(walker: &Walker<'_>, z: Point) -> Result<()> {
    if !walker.admits(z) {
        return Err(Error::StartOutsideDomain { x: z.re, y: z.im });
    }
    Ok(())
}

/// Whether the truncation circle is too small to meet any obstacle seen
/// from `z0`, which makes `ω(R)` trivially 1.
pub fn is_degenerate_truncation(spec: &DomainSpec, radius: f64, z0: Point, eps: f64) -> bool {
    radius < spec.distance_to_complement(z0) + eps
}

/// `ω(z0, {|z| = R}, D ∩ {|z| < R})`: fraction of walks reaching the circle.
pub fn harmonic_measure_circle(
    spec: &DomainSpec,
    radius: f64,
    z0: Point,
    cfg: &WalkConfig,
) -> Result<Estimate> {
    cfg.validate()?;
    if !(radius.is_finite() && radius > z0.norm()) {
        return Err(Error::InvalidArgument(alloc::format!(
            "truncation radius {radius} must exceed |z0| = {}",
            z0.norm()
        )));
    }
    harmonic_measure_set(spec, Truncation::outer(radius), z0, cfg, |s| {
        s.feature == ExitFeature::OuterCircle
    })
}

/// Fraction of walks from `z0` whose exit satisfies `target`, in the domain
/// truncated by `trunc`. Escaped walks never count as hits; `escape_bias`
/// is the escaped fraction, an upper bound on the resulting underestimate.
pub fn harmonic_measure_set<F>(
    spec: &DomainSpec,
    trunc: Truncation,
    z0: Point,
    cfg: &WalkConfig,
    target: F,
) -> Result<Estimate>
where
    F: Fn(&ExitSample) -> bool + Sync + Send,
{
    cfg.validate()?;
    let walker = Walker::new(spec, trunc, cfg, cfg.escape_radius(spec, z0.norm()));
    check_start(&walker, z0)?;
    let est = run_batches(cfg.n_samples, cfg.seed, 1, |rng, v| {
        let s = walker.sample(z0, rng);
        match s.status {
            ExitStatus::Absorbed => {
                v[0] = if target(&s) { 1.0 } else { 0.0 };
                Outcome::Used
            }
            ExitStatus::Escaped => {
                v[0] = 0.0;
                Outcome::Escaped
            }
            ExitStatus::StepLimit => Outcome::Discarded,
        }
    });
    let mut e = est[0];
    let contributors = (e.n_used + e.n_escaped).max(1) as f64;
    e.escape_bias = e.n_escaped as f64 / contributors;
    Ok(e)
}

/// `g_D(z, w)` by the exit-point identity.
pub fn green(spec: &DomainSpec, z: Point, w: Point, cfg: &WalkConfig) -> Result<Estimate> {
    green_truncated(spec, Truncation::NONE, z, w, cfg)
}

/// Green function of `D` intersected with the truncation annulus.
pub fn green_truncated(
    spec: &DomainSpec,
    trunc: Truncation,
    z: Point,
    w: Point,
    cfg: &WalkConfig,
) -> Result<Estimate> {
    cfg.validate()?;
    if z == w {
        return Err(Error::Pole);
    }
    let walker = Walker::new(
        spec,
        trunc,
        cfg,
        cfg.escape_radius(spec, z.norm().max(w.norm())),
    );
    check_start(&walker, z)?;
    check_start(&walker, w)?;
    let log_zw = (z - w).norm().ln();
    let est = run_batches(cfg.n_samples, cfg.seed, 1, |rng, v| {
        let s = walker.sample(z, rng);
        v[0] = (s.exit_point - w).norm().ln() - log_zw;
        match s.status {
            ExitStatus::Absorbed => Outcome::Used,
            ExitStatus::Escaped => Outcome::Escaped,
            ExitStatus::StepLimit => Outcome::Discarded,
        }
    });
    Ok(est[0])
}
