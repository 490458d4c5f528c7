//! Radial profiles `ω(R)` and `ψ(r) = ∫ g(r e^{iθ}, b) dθ`.
//!
//! Two estimators of `ψ` are provided. [`psi_profile`] averages Green walks
//! started at uniformly drawn angles, one radius at a time.
//! [`psi_profile_from_base`] uses the symmetry `g(z, b) = g(b, z)` and the
//! circle mean `(1/2π) ∫ log|ζ - r e^{iθ}| dθ = log max(|ζ|, r)`, which give
//!
//! `ψ(r) = 2π (E_b[log max(|ζ|, r)] - log max(|b|, r))`
//!
//! with `ζ` the exit point of a walk from the base point `b`. One batch of
//! walks then serves every radius. Both estimate `ψ` of the domain
//! truncated at the escape radius.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::{run_batches, ExitStatus, Outcome, Schedule, Truncation, WalkConfig, Walker};
use crate::error::{Error, Result};
use crate::geometry::DomainSpec;
use crate::rng;
use crate::stats::Estimate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ProfileKind {
    OmegaEks,
    PsiGreen,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProfileEntry {
    pub radius: f64,
    pub estimate: Estimate,
    /// Seed of the random streams that produced this entry.
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RadialProfile {
    pub kind: ProfileKind,
    pub entries: Vec<ProfileEntry>,
}

impl RadialProfile {
    /// Profile from exact values, e.g. for testing fits.
    pub fn from_values(kind: ProfileKind, radii: &[f64], values: &[f64]) -> Self {
        RadialProfile {
            kind,
            entries: radii
                .iter()
                .zip(values)
                .map(|(&radius, &v)| ProfileEntry {
                    radius,
                    estimate: Estimate::exact(v),
                    seed: 0,
                })
                .collect(),
        }
    }

    pub fn radii(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.radius).collect()
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("radius grid is empty".into()));
    }
    if grid[0] <= 0.0 || !grid.iter().all(|r| r.is_finite()) {
        return Err(Error::InvalidArgument(
            "radii must be positive and finite".into(),
        ));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "radii must be strictly increasing".into(),
        ));
    }
    Ok(())
}

fn samples_at(cfg: &WalkConfig, r: f64, r0: f64) -> u64 {
    match cfg.schedule {
        Schedule::Constant => cfg.n_samples,
        Schedule::Log2Growth => {
            let f = 1.0 + (r / r0).log2().max(0.0);
            ((cfg.n_samples as f64) * f).round() as u64
        }
    }
}

/// `ω(R)` at each radius, walks from the base point.
pub fn omega_profile(spec: &DomainSpec, r_grid: &[f64], cfg: &WalkConfig) -> Result<RadialProfile> {
    check_grid(r_grid)?;
    let z0 = spec.base_point();
    let mut entries = Vec::with_capacity(r_grid.len());
    for (k, &r) in r_grid.iter().enumerate() {
        let seed = rng::derive_seed(cfg.seed, k as u64);
        let c = cfg
            .clone()
            .with_seed(seed)
            .with_samples(samples_at(cfg, r, r_grid[0]));
        let estimate = super::harmonic_measure_circle(spec, r, z0, &c)?;
        entries.push(ProfileEntry {
            radius: r,
            estimate,
            seed,
        });
    }
    Ok(RadialProfile {
        kind: ProfileKind::OmegaEks,
        entries,
    })
}

/// Angular estimator: one Green walk per uniformly drawn angle. Starts
/// outside the domain contribute 0.
pub fn psi_profile(spec: &DomainSpec, r_grid: &[f64], cfg: &WalkConfig) -> Result<RadialProfile> {
    cfg.validate()?;
    check_grid(r_grid)?;
    let b = spec.base_point();
    if r_grid.iter().any(|&r| r == b.norm()) {
        // A circle through the pole contains it.
        return Err(Error::Pole);
    }
    let mut entries = Vec::with_capacity(r_grid.len());
    for (k, &r) in r_grid.iter().enumerate() {
        let seed = rng::derive_seed(cfg.seed, k as u64);
        let walker = Walker::new(
            spec,
            Truncation::NONE,
            cfg,
            cfg.escape_radius(spec, r.max(b.norm())),
        );
        let n = samples_at(cfg, r, r_grid[0]);
        let est = run_batches(n, seed, 1, |g, v| {
            let z = Complex64::from_polar(r, TAU * rng::uniform(g));
            if !spec.contains(z) {
                v[0] = 0.0;
                return Outcome::Used;
            }
            let s = walker.sample(z, g);
            v[0] = (s.exit_point - b).norm().ln() - (z - b).norm().ln();
            match s.status {
                ExitStatus::Absorbed => Outcome::Used,
                ExitStatus::Escaped => Outcome::Escaped,
                ExitStatus::StepLimit => Outcome::Discarded,
            }
        });
        entries.push(ProfileEntry {
            radius: r,
            estimate: est[0].scaled(TAU),
            seed,
        });
    }
    Ok(RadialProfile {
        kind: ProfileKind::PsiGreen,
        entries,
    })
}

/// Base-exit estimator: one batch of walks from the base point, every
/// radius read off the same exit points.
pub fn psi_profile_from_base(
    spec: &DomainSpec,
    r_grid: &[f64],
    cfg: &WalkConfig,
) -> Result<RadialProfile> {
    cfg.validate()?;
    check_grid(r_grid)?;
    let b = spec.base_point();
    let r_max = *r_grid.last().expect("grid checked non-empty");
    let walker = Walker::new(
        spec,
        Truncation::NONE,
        cfg,
        cfg.escape_radius(spec, r_max.max(b.norm())),
    );
    let logs: Vec<(f64, f64)> = r_grid
        .iter()
        .map(|&r| (r.ln(), r.max(b.norm()).ln()))
        .collect();
    let est = run_batches(cfg.n_samples, cfg.seed, r_grid.len(), |g, v| {
        let s = walker.sample(b, g);
        let lz = s.exit_point.norm().ln();
        for (slot, &(lr, lmax)) in v.iter_mut().zip(&logs) {
            *slot = lz.max(lr) - lmax;
        }
        match s.status {
            ExitStatus::Absorbed => Outcome::Used,
            ExitStatus::Escaped => Outcome::Escaped,
            ExitStatus::StepLimit => Outcome::Discarded,
        }
    });
    Ok(RadialProfile {
        kind: ProfileKind::PsiGreen,
        entries: r_grid
            .iter()
            .zip(est)
            .map(|(&radius, e)| ProfileEntry {
                radius,
                estimate: e.scaled(TAU),
                seed: cfg.seed,
            })
            .collect(),
    })
}
