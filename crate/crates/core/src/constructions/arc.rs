//! The circular-arc domain and its certified width search.
//!
//! `D(r; α_1..α_m)` is the plane minus the slit `(-∞, -1]` and, for each
//! ring `n ≤ m`, the `2n` arcs `{n e^{i(πj/n + θ)} : |θ| ≤ α_n}`, truncated
//! to `|z| < r`. Adding rings only shrinks the domain, so
//! `ω(0, {|z| = r}, D(r; ...))` decreases with each ring; the search keeps it
//! above `A / (2 √r log r)` at every checkpoint.

use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI, SQRT_2};

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::config::ConstructionThresholds;
use crate::error::{Error, Result};
use crate::geometry::{DomainSpec, Obstacle};
use crate::stats::Estimate;
use crate::walker::{harmonic_measure_circle, WalkConfig};

/// Ring half-widths `α_1..α_{n_max}` and the target constant `A`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ArcDomainParams {
    pub alphas: Vec<f64>,
    pub n_max: usize,
    pub a_constant: f64,
}

impl ArcDomainParams {
    pub fn new(alphas: Vec<f64>, a_constant: f64) -> Self {
        ArcDomainParams {
            n_max: alphas.len(),
            alphas,
            a_constant,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.alphas.len() != self.n_max {
            return Err(Error::InvalidArgument(alloc::format!(
                "n_max = {} but {} widths were given",
                self.n_max,
                self.alphas.len()
            )));
        }
        if !(self.a_constant.is_finite() && self.a_constant > 0.0) {
            return Err(Error::InvalidArgument("A must be positive".into()));
        }
        for (i, &a) in self.alphas.iter().enumerate() {
            let n = (i + 1) as f64;
            if !(a > 0.0 && a < PI / (2.0 * n)) {
                return Err(Error::InvalidArgument(alloc::format!(
                    "ring {}: half-width {a} must lie in (0, π/{}) or the arcs overlap",
                    i + 1,
                    2 * (i + 1)
                )));
            }
        }
        Ok(())
    }
}

/// The slit plus `2n` arcs on every ring `n ≤ n_max`.
pub fn arc_domain_spec(params: &ArcDomainParams) -> Result<DomainSpec> {
    params.validate()?;
    let mut obstacles = alloc::vec![Obstacle::HalfLine {
        anchor: Complex64::new(-1.0, 0.0),
        direction: Complex64::new(-1.0, 0.0),
    }];
    for (i, &alpha) in params.alphas.iter().enumerate() {
        let n = i + 1;
        for j in 0..2 * n {
            obstacles.push(Obstacle::Arc {
                center: Complex64::new(0.0, 0.0),
                radius: n as f64,
                mid_angle: PI * j as f64 / n as f64,
                half_width: alpha,
            });
        }
    }
    DomainSpec::new(
        alloc::format!("arc-domain({} rings)", params.n_max),
        obstacles,
        1.0,
    )
}

/// One checkpoint of the width search.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Certificate {
    pub radius: f64,
    /// Rings present in the certified truncation.
    pub rings: usize,
    pub omega: Estimate,
    /// `A / (2 √r log r)`.
    pub target: f64,
    /// `omega.mean - guard · omega.stderr ≥ target`.
    pub satisfied: bool,
}

/// `A = ω(0, {|z| = 2}, slit plane ∩ {|z| < 2}) · √2 · log 2`, measured.
pub fn calibrate_arc_constant(cfg: &WalkConfig) -> Result<Estimate> {
    let slit = DomainSpec::slit_plane(-1.0)?;
    Ok(harmonic_measure_circle(&slit, 2.0, Complex64::new(0.0, 0.0), cfg)?.scaled(SQRT_2 * LN_2))
}

/// `A / (2 √r log r)`.
pub fn certificate_target(a: f64, r: f64) -> f64 {
    a / (2.0 * r.sqrt() * r.ln())
}

fn certify(alphas: &[f64], a: f64, r: f64, cfg: &WalkConfig, guard: f64) -> Result<Certificate> {
    let spec = arc_domain_spec(&ArcDomainParams::new(alphas.to_vec(), a))?;
    let omega = harmonic_measure_circle(&spec, r, Complex64::new(0.0, 0.0), cfg)?;
    let target = certificate_target(a, r);
    Ok(Certificate {
        radius: r,
        rings: alphas.len(),
        omega,
        target,
        satisfied: omega.mean - guard * omega.stderr >= target,
    })
}

/// Builds `n_target` rings. Each stage doubles the checkpoint radius until
/// the current domain clears twice the certificate target, then gives every
/// ring below the checkpoint one common half-width, the largest (to
/// `width_resolution`) whose certificate holds. Every Monte Carlo
/// evaluation within a stage uses the same seed.
pub fn search_arc_widths(
    a: f64,
    n_target: usize,
    cfg: &WalkConfig,
) -> Result<(ArcDomainParams, Vec<Certificate>)> {
    search_arc_widths_with(a, n_target, cfg, &ConstructionThresholds::default())
}

pub fn search_arc_widths_with(
    a: f64,
    n_target: usize,
    cfg: &WalkConfig,
    th: &ConstructionThresholds,
) -> Result<(ArcDomainParams, Vec<Certificate>)> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidArgument("A must be positive".into()));
    }
    let guard = th.sigma_guard;
    let mut alphas: Vec<f64> = Vec::new();
    let mut certs = alloc::vec![certify(&alphas, a, 2.0, cfg, guard)?];
    let mut r_prev = 2.0;
    while alphas.len() < n_target {
        let n = alphas.len();
        let mut r = 2.0 * r_prev;
        loop {
            if r > th.doubling_limit * r_prev {
                return Err(Error::DoublingExceeded {
                    limit: th.doubling_limit,
                });
            }
            if r > (n + 1) as f64 {
                let c = certify(&alphas, a, r, cfg, guard)?;
                if c.omega.mean - guard * c.omega.stderr >= 2.0 * c.target {
                    break;
                }
            }
            r *= 2.0;
        }
        let m = ((r.ceil() as usize) - 1).min(n_target);
        let bound = PI / (2.0 * m as f64);
        let hi_start = bound - th.width_resolution;
        let with = |w: f64| {
            let mut v = alphas.clone();
            v.resize(m, w);
            v
        };
        let top = certify(&with(hi_start), a, r, cfg, guard)?;
        let accepted = if top.satisfied {
            (hi_start, top)
        } else {
            let mut lo = th.width_floor.min(hi_start);
            let floor_cert = certify(&with(lo), a, r, cfg, guard)?;
            if !floor_cert.satisfied {
                return Err(Error::StageFailure {
                    radius: r,
                    width: lo,
                    mean: floor_cert.omega.mean,
                    stderr: floor_cert.omega.stderr,
                    target: floor_cert.target,
                });
            }
            let mut best = floor_cert;
            let mut hi = hi_start;
            while hi - lo > th.width_resolution {
                let mid = 0.5 * (lo + hi);
                let c = certify(&with(mid), a, r, cfg, guard)?;
                if c.satisfied {
                    lo = mid;
                    best = c;
                } else {
                    hi = mid;
                }
            }
            (lo, best)
        };
        alphas = with(accepted.0);
        certs.push(accepted.1);
        r_prev = r;
    }
    Ok((ArcDomainParams::new(alphas, a), certs))
}
