//! Closed-form Green functions and hyperbolic distances.
//!
//! Each model domain carries an explicit conformal map `A` onto the right
//! half-plane `H`. With `σ = |A(z) - A(w)| / |A(z) + conj A(w)|` the
//! pseudo-hyperbolic distance is conformally invariant, so
//! `ρ_D(z, w) = atanh σ` and `g_D(z, w) = -log σ`.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::geometry::{DomainSpec, Obstacle, Point};
use crate::stats::Estimate;
use crate::walker::{green_truncated, Truncation, WalkConfig};

/// `ρ_𝔻(z1, z2) = atanh(|z1 - z2| / |1 - conj(z1) z2|)`.
pub fn hyperbolic_distance_disk(z1: Point, z2: Point) -> Result<f64> {
    for z in [z1, z2] {
        if z.norm().is_nan() || z.norm() >= 1.0 {
            return Err(Error::InvalidArgument(alloc::format!(
                "point {z} is not inside the unit disk"
            )));
        }
    }
    let sigma = (z1 - z2).norm() / (Complex64::new(1.0, 0.0) - z1.conj() * z2).norm();
    Ok(sigma.min(1.0).atanh())
}

/// Simply connected domains with an explicit map onto the right half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "domain", rename_all = "snake_case"))]
pub enum ClosedFormDomain {
    /// `|z| < radius`.
    Disk { radius: f64 },
    /// `Re z > -1`.
    HalfPlane,
    /// `ℂ ∖ (-∞, tip]`.
    SlitPlane { tip: f64 },
    /// `|arg(z - apex)| < opening / 2`.
    Wedge { apex: f64, opening: f64 },
}

impl ClosedFormDomain {
    pub fn label(&self) -> String {
        match self {
            ClosedFormDomain::Disk { radius } => alloc::format!("disk(r={radius})"),
            ClosedFormDomain::HalfPlane => "half-plane".into(),
            ClosedFormDomain::SlitPlane { tip } => alloc::format!("slit-plane(tip={tip})"),
            ClosedFormDomain::Wedge { apex, opening } => {
                alloc::format!("wedge(apex={apex}, opening={opening})")
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            ClosedFormDomain::Disk { radius } => radius.is_finite() && radius > 0.0,
            ClosedFormDomain::HalfPlane => true,
            ClosedFormDomain::SlitPlane { tip } => tip.is_finite(),
            ClosedFormDomain::Wedge { apex, opening } => {
                apex.is_finite() && opening > 0.0 && opening < 2.0 * PI
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(alloc::format!(
                "invalid model domain {self:?}"
            )))
        }
    }

    pub fn contains(&self, z: Point) -> bool {
        match *self {
            ClosedFormDomain::Disk { radius } => z.norm() < radius,
            ClosedFormDomain::HalfPlane => z.re > -1.0,
            ClosedFormDomain::SlitPlane { tip } => !(z.im == 0.0 && z.re <= tip),
            ClosedFormDomain::Wedge { apex, opening } => {
                let d = z - apex;
                d != Complex64::new(0.0, 0.0) && d.arg().abs() < opening / 2.0
            }
        }
    }

    /// Conformal map onto the right half-plane.
    pub fn to_right_half_plane(&self, z: Point) -> Point {
        let one = Complex64::new(1.0, 0.0);
        match *self {
            ClosedFormDomain::Disk { radius } => {
                let u = z / radius;
                (one + u) / (one - u)
            }
            ClosedFormDomain::HalfPlane => z + 1.0,
            ClosedFormDomain::SlitPlane { tip } => (z - tip).sqrt(),
            ClosedFormDomain::Wedge { apex, opening } => (z - apex).powf(PI / opening),
        }
    }

    fn sigma(&self, z: Point, w: Point) -> Result<f64> {
        self.validate()?;
        for p in [z, w] {
            if !self.contains(p) {
                return Err(Error::StartOutsideDomain { x: p.re, y: p.im });
            }
        }
        let (a, b) = (self.to_right_half_plane(z), self.to_right_half_plane(w));
        Ok((a - b).norm() / (a + b.conj()).norm())
    }

    /// `ρ_D(z, w)`.
    pub fn hyperbolic(&self, z: Point, w: Point) -> Result<f64> {
        Ok(self.sigma(z, w)?.min(1.0).atanh())
    }

    /// `g_D(z, w) = -log σ`.
    pub fn green(&self, z: Point, w: Point) -> Result<f64> {
        if z == w {
            return Err(Error::Pole);
        }
        Ok(-self.sigma(z, w)?.ln())
    }

    /// Obstacle description for the walker, with the truncation needed for
    /// bounded models.
    pub fn domain_spec(&self) -> Result<(DomainSpec, Truncation)> {
        self.validate()?;
        let label = self.label();
        match *self {
            ClosedFormDomain::Disk { radius } => {
                Ok((DomainSpec::plane(label), Truncation::outer(radius)))
            }
            ClosedFormDomain::HalfPlane => Ok((
                DomainSpec::new(
                    label,
                    alloc::vec![Obstacle::ClosedWedge {
                        apex: Complex64::new(-1.0, 0.0),
                        start_angle: PI / 2.0,
                        end_angle: 1.5 * PI,
                    }],
                    1.0,
                )?,
                Truncation::NONE,
            )),
            ClosedFormDomain::SlitPlane { tip } => {
                Ok((DomainSpec::slit_plane(tip)?, Truncation::NONE))
            }
            ClosedFormDomain::Wedge { apex, opening } => {
                let base = if apex < 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(apex + 1.0, 0.0)
                };
                Ok((
                    DomainSpec::with_base(
                        label,
                        alloc::vec![Obstacle::ClosedWedge {
                            apex: Complex64::new(apex, 0.0),
                            start_angle: opening / 2.0,
                            end_angle: 2.0 * PI - opening / 2.0,
                        }],
                        apex.abs().max(1.0),
                        base,
                    )?,
                    Truncation::NONE,
                ))
            }
        }
    }
}

/// One pair of the Green/hyperbolic comparison.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairCheck {
    pub z: Point,
    pub w: Point,
    pub rho: f64,
    /// `log((1 + e^{-2ρ}) / (1 - e^{-2ρ}))`.
    pub green_from_rho: f64,
    /// `-log σ` from the map directly.
    pub green_direct: f64,
    /// `e^{-2ρ} ≤ g`.
    pub lower_ok: bool,
    /// Whether `ρ ≥ log 2 / 2`, where `g ≤ 4 e^{-2ρ}` applies.
    pub upper_applies: bool,
    pub upper_ok: bool,
    pub monte_carlo: Option<Estimate>,
    /// `|ĝ - g| ≤ guard · stderr`, when a Monte Carlo value was requested.
    pub monte_carlo_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GreenHyperbolicReport {
    pub domain: ClosedFormDomain,
    pub pairs: Vec<PairCheck>,
    /// Largest `|green_from_rho - green_direct|`.
    pub identity_residual: f64,
    pub all_ok: bool,
}

/// Checks `g = log((1+e^{-2ρ})/(1-e^{-2ρ}))`, the sandwich
/// `e^{-2ρ} ≤ g ≤ 4 e^{-2ρ}` (upper half for `ρ ≥ log 2 / 2`), and, when
/// `walk` is given, the Monte Carlo Green function at `guard` standard errors.
pub fn green_vs_hyperbolic_check(
    domain: &ClosedFormDomain,
    pairs: &[(Point, Point)],
    walk: Option<(&WalkConfig, f64)>,
) -> Result<GreenHyperbolicReport> {
    let mc_setup = match walk {
        Some((cfg, guard)) => Some((domain.domain_spec()?, cfg, guard)),
        None => None,
    };
    let mut out = Vec::with_capacity(pairs.len());
    let mut residual: f64 = 0.0;
    let mut all_ok = true;
    for &(z, w) in pairs {
        let rho = domain.hyperbolic(z, w)?;
        let g = domain.green(z, w)?;
        let e = (-2.0 * rho).exp();
        let from_rho = ((1.0 + e) / (1.0 - e)).ln();
        let rel = 1e-12 * (1.0 + g.abs());
        residual = residual.max((from_rho - g).abs());
        let lower_ok = e <= g + rel;
        let upper_applies = rho >= LN_2 / 2.0;
        let upper_ok = !upper_applies || g <= 4.0 * e + rel;
        let (mc, mc_ok) = match &mc_setup {
            Some(((spec, trunc), cfg, guard)) => {
                let est = green_truncated(spec, *trunc, z, w, cfg)?;
                let ok = (est.mean - g).abs() <= guard * est.stderr;
                (Some(est), Some(ok))
            }
            None => (None, None),
        };
        all_ok &= lower_ok && upper_ok && mc_ok.unwrap_or(true);
        out.push(PairCheck {
            z,
            w,
            rho,
            green_from_rho: from_rho,
            green_direct: g,
            lower_ok,
            upper_applies,
            upper_ok,
            monte_carlo: mc,
            monte_carlo_ok: mc_ok,
        });
    }
    all_ok &= residual <= 1e-9;
    Ok(GreenHyperbolicReport {
        domain: *domain,
        pairs: out,
        identity_residual: residual,
        all_ok,
    })
}
