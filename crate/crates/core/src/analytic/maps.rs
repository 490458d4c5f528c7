//! Catalog of explicit holomorphic maps of the unit disk.
//!
//! Maps are evaluated at `z = (1 - s) e^{iθ}` through `w = 1 - z`, which is
//! formed without cancellation so that points within `2^-30` of the
//! boundary singularity at `z = 1` keep full relative accuracy.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::geometry::Point;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "map", rename_all = "snake_case"))]
pub enum AnalyticMap {
    Identity,
    /// `z / (1 - z)^2`.
    Koebe,
    /// `(1 + z) / (1 - z)`.
    HalfPlane,
    /// `log((1 + z) / (1 - z))`.
    Strip,
    /// `((1 + z) / (1 - z))^{opening/π}` onto `{|arg w| < opening/2}`.
    Wedge {
        opening: f64,
    },
    /// `exp((1 + z) / (1 - z))`.
    ExpPoisson,
    /// `inner(e^{i angle} z)`.
    Rotated {
        angle: f64,
        inner: Box<AnalyticMap>,
    },
}

/// Zero of the map at the origin: `f(z) ≈ coeff z^order`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OriginZero {
    pub order: u32,
    pub coeff_abs: f64,
}

/// `1 - (1 - s) e^{iθ}` without cancellation near `s = 0, θ = 0`.
#[inline]
pub(crate) fn one_minus(s: f64, theta: f64) -> Complex64 {
    let (sin, cos) = theta.sin_cos();
    let half = (0.5 * theta).sin();
    Complex64::new(2.0 * half * half + s * cos, -(1.0 - s) * sin)
}

impl AnalyticMap {
    pub fn label(&self) -> alloc::string::String {
        match self {
            AnalyticMap::Identity => "identity".into(),
            AnalyticMap::Koebe => "koebe".into(),
            AnalyticMap::HalfPlane => "half-plane".into(),
            AnalyticMap::Strip => "strip".into(),
            AnalyticMap::Wedge { opening } => alloc::format!("wedge({opening})"),
            AnalyticMap::ExpPoisson => "exp-poisson".into(),
            AnalyticMap::Rotated { angle, inner } => {
                alloc::format!("{}∘rot({angle})", inner.label())
            }
        }
    }

    /// Catalog entries with known Hardy numbers.
    pub fn catalog() -> Vec<AnalyticMap> {
        alloc::vec![
            AnalyticMap::Identity,
            AnalyticMap::Koebe,
            AnalyticMap::HalfPlane,
            AnalyticMap::Strip,
            AnalyticMap::Wedge { opening: PI / 2.0 },
            AnalyticMap::ExpPoisson,
        ]
    }

    pub fn by_label(label: &str) -> Option<AnalyticMap> {
        match label {
            "identity" => Some(AnalyticMap::Identity),
            "koebe" => Some(AnalyticMap::Koebe),
            "half-plane" => Some(AnalyticMap::HalfPlane),
            "strip" => Some(AnalyticMap::Strip),
            "wedge" => Some(AnalyticMap::Wedge { opening: PI / 2.0 }),
            "exp-poisson" => Some(AnalyticMap::ExpPoisson),
            _ => None,
        }
    }

    /// Reference Hardy number `h(f)`.
    pub fn known_h(&self) -> Option<f64> {
        match self {
            AnalyticMap::Identity | AnalyticMap::Strip => Some(f64::INFINITY),
            AnalyticMap::Koebe => Some(0.5),
            AnalyticMap::HalfPlane => Some(1.0),
            AnalyticMap::Wedge { opening } => Some(PI / opening),
            AnalyticMap::ExpPoisson => Some(0.0),
            AnalyticMap::Rotated { inner, .. } => inner.known_h(),
        }
    }

    /// Label of the model domain the map covers, when it has one.
    pub fn known_target(&self) -> Option<&'static str> {
        match self {
            AnalyticMap::Koebe => Some("slit-plane"),
            AnalyticMap::HalfPlane => Some("half-plane"),
            AnalyticMap::Strip => Some("strip"),
            AnalyticMap::Wedge { .. } => Some("wedge"),
            AnalyticMap::Identity => Some("disk"),
            AnalyticMap::ExpPoisson => None,
            AnalyticMap::Rotated { inner, .. } => inner.known_target(),
        }
    }

    /// Whether the map is univalent, so that `b_α(f) = (α+2) h(f)`.
    pub fn is_conformal(&self) -> bool {
        match self {
            AnalyticMap::ExpPoisson => false,
            AnalyticMap::Rotated { inner, .. } => inner.is_conformal(),
            _ => true,
        }
    }

    /// Boundary angles where `f` or `f'` is singular or vanishes.
    pub fn singular_angles(&self) -> Vec<f64> {
        match self {
            AnalyticMap::Identity => Vec::new(),
            AnalyticMap::Koebe | AnalyticMap::HalfPlane | AnalyticMap::ExpPoisson => {
                alloc::vec![0.0]
            }
            AnalyticMap::Strip | AnalyticMap::Wedge { .. } => alloc::vec![0.0, PI],
            AnalyticMap::Rotated { angle, inner } => inner
                .singular_angles()
                .into_iter()
                .map(|t| crate::geometry::wrap_angle(t - angle))
                .collect(),
        }
    }

    pub fn origin_zero(&self) -> Option<OriginZero> {
        match self {
            AnalyticMap::Identity | AnalyticMap::Koebe => Some(OriginZero {
                order: 1,
                coeff_abs: 1.0,
            }),
            AnalyticMap::Strip => Some(OriginZero {
                order: 1,
                coeff_abs: 2.0,
            }),
            AnalyticMap::Rotated { inner, .. } => inner.origin_zero(),
            _ => None,
        }
    }

    pub fn eval(&self, z: Point) -> Point {
        let one = Complex64::new(1.0, 0.0);
        match self {
            AnalyticMap::Identity => z,
            AnalyticMap::Koebe => z / ((one - z) * (one - z)),
            AnalyticMap::HalfPlane => (one + z) / (one - z),
            AnalyticMap::Strip => ((one + z) / (one - z)).ln(),
            AnalyticMap::Wedge { opening } => ((one + z) / (one - z)).powf(opening / PI),
            AnalyticMap::ExpPoisson => ((one + z) / (one - z)).exp(),
            AnalyticMap::Rotated { angle, inner } => {
                inner.eval(z * Complex64::from_polar(1.0, *angle))
            }
        }
    }

    pub fn deriv(&self, z: Point) -> Point {
        let one = Complex64::new(1.0, 0.0);
        let w = one - z;
        match self {
            AnalyticMap::Identity => one,
            AnalyticMap::Koebe => (one + z) / (w * w * w),
            AnalyticMap::HalfPlane => 2.0 / (w * w),
            AnalyticMap::Strip => 2.0 / (one - z * z),
            AnalyticMap::Wedge { opening } => {
                let a = opening / PI;
                self.eval(z) * (2.0 * a) / (one - z * z)
            }
            AnalyticMap::ExpPoisson => self.eval(z) * 2.0 / (w * w),
            AnalyticMap::Rotated { angle, inner } => {
                let rot = Complex64::from_polar(1.0, *angle);
                inner.deriv(z * rot) * rot
            }
        }
    }

    /// `(log|f|, log|f'|)` at `z = (1 - s) e^{iθ}`.
    pub fn log_abs_pair(&self, s: f64, theta: f64) -> (f64, f64) {
        let w = one_minus(s, theta);
        let two_minus_w = Complex64::new(2.0, 0.0) - w;
        let ln_w = w.norm().ln();
        let ln_r = (-s).ln_1p();
        match self {
            AnalyticMap::Identity => (ln_r, 0.0),
            AnalyticMap::Koebe => (ln_r - 2.0 * ln_w, two_minus_w.norm().ln() - 3.0 * ln_w),
            AnalyticMap::HalfPlane => (two_minus_w.norm().ln() - ln_w, 2f64.ln() - 2.0 * ln_w),
            AnalyticMap::Strip => {
                let f = (two_minus_w / w).ln();
                (f.norm().ln(), 2f64.ln() - ln_w - two_minus_w.norm().ln())
            }
            AnalyticMap::Wedge { opening } => {
                let a = opening / PI;
                let lf = a * (two_minus_w.norm().ln() - ln_w);
                (lf, a.ln() + lf + 2f64.ln() - ln_w - two_minus_w.norm().ln())
            }
            AnalyticMap::ExpPoisson => {
                let g = (two_minus_w / w).re;
                (g, g + 2f64.ln() - 2.0 * ln_w)
            }
            AnalyticMap::Rotated { angle, inner } => inner.log_abs_pair(s, theta + angle),
        }
    }
}
