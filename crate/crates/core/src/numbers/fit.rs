//! Decay exponents of radial profiles.
//!
//! The exponent of a profile `v(r)` is the slope of `-log v` against
//! `log r`. A finite grid cannot separate `liminf` from `lim`, so the
//! estimate is the smallest least-squares slope among the sliding windows
//! in the tail half of the grid; it never exceeds the slope the tail
//! actually shows and is exact on power laws.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::config::FitThresholds;
use crate::error::{Error, Result};
use crate::walker::{ProfileKind, RadialProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Method {
    Eks,
    GreenProfile,
}

impl Method {
    pub fn of(kind: ProfileKind) -> Self {
        match kind {
            ProfileKind::OmegaEks => Method::Eks,
            ProfileKind::PsiGreen => Method::GreenProfile,
        }
    }
}

/// Least-squares line `y = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    /// Standard error of the slope from the residuals.
    pub slope_stderr: f64,
}

/// Ordinary least squares; needs at least two distinct `x`.
pub fn least_squares(x: &[f64], y: &[f64]) -> LineFit {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|b| (b - my) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| {
            let e = b - (slope * a + intercept);
            e * e
        })
        .sum();
    let r2 = if syy > 0.0 { 1.0 - sse / syy } else { 1.0 };
    let slope_stderr = if x.len() > 2 {
        (sse / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    LineFit {
        slope,
        intercept,
        r2,
        slope_stderr,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WindowSlope {
    pub r_lo: f64,
    pub r_hi: f64,
    pub slope: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExponentEstimate {
    /// Clamped at 0; `+∞` when `infinite` is set.
    pub exponent: f64,
    pub infinite: bool,
    pub window_slopes: Vec<WindowSlope>,
    /// Fit of `-log v` against `log r` over the tail half.
    pub global_fit: LineFit,
    /// Radii dropped as statistically indistinguishable from zero.
    pub dropped: Vec<f64>,
    pub method: Method,
    /// Source profile; empty for shortcut results.
    pub profile: RadialProfile,
}

impl ExponentEstimate {
    /// Exponent known without sampling (e.g. polar complement).
    pub fn exact(exponent: f64, method: Method, kind: ProfileKind) -> Self {
        ExponentEstimate {
            exponent,
            infinite: exponent.is_infinite(),
            window_slopes: Vec::new(),
            global_fit: LineFit {
                slope: exponent,
                intercept: 0.0,
                r2: 1.0,
                slope_stderr: 0.0,
            },
            dropped: Vec::new(),
            method,
            profile: RadialProfile {
                kind,
                entries: Vec::new(),
            },
        }
    }

    /// Half-spread of the tail window slopes, a rough uncertainty for the exponent.
    pub fn spread(&self) -> f64 {
        let tail = self.tail_windows();
        if tail.is_empty() {
            return self.global_fit.slope_stderr;
        }
        let lo = tail.iter().map(|w| w.slope).fold(f64::INFINITY, f64::min);
        let hi = tail
            .iter()
            .map(|w| w.slope)
            .fold(f64::NEG_INFINITY, f64::max);
        0.5 * (hi - lo)
    }

    fn tail_windows(&self) -> &[WindowSlope] {
        let n = self.window_slopes.len();
        &self.window_slopes[n / 2..]
    }
}

pub fn fit_exponent(profile: &RadialProfile) -> Result<ExponentEstimate> {
    fit_exponent_with(profile, &FitThresholds::default())
}

pub fn fit_exponent_with(profile: &RadialProfile, th: &FitThresholds) -> Result<ExponentEstimate> {
    let mut x = Vec::new();
    let mut y = Vec::new();
    let mut dropped = Vec::new();
    for e in &profile.entries {
        let m = e.estimate.mean;
        if m > 0.0 && m > th.drop_sigma * e.estimate.stderr && m.is_finite() {
            x.push(e.radius.ln());
            y.push(-m.ln());
        } else {
            dropped.push(e.radius);
        }
    }
    if x.is_empty() {
        return Err(Error::ProfileExhausted);
    }
    let needed = th.min_entries.max(th.window);
    if x.len() < needed {
        return Err(Error::InsufficientEntries {
            needed,
            got: x.len(),
        });
    }
    let w = th.window;
    let window_slopes: Vec<WindowSlope> = (0..=x.len() - w)
        .map(|i| WindowSlope {
            r_lo: x[i].exp(),
            r_hi: x[i + w - 1].exp(),
            slope: least_squares(&x[i..i + w], &y[i..i + w]).slope,
        })
        .collect();
    let tail = &window_slopes[window_slopes.len() / 2..];
    let min_tail = tail.iter().map(|s| s.slope).fold(f64::INFINITY, f64::min);
    let infinite = window_slopes.iter().all(|s| s.slope > th.infinity_slope)
        && window_slopes.windows(2).all(|p| p[1].slope >= p[0].slope);
    let half = x.len() / 2;
    let global_fit = least_squares(&x[half..], &y[half..]);
    Ok(ExponentEstimate {
        exponent: if infinite {
            f64::INFINITY
        } else {
            min_tail.max(0.0)
        },
        infinite,
        window_slopes,
        global_fit,
        dropped,
        method: Method::of(profile.kind),
        profile: profile.clone(),
    })
}
