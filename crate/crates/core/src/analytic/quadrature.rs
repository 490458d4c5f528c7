//! Littlewood–Paley area integrals over `|z| < r`.
//!
//! `∫ |f|^{p-2} |f'|^2 (log 1/|z|)^β dA` with `β = 1` (Hardy) or
//! `β = α + 2` (weighted Bergman). The disk is cut into
//!
//! - an excised disk `|z| < δ` around a declared zero at the origin, where
//!   the local model `f ≈ c z^m` is integrated in closed radial form,
//! - geometric radial panels from `δ` to `1/2`,
//! - boundary layers `1 - 2^{-j} < r < 1 - 2^{-j-1}`, parametrised by
//!   `s = 1 - r`,
//!
//! each with 16-point Gauss–Legendre nodes in `r`. At every radius the
//! angular integral uses Gauss panels graded geometrically toward the map's
//! singular boundary angles, down to a width proportional to `1 - r`.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::maps::AnalyticMap;
use crate::config::QuadratureThresholds;
use crate::error::{Error, Result};

const ORDER: usize = 16;

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: [f64; ORDER],
    pub weights: [f64; ORDER],
}

impl GaussLegendre {
    pub fn new() -> Self {
        let n = ORDER;
        let mut nodes = [0.0; ORDER];
        let mut weights = [0.0; ORDER];
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        GaussLegendre { nodes, weights }
    }

    /// `∫_a^b f`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let (h, m) = (0.5 * (b - a), 0.5 * (b + a));
        let mut acc = Neumaier::default();
        for i in 0..ORDER {
            acc.add(self.weights[i] * f(m + h * self.nodes[i]));
        }
        h * acc.sum()
    }
}

impl Default for GaussLegendre {
    fn default() -> Self {
        Self::new()
    }
}

/// Compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    c: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn sum(&self) -> f64 {
        self.sum + self.c
    }
}

/// Integrand parameters: exponent `p` and log-weight power `β`.
#[derive(Debug, Clone, Copy)]
struct Weight {
    p: f64,
    beta: f64,
}

struct Integrator<'a> {
    map: &'a AnalyticMap,
    w: Weight,
    gl: GaussLegendre,
    singular: Vec<f64>,
    grading: f64,
}

impl<'a> Integrator<'a> {
    fn new(map: &'a AnalyticMap, w: Weight, grading: f64) -> Self {
        let mut singular: Vec<f64> = map
            .singular_angles()
            .into_iter()
            .map(|t| {
                let r = t % TAU;
                if r < 0.0 {
                    r + TAU
                } else {
                    r
                }
            })
            .collect();
        singular.sort_by(f64::total_cmp);
        singular.dedup();
        Integrator {
            map,
            w,
            gl: GaussLegendre::new(),
            singular,
            grading,
        }
    }

    /// `|f|^{p-2} |f'|^2` at `(1 - s) e^{iθ}`.
    fn density(&self, s: f64, theta: f64) -> f64 {
        let (lf, ld) = self.map.log_abs_pair(s, theta);
        ((self.w.p - 2.0) * lf + 2.0 * ld).exp()
    }

    /// Graded panels on `[a, b]` refined toward `a` down to width `h_min`.
    fn graded<F: FnMut(f64) -> f64>(
        &self,
        a: f64,
        b: f64,
        h_min: f64,
        toward_a: bool,
        f: &mut F,
    ) -> f64 {
        let len = b - a;
        if len <= 0.0 {
            return 0.0;
        }
        let mut acc = Neumaier::default();
        let mut lo = 0.0;
        let mut h = h_min.min(len);
        while lo < len {
            let hi = (lo + h).min(len);
            let (x0, x1) = if toward_a {
                (a + lo, a + hi)
            } else {
                (b - hi, b - lo)
            };
            acc.add(self.gl.integrate(x0, x1, &mut *f));
            lo = hi;
            h *= 2.0;
        }
        acc.sum()
    }

    /// `∫_0^{2π} |f|^{p-2}|f'|^2 dθ` at radius `1 - s`.
    fn angular(&self, s: f64) -> f64 {
        let mut f = |t: f64| self.density(s, t);
        if self.singular.is_empty() {
            let mut acc = Neumaier::default();
            for k in 0..8 {
                let a = TAU * k as f64 / 8.0;
                acc.add(self.gl.integrate(a, a + TAU / 8.0, &mut f));
            }
            return acc.sum();
        }
        let h_min = (self.grading * s).min(0.25);
        let n = self.singular.len();
        let mut acc = Neumaier::default();
        for i in 0..n {
            let a = self.singular[i];
            let b = if i + 1 < n {
                self.singular[i + 1]
            } else {
                self.singular[0] + TAU
            };
            let mid = 0.5 * (a + b);
            acc.add(self.graded(a, mid, h_min, true, &mut f));
            acc.add(self.graded(mid, b, h_min, false, &mut f));
        }
        acc.sum()
    }

    /// Radial integrand `r (log 1/r)^β ∫ dθ`, in terms of `s = 1 - r`.
    fn radial(&self, s: f64) -> f64 {
        let r = 1.0 - s;
        let log_inv_r = -(-s).ln_1p();
        r * log_inv_r.powf(self.w.beta) * self.angular(s)
    }

    /// Contribution of `r_lo < r < r_hi`, both below 1/2, via `r` panels.
    fn inner_panel(&self, r_lo: f64, r_hi: f64) -> f64 {
        self.gl.integrate(r_lo, r_hi, |r| self.radial(1.0 - r))
    }

    /// Contribution of `1 - s_hi < r < 1 - s_lo`.
    fn layer(&self, s_lo: f64, s_hi: f64) -> f64 {
        self.gl.integrate(s_lo, s_hi, |s| self.radial(s))
    }

    /// Closed-form radial model on `|z| < δ`:
    /// `2π m^2 |c|^p ∫_{log 1/δ}^∞ e^{-mpt} t^β dt`.
    fn origin_model(&self, delta: f64) -> f64 {
        let Some(zero) = self.map.origin_zero() else {
            return 0.0;
        };
        let m = zero.order as f64;
        let rate = m * self.w.p;
        let l = (1.0 / delta).ln();
        // Integrate in u = rate * (t - L) over [0, 60] in unit panels.
        let beta = self.w.beta;
        let mut acc = Neumaier::default();
        for k in 0..60 {
            let v = self.gl.integrate(k as f64, (k + 1) as f64, |u| {
                let t = l + u / rate;
                (-rate * l - u).exp() * t.powf(beta)
            });
            acc.add(v);
        }
        TAU * m * m * zero.coeff_abs.powf(self.w.p) * acc.sum() / rate
    }
}

/// Cumulative integral `I(1 - 2^{-k})` at index `k` for `k = 1..=k_max`
/// (index 0 repeats `I(1/2)`), and the layer contributions
/// `I(1 - 2^{-k-1}) - I(1 - 2^{-k})` at index `k`.
fn ladder(
    map: &AnalyticMap,
    w: Weight,
    k_max: u32,
    th: &QuadratureThresholds,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if let Some(z) = map.origin_zero() {
        let local = z.order as f64 * w.p - 2.0;
        if local <= -2.0 {
            return Err(Error::InvalidArgument(
                "zero at the origin makes the integrand non-integrable".into(),
            ));
        }
    }
    let integ = Integrator::new(map, w, th.angular_grading);
    let delta = if map.origin_zero().is_some() {
        th.zero_excision
    } else {
        0.0
    };
    let mut inner = Neumaier::default();
    inner.add(integ.origin_model(delta));
    // Geometric panels from max(δ, 1e-8) to 1/2, then [0, 1e-8] when no zero.
    let floor = if delta > 0.0 { delta } else { 1e-8 };
    if delta == 0.0 {
        inner.add(integ.inner_panel(0.0, floor));
    }
    let mut a = floor;
    while a < 0.5 {
        let b = (2.0 * a).min(0.5);
        inner.add(integ.inner_panel(a, b));
        a = b;
    }
    let layers = crate::par::map_indexed((k_max.max(1) - 1) as usize, |j| {
        let j = j as i32 + 1;
        integ.layer(2f64.powi(-j - 1), 2f64.powi(-j))
    });
    let mut out = Vec::with_capacity(k_max as usize + 1);
    let mut total = inner.sum();
    out.push(total);
    out.push(total);
    let mut incs = Vec::with_capacity(k_max as usize + 1);
    incs.push(f64::NAN);
    for &l in &layers {
        total += l;
        out.push(total);
        incs.push(l);
    }
    Ok((out, incs))
}

fn integral_to(
    map: &AnalyticMap,
    w: Weight,
    r_trunc: f64,
    th: &QuadratureThresholds,
) -> Result<f64> {
    if !(r_trunc > 0.0 && r_trunc < 1.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "r_trunc must lie in (0, 1), got {r_trunc}"
        )));
    }
    if !(w.p.is_finite() && w.p > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "p must be positive, got {}",
            w.p
        )));
    }
    let s_t = 1.0 - r_trunc;
    // Whole layers above s_t, then the partial layer.
    let k_full = (-s_t.log2()).floor().max(1.0) as u32;
    let (lad, _) = ladder(map, w, k_full, th)?;
    let base = lad[k_full as usize];
    let integ = Integrator::new(map, w, th.angular_grading);
    if r_trunc <= 0.5 {
        // Recompute the inner part only up to r_trunc.
        let delta = if map.origin_zero().is_some() {
            th.zero_excision
        } else {
            0.0
        };
        let mut acc = Neumaier::default();
        acc.add(integ.origin_model(delta.min(r_trunc)));
        let floor = if delta > 0.0 { delta } else { 1e-8 };
        if delta == 0.0 {
            acc.add(integ.inner_panel(0.0, floor.min(r_trunc)));
        }
        let mut a = floor;
        while a < r_trunc {
            let b = (2.0 * a).min(r_trunc);
            acc.add(integ.inner_panel(a, b));
            a = b;
        }
        return Ok(acc.sum());
    }
    let s_full = 2f64.powi(-(k_full as i32));
    Ok(base + integ.layer(s_t, s_full))
}

/// `∫_{|z| < r_trunc} |f|^{p-2} |f'|^2 log(1/|z|) dA`.
pub fn lp_hardy_integral(map: &AnalyticMap, p: f64, r_trunc: f64) -> Result<f64> {
    integral_to(
        map,
        Weight { p, beta: 1.0 },
        r_trunc,
        &QuadratureThresholds::default(),
    )
}

/// `∫_{|z| < r_trunc} |f|^{p-2} |f'|^2 (log 1/|z|)^{α+2} dA`.
pub fn lp_bergman_integral(map: &AnalyticMap, p: f64, alpha: f64, r_trunc: f64) -> Result<f64> {
    if alpha <= -1.0 {
        return Err(Error::InvalidArgument(alloc::format!(
            "alpha must exceed -1, got {alpha}"
        )));
    }
    integral_to(
        map,
        Weight {
            p,
            beta: alpha + 2.0,
        },
        r_trunc,
        &QuadratureThresholds::default(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Verdict {
    Convergent,
    Divergent,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Classification {
    pub verdict: Verdict,
    /// `(k, I(1 - 2^{-k}))` for `k = k_min..=k_max`, finite values only.
    pub ladder: Vec<(u32, f64)>,
    /// Ratios of consecutive increments along the ladder.
    pub ratios: Vec<f64>,
}

/// Convergence verdict from the truncation ladder `r_k = 1 - 2^{-k}`.
///
/// With `α = None` the Hardy weight is used. The last `run` increment
/// ratios decide: all at or above `divergent_ratio` means divergent, all at
/// or below `convergent_ratio` convergent. A ladder that leaves the range
/// of `f64` is divergent.
pub fn classify(map: &AnalyticMap, p: f64, alpha: Option<f64>) -> Result<Classification> {
    classify_with(map, p, alpha, &QuadratureThresholds::default())
}

pub fn classify_with(
    map: &AnalyticMap,
    p: f64,
    alpha: Option<f64>,
    th: &QuadratureThresholds,
) -> Result<Classification> {
    if !(p.is_finite() && p > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "p must be positive, got {p}"
        )));
    }
    let beta = match alpha {
        None => 1.0,
        Some(a) if a > -1.0 => a + 2.0,
        Some(a) => {
            return Err(Error::InvalidArgument(alloc::format!(
                "alpha must exceed -1, got {a}"
            )))
        }
    };
    let (lad, layer) = ladder(map, Weight { p, beta }, th.k_max, th)?;
    let mut ladder_out = Vec::new();
    let mut overflow = false;
    for k in th.k_min..=th.k_max {
        let v = lad[k as usize];
        if v.is_finite() {
            ladder_out.push((k, v));
        } else {
            overflow = true;
            break;
        }
    }
    // Increments are the layer integrals themselves, not differences of the
    // cumulative values, which lose them to rounding once they fall below
    // an ulp of the total.
    let last = ladder_out.last().map_or(0, |&(k, _)| k as usize);
    let incs: Vec<f64> = (th.k_min as usize..last).map(|k| layer[k]).collect();
    let ratios: Vec<f64> = incs
        .windows(2)
        .map(|w| match (w[0] > 0.0, w[1] > 0.0) {
            (true, _) => w[1] / w[0],
            (false, false) => 0.0,
            (false, true) => f64::INFINITY,
        })
        .collect();
    let verdict = if overflow {
        Verdict::Divergent
    } else if ratios.len() < th.run {
        Verdict::Inconclusive
    } else {
        let tail = &ratios[ratios.len() - th.run..];
        if tail.iter().all(|&q| q >= th.divergent_ratio) {
            Verdict::Divergent
        } else if tail.iter().all(|&q| q <= th.convergent_ratio) {
            Verdict::Convergent
        } else {
            Verdict::Inconclusive
        }
    };
    Ok(Classification {
        verdict,
        ladder: ladder_out,
        ratios,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_exact_on_polynomials() {
        let gl = GaussLegendre::new();
        let v = gl.integrate(0.0, 2.0, |x| x.powi(31));
        assert!((v - 2f64.powi(32) / 32.0).abs() / v < 1e-13);
        assert!((gl.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn identity_p2_is_half_pi() {
        let v = lp_hardy_integral(&AnalyticMap::Identity, 2.0, 1.0 - 2f64.powi(-30)).unwrap();
        assert!((v - PI / 2.0).abs() < 1e-6, "{v}");
        let b =
            lp_bergman_integral(&AnalyticMap::Identity, 2.0, 0.0, 1.0 - 2f64.powi(-30)).unwrap();
        assert!((b - PI / 2.0).abs() < 1e-6, "{b}");
    }

    #[test]
    fn partial_truncation_matches_closed_form() {
        // Identity, p = 2: 2π ∫_0^ρ r log(1/r) dr = 2π (ρ²/4)(1 - 2 log ρ).
        for &rho in &[0.3, 0.7, 0.93] {
            let v = lp_hardy_integral(&AnalyticMap::Identity, 2.0, rho).unwrap();
            let exact = TAU * rho * rho / 4.0 * (1.0 - 2.0 * f64::ln(rho));
            assert!((v - exact).abs() < 1e-9, "{rho}: {v} vs {exact}");
        }
    }
}
