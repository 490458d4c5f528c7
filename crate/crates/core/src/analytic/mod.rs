//! Explicit analytic maps of the unit disk: Littlewood–Paley membership
//! integrals, transition exponents `h(f)` and `b_α(f)`, and closed-form
//! Green/hyperbolic formulas on model domains.

mod conformal;
mod maps;
mod quadrature;

use alloc::vec::Vec;

pub use conformal::{
    green_vs_hyperbolic_check, hyperbolic_distance_disk, ClosedFormDomain, GreenHyperbolicReport,
    PairCheck,
};
pub use maps::{AnalyticMap, OriginZero};
pub use quadrature::{
    classify, classify_with, lp_bergman_integral, lp_hardy_integral, Classification, GaussLegendre,
    Neumaier, Verdict,
};

use crate::config::QuadratureThresholds;
use crate::error::{Error, Result};

/// Bracket for the transition exponent of a map.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TransitionEstimate {
    /// Largest probed `p` classified convergent.
    pub p_low: f64,
    /// Smallest probed `p` classified divergent, or `p_max` when none was.
    pub p_high: f64,
    pub bracket_width: f64,
    /// No divergent verdict was found up to `p_max`.
    pub open_above: bool,
    pub probes: Vec<(f64, Verdict)>,
}

/// Bracket for `h(f)` by bisection on [`classify`].
pub fn estimate_h_of_map(
    map: &AnalyticMap,
    bracket: (f64, f64),
    iterations: u32,
) -> Result<TransitionEstimate> {
    transition(
        map,
        None,
        bracket,
        iterations,
        &QuadratureThresholds::default(),
    )
}

/// Bracket for `b_α(f)` by bisection on [`classify`] with the Bergman weight.
pub fn estimate_b_alpha_of_map(
    map: &AnalyticMap,
    alpha: f64,
    bracket: (f64, f64),
    iterations: u32,
) -> Result<TransitionEstimate> {
    transition(
        map,
        Some(alpha),
        bracket,
        iterations,
        &QuadratureThresholds::default(),
    )
}

/// Bisection that never moves a bound on an inconclusive verdict. An
/// inconclusive midpoint is retried at the quarter points of the current
/// bracket; when both of those are inconclusive too the search stops.
pub fn transition(
    map: &AnalyticMap,
    alpha: Option<f64>,
    (p_min, p_max): (f64, f64),
    iterations: u32,
    th: &QuadratureThresholds,
) -> Result<TransitionEstimate> {
    if !(p_min > 0.0 && p_min < p_max && p_max.is_finite()) {
        return Err(Error::InvalidBracket(alloc::format!(
            "need 0 < p_min < p_max, got ({p_min}, {p_max})"
        )));
    }
    let mut probes = Vec::new();
    let mut probe = |p: f64| -> Result<Verdict> {
        let v = classify_with(map, p, alpha, th)?.verdict;
        probes.push((p, v));
        Ok(v)
    };
    if probe(p_min)? != Verdict::Convergent {
        return Err(Error::InvalidBracket(alloc::format!(
            "p_min = {p_min} is not classified convergent"
        )));
    }
    match probe(p_max)? {
        Verdict::Divergent => {}
        Verdict::Convergent => {
            return Ok(TransitionEstimate {
                p_low: p_min,
                p_high: p_max,
                bracket_width: p_max - p_min,
                open_above: true,
                probes,
            });
        }
        Verdict::Inconclusive => {
            return Err(Error::InvalidBracket(alloc::format!(
                "p_max = {p_max} is inconclusive"
            )));
        }
    }
    let (mut lo, mut hi) = (p_min, p_max);
    let mut used = 0;
    while used < iterations {
        let mid = 0.5 * (lo + hi);
        used += 1;
        match probe(mid)? {
            Verdict::Convergent => lo = mid,
            Verdict::Divergent => hi = mid,
            Verdict::Inconclusive => {
                let quarter = 0.25 * (hi - lo);
                let (q1, q3) = (lo + quarter, hi - quarter);
                let mut moved = false;
                for q in [q1, q3] {
                    used += 1;
                    match probe(q)? {
                        Verdict::Convergent if q > lo => {
                            lo = q;
                            moved = true;
                        }
                        Verdict::Divergent if q < hi => {
                            hi = q;
                            moved = true;
                        }
                        _ => {}
                    }
                }
                if !moved {
                    break;
                }
            }
        }
    }
    Ok(TransitionEstimate {
        p_low: lo,
        p_high: hi,
        bracket_width: hi - lo,
        open_above: false,
        probes,
    })
}
