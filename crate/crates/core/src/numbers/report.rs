//! Number reports and the inequality checks `h ≤ b_α/(α+2) ≤ b`.

use alloc::string::String;
use alloc::vec::Vec;

use super::fit::ExponentEstimate;

/// A reported number: a value, `+∞`, or only a lower bound.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum NumberValue {
    Finite(f64),
    Infinite,
    /// Known to lie in `[bound, +∞]`.
    AtLeast(f64),
}

impl NumberValue {
    pub fn lower(&self) -> f64 {
        match *self {
            NumberValue::Finite(x) | NumberValue::AtLeast(x) => x,
            NumberValue::Infinite => f64::INFINITY,
        }
    }

    pub fn upper(&self) -> f64 {
        match *self {
            NumberValue::Finite(x) => x,
            _ => f64::INFINITY,
        }
    }

    /// Divides by a positive constant.
    pub fn scaled(&self, c: f64) -> NumberValue {
        match *self {
            NumberValue::Finite(x) => NumberValue::Finite(x / c),
            NumberValue::AtLeast(x) => NumberValue::AtLeast(x / c),
            NumberValue::Infinite => NumberValue::Infinite,
        }
    }
}

impl core::fmt::Display for NumberValue {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            NumberValue::Finite(x) => match f.precision() {
                Some(n) => write!(f, "{x:.n$}"),
                None => write!(f, "{x}"),
            },
            NumberValue::Infinite => write!(f, "+inf"),
            NumberValue::AtLeast(x) => match f.precision() {
                Some(n) => write!(f, "[{x:.n$}, +inf]"),
                None => write!(f, "[{x}, +inf]"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Violation {
    pub relation: String,
    pub lhs: f64,
    pub rhs: f64,
}

fn check(out: &mut Vec<Violation>, relation: String, a: NumberValue, b: NumberValue, tol: f64) {
    // a ≤ b fails only if a's lower bound exceeds b's upper bound.
    let (lhs, rhs) = (a.lower(), b.upper());
    if lhs.is_infinite() && rhs.is_infinite() {
        return;
    }
    if lhs > rhs + tol {
        out.push(Violation { relation, lhs, rhs });
    }
}

/// Checks `h ≤ b`, `h ≤ b_α/(α+2)` and `b_α/(α+2) ≤ b` for every `α`.
pub fn consistency_report(
    h: NumberValue,
    b: NumberValue,
    b_alpha: &[(f64, NumberValue)],
    tol: f64,
) -> Vec<Violation> {
    let mut out = Vec::new();
    check(&mut out, "h <= b".into(), h, b, tol);
    for &(alpha, ba) in b_alpha {
        let scaled = ba.scaled(alpha + 2.0);
        check(
            &mut out,
            alloc::format!("h <= b_{alpha}/({alpha}+2)"),
            h,
            scaled,
            tol,
        );
        check(
            &mut out,
            alloc::format!("b_{alpha}/({alpha}+2) <= b"),
            scaled,
            b,
            tol,
        );
    }
    out
}

/// What is known about the domain's topology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Structure {
    SimplyConnected,
    ClassD,
    /// The complement is bounded (and not polar).
    BoundedComplement,
    Other,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NumberReport {
    pub h: ExponentEstimate,
    pub h_cross: Option<ExponentEstimate>,
    pub is_bloch: bool,
    pub structure: Structure,
    pub b_reported: NumberValue,
    pub b_alpha_reported: Vec<(f64, NumberValue)>,
    pub inequality_violations: Vec<Violation>,
}

/// Assembles the reported Bergman numbers from `h` and the structural flags.
///
/// Bloch domains get `b = b_α = +∞`. A bounded complement gives
/// `b = b_α = 0`. Simply connected and class-D domains get `b = h` and
/// `b_α = (α+2) h`. Otherwise only `b ≥ h` and `b_α ≥ (α+2) h` are known.
pub fn number_report(
    h: ExponentEstimate,
    h_cross: Option<ExponentEstimate>,
    is_bloch: bool,
    structure: Structure,
    alphas: &[f64],
    tol: f64,
) -> NumberReport {
    let hv = if h.infinite {
        NumberValue::Infinite
    } else {
        NumberValue::Finite(h.exponent)
    };
    let scale = |c: f64| match hv {
        NumberValue::Finite(x) => NumberValue::Finite(c * x),
        other => other,
    };
    let at_least = |c: f64| match hv {
        NumberValue::Finite(x) => NumberValue::AtLeast(c * x),
        other => other,
    };
    let (b, b_alpha): (NumberValue, Vec<(f64, NumberValue)>) = if is_bloch {
        (
            NumberValue::Infinite,
            alphas.iter().map(|&a| (a, NumberValue::Infinite)).collect(),
        )
    } else {
        match structure {
            Structure::BoundedComplement => (
                NumberValue::Finite(0.0),
                alphas
                    .iter()
                    .map(|&a| (a, NumberValue::Finite(0.0)))
                    .collect(),
            ),
            Structure::SimplyConnected | Structure::ClassD => (
                scale(1.0),
                alphas.iter().map(|&a| (a, scale(a + 2.0))).collect(),
            ),
            Structure::Other => (
                at_least(1.0),
                alphas.iter().map(|&a| (a, at_least(a + 2.0))).collect(),
            ),
        }
    };
    let inequality_violations = consistency_report(hv, b, &b_alpha, tol);
    NumberReport {
        h,
        h_cross,
        is_bloch,
        structure,
        b_reported: b,
        b_alpha_reported: b_alpha,
        inequality_violations,
    }
}
