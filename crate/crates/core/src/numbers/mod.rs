//! From radial profiles to Hardy and Bergman numbers, plus the exact
//! inclusion calculus between the function spaces.

mod fit;
mod hardy;
mod inclusion;
mod report;

pub use fit::{
    fit_exponent, fit_exponent_with, least_squares, ExponentEstimate, LineFit, Method, WindowSlope,
};
pub use hardy::{
    bergman_alpha_profile, hardy_eks, hardy_eks_with, hardy_green, hardy_green_angular,
    hardy_green_with, hardy_integral_diagnostic, integral_trend, Trend, TrendReport,
};
pub use inclusion::{inclusion_bergman, inclusion_hardy_in_bergman, Scalar};
pub use report::{
    consistency_report, number_report, NumberReport, NumberValue, Structure, Violation,
};

use crate::error::Result;
use crate::geometry::{largest_inscribed_radius, DomainSpec, InscribedRadius};

/// Bloch test: the domain contains no arbitrarily large disks.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlochReport {
    pub is_bloch: bool,
    pub inscribed_radius: f64,
    pub doublings: [f64; 4],
}

/// Runs the polar-aware inscribed-radius search; the domain is declared
/// Bloch when the radius does not grow with the search region.
pub fn bloch_check(spec: &DomainSpec, search_radius: f64, grid_step: f64) -> Result<BlochReport> {
    let InscribedRadius {
        value,
        unbounded_hint,
        doublings,
    } = largest_inscribed_radius(spec, search_radius, grid_step)?;
    Ok(BlochReport {
        is_bloch: !unbounded_hint,
        inscribed_radius: value,
        doublings,
    })
}
