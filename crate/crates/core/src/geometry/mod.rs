//! Planar domains `D = ℂ \ (obstacle_1 ∪ … ∪ obstacle_n)`.

mod index;
mod obstacle;
mod structure;

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use index::ObstacleIndex;

pub use obstacle::{wrap_angle, Aabb, Obstacle};
pub use structure::{
    class_d_check, class_d_check_with, is_simply_connected, largest_inscribed_radius,
    largest_inscribed_radius_with, omega_hull, CircleProbe, ClassDReport, InscribedRadius,
};

/// A point of the plane.
pub type Point = Complex64;

/// Nearest obstacle to a query point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nearest {
    pub distance: f64,
    pub index: usize,
    pub point: Point,
}

/// The plane minus a union of closed obstacles, with a designated base point.
///
/// Construction validates every obstacle and rejects base points covered by
/// an obstacle (polar sets included). The value is immutable; queries are
/// read-only and may run concurrently.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "SpecFile", into = "SpecFile"))]
pub struct DomainSpec {
    label: String,
    obstacles: Vec<Obstacle>,
    scale_hint: f64,
    base_point: Point,
    index: ObstacleIndex,
}

/// Serialized form of a [`DomainSpec`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct SpecFile {
    pub label: String,
    pub obstacles: Vec<Obstacle>,
    pub scale_hint: f64,
    #[cfg_attr(feature = "serde", serde(default))]
    pub base_point: Point,
}

impl TryFrom<SpecFile> for DomainSpec {
    type Error = Error;

    fn try_from(f: SpecFile) -> Result<Self> {
        DomainSpec::with_base(f.label, f.obstacles, f.scale_hint, f.base_point)
    }
}

impl From<DomainSpec> for SpecFile {
    fn from(s: DomainSpec) -> Self {
        SpecFile {
            label: s.label,
            obstacles: s.obstacles,
            scale_hint: s.scale_hint,
            base_point: s.base_point,
        }
    }
}

impl PartialEq for DomainSpec {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label
            && self.obstacles == other.obstacles
            && self.scale_hint.to_bits() == other.scale_hint.to_bits()
            && self.base_point == other.base_point
    }
}

impl DomainSpec {
    /// Validated spec with base point 0.
    pub fn new(
        label: impl Into<String>,
        obstacles: Vec<Obstacle>,
        scale_hint: f64,
    ) -> Result<Self> {
        Self::with_base(label, obstacles, scale_hint, Complex64::new(0.0, 0.0))
    }

    /// Validated spec with an explicit base point.
    pub fn with_base(
        label: impl Into<String>,
        obstacles: Vec<Obstacle>,
        scale_hint: f64,
        base_point: Point,
    ) -> Result<Self> {
        if !(scale_hint.is_finite() && scale_hint > 0.0) {
            return Err(Error::InvalidArgument(alloc::format!(
                "scale_hint must be positive and finite, got {scale_hint}"
            )));
        }
        for (index, o) in obstacles.iter().enumerate() {
            o.validate()
                .map_err(|reason| Error::InvalidObstacle { index, reason })?;
        }
        let index = ObstacleIndex::build(&obstacles);
        let spec = DomainSpec {
            label: label.into(),
            obstacles,
            scale_hint,
            base_point,
            index,
        };
        spec.check_base_point()?;
        Ok(spec)
    }

    pub fn with_base_point(self, base_point: Point) -> Result<Self> {
        Self::with_base(self.label, self.obstacles, self.scale_hint, base_point)
    }

    fn check_base_point(&self) -> Result<()> {
        let p = self.base_point;
        if !(p.re.is_finite() && p.im.is_finite()) || !self.contains_strict(p) {
            return Err(Error::BasePointCovered { x: p.re, y: p.im });
        }
        Ok(())
    }

    /// The whole plane: no obstacles.
    pub fn plane(label: impl Into<String>) -> Self {
        DomainSpec::new(label, Vec::new(), 1.0).expect("empty spec is valid")
    }

    /// The slit plane `ℂ \ (-∞, tip]` for `tip < 0`.
    pub fn slit_plane(tip: f64) -> Result<Self> {
        DomainSpec::new(
            "slit-plane",
            alloc::vec![Obstacle::HalfLine {
                anchor: Complex64::new(tip, 0.0),
                direction: Complex64::new(-1.0, 0.0),
            }],
            tip.abs(),
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn obstacles(&self) -> &[Obstacle] {
        &self.obstacles
    }

    pub fn scale_hint(&self) -> f64 {
        self.scale_hint
    }

    pub fn base_point(&self) -> Point {
        self.base_point
    }

    /// Same domain with extra obstacles appended (revalidated).
    pub fn extended(&self, label: impl Into<String>, extra: Vec<Obstacle>) -> Result<Self> {
        let mut obstacles = self.obstacles.clone();
        obstacles.extend(extra);
        DomainSpec::with_base(label, obstacles, self.scale_hint, self.base_point)
    }

    /// Whether every obstacle is polar, so the complement has zero capacity.
    pub fn complement_is_polar(&self) -> bool {
        self.obstacles.iter().all(Obstacle::is_polar)
    }

    /// Distance from `z` to the non-polar obstacles: the radius of the
    /// largest disk around `z` that Brownian motion can cross freely.
    /// Infinite when there is no non-polar obstacle.
    pub fn distance_to_complement(&self, z: Point) -> f64 {
        self.index
            .nearest(&self.obstacles, z, false)
            .map_or(f64::INFINITY, |(d, _)| d)
    }

    /// Distance from `z` to the full complement, polar sets included.
    pub fn distance_to_complement_strict(&self, z: Point) -> f64 {
        self.index
            .nearest(&self.obstacles, z, true)
            .map_or(f64::INFINITY, |(d, _)| d)
    }

    /// Nearest obstacle with its closest point; polar sets only when `strict`.
    pub fn nearest(&self, z: Point, strict: bool) -> Option<Nearest> {
        self.index
            .nearest(&self.obstacles, z, strict)
            .map(|(distance, index)| Nearest {
                distance,
                index,
                point: self.obstacles[index].closest_point(z),
            })
    }

    pub fn contains(&self, z: Point) -> bool {
        self.distance_to_complement(z) > 0.0
    }

    pub fn contains_strict(&self, z: Point) -> bool {
        self.distance_to_complement_strict(z) > 0.0
    }
}
