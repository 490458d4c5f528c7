use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::Point;

/// Closed obstacle primitive removed from the plane.
///
/// Angles are in radians. `PolarPoints` and `PolarLattice` are polar sets:
/// Brownian motion does not see them, so default distance queries skip them.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)
)]
pub enum Obstacle {
    /// Closed segment `[a, b]`.
    Segment {
        a: Point,
        b: Point,
    },
    /// `{anchor + t * direction : t >= 0}` with `|direction| = 1`.
    HalfLine {
        anchor: Point,
        direction: Point,
    },
    /// `{center + radius * e^{i t} : |t - mid_angle| <= half_width}`, `half_width` in `(0, π]`.
    Arc {
        center: Point,
        radius: f64,
        mid_angle: f64,
        half_width: f64,
    },
    ClosedDisk {
        center: Point,
        radius: f64,
    },
    /// Closed sector swept counterclockwise from `start_angle` to `end_angle`
    /// around `apex`; reflex sectors are allowed.
    ClosedWedge {
        apex: Point,
        start_angle: f64,
        end_angle: f64,
    },
    /// Finite polar point set.
    PolarPoints {
        points: Vec<Point>,
    },
    /// `{origin + m * basis[0] + n * basis[1]}`, optionally restricted to `|z| <= bound`.
    PolarLattice {
        origin: Point,
        basis: [Point; 2],
        #[cfg_attr(feature = "serde", serde(default))]
        bound: Option<f64>,
    },
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Point,
    pub max: Point,
}

impl Aabb {
    pub fn around(center: Point, radius: f64) -> Self {
        let d = Complex64::new(radius, radius);
        Aabb {
            min: center - d,
            max: center + d,
        }
    }

    pub fn of_points(points: &[Point]) -> Self {
        let mut b = Aabb {
            min: Complex64::new(f64::INFINITY, f64::INFINITY),
            max: Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        };
        for p in points {
            b.min.re = b.min.re.min(p.re);
            b.min.im = b.min.im.min(p.im);
            b.max.re = b.max.re.max(p.re);
            b.max.im = b.max.im.max(p.im);
        }
        b
    }

    pub fn union(&self, other: &Aabb) -> Aabb {
        Aabb {
            min: Complex64::new(self.min.re.min(other.min.re), self.min.im.min(other.min.im)),
            max: Complex64::new(self.max.re.max(other.max.re), self.max.im.max(other.max.im)),
        }
    }

    pub fn center(&self) -> Point {
        (self.min + self.max) * 0.5
    }

    pub fn distance(&self, z: Point) -> f64 {
        let dx = (self.min.re - z.re).max(0.0).max(z.re - self.max.re);
        let dy = (self.min.im - z.im).max(0.0).max(z.im - self.max.im);
        dx.hypot(dy)
    }
}

/// Angle reduced to `[0, 2π)`.
pub(crate) fn rem_tau(a: f64) -> f64 {
    let r = a % TAU;
    if r < 0.0 {
        // Tiny negative remainders round up to TAU itself.
        let s = r + TAU;
        if s >= TAU {
            0.0
        } else {
            s
        }
    } else {
        r
    }
}

/// Angle reduced to `(-π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let r = rem_tau(a + PI) - PI;
    if r == -PI {
        PI
    } else {
        r
    }
}

fn finite(p: Point) -> bool {
    p.re.is_finite() && p.im.is_finite()
}

fn segment_closest(z: Point, a: Point, b: Point) -> Point {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return a;
    }
    let t = ((z - a).re * d.re + (z - a).im * d.im) / len2;
    a + d * t.clamp(0.0, 1.0)
}

fn ray_closest(z: Point, anchor: Point, dir: Point) -> Point {
    let t = (z - anchor).re * dir.re + (z - anchor).im * dir.im;
    anchor + dir * t.max(0.0)
}

impl Obstacle {
    pub fn kind(&self) -> &'static str {
        match self {
            Obstacle::Segment { .. } => "segment",
            Obstacle::HalfLine { .. } => "half_line",
            Obstacle::Arc { .. } => "arc",
            Obstacle::ClosedDisk { .. } => "closed_disk",
            Obstacle::ClosedWedge { .. } => "closed_wedge",
            Obstacle::PolarPoints { .. } => "polar_points",
            Obstacle::PolarLattice { .. } => "polar_lattice",
        }
    }

    /// Checks the primitive's invariants; the message does not name the index.
    pub fn validate(&self) -> Result<(), String> {
        let bad_point = |name: &str, p: Point| {
            if finite(p) {
                Ok(())
            } else {
                Err(format!("{name} has a non-finite coordinate"))
            }
        };
        let positive = |name: &str, x: f64| {
            if x.is_finite() && x > 0.0 {
                Ok(())
            } else {
                Err(format!("{name} must be positive and finite, got {x}"))
            }
        };
        match self {
            Obstacle::Segment { a, b } => {
                bad_point("a", *a)?;
                bad_point("b", *b)?;
                if a == b {
                    return Err(
                        "segment endpoints coincide (a point is polar; use polar_points)".into(),
                    );
                }
            }
            Obstacle::HalfLine { anchor, direction } => {
                bad_point("anchor", *anchor)?;
                bad_point("direction", *direction)?;
                if (direction.norm() - 1.0).abs() > 1e-9 {
                    return Err(format!(
                        "direction must be a unit vector, |direction| = {}",
                        direction.norm()
                    ));
                }
            }
            Obstacle::Arc {
                center,
                radius,
                mid_angle,
                half_width,
            } => {
                bad_point("center", *center)?;
                positive("radius", *radius)?;
                if !mid_angle.is_finite() {
                    return Err("mid_angle must be finite".into());
                }
                if !(*half_width > 0.0 && *half_width <= PI) {
                    return Err(format!("half_width must lie in (0, π], got {half_width}"));
                }
            }
            Obstacle::ClosedDisk { center, radius } => {
                bad_point("center", *center)?;
                positive("radius", *radius)?;
            }
            Obstacle::ClosedWedge {
                apex,
                start_angle,
                end_angle,
            } => {
                bad_point("apex", *apex)?;
                if !(start_angle.is_finite() && end_angle.is_finite()) {
                    return Err("wedge angles must be finite".into());
                }
                let opening = self.wedge_opening();
                if !(opening > 0.0 && opening < TAU) {
                    return Err("wedge opening must lie strictly between 0 and 2π".into());
                }
            }
            Obstacle::PolarPoints { points } => {
                if points.is_empty() {
                    return Err("polar point set is empty".into());
                }
                for (i, p) in points.iter().enumerate() {
                    if !finite(*p) {
                        return Err(format!("point {i} has a non-finite coordinate"));
                    }
                }
            }
            Obstacle::PolarLattice {
                origin,
                basis,
                bound,
            } => {
                bad_point("origin", *origin)?;
                bad_point("basis[0]", basis[0])?;
                bad_point("basis[1]", basis[1])?;
                let det = basis[0].re * basis[1].im - basis[0].im * basis[1].re;
                if det.abs() <= 1e-12 * basis[0].norm() * basis[1].norm() || det == 0.0 {
                    return Err("lattice basis vectors are linearly dependent".into());
                }
                if let Some(b) = bound {
                    positive("bound", *b)?;
                }
            }
        }
        Ok(())
    }

    pub fn is_polar(&self) -> bool {
        matches!(
            self,
            Obstacle::PolarPoints { .. } | Obstacle::PolarLattice { .. }
        )
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            Obstacle::HalfLine { .. } | Obstacle::ClosedWedge { .. } => false,
            Obstacle::PolarLattice { bound, .. } => bound.is_some(),
            _ => true,
        }
    }

    fn wedge_opening(&self) -> f64 {
        match self {
            Obstacle::ClosedWedge {
                start_angle,
                end_angle,
                ..
            } => rem_tau(end_angle - start_angle),
            _ => 0.0,
        }
    }

    /// Bounding box of a bounded primitive.
    pub fn bbox(&self) -> Option<Aabb> {
        match self {
            Obstacle::Segment { a, b } => Some(Aabb::of_points(&[*a, *b])),
            Obstacle::Arc {
                center,
                radius,
                mid_angle,
                half_width,
            } => {
                let mut pts = alloc::vec![
                    center + Complex64::from_polar(*radius, mid_angle - half_width),
                    center + Complex64::from_polar(*radius, mid_angle + half_width),
                ];
                for k in 0..4 {
                    let t = k as f64 * PI / 2.0;
                    if wrap_angle(t - mid_angle).abs() <= *half_width {
                        pts.push(center + Complex64::from_polar(*radius, t));
                    }
                }
                Some(Aabb::of_points(&pts))
            }
            Obstacle::ClosedDisk { center, radius } => Some(Aabb::around(*center, *radius)),
            Obstacle::PolarPoints { points } => Some(Aabb::of_points(points)),
            Obstacle::PolarLattice { bound: Some(b), .. } => {
                Some(Aabb::around(Complex64::new(0.0, 0.0), *b))
            }
            _ => None,
        }
    }

    /// Upper bound on `|z|` over the obstacle (infinite when unbounded).
    pub fn far_radius(&self) -> f64 {
        match self {
            Obstacle::Segment { a, b } => a.norm().max(b.norm()),
            Obstacle::Arc {
                center,
                radius,
                mid_angle,
                half_width,
            } => {
                // The farthest point from 0 lies in direction arg(center) when
                // that direction is on the arc, otherwise at an endpoint.
                if center.norm() == 0.0 || wrap_angle(center.arg() - mid_angle).abs() <= *half_width
                {
                    center.norm() + radius
                } else {
                    let e1 = center + Complex64::from_polar(*radius, mid_angle + half_width);
                    let e2 = center + Complex64::from_polar(*radius, mid_angle - half_width);
                    e1.norm().max(e2.norm())
                }
            }
            Obstacle::ClosedDisk { center, radius } => center.norm() + radius,
            Obstacle::PolarPoints { points } => points.iter().fold(0.0_f64, |m, p| m.max(p.norm())),
            Obstacle::PolarLattice { bound: Some(b), .. } => *b,
            _ => f64::INFINITY,
        }
    }

    /// Closest point of the obstacle to `z`.
    pub fn closest_point(&self, z: Point) -> Point {
        match self {
            Obstacle::Segment { a, b } => segment_closest(z, *a, *b),
            Obstacle::HalfLine { anchor, direction } => ray_closest(z, *anchor, *direction),
            Obstacle::Arc {
                center,
                radius,
                mid_angle,
                half_width,
            } => {
                let v = z - center;
                let rho = v.norm();
                if rho == 0.0 {
                    return center + Complex64::from_polar(*radius, *mid_angle);
                }
                let rel = wrap_angle(v.arg() - mid_angle);
                if rel.abs() <= *half_width {
                    center + v * (radius / rho)
                } else {
                    let e1 = center + Complex64::from_polar(*radius, mid_angle + half_width);
                    let e2 = center + Complex64::from_polar(*radius, mid_angle - half_width);
                    if (z - e1).norm() <= (z - e2).norm() {
                        e1
                    } else {
                        e2
                    }
                }
            }
            Obstacle::ClosedDisk { center, radius } => {
                let v = z - center;
                let rho = v.norm();
                if rho <= *radius {
                    z
                } else {
                    center + v * (radius / rho)
                }
            }
            Obstacle::ClosedWedge {
                apex, start_angle, ..
            } => {
                let v = z - apex;
                if v.norm() == 0.0 || rem_tau(v.arg() - start_angle) <= self.wedge_opening() {
                    return z;
                }
                let d1 = Complex64::from_polar(1.0, *start_angle);
                let d2 = Complex64::from_polar(1.0, start_angle + self.wedge_opening());
                let p1 = ray_closest(z, *apex, d1);
                let p2 = ray_closest(z, *apex, d2);
                if (z - p1).norm() <= (z - p2).norm() {
                    p1
                } else {
                    p2
                }
            }
            Obstacle::PolarPoints { points } => {
                let mut best = points[0];
                let mut bd = f64::INFINITY;
                for p in points {
                    let d = (z - p).norm_sqr();
                    if d < bd {
                        bd = d;
                        best = *p;
                    }
                }
                best
            }
            Obstacle::PolarLattice {
                origin,
                basis,
                bound,
            } => lattice_closest(z, *origin, basis, *bound)
                .unwrap_or(Complex64::new(f64::INFINITY, f64::INFINITY)),
        }
    }

    /// Euclidean distance from `z` to the obstacle; zero exactly on it.
    pub fn distance(&self, z: Point) -> f64 {
        match self {
            Obstacle::Arc {
                center,
                radius,
                mid_angle,
                half_width,
            } => {
                let v = z - center;
                let rho = v.norm();
                if rho == 0.0 {
                    return *radius;
                }
                let rel = wrap_angle(v.arg() - mid_angle);
                if rel.abs() <= *half_width {
                    (rho - radius).abs()
                } else {
                    let e1 = center + Complex64::from_polar(*radius, mid_angle + half_width);
                    let e2 = center + Complex64::from_polar(*radius, mid_angle - half_width);
                    (z - e1).norm().min((z - e2).norm())
                }
            }
            Obstacle::ClosedDisk { center, radius } => ((z - center).norm() - radius).max(0.0),
            _ => (z - self.closest_point(z)).norm(),
        }
    }

    pub fn contains(&self, z: Point) -> bool {
        self.distance(z) == 0.0
    }

    fn sample_spacing(&self, n: usize) -> f64 {
        match self {
            Obstacle::Segment { a, b } => (b - a).norm() / n.max(1) as f64,
            Obstacle::Arc {
                radius, half_width, ..
            } => 2.0 * radius * half_width / n.max(1) as f64,
            Obstacle::ClosedDisk { radius, .. } => TAU * radius / n.max(1) as f64,
            _ => 0.0,
        }
    }

    /// `n + 1` points spread over a bounded primitive (its boundary for
    /// disks, the points themselves for polar sets).
    pub fn samples(&self, n: usize) -> Vec<Point> {
        let n = n.max(1);
        match self {
            Obstacle::Segment { a, b } => (0..=n)
                .map(|k| a + (b - a) * (k as f64 / n as f64))
                .collect(),
            Obstacle::Arc {
                center,
                radius,
                mid_angle,
                half_width,
            } => (0..=n)
                .map(|k| {
                    let t = mid_angle - half_width + 2.0 * half_width * k as f64 / n as f64;
                    center + Complex64::from_polar(*radius, t)
                })
                .collect(),
            Obstacle::ClosedDisk { center, radius } => (0..=n)
                .map(|k| center + Complex64::from_polar(*radius, TAU * k as f64 / n as f64))
                .collect(),
            Obstacle::PolarPoints { points } => points.clone(),
            _ => Vec::new(),
        }
    }

    /// Whether two obstacles intersect, up to the sampling resolution of
    /// the bounded one(s).
    pub fn touches(&self, other: &Obstacle, samples: usize) -> bool {
        let check = |a: &Obstacle, b: &Obstacle| -> bool {
            if !a.is_bounded() {
                return false;
            }
            let tol = 0.5 * a.sample_spacing(samples) + 1e-12 * (1.0 + a.far_radius());
            a.samples(samples).iter().any(|p| b.distance(*p) <= tol)
        };
        check(self, other) || check(other, self)
    }
}

fn lattice_coords(v: Point, basis: &[Point; 2]) -> (f64, f64) {
    let (b1, b2) = (basis[0], basis[1]);
    let det = b1.re * b2.im - b1.im * b2.re;
    let u = (v.re * b2.im - v.im * b2.re) / det;
    let w = (b1.re * v.im - b1.im * v.re) / det;
    (u, w)
}

fn lattice_search(
    z: Point,
    around: Point,
    origin: Point,
    basis: &[Point; 2],
    bound: Option<f64>,
    reach: i64,
) -> Option<Point> {
    let (u, w) = lattice_coords(around - origin, basis);
    let (u0, w0) = (u.round() as i64, w.round() as i64);
    let mut best: Option<(f64, Point)> = None;
    for du in -reach..=reach {
        for dw in -reach..=reach {
            let p = origin + basis[0] * (u0 + du) as f64 + basis[1] * (w0 + dw) as f64;
            if let Some(b) = bound {
                if p.norm() > b {
                    continue;
                }
            }
            let d = (z - p).norm_sqr();
            if best.map_or(true, |(bd, _)| d < bd) {
                best = Some((d, p));
            }
        }
    }
    best.map(|(_, p)| p)
}

/// Nearest lattice point; with a bound, the nearest admissible point is
/// searched near the radial projection of `z` onto the bounding disk.
fn lattice_closest(
    z: Point,
    origin: Point,
    basis: &[Point; 2],
    bound: Option<f64>,
) -> Option<Point> {
    if let Some(p) = lattice_search(z, z, origin, basis, bound, 2) {
        return Some(p);
    }
    let b = bound?;
    let r = z.norm();
    let proj = if r > b { z * (b / r) } else { z };
    lattice_search(z, proj, origin, basis, bound, 4)
}
