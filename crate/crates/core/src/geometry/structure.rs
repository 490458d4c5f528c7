//! Structural queries: Bloch radius, class-D detection and the simply
//! connected hull `Ω = D ∪ F`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::{DomainSpec, Obstacle};
use crate::config::GeometryThresholds;
use crate::error::{Error, Result};

/// Largest inscribed disk found on a grid, at the search radius and three
/// doublings of it.
#[derive(Debug, Clone, PartialEq)]
pub struct InscribedRadius {
    pub value: f64,
    pub unbounded_hint: bool,
    /// Values at `search_radius * 2^j`, `j = 0..4`, with the grid step scaled alike.
    pub doublings: [f64; 4],
}

fn grid_max(spec: &DomainSpec, search: f64, step: f64) -> f64 {
    let n = (search / step).floor() as i64;
    let rows = (2 * n + 1) as usize;
    let maxima = crate::par::map_indexed(rows, |row| {
        let y = (row as i64 - n) as f64 * step;
        let mut m = 0.0_f64;
        for i in -n..=n {
            let z = Complex64::new(i as f64 * step, y);
            if z.norm() <= search {
                m = m.max(spec.distance_to_complement_strict(z));
            }
        }
        m
    });
    maxima.into_iter().fold(0.0, f64::max)
}

/// Maximum over grid points `|z| <= search_radius` of the polar-aware
/// distance to the complement.
pub fn largest_inscribed_radius(
    spec: &DomainSpec,
    search_radius: f64,
    grid_step: f64,
) -> Result<InscribedRadius> {
    largest_inscribed_radius_with(
        spec,
        search_radius,
        grid_step,
        &GeometryThresholds::default(),
    )
}

pub fn largest_inscribed_radius_with(
    spec: &DomainSpec,
    search_radius: f64,
    grid_step: f64,
    th: &GeometryThresholds,
) -> Result<InscribedRadius> {
    if !(grid_step.is_finite() && grid_step > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "grid step must be positive, got {grid_step}"
        )));
    }
    if !(search_radius.is_finite() && grid_step < search_radius) {
        return Err(Error::InvalidArgument(format!(
            "grid step {grid_step} must be smaller than the search radius {search_radius}"
        )));
    }
    let mut doublings = [0.0; 4];
    for (j, slot) in doublings.iter_mut().enumerate() {
        let f = (1u32 << j) as f64;
        *slot = grid_max(spec, search_radius * f, grid_step * f);
    }
    let unbounded_hint = doublings[0].is_infinite()
        || doublings
            .windows(2)
            .all(|w| w[1] >= th.unbounded_growth * w[0]);
    Ok(InscribedRadius {
        value: doublings[0],
        unbounded_hint,
        doublings,
    })
}

/// Components of the complement: obstacles connected to an unbounded
/// obstacle form the hull boundary, everything else is a hole.
struct Split {
    hull: Vec<usize>,
    holes: Vec<usize>,
    unbounded_holes: bool,
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn split_components(spec: &DomainSpec, samples: usize) -> Split {
    let obs = spec.obstacles();
    let n = obs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let solid: Vec<usize> = (0..n).filter(|&i| !obs[i].is_polar()).collect();
    for (a, &i) in solid.iter().enumerate() {
        for &j in &solid[a + 1..] {
            let (oi, oj) = (&obs[i], &obs[j]);
            if !oi.is_bounded() && !oj.is_bounded() {
                continue;
            }
            if let (Some(bi), Some(bj)) = (oi.bbox(), oj.bbox()) {
                let pad = 1e-9 * (1.0 + oi.far_radius().max(oj.far_radius()));
                if bi.min.re > bj.max.re + pad
                    || bj.min.re > bi.max.re + pad
                    || bi.min.im > bj.max.im + pad
                    || bj.min.im > bi.max.im + pad
                {
                    continue;
                }
            }
            if find(&mut parent, i) != find(&mut parent, j) && oi.touches(oj, samples) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut root_unbounded = alloc::vec![false; n];
    for &i in &solid {
        if !obs[i].is_bounded() {
            let r = find(&mut parent, i);
            root_unbounded[r] = true;
        }
    }
    let mut split = Split {
        hull: Vec::new(),
        holes: Vec::new(),
        unbounded_holes: false,
    };
    for i in 0..n {
        if obs[i].is_polar() {
            split.holes.push(i);
            split.unbounded_holes |= !obs[i].is_bounded();
        } else if root_unbounded[find(&mut parent, i)] {
            split.hull.push(i);
        } else {
            split.holes.push(i);
        }
    }
    split
}

/// One probed circle `|z| = radius` of the hull.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CircleProbe {
    pub radius: f64,
    /// Arcs of `Ω ∩ {|z| = radius}` found by the angular scan.
    pub components: usize,
    /// The whole circle lies in `Ω`.
    pub full_circle: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassDReport {
    pub is_class_d: bool,
    /// Smallest probed radius beyond which every probe passes and the holes
    /// lie inside `|z| < R - 1`.
    pub r_constant: Option<f64>,
    /// The hull is the whole plane (the complement is bounded).
    pub omega_is_plane: bool,
    /// Indices of obstacles forming bounded complement components.
    pub holes: Vec<usize>,
    /// `sup |z|` over the holes; 0 when there are none.
    pub hole_radius: f64,
    pub probes: Vec<CircleProbe>,
    /// Probes violating the one-arc condition.
    pub failures: Vec<CircleProbe>,
    pub reason: Option<String>,
}

fn scan_circle(hull: &DomainSpec, r: f64, resolution: usize) -> CircleProbe {
    // A sample is blocked when the complement meets its angular cell, so
    // thin slits and arcs register even between sample angles.
    let half_cell = r * (core::f64::consts::PI / resolution as f64);
    let inside: Vec<bool> = (0..resolution)
        .map(|k| {
            let z = Complex64::from_polar(r, TAU * k as f64 / resolution as f64);
            hull.distance_to_complement(z) > half_cell
        })
        .collect();
    let full_circle = inside.iter().all(|&b| b);
    let components = if full_circle {
        1
    } else {
        (0..resolution)
            .filter(|&k| inside[k] && !inside[(k + resolution - 1) % resolution])
            .count()
    };
    CircleProbe {
        radius: r,
        components,
        full_circle,
    }
}

/// Class-D test on an increasing grid of radii.
pub fn class_d_check(spec: &DomainSpec, r_grid: &[f64]) -> ClassDReport {
    class_d_check_with(spec, r_grid, &GeometryThresholds::default())
}

pub fn class_d_check_with(
    spec: &DomainSpec,
    r_grid: &[f64],
    th: &GeometryThresholds,
) -> ClassDReport {
    let mut report = ClassDReport {
        is_class_d: false,
        r_constant: None,
        omega_is_plane: false,
        holes: Vec::new(),
        hole_radius: 0.0,
        probes: Vec::new(),
        failures: Vec::new(),
        reason: None,
    };
    if spec.obstacles().is_empty() {
        report.reason = Some("no obstacles: the domain is the whole plane".into());
        return report;
    }
    if r_grid.is_empty() || r_grid.windows(2).any(|w| w[1] <= w[0]) || r_grid[0] <= 0.0 {
        report.reason = Some("radius grid must be positive and strictly increasing".into());
        return report;
    }
    let split = split_components(spec, th.touch_samples);
    report.holes = split.holes.clone();
    if split.unbounded_holes {
        report.reason = Some("the union of bounded complement components is unbounded".into());
        return report;
    }
    report.hole_radius = split
        .holes
        .iter()
        .map(|&i| spec.obstacles()[i].far_radius())
        .fold(0.0, f64::max);
    report.omega_is_plane = split.hull.is_empty();
    let hull_obstacles: Vec<Obstacle> = split
        .hull
        .iter()
        .map(|&i| spec.obstacles()[i].clone())
        .collect();
    let hull =
        match DomainSpec::with_base("hull", hull_obstacles, spec.scale_hint(), spec.base_point()) {
            Ok(h) => h,
            Err(e) => {
                report.reason = Some(format!("{e}"));
                return report;
            }
        };
    let needs_holes_inside = !split.holes.is_empty();
    let ok = |p: &CircleProbe| {
        if report.omega_is_plane {
            true
        } else {
            p.components == 1 && !p.full_circle
        }
    };
    report.probes = r_grid
        .iter()
        .map(|&r| scan_circle(&hull, r, th.angular_resolution))
        .collect();
    report.failures = report.probes.iter().filter(|p| !ok(p)).copied().collect();
    // Smallest index from which every probe passes.
    let mut first_good = report.probes.len();
    for (i, p) in report.probes.iter().enumerate().rev() {
        if ok(p) {
            first_good = i;
        } else {
            break;
        }
    }
    let candidate = report.probes[first_good..]
        .iter()
        .find(|p| !needs_holes_inside || p.radius > report.hole_radius + 1.0);
    match candidate {
        Some(p) => {
            report.is_class_d = true;
            report.r_constant = Some(p.radius);
        }
        None => {
            report.reason = Some(if first_good == report.probes.len() {
                "the largest probed circle meets the hull in more than one arc (or not at all)"
                    .into()
            } else {
                "no probed radius clears the holes by the required margin".into()
            });
        }
    }
    report
}

/// Whether the complement is connected and unbounded: no holes and at
/// least one unbounded obstacle.
pub fn is_simply_connected(spec: &DomainSpec) -> bool {
    let split = split_components(spec, GeometryThresholds::default().touch_samples);
    !split.hull.is_empty() && split.holes.is_empty()
}

/// The hull `Ω = D ∪ F`: only obstacles connected to an unbounded
/// non-polar obstacle are kept.
pub fn omega_hull(spec: &DomainSpec) -> Result<DomainSpec> {
    let split = split_components(spec, GeometryThresholds::default().touch_samples);
    if split.hull.is_empty() {
        return Err(Error::HullIsPlane);
    }
    let obstacles = split
        .hull
        .iter()
        .map(|&i| spec.obstacles()[i].clone())
        .collect();
    DomainSpec::with_base(
        format!("{}-hull", spec.label()),
        obstacles,
        spec.scale_hint(),
        spec.base_point(),
    )
}
