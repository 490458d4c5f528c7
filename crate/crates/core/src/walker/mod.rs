//! Walk-on-spheres sampling of Brownian exit points.
//!
//! From `z` the walk jumps to a uniform point on the largest circle around
//! `z` inside the domain and stops once it is within `eps_boundary` of the
//! complement; the exit point is the nearest complement point. Polar
//! obstacles are invisible to the walk.
//!
//! Optional absorbing circles `|z| = inner` and `|z| = outer` truncate the
//! domain. Untruncated walks are stopped on the escape circle
//! `|z| = r_escape`; the last step is clamped so the walk lands on it.

mod estimators;
mod profile;

use core::f64::consts::TAU;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use rand_core::RngCore;

use crate::config::{WalkDefaults, BATCH_SIZE};
use crate::error::{Error, Result};
use crate::geometry::{DomainSpec, Point};
use crate::rng;
use crate::stats::{Accumulator, Estimate};

pub use estimators::{
    green, green_truncated, harmonic_measure_circle, harmonic_measure_set, is_degenerate_truncation,
};
pub use profile::{
    omega_profile, psi_profile, psi_profile_from_base, ProfileEntry, ProfileKind, RadialProfile,
};

/// Sample-size schedule for radial profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Schedule {
    /// `n_samples` at every radius.
    #[default]
    Constant,
    /// `n_samples * (1 + log2(r / r_0))`, `r_0` the first grid radius.
    Log2Growth,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WalkConfig {
    pub eps_boundary: f64,
    pub max_steps: u64,
    /// Explicit escape radius; `None` uses `escape_factor * max(|z|, |w|, scale_hint)`.
    pub r_escape: Option<f64>,
    pub escape_factor: f64,
    pub n_samples: u64,
    pub seed: u64,
    pub schedule: Schedule,
}

impl WalkConfig {
    /// Defaults scaled to the spec's `scale_hint`.
    pub fn for_spec(spec: &DomainSpec) -> Self {
        Self::from_defaults(spec, &WalkDefaults::default())
    }

    pub fn from_defaults(spec: &DomainSpec, d: &WalkDefaults) -> Self {
        WalkConfig {
            eps_boundary: d.eps_relative * spec.scale_hint(),
            max_steps: d.max_steps,
            r_escape: None,
            escape_factor: d.escape_factor,
            n_samples: d.n_samples,
            seed: d.seed,
            schedule: Schedule::Constant,
        }
    }

    pub fn with_samples(mut self, n: u64) -> Self {
        self.n_samples = n;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps_boundary = eps;
        self
    }

    pub fn with_schedule(mut self, schedule: Schedule) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps_boundary.is_finite() && self.eps_boundary > 0.0) {
            return Err(Error::InvalidArgument(
                "eps_boundary must be positive".into(),
            ));
        }
        if self.max_steps == 0 || self.n_samples == 0 {
            return Err(Error::InvalidArgument(
                "max_steps and n_samples must be positive".into(),
            ));
        }
        if let Some(r) = self.r_escape {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::InvalidArgument("r_escape must be positive".into()));
            }
        }
        if !(self.escape_factor.is_finite() && self.escape_factor > 1.0) {
            return Err(Error::InvalidArgument("escape_factor must exceed 1".into()));
        }
        Ok(())
    }

    /// Escape radius for a run whose relevant points have modulus up to `reach`.
    pub fn escape_radius(&self, spec: &DomainSpec, reach: f64) -> f64 {
        self.r_escape
            .unwrap_or(self.escape_factor * reach.max(spec.scale_hint()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ExitStatus {
    Absorbed,
    Escaped,
    StepLimit,
}

/// Boundary feature that stopped a walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ExitFeature {
    Obstacle(usize),
    InnerCircle,
    OuterCircle,
    EscapeCircle,
    /// Step budget exhausted.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExitSample {
    pub exit_point: Point,
    pub steps: u64,
    pub status: ExitStatus,
    pub feature: ExitFeature,
}

/// Absorbing circles centred at the origin added to the domain.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Truncation {
    pub inner: Option<f64>,
    pub outer: Option<f64>,
}

impl Truncation {
    pub const NONE: Truncation = Truncation {
        inner: None,
        outer: None,
    };

    pub fn outer(r: f64) -> Self {
        Truncation {
            inner: None,
            outer: Some(r),
        }
    }

    pub fn inner(r: f64) -> Self {
        Truncation {
            inner: Some(r),
            outer: None,
        }
    }

    /// Whether `z` lies strictly between the truncation circles.
    pub fn admits(&self, z: Point) -> bool {
        let r = z.norm();
        self.inner.map_or(true, |a| r > a) && self.outer.map_or(true, |b| r < b)
    }
}

/// A domain, truncation and tolerances bundled for repeated sampling.
#[derive(Debug, Clone, Copy)]
pub struct Walker<'a> {
    spec: &'a DomainSpec,
    trunc: Truncation,
    eps: f64,
    max_steps: u64,
    r_escape: f64,
}

/// Shell thickness for a circle of radius `r`: the absolute shell cannot
/// be resolved in floating point once `r` is large.
#[inline]
fn circle_shell(eps: f64, r: f64) -> f64 {
    eps.max(1e-10 * r)
}

impl<'a> Walker<'a> {
    /// `r_escape` is ignored when an outer circle is present.
    pub fn new(spec: &'a DomainSpec, trunc: Truncation, cfg: &WalkConfig, r_escape: f64) -> Self {
        let r_escape = match trunc.outer {
            Some(_) => f64::INFINITY,
            None => r_escape,
        };
        Walker {
            spec,
            trunc,
            eps: cfg.eps_boundary,
            max_steps: cfg.max_steps,
            r_escape,
        }
    }

    pub fn spec(&self) -> &DomainSpec {
        self.spec
    }

    pub fn r_escape(&self) -> f64 {
        self.r_escape
    }

    /// Whether a walk may start at `z`.
    pub fn admits(&self, z: Point) -> bool {
        self.spec.contains(z) && self.trunc.admits(z)
    }

    /// One walk from `z0`, which is assumed admissible.
    pub fn sample<R: RngCore>(&self, z0: Point, rng: &mut R) -> ExitSample {
        let mut z = z0;
        let mut steps = 0u64;
        loop {
            let d_obs = self.spec.distance_to_complement(z);
            let r = z.norm();
            let d_out = self.trunc.outer.map_or(f64::INFINITY, |b| b - r);
            let d_in = self.trunc.inner.map_or(f64::INFINITY, |a| r - a);
            let d_esc = self.r_escape - r;
            let step = d_obs.min(d_out).min(d_in).min(d_esc);

            let hit_obs = d_obs < self.eps;
            let hit_out = self
                .trunc
                .outer
                .is_some_and(|b| d_out < circle_shell(self.eps, b));
            let hit_in = self
                .trunc
                .inner
                .is_some_and(|a| d_in < circle_shell(self.eps, a));
            let hit_esc = d_esc < circle_shell(self.eps, self.r_escape);
            if hit_obs || hit_out || hit_in || hit_esc {
                return self.terminate(
                    z,
                    r,
                    steps,
                    [
                        (hit_obs, d_obs),
                        (hit_in, d_in),
                        (hit_out, d_out),
                        (hit_esc, d_esc),
                    ],
                );
            }
            if steps >= self.max_steps {
                return ExitSample {
                    exit_point: z,
                    steps,
                    status: ExitStatus::StepLimit,
                    feature: ExitFeature::None,
                };
            }
            let theta = TAU * rng::uniform(rng);
            let (s, c) = theta.sin_cos();
            z += Complex64::new(step * c, step * s);
            steps += 1;
        }
    }

    /// Picks the nearest feature among those inside their shells; the
    /// obstacle wins ties because it is listed first.
    fn terminate(&self, z: Point, r: f64, steps: u64, hits: [(bool, f64); 4]) -> ExitSample {
        let mut pick = 0;
        let mut best = f64::INFINITY;
        for (k, &(hit, d)) in hits.iter().enumerate() {
            if hit && d < best {
                best = d;
                pick = k;
            }
        }
        let on_circle = |radius: f64| if r > 0.0 { z * (radius / r) } else { z };
        let (exit_point, status, feature) = match pick {
            0 => {
                let n = self
                    .spec
                    .nearest(z, false)
                    .expect("an obstacle was within the shell");
                (
                    n.point,
                    ExitStatus::Absorbed,
                    ExitFeature::Obstacle(n.index),
                )
            }
            1 => (
                on_circle(self.trunc.inner.unwrap_or(r)),
                ExitStatus::Absorbed,
                ExitFeature::InnerCircle,
            ),
            2 => (
                on_circle(self.trunc.outer.unwrap_or(r)),
                ExitStatus::Absorbed,
                ExitFeature::OuterCircle,
            ),
            _ => (
                on_circle(self.r_escape),
                ExitStatus::Escaped,
                ExitFeature::EscapeCircle,
            ),
        };
        ExitSample {
            exit_point,
            steps,
            status,
            feature,
        }
    }
}

/// One exit sample from `z0` in the untruncated domain.
pub fn sample_exit<R: RngCore>(
    spec: &DomainSpec,
    z0: Point,
    cfg: &WalkConfig,
    rng: &mut R,
) -> Result<ExitSample> {
    cfg.validate()?;
    if !spec.contains(z0) {
        return Err(Error::StartOutsideDomain { x: z0.re, y: z0.im });
    }
    let walker = Walker::new(
        spec,
        Truncation::NONE,
        cfg,
        cfg.escape_radius(spec, z0.norm()),
    );
    Ok(walker.sample(z0, rng))
}

/// Walk outcome as seen by the batch driver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outcome {
    Used,
    Escaped,
    Discarded,
}

#[derive(Debug, Clone)]
struct Tally {
    accs: alloc::vec::Vec<Accumulator>,
    escaped_abs: alloc::vec::Vec<f64>,
    n_used: u64,
    n_escaped: u64,
    n_steplimit: u64,
}

impl Tally {
    fn new(k: usize) -> Self {
        Tally {
            accs: alloc::vec![Accumulator::default(); k],
            escaped_abs: alloc::vec![0.0; k],
            n_used: 0,
            n_escaped: 0,
            n_steplimit: 0,
        }
    }

    fn merge(&mut self, o: &Tally) {
        for (a, b) in self.accs.iter_mut().zip(&o.accs) {
            a.merge(b);
        }
        for (a, b) in self.escaped_abs.iter_mut().zip(&o.escaped_abs) {
            *a += b;
        }
        self.n_used += o.n_used;
        self.n_escaped += o.n_escaped;
        self.n_steplimit += o.n_steplimit;
    }
}

/// Runs `n` walks in deterministic batches. `walk` writes `k` values for
/// each walk; discarded walks contribute nothing. `escape_bias` of each
/// returned estimate is the mean absolute contribution of escaped walks.
pub(crate) fn run_batches<F>(n: u64, seed: u64, k: usize, walk: F) -> alloc::vec::Vec<Estimate>
where
    F: Fn(&mut rand_chacha::ChaCha8Rng, &mut [f64]) -> Outcome + Sync + Send,
{
    let batches = n.div_ceil(BATCH_SIZE as u64) as usize;
    let partial = crate::par::map_indexed(batches, |b| {
        let count = (n - (b * BATCH_SIZE) as u64).min(BATCH_SIZE as u64);
        let mut rng = rng::stream(seed, b as u64);
        let mut t = Tally::new(k);
        let mut vals = alloc::vec![0.0; k];
        for _ in 0..count {
            match walk(&mut rng, &mut vals) {
                Outcome::Used => {
                    t.n_used += 1;
                    vals.iter()
                        .zip(t.accs.iter_mut())
                        .for_each(|(v, a)| a.push(*v));
                }
                Outcome::Escaped => {
                    t.n_escaped += 1;
                    for ((v, a), e) in vals
                        .iter()
                        .zip(t.accs.iter_mut())
                        .zip(t.escaped_abs.iter_mut())
                    {
                        a.push(*v);
                        *e += v.abs();
                    }
                }
                Outcome::Discarded => t.n_steplimit += 1,
            }
        }
        t
    });
    let mut total = Tally::new(k);
    for t in &partial {
        total.merge(t);
    }
    let contributors = (total.n_used + total.n_escaped).max(1) as f64;
    total
        .accs
        .iter()
        .zip(&total.escaped_abs)
        .map(|(a, e)| Estimate {
            mean: a.mean,
            stderr: a.stderr(),
            n_used: total.n_used,
            n_escaped: total.n_escaped,
            n_steplimit: total.n_steplimit,
            escape_bias: e / contributors,
        })
        .collect()
}
