//! Numerical thresholds and defaults.
//!
//! Every tolerance used by a decision procedure lives in [`Thresholds`]; the
//! CLI loads it from a single TOML file and falls back to
//! `Thresholds::default()`.

/// Default Monte Carlo seed. Runs are reproducible unless a seed is passed.
pub const DEFAULT_SEED: u64 = 0x4841_5244_5953_4350;

/// Walks per deterministic batch.
pub const BATCH_SIZE: usize = 1024;

#[derive(Debug, Clone, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct Thresholds {
    pub walk: WalkDefaults,
    pub fit: FitThresholds,
    pub trend: TrendThresholds,
    pub quadrature: QuadratureThresholds,
    pub geometry: GeometryThresholds,
    pub construction: ConstructionThresholds,
    pub consistency: ConsistencyThresholds,
}

/// Defaults used when a [`WalkConfig`](crate::WalkConfig) is built from a spec.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct WalkDefaults {
    /// Shell thickness as a multiple of the spec's `scale_hint`.
    pub eps_relative: f64,
    pub max_steps: u64,
    /// Escape radius as a multiple of `max(|z|, |w|, scale_hint)`.
    pub escape_factor: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl Default for WalkDefaults {
    fn default() -> Self {
        WalkDefaults {
            eps_relative: 1e-4,
            max_steps: 100_000,
            escape_factor: 1e4,
            n_samples: 100_000,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct FitThresholds {
    /// Entries per least-squares window.
    pub window: usize,
    /// Minimum number of usable entries.
    pub min_entries: usize,
    /// Entries with `mean <= drop_sigma * stderr` are dropped.
    pub drop_sigma: f64,
    /// Window slopes all above this and nondecreasing flag an infinite exponent.
    pub infinity_slope: f64,
}

impl Default for FitThresholds {
    fn default() -> Self {
        FitThresholds {
            window: 4,
            min_entries: 6,
            drop_sigma: 2.0,
            infinity_slope: 8.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct TrendThresholds {
    /// Dead band around the critical integrand exponent `-1`.
    pub margin: f64,
}

impl Default for TrendThresholds {
    fn default() -> Self {
        TrendThresholds { margin: 0.1 }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct QuadratureThresholds {
    /// Truncation ladder `r_k = 1 - 2^-k` runs over `k_min..=k_max`.
    pub k_min: u32,
    pub k_max: u32,
    /// Increment ratios at or above this over `run` consecutive steps: divergent.
    pub divergent_ratio: f64,
    /// Increment ratios at or below this over `run` consecutive steps: convergent.
    pub convergent_ratio: f64,
    pub run: usize,
    /// Radius of the disk excised around a declared zero of the map.
    pub zero_excision: f64,
    /// Smallest angular panel, as a multiple of the distance `1 - r` to the circle.
    pub angular_grading: f64,
}

impl Default for QuadratureThresholds {
    fn default() -> Self {
        QuadratureThresholds {
            k_min: 3,
            k_max: 30,
            divergent_ratio: 1.10,
            convergent_ratio: 0.90,
            run: 4,
            zero_excision: 1e-3,
            angular_grading: 0.25,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct GeometryThresholds {
    /// Angular samples per circle when counting components.
    pub angular_resolution: usize,
    /// Inscribed-radius growth ratio per doubling that signals unboundedness.
    pub unbounded_growth: f64,
    /// Samples per bounded obstacle when testing whether two obstacles touch.
    pub touch_samples: usize,
}

impl Default for GeometryThresholds {
    fn default() -> Self {
        GeometryThresholds {
            angular_resolution: 4096,
            unbounded_growth: 1.5,
            touch_samples: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct ConstructionThresholds {
    /// Guard band, in standard errors, for every Monte Carlo inequality.
    pub sigma_guard: f64,
    /// Resolution of the arc-width bisection.
    pub width_resolution: f64,
    /// Smallest arc half-width the search may try.
    pub width_floor: f64,
    /// Doubling scans give up beyond `doubling_limit` times their start.
    pub doubling_limit: f64,
    /// Harmonic-measure bound of the class-D constant `rho`.
    pub rho_measure_bound: f64,
    /// Probe points for the direct check at radius `rho`.
    pub spot_probes: usize,
    /// Ratio-to-median threshold of the Green ratio diagnostic.
    pub green_ratio_factor: f64,
}

impl Default for ConstructionThresholds {
    fn default() -> Self {
        ConstructionThresholds {
            sigma_guard: 3.0,
            width_resolution: 1e-4,
            width_floor: 1e-4,
            doubling_limit: 1_048_576.0,
            rho_measure_bound: 0.25,
            spot_probes: 8,
            green_ratio_factor: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct ConsistencyThresholds {
    /// Tolerance for the number inequalities `h <= b_alpha/(alpha+2) <= b`.
    pub tol: f64,
}

impl Default for ConsistencyThresholds {
    fn default() -> Self {
        ConsistencyThresholds { tol: 0.05 }
    }
}
