//! Streaming moments and the Monte Carlo [`Estimate`] type.

#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Welford accumulator; merging follows Chan et al. so batch partials can be
/// reduced in a fixed order.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Accumulator {
    pub n: u64,
    pub mean: f64,
    pub m2: f64,
}

impl Accumulator {
    #[inline]
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Accumulator) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.n as f64 / n as f64;
        let m2 = self.m2 + other.m2 + delta * delta * (self.n as f64 * other.n as f64) / n as f64;
        *self = Accumulator { n, mean, m2 };
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }

    pub fn stderr(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            (self.variance() / self.n as f64).sqrt()
        }
    }
}

/// Monte Carlo mean with its standard error and walk accounting.
///
/// `n_used + n_escaped + n_steplimit` equals the number of walks launched.
/// Escaped walks still contribute their truncation value to `mean`, so the
/// standard error is taken over `n_used + n_escaped` contributions;
/// `escape_bias` bounds the effect of those truncated contributions.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub n_used: u64,
    pub n_escaped: u64,
    pub n_steplimit: u64,
    pub escape_bias: f64,
}

impl Estimate {
    /// An exact value carried in `Estimate` form (zero error, one virtual sample).
    pub fn exact(mean: f64) -> Self {
        Estimate {
            mean,
            stderr: 0.0,
            n_used: 1,
            n_escaped: 0,
            n_steplimit: 0,
            escape_bias: 0.0,
        }
    }

    pub fn n_samples(&self) -> u64 {
        self.n_used + self.n_escaped + self.n_steplimit
    }

    /// Scales mean, error and bias by `c` (e.g. the `2π` of an angular mean).
    pub fn scaled(self, c: f64) -> Self {
        Estimate {
            mean: self.mean * c,
            stderr: self.stderr * c.abs(),
            escape_bias: self.escape_bias * c.abs(),
            ..self
        }
    }

    /// Standard error of the difference of two independent estimates.
    pub fn combined_stderr(&self, other: &Estimate) -> f64 {
        self.stderr.hypot(other.stderr)
    }
}
