/// Running count/mean/M2 accumulator (Welford, merged with Chan et al.).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / n;
        self.m2 += other.m2 + delta * delta * self.count as f64 * other.count as f64 / n;
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Sample standard deviation; `0` for fewer than two samples.
    pub fn sd(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            (self.m2 / (self.count - 1) as f64).sqrt()
        }
    }

    pub fn stderr(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.sd() / (self.count as f64).sqrt()
        }
    }
}

impl FromIterator<f64> for Moments {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut m = Moments::default();
        for x in iter {
            m.push(x);
        }
        m
    }
}

/// Spread of per-unit mean rewards at one aggregation level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spread {
    /// Number of units (steps, episodes or set points).
    pub units: u64,
    pub sd: f64,
    pub stderr: f64,
}

impl From<&Moments> for Spread {
    fn from(m: &Moments) -> Self {
        Spread {
            units: m.count(),
            sd: m.sd(),
            stderr: m.stderr(),
        }
    }
}

/// Outcome of a policy evaluation.
///
/// `sd` and `stderr` are over per-episode mean rewards (an episode being one
/// pass over every set point), so `stderr = sd / sqrt(episodes)`. The same
/// spread at step and set-point granularity is reported alongside.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalStats {
    pub mean: f64,
    pub sd: f64,
    pub stderr: f64,
    pub episodes: u64,
    /// Total number of environment steps.
    pub steps: u64,
    pub per_step: Spread,
    pub per_set_point: Spread,
    /// Mean reward per set point, in the order evaluated.
    pub set_point_means: Vec<(f64, f64)>,
    /// Policy outputs that had to be clamped into `[-1, 1]`.
    pub clamped_actions: u64,
}
