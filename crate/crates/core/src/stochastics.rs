//! Seedable random streams.
//!
//! Every draw, whatever its distribution, consumes exactly one raw 64-bit word
//! from the generator, so the draw counter of a [`RandomStream`] is also its
//! position in the underlying ChaCha8 keystream. A stream can therefore be
//! captured as a `(seed, draws)` pair and restored bit-exactly.
//!
//! Mapping from raw words to variates:
//!
//! | draw          | transform                                      |
//! |---------------|------------------------------------------------|
//! | `uniform`     | `lo + (hi - lo) * u`, `u = (x >> 11) / 2^53`   |
//! | `gauss`       | inverse normal CDF at `((x >> 11) + 0.5) / 2^53` |
//! | `exponential` | `-mean * ln(1 - u)`                            |
//! | `bernoulli`   | `1` iff `u < prob`                             |

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use statrs::function::erf::erfc_inv;

use crate::error::{Error, Result};

/// Generator identifier written into dataset metadata.
pub const GENERATOR_NAME: &str = "chacha8/rand_chacha-0.9/seed_from_u64";
/// Gaussian sampling method written into dataset metadata.
pub const GAUSSIAN_METHOD: &str = "inverse-cdf/one-word";

const INV_2_POW_53: f64 = 1.0 / (1u64 << 53) as f64;

pub type Seed = u64;

/// Source of the random variates the dynamics consume.
///
/// Implementors must advance [`NoiseSource::draws`] by exactly one per call,
/// including degenerate parameters such as `sd == 0`.
pub trait NoiseSource {
    fn reseed(&mut self, seed: Seed);

    /// Number of variates drawn since the last reseed.
    fn draws(&self) -> u64;

    fn gauss(&mut self, mean: f64, sd: f64) -> Result<f64>;

    /// Exponential variate parameterised by its mean (not its rate).
    fn exponential(&mut self, mean: f64) -> Result<f64>;

    fn bernoulli(&mut self, prob: f64) -> Result<u8>;

    /// Draw in `[lo, hi)`; `lo == hi` yields `lo`.
    fn uniform(&mut self, lo: f64, hi: f64) -> Result<f64>;
}

fn check_sd(sd: f64) -> Result<()> {
    if sd >= 0.0 && sd.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "gaussian sd must be >= 0, got {sd}"
        )))
    }
}

fn check_mean(mean: f64) -> Result<()> {
    if mean > 0.0 && mean.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "exponential mean must be > 0, got {mean}"
        )))
    }
}

fn check_prob(prob: f64) -> Result<()> {
    if (0.0..=1.0).contains(&prob) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "bernoulli probability must lie in [0, 1], got {prob}"
        )))
    }
}

fn check_interval(lo: f64, hi: f64) -> Result<()> {
    if lo <= hi {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "uniform interval is empty: [{lo}, {hi})"
        )))
    }
}

/// Portable, position-addressable state of a [`RandomStream`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StreamState {
    pub seed: Seed,
    pub draws: u64,
}

/// Deterministic stream backed by ChaCha8.
#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: Seed,
    rng: ChaCha8Rng,
    draws: u64,
}

impl RandomStream {
    pub fn new(seed: Seed) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
            draws: 0,
        }
    }

    /// Rebuilds a stream positioned exactly after `state.draws` variates.
    pub fn from_state(state: StreamState) -> Self {
        let mut stream = Self::new(state.seed);
        // one u64 is two 32-bit keystream words
        stream.rng.set_word_pos(u128::from(state.draws) * 2);
        stream.draws = state.draws;
        stream
    }

    pub fn state(&self) -> StreamState {
        StreamState {
            seed: self.seed,
            draws: self.draws,
        }
    }

    pub fn seed(&self) -> Seed {
        self.seed
    }

    fn next_word(&mut self) -> u64 {
        self.draws += 1;
        self.rng.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 bits of resolution.
    fn unit(&mut self) -> f64 {
        (self.next_word() >> 11) as f64 * INV_2_POW_53
    }

    /// Uniform on the open interval `(0, 1)`.
    fn unit_open(&mut self) -> f64 {
        ((self.next_word() >> 11) as f64 + 0.5) * INV_2_POW_53
    }
}

impl NoiseSource for RandomStream {
    fn reseed(&mut self, seed: Seed) {
        *self = Self::new(seed);
    }

    fn draws(&self) -> u64 {
        self.draws
    }

    fn gauss(&mut self, mean: f64, sd: f64) -> Result<f64> {
        check_sd(sd)?;
        let u = self.unit_open();
        if sd == 0.0 {
            return Ok(mean);
        }
        let z = -std::f64::consts::SQRT_2 * erfc_inv(2.0 * u);
        Ok(mean + sd * z)
    }

    fn exponential(&mut self, mean: f64) -> Result<f64> {
        check_mean(mean)?;
        let u = self.unit();
        Ok(-mean * (1.0 - u).ln())
    }

    fn bernoulli(&mut self, prob: f64) -> Result<u8> {
        check_prob(prob)?;
        Ok(u8::from(self.unit() < prob))
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> Result<f64> {
        check_interval(lo, hi)?;
        let u = self.unit();
        if lo == hi {
            return Ok(lo);
        }
        let x = lo + (hi - lo) * u;
        // rounding can land exactly on `hi` for wide intervals
        Ok(if x < hi { x } else { lo.max(hi.next_down()) })
    }
}

/// Noise source whose every draw sits at the noise-free value: gaussians return
/// their mean, exponentials `0`, bernoullis `0`, uniforms `lo`.
///
/// Parameter validation and draw counting match [`RandomStream`].
#[derive(Debug, Clone, Default)]
pub struct ZeroNoise {
    draws: u64,
}

impl ZeroNoise {
    pub fn new() -> Self {
        Self::default()
    }
}

impl NoiseSource for ZeroNoise {
    fn reseed(&mut self, _seed: Seed) {
        self.draws = 0;
    }

    fn draws(&self) -> u64 {
        self.draws
    }

    fn gauss(&mut self, mean: f64, sd: f64) -> Result<f64> {
        check_sd(sd)?;
        self.draws += 1;
        Ok(mean)
    }

    fn exponential(&mut self, mean: f64) -> Result<f64> {
        check_mean(mean)?;
        self.draws += 1;
        Ok(0.0)
    }

    fn bernoulli(&mut self, prob: f64) -> Result<u8> {
        check_prob(prob)?;
        self.draws += 1;
        Ok(0)
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> Result<f64> {
        check_interval(lo, hi)?;
        self.draws += 1;
        Ok(lo)
    }
}

/// SplitMix64 finaliser.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Derives an independent child seed: `splitmix64(splitmix64(master) ^ salt)`.
///
/// Children depend only on `(master, salt)`, so adding or removing siblings
/// never perturbs an existing child.
pub fn derive_seed(master: Seed, salt: u64) -> Seed {
    splitmix64(splitmix64(master) ^ salt)
}
