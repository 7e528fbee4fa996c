use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::SetPoint;

pub const HISTORY_LEN: usize = 10;

/// Delay-and-smear kernel, indexed by lag: entry `i` weights `o(t - i)`.
pub const CONVOLUTION_KERNEL: [f64; HISTORY_LEN] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    1.0 / 9.0,
    2.0 / 9.0,
    3.0 / 9.0,
    2.0 / 9.0,
    1.0 / 9.0,
];

/// `o = exp((2p + 4v + 2.5g) / 100)`.
pub fn operational_cost<S: Scalar>(p: SetPoint<S>, velocity: S, gain: S) -> S {
    let exponent =
        (S::lit(2.0) * p.value() + S::lit(4.0) * velocity + S::lit(2.5) * gain) / S::lit(100.0);
    exponent.exp()
}

/// Convolved operational cost over raw taps `o(t), o(t-1), …, o(t-9)`.
pub fn convolve_costs<S: Scalar>(taps: &[S; HISTORY_LEN]) -> S {
    // o(t-5)..o(t-9) weighted 1,2,3,2,1 ninths; summing the integer-weighted
    // taps first keeps a constant history an exact fixed point
    let weighted =
        taps[5] + S::lit(2.0) * taps[6] + S::lit(3.0) * taps[7] + S::lit(2.0) * taps[8] + taps[9];
    weighted / S::lit(9.0)
}

/// Most recent ten operational costs; index `i` holds `o(t - i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostHistory<S> {
    taps: [S; HISTORY_LEN],
}

impl<S: Scalar> CostHistory<S> {
    pub fn new(taps: [S; HISTORY_LEN]) -> Result<Self> {
        for &o in &taps {
            if !(o > S::zero() && o.is_finite()) {
                return Err(Error::DynamicsFault(format!(
                    "operational cost history entries must be positive and finite, got {o}"
                )));
            }
        }
        Ok(Self { taps })
    }

    /// History in steady state: every tap equals `o`.
    pub fn filled(o: S) -> Result<Self> {
        Self::new([o; HISTORY_LEN])
    }

    /// Shifts every entry one lag back and stores `o` as `o(t)`.
    pub fn push(&mut self, o: S) {
        self.taps.rotate_right(1);
        self.taps[0] = o;
    }

    pub fn current(&self) -> S {
        self.taps[0]
    }

    /// `o(t - lag)`.
    pub fn lag(&self, lag: usize) -> S {
        self.taps[lag]
    }

    pub fn taps(&self) -> &[S; HISTORY_LEN] {
        &self.taps
    }

    pub fn convolved(&self) -> S {
        convolve_costs(&self.taps)
    }
}
