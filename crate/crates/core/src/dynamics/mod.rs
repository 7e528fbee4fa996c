//! Transition mathematics of the three sub-dynamics.
//!
//! Everything here is a pure function of its arguments; randomness enters only
//! through an explicit [`NoiseSource`](crate::stochastics::NoiseSource).

mod cost;
mod fatigue;
mod miscalibration;

pub use cost::{convolve_costs, operational_cost, CostHistory, CONVOLUTION_KERNEL, HISTORY_LEN};
pub use fatigue::{
    advance_fatigue, amplification, basic_fatigue, combine_noise, draw_fatigue_noise,
    effective_gain, effective_velocity, evaluate_fatigue, fatigue, transform_g, transform_v,
    update_hidden, FatigueState, NoiseDraws, AMPLIFICATION_THRESHOLD, FATIGUE_EXP_MEAN, HIDDEN_CAP,
    RESET_THRESHOLD,
};
pub use miscalibration::{
    effective_shift, miscalibration_step, modified_cost, observe_consumption,
    MisCalibrationDynamics, MisCalibrationMode, MisCalibrationState, MISCALIBRATION_WEIGHT,
};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const STEERING_MIN: f64 = 0.0;
pub const STEERING_MAX: f64 = 100.0;

/// Step size applied to the shift component of an action: `20 sin(15°) / 0.9`.
pub fn shift_step_size<S: Scalar>() -> S {
    S::lit(20.0) * (S::PI() / S::lit(12.0)).sin() / S::lit(0.9)
}

fn check_steering<S: Scalar>(name: &'static str, value: S) -> Result<S> {
    let x = value.to_f64_lossless();
    if (STEERING_MIN..=STEERING_MAX).contains(&x) {
        Ok(value)
    } else {
        Err(Error::out_of_range(name, x, STEERING_MIN, STEERING_MAX))
    }
}

/// The three controllable variables, each in `[0, 100]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Steerings<S> {
    velocity: S,
    gain: S,
    shift: S,
}

impl<S: Scalar> Steerings<S> {
    pub fn new(velocity: S, gain: S, shift: S) -> Result<Self> {
        Ok(Self {
            velocity: check_steering("velocity", velocity)?,
            gain: check_steering("gain", gain)?,
            shift: check_steering("shift", shift)?,
        })
    }

    pub fn velocity(&self) -> S {
        self.velocity
    }

    pub fn gain(&self) -> S {
        self.gain
    }

    pub fn shift(&self) -> S {
        self.shift
    }
}

impl<S: Scalar> Default for Steerings<S> {
    fn default() -> Self {
        let fifty = S::lit(50.0);
        Self {
            velocity: fifty,
            gain: fifty,
            shift: fifty,
        }
    }
}

/// Proposed changes `(Δv, Δg, Δs)`, each in `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Action<S> {
    delta_velocity: S,
    delta_gain: S,
    delta_shift: S,
}

impl<S: Scalar> Action<S> {
    pub fn new(delta_velocity: S, delta_gain: S, delta_shift: S) -> Result<Self> {
        fn check<S: Scalar>(name: &'static str, x: S) -> Result<S> {
            let v = x.to_f64_lossless();
            if (-1.0..=1.0).contains(&v) {
                Ok(x)
            } else {
                Err(Error::out_of_range(name, v, -1.0, 1.0))
            }
        }
        Ok(Self {
            delta_velocity: check("delta_velocity", delta_velocity)?,
            delta_gain: check("delta_gain", delta_gain)?,
            delta_shift: check("delta_shift", delta_shift)?,
        })
    }

    /// Clamps each component into `[-1, 1]`. Returns the action and whether any
    /// component had to be moved. NaN components become `0`.
    pub fn clamped(raw: [S; 3]) -> (Self, bool) {
        let mut changed = false;
        let mut fix = |x: S| {
            let y = if x.is_nan() {
                S::zero()
            } else {
                x.clamp_to(-S::one(), S::one())
            };
            changed |= y != x;
            y
        };
        let action = Self {
            delta_velocity: fix(raw[0]),
            delta_gain: fix(raw[1]),
            delta_shift: fix(raw[2]),
        };
        (action, changed)
    }

    pub fn zero() -> Self {
        Self {
            delta_velocity: S::zero(),
            delta_gain: S::zero(),
            delta_shift: S::zero(),
        }
    }

    pub fn delta_velocity(&self) -> S {
        self.delta_velocity
    }

    pub fn delta_gain(&self) -> S {
        self.delta_gain
    }

    pub fn delta_shift(&self) -> S {
        self.delta_shift
    }

    pub fn to_array(&self) -> [S; 3] {
        [self.delta_velocity, self.delta_gain, self.delta_shift]
    }
}

/// Exogenous set point `p` in `[0, 100]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SetPoint<S>(S);

impl<S: Scalar> SetPoint<S> {
    pub fn new(p: S) -> Result<Self> {
        check_steering("set_point", p).map(Self)
    }

    pub fn value(self) -> S {
        self.0
    }
}

/// Applies an action to the steerings, clamping each result into `[0, 100]`.
pub fn apply_action<S: Scalar>(steerings: Steerings<S>, action: Action<S>) -> Steerings<S> {
    let lo = S::lit(STEERING_MIN);
    let hi = S::lit(STEERING_MAX);
    Steerings {
        velocity: (steerings.velocity + action.delta_velocity).clamp_to(lo, hi),
        gain: (steerings.gain + S::lit(10.0) * action.delta_gain).clamp_to(lo, hi),
        shift: (steerings.shift + shift_step_size::<S>() * action.delta_shift).clamp_to(lo, hi),
    }
}

/// Reward of a transition, from the successor's consumption and fatigue.
pub fn reward<S: Scalar>(consumption: S, fatigue: S) -> S {
    -(consumption + fatigue)
}
