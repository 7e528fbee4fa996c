use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::stochastics::NoiseSource;

use super::SetPoint;

/// Weight of the mis-calibration output in the modified cost.
pub const MISCALIBRATION_WEIGHT: f64 = 25.0;

/// `s_e = clamp(s/20 - p/50 - 1.5, -1.5, 1.5)`.
pub fn effective_shift<S: Scalar>(shift: S, p: SetPoint<S>) -> S {
    let bound = S::lit(1.5);
    (shift / S::lit(20.0) - p.value() / S::lit(50.0) - bound).clamp_to(-bound, bound)
}

/// Latent variables and current output of the mis-calibration sub-dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MisCalibrationState<S> {
    /// Domain latent.
    pub m1: S,
    /// System-response latent.
    pub m2: S,
    /// Phi-index latent.
    pub m3: S,
    /// Output of the most recent step.
    pub m: S,
}

impl<S: Scalar> MisCalibrationState<S> {
    pub fn zero() -> Self {
        Self {
            m1: S::zero(),
            m2: S::zero(),
            m3: S::zero(),
            m: S::zero(),
        }
    }

    pub fn latents(&self) -> [S; 3] {
        [self.m1, self.m2, self.m3]
    }
}

/// Pluggable mis-calibration transition `(latents', m) = F(latents, s_e)`.
///
/// No functional form ships with this crate; implementations are supplied by
/// the caller and must be deterministic.
pub trait MisCalibrationDynamics<S>: Send + Sync {
    fn name(&self) -> &str;

    fn initial_latents(&self) -> [S; 3];

    /// Returns the next latents and the mis-calibration output.
    fn step(&self, latents: [S; 3], effective_shift: S) -> ([S; 3], S);
}

/// Which mis-calibration sub-dynamics is active.
#[derive(Clone, Default)]
pub enum MisCalibrationMode<S> {
    /// `m = 0` and all latents pinned at zero.
    #[default]
    Disabled,
    Custom(Arc<dyn MisCalibrationDynamics<S>>),
}

impl<S> MisCalibrationMode<S> {
    pub fn label(&self) -> String {
        match self {
            MisCalibrationMode::Disabled => "disabled".to_owned(),
            MisCalibrationMode::Custom(d) => format!("custom:{}", d.name()),
        }
    }

    pub fn is_disabled(&self) -> bool {
        matches!(self, MisCalibrationMode::Disabled)
    }
}

impl<S: Scalar> MisCalibrationMode<S> {
    pub fn initial_state(&self) -> MisCalibrationState<S> {
        match self {
            MisCalibrationMode::Disabled => MisCalibrationState::zero(),
            MisCalibrationMode::Custom(d) => {
                let [m1, m2, m3] = d.initial_latents();
                MisCalibrationState {
                    m1,
                    m2,
                    m3,
                    m: S::zero(),
                }
            }
        }
    }
}

impl<S> fmt::Debug for MisCalibrationMode<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Advances the mis-calibration sub-dynamics by one step.
pub fn miscalibration_step<S: Scalar>(
    mode: &MisCalibrationMode<S>,
    state: MisCalibrationState<S>,
    effective_shift: S,
) -> Result<(MisCalibrationState<S>, S)> {
    match mode {
        MisCalibrationMode::Disabled => Ok((MisCalibrationState::zero(), S::zero())),
        MisCalibrationMode::Custom(dynamics) => {
            let ([m1, m2, m3], m) = dynamics.step(state.latents(), effective_shift);
            if !m.is_finite() {
                return Err(Error::DynamicsFault(format!(
                    "mis-calibration `{}` returned non-finite output {m}",
                    dynamics.name()
                )));
            }
            if ![m1, m2, m3].iter().all(|x| x.is_finite()) {
                return Err(Error::DynamicsFault(format!(
                    "mis-calibration `{}` returned non-finite latents",
                    dynamics.name()
                )));
            }
            Ok((MisCalibrationState { m1, m2, m3, m }, m))
        }
    }
}

/// `ĉ = o_c + 25 m`.
pub fn modified_cost<S: Scalar>(convolved_cost: S, miscalibration: S) -> S {
    convolved_cost + S::lit(MISCALIBRATION_WEIGHT) * miscalibration
}

/// Observed consumption: `ĉ` plus one gaussian draw with sd `1 + 0.02 ĉ`.
pub fn observe_consumption<S: Scalar>(noise_free: S, rng: &mut impl NoiseSource) -> Result<S> {
    let c_hat = noise_free.to_f64_lossless();
    let sd = 1.0 + 0.02 * c_hat;
    let noise = rng.gauss(0.0, sd)?;
    Ok(noise_free + S::lit(noise))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stochastics::{RandomStream, ZeroNoise};

    fn sp(p: f64) -> SetPoint<f64> {
        SetPoint::new(p).unwrap()
    }

    struct Passthrough;

    impl MisCalibrationDynamics<f64> for Passthrough {
        fn name(&self) -> &str {
            "passthrough"
        }
        fn initial_latents(&self) -> [f64; 3] {
            [1.0, 2.0, 3.0]
        }
        fn step(&self, latents: [f64; 3], s_e: f64) -> ([f64; 3], f64) {
            (latents, s_e)
        }
    }

    struct Broken;

    impl MisCalibrationDynamics<f64> for Broken {
        fn name(&self) -> &str {
            "broken"
        }
        fn initial_latents(&self) -> [f64; 3] {
            [0.0; 3]
        }
        fn step(&self, latents: [f64; 3], _: f64) -> ([f64; 3], f64) {
            (latents, f64::NAN)
        }
    }

    #[test]
    fn effective_shift_examples() {
        assert_eq!(effective_shift(100.0, sp(0.0)), 1.5);
        assert_eq!(effective_shift(0.0, sp(100.0)), -1.5);
        assert_eq!(effective_shift(50.0, sp(50.0)), 0.0);
    }

    #[test]
    fn disabled_mode_is_inert() {
        let mode = MisCalibrationMode::<f64>::Disabled;
        for s_e in [-1.5, -0.3, 0.0, 1.2, 1.5] {
            let (state, m) = miscalibration_step(&mode, mode.initial_state(), s_e).unwrap();
            assert_eq!(state, MisCalibrationState::zero());
            assert_eq!(m, 0.0);
        }
    }

    #[test]
    fn custom_mode_delegates() {
        let mode = MisCalibrationMode::Custom(Arc::new(Passthrough));
        let start = mode.initial_state();
        assert_eq!(start.latents(), [1.0, 2.0, 3.0]);
        let (state, m) = miscalibration_step(&mode, start, 0.7).unwrap();
        assert_eq!(state.latents(), [1.0, 2.0, 3.0]);
        assert_eq!(m, 0.7);
        assert_eq!(state.m, 0.7);
        assert_eq!(mode.label(), "custom:passthrough");
    }

    #[test]
    fn custom_non_finite_output_is_a_fault() {
        let mode = MisCalibrationMode::Custom(Arc::new(Broken));
        let err = miscalibration_step(&mode, mode.initial_state(), 0.0).unwrap_err();
        assert!(matches!(err, Error::DynamicsFault(_)));
    }

    #[test]
    fn modified_cost_examples() {
        assert_eq!(modified_cost(100.0, 0.0), 100.0);
        assert_eq!(modified_cost(100.0, 1.0), 125.0);
        assert_eq!(modified_cost(0.0, -2.0), -50.0);
    }

    #[test]
    fn zero_noise_observation_is_exact() {
        let mut rng = ZeroNoise::new();
        assert_eq!(observe_consumption(100.0, &mut rng).unwrap(), 100.0);
        assert_eq!(rng.draws(), 1);
    }

    fn observation_sd(c_hat: f64, seed: u64) -> f64 {
        let mut rng = RandomStream::new(seed);
        let n = 100_000;
        let xs: Vec<f64> = (0..n)
            .map(|_| observe_consumption(c_hat, &mut rng).unwrap())
            .collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0)).sqrt()
    }

    #[test]
    fn observation_noise_is_heteroskedastic() {
        let sd = observation_sd(100.0, 21);
        assert!((sd - 3.0).abs() / 3.0 < 0.02, "sd {sd}");
        let sd = observation_sd(0.0, 22);
        assert!((sd - 1.0).abs() < 0.02, "sd {sd}");
    }
}
