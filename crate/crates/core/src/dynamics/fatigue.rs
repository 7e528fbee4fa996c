use crate::error::Result;
use crate::scalar::Scalar;
use crate::stochastics::NoiseSource;

use super::SetPoint;

/// Mean of the two exponential fatigue noise draws.
pub const FATIGUE_EXP_MEAN: f64 = 0.05;
/// Effective velocity/gain at or below which a hidden variable resets.
pub const RESET_THRESHOLD: f64 = 0.05;
/// Hidden level from which escalation (and the gaussian amplification) kicks in.
pub const AMPLIFICATION_THRESHOLD: f64 = 1.2;
pub const HIDDEN_CAP: f64 = 5.0;

const AMPLIFICATION_MEAN: f64 = 2.4;
const AMPLIFICATION_SD: f64 = 0.4;

/// `T_v = (g + p + 2) / (v - p + 101)`.
pub fn transform_v<S: Scalar>(velocity: S, gain: S, p: SetPoint<S>) -> S {
    let p = p.value();
    (gain + p + S::lit(2.0)) / (velocity - p + S::lit(101.0))
}

/// `T_g = 1 / (g + p + 1)`.
pub fn transform_g<S: Scalar>(gain: S, p: SetPoint<S>) -> S {
    S::one() / (gain + p.value() + S::one())
}

/// Set-point normalised velocity in `[0, 1]`: 0 at `(v, g) = (0, 100)`, 1 at `(100, 0)`.
pub fn effective_velocity<S: Scalar>(velocity: S, gain: S, p: SetPoint<S>) -> S {
    let hundred = S::lit(100.0);
    let lower = transform_v(S::zero(), hundred, p);
    let upper = transform_v(hundred, S::zero(), p);
    ((transform_v(velocity, gain, p) - lower) / (upper - lower)).clamp_to(S::zero(), S::one())
}

/// Set-point normalised gain in `[0, 1]`: 1 at `g = 0`, 0 at `g = 100`.
pub fn effective_gain<S: Scalar>(gain: S, p: SetPoint<S>) -> S {
    let lower = transform_g(S::lit(100.0), p);
    let upper = transform_g(S::zero(), p);
    ((transform_g(gain, p) - lower) / (upper - lower)).clamp_to(S::zero(), S::one())
}

/// The six per-step fatigue draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseDraws<S> {
    pub exp_v: S,
    pub exp_g: S,
    pub uniform_v: S,
    pub uniform_g: S,
    pub gate_v: u8,
    pub gate_g: u8,
}

/// Draws, in order: exponential (v), exponential (g), uniform (v), uniform (g),
/// bernoulli(`v_e`), bernoulli(`g_e`).
pub fn draw_fatigue_noise<S: Scalar>(
    effective_velocity: S,
    effective_gain: S,
    rng: &mut impl NoiseSource,
) -> Result<NoiseDraws<S>> {
    let exp_v = rng.exponential(FATIGUE_EXP_MEAN)?;
    let exp_g = rng.exponential(FATIGUE_EXP_MEAN)?;
    let uniform_v = rng.uniform(0.0, 1.0)?;
    let uniform_g = rng.uniform(0.0, 1.0)?;
    let gate_v = rng.bernoulli(effective_velocity.to_f64_lossless())?;
    let gate_g = rng.bernoulli(effective_gain.to_f64_lossless())?;
    Ok(NoiseDraws {
        exp_v: S::lit(exp_v),
        exp_g: S::lit(exp_g),
        uniform_v: S::lit(uniform_v),
        uniform_g: S::lit(uniform_g),
        gate_v,
        gate_g,
    })
}

/// Combines the draws into `(η_v, η_g)`: `η = e + (1 - e) u b x`.
pub fn combine_noise<S: Scalar>(
    draws: &NoiseDraws<S>,
    effective_velocity: S,
    effective_gain: S,
) -> (S, S) {
    fn one<S: Scalar>(e: S, u: S, b: u8, x: S) -> S {
        e + (S::one() - e) * u * S::lit(f64::from(b)) * x
    }
    (
        one(
            draws.exp_v,
            draws.uniform_v,
            draws.gate_v,
            effective_velocity,
        ),
        one(draws.exp_g, draws.uniform_g, draws.gate_g, effective_gain),
    )
}

/// Next value of a hidden fatigue variable from its previous value, the matching
/// effective steering `e` and noise component `eta`.
pub fn update_hidden<S: Scalar>(previous: S, effective: S, eta: S) -> S {
    if effective <= S::lit(RESET_THRESHOLD) {
        effective
    } else if previous >= S::lit(AMPLIFICATION_THRESHOLD) {
        (S::lit(1.1) * previous).min(S::lit(HIDDEN_CAP))
    } else {
        S::lit(0.9) * previous + eta / S::lit(3.0)
    }
}

/// Amplification `α`. Draws one gaussian only when `max(h_v, h_g) >= 1.2`.
pub fn amplification<S: Scalar>(
    hidden_v: S,
    hidden_g: S,
    eta_v: S,
    eta_g: S,
    rng: &mut impl NoiseSource,
) -> Result<S> {
    if hidden_v.max(hidden_g) >= S::lit(AMPLIFICATION_THRESHOLD) {
        let z = rng.gauss(AMPLIFICATION_MEAN, AMPLIFICATION_SD)?;
        Ok(S::lit(1.0 / (1.0 + (-z).exp())))
    } else {
        Ok(eta_v.max(eta_g))
    }
}

/// `f_b = max(0, 30000 / (5v + 100) - 0.01 g²)`.
pub fn basic_fatigue<S: Scalar>(velocity: S, gain: S) -> S {
    let raw =
        S::lit(30000.0) / (S::lit(5.0) * velocity + S::lit(100.0)) - S::lit(0.01) * gain * gain;
    raw.max(S::zero())
}

/// `f = f_b (1 + 2α)`.
pub fn fatigue<S: Scalar>(basic: S, alpha: S) -> S {
    basic * (S::one() + S::lit(2.0) * alpha)
}

/// Fatigue sub-dynamics state after a step.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FatigueState<S> {
    pub hidden_v: S,
    pub hidden_g: S,
    pub basic: S,
    pub fatigue: S,
    pub effective_velocity: S,
    pub effective_gain: S,
    pub amplification: S,
}

/// Full fatigue transition: effective steerings, six draws, hidden-variable
/// update, amplification (0 or 1 further draw) and fatigue.
pub fn advance_fatigue<S: Scalar>(
    hidden_v: S,
    hidden_g: S,
    velocity: S,
    gain: S,
    p: SetPoint<S>,
    rng: &mut impl NoiseSource,
) -> Result<FatigueState<S>> {
    fatigue_transition(hidden_v, hidden_g, velocity, gain, p, true, rng)
}

/// Like [`advance_fatigue`] but leaves the hidden variables untouched. Used to
/// produce a complete observation at reset.
pub fn evaluate_fatigue<S: Scalar>(
    hidden_v: S,
    hidden_g: S,
    velocity: S,
    gain: S,
    p: SetPoint<S>,
    rng: &mut impl NoiseSource,
) -> Result<FatigueState<S>> {
    fatigue_transition(hidden_v, hidden_g, velocity, gain, p, false, rng)
}

fn fatigue_transition<S: Scalar>(
    hidden_v: S,
    hidden_g: S,
    velocity: S,
    gain: S,
    p: SetPoint<S>,
    update_latents: bool,
    rng: &mut impl NoiseSource,
) -> Result<FatigueState<S>> {
    let eff_v = effective_velocity(velocity, gain, p);
    let eff_g = effective_gain(gain, p);
    let draws = draw_fatigue_noise(eff_v, eff_g, rng)?;
    let (eta_v, eta_g) = combine_noise(&draws, eff_v, eff_g);
    let (hidden_v, hidden_g) = if update_latents {
        (
            update_hidden(hidden_v, eff_v, eta_v),
            update_hidden(hidden_g, eff_g, eta_g),
        )
    } else {
        (hidden_v, hidden_g)
    };
    let alpha = amplification(hidden_v, hidden_g, eta_v, eta_g, rng)?;
    let basic = basic_fatigue(velocity, gain);
    Ok(FatigueState {
        hidden_v,
        hidden_g,
        basic,
        fatigue: fatigue(basic, alpha),
        effective_velocity: eff_v,
        effective_gain: eff_g,
        amplification: alpha,
    })
}
