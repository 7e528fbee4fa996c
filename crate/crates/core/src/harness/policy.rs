use std::fmt;
use std::str::FromStr;

use crate::data_vector::DataVector;
use crate::dynamics::{shift_step_size, Action};
use crate::environment::names;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::stochastics::{NoiseSource, RandomStream};

/// Maps observations to raw action proposals. Components outside `[-1, 1]`
/// are clamped by the harness and counted.
pub trait Policy<S>: Send {
    fn act(&mut self, observation: &DataVector<S>, rng: &mut RandomStream) -> Result<[S; 3]>;
}

/// Three independent uniform draws on `[-1, 1]`.
pub fn max_entropy_action<S: Scalar>(rng: &mut impl NoiseSource) -> Result<Action<S>> {
    let mut draw = || rng.uniform(-1.0, 1.0).map(S::lit);
    Action::new(draw()?, draw()?, draw()?)
}

/// Policies selectable by name: `max-entropy`, `constant:dv,dg,ds`,
/// `hold[:v,g,s]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BuiltinPolicy<S> {
    MaxEntropy,
    /// Emits the same action every step.
    Constant([S; 3]),
    /// Steers towards fixed target steerings as fast as the action bounds allow.
    Hold([S; 3]),
}

impl<S: Scalar> Policy<S> for BuiltinPolicy<S> {
    fn act(&mut self, observation: &DataVector<S>, rng: &mut RandomStream) -> Result<[S; 3]> {
        match *self {
            BuiltinPolicy::MaxEntropy => max_entropy_action(rng).map(|a| a.to_array()),
            BuiltinPolicy::Constant(action) => Ok(action),
            BuiltinPolicy::Hold([v, g, s]) => {
                let one = S::one();
                let toward = |target: S, current: S, step: S| {
                    ((target - current) / step).clamp_to(-one, one)
                };
                Ok([
                    toward(v, observation.value(names::VELOCITY)?, one),
                    toward(g, observation.value(names::GAIN)?, S::lit(10.0)),
                    toward(s, observation.value(names::SHIFT)?, shift_step_size()),
                ])
            }
        }
    }
}

impl<S: Scalar> fmt::Display for BuiltinPolicy<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinPolicy::MaxEntropy => f.write_str("max-entropy"),
            BuiltinPolicy::Constant([a, b, c]) => write!(f, "constant:{a},{b},{c}"),
            BuiltinPolicy::Hold([a, b, c]) => write!(f, "hold:{a},{b},{c}"),
        }
    }
}

fn parse_triple<S: Scalar>(params: &str) -> Result<[S; 3]> {
    let parts: Vec<&str> = params.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::InvalidParameter(format!(
            "expected three comma-separated values, got `{params}`"
        )));
    }
    let mut out = [S::zero(); 3];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part
            .parse::<S>()
            .map_err(|_| Error::InvalidParameter(format!("`{part}` is not a number")))?;
        if !slot.is_finite() {
            return Err(Error::InvalidParameter(format!("`{part}` is not finite")));
        }
    }
    Ok(out)
}

impl<S: Scalar> FromStr for BuiltinPolicy<S> {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let (name, params) = match spec.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p)),
            None => (spec.trim(), None),
        };
        match (name, params) {
            ("max-entropy", None) => Ok(BuiltinPolicy::MaxEntropy),
            ("constant", Some(p)) => Ok(BuiltinPolicy::Constant(parse_triple(p)?)),
            ("constant", None) => Ok(BuiltinPolicy::Constant([S::zero(); 3])),
            ("hold", Some(p)) => {
                let target: [S; 3] = parse_triple(p)?;
                for x in target {
                    crate::dynamics::SetPoint::new(x)?;
                }
                Ok(BuiltinPolicy::Hold(target))
            }
            ("hold", None) => Ok(BuiltinPolicy::Hold([S::lit(50.0); 3])),
            _ => Err(Error::InvalidParameter(format!(
                "unknown policy `{spec}` (expected max-entropy, constant:dv,dg,ds or hold[:v,g,s])"
            ))),
        }
    }
}
