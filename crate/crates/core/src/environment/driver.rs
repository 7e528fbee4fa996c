use crate::data_vector::DataVector;
use crate::error::Result;
use crate::scalar::Scalar;
use crate::stochastics::Seed;

use super::names;

/// Component that rewrites exogenous state dimensions at the start of every step.
///
/// `filter` receives the minimal markovian state and edits it in place. Only
/// dimensions listed in [`names::EXOGENOUS`] may be changed; the environment
/// rejects any other write.
pub trait ExternalDriver<S>: Send {
    fn filter(&mut self, state: &mut DataVector<S>) -> Result<()>;

    /// Current driver configuration.
    fn state(&self) -> DataVector<S>;

    fn set_configuration(&mut self, config: &DataVector<S>) -> Result<()>;

    fn set_seed(&mut self, seed: Seed);
}

/// Holds the set point at a fixed value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantSetPoint<S> {
    value: S,
}

impl<S: Scalar> ConstantSetPoint<S> {
    pub fn new(value: S) -> Self {
        Self { value }
    }
}

impl<S: Scalar> ExternalDriver<S> for ConstantSetPoint<S> {
    fn filter(&mut self, state: &mut DataVector<S>) -> Result<()> {
        state.set_value(names::SET_POINT, self.value)
    }

    fn state(&self) -> DataVector<S> {
        DataVector::from_pairs([(names::SET_POINT, self.value)]).expect("single key")
    }

    fn set_configuration(&mut self, config: &DataVector<S>) -> Result<()> {
        self.value = config.value(names::SET_POINT)?;
        Ok(())
    }

    fn set_seed(&mut self, _seed: Seed) {}
}
