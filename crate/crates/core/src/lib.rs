//! Industrial Benchmark: a partially observable, stochastic benchmark
//! environment with three coupled sub-dynamics (operational cost,
//! mis-calibration, fatigue), plus dataset generation and policy evaluation.
//!
//! All math is generic over [`Scalar`] (`f32` or `f64`); the aliases below fix
//! the common choices.
//!
//! ```
//! use industrial_benchmark::{Action, EnvironmentConfig, IndustrialBenchmark};
//!
//! let mut env = IndustrialBenchmark::new();
//! let obs = env.reset(&EnvironmentConfig::new(50.0, 1)).unwrap();
//! assert_eq!(obs.value("Velocity").unwrap(), 50.0);
//! let reward = env.step(Action::new(0.5, -0.5, 0.0).unwrap()).unwrap();
//! assert!(reward < 0.0);
//! ```

pub mod data_vector;
pub mod dynamics;
pub mod environment;
pub mod error;
pub mod harness;
pub mod scalar;
pub mod stochastics;

pub use data_vector::DataVector;
pub use dynamics::{Action, MisCalibrationMode, SetPoint, Steerings};
pub use environment::{names, ConstantSetPoint, Environment, EnvironmentConfig, ExternalDriver};
pub use error::{Error, Result};
pub use harness::{
    evaluate_policy, generate_dataset, mrabd, rollout, BuiltinPolicy, Dataset, EvalStats, Format,
    Policy, RunSpec,
};
pub use scalar::Scalar;
pub use stochastics::{NoiseSource, RandomStream, Seed, StreamState, ZeroNoise};

/// Double-precision environment on the reference random stream.
pub type IndustrialBenchmark = Environment<f64, RandomStream>;
/// Single-precision environment on the reference random stream.
pub type IndustrialBenchmarkF32 = Environment<f32, RandomStream>;
pub type Observation = DataVector<f64>;
pub type Trajectory = harness::Trajectory<f64>;
pub type TransitionTuple = harness::TransitionTuple<f64>;
