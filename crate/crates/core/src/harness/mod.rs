//! Data generation and policy evaluation on fresh benchmark instances.
//!
//! Every trajectory is identified by `(master seed, episode, set point)` and
//! seeded from those alone through [`trajectory_seed`]; the policy draws from
//! its own stream seeded with [`POLICY_SEED_SALT`]. Trajectories are thus
//! independent of each other and of scheduling, and run in parallel.

mod dataset;
mod metrics;
mod policy;
mod stats;

pub use dataset::{
    read_dataset, read_metadata, write_dataset, write_trace, Format, SCHEMA_VERSION,
};
pub use metrics::{mrabd, MRABD_DEFAULT_THRESHOLD};
pub use policy::{max_entropy_action, BuiltinPolicy, Policy};
pub use stats::{EvalStats, Moments, Spread};

use rayon::prelude::*;

use crate::data_vector::DataVector;
use crate::dynamics::{Action, MisCalibrationMode, SetPoint};
use crate::environment::{names, Environment, EnvironmentConfig};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::stochastics::{derive_seed, RandomStream, Seed};

/// Set points of the standard data-generation setting.
pub const DEFAULT_SET_POINTS: [f64; 10] =
    [10.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 90.0, 100.0];
pub const DEFAULT_STEPS: usize = 1000;
/// Salt separating a trajectory's policy stream from its environment stream.
pub const POLICY_SEED_SALT: u64 = 0x9011_C1E5;

/// Published reference for the max-entropy policy in the standard setting.
pub const REFERENCE_MEAN_REWARD: f64 = -290.8;
pub const REFERENCE_MEAN_UNCERTAINTY: f64 = 0.6;
pub const REFERENCE_SD: f64 = 20.0;

/// Environment seed of one trajectory:
/// `derive_seed(derive_seed(master, episode), set_point as f64 bits)`.
pub fn trajectory_seed(master: Seed, episode: u64, set_point: f64) -> Seed {
    derive_seed(derive_seed(master, episode), set_point.to_bits())
}

/// One `(O, a, O', r)` tuple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionTuple<S> {
    pub observation: [S; 6],
    pub action: [S; 3],
    pub next_observation: [S; 6],
    pub reward: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<S> {
    pub set_point: S,
    pub episode: u64,
    /// Environment seed of this trajectory.
    pub seed: Seed,
    pub tuples: Vec<TransitionTuple<S>>,
    /// Extended state after each step, when requested.
    pub extended: Option<Vec<DataVector<S>>>,
    pub clamped_actions: u64,
}

/// Trajectories plus the settings that reproduce them.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<S> {
    pub seed: Seed,
    pub steps: usize,
    pub miscalibration: String,
    pub trajectories: Vec<Trajectory<S>>,
}

impl<S> Dataset<S> {
    pub fn tuple_count(&self) -> usize {
        self.trajectories.iter().map(|t| t.tuples.len()).sum()
    }
}

/// Which runs to perform.
#[derive(Debug, Clone)]
pub struct RunSpec<S> {
    pub set_points: Vec<S>,
    pub steps: usize,
    pub seed: Seed,
    pub miscalibration: MisCalibrationMode<S>,
}

impl<S: Scalar> RunSpec<S> {
    pub fn new(set_points: Vec<S>, steps: usize, seed: Seed) -> Self {
        Self {
            set_points,
            steps,
            seed,
            miscalibration: MisCalibrationMode::Disabled,
        }
    }

    /// Standard setting: ten set points, 1000 steps each.
    pub fn standard(seed: Seed) -> Self {
        Self::new(
            DEFAULT_SET_POINTS.iter().map(|&p| S::lit(p)).collect(),
            DEFAULT_STEPS,
            seed,
        )
    }

    fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::InvalidParameter("steps must be at least 1".into()));
        }
        if self.set_points.is_empty() {
            return Err(Error::InvalidParameter(
                "at least one set point is required".into(),
            ));
        }
        for &p in &self.set_points {
            SetPoint::new(p)?;
        }
        Ok(())
    }

    fn config(&self, episode: u64, set_point: S) -> EnvironmentConfig<S> {
        EnvironmentConfig::new(
            set_point,
            trajectory_seed(self.seed, episode, set_point.to_f64_lossless()),
        )
        .with_miscalibration(self.miscalibration.clone())
    }
}

fn observation_array<S: Scalar>(obs: &DataVector<S>) -> Result<[S; 6]> {
    let mut out = [S::zero(); 6];
    for (slot, name) in out.iter_mut().zip(names::OBSERVATION) {
        *slot = obs.value(name)?;
    }
    Ok(out)
}

/// Runs one trajectory, feeding every tuple (and the extended state, when
/// `extended` is set) to `sink`. Returns the number of clamped policy outputs.
fn drive<S, P, F>(
    config: &EnvironmentConfig<S>,
    policy: &mut P,
    steps: usize,
    extended: bool,
    mut sink: F,
) -> Result<u64>
where
    S: Scalar,
    P: Policy<S>,
    F: FnMut(TransitionTuple<S>, Option<DataVector<S>>),
{
    let mut env = Environment::<S>::new();
    let mut policy_rng = RandomStream::new(derive_seed(config.seed, POLICY_SEED_SALT));
    let mut obs = env.reset(config)?;
    let mut clamped = 0;
    for _ in 0..steps {
        let (action, changed) = Action::clamped(policy.act(&obs, &mut policy_rng)?);
        if changed {
            clamped += 1;
        }
        let reward = env.step(action)?;
        let next = env.state()?;
        let tuple = TransitionTuple {
            observation: observation_array(&obs)?,
            action: action.to_array(),
            next_observation: observation_array(&next)?,
            reward,
        };
        let ext = if extended {
            Some(env.internal_markov_state()?)
        } else {
            None
        };
        sink(tuple, ext);
        obs = next;
    }
    if clamped > 0 {
        log::warn!(
            "{clamped} policy actions clamped into [-1, 1] (seed {})",
            config.seed
        );
    }
    Ok(clamped)
}

/// Runs `policy` once per set point (episode 0).
pub fn rollout<S, P>(spec: &RunSpec<S>, policy: &P, record_extended: bool) -> Result<Dataset<S>>
where
    S: Scalar,
    P: Policy<S> + Clone + Sync,
{
    spec.validate()?;
    let trajectories = spec
        .set_points
        .par_iter()
        .map(|&set_point| {
            let config = spec.config(0, set_point);
            let mut policy = policy.clone();
            let mut tuples = Vec::with_capacity(spec.steps);
            let mut ext = record_extended.then(|| Vec::with_capacity(spec.steps));
            let clamped = drive(&config, &mut policy, spec.steps, record_extended, |t, e| {
                tuples.push(t);
                if let (Some(log), Some(e)) = (ext.as_mut(), e) {
                    log.push(e);
                }
            })?;
            Ok(Trajectory {
                set_point,
                episode: 0,
                seed: config.seed,
                tuples,
                extended: ext,
                clamped_actions: clamped,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Dataset {
        seed: spec.seed,
        steps: spec.steps,
        miscalibration: spec.miscalibration.label(),
        trajectories,
    })
}

/// Max-entropy data generation: one trajectory per set point.
pub fn generate_dataset<S: Scalar>(spec: &RunSpec<S>) -> Result<Dataset<S>> {
    rollout(spec, &BuiltinPolicy::MaxEntropy, false)
}

/// Evaluates `policy` over `episodes` passes through every set point.
pub fn evaluate_policy<S, P>(policy: &P, spec: &RunSpec<S>, episodes: u64) -> Result<EvalStats>
where
    S: Scalar,
    P: Policy<S> + Clone + Sync,
{
    spec.validate()?;
    if episodes == 0 {
        return Err(Error::InvalidParameter(
            "episodes must be at least 1".into(),
        ));
    }
    let jobs: Vec<(u64, S)> = (0..episodes)
        .flat_map(|e| spec.set_points.iter().map(move |&p| (e, p)))
        .collect();
    let runs = jobs
        .par_iter()
        .map(|&(episode, set_point)| {
            let mut policy = policy.clone();
            let mut moments = Moments::default();
            let clamped = drive(
                &spec.config(episode, set_point),
                &mut policy,
                spec.steps,
                false,
                |t, _| moments.push(t.reward.to_f64_lossless()),
            )?;
            Ok((moments, clamped))
        })
        .collect::<Result<Vec<_>>>()?;

    let n_points = spec.set_points.len();
    let mut per_step = Moments::default();
    let mut per_episode = Moments::default();
    let mut per_point = vec![Moments::default(); n_points];
    let mut clamped_actions = 0;
    for (e, chunk) in runs.chunks(n_points).enumerate() {
        debug_assert!(e < episodes as usize);
        let mut episode = Moments::default();
        for (i, (m, clamped)) in chunk.iter().enumerate() {
            episode.merge(m);
            per_point[i].merge(m);
            clamped_actions += clamped;
        }
        per_step.merge(&episode);
        per_episode.push(episode.mean());
    }
    let point_means: Moments = per_point.iter().map(Moments::mean).collect();

    Ok(EvalStats {
        mean: per_step.mean(),
        sd: per_episode.sd(),
        stderr: per_episode.stderr(),
        episodes,
        steps: per_step.count(),
        per_step: Spread::from(&per_step),
        per_set_point: Spread::from(&point_means),
        set_point_means: spec
            .set_points
            .iter()
            .zip(&per_point)
            .map(|(p, m)| (p.to_f64_lossless(), m.mean()))
            .collect(),
        clamped_actions,
    })
}
