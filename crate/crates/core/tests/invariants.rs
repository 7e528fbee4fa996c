use industrial_benchmark::dynamics::{basic_fatigue, CONVOLUTION_KERNEL};
use industrial_benchmark::harness::DEFAULT_SET_POINTS;
use industrial_benchmark::{names, rollout, BuiltinPolicy, RunSpec};
use proptest::prelude::*;

#[test]
fn kernel_sums_to_one() {
    let sum: f64 = CONVOLUTION_KERNEL.iter().sum();
    assert!((sum - 1.0).abs() <= 2.0 * f64::EPSILON);
    assert_eq!(CONVOLUTION_KERNEL[..5], [0.0; 5]);
}

fn check_rollout(seed: u64, policy: BuiltinPolicy<f64>, steps: usize) {
    let spec = RunSpec::new(DEFAULT_SET_POINTS.to_vec(), steps, seed);
    let ds = rollout(&spec, &policy, true).unwrap();
    for traj in &ds.trajectories {
        let ext = traj.extended.as_ref().unwrap();
        for (t, (tuple, state)) in traj.tuples.iter().zip(ext).enumerate() {
            let get = |k| state.value(k).unwrap();
            let [_, v, g, s, c, f] = tuple.next_observation;
            for x in [v, g, s] {
                assert!((0.0..=100.0).contains(&x));
            }
            assert_eq!(tuple.reward, -(c + f), "reward identity at step {t}");
            let fb = basic_fatigue(v, g);
            assert!(fb <= f && f <= 3.0 * fb, "f={f} f_b={fb}");
            for k in [names::FATIGUE_LATENT_V, names::FATIGUE_LATENT_G] {
                assert!((0.0..=5.0).contains(&get(k)), "{k}={}", get(k));
            }
            for k in [names::EFFECTIVE_VELOCITY, names::EFFECTIVE_GAIN] {
                assert!((0.0..=1.0).contains(&get(k)));
            }
            assert!((-1.5..=1.5).contains(&get(names::EFFECTIVE_SHIFT)));
            assert_eq!(get(names::MISCALIBRATION), 0.0);
            if t > 0 {
                assert_eq!(tuple.observation, traj.tuples[t - 1].next_observation);
            }
        }
    }
}

#[test]
fn max_entropy_rollouts_respect_bounds() {
    for seed in 0..3 {
        check_rollout(seed, BuiltinPolicy::MaxEntropy, 1000);
    }
}

#[test]
fn extreme_policies_respect_bounds() {
    for target in [[0.0, 100.0, 0.0], [100.0, 0.0, 100.0], [0.0, 0.0, 50.0]] {
        check_rollout(11, BuiltinPolicy::Hold(target), 300);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn random_constant_policies_respect_bounds(
        seed in any::<u64>(),
        a in prop::array::uniform3(-1.0..=1.0f64),
    ) {
        check_rollout(seed, BuiltinPolicy::Constant(a), 150);
    }
}
