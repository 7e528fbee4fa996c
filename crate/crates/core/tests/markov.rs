use industrial_benchmark::{
    names, Action, EnvironmentConfig, IndustrialBenchmark, MisCalibrationMode, NoiseSource,
    RandomStream, Scalar,
};

fn action(t: usize) -> Action<f64> {
    let t = t as f64;
    Action::new((1.3 * t).sin(), (0.7 * t).cos(), (2.9 * t).sin()).unwrap()
}

fn run(env: &mut IndustrialBenchmark, from: usize, steps: usize) -> Vec<Vec<u64>> {
    (from..from + steps)
        .map(|t| {
            let r = env.step(action(t)).unwrap();
            let mut bits: Vec<u64> = env
                .internal_markov_state()
                .unwrap()
                .values()
                .iter()
                .map(|x| x.to_bits())
                .collect();
            bits.push(r.to_bits());
            bits
        })
        .collect()
}

#[test]
fn restore_reproduces_the_next_hundred_steps() {
    for (p, seed, warmup) in [(50.0, 1, 0), (80.0, 2, 37), (10.0, 3, 400), (100.0, 4, 999)] {
        let mut env = IndustrialBenchmark::new();
        env.reset(&EnvironmentConfig::new(p, seed)).unwrap();
        run(&mut env, 0, warmup);
        let markov = env.markov_state().unwrap();
        assert_eq!(markov.keys().collect::<Vec<_>>(), names::MARKOV_STATE);
        let stream = env.noise().state();
        let expected = run(&mut env, warmup, 100);

        let mut restored = IndustrialBenchmark::new();
        restored
            .restore(
                MisCalibrationMode::Disabled,
                &markov,
                RandomStream::from_state(stream),
            )
            .unwrap();
        assert_eq!(restored.markov_state().unwrap(), markov);
        assert_eq!(
            run(&mut restored, warmup, 100),
            expected,
            "p={p} warmup={warmup}"
        );
        assert_eq!(restored.noise().draws(), env.noise().draws());
    }
}

#[test]
fn restore_rejects_out_of_range_state() {
    let mut env = IndustrialBenchmark::new();
    env.reset(&EnvironmentConfig::new(50.0, 1)).unwrap();
    let mut markov = env.markov_state().unwrap();
    markov.set_value(names::VELOCITY, 100.5).unwrap();
    assert!(IndustrialBenchmark::new()
        .restore(MisCalibrationMode::Disabled, &markov, RandomStream::new(1))
        .is_err());
}

#[test]
fn f32_environment_tracks_f64() {
    let mut wide = IndustrialBenchmark::new();
    let mut narrow = industrial_benchmark::IndustrialBenchmarkF32::new();
    wide.reset(&EnvironmentConfig::new(60.0, 5)).unwrap();
    narrow.reset(&EnvironmentConfig::new(60.0, 5)).unwrap();
    for t in 0..50 {
        let a = action(t).to_array();
        let rw = wide.step(action(t)).unwrap();
        let rn = narrow
            .step(Action::new(a[0] as f32, a[1] as f32, a[2] as f32).unwrap())
            .unwrap();
        assert!(
            (rn.to_f64_lossless() - rw).abs() <= 1e-3 * rw.abs(),
            "step {t}: {rn} vs {rw}"
        );
    }
}
