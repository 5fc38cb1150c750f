use hyperramsey::catalog;
use hyperramsey::randlab::{
    self, Event, ExperimentConfig, FitConfig, RandError, SampleConfig, SweepRecord,
};

fn k(name: &str) -> hyperramsey::Hypergraph {
    catalog::get(name).unwrap()
}

fn cfg(n: usize, seed: u64) -> ExperimentConfig {
    ExperimentConfig {
        r: 2,
        n,
        seed,
        budget: hyperramsey::arrowing::DEFAULT_NODE_BUDGET,
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn samples_are_reproducible() {
    let c = SampleConfig::new(3, 9, 0.4, 77).unwrap();
    assert_eq!(randlab::sample(&c), randlab::sample(&c));
    let other = SampleConfig::new(3, 9, 0.4, 78).unwrap();
    assert_ne!(randlab::sample(&c), randlab::sample(&other));
}

#[test]
fn mean_edge_count_is_binomial() {
    for (r, n, p) in [(2usize, 12usize, 0.3f64), (3, 8, 0.55)] {
        let slots = binomial(n as u64, r as u64) as f64;
        let runs = 1000;
        let total: usize = (0..runs)
            .map(|seed| randlab::sample(&SampleConfig::new(r, n, p, seed).unwrap()).edge_count())
            .sum();
        let mean = total as f64 / runs as f64;
        let sd_of_mean = (slots * p * (1.0 - p) / runs as f64).sqrt();
        assert!(
            (mean - slots * p).abs() <= 4.0 * sd_of_mean,
            "r = {r}, n = {n}: mean {mean}, expected {}",
            slots * p
        );
    }
}

#[test]
fn coupled_samples_are_nested() {
    let c = cfg(10, 5);
    for trial in 0..20 {
        let mut previous = randlab::trial_sample(&c, 0.0, trial);
        assert_eq!(previous.edge_count(), 0);
        for step in 1..=10 {
            let next = randlab::trial_sample(&c, step as f64 / 10.0, trial);
            assert!(previous.edge_masks().iter().all(|&m| next.has_edge_mask(m)));
            previous = next;
        }
        assert_eq!(previous.edge_count(), 45);
    }
}

#[test]
fn endpoint_estimates() {
    let arrows = Event::ArrowsTuple(vec![k("K3"), k("K3")]);
    assert_eq!(randlab::estimate_event(&cfg(6, 0), &arrows, 1.0, 10).unwrap().phat, 1.0);
    assert_eq!(randlab::estimate_event(&cfg(5, 0), &arrows, 1.0, 10).unwrap().phat, 0.0);
    let contains = Event::ContainsCopy(k("K3"));
    for n in [3, 8, 20] {
        assert_eq!(randlab::estimate_event(&cfg(n, 1), &contains, 0.0, 10).unwrap().phat, 0.0);
    }
}

#[test]
fn sweeps_are_monotone_and_thread_independent() {
    let event = Event::ContainsCopy(k("K4"));
    let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| randlab::sweep(&cfg(12, 9), &event, &grid, 60).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert!(one.windows(2).all(|w| w[0].successes <= w[1].successes));
    assert_eq!(one.first().unwrap().phat, 0.0);
    assert_eq!(one.last().unwrap().phat, 1.0);
}

#[test]
fn csv_round_trip() {
    let records = randlab::sweep(&cfg(8, 3), &Event::ContainsCopy(k("C4")), &[0.0, 0.137, 0.5, 1.0], 25).unwrap();
    let mut buf = Vec::new();
    randlab::write_csv(&records, &mut buf).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.starts_with("n,p,trials,successes,phat\n"));
    let back: Vec<SweepRecord> = randlab::read_csv(buf.as_slice()).unwrap();
    assert_eq!(back, records);
}

#[test]
fn fit_preconditions() {
    let event = Event::ContainsCopy(k("K4"));
    let fit_cfg = FitConfig {
        trials: 20,
        ..FitConfig::default()
    };
    assert!(matches!(
        randlab::fit_threshold(&fit_cfg, &event, &[10, 20]),
        Err(RandError::TooFewSizes(2))
    ));
    assert!(matches!(
        randlab::fit_threshold(&fit_cfg, &event, &[3, 10, 20]),
        Err(RandError::NonBracketing { n: 3, .. })
    ));
}

#[test]
fn fit_recovers_triangle_exponent() {
    let fit_cfg = FitConfig {
        seed: 11,
        trials: 100,
        tol: 1.0 / 1024.0,
        ..FitConfig::default()
    };
    let fit = randlab::fit_threshold(&fit_cfg, &Event::ContainsCopy(k("K3")), &[20, 40, 60]).unwrap();
    assert_eq!(fit.predicted_exact.as_deref(), Some("-1"));
    assert!((fit.slope + 1.0).abs() < 0.2, "slope {}", fit.slope);
    assert_eq!(fit.residuals.len(), 3);
    let json = fit.to_json();
    for key in ["pHalfByN", "slope", "predictedSlope", "residuals"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
}
