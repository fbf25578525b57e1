//! Cross-module integration: generated networks through framing, features,
//! training, evaluation and model selection.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ratelink::classifier::TrainConfig;
use ratelink::evaluation::{
    cv_auroc_runs, run_experiment, EvalError, ExperimentConfig, Method,
};
use ratelink::forecasting::{default_candidates, select_model, ForecastModel};
use ratelink::rate_features::{build_dataset, DatasetOptions, FeatureSetKind};
use ratelink::synthgen::{generate, SynthConfig};
use ratelink::temporal_graph::{build_frames, Directedness, NodeId, TemporalNetwork};

/// Network whose per-node activity drifts: every node draws an independent
/// random rate for each snapshot, and its target-snapshot rate is a graded
/// blend of the three most recent ones, heaviest on the newest. Old snapshots
/// are louder, so long-memory forecasts chase stale activity. Destinations
/// are uniform.
fn drifting_network(seed: u64) -> TemporalNetwork {
    let total = 300usize;
    let history = 8usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let rates: Vec<Vec<f64>> = (0..total)
        .map(|_| {
            (0..history)
                .map(|t| {
                    let amp = if t < history - 3 { 2.5 } else { 1.2 };
                    -amp * (1.0 - rng.random::<f64>()).ln()
                })
                .collect()
        })
        .collect();

    let poisson = |rate: f64, rng: &mut ChaCha8Rng| -> usize {
        let mut k = 0usize;
        if rate > 0.0 {
            let l = (-rate).exp();
            let mut p = 1.0;
            loop {
                p *= rng.random::<f64>();
                if p <= l {
                    break;
                }
                k += 1;
            }
        }
        k
    };

    let mut edges: Vec<Vec<(NodeId, NodeId)>> = Vec::new();
    for t in 0..history + 1 {
        let mut snap = Vec::new();
        for u in 0..total {
            let rate = if t < history {
                rates[u][t]
            } else {
                3.0 * (0.2 * rates[u][history - 3]
                    + 0.3 * rates[u][history - 2]
                    + 0.5 * rates[u][history - 1])
            };
            for _ in 0..poisson(rate, &mut rng) {
                let v = rng.random_range(0..total as u32);
                if v as usize != u {
                    snap.push((u as u32, v));
                }
            }
        }
        edges.push(snap);
    }
    TemporalNetwork::from_edges(total, Directedness::Undirected, edges).unwrap()
}

/// Mean CV AUROC of the rate-augmented feature set under one forecast model.
fn rpm_score(net: &TemporalNetwork, model: &ForecastModel) -> Result<f64, EvalError> {
    let frames = net.num_snapshots();
    let framed = build_frames(net, 1, frames)?;
    let (hist, target) = framed.history_and_target(frames)?;
    let data = build_dataset(hist, target, FeatureSetKind::Rpm, model, &DatasetOptions::default())?;
    let cfg = TrainConfig {
        epochs: 15,
        ..Default::default()
    };
    let runs = cv_auroc_runs(&data, 3, 1, 17, &cfg)?;
    Ok(runs.iter().sum::<f64>() / runs.len() as f64)
}

#[test]
fn select_model_prefers_recency_weighting_over_simple_mean() {
    let net = drifting_network(0);
    let wma = ForecastModel::WeightedMovingAverage {
        weights: vec![0.2, 0.3, 0.5],
    };
    let candidates = vec![ForecastModel::SimpleMean, wma.clone()];
    let winner = select_model(&candidates, |m| rpm_score(&net, m)).unwrap();
    assert_eq!(winner, wma);

    // and the margin is real, not a tie-break
    let s_mean = rpm_score(&net, &ForecastModel::SimpleMean).unwrap();
    let s_wma = rpm_score(&net, &wma).unwrap();
    assert!(
        s_wma > s_mean + 0.01,
        "wma {s_wma:.4} should clearly beat mean {s_mean:.4}"
    );
}

#[test]
fn select_model_picks_graded_weights_from_the_default_grid() {
    let wma = ForecastModel::WeightedMovingAverage {
        weights: vec![0.2, 0.3, 0.5],
    };
    for seed in [0, 1] {
        let net = drifting_network(seed);
        let winner = select_model(&default_candidates(), |m| rpm_score(&net, m)).unwrap();
        assert_eq!(winner, wma, "seed {seed}");
    }
}

fn small_experiment_config() -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(1, 5);
    cfg.folds = 3;
    cfg.repeats = 2;
    cfg.seed = 9;
    cfg.train.epochs = 10;
    cfg
}

fn small_net() -> TemporalNetwork {
    generate(&SynthConfig {
        num_nodes: 120,
        num_snapshots: 5,
        base_rate: 0.4,
        hot_fraction: 0.1,
        hot_multiplier: 5.0,
        churn: 0.3,
        seed: 42,
    })
    .unwrap()
}

#[test]
fn experiment_report_shape_and_determinism() {
    let net = small_net();
    let cfg = small_experiment_config();
    let report = run_experiment(&net, &cfg).unwrap();

    assert_eq!(report.methods.len(), 7);
    assert_eq!(report.t_tests.len(), 6);
    for m in &report.methods {
        let expected = if m.method.is_supervised() {
            cfg.folds * cfg.repeats
        } else {
            cfg.repeats
        };
        assert_eq!(m.runs.len(), expected, "{}", m.method);
        assert!(m.runs.iter().all(|v| (0.0..=1.0).contains(v)));
        assert!((m.mean - m.runs.iter().sum::<f64>() / m.runs.len() as f64).abs() < 1e-12);
        // snapshot axis ran: targets 3..=5 admissible with RPM in the mix
        assert_eq!(m.per_target.as_ref().map(Vec::len), Some(3));
    }
    assert_eq!(report.target_frames, vec![3, 4, 5]);
    for t in &report.t_tests {
        assert_ne!(t.vs, Method::Rpm);
        if t.vs.is_supervised() {
            assert!(t.p_folds.is_some());
        } else {
            assert!(t.p_folds.is_none());
        }
        assert!(t.p_snapshots.is_some());
        for p in [t.p_folds, t.p_snapshots].into_iter().flatten() {
            assert!((0.0..=1.0).contains(&p));
        }
    }

    let again = run_experiment(&net, &cfg).unwrap();
    assert_eq!(report, again);
}

#[test]
fn experiment_with_single_unsupervised_method() {
    let net = small_net();
    let mut cfg = small_experiment_config();
    cfg.methods = vec![Method::CommonNeighbors];
    let report = run_experiment(&net, &cfg).unwrap();
    assert_eq!(report.methods.len(), 1);
    assert!(report.t_tests.is_empty());
    assert_eq!(report.methods[0].runs.len(), cfg.repeats);
    assert_eq!(report.methods[0].stddev, 0.0);
}

#[test]
fn experiment_errors_carry_the_method_name() {
    let net = small_net();
    let mut cfg = small_experiment_config();
    // target 2 leaves one history frame: too little for RPM's time series
    cfg.target_frame = 2;
    cfg.snapshot_axis = false;
    let err = run_experiment(&net, &cfg).unwrap_err();
    match err {
        EvalError::Method { method, .. } => assert_eq!(method, "RPM"),
        other => panic!("expected method-annotated error, got {other}"),
    }
}

#[test]
fn supervised_beats_chance_on_hot_node_networks() {
    let net = small_net();
    let mut cfg = small_experiment_config();
    cfg.methods = vec![Method::Rpm, Method::Supervised];
    cfg.snapshot_axis = false;
    let report = run_experiment(&net, &cfg).unwrap();
    for m in &report.methods {
        assert!(
            m.mean > 0.6,
            "{} should comfortably beat chance, got {:.4}",
            m.method,
            m.mean
        );
    }
}
