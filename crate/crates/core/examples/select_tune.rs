// scratch harness for the model-selection scenario; not part of the library
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ratelink::classifier::TrainConfig;
use ratelink::evaluation::cv_auroc_runs;
use ratelink::forecasting::{default_candidates, ForecastModel};
use ratelink::rate_features::{build_dataset, DatasetOptions, FeatureSetKind};
use ratelink::temporal_graph::{build_frames, Directedness, NodeId, TemporalNetwork};

/// Network whose per-node activity drifts: every node draws an independent
/// random rate for each snapshot, and its target-snapshot rate is a graded
/// blend of the three most recent ones (heaviest on the newest).
/// Destinations are uniform.
pub fn drifting_network(seed: u64) -> TemporalNetwork {
    let total = 300usize;
    let history = 8usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // i.i.d. exponential per-node per-snapshot rates; older snapshots are
    // louder, so forecasts with long memory chase stale activity
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
            let k = poisson(rate, &mut rng);
            for _ in 0..k {
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

fn main() {
    let seeds: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let mut wins = 0;
    for seed in 0..seeds {
        let net = drifting_network(seed);
        let n_frames = net.num_snapshots();
        let framed = build_frames(&net, 1, n_frames).unwrap();
        let (hist, target) = framed.history_and_target(n_frames).unwrap();
        let train_cfg = TrainConfig {
            epochs: 15,
            ..Default::default()
        };
        let mut scores: Vec<(String, f64)> = Vec::new();
        for model in default_candidates() {
            let data =
                build_dataset(hist, target, FeatureSetKind::Rpm, &model, &DatasetOptions::default())
                    .unwrap();
            let runs = cv_auroc_runs(&data, 3, 1, 17, &train_cfg).unwrap();
            let mean = runs.iter().sum::<f64>() / runs.len() as f64;
            scores.push((model.to_string(), mean));
        }
        let best = scores
            .iter()
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap()
            .clone();
        let wma = ForecastModel::WeightedMovingAverage {
            weights: vec![0.2, 0.3, 0.5],
        }
        .to_string();
        if best.0 == wma {
            wins += 1;
        }
        print!("seed {seed}: winner {} ({:.4}) | ", best.0, best.1);
        for (name, s) in &scores {
            print!("{name}={s:.4} ");
        }
        println!();
    }
    println!("wma wins {wins}/{seeds}");
}
