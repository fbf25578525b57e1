// scratch: criterion-4 style timing for the full-distribution dataset build
use ratelink::forecasting::ForecastModel;
use ratelink::rate_features::{build_dataset, DatasetOptions, FeatureSetKind};
use ratelink::synthgen::{generate, SynthConfig};
use ratelink::temporal_graph::build_frames;
use std::time::Instant;

fn main() {
    let nodes: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2809);
    let t0 = Instant::now();
    let net = generate(&SynthConfig {
        num_nodes: nodes,
        num_snapshots: 6,
        base_rate: 0.3,
        hot_fraction: 0.1,
        hot_multiplier: 5.0,
        churn: 0.3,
        seed: 1,
    })
    .unwrap();
    println!("generate: {:.2}s", t0.elapsed().as_secs_f64());

    let t0 = Instant::now();
    let framed = build_frames(&net, 2, 3).unwrap();
    let (hist, target) = framed.history_and_target(3).unwrap();
    println!("frames: {:.2}s", t0.elapsed().as_secs_f64());

    let t0 = Instant::now();
    let model = ForecastModel::WeightedMovingAverage { weights: vec![0.2, 0.3, 0.5] };
    let data = build_dataset(hist, target, FeatureSetKind::Rpm, &model, &DatasetOptions::default()).unwrap();
    let secs = t0.elapsed().as_secs_f64();
    let (pos, neg) = data.class_counts();
    println!("build_dataset rpm: {:.2}s rows={} pos={} neg={}", secs, data.len(), pos, neg);
}
