// scratch harness for picking experiment knobs; not part of the library
use ratelink::evaluation::{auroc, run_experiment, ExperimentConfig, Method};
use ratelink::forecasting::{forecast, ForecastModel};
use ratelink::rate_features::{build_all_rate_series, RateConfig};
use ratelink::synthgen::{generate, SynthConfig};
use ratelink::temporal_graph::build_frames;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let base_rate: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.5);
    let window: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(2);
    let epochs: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(20);
    let folds: usize = args.get(4).and_then(|s| s.parse().ok()).unwrap_or(5);
    let seeds: u64 = args.get(5).and_then(|s| s.parse().ok()).unwrap_or(3);
    let poly2: bool = args.get(6).map(|s| s == "poly2").unwrap_or(false);
    let model: ForecastModel = args
        .get(7)
        .map(|s| s.parse().unwrap())
        .unwrap_or(ForecastModel::WeightedMovingAverage { weights: vec![0.2, 0.3, 0.5] });
    let repeats: usize = args.get(8).and_then(|s| s.parse().ok()).unwrap_or(1);

    let num_frames = 20 / window;
    let mut rpm_means = Vec::new();
    let mut sup_means = Vec::new();
    for seed in 0..seeds {
        let t0 = Instant::now();
        let net = generate(&SynthConfig {
            num_nodes: 500,
            num_snapshots: 20,
            base_rate,
            hot_fraction: 0.1,
            hot_multiplier: 5.0,
            churn: 0.3,
            seed,
        })
        .unwrap();
        let mut cfg = ExperimentConfig::new(window, num_frames);
        cfg.methods = vec![
            Method::Rpm,
            Method::Supervised,
            Method::CommonNeighbors,
            Method::JaccardCoefficient,
            Method::PreferentialAttachment,
            Method::AdamicAdar,
        ];
        cfg.folds = folds;
        cfg.repeats = repeats;
        cfg.seed = seed * 1000;
        cfg.train.epochs = epochs;
        cfg.train.poly2 = poly2;
        cfg.model = model.clone();
        cfg.snapshot_axis = false;
        let report = run_experiment(&net, &cfg).unwrap();
        let rpm = report.method(Method::Rpm).unwrap().mean;
        let sup = report.method(Method::Supervised).unwrap().mean;
        let edges = net.snapshots().last().unwrap().edge_count();

        // diagnostic: how well does the raw rate forecast rank pairs?
        let framed = build_frames(&net, window, num_frames).unwrap();
        let (hist, target) = framed.history_and_target(num_frames).unwrap();
        let rates: Vec<f64> = build_all_rate_series(hist, &RateConfig::default())
            .iter()
            .map(|r| forecast(&cfg.model, &r.series).unwrap())
            .collect();
        let mean_rates: Vec<f64> = build_all_rate_series(hist, &RateConfig::default())
            .iter()
            .map(|r| forecast(&ForecastModel::SimpleMean, &r.series).unwrap())
            .collect();
        let n = net.num_nodes();
        let mut labels = vec![false; n * n];
        let mut new_labels = vec![false; n * n];
        let last_hist = hist.last().unwrap().graph();
        for s in 0..n as u32 {
            for &d in target.graph().out_neighbors(s) {
                labels[s as usize * n + d as usize] = true;
                if !last_hist.has_edge(s, d) {
                    new_labels[s as usize * n + d as usize] = true;
                }
            }
        }
        let grid = |r: &[f64]| -> Vec<f64> {
            (0..n).flat_map(|u| (0..n).map(move |v| r[u] + r[v])).collect()
        };
        let rate_auc = auroc(&grid(&rates), &labels).unwrap().auroc;
        let mrate_auc = auroc(&grid(&mean_rates), &labels).unwrap().auroc;
        let rate_new = auroc(&grid(&mean_rates), &new_labels).unwrap().auroc;
        let new_count = new_labels.iter().filter(|&&l| l).count();
        let pos_count = labels.iter().filter(|&&l| l).count();
        print!(
            " | rate[wma]={rate_auc:.3} rate[mean]={mrate_auc:.3} rate[mean,new]={rate_new:.3} new/pos={new_count}/{pos_count}"
        );

        // oracles: what is achievable with full knowledge of the generator
        // state (true group rates + current graph) vs degree-only knowledge?
        let hot = (0.1 * n as f64).floor() as usize;
        let lambda = |u: usize| if u < hot { base_rate * 5.0 } else { base_rate };
        let deg: Vec<f64> = (0..n as u32).map(|u| last_hist.degree(u) as f64).collect();
        let total_w: f64 = deg.iter().map(|d| d + 1.0).sum();
        let mean_lambda = (0..n).map(lambda).sum::<f64>() / n as f64;
        // degree-proportional rate estimate, normalized to the same mass
        let beta = mean_lambda * n as f64 / total_w;
        let survival = 0.7f64;
        let mut full_oracle = vec![0.0f64; n * n];
        let mut semi_oracle = vec![0.0f64; n * n];
        for u in 0..n {
            for v in 0..n {
                let adj = if last_hist.has_edge(u as u32, v as u32) { survival } else { 0.0 };
                let w = window as f64;
                let new_full = w * (lambda(u) * (deg[v] + 1.0) + lambda(v) * (deg[u] + 1.0)) / total_w;
                let lam_u = beta * (deg[u] + 1.0);
                let lam_v = beta * (deg[v] + 1.0);
                let new_semi = w * (lam_u * (deg[v] + 1.0) + lam_v * (deg[u] + 1.0)) / total_w;
                full_oracle[u * n + v] = adj + new_full;
                semi_oracle[u * n + v] = adj + new_semi;
            }
        }
        let full = auroc(&full_oracle, &labels).unwrap().auroc;
        let semi = auroc(&semi_oracle, &labels).unwrap().auroc;
        print!(" | oracle full={full:.3} deg-only={semi:.3}");
        print!("seed {seed}: rpm {rpm:.4} sup {sup:.4} diff {:+.4}", rpm - sup);
        for m in [
            Method::CommonNeighbors,
            Method::JaccardCoefficient,
            Method::PreferentialAttachment,
            Method::AdamicAdar,
        ] {
            print!(" {}={:.3}", m, report.method(m).unwrap().mean);
        }
        println!("  [{} edges, {:.1}s]", edges, t0.elapsed().as_secs_f64());
        rpm_means.push(rpm);
        sup_means.push(sup);
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    println!(
        "over {} seeds: rpm {:.4} sup {:.4} diff {:+.4}",
        seeds,
        mean(&rpm_means),
        mean(&sup_means),
        mean(&rpm_means) - mean(&sup_means)
    );
    if seeds >= 2 {
        let p = ratelink::evaluation::paired_t_test(&rpm_means, &sup_means).unwrap();
        println!("paired t-test p = {p:.3e}");
    }
}
