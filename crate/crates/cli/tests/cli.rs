//! Subcommand behavior through the real argument parser and dispatch.

use std::fs;
use std::path::Path;

use ratelink::classifier::LinearModel;
use ratelink_cli::run_cli;

fn run(args: &[&str]) -> i32 {
    let mut argv = vec!["ratelink"];
    argv.extend_from_slice(args);
    run_cli(argv)
}

fn path_str(p: &Path) -> String {
    p.to_str().unwrap().to_string()
}

#[test]
fn stats_emits_churn_csv() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("net.txt");
    fs::write(&net, "a b 1\nb c 1\na b 2\na c 2\n").unwrap();
    let out = dir.path().join("stats.csv");
    let code = run(&["stats", "--input", &path_str(&net), "--output", &path_str(&out)]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text, "t,added,dropped\n1,2,0\n2,1,1\n");
    assert!(dir.path().join("stats.config.json").exists());
}

#[test]
fn synth_output_feeds_every_other_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("net.txt");
    assert_eq!(
        run(&[
            "synth", "--nodes", "50", "--snapshots", "6", "--base-rate", "0.5", "--seed", "5",
            "--output", &path_str(&net),
        ]),
        0
    );

    // stats accepts it
    let stats_out = dir.path().join("stats.csv");
    assert_eq!(
        run(&["stats", "--input", &path_str(&net), "--output", &path_str(&stats_out)]),
        0
    );
    let stats = fs::read_to_string(&stats_out).unwrap();
    assert_eq!(stats.lines().count(), 7); // header + 6 snapshots

    // featurize accepts it
    let feats = dir.path().join("feats.csv");
    assert_eq!(
        run(&[
            "featurize", "--input", &path_str(&net), "--window", "2", "--frames", "3",
            "--kind", "supervised", "--output", &path_str(&feats),
        ]),
        0
    );
    let text = fs::read_to_string(&feats).unwrap();
    assert_eq!(text.lines().next().unwrap(), "src,dst,label,cn,jc,pa,aa");
    assert_eq!(text.lines().count(), 1 + 50 * 50);

    // sidecar describes the schema
    let sidecar: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("feats.schema.json")).unwrap())
            .unwrap();
    assert_eq!(sidecar["kind"], "supervised");
    assert_eq!(sidecar["num_nodes"], 50);
    assert_eq!(
        sidecar["positives"].as_u64().unwrap() + sidecar["negatives"].as_u64().unwrap(),
        2500
    );

    // train accepts the featurized csv
    let model_path = dir.path().join("model.json");
    assert_eq!(
        run(&[
            "train", "--input", &path_str(&feats), "--schema",
            &path_str(&dir.path().join("feats.schema.json")), "--epochs", "5",
            "--output", &path_str(&model_path),
        ]),
        0
    );
    let model = LinearModel::from_json(&fs::read_to_string(&model_path).unwrap()).unwrap();
    assert_eq!(model.schema(), ["cn", "jc", "pa", "aa"]);
    assert_eq!(model.weights().len(), 4);
}

#[test]
fn featurize_raw_dumps_metric_scores() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("net.txt");
    fs::write(&net, "a b 1\nb c 1\na c 2\nb c 2\n").unwrap();
    let out = dir.path().join("raw.csv");
    assert_eq!(
        run(&[
            "featurize", "--input", &path_str(&net), "--window", "1", "--frames", "2",
            "--raw", "--output", &path_str(&out),
        ]),
        0
    );
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next().unwrap(), "src,dst,cn,jc,pa,aa");
    assert_eq!(text.lines().count(), 1 + 9);
}

#[test]
fn compare_report_has_seven_methods_and_six_t_tests() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("net.txt");
    assert_eq!(
        run(&[
            "synth", "--nodes", "60", "--snapshots", "6", "--base-rate", "0.5", "--seed", "2",
            "--output", &path_str(&net),
        ]),
        0
    );
    let report_path = dir.path().join("report.json");
    let csv_path = dir.path().join("runs.csv");
    let code = run(&[
        "compare", "--input", &path_str(&net), "--window", "1", "--frames", "6",
        "--folds", "2", "--repeats", "2", "--epochs", "5", "--output", &path_str(&report_path),
        "--csv", &path_str(&csv_path),
    ]);
    assert_eq!(code, 0);

    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["methods"].as_array().unwrap().len(), 7);
    assert_eq!(report["t_tests"].as_array().unwrap().len(), 6);
    // sliding targets 3..=6 ran, so unsupervised baselines have p-values too
    assert_eq!(report["target_frames"], serde_json::json!([3, 4, 5, 6]));
    for t in report["t_tests"].as_array().unwrap() {
        assert!(t["p_snapshots"].is_number(), "missing snapshot-axis p: {t}");
    }

    let csv = fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "method,run,auroc");
    // 3 supervised methods x 4 runs + 4 unsupervised x 2 repeats + header
    assert_eq!(csv.lines().count(), 1 + 3 * 4 + 4 * 2);
}

#[test]
fn evaluate_restricted_to_one_method() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("net.txt");
    assert_eq!(
        run(&[
            "synth", "--nodes", "40", "--snapshots", "4", "--seed", "8",
            "--output", &path_str(&net),
        ]),
        0
    );
    let report_path = dir.path().join("report.json");
    let code = run(&[
        "evaluate", "--input", &path_str(&net), "--window", "1", "--frames", "4",
        "--methods", "cn", "--output", &path_str(&report_path),
    ]);
    assert_eq!(code, 0);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["methods"].as_array().unwrap().len(), 1);
    assert_eq!(report["methods"][0]["method"], "cn");
    assert_eq!(report["t_tests"].as_array().unwrap().len(), 0);
}

#[test]
fn usage_errors_exit_one() {
    // missing required input
    assert_eq!(run(&["train", "--output", "/tmp/x.json"]), 1);
    // unknown subcommand
    assert_eq!(run(&["frobnicate"]), 1);
    // unknown method name
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("net.txt");
    fs::write(&net, "a b 1\na b 2\na b 3\n").unwrap();
    assert_eq!(
        run(&["evaluate", "--input", &path_str(&net), "--window", "1", "--frames", "3",
              "--methods", "katz"]),
        1
    );
    // bad forecast spec
    assert_eq!(
        run(&["featurize", "--input", &path_str(&net), "--window", "1", "--frames", "3",
              "--model", "arima:1", "--output", "/tmp/x.csv"]),
        1
    );
}

#[test]
fn runtime_errors_exit_two() {
    assert_eq!(run(&["stats", "--input", "/nonexistent/net.txt"]), 2);
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]), 0);
    assert_eq!(run(&["compare", "--help"]), 0);
}

#[test]
fn echoed_config_reproduces_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("net.txt");
    assert_eq!(
        run(&[
            "synth", "--nodes", "40", "--snapshots", "6", "--seed", "4",
            "--output", &path_str(&net),
        ]),
        0
    );
    // regenerate from the echo: byte-identical edge list
    let first = fs::read(&net).unwrap();
    assert_eq!(
        run(&["synth", "--config", &path_str(&dir.path().join("net.config.json"))]),
        0
    );
    assert_eq!(first, fs::read(&net).unwrap());

    let report_path = dir.path().join("report.json");
    let args = [
        "evaluate", "--input", &path_str(&net), "--window", "2", "--frames", "3",
        "--methods", "rpm,supervised,pa", "--folds", "2", "--repeats", "2", "--epochs", "5",
        "--output", &path_str(&report_path),
    ];
    let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let refs: Vec<&str> = owned.iter().map(String::as_str).collect();
    assert_eq!(run(&refs), 0);
    let first = fs::read(&report_path).unwrap();
    let echo = dir.path().join("report.config.json");
    assert!(echo.exists());
    assert_eq!(run(&["evaluate", "--config", &path_str(&echo)]), 0);
    assert_eq!(first, fs::read(&report_path).unwrap());
}
