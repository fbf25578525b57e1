//! Link prediction on temporal networks, driven by forecasted per-node
//! link-formation rates.
//!
//! The pipeline slices a timestamped edge stream into snapshots, groups them
//! into frames, forecasts how fast each node forms new links, combines those
//! forecasts with topological similarity features, trains a class-weighted
//! linear max-margin classifier on the full (unbalanced) ordered-pair
//! distribution, and evaluates everything with AUROC under repeated
//! stratified cross-validation.
//!
//! Modules follow the pipeline stages:
//!
//! - [`temporal_graph`]: snapshots, frames, union graphs, churn statistics
//! - [`topo_metrics`]: common neighbors, preferential attachment, Jaccard,
//!   Adamic-Adar
//! - [`forecasting`]: mean / moving-average / weighted / exponential
//!   forecasters and model selection
//! - [`rate_features`]: per-node rate series and labeled dataset assembly
//! - [`classifier`]: class-weighted linear hinge-loss training
//! - [`evaluation`]: AUROC, stratified CV, paired t-tests, method comparison
//! - [`synthgen`]: synthetic networks with controllable rates and churn

pub mod classifier;
pub mod evaluation;
pub mod forecasting;
pub mod rate_features;
pub mod synthgen;
pub mod temporal_graph;
pub mod topo_metrics;

pub use classifier::{ClassWeighting, LinearModel, TrainConfig};
pub use evaluation::{
    auroc, paired_t_test, run_experiment, stratified_kfold, unsupervised_auroc, EvalError,
    ExperimentConfig, ExperimentReport, Method, RocResult,
};
pub use forecasting::{forecast, select_model, ForecastModel, TimeSeries};
pub use rate_features::{
    build_all_rate_series, build_dataset, build_rate_series, feature_schema, Dataset,
    DatasetOptions, FeatureSetKind, LabeledPair, NodeRateSeries, RateConfig,
};
pub use synthgen::{generate, SynthConfig};
pub use temporal_graph::{
    build_frames, load_edge_list, parse_edge_list, snapshot_dynamics, Directedness, Frame,
    FramedSeries, NeighborMode, NodeId, Snapshot, SnapshotChurn, TemporalNetwork, UnionGraph,
};
pub use topo_metrics::{
    adamic_adar, all_metrics, common_neighbors, jaccard, preferential_attachment, MetricKind,
    PairScore,
};
