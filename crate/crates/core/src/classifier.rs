//! Class-weighted linear max-margin classifier trained on the full,
//! unbalanced pair distribution.
//!
//! The trainer minimizes L2-regularized class-weighted hinge loss
//!
//! ```text
//! F(w, b) = 1/2 ||w||^2 + C * sum_i pi_{y_i} * max(0, 1 - y_i (w.x_i + b))
//! ```
//!
//! with labels in {-1, +1}, via seeded stochastic subgradient descent on
//! z-scored features. Balanced class weighting scales the per-class penalties
//! so both classes carry the same aggregate weight, which keeps the majority
//! class from swallowing the decision scores on skewed pair datasets.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::rate_features::Dataset;

#[derive(Debug, Error, PartialEq)]
pub enum TrainError {
    #[error("training data must be nonempty")]
    EmptyDataset,
    #[error("training data must contain both classes")]
    SingleClass,
    #[error("non-finite feature value at row {row}")]
    NonFiniteFeature { row: usize },
    #[error("feature length mismatch: model has {expected}, input has {got}")]
    SchemaMismatch { expected: usize, got: usize },
    #[error("invalid training config: {0}")]
    BadConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassWeighting {
    /// Inverse-frequency weights: aggregate positive and negative penalties
    /// match.
    #[default]
    Balanced,
    /// Every example weighs 1.
    None,
}

/// Misclassification-penalty multipliers `(pi_pos, pi_neg)`.
pub fn class_weights(num_pos: usize, num_neg: usize, scheme: ClassWeighting) -> (f64, f64) {
    match scheme {
        ClassWeighting::None => (1.0, 1.0),
        ClassWeighting::Balanced => {
            let n = (num_pos + num_neg) as f64;
            (2.0 * num_neg as f64 / n, 2.0 * num_pos as f64 / n)
        }
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TrainConfig {
    /// Regularization trade-off C.
    pub cost: f64,
    pub epochs: usize,
    /// Initial step size; decays as 1/sqrt(step).
    pub learning_rate: f64,
    /// Seed for the per-epoch shuffle.
    pub seed: u64,
    pub class_weighting: ClassWeighting,
    /// Explicit degree-2 feature-map expansion (adds all pairwise products).
    pub poly2: bool,
    /// Deterministic mini-batch mode: per batch, per-sample subgradients are
    /// averaged (computed in parallel, reduced in index order) before one
    /// update. `None` is plain one-sample-at-a-time descent.
    pub mini_batch: Option<usize>,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            cost: 1.0,
            epochs: 50,
            learning_rate: 0.1,
            seed: 0,
            class_weighting: ClassWeighting::Balanced,
            poly2: false,
            mini_batch: None,
        }
    }
}

impl TrainConfig {
    fn validate(&self) -> Result<(), TrainError> {
        if !(self.cost > 0.0) {
            return Err(TrainError::BadConfig(format!("cost must be > 0, got {}", self.cost)));
        }
        if self.epochs < 1 {
            return Err(TrainError::BadConfig("epochs must be >= 1".into()));
        }
        if !(self.learning_rate > 0.0) {
            return Err(TrainError::BadConfig(format!(
                "learning rate must be > 0, got {}",
                self.learning_rate
            )));
        }
        if self.mini_batch == Some(0) {
            return Err(TrainError::BadConfig("mini-batch size must be >= 1".into()));
        }
        Ok(())
    }
}

/// Trained linear model with the standardization statistics captured at
/// train time. Scores are real-valued and usable directly for ranking.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct LinearModel {
    schema: Vec<String>,
    weights: Vec<f64>,
    bias: f64,
    /// Per-feature mean in the (possibly expanded) training space.
    means: Vec<f64>,
    /// Per-feature standard deviation; constant columns are stored as 1.
    stds: Vec<f64>,
    poly2: bool,
    config: TrainConfig,
}

/// All degree <= 2 monomials of the input: `x` followed by every product
/// `x_i * x_j` with `i <= j`.
pub fn expand_degree2(row: &[f64]) -> Vec<f64> {
    let d = row.len();
    let mut out = Vec::with_capacity(d + d * (d + 1) / 2);
    out.extend_from_slice(row);
    for i in 0..d {
        for j in i..d {
            out.push(row[i] * row[j]);
        }
    }
    out
}

/// Value of the regularized class-weighted hinge objective at `(w, b)`.
/// `features` is row-major with `w.len()` columns; `pi[i]` is the penalty
/// multiplier of row `i`.
pub fn hinge_objective(
    w: &[f64],
    b: f64,
    features: &[f64],
    labels: &[bool],
    pi: &[f64],
    cost: f64,
) -> f64 {
    let d = w.len();
    let reg = 0.5 * w.iter().map(|v| v * v).sum::<f64>();
    let mut loss = 0.0;
    for (i, row) in features.chunks_exact(d).enumerate() {
        let y = if labels[i] { 1.0 } else { -1.0 };
        let margin = y * (dot(w, row) + b);
        loss += pi[i] * (1.0 - margin).max(0.0);
    }
    reg + cost * loss
}

/// Full-batch subgradient of [`hinge_objective`] at `(w, b)`. On the hinge
/// kink (margin exactly 1) the zero branch is taken.
pub fn hinge_subgradient(
    w: &[f64],
    b: f64,
    features: &[f64],
    labels: &[bool],
    pi: &[f64],
    cost: f64,
) -> (Vec<f64>, f64) {
    let d = w.len();
    let mut gw = w.to_vec();
    let mut gb = 0.0;
    for (i, row) in features.chunks_exact(d).enumerate() {
        let y = if labels[i] { 1.0 } else { -1.0 };
        let margin = y * (dot(w, row) + b);
        if margin < 1.0 {
            let coef = cost * pi[i] * y;
            for (g, x) in gw.iter_mut().zip(row) {
                *g -= coef * x;
            }
            gb -= coef;
        }
    }
    (gw, gb)
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Train on a labeled dataset. Deterministic: the same data, config and seed
/// reproduce the exact same model.
pub fn train(data: &Dataset, cfg: &TrainConfig) -> Result<LinearModel, TrainError> {
    cfg.validate()?;
    if data.is_empty() {
        return Err(TrainError::EmptyDataset);
    }
    let (num_pos, num_neg) = data.class_counts();
    if num_pos == 0 || num_neg == 0 {
        return Err(TrainError::SingleClass);
    }

    let n = data.len();
    let base_dim = data.num_features();

    // Expansion + finiteness check in one pass.
    let dim = if cfg.poly2 {
        base_dim + base_dim * (base_dim + 1) / 2
    } else {
        base_dim
    };
    let mut x = Vec::with_capacity(n * dim);
    for i in 0..n {
        let row = data.features_row(i);
        if row.iter().any(|v| !v.is_finite()) {
            return Err(TrainError::NonFiniteFeature { row: i });
        }
        if cfg.poly2 {
            x.extend(expand_degree2(row));
        } else {
            x.extend_from_slice(row);
        }
    }

    // z-score with train-time statistics; constant columns become all-zero.
    let (means, stds) = column_stats(&x, dim);
    for row in x.chunks_exact_mut(dim) {
        for ((v, m), s) in row.iter_mut().zip(&means).zip(&stds) {
            *v = (*v - m) / s;
        }
    }

    let (pi_pos, pi_neg) = class_weights(num_pos, num_neg, cfg.class_weighting);
    let pi_of = |label: bool| if label { pi_pos } else { pi_neg };

    let labels = data.labels();
    let mut w = vec![0.0f64; dim];
    let mut b = 0.0f64;
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut step = 0u64;
    let inv_n = 1.0 / n as f64;

    for _ in 0..cfg.epochs {
        order.shuffle(&mut rng);
        match cfg.mini_batch {
            None => {
                for &i in &order {
                    let i = i as usize;
                    step += 1;
                    let eta = cfg.learning_rate / (step as f64).sqrt();
                    let row = &x[i * dim..(i + 1) * dim];
                    let y = if labels[i] { 1.0 } else { -1.0 };
                    let margin = y * (dot(&w, row) + b);
                    // regularizer split across the n per-sample steps
                    let shrink = 1.0 - eta * inv_n;
                    for v in w.iter_mut() {
                        *v *= shrink;
                    }
                    if margin < 1.0 {
                        let coef = eta * cfg.cost * pi_of(labels[i]) * y;
                        for (v, xv) in w.iter_mut().zip(row) {
                            *v += coef * xv;
                        }
                        b += coef;
                    }
                }
            }
            Some(batch) => {
                for chunk in order.chunks(batch) {
                    step += 1;
                    let eta = cfg.learning_rate / (step as f64).sqrt();
                    let (gw, gb) = batch_subgradient(&w, b, &x, labels, chunk, dim, inv_n, cfg.cost, pi_of);
                    for (v, g) in w.iter_mut().zip(&gw) {
                        *v -= eta * g;
                    }
                    b -= eta * gb;
                }
            }
        }
    }

    Ok(LinearModel {
        schema: data.schema().to_vec(),
        weights: w,
        bias: b,
        means,
        stds,
        poly2: cfg.poly2,
        config: cfg.clone(),
    })
}

/// Averaged per-sample subgradient over one batch. Partials are computed in
/// parallel but reduced in chunk order, so the result does not depend on the
/// thread count.
#[allow(clippy::too_many_arguments)]
fn batch_subgradient(
    w: &[f64],
    b: f64,
    x: &[f64],
    labels: &[bool],
    batch: &[u32],
    dim: usize,
    inv_n: f64,
    cost: f64,
    pi_of: impl Fn(bool) -> f64 + Sync,
) -> (Vec<f64>, f64) {
    let partials: Vec<(Vec<f64>, f64)> = batch
        .par_chunks(64)
        .map(|ids| {
            let mut gw = vec![0.0f64; dim];
            let mut gb = 0.0;
            for &i in ids {
                let i = i as usize;
                let row = &x[i * dim..(i + 1) * dim];
                let y = if labels[i] { 1.0 } else { -1.0 };
                for (g, wv) in gw.iter_mut().zip(w) {
                    *g += wv * inv_n;
                }
                if y * (dot(w, row) + b) < 1.0 {
                    let coef = cost * pi_of(labels[i]) * y;
                    for (g, xv) in gw.iter_mut().zip(row) {
                        *g -= coef * xv;
                    }
                    gb -= coef;
                }
            }
            (gw, gb)
        })
        .collect();

    let mut gw = vec![0.0f64; dim];
    let mut gb = 0.0;
    for (pw, pb) in partials {
        for (g, p) in gw.iter_mut().zip(pw) {
            *g += p;
        }
        gb += pb;
    }
    let scale = 1.0 / batch.len() as f64;
    gw.iter_mut().for_each(|g| *g *= scale);
    (gw, gb * scale)
}

fn column_stats(x: &[f64], dim: usize) -> (Vec<f64>, Vec<f64>) {
    let n = (x.len() / dim) as f64;
    let mut means = vec![0.0f64; dim];
    for row in x.chunks_exact(dim) {
        for (m, v) in means.iter_mut().zip(row) {
            *m += v;
        }
    }
    means.iter_mut().for_each(|m| *m /= n);
    let mut vars = vec![0.0f64; dim];
    for row in x.chunks_exact(dim) {
        for ((s, v), m) in vars.iter_mut().zip(row).zip(&means) {
            let d = v - m;
            *s += d * d;
        }
    }
    let stds = vars
        .into_iter()
        .map(|s| {
            let sd = (s / n).sqrt();
            if sd > 0.0 {
                sd
            } else {
                1.0
            }
        })
        .collect();
    (means, stds)
}

impl LinearModel {
    /// Assemble a model from raw parts; lengths must agree.
    pub fn from_parts(
        schema: Vec<String>,
        weights: Vec<f64>,
        bias: f64,
        means: Vec<f64>,
        stds: Vec<f64>,
    ) -> Result<Self, TrainError> {
        if weights.len() != means.len() || weights.len() != stds.len() {
            return Err(TrainError::SchemaMismatch {
                expected: weights.len(),
                got: means.len(),
            });
        }
        Ok(LinearModel {
            schema,
            weights,
            bias,
            means,
            stds,
            poly2: false,
            config: TrainConfig::default(),
        })
    }

    pub fn schema(&self) -> &[String] {
        &self.schema
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn config(&self) -> &TrainConfig {
        &self.config
    }

    fn expected_input_len(&self) -> usize {
        if self.poly2 {
            self.schema.len()
        } else {
            self.weights.len()
        }
    }

    /// Real-valued decision score `w . standardize(f) + b`.
    pub fn decision_score(&self, features: &[f64]) -> Result<f64, TrainError> {
        if features.len() != self.expected_input_len() {
            return Err(TrainError::SchemaMismatch {
                expected: self.expected_input_len(),
                got: features.len(),
            });
        }
        let expanded;
        let row: &[f64] = if self.poly2 {
            expanded = expand_degree2(features);
            &expanded
        } else {
            features
        };
        let mut score = self.bias;
        for i in 0..self.weights.len() {
            score += self.weights[i] * (row[i] - self.means[i]) / self.stds[i];
        }
        Ok(score)
    }

    /// Thresholded decision: positive score means class 1; a score of exactly
    /// 0 is class 0.
    pub fn predict(&self, features: &[f64]) -> Result<bool, TrainError> {
        Ok(self.decision_score(features)? > 0.0)
    }

    /// Decision scores for every row of a dataset.
    pub fn scores_for(&self, data: &Dataset) -> Result<Vec<f64>, TrainError> {
        if data.num_features() != self.expected_input_len() {
            return Err(TrainError::SchemaMismatch {
                expected: self.expected_input_len(),
                got: data.num_features(),
            });
        }
        (0..data.len())
            .map(|i| self.decision_score(data.features_row(i)))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluation::auroc;
    use rand::Rng;

    fn dataset(rows: &[(&[f64], bool)]) -> Dataset {
        let nf = rows[0].0.len();
        let schema = (0..nf).map(|i| format!("f{i}")).collect();
        let features = rows.iter().flat_map(|(r, _)| r.iter().copied()).collect();
        let labels = rows.iter().map(|(_, l)| *l).collect();
        let pairs = (0..rows.len()).map(|i| (i as u32, i as u32)).collect();
        Dataset::from_parts(schema, features, labels, pairs).unwrap()
    }

    #[test]
    fn separable_two_point_set_gets_signed_scores() {
        let data = dataset(&[(&[1.0], true), (&[-1.0], false)]);
        let model = train(&data, &TrainConfig::default()).unwrap();
        let pos = model.decision_score(&[1.0]).unwrap();
        let neg = model.decision_score(&[-1.0]).unwrap();
        assert!(pos > 0.0, "positive example scored {pos}");
        assert!(neg < 0.0, "negative example scored {neg}");
    }

    #[test]
    fn identical_features_give_identical_scores() {
        let data = dataset(&[
            (&[3.0, 3.0], true),
            (&[3.0, 3.0], false),
            (&[3.0, 3.0], true),
        ]);
        let model = train(&data, &TrainConfig::default()).unwrap();
        let s: Vec<f64> = (0..3)
            .map(|i| model.decision_score(data.features_row(i)).unwrap())
            .collect();
        assert_eq!(s[0], s[1]);
        assert_eq!(s[1], s[2]);
    }

    #[test]
    fn balanced_weights_equalize_aggregate_penalty() {
        let (pos, neg) = (10usize, 990usize);
        let (pi_pos, pi_neg) = class_weights(pos, neg, ClassWeighting::Balanced);
        let total_pos = pi_pos * pos as f64;
        let total_neg = pi_neg * neg as f64;
        assert!((total_pos - total_neg).abs() < 1e-9);
        assert_eq!(class_weights(pos, neg, ClassWeighting::None), (1.0, 1.0));
    }

    #[test]
    fn training_rejects_bad_input() {
        let empty = Dataset::from_parts(vec!["f".into()], vec![], vec![], vec![]).unwrap();
        assert_eq!(train(&empty, &TrainConfig::default()), Err(TrainError::EmptyDataset));

        let single = dataset(&[(&[1.0], true), (&[2.0], true)]);
        assert_eq!(train(&single, &TrainConfig::default()), Err(TrainError::SingleClass));

        let with_nan = dataset(&[(&[1.0], true), (&[f64::NAN], false)]);
        assert_eq!(
            train(&with_nan, &TrainConfig::default()),
            Err(TrainError::NonFiniteFeature { row: 1 })
        );

        let ok = dataset(&[(&[1.0], true), (&[0.0], false)]);
        let bad_cfg = TrainConfig { cost: 0.0, ..Default::default() };
        assert!(matches!(train(&ok, &bad_cfg), Err(TrainError::BadConfig(_))));
    }

    #[test]
    fn decision_score_hand_values() {
        let m = LinearModel::from_parts(
            vec!["a".into(), "b".into()],
            vec![0.0, 0.0],
            0.7,
            vec![0.0, 0.0],
            vec![1.0, 1.0],
        )
        .unwrap();
        assert_eq!(m.decision_score(&[123.0, -4.0]).unwrap(), 0.7);

        let m = LinearModel::from_parts(
            vec!["a".into(), "b".into()],
            vec![1.0, 0.0],
            0.0,
            vec![0.0, 0.0],
            vec![1.0, 1.0],
        )
        .unwrap();
        assert_eq!(m.decision_score(&[2.0, 5.0]).unwrap(), 2.0);
        // monotone in a positive-weight feature
        assert!(m.decision_score(&[3.0, 5.0]).unwrap() > m.decision_score(&[2.0, 5.0]).unwrap());
        // schema mismatch
        assert!(matches!(
            m.decision_score(&[1.0]),
            Err(TrainError::SchemaMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn predict_thresholds_at_zero() {
        let m = LinearModel::from_parts(vec!["a".into()], vec![1.0], 0.0, vec![0.0], vec![1.0]).unwrap();
        assert!(m.predict(&[0.3]).unwrap());
        assert!(!m.predict(&[-0.3]).unwrap());
        assert!(!m.predict(&[0.0]).unwrap(), "score exactly 0 is class 0");
    }

    #[test]
    fn training_is_deterministic() {
        let rows: Vec<(Vec<f64>, bool)> = (0..40)
            .map(|i| {
                let x = i as f64 / 40.0;
                (vec![x, 1.0 - x], i % 3 == 0)
            })
            .collect();
        let borrowed: Vec<(&[f64], bool)> = rows.iter().map(|(r, l)| (r.as_slice(), *l)).collect();
        let data = dataset(&borrowed);
        let cfg = TrainConfig { seed: 7, ..Default::default() };
        let a = train(&data, &cfg).unwrap();
        let b = train(&data, &cfg).unwrap();
        assert_eq!(a, b);
        // and bitwise identical through serialization
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn mini_batch_mode_is_deterministic_and_learns() {
        let rows: Vec<(Vec<f64>, bool)> = (0..100)
            .map(|i| {
                let x = if i % 4 == 0 { 1.0 + (i as f64) * 1e-3 } else { -1.0 - (i as f64) * 1e-3 };
                (vec![x], i % 4 == 0)
            })
            .collect();
        let borrowed: Vec<(&[f64], bool)> = rows.iter().map(|(r, l)| (r.as_slice(), *l)).collect();
        let data = dataset(&borrowed);
        let cfg = TrainConfig {
            mini_batch: Some(16),
            epochs: 80,
            ..Default::default()
        };
        let a = train(&data, &cfg).unwrap();
        let b = train(&data, &cfg).unwrap();
        assert_eq!(a, b);
        let scores = a.scores_for(&data).unwrap();
        let r = auroc(&scores, data.labels()).unwrap();
        assert_eq!(r.auroc, 1.0);
    }

    #[test]
    fn subgradient_matches_finite_differences_off_the_kinks() {
        // 10 points, 2 features, fixed values
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rows: Vec<(Vec<f64>, bool)> = (0..10)
            .map(|i| {
                (
                    vec![rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)],
                    i % 2 == 0,
                )
            })
            .collect();
        let features: Vec<f64> = rows.iter().flat_map(|(r, _)| r.iter().copied()).collect();
        let labels: Vec<bool> = rows.iter().map(|(_, l)| *l).collect();
        let pi = vec![1.0; 10];
        let w = vec![0.37, -0.81];
        let b = 0.13;

        // verify we are away from every hinge kink
        for (i, row) in features.chunks_exact(2).enumerate() {
            let y = if labels[i] { 1.0 } else { -1.0 };
            let margin = y * (dot(&w, row) + b);
            assert!((margin - 1.0).abs() > 1e-3, "sample {i} sits on the kink");
        }

        let (gw, gb) = hinge_subgradient(&w, b, &features, &labels, &pi, 1.0);
        let eps = 1e-6;
        for j in 0..2 {
            let mut wp = w.clone();
            let mut wm = w.clone();
            wp[j] += eps;
            wm[j] -= eps;
            let num = (hinge_objective(&wp, b, &features, &labels, &pi, 1.0)
                - hinge_objective(&wm, b, &features, &labels, &pi, 1.0))
                / (2.0 * eps);
            let rel = (num - gw[j]).abs() / gw[j].abs().max(1.0);
            assert!(rel < 1e-5, "dw[{j}]: analytic {} vs numeric {num}", gw[j]);
        }
        let num_b = (hinge_objective(&w, b + eps, &features, &labels, &pi, 1.0)
            - hinge_objective(&w, b - eps, &features, &labels, &pi, 1.0))
            / (2.0 * eps);
        let rel = (num_b - gb).abs() / gb.abs().max(1.0);
        assert!(rel < 1e-5, "db: analytic {gb} vs numeric {num_b}");
    }

    #[test]
    fn imbalanced_separable_set_is_fully_ranked() {
        // 1:99 class ratio, linearly separable in one dimension
        let mut rows: Vec<(Vec<f64>, bool)> = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for i in 0..1000 {
            let pos = i % 100 == 0;
            let x = if pos {
                rng.random_range(1.0..2.0)
            } else {
                rng.random_range(-2.0..-1.0)
            };
            rows.push((vec![x], pos));
        }
        let borrowed: Vec<(&[f64], bool)> = rows.iter().map(|(r, l)| (r.as_slice(), *l)).collect();
        let data = dataset(&borrowed);
        let model = train(&data, &TrainConfig::default()).unwrap();
        let scores = model.scores_for(&data).unwrap();
        let r = auroc(&scores, data.labels()).unwrap();
        assert_eq!(r.auroc, 1.0);
        // the trivial all-negative predictor stays at chance
        let constant = vec![-1.0; data.len()];
        assert_eq!(auroc(&constant, data.labels()).unwrap().auroc, 0.5);
    }

    #[test]
    fn poly2_expansion_solves_xor() {
        let rows: Vec<(Vec<f64>, bool)> = vec![
            (vec![1.0, 1.0], true),
            (vec![-1.0, -1.0], true),
            (vec![1.0, -1.0], false),
            (vec![-1.0, 1.0], false),
        ];
        let borrowed: Vec<(&[f64], bool)> = rows.iter().map(|(r, l)| (r.as_slice(), *l)).collect();
        let data = dataset(&borrowed);
        let cfg = TrainConfig { poly2: true, epochs: 200, ..Default::default() };
        let model = train(&data, &cfg).unwrap();
        let scores = model.scores_for(&data).unwrap();
        assert_eq!(auroc(&scores, data.labels()).unwrap().auroc, 1.0);
        // ...which the plain linear model cannot do
        let linear = train(&data, &TrainConfig { epochs: 200, ..Default::default() }).unwrap();
        let scores = linear.scores_for(&data).unwrap();
        assert!(auroc(&scores, data.labels()).unwrap().auroc < 1.0);
    }

    #[test]
    fn model_json_round_trip() {
        let data = dataset(&[(&[1.0, 2.0], true), (&[-1.0, 0.5], false)]);
        let model = train(&data, &TrainConfig::default()).unwrap();
        let back = LinearModel::from_json(&model.to_json()).unwrap();
        assert_eq!(model, back);
    }

    #[test]
    fn rescaling_a_feature_column_preserves_rankings() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let rows: Vec<(Vec<f64>, bool)> = (0..60)
            .map(|_| {
                let a: f64 = rng.random_range(-3.0..3.0);
                let b: f64 = rng.random_range(-3.0..3.0);
                (vec![a, b], a + 0.3 * b + rng.random_range(-0.2..0.2) > 0.0)
            })
            .collect();
        let borrowed: Vec<(&[f64], bool)> = rows.iter().map(|(r, l)| (r.as_slice(), *l)).collect();
        let data = dataset(&borrowed);

        let scaled_rows: Vec<(Vec<f64>, bool)> = rows
            .iter()
            .map(|(r, l)| (vec![7.5 * r[0] - 2.0, r[1]], *l))
            .collect();
        let borrowed: Vec<(&[f64], bool)> = scaled_rows.iter().map(|(r, l)| (r.as_slice(), *l)).collect();
        let scaled = dataset(&borrowed);

        let cfg = TrainConfig { seed: 5, ..Default::default() };
        let m1 = train(&data, &cfg).unwrap();
        let m2 = train(&scaled, &cfg).unwrap();
        let s1 = m1.scores_for(&data).unwrap();
        let s2 = m2.scores_for(&scaled).unwrap();
        let a1 = auroc(&s1, data.labels()).unwrap().auroc;
        let a2 = auroc(&s2, scaled.labels()).unwrap().auroc;
        assert!((a1 - a2).abs() < 1e-9, "{a1} vs {a2}");
    }
}
