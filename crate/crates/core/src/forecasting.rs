//! One-step-ahead time-series forecasters and model selection between them.
//!
//! Four forecasters are supported: simple mean, moving average, weighted
//! moving average and exponential smoothing. All are convex combinations of
//! the observations they consult, so every forecast lies inside the observed
//! range.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum ForecastError {
    #[error("time series must be nonempty")]
    EmptySeries,
    #[error("time series values must be finite (offending index {0})")]
    NonFiniteValue(usize),
    #[error("moving-average window must be >= 1")]
    ZeroWindow,
    #[error("weighted moving average needs nonnegative weights summing to 1 (got sum {0})")]
    BadWeights(f64),
    #[error("smoothing coefficient must lie in [0, 1] (got {0})")]
    BadAlpha(f64),
    #[error("cannot parse forecast model spec {0:?}")]
    BadSpec(String),
}

/// Real-valued observations `A_1..A_T`, nonempty and finite.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self, ForecastError> {
        if values.is_empty() {
            return Err(ForecastError::EmptySeries);
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(ForecastError::NonFiniteValue(i));
        }
        Ok(TimeSeries { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A one-step-ahead forecaster configuration.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case", tag = "model")]
pub enum ForecastModel {
    /// Average of all available observations.
    SimpleMean,
    /// Mean of the `window` most recent observations.
    MovingAverage { window: usize },
    /// Weighted sum of the most recent observations; weights are ordered
    /// oldest to newest so the last weight multiplies the newest value.
    WeightedMovingAverage { weights: Vec<f64> },
    /// Recursive smoothing seeded with the first observation.
    ExponentialSmoothing { alpha: f64 },
}

impl ForecastModel {
    pub fn validate(&self) -> Result<(), ForecastError> {
        match self {
            ForecastModel::SimpleMean => Ok(()),
            ForecastModel::MovingAverage { window } => {
                if *window < 1 {
                    Err(ForecastError::ZeroWindow)
                } else {
                    Ok(())
                }
            }
            ForecastModel::WeightedMovingAverage { weights } => {
                let sum: f64 = weights.iter().sum();
                if weights.is_empty()
                    || weights.iter().any(|w| !w.is_finite() || *w < 0.0)
                    || (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE
                {
                    Err(ForecastError::BadWeights(sum))
                } else {
                    Ok(())
                }
            }
            ForecastModel::ExponentialSmoothing { alpha } => {
                if !alpha.is_finite() || !(0.0..=1.0).contains(alpha) {
                    Err(ForecastError::BadAlpha(*alpha))
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for ForecastModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForecastModel::SimpleMean => write!(f, "mean"),
            ForecastModel::MovingAverage { window } => write!(f, "ma:{window}"),
            ForecastModel::WeightedMovingAverage { weights } => {
                write!(f, "wma:")?;
                for (i, w) in weights.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{w}")?;
                }
                Ok(())
            }
            ForecastModel::ExponentialSmoothing { alpha } => write!(f, "ema:{alpha}"),
        }
    }
}

impl FromStr for ForecastModel {
    type Err = ForecastError;

    /// Parses config specs like `mean`, `ma:3`, `wma:0.2,0.3,0.5`, `ema:0.5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ForecastError::BadSpec(s.to_string());
        let model = match s.split_once(':') {
            None if s == "mean" => ForecastModel::SimpleMean,
            None => return Err(bad()),
            Some(("ma", arg)) => ForecastModel::MovingAverage {
                window: arg.parse().map_err(|_| bad())?,
            },
            Some(("wma", arg)) => ForecastModel::WeightedMovingAverage {
                weights: arg
                    .split(',')
                    .map(|w| w.trim().parse::<f64>().map_err(|_| bad()))
                    .collect::<Result<_, _>>()?,
            },
            Some(("ema", arg)) => ForecastModel::ExponentialSmoothing {
                alpha: arg.parse().map_err(|_| bad())?,
            },
            Some(_) => return Err(bad()),
        };
        model.validate()?;
        Ok(model)
    }
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// One-step-ahead forecast of the series under the given model.
///
/// Moving-average variants whose window exceeds the series length fall back
/// to the simple mean over the data that is available.
pub fn forecast(model: &ForecastModel, series: &TimeSeries) -> Result<f64, ForecastError> {
    model.validate()?;
    let values = series.values();
    let n = values.len();
    let out = match model {
        ForecastModel::SimpleMean => mean(values),
        ForecastModel::MovingAverage { window } => {
            if *window > n {
                mean(values)
            } else {
                mean(&values[n - window..])
            }
        }
        ForecastModel::WeightedMovingAverage { weights } => {
            if weights.len() > n {
                mean(values)
            } else {
                let tail = &values[n - weights.len()..];
                weights.iter().zip(tail).map(|(w, v)| w * v).sum()
            }
        }
        ForecastModel::ExponentialSmoothing { alpha } => {
            let mut f = values[0];
            for &a in &values[..n - 1] {
                // advance F_{t+1} = alpha*A_t + (1-alpha)*F_t, seeded F_1 = A_1
                f = alpha * a + (1.0 - alpha) * f;
            }
            alpha * values[n - 1] + (1.0 - alpha) * f
        }
    };
    Ok(out)
}

/// Default candidate grid for model selection.
pub fn default_candidates() -> Vec<ForecastModel> {
    vec![
        ForecastModel::SimpleMean,
        ForecastModel::MovingAverage { window: 2 },
        ForecastModel::MovingAverage { window: 3 },
        ForecastModel::MovingAverage { window: 5 },
        ForecastModel::WeightedMovingAverage {
            weights: vec![0.2, 0.3, 0.5],
        },
        ForecastModel::ExponentialSmoothing { alpha: 0.3 },
        ForecastModel::ExponentialSmoothing { alpha: 0.5 },
        ForecastModel::ExponentialSmoothing { alpha: 0.8 },
    ]
}

#[derive(Debug, Error)]
pub enum SelectModelError<E> {
    #[error("no candidate models supplied")]
    NoCandidates,
    #[error("scoring a candidate failed: {0}")]
    Score(#[source] E),
}

/// Pick the candidate with the highest score (ties go to the earlier
/// candidate). `score` is typically mean training AUROC of the candidate's
/// forecast-augmented classifier.
pub fn select_model<E: std::error::Error>(
    candidates: &[ForecastModel],
    mut score: impl FnMut(&ForecastModel) -> Result<f64, E>,
) -> Result<ForecastModel, SelectModelError<E>> {
    if candidates.is_empty() {
        return Err(SelectModelError::NoCandidates);
    }
    let mut best: Option<(f64, &ForecastModel)> = None;
    for candidate in candidates {
        let s = score(candidate).map_err(SelectModelError::Score)?;
        match best {
            Some((b, _)) if s <= b => {}
            _ => best = Some((s, candidate)),
        }
    }
    Ok(best.expect("nonempty candidates").1.clone())
}
