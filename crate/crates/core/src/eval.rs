//! Metrics and the three evaluation protocols.
//!
//! All protocols refit the scaler and the regressor on the training rows of
//! each unit (fold, top-k split or held-out category) so no held-out value
//! reaches the model that predicts it. Units are processed in parallel and
//! assembled in canonical order.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::AwardCategory;
use crate::features::{Feature, FeatureError, FeatureGroup, FeatureMatrix, Scaler};
use crate::seed;
use crate::svr::{train_svr, Kernel, SvrConfig, SvrError};

/// Table 3 row set, ascending.
pub const DEFAULT_TOPK: [usize; 6] = [3, 5, 10, 20, 50, 100];

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least {needed} values, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("{0} vector is constant; correlation undefined")]
    Constant(&'static str),
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Feature(#[from] FeatureError),
    #[error(transparent)]
    Svr(#[from] SvrError),
    #[error("k = {k} is out of range for {n} books")]
    BadK { k: usize, n: usize },
    #[error("category {0} has no books")]
    EmptyCategory(AwardCategory),
    #[error("{unit}: {source}")]
    Unit {
        unit: String,
        #[source]
        source: Box<EvalError>,
    },
}

/// Sample Pearson correlation.
pub fn pearson_r(a: &[f64], b: &[f64]) -> Result<f64, MetricError> {
    if a.len() != b.len() {
        return Err(MetricError::LengthMismatch(a.len(), b.len()));
    }
    if a.len() < 2 {
        return Err(MetricError::TooShort { needed: 2, got: a.len() });
    }
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 {
        return Err(MetricError::Constant("first"));
    }
    if sbb == 0.0 {
        return Err(MetricError::Constant("second"));
    }
    Ok((sab / (saa.sqrt() * sbb.sqrt())).clamp(-1.0, 1.0))
}

pub fn rmse(truth: &[f64], pred: &[f64]) -> Result<f64, MetricError> {
    if truth.len() != pred.len() {
        return Err(MetricError::LengthMismatch(truth.len(), pred.len()));
    }
    if truth.is_empty() {
        return Err(MetricError::TooShort { needed: 1, got: 0 });
    }
    let mse = truth.iter().zip(pred).map(|(t, p)| (t - p).powi(2)).sum::<f64>() / truth.len() as f64;
    Ok(mse.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureGroupSelector {
    All,
    Engagement,
    Author,
}

impl FeatureGroupSelector {
    pub fn features(self) -> Vec<Feature> {
        match self {
            FeatureGroupSelector::All => Feature::ALL.to_vec(),
            FeatureGroupSelector::Engagement => Feature::in_group(FeatureGroup::Engagement),
            FeatureGroupSelector::Author => Feature::in_group(FeatureGroup::Author),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FeatureGroupSelector::All => "all",
            FeatureGroupSelector::Engagement => "engagement",
            FeatureGroupSelector::Author => "author",
        }
    }
}

impl FromStr for FeatureGroupSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(FeatureGroupSelector::All),
            "engagement" => Ok(FeatureGroupSelector::Engagement),
            "author" => Ok(FeatureGroupSelector::Author),
            other => Err(format!("unknown selector {other:?} (expected all|engagement|author)")),
        }
    }
}

/// Seeded assignment of rows to `k` folds of near-equal size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldAssignment {
    pub k: usize,
    pub seed: u64,
    pub folds: Vec<usize>,
}

impl FoldAssignment {
    pub fn new(n: usize, k: usize, seed: u64) -> Result<Self, EvalError> {
        if k < 2 || k > n {
            return Err(EvalError::BadK { k, n });
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut seed::rng(seed::derive(seed, "eval.folds")));
        let mut folds = vec![0; n];
        for (pos, &row) in order.iter().enumerate() {
            folds[row] = pos % k;
        }
        Ok(FoldAssignment { k, seed, folds })
    }

    pub fn split(&self, fold: usize) -> (Vec<usize>, Vec<usize>) {
        (0..self.folds.len()).partition(|&i| self.folds[i] != fold)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRow {
    pub book_id: String,
    pub category: AwardCategory,
    pub truth: f64,
    pub predicted: f64,
    /// Fold index (`fold-3`) or holdout label (`top-10`, `heldout`).
    pub tag: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalSettings {
    pub svr: SvrConfig,
    pub selector: FeatureGroupSelector,
    pub seed: u64,
    /// Pick C and gamma per unit by inner 3-fold CV on the training rows.
    pub grid_search: bool,
}

impl EvalSettings {
    pub fn new(svr: SvrConfig, selector: FeatureGroupSelector, seed: u64) -> Self {
        EvalSettings {
            svr,
            selector,
            seed,
            grid_search: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub protocol: String,
    /// Unit label: `pooled`, `top 10`, or a category name.
    pub unit: String,
    pub rows: Vec<PredictionRow>,
    pub pearson_r: f64,
    pub rmse: f64,
    pub settings: EvalSettings,
}

impl EvalReport {
    fn build(protocol: &str, unit: String, rows: Vec<PredictionRow>, settings: &EvalSettings) -> Result<Self, EvalError> {
        let (pearson_r, rmse) = metrics_of(&rows)?;
        Ok(EvalReport {
            protocol: protocol.to_string(),
            unit,
            rows,
            pearson_r,
            rmse,
            settings: settings.clone(),
        })
    }

    /// Recomputes `(r, rmse)` from the per-book rows.
    pub fn recompute(&self) -> Result<(f64, f64), MetricError> {
        metrics_of(&self.rows)
    }

    /// Whether the stored metrics match the rows within `tol`.
    pub fn verify(&self, tol: f64) -> bool {
        match self.recompute() {
            Ok((r, e)) => (r - self.pearson_r).abs() <= tol && (e - self.rmse).abs() <= tol,
            Err(_) => false,
        }
    }
}

fn metrics_of(rows: &[PredictionRow]) -> Result<(f64, f64), MetricError> {
    let truth: Vec<f64> = rows.iter().map(|r| r.truth).collect();
    let pred: Vec<f64> = rows.iter().map(|r| r.predicted).collect();
    let r = pearson_r(&truth, &pred).map_err(|e| match e {
        MetricError::Constant("second") => MetricError::Constant("prediction"),
        MetricError::Constant(_) => MetricError::Constant("truth"),
        other => other,
    })?;
    Ok((r, rmse(&truth, &pred)?))
}

/// Fits the scaler and regressor on `train`, returns predictions for `test`.
pub fn fit_predict(
    matrix: &FeatureMatrix,
    train: &[usize],
    test: &[usize],
    settings: &EvalSettings,
) -> Result<Vec<f64>, EvalError> {
    let scaler = Scaler::fit(matrix, train)?;
    let x: Vec<Vec<f64>> = train.iter().map(|&i| scaler.transform(&matrix.rows[i])).collect();
    let y: Vec<f64> = train.iter().map(|&i| matrix.targets[i]).collect();
    let cfg = if settings.grid_search {
        grid_search(&x, &y, &settings.svr, settings.seed)?
    } else {
        settings.svr
    };
    let (model, _) = train_svr(&x, &y, &cfg)?;
    let model = model.with_scaler(scaler);
    test.iter()
        .map(|&i| model.predict_raw(&matrix.rows[i]).map_err(EvalError::from))
        .collect()
}

/// Chooses C in {1, 10, 100} and, for RBF, gamma in {0.01, 1/d, 0.1} by
/// lowest pooled inner 3-fold RMSE. Ties keep the earlier grid point.
pub fn grid_search(x: &[Vec<f64>], y: &[f64], base: &SvrConfig, seed: u64) -> Result<SvrConfig, EvalError> {
    let d = x.first().map_or(1, Vec::len).max(1) as f64;
    let kernels: Vec<Kernel> = match base.kernel {
        Kernel::Linear => vec![Kernel::Linear],
        Kernel::Rbf { .. } => [0.01, 1.0 / d, 0.1].iter().map(|&gamma| Kernel::Rbf { gamma }).collect(),
    };
    let folds = FoldAssignment::new(x.len(), 3.min(x.len()), seed::derive(seed, "eval.grid"))?;
    let mut best: Option<(f64, SvrConfig)> = None;
    for c in [1.0, 10.0, 100.0] {
        for &kernel in &kernels {
            let cfg = SvrConfig { c, kernel, ..*base };
            let mut truth = Vec::with_capacity(x.len());
            let mut pred = Vec::with_capacity(x.len());
            for f in 0..folds.k {
                let (tr, te) = folds.split(f);
                let xs: Vec<Vec<f64>> = tr.iter().map(|&i| x[i].clone()).collect();
                let ys: Vec<f64> = tr.iter().map(|&i| y[i]).collect();
                let (m, _) = train_svr(&xs, &ys, &cfg)?;
                for &i in &te {
                    truth.push(y[i]);
                    pred.push(m.predict(&x[i])?);
                }
            }
            let score = rmse(&truth, &pred)?;
            if best.as_ref().is_none_or(|(s, _)| score < *s) {
                best = Some((score, cfg));
            }
        }
    }
    Ok(best.expect("grid is nonempty").1)
}

fn rows_for(matrix: &FeatureMatrix, idx: &[usize], preds: &[f64], tag: &dyn Fn(usize) -> String) -> Vec<PredictionRow> {
    idx.iter()
        .zip(preds)
        .map(|(&i, &p)| PredictionRow {
            book_id: matrix.book_ids[i].clone(),
            category: matrix.categories[i],
            truth: matrix.targets[i],
            predicted: p,
            tag: tag(i),
        })
        .collect()
}

/// Pooled k-fold cross-validation: one r and RMSE over all out-of-fold
/// predictions. Rows of the report follow the matrix row order.
pub fn run_cv_with(matrix: &FeatureMatrix, settings: &EvalSettings, k: usize) -> Result<EvalReport, EvalError> {
    let m = matrix.select(&settings.selector.features());
    let folds = FoldAssignment::new(m.n_rows(), k, settings.seed)?;
    let per_fold: Vec<(Vec<usize>, Vec<f64>)> = (0..k)
        .into_par_iter()
        .map(|f| {
            let (train, test) = folds.split(f);
            let preds = fit_predict(&m, &train, &test, settings).map_err(|e| EvalError::Unit {
                unit: format!("fold {f}"),
                source: Box::new(e),
            })?;
            Ok((test, preds))
        })
        .collect::<Result<_, EvalError>>()?;
    let mut pred = vec![f64::NAN; m.n_rows()];
    for (test, preds) in &per_fold {
        for (&i, &p) in test.iter().zip(preds) {
            pred[i] = p;
        }
    }
    let all: Vec<usize> = (0..m.n_rows()).collect();
    let rows = rows_for(&m, &all, &pred, &|i| format!("fold-{}", folds.folds[i]));
    EvalReport::build("cv", "pooled".into(), rows, settings)
}

pub fn run_cv(
    matrix: &FeatureMatrix,
    cfg: &SvrConfig,
    selector: FeatureGroupSelector,
    k: usize,
    seed: u64,
) -> Result<EvalReport, EvalError> {
    run_cv_with(matrix, &EvalSettings::new(*cfg, selector, seed), k)
}

/// Row indices sorted by true votes, most voted first; ties by book id.
pub fn by_votes_descending(matrix: &FeatureMatrix) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..matrix.n_rows()).collect();
    idx.sort_by(|&a, &b| {
        matrix.targets[b]
            .total_cmp(&matrix.targets[a])
            .then_with(|| matrix.book_ids[a].cmp(&matrix.book_ids[b]))
    });
    idx
}

/// For each k, trains on all but the k most-voted books and evaluates on
/// those k. Reports come back in ascending k.
pub fn run_topk_with(matrix: &FeatureMatrix, settings: &EvalSettings, ks: &[usize]) -> Result<Vec<EvalReport>, EvalError> {
    let m = matrix.select(&settings.selector.features());
    let n = m.n_rows();
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    if let Some(&k) = ks.iter().find(|&&k| k < 2 || k >= n) {
        return Err(EvalError::BadK { k, n });
    }
    let ranked = by_votes_descending(&m);
    ks.par_iter()
        .map(|&k| {
            let (test, train) = ranked.split_at(k);
            let unit = format!("top {k}");
            let preds = fit_predict(&m, train, test, settings).map_err(|e| EvalError::Unit {
                unit: unit.clone(),
                source: Box::new(e),
            })?;
            let tag = format!("top-{k}");
            let rows = rows_for(&m, test, &preds, &|_| tag.clone());
            EvalReport::build("topk", unit.clone(), rows, settings).map_err(|e| EvalError::Unit {
                unit,
                source: Box::new(e),
            })
        })
        .collect()
}

pub fn run_topk(matrix: &FeatureMatrix, cfg: &SvrConfig, ks: &[usize], seed: u64) -> Result<Vec<EvalReport>, EvalError> {
    run_topk_with(matrix, &EvalSettings::new(*cfg, FeatureGroupSelector::All, seed), ks)
}

/// Leave-one-category-out: one report per award category, in listing order.
pub fn run_category_holdout_with(matrix: &FeatureMatrix, settings: &EvalSettings) -> Result<Vec<EvalReport>, EvalError> {
    let m = matrix.select(&settings.selector.features());
    if let Some(&empty) = AwardCategory::ALL.iter().find(|c| !m.categories.contains(c)) {
        return Err(EvalError::EmptyCategory(empty));
    }
    AwardCategory::ALL
        .par_iter()
        .map(|&cat| {
            let (test, train): (Vec<usize>, Vec<usize>) = (0..m.n_rows()).partition(|&i| m.categories[i] == cat);
            let unit = cat.name().to_string();
            let wrap = |e: EvalError| EvalError::Unit {
                unit: unit.clone(),
                source: Box::new(e),
            };
            let preds = fit_predict(&m, &train, &test, settings).map_err(wrap)?;
            let rows = rows_for(&m, &test, &preds, &|_| "heldout".to_string());
            EvalReport::build("category", unit.clone(), rows, settings).map_err(wrap)
        })
        .collect()
}

pub fn run_category_holdout(matrix: &FeatureMatrix, cfg: &SvrConfig, seed: u64) -> Result<Vec<EvalReport>, EvalError> {
    run_category_holdout_with(matrix, &EvalSettings::new(*cfg, FeatureGroupSelector::All, seed))
}

/// Aligned text table with one row per report: label, r, RMSE (2 decimals).
pub fn format_table(title: &str, label_header: &str, reports: &[EvalReport]) -> String {
    let width = reports
        .iter()
        .map(|r| r.unit.chars().count())
        .chain([label_header.chars().count()])
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    let _ = writeln!(out, "{:<width$}  {:>6}  {:>6}  {:>5}", label_header, "r", "RMSE", "n");
    let _ = writeln!(out, "{}", "-".repeat(width + 25));
    for r in reports {
        let _ = writeln!(
            out,
            "{:<width$}  {:>6.2}  {:>6.2}  {:>5}",
            r.unit,
            r.pearson_r,
            r.rmse,
            r.rows.len()
        );
    }
    out
}
