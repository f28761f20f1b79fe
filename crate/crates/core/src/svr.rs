//! Epsilon-support-vector regression trained by sequential minimal
//! optimization.
//!
//! The solver works on the dual in terms of the coefficient differences
//! `beta_i = alpha_i - alpha_i*`:
//!
//! ```text
//! maximize   -1/2 sum_ij beta_i beta_j K_ij - eps sum_i |beta_i| + sum_i y_i beta_i
//! subject to sum_i beta_i = 0,  -C <= beta_i <= C
//! ```
//!
//! Each step moves mass `t` from `beta_j` to `beta_i`, which keeps the
//! equality constraint, and picks the exact maximizer of the resulting
//! one-dimensional piecewise-quadratic objective on the feasible interval.

use std::io::{Read, Write};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::Scaler;
use crate::seed;

pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SvrError {
    #[error("need at least 2 training rows, got {0}")]
    TooFewRows(usize),
    #[error("{rows} rows but {targets} targets")]
    LengthMismatch { rows: usize, targets: usize },
    #[error("expected {expected} features, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("non-finite value in training data at row {0}")]
    NonFinite(usize),
    #[error("invalid svr config: {0}")]
    InvalidConfig(String),
    #[error("dual constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("model has no embedded scaler")]
    NoScaler,
    #[error("unsupported model format version {0}")]
    UnsupportedVersion(u32),
    #[error("model file: {0}")]
    Serde(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Kernel {
    Rbf { gamma: f64 },
    Linear,
}

impl Kernel {
    pub fn eval(&self, a: &[f64], b: &[f64]) -> f64 {
        match *self {
            Kernel::Linear => a.iter().zip(b).map(|(x, y)| x * y).sum(),
            Kernel::Rbf { gamma } => {
                let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
                (-gamma * d2).exp()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvrConfig {
    pub kernel: Kernel,
    pub c: f64,
    pub epsilon: f64,
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for SvrConfig {
    fn default() -> Self {
        SvrConfig {
            kernel: Kernel::Rbf { gamma: 1.0 / 26.0 },
            c: 10.0,
            epsilon: 0.1,
            tol: 1e-3,
            max_iter: 10_000,
            seed: 0,
        }
    }
}

impl SvrConfig {
    pub fn validate(&self) -> Result<(), SvrError> {
        let bad = |msg: String| Err(SvrError::InvalidConfig(msg));
        if !(self.c > 0.0 && self.c.is_finite()) {
            return bad(format!("C must be positive and finite, got {}", self.c));
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return bad(format!("epsilon must be >= 0, got {}", self.epsilon));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        if self.max_iter == 0 {
            return bad("max_iter must be positive".into());
        }
        if let Kernel::Rbf { gamma } = self.kernel {
            if !(gamma > 0.0 && gamma.is_finite()) {
                return bad(format!("gamma must be positive, got {gamma}"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainDiagnostics {
    /// Full sweeps over the shuffled index order.
    pub iterations: usize,
    pub dual_objective: f64,
    /// Points whose KKT condition is violated by more than `tol` at exit.
    pub kkt_violations: usize,
    pub converged: bool,
}

/// A trained regressor. Only points with nonzero `beta` are retained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvrModel {
    pub config: SvrConfig,
    pub scaler: Option<Scaler>,
    pub support_rows: Vec<Vec<f64>>,
    pub beta: Vec<f64>,
    pub bias: f64,
    pub dim: usize,
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format_version: u32,
    #[serde(flatten)]
    model: SvrModel,
}

impl SvrModel {
    pub fn with_scaler(mut self, scaler: Scaler) -> Self {
        self.scaler = Some(scaler);
        self
    }

    /// Decision function on an already standardized row.
    pub fn predict(&self, x: &[f64]) -> Result<f64, SvrError> {
        if x.len() != self.dim {
            return Err(SvrError::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let kernel = self.config.kernel;
        Ok(self
            .support_rows
            .iter()
            .zip(&self.beta)
            .map(|(sv, b)| b * kernel.eval(sv, x))
            .sum::<f64>()
            + self.bias)
    }

    /// Standardizes a raw row with the embedded scaler, then predicts.
    pub fn predict_raw(&self, raw: &[f64]) -> Result<f64, SvrError> {
        let scaler = self.scaler.as_ref().ok_or(SvrError::NoScaler)?;
        if raw.len() != scaler.means.len() {
            return Err(SvrError::DimensionMismatch {
                expected: scaler.means.len(),
                got: raw.len(),
            });
        }
        self.predict(&scaler.transform(raw))
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<(), SvrError> {
        serde_json::to_writer_pretty(
            out,
            &ModelFile {
                format_version: MODEL_FORMAT_VERSION,
                model: self.clone(),
            },
        )?;
        Ok(())
    }

    pub fn read_json<R: Read>(input: R) -> Result<SvrModel, SvrError> {
        let file: ModelFile = serde_json::from_reader(input)?;
        if file.format_version != MODEL_FORMAT_VERSION {
            return Err(SvrError::UnsupportedVersion(file.format_version));
        }
        Ok(file.model)
    }
}

/// Value of the dual objective at `beta`.
pub fn dual_objective(x: &[Vec<f64>], y: &[f64], beta: &[f64], cfg: &SvrConfig) -> Result<f64, SvrError> {
    if x.len() != y.len() || beta.len() != y.len() {
        return Err(SvrError::LengthMismatch {
            rows: x.len(),
            targets: y.len(),
        });
    }
    if let Some((i, b)) = beta.iter().enumerate().find(|(_, b)| b.abs() > cfg.c + 1e-9) {
        return Err(SvrError::ConstraintViolation(format!("|beta_{i}| = {} exceeds C = {}", b.abs(), cfg.c)));
    }
    let sum: f64 = beta.iter().sum();
    if sum.abs() > 1e-6 {
        return Err(SvrError::ConstraintViolation(format!("sum(beta) = {sum}")));
    }
    let mut quad = 0.0;
    for i in 0..x.len() {
        if beta[i] == 0.0 {
            continue;
        }
        for j in 0..x.len() {
            quad += beta[i] * beta[j] * cfg.kernel.eval(&x[i], &x[j]);
        }
    }
    let linear: f64 = beta.iter().zip(y).map(|(b, t)| b * t).sum();
    let l1: f64 = beta.iter().map(|b| b.abs()).sum();
    Ok(-0.5 * quad - cfg.epsilon * l1 + linear)
}

struct Solver<'a> {
    n: usize,
    gram: Vec<f64>,
    beta: Vec<f64>,
    /// `y_i - sum_j K_ij beta_j`
    grad: Vec<f64>,
    y: &'a [f64],
    c: f64,
    eps: f64,
}

impl Solver<'_> {
    fn k(&self, i: usize, j: usize) -> f64 {
        self.gram[i * self.n + j]
    }

    /// Objective slope when `beta_i` increases, or `-inf` at the upper bound.
    fn up(&self, i: usize) -> f64 {
        let b = self.beta[i];
        if b >= self.c {
            f64::NEG_INFINITY
        } else if b >= 0.0 {
            self.grad[i] - self.eps
        } else {
            self.grad[i] + self.eps
        }
    }

    /// Objective slope given up when `beta_j` decreases, or `+inf` at the lower bound.
    fn down(&self, j: usize) -> f64 {
        let b = self.beta[j];
        if b <= -self.c {
            f64::INFINITY
        } else if b <= 0.0 {
            self.grad[j] + self.eps
        } else {
            self.grad[j] - self.eps
        }
    }

    fn gain(&self, i: usize, j: usize, eta: f64, t: f64) -> f64 {
        let (bi, bj) = (self.beta[i], self.beta[j]);
        t * (self.grad[i] - self.grad[j]) - 0.5 * eta * t * t - self.eps * ((bi + t).abs() - bi.abs())
            - self.eps * ((bj - t).abs() - bj.abs())
    }

    /// Moves the optimal amount from `beta_j` to `beta_i`. Returns whether the
    /// objective strictly increased.
    fn step(&mut self, i: usize, j: usize) -> bool {
        let (bi, bj) = (self.beta[i], self.beta[j]);
        let lo = (-self.c - bi).max(bj - self.c);
        let hi = (self.c - bi).min(bj + self.c);
        if hi <= lo {
            return false;
        }
        let eta = (self.k(i, i) + self.k(j, j) - 2.0 * self.k(i, j)).max(0.0);

        let mut knots = vec![lo, hi];
        for bp in [-bi, bj] {
            if bp > lo && bp < hi {
                knots.push(bp);
            }
        }
        knots.sort_by(f64::total_cmp);
        knots.dedup();

        let mut best_t = 0.0;
        let mut best_gain = 0.0;
        for seg in knots.windows(2) {
            let (a, b) = (seg[0], seg[1]);
            let mid = 0.5 * (a + b);
            let si = (bi + mid).signum();
            let sj = (bj - mid).signum();
            let lin = self.grad[i] - self.grad[j] - self.eps * si + self.eps * sj;
            let candidates = if eta > 1e-12 {
                [(lin / eta).clamp(a, b), a, b]
            } else {
                [a, b, b]
            };
            for t in candidates {
                let g = self.gain(i, j, eta, t);
                if g > best_gain {
                    best_gain = g;
                    best_t = t;
                }
            }
        }
        if best_t == 0.0 || best_gain <= 0.0 {
            return false;
        }
        let t = best_t;
        self.beta[i] = (bi + t).clamp(-self.c, self.c);
        self.beta[j] = (bj - t).clamp(-self.c, self.c);
        let (di, dj) = (self.beta[i] - bi, bj - self.beta[j]);
        for k in 0..self.n {
            self.grad[k] -= di * self.k(k, i) - dj * self.k(k, j);
        }
        true
    }

    fn max_up_min_down(&self) -> (f64, f64) {
        let max_up = (0..self.n).map(|i| self.up(i)).fold(f64::NEG_INFINITY, f64::max);
        let min_down = (0..self.n).map(|j| self.down(j)).fold(f64::INFINITY, f64::min);
        (max_up, min_down)
    }

    fn kkt_violations(&self, tol: f64) -> usize {
        let (max_up, min_down) = self.max_up_min_down();
        (0..self.n)
            .filter(|&i| self.up(i) > min_down + tol || self.down(i) < max_up - tol)
            .count()
    }

    fn bias(&self) -> f64 {
        let interior: Vec<f64> = (0..self.n)
            .filter(|&i| self.beta[i] != 0.0 && self.beta[i].abs() < self.c)
            .map(|i| self.grad[i] - self.eps * self.beta[i].signum())
            .collect();
        if !interior.is_empty() {
            return interior.iter().sum::<f64>() / interior.len() as f64;
        }
        let (lower, upper) = self.max_up_min_down();
        match (lower.is_finite(), upper.is_finite()) {
            (true, true) => 0.5 * (lower + upper),
            (true, false) => lower,
            (false, true) => upper,
            (false, false) => 0.0,
        }
    }

    fn objective(&self) -> f64 {
        // sum_i beta_i (y_i + grad_i) / 2 == -1/2 b'Kb + y'b
        let smooth: f64 = (0..self.n).map(|i| 0.5 * self.beta[i] * (self.y[i] + self.grad[i])).sum();
        smooth - self.eps * self.beta.iter().map(|b| b.abs()).sum::<f64>()
    }
}

fn check_inputs(x: &[Vec<f64>], y: &[f64]) -> Result<usize, SvrError> {
    if x.len() != y.len() {
        return Err(SvrError::LengthMismatch {
            rows: x.len(),
            targets: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(SvrError::TooFewRows(x.len()));
    }
    let dim = x[0].len();
    for (i, row) in x.iter().enumerate() {
        if row.len() != dim {
            return Err(SvrError::DimensionMismatch { expected: dim, got: row.len() });
        }
        if !row.iter().all(|v| v.is_finite()) || !y[i].is_finite() {
            return Err(SvrError::NonFinite(i));
        }
    }
    Ok(dim)
}

/// Trains on standardized rows `x` with targets `y`.
pub fn train_svr(x: &[Vec<f64>], y: &[f64], cfg: &SvrConfig) -> Result<(SvrModel, TrainDiagnostics), SvrError> {
    train_observed(x, y, cfg, |_| {})
}

/// As [`train_svr`], calling `observe` with the coefficient vector after every
/// accepted pair update.
pub(crate) fn train_observed<F>(
    x: &[Vec<f64>],
    y: &[f64],
    cfg: &SvrConfig,
    mut observe: F,
) -> Result<(SvrModel, TrainDiagnostics), SvrError>
where
    F: FnMut(&[f64]),
{
    cfg.validate()?;
    let dim = check_inputs(x, y)?;
    let n = x.len();
    let mut gram = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = cfg.kernel.eval(&x[i], &x[j]);
            gram[i * n + j] = v;
            gram[j * n + i] = v;
        }
    }
    let mut s = Solver {
        n,
        gram,
        beta: vec![0.0; n],
        grad: y.to_vec(),
        y,
        c: cfg.c,
        eps: cfg.epsilon,
    };

    let mut rng = seed::rng(seed::derive(cfg.seed, "svr.smo"));
    let mut order: Vec<usize> = (0..n).collect();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iter {
        let (max_up, min_down) = s.max_up_min_down();
        if max_up - min_down <= cfg.tol {
            converged = true;
            break;
        }
        order.shuffle(&mut rng);
        iterations += 1;
        let mut changed = 0usize;
        for a in 0..n {
            let i = order[a];
            for &j in &order {
                if i == j || s.up(i) - s.down(j) <= cfg.tol {
                    continue;
                }
                if s.step(i, j) {
                    changed += 1;
                    observe(&s.beta);
                }
            }
        }
        if changed == 0 {
            break;
        }
    }
    if !converged {
        let (max_up, min_down) = s.max_up_min_down();
        converged = max_up - min_down <= cfg.tol;
    }

    let diagnostics = TrainDiagnostics {
        iterations,
        dual_objective: s.objective(),
        kkt_violations: s.kkt_violations(cfg.tol),
        converged,
    };
    let bias = s.bias();
    let (support_rows, beta) = x
        .iter()
        .zip(&s.beta)
        .filter(|(_, b)| **b != 0.0)
        .map(|(row, b)| (row.clone(), *b))
        .unzip();
    Ok((
        SvrModel {
            config: *cfg,
            scaler: None,
            support_rows,
            beta,
            bias,
            dim,
        },
        diagnostics,
    ))
}

/// Full coefficient vector (zeros included) for the training rows, in order.
/// Useful for checking a model against [`dual_objective`].
pub fn full_beta(model: &SvrModel, x: &[Vec<f64>]) -> Vec<f64> {
    let mut used = vec![false; model.support_rows.len()];
    x.iter()
        .map(|row| {
            model
                .support_rows
                .iter()
                .enumerate()
                .find(|(k, sv)| !used[*k] && *sv == row)
                .map(|(k, _)| {
                    used[k] = true;
                    model.beta[k]
                })
                .unwrap_or(0.0)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn linear(c: f64, epsilon: f64) -> SvrConfig {
        SvrConfig {
            kernel: Kernel::Linear,
            c,
            epsilon,
            ..SvrConfig::default()
        }
    }

    #[test]
    fn two_points_linear() {
        let x = vec![vec![0.0], vec![1.0]];
        let y = vec![0.0, 1.0];
        let (m, d) = train_svr(&x, &y, &linear(1e3, 0.0)).unwrap();
        assert!(d.converged);
        assert!((m.predict(&[0.0]).unwrap() - 0.0).abs() < 1e-3);
        assert!((m.predict(&[1.0]).unwrap() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn wide_tube_gives_zero_dual() {
        let x: Vec<Vec<f64>> = (0..6).map(|i| vec![i as f64, (i * i) as f64]).collect();
        let y = vec![1.0, 1.4, 0.7, 1.9, 1.2, 1.5];
        let cfg = SvrConfig {
            epsilon: 1.2,
            ..SvrConfig::default()
        };
        let (m, _) = train_svr(&x, &y, &cfg).unwrap();
        assert!(m.beta.is_empty());
        for row in &x {
            let p = m.predict(row).unwrap();
            assert!((0.7..=1.9).contains(&p));
        }
    }

    #[test]
    fn zero_model_predicts_bias() {
        let m = SvrModel {
            config: SvrConfig::default(),
            scaler: None,
            support_rows: vec![],
            beta: vec![],
            bias: 2.5,
            dim: 3,
        };
        assert_eq!(m.predict(&[1.0, -4.0, 9.0]).unwrap(), 2.5);
        assert!(matches!(m.predict(&[1.0]), Err(SvrError::DimensionMismatch { .. })));
        assert!(matches!(m.predict_raw(&[1.0, 2.0, 3.0]), Err(SvrError::NoScaler)));
    }

    #[test]
    fn dual_objective_cases() {
        let x = vec![vec![0.0], vec![1.0]];
        let y = vec![0.0, 1.0];
        let cfg = linear(2.0, 0.1);
        assert_eq!(dual_objective(&x, &y, &[0.0, 0.0], &cfg).unwrap(), 0.0);
        // beta = (t, -t), K = [[0,0],[0,1]]: -t^2/2 - 0.2 t - t at t = -C/2 = -1
        let t: f64 = -1.0;
        let expected = -0.5 * t * t - 0.1 * 2.0 * t.abs() + (0.0 * t + 1.0 * -t);
        assert!((dual_objective(&x, &y, &[t, -t], &cfg).unwrap() - expected).abs() < 1e-12);
        assert!(dual_objective(&x, &y, &[3.0, -3.0], &cfg).is_err());
        assert!(dual_objective(&x, &y, &[1.0, 0.0], &cfg).is_err());
    }

    #[test]
    fn rejects_bad_input() {
        let cfg = SvrConfig::default();
        assert!(matches!(train_svr(&[vec![1.0]], &[1.0], &cfg), Err(SvrError::TooFewRows(1))));
        assert!(matches!(
            train_svr(&[vec![1.0], vec![f64::NAN]], &[1.0, 2.0], &cfg),
            Err(SvrError::NonFinite(1))
        ));
        let bad = SvrConfig { c: 0.0, ..cfg };
        assert!(matches!(train_svr(&[vec![1.0], vec![2.0]], &[1.0, 2.0], &bad), Err(SvrError::InvalidConfig(_))));
    }

    #[test]
    fn fits_a_line() {
        let x: Vec<Vec<f64>> = (0..50).map(|i| vec![-1.0 + 2.0 * i as f64 / 49.0]).collect();
        let y: Vec<f64> = x.iter().map(|r| 2.0 * r[0] + 1.0).collect();
        let (m, _) = train_svr(&x, &y, &linear(10.0, 0.1)).unwrap();
        for (row, t) in x.iter().zip(&y) {
            assert!((m.predict(row).unwrap() - t).abs() <= 0.1 + 0.05);
        }
    }

    #[test]
    fn rbf_predictions_are_finite() {
        let x = vec![vec![0.0, 0.0], vec![10.0, 10.0], vec![10.1, 10.0]];
        let y = vec![5.0, 0.0, 0.1];
        let (m, _) = train_svr(&x, &y, &SvrConfig::default()).unwrap();
        for q in [[0.0, 0.0], [1e6, -1e6], [10.0, 10.0]] {
            assert!(m.predict(&q).unwrap().is_finite());
        }
    }

    #[test]
    fn model_json_round_trip_is_exact() {
        let mut rng = seed::rng(4);
        let x: Vec<Vec<f64>> = (0..20).map(|_| (0..3).map(|_| rng.random_range(-2.0..2.0)).collect()).collect();
        let y: Vec<f64> = x.iter().map(|r| r[0].sin() + r[1]).collect();
        let (m, _) = train_svr(&x, &y, &SvrConfig::default()).unwrap();
        let m = m.with_scaler(Scaler { means: vec![0.1, 0.2, 0.3], sds: vec![1.0, 2.0, 0.0] });
        let mut buf = Vec::new();
        m.write_json(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.contains("\"format_version\": 1"));
        let back = SvrModel::read_json(buf.as_slice()).unwrap();
        assert_eq!(back, m);
        let bumped = text.replace("\"format_version\": 1", "\"format_version\": 9");
        assert!(matches!(SvrModel::read_json(bumped.as_bytes()), Err(SvrError::UnsupportedVersion(9))));
    }

    fn random_instance(seed: u64, n: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
        let mut rng = seed::rng(seed);
        let x: Vec<Vec<f64>> = (0..n).map(|_| (0..2).map(|_| rng.random_range(-1.5..1.5)).collect()).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        (x, y)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn feasible_and_monotone_during_training(seed in any::<u64>(), n in 2usize..12, rbf in any::<bool>()) {
            let (x, y) = random_instance(seed, n);
            let cfg = SvrConfig {
                kernel: if rbf { Kernel::Rbf { gamma: 0.7 } } else { Kernel::Linear },
                c: 1.5,
                epsilon: 0.05,
                ..SvrConfig::default()
            };
            let mut last = 0.0;
            let mut trace_ok = true;
            let (m, d) = train_observed(&x, &y, &cfg, |beta| {
                let sum: f64 = beta.iter().sum();
                let obj = dual_objective(&x, &y, beta, &cfg).unwrap();
                trace_ok &= sum.abs() <= 1e-6 && beta.iter().all(|b| b.abs() <= cfg.c + 1e-9);
                trace_ok &= obj >= last - 1e-12;
                last = obj;
            }).unwrap();
            prop_assert!(trace_ok);
            prop_assert!(d.iterations <= cfg.max_iter);
            let beta = full_beta(&m, &x);
            let obj = dual_objective(&x, &y, &beta, &cfg).unwrap();
            prop_assert!((obj - d.dual_objective).abs() < 1e-9);
            prop_assert!(obj >= 0.0);
        }

        #[test]
        fn training_is_deterministic(seed in any::<u64>()) {
            let (x, y) = random_instance(seed, 10);
            let a = train_svr(&x, &y, &SvrConfig::default()).unwrap();
            let b = train_svr(&x, &y, &SvrConfig::default()).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn interior_points_sit_on_the_tube(seed in any::<u64>()) {
            let (x, y) = random_instance(seed, 8);
            let cfg = SvrConfig { kernel: Kernel::Rbf { gamma: 0.5 }, c: 100.0, epsilon: 0.0, ..SvrConfig::default() };
            let (m, _) = train_svr(&x, &y, &cfg).unwrap();
            for (sv, b) in m.support_rows.iter().zip(&m.beta) {
                if b.abs() < cfg.c {
                    let k = x.iter().position(|r| r == sv).unwrap();
                    prop_assert!((m.predict(sv).unwrap() - y[k]).abs() <= cfg.epsilon + 2.0 * cfg.tol);
                }
            }
        }
    }
}
