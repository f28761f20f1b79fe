//! RReliefF feature ranking for a continuous target.
//!
//! For every sampled instance the k nearest neighbours (Manhattan distance on
//! min-max normalized attributes) contribute, with rank weight
//! `exp(-(rank / sigma)^2)` normalized over the k neighbours, to three
//! accumulators: target-difference mass `N_dC`, attribute-difference mass
//! `N_dA[a]` and joint mass `N_dCdA[a]`. The weight of attribute `a` is
//!
//! ```text
//! W[a] = N_dCdA[a] / N_dC - (N_dA[a] - N_dCdA[a]) / (m - N_dC)
//! ```

use std::io::Write;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::{format_sig9, FeatureMatrix};
use crate::seed;

#[derive(Debug, Error)]
pub enum ReliefError {
    #[error("need at least k_neighbors + 1 = {needed} instances, got {got}")]
    TooFewInstances { needed: usize, got: usize },
    #[error("target is constant; RReliefF needs a nonzero target range")]
    ZeroTargetRange,
    #[error("degenerate neighbourhoods: {0} is zero")]
    ZeroDenominator(&'static str),
    #[error("invalid relief config: {0}")]
    InvalidConfig(String),
    #[error("top-k needs 1 <= k <= {max}, got {k}")]
    KOutOfRange { k: usize, max: usize },
    #[error("{rows} rows but {targets} targets")]
    LengthMismatch { rows: usize, targets: usize },
    #[error("non-finite value at row {0}")]
    NonFinite(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleCount {
    All,
    Count(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReliefConfig {
    pub k_neighbors: usize,
    pub m_samples: SampleCount,
    pub sigma_rank: f64,
    pub seed: u64,
}

impl Default for ReliefConfig {
    fn default() -> Self {
        ReliefConfig {
            k_neighbors: 10,
            m_samples: SampleCount::All,
            sigma_rank: 20.0,
            seed: 0,
        }
    }
}

impl ReliefConfig {
    pub fn validate(&self) -> Result<(), ReliefError> {
        if self.k_neighbors == 0 {
            return Err(ReliefError::InvalidConfig("k_neighbors must be positive".into()));
        }
        if !(self.sigma_rank > 0.0 && self.sigma_rank.is_finite()) {
            return Err(ReliefError::InvalidConfig(format!(
                "sigma_rank must be positive, got {}",
                self.sigma_rank
            )));
        }
        if self.m_samples == SampleCount::Count(0) {
            return Err(ReliefError::InvalidConfig("m_samples must be positive".into()));
        }
        Ok(())
    }
}

/// Per-feature weights and the induced order (descending weight, ties by
/// column position).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRanking {
    pub names: Vec<String>,
    pub weights: Vec<f64>,
    /// Column indices, best first.
    pub order: Vec<usize>,
}

impl FeatureRanking {
    fn new(names: Vec<String>, weights: Vec<f64>) -> Self {
        let mut order: Vec<usize> = (0..weights.len()).collect();
        order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]).then(a.cmp(&b)));
        FeatureRanking { names, weights, order }
    }

    pub fn rank_order(&self) -> Vec<&str> {
        self.order.iter().map(|&j| self.names[j].as_str()).collect()
    }

    pub fn weight(&self, name: &str) -> Option<f64> {
        self.names.iter().position(|n| n == name).map(|j| self.weights[j])
    }

    /// First `k` names of the rank order.
    pub fn top_k(&self, k: usize) -> Result<Vec<&str>, ReliefError> {
        if k == 0 || k > self.names.len() {
            return Err(ReliefError::KOutOfRange { k, max: self.names.len() });
        }
        Ok(self.rank_order().into_iter().take(k).collect())
    }

    /// `rank,feature_name,weight` rows, optionally truncated to `top`.
    pub fn write_csv<W: Write>(&self, mut out: W, top: Option<usize>) -> Result<(), ReliefError> {
        let k = match top {
            Some(k) => {
                self.top_k(k)?;
                k
            }
            None => self.order.len(),
        };
        writeln!(out, "rank,feature_name,weight")?;
        for (r, &j) in self.order.iter().take(k).enumerate() {
            writeln!(out, "{},{},{}", r + 1, self.names[j], format_sig9(self.weights[j]))?;
        }
        Ok(())
    }
}

/// Min-max scales each column into [0, 1]; constant columns become all zero.
fn normalize_columns(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let d = rows.first().map_or(0, Vec::len);
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for row in rows {
        for a in 0..d {
            lo[a] = lo[a].min(row[a]);
            hi[a] = hi[a].max(row[a]);
        }
    }
    rows.iter()
        .map(|row| {
            (0..d)
                .map(|a| {
                    let range = hi[a] - lo[a];
                    if range > 0.0 {
                        (row[a] - lo[a]) / range
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect()
}

struct Contribution {
    dc: f64,
    da: Vec<f64>,
    dcda: Vec<f64>,
}

/// Raw RReliefF weights for the columns of `rows` against `target`.
pub fn relieff_weights(rows: &[Vec<f64>], target: &[f64], cfg: &ReliefConfig) -> Result<Vec<f64>, ReliefError> {
    cfg.validate()?;
    let n = rows.len();
    if n != target.len() {
        return Err(ReliefError::LengthMismatch { rows: n, targets: target.len() });
    }
    if n < cfg.k_neighbors + 1 {
        return Err(ReliefError::TooFewInstances {
            needed: cfg.k_neighbors + 1,
            got: n,
        });
    }
    for (i, row) in rows.iter().enumerate() {
        if !row.iter().all(|v| v.is_finite()) || !target[i].is_finite() {
            return Err(ReliefError::NonFinite(i));
        }
    }
    let (t_lo, t_hi) = target
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &t| (lo.min(t), hi.max(t)));
    let t_range = t_hi - t_lo;
    if t_range <= 0.0 {
        return Err(ReliefError::ZeroTargetRange);
    }

    let sampled: Vec<usize> = match cfg.m_samples {
        SampleCount::All => (0..n).collect(),
        SampleCount::Count(m) => {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(&mut seed::rng(seed::derive(cfg.seed, "relieff.sample")));
            idx.truncate(m.min(n));
            idx
        }
    };
    let m = sampled.len() as f64;
    let k = cfg.k_neighbors;
    let x = normalize_columns(rows);
    let d = x.first().map_or(0, Vec::len);

    let raw_rank: Vec<f64> = (1..=k).map(|r| (-(r as f64 / cfg.sigma_rank).powi(2)).exp()).collect();
    let rank_total: f64 = raw_rank.iter().sum();
    let rank_weight: Vec<f64> = raw_rank.iter().map(|w| w / rank_total).collect();

    let contributions: Vec<Contribution> = sampled
        .par_iter()
        .map(|&i| {
            let mut neighbours: Vec<(f64, usize)> = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let dist: f64 = x[i].iter().zip(&x[j]).map(|(a, b)| (a - b).abs()).sum();
                    (dist, j)
                })
                .collect();
            neighbours.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let mut c = Contribution {
                dc: 0.0,
                da: vec![0.0; d],
                dcda: vec![0.0; d],
            };
            for (&(_, j), &w) in neighbours.iter().take(k).zip(&rank_weight) {
                let diff_c = (target[i] - target[j]).abs() / t_range;
                c.dc += diff_c * w;
                for (a, (xi, xj)) in x[i].iter().zip(&x[j]).enumerate() {
                    let diff_a = (xi - xj).abs();
                    c.da[a] += diff_a * w;
                    c.dcda[a] += diff_c * diff_a * w;
                }
            }
            c
        })
        .collect();

    let mut n_dc = 0.0;
    let mut n_da = vec![0.0; d];
    let mut n_dcda = vec![0.0; d];
    for c in &contributions {
        n_dc += c.dc;
        for a in 0..d {
            n_da[a] += c.da[a];
            n_dcda[a] += c.dcda[a];
        }
    }
    if n_dc <= 0.0 {
        return Err(ReliefError::ZeroDenominator("N_dC"));
    }
    if m - n_dc <= 0.0 {
        return Err(ReliefError::ZeroDenominator("m - N_dC"));
    }
    Ok((0..d)
        .map(|a| n_dcda[a] / n_dc - (n_da[a] - n_dcda[a]) / (m - n_dc))
        .collect())
}

/// Ranks arbitrary named columns.
pub fn rank_columns(
    names: Vec<String>,
    rows: &[Vec<f64>],
    target: &[f64],
    cfg: &ReliefConfig,
) -> Result<FeatureRanking, ReliefError> {
    let weights = relieff_weights(rows, target, cfg)?;
    Ok(FeatureRanking::new(names, weights))
}

/// Ranks the columns of a feature matrix against its log-vote targets.
pub fn relieff_rank(matrix: &FeatureMatrix, cfg: &ReliefConfig) -> Result<FeatureRanking, ReliefError> {
    let names = matrix.columns.iter().map(|c| c.name().to_string()).collect();
    rank_columns(names, &matrix.rows, &matrix.targets, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn names(d: usize) -> Vec<String> {
        (0..d).map(|j| format!("f{j}")).collect()
    }

    fn planted(seed: u64, n: usize, noise_cols: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
        let mut rng = seed::rng(seed);
        let target: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        let rows = target
            .iter()
            .map(|&t| {
                let mut r = vec![t];
                r.extend((0..noise_cols).map(|_| rng.random::<f64>()));
                r
            })
            .collect();
        (rows, target)
    }

    #[test]
    fn copy_of_target_ranks_first() {
        let (rows, target) = planted(1, 80, 1);
        let r = rank_columns(names(2), &rows, &target, &ReliefConfig::default()).unwrap();
        assert!(r.weights[0] > r.weights[1]);
        assert_eq!(r.top_k(1).unwrap(), vec!["f0"]);
    }

    #[test]
    fn constant_column_weighs_zero() {
        let (mut rows, target) = planted(2, 50, 2);
        rows.iter_mut().for_each(|r| r[2] = 3.5);
        let w = relieff_weights(&rows, &target, &ReliefConfig::default()).unwrap();
        assert_eq!(w[2], 0.0);
    }

    #[test]
    fn twins_with_one_neighbour_report_degeneracy() {
        let (rows, target) = planted(3, 20, 2);
        let rows2: Vec<_> = rows.iter().flat_map(|r| [r.clone(), r.clone()]).collect();
        let target2: Vec<_> = target.iter().flat_map(|&t| [t, t]).collect();
        let cfg = ReliefConfig { k_neighbors: 1, ..Default::default() };
        assert!(matches!(
            relieff_weights(&rows2, &target2, &cfg),
            Err(ReliefError::ZeroDenominator("N_dC"))
        ));
    }

    #[test]
    fn error_paths() {
        let (rows, target) = planted(4, 10, 1);
        assert!(matches!(
            relieff_weights(&rows, &target, &ReliefConfig::default()),
            Err(ReliefError::TooFewInstances { needed: 11, got: 10 })
        ));
        let flat = vec![1.0; 10];
        let cfg = ReliefConfig { k_neighbors: 3, ..Default::default() };
        assert!(matches!(relieff_weights(&rows, &flat, &cfg), Err(ReliefError::ZeroTargetRange)));
        let r = rank_columns(names(2), &rows, &target, &cfg).unwrap();
        assert!(r.top_k(0).is_err());
        assert!(r.top_k(3).is_err());
        assert_eq!(r.top_k(2).unwrap().len(), 2);
    }

    #[test]
    fn ties_break_by_column_order() {
        let r = FeatureRanking::new(names(4), vec![0.1, 0.3, 0.1, 0.3]);
        assert_eq!(r.rank_order(), vec!["f1", "f3", "f0", "f2"]);
    }

    #[test]
    fn csv_truncation() {
        let r = FeatureRanking::new(names(3), vec![0.5, -0.25, 0.125]);
        let mut full = Vec::new();
        r.write_csv(&mut full, None).unwrap();
        assert_eq!(String::from_utf8(full.clone()).unwrap(), "rank,feature_name,weight\n1,f0,0.5\n2,f2,0.125\n3,f1,-0.25\n");
        let mut same = Vec::new();
        r.write_csv(&mut same, Some(3)).unwrap();
        assert_eq!(full, same);
        let mut one = Vec::new();
        r.write_csv(&mut one, Some(1)).unwrap();
        assert_eq!(String::from_utf8(one).unwrap().lines().count(), 2);
    }

    #[test]
    fn subsampling_is_seeded() {
        let (rows, target) = planted(5, 60, 3);
        let cfg = ReliefConfig { m_samples: SampleCount::Count(20), seed: 9, ..Default::default() };
        let a = relieff_weights(&rows, &target, &cfg).unwrap();
        assert_eq!(a, relieff_weights(&rows, &target, &cfg).unwrap());
    }

    #[test]
    fn permuting_instances_keeps_weights() {
        let (rows, target) = planted(6, 70, 4);
        let cfg = ReliefConfig::default();
        let w = relieff_weights(&rows, &target, &cfg).unwrap();
        let mut perm: Vec<usize> = (0..rows.len()).collect();
        perm.shuffle(&mut seed::rng(99));
        let rows_p: Vec<_> = perm.iter().map(|&i| rows[i].clone()).collect();
        let target_p: Vec<_> = perm.iter().map(|&i| target[i]).collect();
        let w_p = relieff_weights(&rows_p, &target_p, &cfg).unwrap();
        for (a, b) in w.iter().zip(&w_p) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn weights_stay_in_unit_interval() {
        for s in 0..5 {
            let (rows, target) = planted(100 + s, 40, 5);
            for w in relieff_weights(&rows, &target, &ReliefConfig::default()).unwrap() {
                assert!((-1.0 - 1e-9..=1.0 + 1e-9).contains(&w));
            }
        }
    }
}
