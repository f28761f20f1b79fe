//! Plain-Rust layer behind the Python functions, usable without an
//! interpreter.

use std::path::Path;

use bookpop::corpus::{check_corpus_file, CorpusError, save_corpus, synth_corpus, SynthConfig};
use bookpop::eval::{run_category_holdout, run_cv, run_topk, EvalReport, FeatureGroupSelector, DEFAULT_TOPK};
use bookpop::features::FeatureMatrix;
use bookpop::relieff::{rank_columns, ReliefConfig};
use bookpop::sentiment::SentimentLexicon;
use bookpop::svr::SvrConfig;
use bookpop::Error;

pub fn synth(path: &Path, books_per_category: usize, noise_sigma: f64, seed: u64) -> Result<usize, Error> {
    let config = SynthConfig {
        books_per_category,
        noise_sigma,
    };
    let out = synth_corpus(&config, seed)?;
    save_corpus(&out.corpus, path)?;
    Ok(out.corpus.books.len())
}

/// Violation messages, empty when the corpus is valid.
pub fn validate(path: &Path) -> Result<Vec<String>, Error> {
    let (_, violations) = check_corpus_file(path)?;
    Ok(violations.iter().map(ToString::to_string).collect())
}

pub fn load_matrix(path: &Path) -> Result<FeatureMatrix, Error> {
    let (corpus, violations) = check_corpus_file(path)?;
    if !violations.is_empty() {
        return Err(CorpusError::Invalid(violations).into());
    }
    Ok(FeatureMatrix::from_corpus(&corpus, &SentimentLexicon::default_lexicon())?)
}

/// `(feature, weight)` pairs, best first.
pub fn rank(path: &Path, k_neighbors: usize, seed: u64) -> Result<Vec<(String, f64)>, Error> {
    let m = load_matrix(path)?;
    let cfg = ReliefConfig {
        k_neighbors,
        seed,
        ..Default::default()
    };
    let names = m.columns.iter().map(|f| f.name().to_string()).collect();
    let ranking = rank_columns(names, &m.rows, &m.targets, &cfg)?;
    Ok(ranking
        .order
        .iter()
        .map(|&j| (ranking.names[j].clone(), ranking.weights[j]))
        .collect())
}

pub fn selector(name: &str) -> Result<FeatureGroupSelector, String> {
    name.parse()
}

pub fn eval_cv(path: &Path, selector: FeatureGroupSelector, folds: usize, seed: u64) -> Result<EvalReport, Error> {
    let m = load_matrix(path)?;
    Ok(run_cv(&m, &SvrConfig::default(), selector, folds, seed)?)
}

pub fn eval_topk(path: &Path, seed: u64) -> Result<Vec<EvalReport>, Error> {
    let m = load_matrix(path)?;
    Ok(run_topk(&m, &SvrConfig::default(), &DEFAULT_TOPK, seed)?)
}

pub fn eval_category(path: &Path, seed: u64) -> Result<Vec<EvalReport>, Error> {
    let m = load_matrix(path)?;
    Ok(run_category_holdout(&m, &SvrConfig::default(), seed)?)
}
