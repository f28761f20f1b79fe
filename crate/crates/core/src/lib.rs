//! Book popularity prediction toolkit.
//!
//! Turns Goodreads-style book and author records into a 26-column feature
//! matrix (17 reader-engagement features, 9 author-prestige features),
//! regresses `ln(votes)` with an epsilon-SVR trained by sequential minimal
//! optimization, ranks features with RReliefF and runs three evaluation
//! protocols: pooled k-fold cross-validation, top-k most-voted holdout and
//! leave-one-category-out.
//!
//! ```no_run
//! use bookpop::corpus::{synth_corpus, SynthConfig};
//! use bookpop::eval::{run_cv, FeatureGroupSelector};
//! use bookpop::features::FeatureMatrix;
//! use bookpop::sentiment::SentimentLexicon;
//! use bookpop::svr::SvrConfig;
//!
//! let corpus = synth_corpus(&SynthConfig::default(), 7).unwrap().corpus;
//! let matrix = FeatureMatrix::from_corpus(&corpus, &SentimentLexicon::default_lexicon()).unwrap();
//! let report = run_cv(&matrix, &SvrConfig::default(), FeatureGroupSelector::All, 10, 7).unwrap();
//! println!("r = {:.2}, rmse = {:.2}", report.pearson_r, report.rmse);
//! ```

pub mod cli;
pub mod corpus;
pub mod eval;
pub mod features;
pub mod relieff;
pub mod seed;
pub mod sentiment;
pub mod svr;

mod error;

pub use error::Error;
