use thiserror::Error;

use crate::corpus::CorpusError;
use crate::eval::EvalError;
use crate::features::FeatureError;
use crate::relieff::ReliefError;
use crate::sentiment::LexiconError;
use crate::svr::SvrError;

/// Any failure surfaced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Feature(#[from] FeatureError),
    #[error(transparent)]
    Svr(#[from] SvrError),
    #[error(transparent)]
    Relief(#[from] ReliefError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}
