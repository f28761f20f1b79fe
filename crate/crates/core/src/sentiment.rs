//! Deterministic lexicon-based review sentiment.
//!
//! Each review is scored as three probabilities (positive, negative, neutral)
//! from lexicon hit counts with +1 smoothing in the denominator; a book's
//! reviews are summarised by the per-channel means and population standard
//! deviations of those scores.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::ReviewRecord;

/// Number of reviews per book that enter the sentiment aggregate.
pub const DEFAULT_REVIEW_CAP: usize = 30;

const DEFAULT_LEXICON: &str = include_str!("../data/lexicon.tsv");

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read lexicon {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("lexicon line {line}: expected `term<TAB>pos|neg`, got {content:?}")]
    Malformed { line: usize, content: String },
    #[error("lexicon line {line}: term {term:?} must be lowercase alphanumeric")]
    BadTerm { line: usize, term: String },
    #[error("lexicon line {line}: duplicate term {term:?}")]
    Duplicate { line: usize, term: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SentimentLexicon {
    positive_terms: BTreeSet<String>,
    negative_terms: BTreeSet<String>,
}

impl SentimentLexicon {
    /// Builds a lexicon from explicit term sets. A term listed in both sets is
    /// rejected as a duplicate.
    pub fn new<P, N>(positive: P, negative: N) -> Result<Self, LexiconError>
    where
        P: IntoIterator,
        P::Item: Into<String>,
        N: IntoIterator,
        N::Item: Into<String>,
    {
        let mut lex = SentimentLexicon::default();
        for (i, term) in positive.into_iter().enumerate() {
            lex.insert(term.into(), true, i + 1)?;
        }
        for (i, term) in negative.into_iter().enumerate() {
            lex.insert(term.into(), false, i + 1)?;
        }
        Ok(lex)
    }

    /// The ~200-term English lexicon shipped with the crate.
    pub fn default_lexicon() -> Self {
        Self::parse(DEFAULT_LEXICON).expect("bundled lexicon is well-formed")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Parses the two-column `term<TAB>pos|neg` format. Blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut lex = SentimentLexicon::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let mut cols = raw.split('\t');
            let (term, polarity) = match (cols.next(), cols.next(), cols.next()) {
                (Some(t), Some(p), None) => (t, p.trim_end_matches('\r')),
                _ => {
                    return Err(LexiconError::Malformed {
                        line,
                        content: raw.to_string(),
                    })
                }
            };
            let positive = match polarity {
                "pos" => true,
                "neg" => false,
                _ => {
                    return Err(LexiconError::Malformed {
                        line,
                        content: raw.to_string(),
                    })
                }
            };
            lex.insert(term.to_string(), positive, line)?;
        }
        Ok(lex)
    }

    fn insert(&mut self, term: String, positive: bool, line: usize) -> Result<(), LexiconError> {
        let well_formed = !term.is_empty()
            && term.chars().all(char::is_alphanumeric)
            && term.to_lowercase() == term;
        if !well_formed {
            return Err(LexiconError::BadTerm { line, term });
        }
        if self.positive_terms.contains(&term) || self.negative_terms.contains(&term) {
            return Err(LexiconError::Duplicate { line, term });
        }
        if positive {
            self.positive_terms.insert(term);
        } else {
            self.negative_terms.insert(term);
        }
        Ok(())
    }

    pub fn positive_terms(&self) -> &BTreeSet<String> {
        &self.positive_terms
    }

    pub fn negative_terms(&self) -> &BTreeSet<String> {
        &self.negative_terms
    }

    /// The same lexicon with polarities exchanged.
    pub fn swapped(&self) -> Self {
        SentimentLexicon {
            positive_terms: self.negative_terms.clone(),
            negative_terms: self.positive_terms.clone(),
        }
    }

    /// Whether `term` (already lowercase) is in either polarity set.
    pub fn contains(&self, term: &str) -> bool {
        self.positive_terms.contains(term) || self.negative_terms.contains(term)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SentimentScore {
    pub p_pos: f64,
    pub p_neg: f64,
    pub p_neutral: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SentimentAggregate {
    pub mean_pos: f64,
    pub mean_neg: f64,
    pub mean_neutral: f64,
    pub sd_pos: f64,
    pub sd_neg: f64,
    pub sd_neutral: f64,
}

impl SentimentAggregate {
    const EMPTY: SentimentAggregate = SentimentAggregate {
        mean_pos: 0.0,
        mean_neg: 0.0,
        mean_neutral: 1.0,
        sd_pos: 0.0,
        sd_neg: 0.0,
        sd_neutral: 0.0,
    };
}

/// Lowercases and splits on runs of non-alphanumeric characters.
pub fn tokenize(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
}

pub fn score_review(text: &str, lex: &SentimentLexicon) -> SentimentScore {
    let (mut hits_pos, mut hits_neg) = (0usize, 0usize);
    for token in tokenize(text) {
        if lex.positive_terms.contains(&token) {
            hits_pos += 1;
        } else if lex.negative_terms.contains(&token) {
            hits_neg += 1;
        }
    }
    let denom = (hits_pos + hits_neg + 1) as f64;
    SentimentScore {
        p_pos: hits_pos as f64 / denom,
        p_neg: hits_neg as f64 / denom,
        p_neutral: 1.0 / denom,
    }
}

/// Scores the first `cap` reviews and returns channel means and population
/// standard deviations. No reviews yields means `(0, 0, 1)` and zero spread.
pub fn aggregate_sentiment(
    reviews: &[ReviewRecord],
    lex: &SentimentLexicon,
    cap: usize,
) -> SentimentAggregate {
    let scores: Vec<SentimentScore> = reviews
        .iter()
        .take(cap)
        .map(|r| score_review(&r.text, lex))
        .collect();
    if scores.is_empty() {
        return SentimentAggregate::EMPTY;
    }
    let channel = |f: fn(&SentimentScore) -> f64| -> (f64, f64) {
        let n = scores.len() as f64;
        let mean = scores.iter().map(f).sum::<f64>() / n;
        let var = scores.iter().map(|s| (f(s) - mean).powi(2)).sum::<f64>() / n;
        (mean, var.sqrt())
    };
    let (mean_pos, sd_pos) = channel(|s| s.p_pos);
    let (mean_neg, sd_neg) = channel(|s| s.p_neg);
    let (mean_neutral, sd_neutral) = channel(|s| s.p_neutral);
    SentimentAggregate {
        mean_pos,
        mean_neg,
        mean_neutral,
        sd_pos,
        sd_neg,
        sd_neutral,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lex() -> SentimentLexicon {
        SentimentLexicon::new(["good", "great"], ["bad", "awful"]).unwrap()
    }

    fn review(text: &str) -> ReviewRecord {
        ReviewRecord {
            book_id: "b1".into(),
            text: text.into(),
        }
    }

    #[test]
    fn empty_text_is_neutral() {
        let s = score_review("", &lex());
        assert_eq!((s.p_pos, s.p_neg, s.p_neutral), (0.0, 0.0, 1.0));
    }

    #[test]
    fn single_positive_hit() {
        let s = score_review("A GOOD read.", &lex());
        assert_eq!((s.p_pos, s.p_neg, s.p_neutral), (0.5, 0.0, 0.5));
    }

    #[test]
    fn balanced_hits() {
        let s = score_review("good,great...bad!awful", &lex());
        assert!((s.p_pos - 0.4).abs() < 1e-15);
        assert!((s.p_neg - 0.4).abs() < 1e-15);
        assert!((s.p_neutral - 0.2).abs() < 1e-15);
    }

    #[test]
    fn aggregate_of_nothing() {
        assert_eq!(aggregate_sentiment(&[], &lex(), 30), SentimentAggregate::EMPTY);
    }

    #[test]
    fn aggregate_two_reviews() {
        let agg = aggregate_sentiment(&[review("good"), review("bad")], &lex(), 30);
        assert_eq!(agg.mean_pos, 0.25);
        assert_eq!(agg.mean_neg, 0.25);
        assert_eq!(agg.mean_neutral, 0.5);
        assert_eq!(agg.sd_pos, 0.25);
        assert_eq!(agg.sd_neg, 0.25);
        assert_eq!(agg.sd_neutral, 0.0);
    }

    #[test]
    fn cap_limits_reviews() {
        let same: Vec<_> = (0..35).map(|_| review("good bad good")).collect();
        let agg = aggregate_sentiment(&same, &lex(), 30);
        let one = score_review("good bad good", &lex());
        assert_eq!(agg.mean_pos, one.p_pos);
        assert_eq!((agg.sd_pos, agg.sd_neg, agg.sd_neutral), (0.0, 0.0, 0.0));
    }

    #[test]
    fn parse_rejects_duplicates_and_garbage() {
        assert!(matches!(
            SentimentLexicon::parse("good\tpos\ngood\tneg\n"),
            Err(LexiconError::Duplicate { line: 2, .. })
        ));
        assert!(matches!(
            SentimentLexicon::parse("good pos\n"),
            Err(LexiconError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            SentimentLexicon::parse("Good\tpos\n"),
            Err(LexiconError::BadTerm { .. })
        ));
    }

    #[test]
    fn bundled_lexicon_is_disjoint_and_nonempty() {
        let lex = SentimentLexicon::default_lexicon();
        assert!(lex.positive_terms().len() > 50);
        assert!(lex.negative_terms().len() > 50);
        assert!(lex.positive_terms().is_disjoint(lex.negative_terms()));
    }

    proptest! {
        #[test]
        fn scores_are_probabilities(text in "\\PC{0,200}") {
            let s = score_review(&text, &SentimentLexicon::default_lexicon());
            prop_assert!((s.p_pos + s.p_neg + s.p_neutral - 1.0).abs() < 1e-12);
            for p in [s.p_pos, s.p_neg, s.p_neutral] {
                prop_assert!((0.0..=1.0).contains(&p));
            }
        }

        #[test]
        fn swapping_lexicon_swaps_channels(words in proptest::collection::vec(
            prop_oneof![Just("good"), Just("bad"), Just("great"), Just("awful"), Just("plain"), Just("text")],
            0..40,
        )) {
            let text = words.join(" ");
            let a = score_review(&text, &lex());
            let b = score_review(&text, &lex().swapped());
            prop_assert_eq!(a.p_pos, b.p_neg);
            prop_assert_eq!(a.p_neg, b.p_pos);
        }

        #[test]
        fn reviews_past_cap_are_ignored(n_extra in 0usize..10, cap in 1usize..8) {
            let base: Vec<_> = (0..cap).map(|i| review(if i % 2 == 0 { "good" } else { "bad bad" })).collect();
            let mut extended = base.clone();
            extended.extend((0..n_extra).map(|_| review("great great great")));
            prop_assert_eq!(
                aggregate_sentiment(&base, &lex(), cap),
                aggregate_sentiment(&extended, &lex(), cap)
            );
        }
    }
}
