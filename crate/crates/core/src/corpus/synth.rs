//! Seeded synthetic corpora with a planted log-vote signal.
//!
//! Votes are `max(1, round(exp(BASE_LOG_VOTES + sum_j w_j * z_j + noise)))`
//! where `z_j = (x_j - center_j) / scale_j` runs over [`PLANTED_TERMS`], `x_j`
//! is the raw value of a feature the extractor will later compute for the
//! book, and `noise ~ N(0, noise_sigma)`. Engagement terms carry most of the
//! weight; `shelve_diversity` is the single dominant term.
//!
//! Observables are driven by three latent traits with little independent
//! jitter and roughly symmetric marginals, so the 26 features span a
//! low-dimensional space. Heavy-tailed counts or large per-feature noise would
//! make the noiseless target hard for a kernel regressor to recover.
//!
//! Alongside the corpus the generator returns a ledger with, for every book,
//! the planted feature values as the generator computed them from its own
//! construction (not through the feature extractor), the noise-free mean and
//! the noise draw.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{AuthorRecord, AwardCategory, BookRecord, Corpus, CorpusError, ReviewRecord};
use crate::features::Feature;
use crate::seed;
use crate::sentiment::{SentimentLexicon, DEFAULT_REVIEW_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    pub books_per_category: usize,
    pub noise_sigma: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            books_per_category: 20,
            noise_sigma: 1.5,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.books_per_category < 1 {
            return Err(CorpusError::InvalidConfig("books_per_category must be >= 1".into()));
        }
        if !(self.noise_sigma >= 0.0 && self.noise_sigma.is_finite()) {
            return Err(CorpusError::InvalidConfig(format!(
                "noise_sigma must be finite and >= 0, got {}",
                self.noise_sigma
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantedTerm {
    pub feature: Feature,
    pub center: f64,
    pub scale: f64,
    pub weight: f64,
}

const fn term(feature: Feature, center: f64, scale: f64, weight: f64) -> PlantedTerm {
    PlantedTerm {
        feature,
        center,
        scale,
        weight,
    }
}

/// Log-vote intercept (about 3000 votes for an average book).
pub const BASE_LOG_VOTES: f64 = 8.0;

/// The planted linear signal, dominant term first.
pub const PLANTED_TERMS: [PlantedTerm; 7] = [
    term(Feature::ShelveDiversity, 2.09, 0.49, 1.2),
    term(Feature::ReadOrCurrentCount, 3300.0, 950.0, 0.6),
    term(Feature::AvgRating, 3.87, 0.09, 0.5),
    term(Feature::RatingEntropy, 1.36, 0.024, 0.4),
    term(Feature::SentMeanPos, 0.43, 0.15, 0.4),
    term(Feature::AAvgRating, 3.9, 0.25, 0.45),
    term(Feature::AAwardsCount, 6.0, 2.5, 0.35),
];

/// Shelf-name universe the generator draws from.
pub const SHELF_NAMES: [&str; 50] = [
    "favorites", "owned", "books-i-own", "fiction", "kindle", "ebook", "library", "wish-list",
    "audiobook", "series", "re-read", "default", "adult", "classics", "contemporary", "romance",
    "fantasy", "mystery", "thriller", "horror", "science-fiction", "historical", "non-fiction",
    "memoir", "biography", "humor", "poetry", "graphic-novels", "young-adult", "middle-grade",
    "picture-books", "cookbooks", "science", "history", "book-club", "dnf", "2015-reads",
    "must-read", "paperback", "hardcover", "signed", "borrowed", "sci-fi-fantasy", "dystopian",
    "magic", "crime", "literary-fiction", "short-stories", "to-buy", "gift-ideas",
];

/// Filler tokens for synthetic reviews; none of them is a lexicon term.
const FILLER: [&str; 32] = [
    "the", "book", "story", "chapter", "author", "characters", "plot", "this", "was", "and",
    "ending", "pages", "reading", "series", "world", "writing", "about", "with", "of", "it",
    "i", "felt", "read", "second", "first", "a", "narrator", "setting", "scene", "middle",
    "towards", "then",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub book_id: String,
    /// Raw planted feature values, in [`PLANTED_TERMS`] order.
    pub planted: Vec<(Feature, f64)>,
    /// `BASE_LOG_VOTES + sum_j w_j * z_j`.
    pub planted_mean: f64,
    pub noise: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthOutput {
    pub corpus: Corpus,
    pub ledger: Vec<LedgerEntry>,
}

impl SynthOutput {
    /// The feature with the largest planted weight.
    pub fn dominant_feature() -> Feature {
        PLANTED_TERMS
            .iter()
            .max_by(|a, b| a.weight.total_cmp(&b.weight))
            .map(|t| t.feature)
            .expect("planted terms are nonempty")
    }
}

/// Entropy of integer counts, computed here independently of the feature
/// extractor so the ledger can cross-check it.
fn ledger_entropy(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let mut h = 0.0;
    for &c in counts {
        if c > 0 {
            let p = c as f64 / total as f64;
            h -= p * p.ln();
        }
    }
    h.max(0.0)
}

fn std_normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// `mean * (1 + latent + noise)` rounded; the latent is clipped at three
/// standard deviations' worth so counts stay positive.
fn linear_count(rng: &mut ChaCha8Rng, mean: f64, latent: f64, noise_sd: f64) -> u64 {
    let rel = 1.0 + latent.clamp(-0.9, 0.9) + noise_sd * std_normal(rng);
    (mean * rel).round().max(0.0) as u64
}

/// Splits `total` into integer counts proportional to `probs` (largest remainder).
fn apportion(total: u64, probs: &[f64]) -> Vec<u64> {
    let raw: Vec<f64> = probs.iter().map(|p| p * total as f64).collect();
    let mut counts: Vec<u64> = raw.iter().map(|r| r.floor() as u64).collect();
    let mut left = total - counts.iter().sum::<u64>();
    let mut order: Vec<usize> = (0..probs.len()).collect();
    order.sort_by(|&a, &b| (raw[b] - raw[b].floor()).total_cmp(&(raw[a] - raw[a].floor())).then(a.cmp(&b)));
    for &i in order.iter().cycle() {
        if left == 0 {
            break;
        }
        counts[i] += 1;
        left -= 1;
    }
    counts
}

/// Sentiment words per synthetic review.
const SENTIMENT_HITS: usize = 4;

struct Reviews {
    records: Vec<ReviewRecord>,
    mean_pos: f64,
}

fn synth_reviews(
    rng: &mut ChaCha8Rng,
    book_id: &str,
    engagement: f64,
    quality: f64,
    pos_terms: &[&str],
    neg_terms: &[&str],
) -> Reviews {
    let n = (20.0 + 6.0 * engagement + std_normal(rng)).round().clamp(3.0, 40.0) as usize;
    let tone = (0.55 + 0.3 * quality.tanh() + rng.random_range(-0.02..0.02)).clamp(0.05, 0.95);
    // Positive-word counts are stratified across reviews so a book's sentiment
    // aggregates track its tone closely.
    let stratum = n.clamp(1, DEFAULT_REVIEW_CAP);
    let mut records = Vec::with_capacity(n);
    let mut pos_sum = 0.0;
    for r in 0..n {
        let len = rng.random_range(12..=16usize);
        let u = ((r % stratum) as f64 + 0.5) / stratum as f64;
        let hits_pos = ((tone * SENTIMENT_HITS as f64 + u).floor() as usize).min(SENTIMENT_HITS);
        let hits_neg = SENTIMENT_HITS - hits_pos;
        let mut words: Vec<&str> = Vec::with_capacity(len);
        for _ in 0..hits_pos {
            words.push(pos_terms[rng.random_range(0..pos_terms.len())]);
        }
        for _ in 0..hits_neg {
            words.push(neg_terms[rng.random_range(0..neg_terms.len())]);
        }
        while words.len() < len {
            words.push(FILLER[rng.random_range(0..FILLER.len())]);
        }
        words.shuffle(rng);
        let mut words: Vec<String> = words.into_iter().map(str::to_string).collect();
        if let Some(first) = words.first_mut() {
            *first = first.to_uppercase();
        }
        if r < DEFAULT_REVIEW_CAP {
            pos_sum += hits_pos as f64 / (hits_pos + hits_neg + 1) as f64;
        }
        let mut text = words.join(" ");
        if !text.is_empty() {
            text.push('.');
        }
        records.push(ReviewRecord {
            book_id: book_id.to_string(),
            text,
        });
    }
    let scored = n.min(DEFAULT_REVIEW_CAP);
    Reviews {
        records,
        mean_pos: if scored == 0 { 0.0 } else { pos_sum / scored as f64 },
    }
}

/// Generates `books_per_category` books (each with its own author) in every
/// award category. Pure function of `(config, seed)`.
pub fn synth_corpus(config: &SynthConfig, seed: u64) -> Result<SynthOutput, CorpusError> {
    config.validate()?;
    let mut rng = seed::rng(seed::derive(seed, "corpus.synth"));
    let noise = Normal::new(0.0, config.noise_sigma).map_err(|e| CorpusError::InvalidConfig(e.to_string()))?;
    let lex = SentimentLexicon::default_lexicon();
    let pos_terms: Vec<&str> = lex.positive_terms().iter().map(String::as_str).collect();
    let neg_terms: Vec<&str> = lex.negative_terms().iter().map(String::as_str).collect();

    let total = config.books_per_category * AwardCategory::ALL.len();
    let width = total.to_string().len().max(4);
    let mut corpus = Corpus::default();
    let mut ledger = Vec::with_capacity(total);

    for category in AwardCategory::ALL {
        for _ in 0..config.books_per_category {
            let ordinal = corpus.books.len() + 1;
            let book_id = format!("b{ordinal:0width$}");
            let author_id = format!("a{ordinal:0width$}");
            // Three latent traits drive almost every observable, so the
            // feature space has low intrinsic dimension: engagement (counts),
            // prestige (author standing and book quality) and breadth (how
            // evenly readers spread a book across shelves).
            let engagement = std_normal(&mut rng);
            let prestige = std_normal(&mut rng);
            let breadth = std_normal(&mut rng);

            // star ratings
            let ratings_count = linear_count(&mut rng, 3000.0, 0.3 * engagement, 0.02).max(5);
            let lean = (0.9 * prestige.tanh() + rng.random_range(-0.03..0.03)).clamp(-1.0, 1.0);
            let shares = [0.04, 0.07, 0.2 - 0.08 * lean, 0.36, 0.33 + 0.08 * lean];
            let stars = apportion(ratings_count, &shares);
            let star_histogram: [u64; 5] = stars.clone().try_into().expect("five buckets");
            let star_mean = star_histogram
                .iter()
                .enumerate()
                .map(|(k, &c)| (k + 1) as f64 * c as f64)
                .sum::<f64>()
                / ratings_count as f64;
            let avg_rating = (star_mean * 100.0).round() / 100.0;

            // shelves
            let n_shelves = (16.0 + 5.0 * engagement + 0.3 * std_normal(&mut rng)).round().clamp(2.0, 30.0) as usize;
            let mut names: Vec<&str> = SHELF_NAMES.to_vec();
            names.shuffle(&mut rng);
            names.truncate(n_shelves);
            // Zipf-shaped shelf shares; broad books have a flatter profile.
            let exponent = (1.2 - 0.5 * breadth).clamp(0.0, 3.0);
            let weights: Vec<f64> = (1..=n_shelves).map(|k| (k as f64).powf(-exponent)).collect();
            let weight_sum: f64 = weights.iter().sum();
            let probs: Vec<f64> = weights.iter().map(|w| w / weight_sum).collect();
            let shelved = (ratings_count as f64 * rng.random_range(0.5..0.6)).round() as u64;
            let shelf_values: Vec<u64> = probs.iter().map(|p| ((p * shelved as f64).round() as u64).max(1)).collect();
            let shelf_counts: BTreeMap<String, u64> = names
                .iter()
                .zip(&shelf_values)
                .map(|(n, &c)| (n.to_string(), c))
                .collect();

            let reviews_count = (ratings_count as f64 * rng.random_range(0.078..0.082)).round() as u64;
            let genres_count = (6.5 + 2.0 * engagement + 0.2 * std_normal(&mut rng)).round().clamp(1.0, 12.0) as u64;
            let read_or_current_count = linear_count(&mut rng, 3300.0, 0.3 * engagement, 0.03);
            let to_read_count = linear_count(&mut rng, 5000.0, 0.3 * engagement, 0.03);
            let reviews = synth_reviews(&mut rng, &book_id, engagement, prestige, &pos_terms, &neg_terms);

            // author
            let a_avg_rating = ((3.9 + 0.25 * prestige + 0.05 * std_normal(&mut rng)).clamp(1.0, 5.0) * 100.0).round() / 100.0;
            let a_ratings_count = linear_count(&mut rng, 8000.0, 0.3 * prestige, 0.03);
            let common_shelves_count = (10.0 + 4.0 * prestige + 0.3 * std_normal(&mut rng)).round().clamp(0.0, 20.0) as u64;
            let author = AuthorRecord {
                id: author_id.clone(),
                name: format!("Author {ordinal}"),
                books_count: (15.0 + 8.0 * prestige + 0.5 * std_normal(&mut rng)).round().clamp(1.0, 40.0) as u64,
                avg_rating: a_avg_rating,
                ratings_count: a_ratings_count,
                reviews_count: (a_ratings_count as f64 * rng.random_range(0.078..0.082)).round() as u64,
                awards_count: (6.0 + 2.5 * prestige + 0.1 * std_normal(&mut rng)).round().max(0.0) as u64,
                best_sellers_count: (4.0 + 1.6 * prestige + 0.1 * std_normal(&mut rng)).round().max(0.0) as u64,
                followers_count: linear_count(&mut rng, 1100.0, 0.3 * prestige, 0.03),
                common_shelves_count,
                unique_shelves_count: common_shelves_count
                    + (100.0 + 40.0 * prestige + std_normal(&mut rng)).round().clamp(10.0, 200.0) as u64,
            };

            let planted: Vec<(Feature, f64)> = PLANTED_TERMS
                .iter()
                .map(|t| {
                    let value = match t.feature {
                        Feature::ShelveDiversity => ledger_entropy(&shelf_values),
                        Feature::ReadOrCurrentCount => read_or_current_count as f64,
                        Feature::AvgRating => avg_rating,
                        Feature::RatingEntropy => ledger_entropy(&stars),
                        Feature::SentMeanPos => reviews.mean_pos,
                        Feature::AAvgRating => author.avg_rating,
                        Feature::AAwardsCount => author.awards_count as f64,
                        other => unreachable!("{other} is not planted"),
                    };
                    (t.feature, value)
                })
                .collect();
            let planted_mean = BASE_LOG_VOTES
                + PLANTED_TERMS
                    .iter()
                    .zip(&planted)
                    .map(|(t, (_, x))| t.weight * (x - t.center) / t.scale)
                    .sum::<f64>();
            let eps = if config.noise_sigma > 0.0 { noise.sample(&mut rng) } else { 0.0 };
            let votes = ((planted_mean + eps).exp().round().min(u64::MAX as f64) as u64).max(1);

            corpus.books.push(BookRecord {
                id: book_id.clone(),
                title: format!("{} Nominee {}", category.name(), ordinal),
                category,
                votes,
                author_id,
                avg_rating,
                ratings_count,
                star_histogram,
                reviews_count,
                genres_count,
                shelf_counts,
                read_or_current_count,
                to_read_count,
                reviews: reviews.records,
            });
            corpus.authors.push(author);
            ledger.push(LedgerEntry {
                book_id,
                planted,
                planted_mean,
                noise: eps,
            });
        }
    }
    Ok(SynthOutput { corpus, ledger })
}
