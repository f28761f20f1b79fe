//! Per-book feature extraction, the log-vote target and standardization.
//!
//! Column order is fixed: the 17 engagement features followed by the 9 author
//! features, exactly as listed in [`Feature::ALL`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{AuthorRecord, AwardCategory, BookRecord, Corpus};
use crate::sentiment::{aggregate_sentiment, SentimentLexicon, DEFAULT_REVIEW_CAP};

#[derive(Debug, Error)]
pub enum FeatureError {
    #[error("book {book} names author {expected} but was paired with author {got}")]
    MismatchedAuthor {
        book: String,
        expected: String,
        got: String,
    },
    #[error("book {book} references unknown author {author}")]
    UnknownAuthor { book: String, author: String },
    #[error("votes must be >= 1, got {0}")]
    VotesBelowOne(u64),
    #[error("cannot fit a scaler on an empty row subset")]
    EmptyRows,
    #[error("row index {index} out of range for {rows} rows")]
    RowOutOfRange { index: usize, rows: usize },
    #[error("unknown feature name {0:?}")]
    UnknownFeature(String),
    #[error("non-finite value in column {column} of row {row}")]
    NonFinite { row: usize, column: String },
    #[error("feature csv line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureGroup {
    Engagement,
    Author,
}

macro_rules! features {
    ($( $variant:ident => $name:literal, $group:ident; )*) => {
        /// One of the 26 named predictors.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(rename_all = "snake_case")]
        pub enum Feature {
            $( $variant, )*
        }

        impl Feature {
            /// Canonical column order.
            pub const ALL: [Feature; 26] = [ $( Feature::$variant, )* ];

            pub fn name(self) -> &'static str {
                match self {
                    $( Feature::$variant => $name, )*
                }
            }

            pub fn group(self) -> FeatureGroup {
                match self {
                    $( Feature::$variant => FeatureGroup::$group, )*
                }
            }
        }
    };
}

features! {
    AvgRating => "avg_rating", Engagement;
    RatingsCount => "ratings_count", Engagement;
    FourStarCount => "four_star_count", Engagement;
    FiveStarCount => "five_star_count", Engagement;
    RatingEntropy => "rating_entropy", Engagement;
    ReviewsCount => "reviews_count", Engagement;
    SentMeanPos => "sent_mean_pos", Engagement;
    SentMeanNeg => "sent_mean_neg", Engagement;
    SentMeanNeutral => "sent_mean_neutral", Engagement;
    SentSdPos => "sent_sd_pos", Engagement;
    SentSdNeg => "sent_sd_neg", Engagement;
    SentSdNeutral => "sent_sd_neutral", Engagement;
    GenresCount => "genres_count", Engagement;
    ShelvesCount => "shelves_count", Engagement;
    ShelveDiversity => "shelve_diversity", Engagement;
    ReadOrCurrentCount => "read_or_current_count", Engagement;
    ToReadCount => "to_read_count", Engagement;
    ABooksCount => "a_books_count", Author;
    AAvgRating => "a_avg_rating", Author;
    ARatingsCount => "a_ratings_count", Author;
    AReviewsCount => "a_reviews_count", Author;
    AAwardsCount => "a_awards_count", Author;
    ABestSellersCount => "a_best_sellers_count", Author;
    AFollowersCount => "a_followers_count", Author;
    ACommonShelvesCount => "a_common_shelves_count", Author;
    AUniqueShelvesCount => "a_unique_shelves_count", Author;
}

impl Feature {
    /// Position in the canonical column order.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn in_group(group: FeatureGroup) -> Vec<Feature> {
        Feature::ALL
            .into_iter()
            .filter(|f| f.group() == group)
            .collect()
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Feature {
    type Err = FeatureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Feature::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| FeatureError::UnknownFeature(s.to_string()))
    }
}

/// The 26 feature values of one book in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector(pub [f64; 26]);

impl FeatureVector {
    pub fn get(&self, feature: Feature) -> f64 {
        self.0[feature.index()]
    }

    fn set(&mut self, feature: Feature, value: f64) {
        self.0[feature.index()] = value;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Shannon entropy (natural log) of a count distribution. Zero-count buckets
/// contribute nothing; an all-zero input has entropy 0.
fn count_entropy<I>(counts: I) -> f64
where
    I: IntoIterator<Item = u64> + Clone,
{
    let total: u64 = counts.clone().into_iter().sum();
    if total == 0 {
        return 0.0;
    }
    let total = total as f64;
    let h: f64 = counts
        .into_iter()
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / total;
            -p * p.ln()
        })
        .sum();
    // a point mass gives -1 * ln(1) = -0.0
    h.max(0.0)
}

/// Entropy of a book's distribution over user shelves.
pub fn shelve_diversity(shelf_counts: &BTreeMap<String, u64>) -> f64 {
    count_entropy(shelf_counts.values().copied())
}

/// Entropy of the 1..5 star rating histogram.
pub fn rating_entropy(star_histogram: &[u64; 5]) -> f64 {
    count_entropy(star_histogram.iter().copied())
}

/// Regression target: natural log of the vote count.
pub fn target(votes: u64) -> Result<f64, FeatureError> {
    if votes < 1 {
        return Err(FeatureError::VotesBelowOne(votes));
    }
    Ok((votes as f64).ln())
}

pub fn extract_features(
    book: &BookRecord,
    author: &AuthorRecord,
    lex: &SentimentLexicon,
) -> Result<FeatureVector, FeatureError> {
    use Feature::*;
    if book.author_id != author.id {
        return Err(FeatureError::MismatchedAuthor {
            book: book.id.clone(),
            expected: book.author_id.clone(),
            got: author.id.clone(),
        });
    }
    let sent = aggregate_sentiment(&book.reviews, lex, DEFAULT_REVIEW_CAP);
    let mut v = FeatureVector([0.0; 26]);
    v.set(AvgRating, book.avg_rating);
    v.set(RatingsCount, book.ratings_count as f64);
    v.set(FourStarCount, book.star_histogram[3] as f64);
    v.set(FiveStarCount, book.star_histogram[4] as f64);
    v.set(RatingEntropy, rating_entropy(&book.star_histogram));
    v.set(ReviewsCount, book.reviews_count as f64);
    v.set(SentMeanPos, sent.mean_pos);
    v.set(SentMeanNeg, sent.mean_neg);
    v.set(SentMeanNeutral, sent.mean_neutral);
    v.set(SentSdPos, sent.sd_pos);
    v.set(SentSdNeg, sent.sd_neg);
    v.set(SentSdNeutral, sent.sd_neutral);
    v.set(GenresCount, book.genres_count as f64);
    v.set(ShelvesCount, book.shelf_counts.len() as f64);
    v.set(ShelveDiversity, shelve_diversity(&book.shelf_counts));
    v.set(ReadOrCurrentCount, book.read_or_current_count as f64);
    v.set(ToReadCount, book.to_read_count as f64);

    v.set(ABooksCount, author.books_count as f64);
    v.set(AAvgRating, author.avg_rating);
    v.set(ARatingsCount, author.ratings_count as f64);
    v.set(AReviewsCount, author.reviews_count as f64);
    v.set(AAwardsCount, author.awards_count as f64);
    v.set(ABestSellersCount, author.best_sellers_count as f64);
    v.set(AFollowersCount, author.followers_count as f64);
    v.set(ACommonShelvesCount, author.common_shelves_count as f64);
    v.set(AUniqueShelvesCount, author.unique_shelves_count as f64);
    Ok(v)
}

/// Row-per-book design matrix with aligned log-vote targets and categories.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub book_ids: Vec<String>,
    pub categories: Vec<AwardCategory>,
    pub columns: Vec<Feature>,
    pub rows: Vec<Vec<f64>>,
    pub targets: Vec<f64>,
}

impl FeatureMatrix {
    /// Extracts all 26 features for every book, rows ordered by book id.
    pub fn from_corpus(corpus: &Corpus, lex: &SentimentLexicon) -> Result<Self, FeatureError> {
        let authors: HashMap<&str, &AuthorRecord> =
            corpus.authors.iter().map(|a| (a.id.as_str(), a)).collect();
        let mut books: Vec<&BookRecord> = corpus.books.iter().collect();
        books.sort_by(|a, b| a.id.cmp(&b.id));

        let extracted: Vec<(FeatureVector, f64)> = books
            .par_iter()
            .map(|book| {
                let author = authors.get(book.author_id.as_str()).ok_or_else(|| {
                    FeatureError::UnknownAuthor {
                        book: book.id.clone(),
                        author: book.author_id.clone(),
                    }
                })?;
                Ok((extract_features(book, author, lex)?, target(book.votes)?))
            })
            .collect::<Result<_, FeatureError>>()?;

        let matrix = FeatureMatrix {
            book_ids: books.iter().map(|b| b.id.clone()).collect(),
            categories: books.iter().map(|b| b.category).collect(),
            columns: Feature::ALL.to_vec(),
            rows: extracted.iter().map(|(v, _)| v.0.to_vec()).collect(),
            targets: extracted.iter().map(|(_, t)| *t).collect(),
        };
        matrix.check_finite()?;
        Ok(matrix)
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column_index(&self, feature: Feature) -> Option<usize> {
        self.columns.iter().position(|&c| c == feature)
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// Keeps the listed columns, in the order given. Features absent from the
    /// matrix are skipped.
    pub fn select(&self, features: &[Feature]) -> FeatureMatrix {
        let picks: Vec<(usize, Feature)> = features
            .iter()
            .filter_map(|&f| self.column_index(f).map(|j| (j, f)))
            .collect();
        FeatureMatrix {
            book_ids: self.book_ids.clone(),
            categories: self.categories.clone(),
            columns: picks.iter().map(|&(_, f)| f).collect(),
            rows: self
                .rows
                .iter()
                .map(|r| picks.iter().map(|&(j, _)| r[j]).collect())
                .collect(),
            targets: self.targets.clone(),
        }
    }

    /// Rows at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> FeatureMatrix {
        FeatureMatrix {
            book_ids: indices.iter().map(|&i| self.book_ids[i].clone()).collect(),
            categories: indices.iter().map(|&i| self.categories[i]).collect(),
            columns: self.columns.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            targets: indices.iter().map(|&i| self.targets[i]).collect(),
        }
    }

    fn check_finite(&self) -> Result<(), FeatureError> {
        for (i, row) in self.rows.iter().enumerate() {
            if let Some(j) = row.iter().position(|x| !x.is_finite()) {
                return Err(FeatureError::NonFinite {
                    row: i,
                    column: self.columns[j].name().to_string(),
                });
            }
            if !self.targets[i].is_finite() {
                return Err(FeatureError::NonFinite {
                    row: i,
                    column: "log_votes".into(),
                });
            }
        }
        Ok(())
    }

    /// Writes `book_id,category,<features...>,log_votes` with 9 significant
    /// digits per value.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), FeatureError> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["book_id".to_string(), "category".to_string()];
        header.extend(self.columns.iter().map(|c| c.name().to_string()));
        header.push("log_votes".into());
        w.write_record(&header).map_err(csv_io)?;
        for i in 0..self.n_rows() {
            let mut rec = vec![self.book_ids[i].clone(), self.categories[i].name().to_string()];
            rec.extend(self.rows[i].iter().map(|&x| format_sig9(x)));
            rec.push(format_sig9(self.targets[i]));
            w.write_record(&rec).map_err(csv_io)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<FeatureMatrix, FeatureError> {
        let mut r = csv::Reader::from_reader(input);
        let header = r.headers().map_err(|e| csv_err(1, e))?.clone();
        let n = header.len();
        if n < 3 || &header[0] != "book_id" || &header[1] != "category" || &header[n - 1] != "log_votes"
        {
            return Err(FeatureError::Csv {
                line: 1,
                message: "header must be book_id,category,<features>,log_votes".into(),
            });
        }
        let columns = header
            .iter()
            .skip(2)
            .take(n - 3)
            .map(Feature::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        let mut m = FeatureMatrix {
            book_ids: vec![],
            categories: vec![],
            columns,
            rows: vec![],
            targets: vec![],
        };
        for (idx, rec) in r.records().enumerate() {
            let line = idx + 2;
            let rec = rec.map_err(|e| csv_err(line, e))?;
            if rec.len() != n {
                return Err(FeatureError::Csv {
                    line,
                    message: format!("expected {n} fields, found {}", rec.len()),
                });
            }
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| FeatureError::Csv {
                    line,
                    message: format!("not a number: {s:?}"),
                })
            };
            m.book_ids.push(rec[0].to_string());
            m.categories
                .push(rec[1].parse().map_err(|e: crate::corpus::CorpusError| FeatureError::Csv {
                    line,
                    message: e.to_string(),
                })?);
            m.rows
                .push(rec.iter().skip(2).take(n - 3).map(parse).collect::<Result<_, _>>()?);
            m.targets.push(parse(&rec[n - 1])?);
        }
        m.check_finite()?;
        Ok(m)
    }
}

fn csv_io(e: csv::Error) -> FeatureError {
    FeatureError::Io(std::io::Error::other(e))
}

fn csv_err(line: usize, e: csv::Error) -> FeatureError {
    FeatureError::Csv {
        line,
        message: e.to_string(),
    }
}

/// Rounds to 9 significant digits and prints the shortest representation of
/// the rounded value.
pub fn format_sig9(x: f64) -> String {
    let rounded: f64 = format!("{x:.8e}").parse().expect("formatted float reparses");
    format!("{rounded}")
}

/// Per-column standardization fitted on a subset of rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub means: Vec<f64>,
    pub sds: Vec<f64>,
}

/// Relative spread below which a column counts as constant.
const SD_FLOOR: f64 = 1e-9;

impl Scaler {
    /// Mean and population standard deviation of each column over `rows`.
    pub fn fit(matrix: &FeatureMatrix, rows: &[usize]) -> Result<Scaler, FeatureError> {
        if rows.is_empty() {
            return Err(FeatureError::EmptyRows);
        }
        if let Some(&bad) = rows.iter().find(|&&i| i >= matrix.n_rows()) {
            return Err(FeatureError::RowOutOfRange {
                index: bad,
                rows: matrix.n_rows(),
            });
        }
        let n = rows.len() as f64;
        let d = matrix.n_cols();
        let mut means = vec![0.0; d];
        for &i in rows {
            for (m, x) in means.iter_mut().zip(&matrix.rows[i]) {
                *m += x;
            }
        }
        means.iter_mut().for_each(|m| *m /= n);
        let mut sds = vec![0.0; d];
        for &i in rows {
            for ((s, x), m) in sds.iter_mut().zip(&matrix.rows[i]).zip(&means) {
                *s += (x - m).powi(2);
            }
        }
        for (s, m) in sds.iter_mut().zip(&means) {
            *s = (*s / n).sqrt();
            // A spread at round-off level is a constant column, not signal.
            if *s <= SD_FLOOR * m.abs().max(1.0) {
                *s = 0.0;
            }
        }
        Ok(Scaler { means, sds })
    }

    /// Standardizes one row; zero-sd columns map to 0.
    pub fn transform(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(self.means.iter().zip(&self.sds))
            .map(|(x, (m, s))| if *s > 0.0 { (x - m) / s } else { 0.0 })
            .collect()
    }

    pub fn apply(&self, matrix: &FeatureMatrix) -> FeatureMatrix {
        FeatureMatrix {
            rows: matrix.rows.iter().map(|r| self.transform(r)).collect(),
            ..matrix.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{synth_corpus, ReviewRecord, SynthConfig};
    use proptest::prelude::*;
    use std::f64::consts::LN_2;

    fn shelves(pairs: &[(&str, u64)]) -> BTreeMap<String, u64> {
        pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    }

    #[test]
    fn group_sizes() {
        assert_eq!(Feature::in_group(FeatureGroup::Engagement).len(), 17);
        assert_eq!(Feature::in_group(FeatureGroup::Author).len(), 9);
        for (i, f) in Feature::ALL.iter().enumerate() {
            assert_eq!(f.index(), i);
            assert_eq!(f.name().parse::<Feature>().unwrap(), *f);
        }
    }

    #[test]
    fn shelve_diversity_cases() {
        assert_eq!(shelve_diversity(&shelves(&[("read", 10)])), 0.0);
        assert!((shelve_diversity(&shelves(&[("a", 10), ("b", 10)])) - LN_2).abs() < 1e-12);
        let five = shelves(&[("a", 3), ("b", 3), ("c", 3), ("d", 3), ("e", 3)]);
        assert!((shelve_diversity(&five) - 5f64.ln()).abs() < 1e-12);
        assert_eq!(shelve_diversity(&BTreeMap::new()), 0.0);
    }

    #[test]
    fn rating_entropy_cases() {
        assert_eq!(rating_entropy(&[0, 0, 0, 0, 100]), 0.0);
        assert!((rating_entropy(&[20; 5]) - 5f64.ln()).abs() < 1e-12);
        assert!((rating_entropy(&[0, 0, 0, 50, 50]) - LN_2).abs() < 1e-12);
        assert_eq!(rating_entropy(&[0; 5]), 0.0);
    }

    #[test]
    fn target_values() {
        assert_eq!(target(1).unwrap(), 0.0);
        assert!((target(1000).unwrap() - 6.907755).abs() < 1e-6);
        let gap = target(31000).unwrap() - target(30000).unwrap();
        assert!((gap - 0.0328).abs() < 1e-4);
        assert!(matches!(target(0), Err(FeatureError::VotesBelowOne(0))));
    }

    fn sample_pair() -> (BookRecord, AuthorRecord) {
        let synth = synth_corpus(&SynthConfig { books_per_category: 1, ..Default::default() }, 5).unwrap();
        let book = synth.corpus.books[0].clone();
        let author = synth
            .corpus
            .authors
            .iter()
            .find(|a| a.id == book.author_id)
            .unwrap()
            .clone();
        (book, author)
    }

    #[test]
    fn trivial_book_composition() {
        let (mut book, author) = sample_pair();
        book.reviews.clear();
        book.shelf_counts = shelves(&[("fantasy", 12)]);
        book.star_histogram = [0, 0, 0, 0, 40];
        book.ratings_count = 40;
        book.avg_rating = 5.0;
        let v = extract_features(&book, &author, &SentimentLexicon::default_lexicon()).unwrap();
        use Feature::*;
        let sent: Vec<f64> = [SentMeanPos, SentMeanNeg, SentMeanNeutral, SentSdPos, SentSdNeg, SentSdNeutral]
            .iter()
            .map(|&f| v.get(f))
            .collect();
        assert_eq!(sent, vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(v.get(ShelveDiversity), 0.0);
        assert_eq!(v.get(RatingEntropy), 0.0);
        assert_eq!(v.get(ShelvesCount), 1.0);
    }

    #[test]
    fn star_indices() {
        let (mut book, author) = sample_pair();
        book.star_histogram = [1, 2, 3, 4, 5];
        let v = extract_features(&book, &author, &SentimentLexicon::default_lexicon()).unwrap();
        assert_eq!(v.get(Feature::FourStarCount), 4.0);
        assert_eq!(v.get(Feature::FiveStarCount), 5.0);
    }

    #[test]
    fn mismatched_author_rejected() {
        let (book, mut author) = sample_pair();
        author.id = "someone-else".into();
        assert!(matches!(
            extract_features(&book, &author, &SentimentLexicon::default_lexicon()),
            Err(FeatureError::MismatchedAuthor { .. })
        ));
    }

    #[test]
    fn review_cap_applies_in_extraction() {
        let (mut book, author) = sample_pair();
        let lex = SentimentLexicon::default_lexicon();
        book.reviews = (0..30)
            .map(|_| ReviewRecord { book_id: book.id.clone(), text: "wonderful".into() })
            .collect();
        let before = extract_features(&book, &author, &lex).unwrap();
        book.reviews.push(ReviewRecord { book_id: book.id.clone(), text: "awful awful".into() });
        assert_eq!(before, extract_features(&book, &author, &lex).unwrap());
    }

    fn toy_matrix() -> FeatureMatrix {
        FeatureMatrix {
            book_ids: vec!["a".into(), "b".into(), "c".into(), "d".into()],
            categories: vec![AwardCategory::Fiction; 4],
            columns: vec![Feature::AvgRating, Feature::RatingsCount, Feature::GenresCount],
            rows: vec![
                vec![1.0, 10.0, 3.0],
                vec![2.0, 20.0, 3.0],
                vec![3.0, 40.0, 3.0],
                vec![4.0, 80.0, 3.0],
            ],
            targets: vec![0.0, 1.0, 2.0, 3.0],
        }
    }

    #[test]
    fn scaler_standardizes() {
        let m = toy_matrix();
        let s = Scaler::fit(&m, &[0, 1, 2, 3]).unwrap();
        let z = s.apply(&m);
        for j in 0..2 {
            let col = z.column(j);
            let mean = col.iter().sum::<f64>() / 4.0;
            let sd = (col.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 4.0).sqrt();
            assert!(mean.abs() < 1e-9);
            assert!((sd - 1.0).abs() < 1e-9);
        }
        assert_eq!(z.column(2), vec![0.0; 4]);
    }

    #[test]
    fn held_out_row_at_train_mean_maps_to_zero() {
        let mut m = toy_matrix();
        let s = Scaler::fit(&m, &[0, 1, 2]).unwrap();
        // train mean of column 0 over rows 0..3 is 2.0
        m.rows[3][0] = 2.0;
        assert_eq!(s.transform(&m.rows[3])[0], 0.0);
    }

    #[test]
    fn scaler_ignores_held_out_rows() {
        let mut m = toy_matrix();
        let before = Scaler::fit(&m, &[0, 1]).unwrap();
        m.rows[3] = vec![1e6, -5.0, 9.0];
        m.rows[2] = vec![f64::MAX / 4.0, 0.0, 0.0];
        assert_eq!(before, Scaler::fit(&m, &[0, 1]).unwrap());
        assert!(matches!(Scaler::fit(&m, &[]), Err(FeatureError::EmptyRows)));
    }

    #[test]
    fn group_selection_reconstructs_matrix() {
        let synth = synth_corpus(&SynthConfig { books_per_category: 2, ..Default::default() }, 9).unwrap();
        let m = FeatureMatrix::from_corpus(&synth.corpus, &SentimentLexicon::default_lexicon()).unwrap();
        let eng = m.select(&Feature::in_group(FeatureGroup::Engagement));
        let auth = m.select(&Feature::in_group(FeatureGroup::Author));
        assert_eq!(eng.n_cols(), 17);
        assert_eq!(auth.n_cols(), 9);
        let joined: Vec<Vec<f64>> = eng
            .rows
            .iter()
            .zip(&auth.rows)
            .map(|(a, b)| a.iter().chain(b).copied().collect())
            .collect();
        assert_eq!(joined, m.rows);
    }

    #[test]
    fn csv_round_trip_is_stable() {
        let synth = synth_corpus(&SynthConfig { books_per_category: 2, ..Default::default() }, 4).unwrap();
        let m = FeatureMatrix::from_corpus(&synth.corpus, &SentimentLexicon::default_lexicon()).unwrap();
        let mut first = Vec::new();
        m.write_csv(&mut first).unwrap();
        let back = FeatureMatrix::read_csv(first.as_slice()).unwrap();
        let mut second = Vec::new();
        back.write_csv(&mut second).unwrap();
        assert_eq!(first, second);
        assert_eq!(back.n_rows(), 40);
        assert_eq!(back.n_cols(), 26);
        for (a, b) in m.rows.iter().flatten().zip(back.rows.iter().flatten()) {
            assert!((a - b).abs() <= 1e-8 * a.abs().max(1e-300));
        }
    }

    #[test]
    fn sig9_formatting() {
        assert_eq!(format_sig9(LN_2), "0.693147181");
        assert_eq!(format_sig9(3.0), "3");
        assert_eq!(format_sig9(123456789012.0), "123456789000");
    }

    proptest! {
        #[test]
        fn entropy_bounded_and_permutation_invariant(counts in proptest::collection::vec(0u64..1000, 5)) {
            let hist: [u64; 5] = counts.clone().try_into().unwrap();
            let h = rating_entropy(&hist);
            prop_assert!(h >= 0.0 && h <= 5f64.ln() + 1e-12);
            let mut rev = hist;
            rev.reverse();
            prop_assert!((h - rating_entropy(&rev)).abs() < 1e-12);
        }
    }
}
