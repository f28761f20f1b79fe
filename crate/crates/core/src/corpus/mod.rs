//! Book, author and review records, corpus validation, JSONL persistence and
//! the seeded synthetic generator.

mod io;
mod synth;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use io::{check_corpus_file, load_corpus, read_corpus, save_corpus, write_corpus, SourceLines};
pub use synth::{synth_corpus, LedgerEntry, PlantedTerm, SynthConfig, SynthOutput, PLANTED_TERMS, SHELF_NAMES};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot open corpus {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: malformed record: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: unknown award category {name:?}")]
    UnknownCategory { line: usize, name: String },
    #[error("unknown award category {0:?}")]
    UnknownCategoryName(String),
    #[error("line {line}: {entity} references missing {target_kind} {missing:?}")]
    UnresolvedReference {
        line: usize,
        entity: String,
        target_kind: &'static str,
        missing: String,
    },
    #[error("corpus failed validation with {} violation(s); first: {}", .0.len(), .0[0])]
    Invalid(Vec<Violation>),
    #[error("invalid synth config: {0}")]
    InvalidConfig(String),
}

macro_rules! categories {
    ($( $variant:ident => $name:literal, )*) => {
        /// Award category; the 20 values in the award's own listing order.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum AwardCategory {
            $( $variant, )*
        }

        impl AwardCategory {
            pub const ALL: [AwardCategory; 20] = [ $( AwardCategory::$variant, )* ];

            pub fn name(self) -> &'static str {
                match self {
                    $( AwardCategory::$variant => $name, )*
                }
            }
        }
    };
}

categories! {
    Fiction => "Fiction",
    MysteryThriller => "Mystery & Thriller",
    HistoricalFiction => "Historical Fiction",
    Fantasy => "Fantasy",
    Romance => "Romance",
    ScienceFiction => "Science Fiction",
    Horror => "Horror",
    Humor => "Humor",
    NonFiction => "NonFiction",
    MemoirAutobiography => "Memoir & Autobiography",
    HistoryBiography => "History & Biography",
    ScienceTechnology => "Science & Technology",
    FoodCookbooks => "Food & Cookbooks",
    GraphicNovelsComics => "Graphic Novels & Comics",
    Poetry => "Poetry",
    DebutGoodreadsAuthor => "Debut Goodreads Author",
    YoungAdultFiction => "Young Adult Fiction",
    YoungAdultFantasy => "Young Adult Fantasy",
    MiddleGradeChildrens => "Middle Grade & Children's",
    PictureBooks => "Picture Books",
}

impl fmt::Display for AwardCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AwardCategory {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AwardCategory::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CorpusError::UnknownCategoryName(s.to_string()))
    }
}

impl Serialize for AwardCategory {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for AwardCategory {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        name.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReviewRecord {
    pub book_id: String,
    pub text: String,
}

/// One nominated book. `reviews` is stored as separate `review` lines in the
/// JSONL format and is not part of the book line itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BookRecord {
    pub id: String,
    pub title: String,
    pub category: AwardCategory,
    pub votes: u64,
    pub author_id: String,
    pub avg_rating: f64,
    pub ratings_count: u64,
    pub star_histogram: [u64; 5],
    pub reviews_count: u64,
    pub genres_count: u64,
    pub shelf_counts: BTreeMap<String, u64>,
    pub read_or_current_count: u64,
    pub to_read_count: u64,
    #[serde(skip)]
    pub reviews: Vec<ReviewRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuthorRecord {
    pub id: String,
    pub name: String,
    pub books_count: u64,
    pub avg_rating: f64,
    pub ratings_count: u64,
    pub reviews_count: u64,
    pub awards_count: u64,
    pub best_sellers_count: u64,
    pub followers_count: u64,
    pub common_shelves_count: u64,
    pub unique_shelves_count: u64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Corpus {
    pub books: Vec<BookRecord>,
    pub authors: Vec<AuthorRecord>,
}

impl Corpus {
    pub fn author(&self, id: &str) -> Option<&AuthorRecord> {
        self.authors.iter().find(|a| a.id == id)
    }

    pub fn books_in(&self, category: AwardCategory) -> impl Iterator<Item = &BookRecord> {
        self.books.iter().filter(move |b| b.category == category)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    VotesAtLeastOne,
    StarHistogramSum,
    AvgRatingRange,
    AvgRatingConsistency,
    ShelfCountPositive,
    DuplicateBookId,
    DuplicateAuthorId,
    AuthorResolves,
    ReviewBelongsToBook,
    AuthorAvgRatingRange,
}

impl Rule {
    pub fn describe(self) -> &'static str {
        match self {
            Rule::VotesAtLeastOne => "votes >= 1",
            Rule::StarHistogramSum => "sum(star_histogram) == ratings_count",
            Rule::AvgRatingRange => "avg_rating in [0, 5]",
            Rule::AvgRatingConsistency => "avg_rating within 0.05 of the star histogram mean",
            Rule::ShelfCountPositive => "shelf counts > 0",
            Rule::DuplicateBookId => "book ids unique",
            Rule::DuplicateAuthorId => "author ids unique",
            Rule::AuthorResolves => "author_id resolves to exactly one author",
            Rule::ReviewBelongsToBook => "review book_id matches its book",
            Rule::AuthorAvgRatingRange => "author avg_rating in [0, 5]",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub entity: String,
    pub rule: Rule,
    pub detail: String,
    /// Source line, when the corpus came from a file.
    pub line: Option<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        write!(f, "{}: violates `{}` ({})", self.entity, self.rule.describe(), self.detail)
    }
}

/// Maximum allowed gap between `avg_rating` and the histogram mean.
pub const AVG_RATING_SLACK: f64 = 0.05;

/// Checks every schema invariant; an empty result means the corpus is valid.
pub fn validate_corpus(corpus: &Corpus) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |entity: &str, rule: Rule, detail: String| {
        out.push(Violation {
            entity: entity.to_string(),
            rule,
            detail,
            line: None,
        })
    };

    let mut author_ids: HashMap<&str, usize> = HashMap::new();
    for a in &corpus.authors {
        *author_ids.entry(a.id.as_str()).or_default() += 1;
    }
    let mut seen_authors = HashSet::new();
    for a in &corpus.authors {
        if author_ids[a.id.as_str()] > 1 && seen_authors.insert(a.id.as_str()) {
            push(&a.id, Rule::DuplicateAuthorId, format!("{} records", author_ids[a.id.as_str()]));
        }
        if !(0.0..=5.0).contains(&a.avg_rating) {
            push(&a.id, Rule::AuthorAvgRatingRange, format!("avg_rating = {}", a.avg_rating));
        }
    }

    let mut seen_books: HashMap<&str, usize> = HashMap::new();
    for b in &corpus.books {
        let count = seen_books.entry(b.id.as_str()).or_default();
        *count += 1;
        if *count == 2 {
            push(&b.id, Rule::DuplicateBookId, "id appears more than once".into());
        }
        if b.votes < 1 {
            push(&b.id, Rule::VotesAtLeastOne, format!("votes = {}", b.votes));
        }
        match author_ids.get(b.author_id.as_str()) {
            Some(1) => {}
            Some(n) => push(&b.id, Rule::AuthorResolves, format!("author {} matches {n} records", b.author_id)),
            None => push(&b.id, Rule::AuthorResolves, format!("author {} not found", b.author_id)),
        }
        if !(0.0..=5.0).contains(&b.avg_rating) {
            push(&b.id, Rule::AvgRatingRange, format!("avg_rating = {}", b.avg_rating));
        }
        let stars: u64 = b.star_histogram.iter().sum();
        if b.ratings_count > 0 {
            if stars != b.ratings_count {
                push(
                    &b.id,
                    Rule::StarHistogramSum,
                    format!("histogram sums to {stars}, ratings_count = {}", b.ratings_count),
                );
            } else {
                let mean = b
                    .star_histogram
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| (k + 1) as f64 * c as f64)
                    .sum::<f64>()
                    / stars as f64;
                if (mean - b.avg_rating).abs() > AVG_RATING_SLACK {
                    push(
                        &b.id,
                        Rule::AvgRatingConsistency,
                        format!("avg_rating = {}, histogram mean = {mean:.4}", b.avg_rating),
                    );
                }
            }
        }
        if let Some((shelf, _)) = b.shelf_counts.iter().find(|(_, &c)| c == 0) {
            push(&b.id, Rule::ShelfCountPositive, format!("shelf {shelf:?} has count 0"));
        }
        if let Some(r) = b.reviews.iter().find(|r| r.book_id != b.id) {
            push(&b.id, Rule::ReviewBelongsToBook, format!("review tagged {}", r.book_id));
        }
    }
    out
}
