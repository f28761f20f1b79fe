use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{validate_corpus, AuthorRecord, AwardCategory, BookRecord, Corpus, CorpusError, ReviewRecord, Violation};

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Line {
    Author(AuthorRecord),
    Book(BookRecord),
    Review(ReviewRecord),
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum LineRef<'a> {
    Author(&'a AuthorRecord),
    Book(&'a BookRecord),
    Review(&'a ReviewRecord),
}

/// Line number of each book and author record, keyed by id.
pub type SourceLines = HashMap<String, usize>;

/// Parses a JSONL corpus without validating it. Reviews are attached to their
/// books in file order; a review naming an absent book is an error.
pub fn read_corpus<R: BufRead>(reader: R) -> Result<(Corpus, SourceLines), CorpusError> {
    let mut corpus = Corpus::default();
    let mut lines = SourceLines::new();
    let mut reviews: Vec<(usize, ReviewRecord)> = Vec::new();

    for (idx, raw) in reader.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.map_err(|e| CorpusError::Malformed {
            line,
            message: e.to_string(),
        })?;
        if raw.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(&raw).map_err(|e| CorpusError::Malformed {
            line,
            message: e.to_string(),
        })?;
        if value.get("kind").and_then(Value::as_str) == Some("book") {
            if let Some(name) = value.get("category").and_then(Value::as_str) {
                if name.parse::<AwardCategory>().is_err() {
                    return Err(CorpusError::UnknownCategory {
                        line,
                        name: name.to_string(),
                    });
                }
            }
        }
        let record: Line = serde_json::from_value(value).map_err(|e| CorpusError::Malformed {
            line,
            message: e.to_string(),
        })?;
        match record {
            Line::Author(a) => {
                lines.entry(a.id.clone()).or_insert(line);
                corpus.authors.push(a);
            }
            Line::Book(b) => {
                lines.entry(b.id.clone()).or_insert(line);
                corpus.books.push(b);
            }
            Line::Review(r) => reviews.push((line, r)),
        }
    }

    let book_index: HashMap<String, usize> = corpus
        .books
        .iter()
        .enumerate()
        .map(|(i, b)| (b.id.clone(), i))
        .rev()
        .collect();
    for (line, review) in reviews {
        let Some(&i) = book_index.get(&review.book_id) else {
            return Err(CorpusError::UnresolvedReference {
                line,
                entity: "review".into(),
                target_kind: "book",
                missing: review.book_id,
            });
        };
        corpus.books[i].reviews.push(review);
    }
    Ok((corpus, lines))
}

fn open(path: &Path) -> Result<BufReader<File>, CorpusError> {
    File::open(path).map(BufReader::new).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Reads a corpus file and lists its violations, each tagged with the line
/// of the offending record.
pub fn check_corpus_file(path: impl AsRef<Path>) -> Result<(Corpus, Vec<Violation>), CorpusError> {
    let (corpus, lines) = read_corpus(open(path.as_ref())?)?;
    let violations = validate_corpus(&corpus)
        .into_iter()
        .map(|mut v| {
            v.line = lines.get(&v.entity).copied();
            v
        })
        .collect();
    Ok((corpus, violations))
}

/// Loads and validates a corpus file.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus, CorpusError> {
    let (corpus, lines) = read_corpus(open(path.as_ref())?)?;
    let known: HashMap<&str, ()> = corpus.authors.iter().map(|a| (a.id.as_str(), ())).collect();
    if let Some(b) = corpus.books.iter().find(|b| !known.contains_key(b.author_id.as_str())) {
        return Err(CorpusError::UnresolvedReference {
            line: lines[&b.id],
            entity: format!("book {}", b.id),
            target_kind: "author",
            missing: b.author_id.clone(),
        });
    }
    let violations: Vec<Violation> = validate_corpus(&corpus)
        .into_iter()
        .map(|mut v| {
            v.line = lines.get(&v.entity).copied();
            v
        })
        .collect();
    if !violations.is_empty() {
        return Err(CorpusError::Invalid(violations));
    }
    Ok(corpus)
}

/// Writes authors first, then each book followed by its reviews.
pub fn write_corpus<W: Write>(corpus: &Corpus, mut out: W) -> std::io::Result<()> {
    let mut emit = |rec: LineRef<'_>| -> std::io::Result<()> {
        serde_json::to_writer(&mut out, &rec)?;
        out.write_all(b"\n")
    };
    for a in &corpus.authors {
        emit(LineRef::Author(a))?;
    }
    for b in &corpus.books {
        emit(LineRef::Book(b))?;
        for r in &b.reviews {
            emit(LineRef::Review(r))?;
        }
    }
    Ok(())
}

pub fn save_corpus(corpus: &Corpus, path: impl AsRef<Path>) -> Result<(), CorpusError> {
    let path = path.as_ref();
    let io_err = |source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut w = BufWriter::new(file);
    write_corpus(corpus, &mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}
