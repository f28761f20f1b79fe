//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation or data error, 2 usage error. Flag
//! values that break a module's configuration rules (a negative noise sigma, a
//! non-positive `C`) are validation errors and are rejected before any work
//! starts; malformed or contradictory flags are usage errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::corpus::{check_corpus_file, save_corpus, synth_corpus, Corpus, SynthConfig, Violation};
use crate::eval::{
    format_table, run_category_holdout_with, run_cv_with, run_topk_with, EvalReport, EvalSettings,
    FeatureGroupSelector, DEFAULT_TOPK,
};
use crate::features::FeatureMatrix;
use crate::relieff::{relieff_rank, ReliefConfig};
use crate::sentiment::SentimentLexicon;
use crate::svr::{Kernel, SvrConfig};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DATA: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bookpop", version, about = "Predict book popularity from engagement and author features")]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Master seed; every module derives its own stream from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic corpus with a planted popularity signal.
    Synth(SynthArgs),
    /// Check a corpus file and list every violation.
    Validate(ValidateArgs),
    /// Write the per-book feature matrix as CSV.
    Featurize(FeaturizeArgs),
    /// Rank features by RReliefF weight.
    Rank(RankArgs),
    /// Run an evaluation protocol.
    Eval {
        #[command(subcommand)]
        protocol: Protocol,
    },
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    books_per_category: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    noise_sigma: Option<f64>,
    /// JSON file with generator settings; explicit flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct FeaturizeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Output CSV (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Sentiment lexicon (`term<TAB>pos|neg` lines) replacing the built-in one.
    #[arg(long)]
    lexicon: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RankArgs {
    /// Corpus JSONL, or a feature CSV from `featurize` (by `.csv` extension).
    #[arg(long = "in")]
    input: PathBuf,
    /// Output CSV (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Keep only the first N rows of the ranking.
    #[arg(long)]
    top: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    k_neighbors: Option<i64>,
    #[arg(long)]
    lexicon: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Protocol {
    /// Pooled k-fold cross-validation.
    Cv {
        #[command(flatten)]
        common: EvalArgs,
        #[arg(long, default_value_t = 10)]
        folds: usize,
    },
    /// Train on all but the most-voted k books, test on those k.
    Topk {
        #[command(flatten)]
        common: EvalArgs,
        /// Comma-separated k values.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_TOPK)]
        ks: Vec<usize>,
    },
    /// Hold out one award category at a time.
    Category {
        #[command(flatten)]
        common: EvalArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KernelArg {
    Rbf,
    Linear,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SelectorArg {
    All,
    Engagement,
    Author,
}

impl From<SelectorArg> for FeatureGroupSelector {
    fn from(s: SelectorArg) -> Self {
        match s {
            SelectorArg::All => FeatureGroupSelector::All,
            SelectorArg::Engagement => FeatureGroupSelector::Engagement,
            SelectorArg::Author => FeatureGroupSelector::Author,
        }
    }
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// JSON report path; the text table also goes next to it with a `.txt` extension.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SelectorArg::All)]
    selector: SelectorArg,
    #[arg(long, value_enum, default_value_t = KernelArg::Rbf)]
    kernel: KernelArg,
    #[arg(long = "C", allow_negative_numbers = true)]
    c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Choose C and gamma per training set by inner 3-fold CV.
    #[arg(long)]
    grid_search: bool,
    #[arg(long)]
    lexicon: Option<PathBuf>,
}

/// What went wrong, mapped onto an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
    Invalid(Vec<Violation>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(error_chain(&e))
    }
}

fn error_chain(e: &dyn std::error::Error) -> String {
    let mut msg = e.to_string();
    let mut cur = e.source();
    while let Some(s) = cur {
        let text = s.to_string();
        if !msg.contains(&text) {
            msg.push_str(": ");
            msg.push_str(&text);
        }
        cur = s.source();
    }
    msg
}

fn data<E: Into<Error>>(e: E) -> Failure {
    Failure::from(e.into())
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Data(format!("{}: {e}", path.display()))
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            EXIT_DATA
        }
        Err(Failure::Invalid(violations)) => {
            for v in &violations {
                eprintln!("{v}");
            }
            eprintln!("error: corpus has {} violation(s)", violations.len());
            EXIT_DATA
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let pool = match cli.jobs {
        Some(0) => return Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    }
    .map_err(|e| Failure::Data(format!("cannot start worker pool: {e}")))?;
    let seed = cli.seed;
    pool.install(|| match cli.command {
        Command::Synth(a) => cmd_synth(a, seed),
        Command::Validate(a) => cmd_validate(a),
        Command::Featurize(a) => cmd_featurize(a),
        Command::Rank(a) => cmd_rank(a, seed),
        Command::Eval { protocol } => cmd_eval(protocol, seed),
    })
}

fn cmd_synth(a: SynthArgs, seed: u64) -> Result<(), Failure> {
    let mut config = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
            serde_json::from_str::<SynthConfig>(&text)
                .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?
        }
        None => SynthConfig::default(),
    };
    if let Some(n) = a.books_per_category {
        config.books_per_category = n;
    }
    if let Some(s) = a.noise_sigma {
        config.noise_sigma = s;
    }
    config.validate().map_err(data)?;
    let out = synth_corpus(&config, seed).map_err(data)?;
    save_corpus(&out.corpus, &a.out).map_err(data)?;
    println!(
        "wrote {} books and {} authors to {}",
        out.corpus.books.len(),
        out.corpus.authors.len(),
        a.out.display()
    );
    Ok(())
}

/// Reads a corpus, failing with every violation listed if it is invalid.
fn read_valid_corpus(path: &Path) -> Result<Corpus, Failure> {
    let (corpus, violations) = check_corpus_file(path).map_err(data)?;
    if violations.is_empty() {
        Ok(corpus)
    } else {
        Err(Failure::Invalid(violations))
    }
}

fn cmd_validate(a: ValidateArgs) -> Result<(), Failure> {
    let corpus = read_valid_corpus(&a.input)?;
    println!(
        "ok: {} books, {} authors, {} reviews",
        corpus.books.len(),
        corpus.authors.len(),
        corpus.books.iter().map(|b| b.reviews.len()).sum::<usize>()
    );
    Ok(())
}

fn lexicon(path: Option<&Path>) -> Result<SentimentLexicon, Failure> {
    match path {
        Some(p) => SentimentLexicon::load(p).map_err(data),
        None => Ok(SentimentLexicon::default_lexicon()),
    }
}

fn featurize_corpus(path: &Path, lex: Option<&Path>) -> Result<FeatureMatrix, Failure> {
    let lex = lexicon(lex)?;
    let corpus = read_valid_corpus(path)?;
    FeatureMatrix::from_corpus(&corpus, &lex).map_err(data)
}

/// Opens `path` for writing, or stdout when absent.
fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| io_failure(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn finish(mut w: Box<dyn Write>, path: Option<&Path>) -> Result<(), Failure> {
    w.flush()
        .map_err(|e| io_failure(path.unwrap_or(Path::new("<stdout>")), e))
}

fn cmd_featurize(a: FeaturizeArgs) -> Result<(), Failure> {
    let matrix = featurize_corpus(&a.input, a.lexicon.as_deref())?;
    let mut w = sink(a.out.as_deref())?;
    matrix.write_csv(&mut w).map_err(data)?;
    finish(w, a.out.as_deref())
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn cmd_rank(a: RankArgs, seed: u64) -> Result<(), Failure> {
    let mut cfg = ReliefConfig {
        seed,
        ..Default::default()
    };
    if let Some(k) = a.k_neighbors {
        cfg.k_neighbors = usize::try_from(k).unwrap_or(0);
    }
    cfg.validate().map_err(data)?;
    if a.top == Some(0) {
        return Err(Failure::Usage("--top must be at least 1".into()));
    }
    let matrix = if is_csv(&a.input) {
        let file = File::open(&a.input).map_err(|e| io_failure(&a.input, e))?;
        FeatureMatrix::read_csv(io::BufReader::new(file)).map_err(data)?
    } else {
        featurize_corpus(&a.input, a.lexicon.as_deref())?
    };
    if let Some(top) = a.top {
        if top > matrix.n_cols() {
            return Err(Failure::Usage(format!(
                "--top {top} exceeds the {} ranked features",
                matrix.n_cols()
            )));
        }
    }
    let ranking = relieff_rank(&matrix, &cfg).map_err(data)?;
    let mut w = sink(a.out.as_deref())?;
    ranking.write_csv(&mut w, a.top).map_err(data)?;
    finish(w, a.out.as_deref())
}

fn svr_config(a: &EvalArgs, seed: u64) -> Result<SvrConfig, Failure> {
    let mut cfg = SvrConfig {
        seed,
        ..Default::default()
    };
    cfg.kernel = match a.kernel {
        KernelArg::Linear if a.gamma.is_some() => {
            return Err(Failure::Usage("--gamma applies only to --kernel rbf".into()));
        }
        KernelArg::Linear => Kernel::Linear,
        KernelArg::Rbf => match a.gamma {
            Some(gamma) => Kernel::Rbf { gamma },
            None => cfg.kernel,
        },
    };
    if let Some(c) = a.c {
        cfg.c = c;
    }
    if let Some(e) = a.epsilon {
        cfg.epsilon = e;
    }
    cfg.validate().map_err(data)?;
    Ok(cfg)
}

fn cmd_eval(protocol: Protocol, seed: u64) -> Result<(), Failure> {
    let common = match &protocol {
        Protocol::Cv { common, .. } | Protocol::Topk { common, .. } | Protocol::Category { common } => common,
    };
    let cfg = svr_config(common, seed)?;
    let mut settings = EvalSettings::new(cfg, common.selector.into(), seed);
    settings.grid_search = common.grid_search;
    match &protocol {
        Protocol::Cv { folds, .. } if *folds < 2 => {
            return Err(Failure::Usage("--folds must be at least 2".into()));
        }
        Protocol::Topk { ks, .. } if ks.is_empty() => {
            return Err(Failure::Usage("--ks needs at least one value".into()));
        }
        _ => {}
    }
    let matrix = featurize_corpus(&common.input, common.lexicon.as_deref())?;

    let (reports, title, label): (Vec<EvalReport>, String, &str) = match &protocol {
        Protocol::Cv { folds, .. } => {
            let report = run_cv_with(&matrix, &settings, *folds).map_err(data)?;
            let title = format!("{folds}-fold cross-validation ({} features)", settings.selector.name());
            (vec![report], title, "")
        }
        Protocol::Topk { ks, .. } => {
            let mut reports = run_topk_with(&matrix, &settings, ks).map_err(data)?;
            // Most-voted subsets are listed largest first.
            reports.reverse();
            (reports, "Prediction on the most-voted books".to_string(), "")
        }
        Protocol::Category { .. } => {
            let reports = run_category_holdout_with(&matrix, &settings).map_err(data)?;
            (reports, "Held-out category prediction".to_string(), "Category")
        }
    };
    let table = format_table(&title, label, &reports);
    print!("{table}");

    if let Some(out) = &common.out {
        let file = File::create(out).map_err(|e| io_failure(out, e))?;
        let mut w = BufWriter::new(file);
        let json = match &protocol {
            Protocol::Cv { .. } => serde_json::to_writer_pretty(&mut w, &reports[0]),
            _ => serde_json::to_writer_pretty(&mut w, &reports),
        };
        json.map_err(|e| Failure::Data(format!("{}: {e}", out.display())))?;
        w.write_all(b"\n").and_then(|_| w.flush()).map_err(|e| io_failure(out, e))?;
        let txt = out.with_extension("txt");
        std::fs::write(&txt, &table).map_err(|e| io_failure(&txt, e))?;
    }
    Ok(())
}
