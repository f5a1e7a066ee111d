//! The `ayatrack` command line.
//!
//! Exit codes: 0 on success, 1 when a step produced no results, 2 on bad
//! input (missing files, schema errors, invalid flags).

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::analytics::{load_labels, sample_for_review, Dataset, TweetMatches, WeightMode};
use crate::corpus::{CorpusFormat, LoadOptions, QuranCorpus};
use crate::ingest::{self, AppRegistry, KeyPhraseSet, ReadMode, TweetRecord};
use crate::matcher::{MatchIndex, MatchKind, MatchOptions, DEFAULT_MIN_TOKENS};

pub mod artifact;
pub mod matchfile;
pub mod report;

pub use artifact::{sha256_file, sha256_hex, IndexArtifact};
pub use report::{build_report, DatasetSelection, ReportBundle, ReportConfig, ReportInputs};

#[derive(Debug, Parser)]
#[command(name = "ayatrack", version, about = "Find and analyze Quran verses quoted in social media posts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load and categorize the verse text, then write an index artifact.
    BuildIndex(BuildIndexArgs),
    /// Keep posts that contain a key phrase (and optionally a hashtag).
    Filter(FilterArgs),
    /// Detect verses in posts and write the match file.
    Extract(ExtractArgs),
    /// Aggregate a match file into a report bundle.
    Analyze(AnalyzeArgs),
    /// Draw a seeded sample of matched posts for manual review.
    Sample(SampleArgs),
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Index artifact from `build-index`.
    #[arg(long, conflicts_with_all = ["corpus", "categories"])]
    pub index: Option<PathBuf>,
    /// Verse text, one `sura|ayah|text` line per verse.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    #[arg(long, default_value = "tanzil-pipe")]
    pub corpus_format: CorpusFormat,
    /// CSV of `sura,ayah,categories` rows, categories `;`-separated.
    #[arg(long)]
    pub categories: Option<PathBuf>,
    /// Accept a text with fewer than 6,236 verses.
    #[arg(long)]
    pub partial_corpus: bool,
}

#[derive(Debug, Args)]
pub struct MatchArgs {
    /// Shortest sentence, in words, that may match a verse.
    #[arg(long, default_value_t = DEFAULT_MIN_TOKENS)]
    pub min_tokens: usize,
    /// Required to set --min-tokens below the default.
    #[arg(long)]
    pub allow_short_matches: bool,
}

#[derive(Debug, Args)]
pub struct BuildIndexArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Where to write the artifact.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    /// Line-delimited JSON posts.
    #[arg(long)]
    pub input: PathBuf,
    /// Key phrases, one per line (defaults to the built-in seven).
    #[arg(long)]
    pub phrases: Option<PathBuf>,
    /// Also require one of these hashtags.
    #[arg(long = "hashtag")]
    pub hashtags: Vec<String>,
    #[arg(long)]
    pub out: PathBuf,
    /// Abort on the first malformed record instead of skipping it.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub matching: MatchArgs,
    #[arg(long)]
    pub input: PathBuf,
    /// Match file to write.
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the run summary here.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[arg(long, default_value = "volume")]
    pub weight_mode: WeightMode,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Match file from `extract`.
    #[arg(long)]
    pub matches: PathBuf,
    /// The posts `extract` read.
    #[arg(long)]
    pub input: PathBuf,
    /// CSV of `author_id,main_label,secondary_label`.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// App identifiers, one per line.
    #[arg(long)]
    pub apps: Option<PathBuf>,
    #[arg(long, default_value = "volume")]
    pub weight_mode: WeightMode,
    /// Split each sentence's weight across the verses it matched.
    #[arg(long)]
    pub distinct_verses: bool,
    #[arg(long, value_enum, default_value = "human")]
    pub dataset: DatasetSelection,
    /// Leaderboard length.
    #[arg(long, default_value_t = 10)]
    pub top: usize,
    /// Number of most-retweeted accounts to list.
    #[arg(long, default_value_t = 500)]
    pub influential: usize,
    /// Report directory.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub matches: PathBuf,
    /// Posts file; adds their text to the sample.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    pub n_full: usize,
    #[arg(long, default_value_t = 100)]
    pub n_fragment: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug)]
pub enum Failure {
    /// Bad or missing input; exit code 2.
    Input(String),
    /// Nothing to report; exit code 1.
    Empty(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Empty(_) => 1,
            Failure::Input(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Empty(m) => m,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn write_err(path: &Path) -> impl Fn(io::Error) -> Failure + '_ {
    move |e| Failure::Input(format!("cannot write {}: {e}", path.display()))
}

fn mode(strict: bool) -> ReadMode {
    if strict {
        ReadMode::Strict
    } else {
        ReadMode::Lenient
    }
}

fn hash_of(path: &Path) -> Result<String, Failure> {
    sha256_file(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn describe(path: &Path) -> Result<Value, Failure> {
    Ok(json!({ "path": path.display().to_string(), "sha256": hash_of(path)? }))
}

impl CorpusArgs {
    /// Loads the corpus and describes where it came from.
    pub fn load(&self) -> Result<(QuranCorpus, Value), Failure> {
        if let Some(index) = &self.index {
            let artifact = IndexArtifact::load(index).map_err(input_err)?;
            let content = artifact.content_sha256.clone();
            let corpus = artifact.corpus().map_err(|e| Failure::Input(format!("{}: {e}", index.display())))?;
            return Ok((
                corpus,
                json!({ "index": index.display().to_string(), "content_sha256": content }),
            ));
        }
        let path = self
            .corpus
            .as_deref()
            .ok_or_else(|| Failure::Input("either --index or --corpus is required".into()))?;
        let options = LoadOptions {
            format: self.corpus_format,
            allow_partial: self.partial_corpus,
        };
        let mut corpus = QuranCorpus::load(path, options).map_err(input_err)?;
        let mut meta = json!({ "corpus": describe(path)? });
        if let Some(categories) = &self.categories {
            corpus = corpus.load_categories(categories).map_err(input_err)?;
            meta["categories"] = describe(categories)?;
        }
        meta["content_sha256"] = json!(sha256_hex(&corpus.to_json()));
        Ok((corpus, meta))
    }
}

impl MatchArgs {
    pub fn options(&self) -> Result<MatchOptions, Failure> {
        if self.min_tokens < DEFAULT_MIN_TOKENS && !self.allow_short_matches {
            return Err(Failure::Input(format!(
                "--min-tokens below {DEFAULT_MIN_TOKENS} needs --allow-short-matches"
            )));
        }
        MatchOptions::default().with_min_tokens(self.min_tokens).map_err(input_err)
    }
}

fn read_posts(path: &Path, strict: bool) -> Result<(ingest::FoldedRecords, usize), Failure> {
    let batch = ingest::read_records(path, mode(strict)).map_err(input_err)?;
    let violations = batch.violations.len();
    Ok((ingest::fold_retweets(batch.records), violations))
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json serializes"));
}

pub fn cmd_build_index(args: &BuildIndexArgs) -> Result<Value, Failure> {
    if args.corpus.index.is_some() {
        return Err(Failure::Input("build-index reads --corpus, not --index".into()));
    }
    let (corpus, _) = args.corpus.load()?;
    let corpus_hash = hash_of(args.corpus.corpus.as_deref().expect("corpus path checked by load"))?;
    let categories_hash = args.corpus.categories.as_deref().map(hash_of).transpose()?;
    let artifact = IndexArtifact::new(&corpus, corpus_hash, categories_hash);
    artifact.write(&args.out).map_err(write_err(&args.out))?;
    let counts: BTreeMap<&str, Value> = corpus
        .category_counts()
        .into_iter()
        .map(|(c, n)| (c.name(), json!({ "count": n.count, "percent": n.percent })))
        .collect();
    Ok(json!({
        "suras": corpus.sura_count(),
        "verses": corpus.len(),
        "categorized_verses": corpus.categorized_count(),
        "categories": counts,
        "content_sha256": artifact.content_sha256,
    }))
}

pub fn cmd_filter(args: &FilterArgs) -> Result<Value, Failure> {
    let phrases = match &args.phrases {
        Some(p) => KeyPhraseSet::from_reader(BufReader::new(File::open(p).map_err(|e| {
            Failure::Input(format!("cannot read {}: {e}", p.display()))
        })?))
        .map_err(input_err)?,
        None => KeyPhraseSet::default(),
    };
    let batch = ingest::read_records(&args.input, mode(args.strict)).map_err(input_err)?;
    let read = batch.records.len();
    let out = File::create(&args.out).map_err(write_err(&args.out))?;
    let mut out = BufWriter::new(out);
    let mut kept = 0usize;
    for record in ingest::keyphrase_filter(batch.records, &phrases) {
        if !args.hashtags.is_empty() && !args.hashtags.iter().any(|h| ingest::has_hashtag(&record.text, h)) {
            continue;
        }
        writeln!(out, "{}", record.to_json_line()).map_err(write_err(&args.out))?;
        kept += 1;
    }
    out.flush().map_err(write_err(&args.out))?;
    let summary = json!({
        "records_read": read,
        "schema_violations": batch.violations.len(),
        "kept": kept,
    });
    if kept == 0 {
        print_json(&summary);
        return Err(Failure::Empty("no post contained a key phrase".into()));
    }
    Ok(summary)
}

/// Matches every post, in input order.
pub fn extract_all(index: &MatchIndex, records: &[TweetRecord]) -> Vec<crate::matcher::MatchList> {
    records.par_iter().map(|r| index.extract_verses(&r.text)).collect()
}

pub fn cmd_extract(args: &ExtractArgs) -> Result<Value, Failure> {
    let options = args.matching.options()?;
    let (corpus, corpus_meta) = args.corpus.load()?;
    let index = MatchIndex::with_options(&corpus, options);
    let input_hash = hash_of(&args.input)?;
    let (folded, violations) = read_posts(&args.input, args.strict)?;
    let records = folded.originals;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(input_err)?;
    let lists = pool.install(|| extract_all(&index, &records));

    let file = File::create(&args.out).map_err(write_err(&args.out))?;
    let mut writer = matchfile::MatchWriter::new(BufWriter::new(file), args.weight_mode).map_err(write_err(&args.out))?;
    let (mut validated, mut full, mut fragment) = (0usize, 0usize, 0usize);
    for (record, list) in records.iter().zip(&lists) {
        if list.is_validated() {
            validated += 1;
        }
        for m in &list.matches {
            match m.kind {
                MatchKind::Full => full += 1,
                MatchKind::Fragment => fragment += 1,
            }
            writer.write(&record.id, record.retweet_count, m).map_err(write_err(&args.out))?;
        }
    }
    writer.finish().map_err(write_err(&args.out))?;

    let summary = json!({
        "inputs": { "corpus": corpus_meta, "posts": { "path": args.input.display().to_string(), "sha256": input_hash } },
        "config": { "min_tokens": options.min_tokens, "weight_mode": args.weight_mode },
        "records_read": records.len() + folded.folded + folded.dangling,
        "schema_violations": violations,
        "retweets_folded": folded.folded,
        "dangling_retweets": folded.dangling,
        "posts": records.len(),
        "validated_tweets": validated,
        "verse_occurrences": full + fragment,
        "full_matches": full,
        "fragment_matches": fragment,
    });
    if let Some(path) = &args.summary {
        let mut text = serde_json::to_string_pretty(&summary).expect("json serializes");
        text.push('\n');
        fs::write(path, text).map_err(write_err(path))?;
    }
    if validated == 0 {
        print_json(&summary);
        return Err(Failure::Empty("no verse found in any post".into()));
    }
    Ok(summary)
}

fn read_match_file(path: &Path) -> Result<Vec<matchfile::MatchGroup>, Failure> {
    let file = File::open(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    matchfile::read_matches(BufReader::new(file)).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<Value, Failure> {
    let (corpus, corpus_meta) = args.corpus.load()?;
    let matches = read_match_file(&args.matches)?;
    let (folded, violations) = read_posts(&args.input, args.strict)?;
    let registry = match &args.apps {
        Some(p) => AppRegistry::from_reader(BufReader::new(
            File::open(p).map_err(|e| Failure::Input(format!("cannot read {}: {e}", p.display())))?,
        ))
        .map_err(input_err)?,
        None => AppRegistry::default(),
    };
    let labels = match &args.labels {
        Some(p) => Some(
            load_labels(File::open(p).map_err(|e| Failure::Input(format!("cannot read {}: {e}", p.display())))?)
                .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        ),
        None => None,
    };
    let mut provenance = json!({
        "corpus": corpus_meta,
        "matches": describe(&args.matches)?,
        "posts": describe(&args.input)?,
        "schema_violations": violations,
        "retweets_folded": folded.folded,
        "dangling_retweets": folded.dangling,
        "apps": registry.identifiers(),
    });
    if let Some(p) = &args.labels {
        provenance["labels"] = describe(p)?;
    }
    let bundle = build_report(ReportInputs {
        corpus: &corpus,
        records: folded.originals,
        matches,
        labels: labels.as_ref(),
        registry: &registry,
        config: ReportConfig {
            weight_mode: args.weight_mode,
            distinct_verses: args.distinct_verses,
            dataset: args.dataset,
            top: args.top,
            influential: args.influential,
        },
        provenance,
    })
    .map_err(|e| Failure::Empty(e.to_string()))?;
    bundle.write_to(&args.out).map_err(write_err(&args.out))?;
    Ok(json!({ "files": bundle.files.keys().collect::<Vec<_>>() }))
}

pub fn cmd_sample(args: &SampleArgs) -> Result<Value, Failure> {
    let groups = read_match_file(&args.matches)?;
    let texts: BTreeMap<String, String> = match &args.input {
        Some(p) => ingest::read_records(p, mode(args.strict))
            .map_err(input_err)?
            .records
            .into_iter()
            .map(|r| (r.id, r.text))
            .collect(),
        None => BTreeMap::new(),
    };
    let tweets: Vec<TweetMatches> = groups
        .into_iter()
        .map(|g| TweetMatches {
            tweet_id: g.tweet_id,
            author_id: String::new(),
            retweet_count: g.retweet_count,
            dataset: Dataset::Human,
            matches: g.matches,
        })
        .collect();
    let sample = sample_for_review(&tweets, args.n_full, args.n_fragment, args.seed);
    let mut out = String::from("tweet_id\tkind\tverses");
    if args.input.is_some() {
        out.push_str("\ttext");
    }
    out.push('\n');
    for row in &sample.rows {
        let verses: Vec<String> = row.verses.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("{}\t{}\t{}", row.tweet_id, row.kind, verses.join(";")));
        if args.input.is_some() {
            let text = texts.get(&row.tweet_id).map(String::as_str).unwrap_or_default();
            out.push('\t');
            out.push_str(&text.replace(['\t', '\n', '\r'], " "));
        }
        out.push('\n');
    }
    fs::write(&args.out, out).map_err(write_err(&args.out))?;
    let summary = json!({
        "rows": sample.rows.len(),
        "seed": args.seed,
        "full_short": sample.full_short,
        "fragment_short": sample.fragment_short,
    });
    if sample.rows.is_empty() {
        print_json(&summary);
        return Err(Failure::Empty("no matched posts to sample".into()));
    }
    Ok(summary)
}

pub fn run(cli: &Cli) -> Result<Value, Failure> {
    match &cli.command {
        Command::BuildIndex(a) => cmd_build_index(a),
        Command::Filter(a) => cmd_filter(a),
        Command::Extract(a) => cmd_extract(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Sample(a) => cmd_sample(a),
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(summary) => {
            print_json(&summary);
            0
        }
        Err(f) => {
            eprintln!("ayatrack: {}", f.message());
            f.exit_code()
        }
    }
}

