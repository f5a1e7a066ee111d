//! Captured post records: reading, key-phrase filtering, app detection and
//! the human/app split of verse-bearing posts.
//!
//! Records are line-delimited JSON objects:
//!
//! ```text
//! {"id": "1", "text": "...", "author_id": "u1", "author_name": "...",
//!  "followers": 120, "retweet_count": 3, "source": "Twitter for iPhone",
//!  "created_at": "2016-01-01T10:00:00Z", "retweet_of": null}
//! ```
//!
//! `id`, `text` and `author_id` are required. `id` may be a JSON string or
//! integer. `created_at` accepts RFC 3339 or the classic
//! `Wed Oct 10 20:19:24 +0000 2018` layout.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::{Path, PathBuf};

use chrono::{DateTime, FixedOffset};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::matcher::{MatchIndex, MatchList};
use crate::normalize::{self, SentenceSplitter};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TweetRecord {
    pub id: String,
    pub text: String,
    pub author_id: String,
    #[serde(default)]
    pub author_name: String,
    #[serde(default)]
    pub followers: u64,
    #[serde(default)]
    pub retweet_count: u64,
    #[serde(rename = "source", default)]
    pub source_app: String,
    #[serde(default)]
    pub created_at: Option<DateTime<FixedOffset>>,
    #[serde(default)]
    pub retweet_of: Option<String>,
}

impl TweetRecord {
    /// Minimal record, mostly for fixtures.
    pub fn new(id: impl Into<String>, author_id: impl Into<String>, text: impl Into<String>) -> Self {
        TweetRecord {
            id: id.into(),
            text: text.into(),
            author_id: author_id.into(),
            author_name: String::new(),
            followers: 0,
            retweet_count: 0,
            source_app: String::new(),
            created_at: None,
            retweet_of: None,
        }
    }

    /// Reach weight: the post itself plus its retweets.
    pub fn volume(&self) -> u64 {
        1 + self.retweet_count
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("line {line}: field `{field}`: {reason}")]
    SchemaViolation {
        line: usize,
        field: String,
        reason: String,
    },
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl IngestError {
    fn violation(line: usize, field: &str, reason: impl Into<String>) -> Self {
        IngestError::SchemaViolation {
            line,
            field: field.to_string(),
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ReadMode {
    /// Skip malformed lines, reporting each one.
    #[default]
    Lenient,
    /// Abort on the first malformed line.
    Strict,
}

fn parse_timestamp(s: &str) -> Option<DateTime<FixedOffset>> {
    DateTime::parse_from_rfc3339(s)
        .or_else(|_| DateTime::parse_from_str(s, "%a %b %d %H:%M:%S %z %Y"))
        .ok()
}

fn string_field(map: &Map<String, Value>, line: usize, field: &str, required: bool) -> Result<String, IngestError> {
    match map.get(field) {
        Some(Value::String(s)) => Ok(s.clone()),
        Some(Value::Number(n)) if n.is_u64() || n.is_i64() => Ok(n.to_string()),
        None | Some(Value::Null) if !required => Ok(String::new()),
        None | Some(Value::Null) => Err(IngestError::violation(line, field, "missing")),
        Some(_) => Err(IngestError::violation(line, field, "expected a string")),
    }
}

fn count_field(map: &Map<String, Value>, line: usize, field: &str) -> Result<u64, IngestError> {
    match map.get(field) {
        None | Some(Value::Null) => Ok(0),
        Some(Value::Number(n)) => n
            .as_u64()
            .ok_or_else(|| IngestError::violation(line, field, "expected a non-negative integer")),
        Some(Value::String(s)) => s
            .trim()
            .parse()
            .map_err(|_| IngestError::violation(line, field, "expected a non-negative integer")),
        Some(_) => Err(IngestError::violation(line, field, "expected a non-negative integer")),
    }
}

/// Parses one record line; `line` is used for error reporting only.
pub fn parse_record(text: &str, line: usize) -> Result<TweetRecord, IngestError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| IngestError::violation(line, "<record>", e.to_string()))?;
    let Value::Object(map) = value else {
        return Err(IngestError::violation(line, "<record>", "expected a JSON object"));
    };
    let id = string_field(&map, line, "id", true)?;
    if id.is_empty() {
        return Err(IngestError::violation(line, "id", "empty"));
    }
    let created_at = match string_field(&map, line, "created_at", false)?.as_str() {
        "" => None,
        s => Some(parse_timestamp(s).ok_or_else(|| IngestError::violation(line, "created_at", "unparseable timestamp"))?),
    };
    let retweet_of = Some(string_field(&map, line, "retweet_of", false)?).filter(|s| !s.is_empty());
    Ok(TweetRecord {
        id,
        text: string_field(&map, line, "text", true)?,
        author_id: string_field(&map, line, "author_id", true)?,
        author_name: string_field(&map, line, "author_name", false)?,
        followers: count_field(&map, line, "followers")?,
        retweet_count: count_field(&map, line, "retweet_count")?,
        source_app: string_field(&map, line, "source", false)?,
        created_at,
        retweet_of,
    })
}

/// Streams records from line-delimited JSON, in file order.
///
/// Blank lines are skipped. A repeated `id` is a schema violation.
pub struct RecordReader<R> {
    lines: io::Lines<R>,
    line_no: usize,
    seen: HashSet<String>,
}

impl<R: BufRead> RecordReader<R> {
    pub fn new(reader: R) -> Self {
        RecordReader {
            lines: reader.lines(),
            line_no: 0,
            seen: HashSet::new(),
        }
    }
}

impl<R: BufRead> Iterator for RecordReader<R> {
    type Item = Result<TweetRecord, IngestError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let line = self.lines.next()?;
            self.line_no += 1;
            let line = match line {
                Ok(l) => l,
                Err(e) => {
                    return Some(Err(IngestError::Io {
                        path: PathBuf::from("<records>"),
                        source: e,
                    }))
                }
            };
            let trimmed = line.trim().trim_start_matches('\u{FEFF}');
            if trimmed.is_empty() {
                continue;
            }
            let record = parse_record(trimmed, self.line_no).and_then(|r| {
                if self.seen.insert(r.id.clone()) {
                    Ok(r)
                } else {
                    Err(IngestError::violation(self.line_no, "id", format!("duplicate id {}", r.id)))
                }
            });
            return Some(record);
        }
    }
}

/// Everything read from a record file.
#[derive(Debug, Default)]
pub struct RecordBatch {
    pub records: Vec<TweetRecord>,
    /// Lines skipped in lenient mode.
    pub violations: Vec<IngestError>,
}

pub fn read_records_from<R: Read>(reader: R, mode: ReadMode) -> Result<RecordBatch, IngestError> {
    let mut batch = RecordBatch::default();
    for item in RecordReader::new(BufReader::new(reader)) {
        match item {
            Ok(record) => batch.records.push(record),
            Err(e @ IngestError::Io { .. }) => return Err(e),
            Err(e) if mode == ReadMode::Strict => return Err(e),
            Err(e) => {
                log::warn!("skipping record: {e}");
                batch.violations.push(e);
            }
        }
    }
    Ok(batch)
}

pub fn read_records(path: &Path, mode: ReadMode) -> Result<RecordBatch, IngestError> {
    let io_err = |source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::open(path).map_err(io_err)?;
    read_records_from(file, mode).map_err(|e| match e {
        IngestError::Io { source, .. } => io_err(source),
        other => other,
    })
}

/// Phrases that typically introduce or close a recited verse.
pub const DEFAULT_KEY_PHRASES: [&str; 7] = [
    "بسم الله الرحمن الرحيم",
    "صدق الله العظيم",
    "قوله تعالى",
    "قال تعالى",
    "قال المولى",
    "قال عز وجل",
    "قال في كتابه",
];

/// Normalized key phrases used to pre-filter captured posts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyPhraseSet {
    phrases: Vec<Vec<String>>,
}

impl Default for KeyPhraseSet {
    fn default() -> Self {
        KeyPhraseSet::new(DEFAULT_KEY_PHRASES)
    }
}

impl KeyPhraseSet {
    pub fn new<I, S>(phrases: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut phrases: Vec<Vec<String>> = phrases
            .into_iter()
            .map(|p| normalize::tokenize(p.as_ref()))
            .filter(|p| !p.is_empty())
            .collect();
        phrases.dedup();
        KeyPhraseSet { phrases }
    }

    pub fn empty() -> Self {
        KeyPhraseSet { phrases: Vec::new() }
    }

    /// One phrase per line; blank lines and `#` comments ignored.
    pub fn from_reader<R: BufRead>(reader: R) -> io::Result<Self> {
        let lines = reader
            .lines()
            .collect::<io::Result<Vec<_>>>()?
            .into_iter()
            .map(|l| l.trim().to_string())
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        Ok(KeyPhraseSet::new(lines))
    }

    pub fn phrases(&self) -> &[Vec<String>] {
        &self.phrases
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    /// True when a phrase occurs as a contiguous run of the text's tokens.
    ///
    /// Punctuation is split away first, so `قال تعالى:` still carries
    /// `قال تعالى`.
    pub fn matches(&self, text: &str) -> bool {
        if self.phrases.is_empty() {
            return false;
        }
        let tokens = SentenceSplitter::default().split(text).tokens;
        self.phrases
            .iter()
            .any(|p| tokens.windows(p.len()).any(|w| w == p.as_slice()))
    }
}

pub fn keyphrase_filter<'a, I>(records: I, phrases: &'a KeyPhraseSet) -> impl Iterator<Item = TweetRecord> + 'a
where
    I: IntoIterator<Item = TweetRecord>,
    I::IntoIter: 'a,
{
    records.into_iter().filter(move |r| phrases.matches(&r.text))
}

/// Hashtags in raw text, normalized and without the `#` marker.
pub fn hashtags(text: &str) -> Vec<String> {
    text.split_whitespace()
        .filter_map(|t| t.strip_prefix('#'))
        .map(|t| t.trim_end_matches(|c: char| !(c.is_alphanumeric() || c == '_')))
        .map(normalize::normalize)
        .filter(|t| !t.is_empty())
        .collect()
}

/// True when the text carries the hashtag (compared in normalized space).
pub fn has_hashtag(text: &str, tag: &str) -> bool {
    let wanted = normalize::normalize(tag.trim_start_matches('#'));
    !wanted.is_empty() && hashtags(text).contains(&wanted)
}

/// Client applications that post on a user's behalf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppRegistry {
    identifiers: Vec<String>,
}

pub const DEFAULT_APP_IDENTIFIERS: [&str; 3] = ["du3a", "zad-muslim", "alathkar"];

impl Default for AppRegistry {
    fn default() -> Self {
        AppRegistry::new(DEFAULT_APP_IDENTIFIERS)
    }
}

impl AppRegistry {
    pub fn new<I, S>(identifiers: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        AppRegistry {
            identifiers: identifiers
                .into_iter()
                .map(|s| s.as_ref().trim().to_lowercase())
                .filter(|s| !s.is_empty())
                .collect(),
        }
    }

    /// One identifier per line; blank lines and `#` comments ignored.
    pub fn from_reader<R: BufRead>(reader: R) -> io::Result<Self> {
        let lines = reader.lines().collect::<io::Result<Vec<_>>>()?;
        Ok(AppRegistry::new(lines.iter().map(|l| l.trim()).filter(|l| !l.starts_with('#'))))
    }

    pub fn identifiers(&self) -> &[String] {
        &self.identifiers
    }

    pub fn is_app_source(&self, source: &str) -> bool {
        let source = source.to_lowercase();
        self.identifiers.iter().any(|id| source.contains(id.as_str()))
    }
}

pub fn detect_app_tweet(record: &TweetRecord, registry: &AppRegistry) -> bool {
    registry.is_app_source(&record.source_app)
}

/// Original posts after folding explicit retweet records into their parents.
#[derive(Debug, Default)]
pub struct FoldedRecords {
    pub originals: Vec<TweetRecord>,
    /// Retweet records whose parent is in the dataset.
    pub folded: usize,
    /// Retweet records whose parent is missing; dropped.
    pub dangling: usize,
}

/// Folds explicit retweet records into their parents' counters.
///
/// A parent's counter becomes the larger of its observed `retweet_count`
/// and the number of retweet records pointing at it, so retweets that the
/// observed counter already includes are not counted twice.
pub fn fold_retweets(records: Vec<TweetRecord>) -> FoldedRecords {
    let (retweets, mut originals): (Vec<_>, Vec<_>) = records.into_iter().partition(|r| r.retweet_of.is_some());
    let positions: HashMap<&str, usize> = originals.iter().enumerate().map(|(i, r)| (r.id.as_str(), i)).collect();
    let mut explicit = vec![0u64; originals.len()];
    let mut out = FoldedRecords::default();
    for rt in &retweets {
        let parent = rt.retweet_of.as_deref().unwrap_or_default();
        match positions.get(parent) {
            Some(&i) => {
                explicit[i] += 1;
                out.folded += 1;
            }
            None => {
                log::warn!("retweet {} points at unknown post {parent}", rt.id);
                out.dangling += 1;
            }
        }
    }
    for (record, n) in originals.iter_mut().zip(explicit) {
        record.retweet_count = record.retweet_count.max(n);
    }
    out.originals = originals;
    out
}

/// A post with at least one detected verse.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedTweet {
    pub record: TweetRecord,
    pub matches: MatchList,
}

/// Summary counts for one side of the split.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetStats {
    pub account_count: u64,
    pub tweet_count: u64,
    pub verse_count: u64,
    /// Posts plus their retweets.
    pub tweet_volume: u64,
    /// Verse occurrences weighted by post volume.
    pub verse_volume: u64,
}

impl SetStats {
    pub fn verses_per_tweet(&self) -> f64 {
        ratio(self.verse_count, self.tweet_count)
    }

    pub fn retweets_per_tweet(&self) -> f64 {
        ratio(self.tweet_volume - self.tweet_count, self.tweet_count)
    }
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

/// Mergeable accumulator behind [`SetStats`].
#[derive(Debug, Clone, Default)]
pub struct StatsAccumulator {
    accounts: BTreeSet<String>,
    tweet_count: u64,
    verse_count: u64,
    tweet_volume: u64,
    verse_volume: u64,
}

impl StatsAccumulator {
    /// Adds one validated post: its author, its match count and retweets.
    pub fn add(&mut self, author_id: &str, matches: usize, retweet_count: u64) {
        if !self.accounts.contains(author_id) {
            self.accounts.insert(author_id.to_string());
        }
        let volume = 1 + retweet_count;
        self.tweet_count += 1;
        self.verse_count += matches as u64;
        self.tweet_volume += volume;
        self.verse_volume += matches as u64 * volume;
    }

    pub fn merge(mut self, other: StatsAccumulator) -> Self {
        self.accounts.extend(other.accounts);
        self.tweet_count += other.tweet_count;
        self.verse_count += other.verse_count;
        self.tweet_volume += other.tweet_volume;
        self.verse_volume += other.verse_volume;
        self
    }

    pub fn finish(&self) -> SetStats {
        SetStats {
            account_count: self.accounts.len() as u64,
            tweet_count: self.tweet_count,
            verse_count: self.verse_count,
            tweet_volume: self.tweet_volume,
            verse_volume: self.verse_volume,
        }
    }
}

/// Verse-bearing posts split by whether a registered app posted them.
#[derive(Debug, Clone, Default)]
pub struct DatasetPartition {
    pub human_tweets: Vec<ValidatedTweet>,
    pub app_tweets: Vec<ValidatedTweet>,
    pub human_stats: SetStats,
    pub app_stats: SetStats,
    /// Posts read but carrying no verse.
    pub unvalidated: usize,
}

impl DatasetPartition {
    pub fn validated_count(&self) -> usize {
        self.human_tweets.len() + self.app_tweets.len()
    }
}

/// Matches every post, keeps the verse-bearing ones and splits them.
pub fn partition(records: Vec<TweetRecord>, index: &MatchIndex, registry: &AppRegistry) -> DatasetPartition {
    let matched: Vec<(TweetRecord, MatchList)> = records
        .into_par_iter()
        .map(|r| {
            let m = index.extract_verses(&r.text);
            (r, m)
        })
        .collect();
    partition_matched(matched, registry)
}

/// Splits posts whose matches are already known.
pub fn partition_matched(matched: Vec<(TweetRecord, MatchList)>, registry: &AppRegistry) -> DatasetPartition {
    let mut out = DatasetPartition::default();
    let mut human = StatsAccumulator::default();
    let mut app = StatsAccumulator::default();
    for (record, matches) in matched {
        if !matches.is_validated() {
            out.unvalidated += 1;
            continue;
        }
        let (set, stats) = if detect_app_tweet(&record, registry) {
            (&mut out.app_tweets, &mut app)
        } else {
            (&mut out.human_tweets, &mut human)
        };
        stats.add(&record.author_id, matches.len(), record.retweet_count);
        set.push(ValidatedTweet { record, matches });
    }
    out.human_stats = human.finish();
    out.app_stats = app.finish();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(id: &str, text: &str) -> String {
        format!(r#"{{"id":"{id}","text":"{text}","author_id":"a{id}","source":"Twitter for iPhone"}}"#)
    }

    #[test]
    fn reads_well_formed_lines() {
        let data = [line("1", "x"), line("2", "y"), line("3", "z")].join("\n");
        let batch = read_records_from(data.as_bytes(), ReadMode::Strict).unwrap();
        assert_eq!(batch.records.len(), 3);
        assert_eq!(batch.records[2].id, "3");
        assert!(batch.violations.is_empty());
    }

    #[test]
    fn missing_text_is_a_violation() {
        let data = format!("{}\n{}\n", line("1", "x"), r#"{"id":"2","author_id":"b"}"#);
        let batch = read_records_from(data.as_bytes(), ReadMode::Lenient).unwrap();
        assert_eq!(batch.records.len(), 1);
        match &batch.violations[..] {
            [IngestError::SchemaViolation { line: 2, field, .. }] => assert_eq!(field, "text"),
            other => panic!("unexpected {other:?}"),
        }
        let err = read_records_from(data.as_bytes(), ReadMode::Strict).unwrap_err();
        assert!(matches!(err, IngestError::SchemaViolation { line: 2, .. }));
    }

    #[test]
    fn empty_file_is_empty_stream() {
        let batch = read_records_from(&b""[..], ReadMode::Strict).unwrap();
        assert!(batch.records.is_empty());
    }

    #[test]
    fn field_variants() {
        let r = parse_record(
            r#"{"id":123,"text":"t","author_id":9,"followers":"15","retweet_count":2,"created_at":"Wed Oct 10 20:19:24 +0000 2018","retweet_of":null}"#,
            1,
        )
        .unwrap();
        assert_eq!(r.id, "123");
        assert_eq!(r.author_id, "9");
        assert_eq!(r.followers, 15);
        assert!(r.created_at.is_some());
        assert!(r.retweet_of.is_none());
        assert!(parse_record(r#"{"id":"1","text":"t","author_id":"a","retweet_count":-1}"#, 4).is_err());
        assert!(parse_record(r#"{"id":"","text":"t","author_id":"a"}"#, 4).is_err());
        assert!(parse_record(r#"{"id":"1","text":"t","author_id":"a","created_at":"yesterday"}"#, 4).is_err());
        assert!(parse_record("[1,2]", 4).is_err());
    }

    #[test]
    fn duplicate_ids_rejected() {
        let data = [line("1", "x"), line("1", "y")].join("\n");
        let batch = read_records_from(data.as_bytes(), ReadMode::Lenient).unwrap();
        assert_eq!(batch.records.len(), 1);
        assert_eq!(batch.violations.len(), 1);
    }

    #[test]
    fn key_phrase_filter() {
        let phrases = KeyPhraseSet::default();
        assert_eq!(phrases.phrases().len(), 7);
        assert!(phrases.matches("قال تعالى: وما كان ربك نسيا"));
        assert!(phrases.matches("قَالَ تَعَالَى"));
        assert!(!phrases.matches("بسم الله"));
        assert!(!KeyPhraseSet::empty().matches("قال تعالى"));

        let records = vec![
            TweetRecord::new("1", "a", "صدق الله العظيم"),
            TweetRecord::new("2", "a", "صباح الخير"),
        ];
        let kept: Vec<_> = keyphrase_filter(records, &phrases).collect();
        assert_eq!(kept.len(), 1);
        let again: Vec<_> = keyphrase_filter(kept.clone(), &phrases).collect();
        assert_eq!(again, kept);
    }

    #[test]
    fn hashtag_scope() {
        assert_eq!(hashtags("دعاء #نيوزيلندا، #Friday"), ["نيوزيلندا", "Friday"]);
        assert!(has_hashtag("اللهم ارحمهم #نيوزيلندا", "#نيوزيلندا"));
        assert!(!has_hashtag("نيوزيلندا", "نيوزيلندا"));
    }

    #[test]
    fn app_detection() {
        let registry = AppRegistry::default();
        let mut r = TweetRecord::new("1", "a", "");
        r.source_app = "du3a.org".into();
        assert!(detect_app_tweet(&r, &registry));
        r.source_app = r#"<a href="https://Zad-Muslim.com" rel="nofollow">زاد</a>"#.into();
        assert!(detect_app_tweet(&r, &registry));
        r.source_app = "Twitter for iPhone".into();
        assert!(!detect_app_tweet(&r, &registry));
        r.source_app = "du3a.org".into();
        assert!(!detect_app_tweet(&r, &AppRegistry::new(Vec::<String>::new())));
    }

    #[test]
    fn registry_file() {
        let registry = AppRegistry::from_reader("# apps\ndu3a\n\n  Example-App \n".as_bytes()).unwrap();
        assert_eq!(registry.identifiers(), ["du3a", "example-app"]);
    }

    #[test]
    fn retweet_folding() {
        let mut parent = TweetRecord::new("p", "a", "x");
        parent.retweet_count = 1;
        let mut rts: Vec<TweetRecord> = (0..3)
            .map(|i| {
                let mut r = TweetRecord::new(format!("r{i}"), "b", "RT x");
                r.retweet_of = Some("p".into());
                r
            })
            .collect();
        rts[2].retweet_of = Some("missing".into());
        let mut records = vec![parent];
        records.extend(rts);
        let folded = fold_retweets(records);
        assert_eq!(folded.originals.len(), 1);
        assert_eq!(folded.originals[0].retweet_count, 2);
        assert_eq!(folded.folded, 2);
        assert_eq!(folded.dangling, 1);
    }

    #[test]
    fn table_three_derived_averages() {
        // Published human-side counts: 2.78 retweets per post on average.
        let human = SetStats {
            account_count: 696_342,
            tweet_count: 2_399_588,
            verse_count: 3_174_101,
            tweet_volume: 9_076_861,
            verse_volume: 10_823_860,
        };
        assert!((human.retweets_per_tweet() - 2.78).abs() < 0.005);
        let app = SetStats {
            account_count: 23_968,
            tweet_count: 234_622,
            verse_count: 234_775,
            tweet_volume: 246_355,
            verse_volume: 248_176,
        };
        assert!((app.verses_per_tweet() - 1.0).abs() < 0.001);
    }

    #[test]
    fn accumulator_merge_is_order_independent() {
        let mut a = StatsAccumulator::default();
        a.add("u1", 2, 3);
        a.add("u2", 1, 0);
        let mut b = StatsAccumulator::default();
        b.add("u1", 1, 1);
        let ab = a.clone().merge(b.clone()).finish();
        let ba = b.merge(a).finish();
        assert_eq!(ab, ba);
        assert_eq!(
            ab,
            SetStats {
                account_count: 2,
                tweet_count: 3,
                verse_count: 4,
                tweet_volume: 7,
                verse_volume: 11,
            }
        );
    }
}
