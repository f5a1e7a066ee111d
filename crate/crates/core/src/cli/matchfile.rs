//! The tab-separated match file written by `extract` and read by `analyze`
//! and `sample`. One row per (post, match):
//!
//! `tweet_id sentence sura ayah kind span_start span_end categories retweet_count weight`
//!
//! `categories` is a `;`-joined list of category identifiers.

use std::io::{self, Read, Write};

use crate::analytics::WeightMode;
use crate::category::CategorySet;
use crate::corpus::VerseRef;
use crate::matcher::{MatchKind, MatchResult};

pub const HEADER: [&str; 10] = [
    "tweet_id",
    "sentence",
    "sura",
    "ayah",
    "kind",
    "span_start",
    "span_end",
    "categories",
    "retweet_count",
    "weight",
];

pub struct MatchWriter<W: Write> {
    inner: csv::Writer<W>,
    mode: WeightMode,
}

impl<W: Write> MatchWriter<W> {
    pub fn new(writer: W, mode: WeightMode) -> io::Result<Self> {
        let mut inner = csv::WriterBuilder::new().delimiter(b'\t').from_writer(writer);
        inner.write_record(HEADER)?;
        Ok(MatchWriter { inner, mode })
    }

    pub fn write(&mut self, tweet_id: &str, retweet_count: u64, m: &MatchResult) -> io::Result<()> {
        self.inner.write_record([
            tweet_id,
            &m.sentence_index.to_string(),
            &m.verse.sura.to_string(),
            &m.verse.ayah.to_string(),
            m.kind.as_str(),
            &m.matched_span.start.to_string(),
            &m.matched_span.end.to_string(),
            &m.categories.to_field(),
            &retweet_count.to_string(),
            &self.mode.weight(retweet_count).to_string(),
        ])?;
        Ok(())
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.inner.flush()?;
        self.inner.into_inner().map_err(|e| e.into_error())
    }
}

/// All rows of one post, in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchGroup {
    pub tweet_id: String,
    pub retweet_count: u64,
    pub matches: Vec<MatchResult>,
}

#[derive(Debug, thiserror::Error)]
pub enum MatchFileError {
    #[error("cannot read match file: {0}")]
    Io(#[from] io::Error),
    #[error("match file line {line}: {reason}")]
    Malformed { line: u64, reason: String },
}

/// Reads a match file, grouping consecutive rows of the same post.
pub fn read_matches<R: Read>(reader: R) -> Result<Vec<MatchGroup>, MatchFileError> {
    let mut rdr = csv::ReaderBuilder::new().delimiter(b'\t').from_reader(reader);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    if !headers.is_empty() && headers.iter().ne(HEADER) {
        return Err(MatchFileError::Malformed {
            line: 1,
            reason: "unexpected header".into(),
        });
    }
    let mut groups: Vec<MatchGroup> = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map_or(0, |p| p.line());
        let bad = |field: &str| MatchFileError::Malformed {
            line,
            reason: format!("bad {field}"),
        };
        let num = |i: usize, field: &str| row[i].parse::<u64>().map_err(|_| bad(field));
        let verse = VerseRef::new(
            row[2].parse().map_err(|_| bad("sura"))?,
            row[3].parse().map_err(|_| bad("ayah"))?,
        );
        let m = MatchResult {
            verse,
            kind: row[4].parse::<MatchKind>().map_err(|_| bad("kind"))?,
            sentence_index: num(1, "sentence")? as usize,
            matched_span: num(5, "span_start")? as usize..num(6, "span_end")? as usize,
            categories: CategorySet::parse_field(&row[7]).map_err(|_| bad("categories"))?,
        };
        let retweet_count = num(8, "retweet_count")?;
        match groups.last_mut() {
            Some(g) if g.tweet_id == row[0] => g.matches.push(m),
            _ => groups.push(MatchGroup {
                tweet_id: row[0].to_string(),
                retweet_count,
                matches: vec![m],
            }),
        }
    }
    Ok(groups)
}

fn csv_error(e: csv::Error) -> MatchFileError {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(e) => MatchFileError::Io(e),
        other => MatchFileError::Malformed {
            line,
            reason: format!("{other:?}"),
        },
    }
}
