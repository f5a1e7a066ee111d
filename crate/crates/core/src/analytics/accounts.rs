use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Read};
use std::str::FromStr;

use chrono::{DateTime, FixedOffset};
use serde::Serialize;

use super::AnalyticsError;
use crate::ingest::TweetRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AccountKind {
    Personal,
    Page,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ContentFocus {
    /// Posts religious content exclusively.
    Rce,
    General,
}

impl AccountKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AccountKind::Personal => "personal",
            AccountKind::Page => "page",
        }
    }
}

impl ContentFocus {
    pub fn as_str(self) -> &'static str {
        match self {
            ContentFocus::Rce => "rce",
            ContentFocus::General => "general",
        }
    }
}

impl FromStr for AccountKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s.trim().to_ascii_lowercase().as_str() {
            "personal" => Ok(AccountKind::Personal),
            "page" => Ok(AccountKind::Page),
            _ => Err(()),
        }
    }
}

impl FromStr for ContentFocus {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rce" => Ok(ContentFocus::Rce),
            "general" => Ok(ContentFocus::General),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AccountLabel {
    pub kind: AccountKind,
    pub focus: ContentFocus,
}

impl fmt::Display for AccountLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.kind.as_str(), self.focus.as_str())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LabelError {
    #[error("cannot read labels: {0}")]
    Io(#[from] io::Error),
    #[error("labels line {line}: {reason}")]
    Malformed { line: u64, reason: String },
    #[error("labels line {line}: author {author_id} labeled twice")]
    Duplicate { line: u64, author_id: String },
}

/// Reads `author_id,main_label,secondary_label` rows.
///
/// Main labels are `Personal` or `Page`, secondary labels `RCE` or
/// `General`, both case-insensitive. An `author_id` header row is skipped.
pub fn load_labels<R: Read>(reader: R) -> Result<BTreeMap<String, AccountLabel>, LabelError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut labels = BTreeMap::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(e) => LabelError::Io(e),
            other => LabelError::Malformed {
                line: i as u64 + 1,
                reason: format!("{other:?}"),
            },
        })?;
        let line = row.position().map_or(i as u64 + 1, |p| p.line());
        if i == 0 && row.get(0).is_some_and(|c| c.eq_ignore_ascii_case("author_id")) {
            continue;
        }
        let malformed = |reason: String| LabelError::Malformed { line, reason };
        if row.len() < 3 {
            return Err(malformed(format!("expected 3 columns, found {}", row.len())));
        }
        let author_id = row[0].to_string();
        if author_id.is_empty() {
            return Err(malformed("empty author_id".into()));
        }
        let kind = row[1]
            .parse()
            .map_err(|_| malformed(format!("unknown main label `{}`", &row[1])))?;
        let focus = row[2]
            .parse()
            .map_err(|_| malformed(format!("unknown secondary label `{}`", &row[2])))?;
        if labels.insert(author_id.clone(), AccountLabel { kind, focus }).is_some() {
            return Err(LabelError::Duplicate { line, author_id });
        }
    }
    Ok(labels)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AccountProfile {
    pub author_id: String,
    pub author_name: String,
    pub tweet_count: u64,
    pub total_retweets_received: u64,
    /// Follower count on the most recent post seen.
    pub followers: u64,
    pub label: Option<AccountLabel>,
}

/// Per-author totals over verse-bearing posts, sorted by author id.
pub fn aggregate_accounts<'a, I>(tweets: I) -> Vec<AccountProfile>
where
    I: IntoIterator<Item = &'a TweetRecord>,
{
    let mut by_author: BTreeMap<&str, (AccountProfile, Option<DateTime<FixedOffset>>)> = BTreeMap::new();
    for t in tweets {
        let (profile, seen_at) = by_author.entry(t.author_id.as_str()).or_insert_with(|| {
            (
                AccountProfile {
                    author_id: t.author_id.clone(),
                    author_name: String::new(),
                    tweet_count: 0,
                    total_retweets_received: 0,
                    followers: 0,
                    label: None,
                },
                None,
            )
        });
        profile.tweet_count += 1;
        profile.total_retweets_received += t.retweet_count;
        if t.created_at >= *seen_at {
            *seen_at = t.created_at;
            profile.followers = t.followers;
            profile.author_name = t.author_name.clone();
        }
    }
    by_author.into_values().map(|(p, _)| p).collect()
}

impl AccountProfile {
    pub fn with_label(mut self, labels: &BTreeMap<String, AccountLabel>) -> Self {
        self.label = labels.get(&self.author_id).copied();
        self
    }
}

/// The `k` accounts whose posts were retweeted most, ties by author id.
pub fn select_influential(accounts: &[AccountProfile], k: usize) -> Vec<AccountProfile> {
    let mut ranked: Vec<&AccountProfile> = accounts.iter().collect();
    ranked.sort_by(|a, b| {
        b.total_retweets_received
            .cmp(&a.total_retweets_received)
            .then_with(|| a.author_id.cmp(&b.author_id))
    });
    ranked.into_iter().take(k).cloned().collect()
}

/// One-pass, mergeable Pearson correlation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PearsonAccumulator {
    n: u64,
    mean_x: f64,
    mean_y: f64,
    m2_x: f64,
    m2_y: f64,
    c_xy: f64,
}

impl PearsonAccumulator {
    pub fn add(&mut self, x: f64, y: f64) {
        self.n += 1;
        let n = self.n as f64;
        let dx = x - self.mean_x;
        self.mean_x += dx / n;
        let dy = y - self.mean_y;
        self.mean_y += dy / n;
        self.m2_x += dx * (x - self.mean_x);
        self.m2_y += dy * (y - self.mean_y);
        self.c_xy += dx * (y - self.mean_y);
    }

    pub fn merge(self, other: PearsonAccumulator) -> Self {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let (na, nb) = (self.n as f64, other.n as f64);
        let n = na + nb;
        let dx = other.mean_x - self.mean_x;
        let dy = other.mean_y - self.mean_y;
        PearsonAccumulator {
            n: self.n + other.n,
            mean_x: self.mean_x + dx * nb / n,
            mean_y: self.mean_y + dy * nb / n,
            m2_x: self.m2_x + other.m2_x + dx * dx * na * nb / n,
            m2_y: self.m2_y + other.m2_y + dy * dy * na * nb / n,
            c_xy: self.c_xy + other.c_xy + dx * dy * na * nb / n,
        }
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn finish(&self) -> Result<f64, AnalyticsError> {
        if self.n < 2 {
            return Err(AnalyticsError::DegenerateInput("fewer than two observations"));
        }
        if self.m2_x <= 0.0 || self.m2_y <= 0.0 {
            return Err(AnalyticsError::DegenerateInput("zero variance"));
        }
        Ok((self.c_xy / (self.m2_x * self.m2_y).sqrt()).clamp(-1.0, 1.0))
    }
}

pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64, AnalyticsError> {
    assert_eq!(xs.len(), ys.len(), "paired samples must have equal length");
    let mut acc = PearsonAccumulator::default();
    for (&x, &y) in xs.iter().zip(ys) {
        acc.add(x, y);
    }
    acc.finish()
}

/// Correlation between retweets received and follower count across accounts.
pub fn follower_retweet_correlation(accounts: &[AccountProfile]) -> Result<f64, AnalyticsError> {
    let mut acc = PearsonAccumulator::default();
    for a in accounts {
        acc.add(a.total_retweets_received as f64, a.followers as f64);
    }
    acc.finish()
}
