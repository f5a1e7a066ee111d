//! Aggregate statistics over verse-bearing posts.
//!
//! Every aggregate here is a fold with a mergeable accumulator, so inputs can
//! be sharded by post and combined in any order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ingest::{AppRegistry, ValidatedTweet};
use crate::matcher::MatchResult;

mod accounts;
mod distribution;
mod leaderboard;
mod retweets;
mod review;

pub use accounts::{
    aggregate_accounts, follower_retweet_correlation, load_labels, pearson, select_influential, AccountKind,
    AccountLabel, AccountProfile, ContentFocus, LabelError, PearsonAccumulator,
};
pub use distribution::{
    category_distribution, grouped_distribution, quran_baseline, CategoryDistribution, DistributionAccumulator,
    GroupKey, GroupedDistribution,
};
pub use leaderboard::{top_verses, KindFilter, LeaderboardEntry, VerseLeaderboard};
pub use retweets::{retweet_histogram, PowerLawFit, RetweetHistogram};
pub use review::{sample_for_review, ReviewRow, ReviewSample};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum AnalyticsError {
    #[error("no matched verses to aggregate")]
    EmptyDataset,
    #[error("correlation undefined: {0}")]
    DegenerateInput(&'static str),
    #[error("unknown group key `{0}` (expected dataset, account-type, focus or label)")]
    UnknownGroupKey(String),
}

/// How much a post counts toward weighted aggregates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    /// The post plus every retweet of it.
    #[default]
    Volume,
    /// Each post once.
    Count,
}

impl WeightMode {
    pub fn weight(self, retweet_count: u64) -> u64 {
        match self {
            WeightMode::Volume => 1 + retweet_count,
            WeightMode::Count => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            WeightMode::Volume => "volume",
            WeightMode::Count => "count",
        }
    }
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WeightMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "volume" => Ok(WeightMode::Volume),
            "count" => Ok(WeightMode::Count),
            _ => Err(format!("unknown weight mode `{s}`")),
        }
    }
}

/// Which side of the human/app split a post fell on.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dataset {
    #[default]
    Human,
    App,
}

impl Dataset {
    pub fn as_str(self) -> &'static str {
        match self {
            Dataset::Human => "human",
            Dataset::App => "app",
        }
    }
}

/// One post with its matches, as the aggregates consume it.
#[derive(Debug, Clone, PartialEq)]
pub struct TweetMatches {
    pub tweet_id: String,
    pub author_id: String,
    pub retweet_count: u64,
    pub dataset: Dataset,
    pub matches: Vec<MatchResult>,
}

impl TweetMatches {
    pub fn from_validated(tweet: &ValidatedTweet, registry: &AppRegistry) -> Self {
        let dataset = if crate::ingest::detect_app_tweet(&tweet.record, registry) {
            Dataset::App
        } else {
            Dataset::Human
        };
        TweetMatches {
            tweet_id: tweet.record.id.clone(),
            author_id: tweet.record.author_id.clone(),
            retweet_count: tweet.record.retweet_count,
            dataset,
            matches: tweet.matches.matches.clone(),
        }
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::category::{Category, CategorySet};
    use crate::corpus::VerseRef;
    use crate::matcher::MatchKind;

    pub fn hit(sura: u8, ayah: u16, kind: MatchKind, sentence: usize, cats: &[Category]) -> MatchResult {
        MatchResult {
            verse: VerseRef::new(sura, ayah),
            kind,
            sentence_index: sentence,
            matched_span: 0..3,
            categories: cats.iter().copied().collect::<CategorySet>(),
        }
    }

    pub fn tweet(id: &str, author: &str, retweets: u64, matches: Vec<MatchResult>) -> TweetMatches {
        TweetMatches {
            tweet_id: id.into(),
            author_id: author.into(),
            retweet_count: retweets,
            dataset: Dataset::Human,
            matches,
        }
    }
}
