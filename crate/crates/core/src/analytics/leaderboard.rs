use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{TweetMatches, WeightMode};
use crate::corpus::VerseRef;
use crate::matcher::MatchKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KindFilter {
    Full,
    Fragment,
    Both,
}

impl KindFilter {
    pub fn accepts(self, kind: MatchKind) -> bool {
        match self {
            KindFilter::Full => kind == MatchKind::Full,
            KindFilter::Fragment => kind == MatchKind::Fragment,
            KindFilter::Both => true,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            KindFilter::Full => "full",
            KindFilter::Fragment => "fragment",
            KindFilter::Both => "both",
        }
    }
}

impl fmt::Display for KindFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for KindFilter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(KindFilter::Full),
            "fragment" => Ok(KindFilter::Fragment),
            "both" | "all" => Ok(KindFilter::Both),
            _ => Err(format!("unknown match kind filter `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeaderboardEntry {
    pub rank: usize,
    pub verse: VerseRef,
    pub weighted_count: u64,
    /// Unweighted number of matches.
    pub occurrences: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerseLeaderboard {
    pub kind: KindFilter,
    pub entries: Vec<LeaderboardEntry>,
}

/// Most shared verses by weighted occurrence count.
///
/// Ties are ranked in canonical verse order.
pub fn top_verses(tweets: &[TweetMatches], kind: KindFilter, n: usize, mode: WeightMode) -> VerseLeaderboard {
    let mut counts: HashMap<VerseRef, (u64, u64)> = HashMap::new();
    for t in tweets {
        let w = mode.weight(t.retweet_count);
        for m in t.matches.iter().filter(|m| kind.accepts(m.kind)) {
            let e = counts.entry(m.verse).or_default();
            e.0 += w;
            e.1 += 1;
        }
    }
    let mut ranked: Vec<_> = counts.into_iter().collect();
    ranked.sort_unstable_by(|a, b| b.1 .0.cmp(&a.1 .0).then(a.0.cmp(&b.0)));
    let entries = ranked
        .into_iter()
        .take(n)
        .enumerate()
        .map(|(i, (verse, (weighted_count, occurrences)))| LeaderboardEntry {
            rank: i + 1,
            verse,
            weighted_count,
            occurrences,
        })
        .collect();
    VerseLeaderboard { kind, entries }
}
