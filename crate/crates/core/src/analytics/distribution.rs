use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::accounts::AccountLabel;
use super::{AnalyticsError, TweetMatches, WeightMode};
use crate::category::{Category, CategorySet};
use crate::corpus::QuranCorpus;

/// Weighted share of matched verses per category.
///
/// A verse with several categories counts fully toward each, so the
/// percentages can add up to more than 100.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoryDistribution {
    /// Weighted volume of all matched verses.
    pub total_volume: f64,
    /// Weighted volume of matched verses carrying each category.
    pub volumes: BTreeMap<Category, f64>,
    /// Unweighted number of matches aggregated.
    pub match_count: u64,
}

impl CategoryDistribution {
    pub fn volume(&self, category: Category) -> f64 {
        self.volumes.get(&category).copied().unwrap_or(0.0)
    }

    /// Share of the total volume in `[0, 1]`.
    pub fn share(&self, category: Category) -> f64 {
        if self.total_volume == 0.0 {
            0.0
        } else {
            self.volume(category) / self.total_volume
        }
    }

    /// Share as a percentage in `[0, 100]`.
    pub fn percentage(&self, category: Category) -> f64 {
        self.share(category) * 100.0
    }

    pub fn percentages(&self) -> BTreeMap<Category, f64> {
        Category::ALL.iter().map(|&c| (c, self.percentage(c))).collect()
    }
}

#[derive(Debug, Clone, Default)]
pub struct DistributionAccumulator {
    volumes: [f64; 14],
    total: f64,
    matches: u64,
}

impl DistributionAccumulator {
    pub fn add_verse(&mut self, categories: CategorySet, weight: f64) {
        for c in categories.iter() {
            self.volumes[c as usize] += weight;
        }
        self.total += weight;
        self.matches += 1;
    }

    /// Adds every match of a post.
    ///
    /// With `distinct_verses`, a sentence that matched several verses spreads
    /// the post weight evenly over them instead of giving each the full weight.
    pub fn add_tweet(&mut self, tweet: &TweetMatches, mode: WeightMode, distinct_verses: bool) {
        let weight = mode.weight(tweet.retweet_count) as f64;
        let mut per_sentence: BTreeMap<usize, usize> = BTreeMap::new();
        if distinct_verses {
            for m in &tweet.matches {
                *per_sentence.entry(m.sentence_index).or_default() += 1;
            }
        }
        for m in &tweet.matches {
            let w = match per_sentence.get(&m.sentence_index) {
                Some(&n) => weight / n as f64,
                None => weight,
            };
            self.add_verse(m.categories, w);
        }
    }

    pub fn merge(mut self, other: DistributionAccumulator) -> Self {
        for (a, b) in self.volumes.iter_mut().zip(other.volumes) {
            *a += b;
        }
        self.total += other.total;
        self.matches += other.matches;
        self
    }

    pub fn is_empty(&self) -> bool {
        self.matches == 0
    }

    pub fn finish(&self) -> CategoryDistribution {
        CategoryDistribution {
            total_volume: self.total,
            volumes: Category::ALL.iter().map(|&c| (c, self.volumes[c as usize])).collect(),
            match_count: self.matches,
        }
    }
}

pub fn category_distribution(
    tweets: &[TweetMatches],
    mode: WeightMode,
    distinct_verses: bool,
) -> Result<CategoryDistribution, AnalyticsError> {
    let mut acc = DistributionAccumulator::default();
    for t in tweets {
        acc.add_tweet(t, mode, distinct_verses);
    }
    if acc.is_empty() {
        return Err(AnalyticsError::EmptyDataset);
    }
    Ok(acc.finish())
}

/// Category shares of the corpus itself, every verse weighted once.
pub fn quran_baseline(corpus: &QuranCorpus) -> CategoryDistribution {
    let mut acc = DistributionAccumulator::default();
    for v in corpus.verses() {
        acc.add_verse(v.categories, 1.0);
    }
    acc.finish()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKey {
    /// Human or app posts.
    Dataset,
    /// Personal or Page account.
    AccountType,
    /// Religious-content-exclusive or general account.
    Focus,
    /// Both label parts, e.g. `personal/rce`.
    Label,
}

impl GroupKey {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupKey::Dataset => "dataset",
            GroupKey::AccountType => "account-type",
            GroupKey::Focus => "focus",
            GroupKey::Label => "label",
        }
    }

    pub fn needs_labels(self) -> bool {
        self != GroupKey::Dataset
    }
}

impl fmt::Display for GroupKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GroupKey {
    type Err = AnalyticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "dataset" => Ok(GroupKey::Dataset),
            "account-type" | "type" | "main" => Ok(GroupKey::AccountType),
            "focus" | "secondary" => Ok(GroupKey::Focus),
            "label" => Ok(GroupKey::Label),
            _ => Err(AnalyticsError::UnknownGroupKey(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupedDistribution {
    pub key: &'static str,
    pub groups: BTreeMap<String, CategoryDistribution>,
    /// Posts left out because their author has no imported label.
    pub unlabeled: u64,
}

pub fn grouped_distribution(
    tweets: &[TweetMatches],
    key: GroupKey,
    labels: &BTreeMap<String, AccountLabel>,
    mode: WeightMode,
    distinct_verses: bool,
) -> Result<GroupedDistribution, AnalyticsError> {
    let mut groups: BTreeMap<String, DistributionAccumulator> = BTreeMap::new();
    let mut unlabeled = 0;
    for t in tweets.iter().filter(|t| !t.matches.is_empty()) {
        let group = match key {
            GroupKey::Dataset => Some(t.dataset.as_str().to_string()),
            _ => labels.get(&t.author_id).map(|l| match key {
                GroupKey::AccountType => l.kind.as_str().to_string(),
                GroupKey::Focus => l.focus.as_str().to_string(),
                _ => l.to_string(),
            }),
        };
        match group {
            Some(g) => groups.entry(g).or_default().add_tweet(t, mode, distinct_verses),
            None => unlabeled += 1,
        }
    }
    if groups.is_empty() && unlabeled == 0 {
        return Err(AnalyticsError::EmptyDataset);
    }
    Ok(GroupedDistribution {
        key: key.as_str(),
        groups: groups.into_iter().map(|(k, acc)| (k, acc.finish())).collect(),
        unlabeled,
    })
}
