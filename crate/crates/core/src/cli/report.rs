//! The `analyze` report bundle, assembled in memory so it can be compared
//! byte for byte.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use super::matchfile::MatchGroup;
use crate::analytics::{
    aggregate_accounts, category_distribution, follower_retweet_correlation, grouped_distribution, quran_baseline,
    retweet_histogram, select_influential, top_verses, AccountLabel, AnalyticsError, CategoryDistribution, Dataset,
    GroupKey, KindFilter, TweetMatches, VerseLeaderboard, WeightMode,
};
use crate::category::Category;
use crate::corpus::QuranCorpus;
use crate::ingest::{partition_matched, AppRegistry, TweetRecord};
use crate::matcher::MatchList;

/// Which posts the distribution, leaderboards and account tables cover.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DatasetSelection {
    #[default]
    Human,
    App,
    All,
}

impl DatasetSelection {
    fn includes(self, d: Dataset) -> bool {
        match self {
            DatasetSelection::Human => d == Dataset::Human,
            DatasetSelection::App => d == Dataset::App,
            DatasetSelection::All => true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportConfig {
    pub weight_mode: WeightMode,
    pub distinct_verses: bool,
    pub dataset: DatasetSelection,
    pub top: usize,
    pub influential: usize,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            weight_mode: WeightMode::Volume,
            distinct_verses: false,
            dataset: DatasetSelection::Human,
            top: 10,
            influential: 500,
        }
    }
}

pub struct ReportInputs<'a> {
    pub corpus: &'a QuranCorpus,
    pub records: Vec<TweetRecord>,
    pub matches: Vec<MatchGroup>,
    pub labels: Option<&'a BTreeMap<String, AccountLabel>>,
    pub registry: &'a AppRegistry,
    pub config: ReportConfig,
    /// Echoed into the summary verbatim (input paths, hashes, read counts).
    pub provenance: Value,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReportBundle {
    pub files: BTreeMap<String, Vec<u8>>,
}

impl ReportBundle {
    pub fn write_to(&self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        for (name, bytes) in &self.files {
            fs::write(dir.join(name), bytes)?;
        }
        Ok(())
    }

    fn add(&mut self, name: &str, text: String) {
        self.files.insert(name.to_string(), text.into_bytes());
    }
}

fn clean(field: &str) -> String {
    field.replace(['\t', '\n', '\r'], " ")
}

fn distribution_rows(out: &mut String, prefix: &str, d: &CategoryDistribution) {
    for c in Category::ALL {
        writeln!(out, "{prefix}{}\t{}\t{:.4}", c.name(), d.volume(c), d.percentage(c)).unwrap();
    }
}

fn leaderboard_table(board: &VerseLeaderboard, corpus: &QuranCorpus) -> String {
    let mut out = String::from("rank\tsura\tayah\tweighted_count\toccurrences\ttext\n");
    for e in &board.entries {
        let text = corpus.get(e.verse).map(|v| clean(&v.raw_text)).unwrap_or_default();
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            e.rank, e.verse.sura, e.verse.ayah, e.weighted_count, e.occurrences, text
        )
        .unwrap();
    }
    out
}

pub fn build_report(inputs: ReportInputs<'_>) -> Result<ReportBundle, AnalyticsError> {
    let ReportInputs {
        corpus,
        records,
        matches,
        labels,
        registry,
        config,
        provenance,
    } = inputs;
    let mode = config.weight_mode;
    let mut bundle = ReportBundle::default();

    let match_rows: usize = matches.iter().map(|g| g.matches.len()).sum();
    let mut by_id: HashMap<String, MatchGroup> = HashMap::with_capacity(matches.len());
    for g in matches {
        match by_id.get_mut(&g.tweet_id) {
            Some(existing) => existing.matches.extend(g.matches),
            None => {
                by_id.insert(g.tweet_id.clone(), g);
            }
        }
    }
    let record_count = records.len();
    let joined: Vec<(TweetRecord, MatchList)> = records
        .into_iter()
        .map(|r| {
            let matches = by_id.remove(&r.id).map(|g| g.matches).unwrap_or_default();
            (r, MatchList { matches })
        })
        .collect();
    let mut orphan_ids: Vec<&String> = by_id.keys().collect();
    orphan_ids.sort();
    let orphan_rows: usize = by_id.values().map(|g| g.matches.len()).sum();
    if !by_id.is_empty() {
        log::warn!("{} matched posts missing from the post file", by_id.len());
    }

    let partition = partition_matched(joined, registry);
    let tag = |d: Dataset| {
        move |t: &crate::ingest::ValidatedTweet| {
            let mut tm = TweetMatches::from_validated(t, registry);
            tm.dataset = d;
            tm
        }
    };
    let all: Vec<TweetMatches> = partition
        .human_tweets
        .iter()
        .map(tag(Dataset::Human))
        .chain(partition.app_tweets.iter().map(tag(Dataset::App)))
        .collect();
    let selected: Vec<TweetMatches> = all.iter().filter(|t| config.dataset.includes(t.dataset)).cloned().collect();
    let selected_records: Vec<&TweetRecord> = partition
        .human_tweets
        .iter()
        .filter(|_| config.dataset.includes(Dataset::Human))
        .chain(partition.app_tweets.iter().filter(|_| config.dataset.includes(Dataset::App)))
        .map(|t| &t.record)
        .collect();

    let distribution = category_distribution(&selected, mode, config.distinct_verses)?;
    let baseline = quran_baseline(corpus);
    let mut table = String::from("category\tlabel\ttweet_volume\ttweet_percent\tquran_verses\tquran_percent\n");
    for c in Category::ALL {
        writeln!(
            table,
            "{}\t{}\t{}\t{:.4}\t{}\t{:.4}",
            c.name(),
            c.label(),
            distribution.volume(c),
            distribution.percentage(c),
            baseline.volume(c),
            baseline.percentage(c)
        )
        .unwrap();
    }
    bundle.add("category_distribution.tsv", table);

    let by_dataset = grouped_distribution(&all, GroupKey::Dataset, &BTreeMap::new(), mode, config.distinct_verses)?;
    let mut table = String::from("group\tcategory\tvolume\tpercent\n");
    for (group, d) in &by_dataset.groups {
        distribution_rows(&mut table, &format!("{group}\t"), d);
    }
    bundle.add("grouped_dataset.tsv", table);

    let mut unlabeled = Value::Null;
    if let Some(labels) = labels {
        let mut table = String::from("key\tgroup\tcategory\tvolume\tpercent\n");
        for key in [GroupKey::AccountType, GroupKey::Focus, GroupKey::Label] {
            let grouped = grouped_distribution(&selected, key, labels, mode, config.distinct_verses)?;
            unlabeled = json!(grouped.unlabeled);
            for (group, d) in &grouped.groups {
                distribution_rows(&mut table, &format!("{key}\t{group}\t"), d);
            }
        }
        bundle.add("grouped_labels.tsv", table);
    }

    let top_full = top_verses(&selected, KindFilter::Full, config.top, mode);
    let top_fragment = top_verses(&selected, KindFilter::Fragment, config.top, mode);
    bundle.add("top_full.tsv", leaderboard_table(&top_full, corpus));
    bundle.add("top_fragment.tsv", leaderboard_table(&top_fragment, corpus));

    let histogram = retweet_histogram(selected_records.iter().map(|r| r.retweet_count));
    let mut table = String::from("retweet_count\tfrequency\n");
    for (k, n) in &histogram.bins {
        writeln!(table, "{k}\t{n}").unwrap();
    }
    bundle.add("retweet_histogram.tsv", table);

    let mut table = String::from(
        "dataset\taccounts\ttweets\tverses\ttweet_volume\tverse_volume\tverses_per_tweet\tretweets_per_tweet\n",
    );
    for (name, s) in [("human", &partition.human_stats), ("app", &partition.app_stats)] {
        writeln!(
            table,
            "{name}\t{}\t{}\t{}\t{}\t{}\t{:.4}\t{:.4}",
            s.account_count,
            s.tweet_count,
            s.verse_count,
            s.tweet_volume,
            s.verse_volume,
            s.verses_per_tweet(),
            s.retweets_per_tweet()
        )
        .unwrap();
    }
    bundle.add("partition_stats.tsv", table);

    let mut accounts = aggregate_accounts(selected_records.iter().copied());
    if let Some(labels) = labels {
        accounts = accounts.into_iter().map(|a| a.with_label(labels)).collect();
    }
    let influential = select_influential(&accounts, config.influential);
    let mut table = String::from("rank\tauthor_id\tauthor_name\ttweet_count\tretweets_received\tfollowers\tlabel\n");
    for (i, a) in influential.iter().enumerate() {
        writeln!(
            table,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            i + 1,
            clean(&a.author_id),
            clean(&a.author_name),
            a.tweet_count,
            a.total_retweets_received,
            a.followers,
            a.label.map(|l| l.to_string()).unwrap_or_default()
        )
        .unwrap();
    }
    bundle.add("influential.tsv", table);

    let total_retweets: u64 = accounts.iter().map(|a| a.total_retweets_received).sum();
    let covered: u64 = influential.iter().map(|a| a.total_retweets_received).sum();
    let correlation = match follower_retweet_correlation(&accounts) {
        Ok(r) => json!({ "pearson": r }),
        Err(e) => json!({ "pearson": null, "reason": e.to_string() }),
    };
    let summary = json!({
        "config": config,
        "inputs": provenance,
        "counts": {
            "tweet_records": record_count,
            "match_rows": match_rows,
            "validated_tweets": partition.validated_count(),
            "unvalidated_tweets": partition.unvalidated,
            "orphan_match_rows": orphan_rows,
            "orphan_tweet_ids": orphan_ids.len(),
            "unlabeled_tweets": unlabeled,
        },
        "partition": { "human": partition.human_stats, "app": partition.app_stats },
        "distribution": {
            "total_volume": distribution.total_volume,
            "percent": distribution.percentages().into_iter().map(|(c, p)| (c.name(), p)).collect::<BTreeMap<_, _>>(),
        },
        "retweets": {
            "tweets": histogram.total,
            "fraction_retweeted": histogram.fraction_retweeted(),
            "power_law_fit": histogram.fit_power_law(),
        },
        "accounts": {
            "count": accounts.len(),
            "influential": influential.len(),
            "influential_retweets": covered,
            "total_retweets": total_retweets,
        },
        "correlation": correlation,
        "files": bundle.files.keys().chain(["summary.json".to_string()].iter()).collect::<Vec<_>>(),
    });
    let mut text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    text.push('\n');
    bundle.add("summary.json", text);
    Ok(bundle)
}
