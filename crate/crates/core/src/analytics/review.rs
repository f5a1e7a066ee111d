use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::TweetMatches;
use crate::corpus::VerseRef;
use crate::matcher::MatchKind;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReviewRow {
    pub tweet_id: String,
    pub kind: MatchKind,
    pub verses: Vec<VerseRef>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReviewSample {
    pub rows: Vec<ReviewRow>,
    /// Fewer posts with a full match existed than were requested.
    pub full_short: bool,
    /// Fewer fragment-only posts existed than were requested.
    pub fragment_short: bool,
}

/// Draws posts for manual precision review.
///
/// Posts with any full match form one pool, posts with only fragment matches
/// the other. Each pool is sampled uniformly without replacement from a
/// generator seeded with `seed`; rows keep input order within a pool.
pub fn sample_for_review(tweets: &[TweetMatches], n_full: usize, n_fragment: usize, seed: u64) -> ReviewSample {
    let (full, fragment): (Vec<&TweetMatches>, Vec<&TweetMatches>) = tweets
        .iter()
        .filter(|t| !t.matches.is_empty())
        .partition(|t| t.matches.iter().any(|m| m.kind == MatchKind::Full));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |pool: &[&TweetMatches], n: usize, kind: MatchKind| -> (Vec<ReviewRow>, bool) {
        let mut picked: Vec<usize> = if n >= pool.len() {
            (0..pool.len()).collect()
        } else {
            rand::seq::index::sample(&mut rng, pool.len(), n).into_vec()
        };
        picked.sort_unstable();
        let rows = picked
            .into_iter()
            .map(|i| ReviewRow {
                tweet_id: pool[i].tweet_id.clone(),
                kind,
                verses: pool[i].matches.iter().filter(|m| m.kind == kind).map(|m| m.verse).collect(),
            })
            .collect();
        (rows, n > pool.len())
    };
    let (mut rows, full_short) = draw(&full, n_full, MatchKind::Full);
    let (fragment_rows, fragment_short) = draw(&fragment, n_fragment, MatchKind::Fragment);
    rows.extend(fragment_rows);
    ReviewSample {
        rows,
        full_short,
        fragment_short,
    }
}
