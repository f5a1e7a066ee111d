#![allow(dead_code)]

use std::ops::Range;
use std::path::PathBuf;

use ayatrack::corpus::{LoadOptions, QuranCorpus, VerseRef};
use ayatrack::ingest::TweetRecord;
use ayatrack::matcher::MatchKind;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zipf};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn corpus_path() -> PathBuf {
    data_dir().join("quran-uthmani.txt")
}

pub fn synthetic_categories_path() -> PathBuf {
    data_dir().join("categories-synthetic.csv")
}

pub fn full_corpus() -> QuranCorpus {
    QuranCorpus::load(&corpus_path(), LoadOptions::default()).expect("full corpus loads")
}

/// Suras 1, 55, 112, 113 and 114: exactly 100 verses, with the repeated
/// refrain of sura 55 and the shared openings of 113/114.
pub fn fixture_corpus_100() -> QuranCorpus {
    let text = std::fs::read_to_string(corpus_path()).unwrap();
    let keep: String = text
        .lines()
        .filter(|l| {
            l.split('|')
                .next()
                .and_then(|s| s.parse::<u8>().ok())
                .is_some_and(|s| matches!(s, 1 | 55 | 112 | 113 | 114))
        })
        .map(|l| format!("{l}\n"))
        .collect();
    QuranCorpus::parse(keep.as_bytes(), LoadOptions::partial()).unwrap()
}

pub type OracleHit = (VerseRef, MatchKind, Range<usize>);

/// Linear scan over every verse: a full hit when the sentence is the whole
/// verse, otherwise a fragment hit at the first position it occurs.
pub fn brute_force(corpus: &QuranCorpus, sentence: &[String], min_tokens: usize) -> Vec<OracleHit> {
    let mut hits = Vec::new();
    if sentence.is_empty() || sentence.len() < min_tokens {
        return hits;
    }
    for verse in corpus.verses() {
        let tokens = &verse.norm_tokens;
        if tokens.as_slice() == sentence {
            hits.push((verse.reference, MatchKind::Full, 0..tokens.len()));
            continue;
        }
        if tokens.len() < sentence.len() {
            continue;
        }
        for start in 0..=tokens.len() - sentence.len() {
            if tokens[start..start + sentence.len()] == *sentence {
                hits.push((verse.reference, MatchKind::Fragment, start..start + sentence.len()));
                break;
            }
        }
    }
    hits
}

/// Textbook two-pass Pearson coefficient.
pub fn two_pass_pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    sxy / (sxx * syy).sqrt()
}

/// Retweet counts: zero with probability `p_zero`, otherwise Zipf(`s`) on
/// `1..=10_000`.
pub fn zipf_retweets(n: usize, s: f64, p_zero: f64, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zipf = Zipf::new(10_000.0, s).unwrap();
    (0..n)
        .map(|_| {
            if rng.random::<f64>() < p_zero {
                0
            } else {
                zipf.sample(&mut rng) as u64
            }
        })
        .collect()
}

pub const FILLER: [&str; 24] = [
    "صباح", "الخير", "يا", "اصدقاء", "اليوم", "جميل", "جدا", "نسال", "التوفيق", "للجميع", "في", "هذه",
    "الجمعه", "المباركه", "دعواتكم", "لنا", "بالشفاء", "والعافيه", "تذكير", "مهم", "لكل", "مسلم", "ومسلمه",
    "رابط",
];

pub fn filler(rng: &mut ChaCha8Rng, n: usize) -> String {
    (0..n).map(|_| *FILLER.choose(rng).unwrap()).collect::<Vec<_>>().join(" ")
}

/// A contiguous run of `len` normalized tokens from a verse.
pub fn extract(tokens: &[String], rng: &mut ChaCha8Rng, len: usize) -> Vec<String> {
    let start = rng.random_range(0..=tokens.len() - len);
    tokens[start..start + len].to_vec()
}

/// Posts of about twenty words: filler chatter, and in roughly half of them a
/// quoted verse extract between delimiters.
pub fn synthetic_tweets(corpus: &QuranCorpus, n: usize, seed: u64) -> Vec<TweetRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let retweets = zipf_retweets(n, 2.0, 0.78, seed ^ 0x5eed);
    let verses = corpus.verses();
    (0..n)
        .map(|i| {
            let n = rng.random_range(5..12);
            let mut text = filler(&mut rng, n);
            if rng.random_bool(0.5) {
                let v = &verses[rng.random_range(0..verses.len())];
                let len = rng.random_range(3..=v.norm_tokens.len().max(3)).min(v.norm_tokens.len()).min(12);
                text.push_str("\nقال تعالى: ");
                text.push_str(&extract(&v.norm_tokens, &mut rng, len).join(" "));
                text.push_str(" .");
            }
            text.push(' ');
            let n = rng.random_range(5..12);
            text.push_str(&filler(&mut rng, n));
            let mut r = TweetRecord::new(format!("t{i}"), format!("u{}", rng.random_range(0..500)), text);
            r.retweet_count = retweets[i];
            r.followers = rng.random_range(0..100_000);
            r.source_app = if rng.random_bool(0.1) { "du3a.org".into() } else { "Twitter for Android".into() };
            r
        })
        .collect()
}

pub fn write_jsonl(path: &std::path::Path, records: &[TweetRecord]) {
    let body: String = records.iter().map(|r| r.to_json_line() + "\n").collect();
    std::fs::write(path, body).unwrap();
}
