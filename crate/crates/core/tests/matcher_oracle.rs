mod common;

use ayatrack::corpus::{LoadOptions, QuranCorpus};
use ayatrack::matcher::{MatchIndex, MatchOptions};
use proptest::prelude::*;

use common::*;

fn hits(index: &MatchIndex, probe: &[String]) -> Vec<OracleHit> {
    index
        .match_sentence(probe)
        .into_iter()
        .map(|m| (m.verse, m.kind, m.matched_span))
        .collect()
}

/// Tiny corpus over a four-word vocabulary, so random probes hit often.
fn dense_corpus(verses: &[Vec<usize>]) -> QuranCorpus {
    const WORDS: [&str; 4] = ["قل", "هو", "الله", "احد"];
    let text: String = verses
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let words: Vec<&str> = v.iter().map(|&w| WORDS[w]).collect();
            format!("2|{}|{}\n", i + 1, words.join(" "))
        })
        .collect();
    QuranCorpus::parse(text.as_bytes(), LoadOptions::partial()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dense_vocabulary_agrees_with_scan(
        verses in proptest::collection::vec(proptest::collection::vec(0usize..4, 1..9), 1..20),
        probe in proptest::collection::vec(0usize..4, 0..9),
        min_tokens in 2usize..5,
    ) {
        let corpus = dense_corpus(&verses);
        let options = MatchOptions::default().with_min_tokens(min_tokens).unwrap();
        let index = MatchIndex::with_options(&corpus, options);
        const WORDS: [&str; 4] = ["قل", "هو", "الله", "احد"];
        let probe: Vec<String> = probe.iter().map(|&w| WORDS[w].to_string()).collect();
        prop_assert_eq!(hits(&index, &probe), brute_force(&corpus, &probe, min_tokens));
    }

    #[test]
    fn fixture_extracts_agree_with_scan(verse in 0usize..100, start in 0usize..40, len in 1usize..16) {
        let corpus = fixture_corpus_100();
        let index = MatchIndex::build(&corpus);
        let tokens = &corpus.verses()[verse].norm_tokens;
        let start = start.min(tokens.len() - 1);
        let end = (start + len).min(tokens.len());
        let probe = tokens[start..end].to_vec();
        let expected = brute_force(&corpus, &probe, 3);
        prop_assert_eq!(hits(&index, &probe), expected.clone());
        if probe.len() >= 3 {
            prop_assert!(expected.iter().any(|h| h.0 == corpus.verses()[verse].reference));
        }
    }
}
