mod common;

use ayatrack::analytics::{quran_baseline, top_verses, Dataset, KindFilter, TweetMatches, WeightMode};
use ayatrack::category::Category;
use ayatrack::corpus::VerseRef;
use ayatrack::matcher::{MatchIndex, MatchKind};
use ayatrack::normalize::tokenize;

use common::*;

#[test]
fn victory_verse_normalizes() {
    let corpus = full_corpus();
    assert_eq!(corpus.get(VerseRef::new(48, 1)).unwrap().norm_tokens.join(" "), "انا فتحنا لك فتحا مبينا");
    assert_eq!(corpus.get(VerseRef::new(113, 1)).unwrap().norm_tokens.join(" "), "قل اعوذ برب الفلق");
    assert_eq!(corpus.sura(112).len(), 4);
}

#[test]
fn quoted_fragment_of_19_64() {
    let corpus = full_corpus();
    let index = MatchIndex::build(&corpus);
    let list = index.extract_verses("قال تعالى: وما كان ربك نسيا");
    let oracle = brute_force(&corpus, &tokenize("وما كان ربك نسيا"), 3);
    assert_eq!(oracle.len(), 1);
    assert_eq!(list.len(), 1);
    let m = &list.matches[0];
    assert_eq!((m.verse, m.kind, m.sentence_index), (VerseRef::new(19, 64), MatchKind::Fragment, 1));
}

#[test]
fn six_short_verses_in_one_post() {
    let corpus = full_corpus();
    let index = MatchIndex::build(&corpus);
    let refs = [(113, 1), (113, 2), (113, 3), (113, 5), (112, 1), (112, 3)];
    let body: Vec<&str> = refs
        .iter()
        .map(|&(s, a)| corpus.get(VerseRef::new(s, a)).unwrap().raw_text.as_str())
        .collect();
    let list = index.extract_verses(&body.join("\n"));
    let full: Vec<VerseRef> = list.matches.iter().filter(|m| m.kind == MatchKind::Full).map(|m| m.verse).collect();
    assert_eq!(full.len(), 6);
    for &(s, a) in &refs {
        assert!(full.contains(&VerseRef::new(s, a)));
    }
    let oracle: usize = body.iter().map(|b| brute_force(&corpus, &tokenize(b), 3).len()).sum();
    assert_eq!(list.len(), oracle);
}

#[test]
fn whole_sura_112_skips_the_two_word_verse() {
    let corpus = full_corpus();
    let index = MatchIndex::build(&corpus);
    let body: Vec<&str> = corpus.sura(112).iter().map(|v| v.raw_text.as_str()).collect();
    let verses: Vec<u16> = index
        .extract_verses(&body.join("\n"))
        .matches
        .iter()
        .filter(|m| m.kind == MatchKind::Full)
        .map(|m| m.verse.ayah)
        .collect();
    assert_eq!(verses, [1, 3, 4]);
}

#[test]
fn synthetic_categories_reproduce_published_counts() {
    let corpus = full_corpus().load_categories(&synthetic_categories_path()).unwrap();
    let counts = corpus.category_counts();
    let expected = [
        (Category::HereafterUnseens, 1701),
        (Category::StoriesOfProphets, 1581),
        (Category::Disbelievers, 684),
        (Category::ShariaLaw, 487),
        (Category::Jihad, 397),
        (Category::UniverseCreation, 388),
        (Category::Worship, 337),
        (Category::BeliefBelievers, 331),
        (Category::AboutQuran, 330),
        (Category::Muhammad, 326),
        (Category::God, 322),
        (Category::Sins, 98),
        (Category::HumanBeing, 71),
        (Category::General, 1324),
    ];
    for (c, n) in expected {
        assert_eq!(counts[&c].count, n, "{}", c.name());
    }
    assert_eq!(corpus.categorized_count(), 4912);
    let baseline = quran_baseline(&corpus);
    assert!((baseline.percentage(Category::HereafterUnseens) - 27.3).abs() < 0.05);
    assert!((baseline.percentage(Category::Jihad) - 6.4).abs() < 0.05);
    assert!(corpus.get(VerseRef::new(33, 53)).unwrap().categories.contains(Category::Muhammad));
}

#[test]
fn leaderboard_from_matched_posts() {
    let corpus = full_corpus().load_categories(&synthetic_categories_path()).unwrap();
    let index = MatchIndex::build(&corpus);
    let victory = &corpus.get(VerseRef::new(48, 1)).unwrap().raw_text;
    let posts = [
        (victory.as_str(), 4),
        (victory.as_str(), 0),
        ("وَإِنَّكَ لَعَلَىٰ خُلُقٍ عَظِيمٍ", 1),
        ("لا تدري لعل الله يحدث بعد ذلك امرا", 0),
    ];
    let tweets: Vec<TweetMatches> = posts
        .iter()
        .enumerate()
        .map(|(i, &(text, rt))| TweetMatches {
            tweet_id: i.to_string(),
            author_id: "a".into(),
            retweet_count: rt,
            dataset: Dataset::Human,
            matches: index.extract_verses(text).matches,
        })
        .collect();
    let full = top_verses(&tweets, KindFilter::Full, 10, WeightMode::Volume);
    assert_eq!(full.entries[0].verse, VerseRef::new(48, 1));
    assert_eq!(full.entries[0].weighted_count, 6);
    assert_eq!(full.entries[1].verse, VerseRef::new(68, 4));
    let fragment = top_verses(&tweets, KindFilter::Fragment, 10, WeightMode::Volume);
    assert_eq!(fragment.entries[0].verse, VerseRef::new(65, 1));
}
