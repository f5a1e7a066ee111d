//! Full-verse and verse-fragment detection in post sentences.
//!
//! Each sentence of a post is looked up against the normalized verses as a
//! contiguous token sequence. A sentence equal to a whole verse is a `Full`
//! match for that verse; every other verse containing the sentence yields a
//! `Fragment` match. Sentences shorter than the minimum length (three tokens
//! by default) never match.
//!
//! The index interns verse tokens and keeps a position list per token
//! bigram. A query is anchored on its rarest bigram and verified in place.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::category::{Category, CategorySet};
use crate::corpus::{QuranCorpus, VerseRef};
use crate::normalize::SentenceSplitter;

pub const DEFAULT_MIN_TOKENS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchKind {
    Full,
    Fragment,
}

impl MatchKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MatchKind::Full => "full",
            MatchKind::Fragment => "fragment",
        }
    }
}

impl fmt::Display for MatchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatchKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(MatchKind::Full),
            "fragment" => Ok(MatchKind::Fragment),
            other => Err(format!("unknown match kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchResult {
    pub verse: VerseRef,
    pub kind: MatchKind,
    pub sentence_index: usize,
    /// Token range of the verse covered by the sentence (first occurrence).
    pub matched_span: Range<usize>,
    pub categories: CategorySet,
}

/// All matches found in one post.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MatchList {
    pub matches: Vec<MatchResult>,
}

impl MatchList {
    /// A post with at least one match counts as a verse-bearing post.
    pub fn is_validated(&self) -> bool {
        !self.matches.is_empty()
    }

    pub fn len(&self) -> usize {
        self.matches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matches.is_empty()
    }

    pub fn distinct_verse_count(&self) -> usize {
        self.matches.iter().map(|m| m.verse).collect::<HashSet<_>>().len()
    }

    /// Category multiset over all matches.
    pub fn categories(&self) -> BTreeMap<Category, usize> {
        let mut out = BTreeMap::new();
        for m in &self.matches {
            for c in m.categories.iter() {
                *out.entry(c).or_insert(0) += 1;
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchOptions {
    pub min_tokens: usize,
    /// Report fragment matches in other verses when a sentence is also a full verse.
    pub fragments_alongside_full: bool,
}

impl Default for MatchOptions {
    fn default() -> Self {
        MatchOptions {
            min_tokens: DEFAULT_MIN_TOKENS,
            fragments_alongside_full: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("minimum match length must be at least 2 tokens, got {0}")]
pub struct MinTokensTooSmall(pub usize);

impl MatchOptions {
    pub fn with_min_tokens(self, min_tokens: usize) -> Result<Self, MinTokensTooSmall> {
        if min_tokens < 2 {
            return Err(MinTokensTooSmall(min_tokens));
        }
        Ok(MatchOptions { min_tokens, ..self })
    }
}

type TokenId = u32;

#[derive(Debug, Clone, Copy)]
struct Posting {
    verse: u32,
    pos: u32,
}

/// Read-only lookup structure over every normalized verse.
#[derive(Debug, Clone)]
pub struct MatchIndex {
    vocab: HashMap<String, TokenId>,
    sequences: Vec<Vec<TokenId>>,
    refs: Vec<VerseRef>,
    categories: Vec<CategorySet>,
    whole: HashMap<Vec<TokenId>, Vec<u32>>,
    bigrams: HashMap<(TokenId, TokenId), Vec<Posting>>,
    options: MatchOptions,
    splitter: SentenceSplitter,
}

impl MatchIndex {
    pub fn build(corpus: &QuranCorpus) -> Self {
        Self::with_options(corpus, MatchOptions::default())
    }

    pub fn with_options(corpus: &QuranCorpus, options: MatchOptions) -> Self {
        let mut vocab = HashMap::new();
        let mut sequences = Vec::with_capacity(corpus.len());
        let mut whole: HashMap<Vec<TokenId>, Vec<u32>> = HashMap::new();
        let mut bigrams: HashMap<(TokenId, TokenId), Vec<Posting>> = HashMap::new();
        for (v, verse) in corpus.verses().iter().enumerate() {
            let ids: Vec<TokenId> = verse
                .norm_tokens
                .iter()
                .map(|t| {
                    let next = vocab.len() as TokenId;
                    *vocab.entry(t.clone()).or_insert(next)
                })
                .collect();
            for (pos, pair) in ids.windows(2).enumerate() {
                bigrams.entry((pair[0], pair[1])).or_default().push(Posting {
                    verse: v as u32,
                    pos: pos as u32,
                });
            }
            whole.entry(ids.clone()).or_default().push(v as u32);
            sequences.push(ids);
        }
        MatchIndex {
            vocab,
            sequences,
            refs: corpus.verses().iter().map(|v| v.reference).collect(),
            categories: corpus.verses().iter().map(|v| v.categories).collect(),
            whole,
            bigrams,
            options,
            splitter: SentenceSplitter::default(),
        }
    }

    pub fn with_splitter(mut self, splitter: SentenceSplitter) -> Self {
        self.splitter = splitter;
        self
    }

    pub fn options(&self) -> MatchOptions {
        self.options
    }

    pub fn verse_count(&self) -> usize {
        self.sequences.len()
    }

    pub fn vocabulary_size(&self) -> usize {
        self.vocab.len()
    }

    /// Matches one normalized sentence. `sentence_index` is left at 0.
    pub fn match_sentence<S: AsRef<str>>(&self, tokens: &[S]) -> Vec<MatchResult> {
        if tokens.len() < self.options.min_tokens.max(2) {
            return Vec::new();
        }
        let Some(query) = tokens
            .iter()
            .map(|t| self.vocab.get(t.as_ref()).copied())
            .collect::<Option<Vec<_>>>()
        else {
            return Vec::new();
        };

        let mut found: Vec<(u32, MatchKind, usize)> = Vec::new();
        let full = self.whole.get(&query);
        if let Some(verses) = full {
            found.extend(verses.iter().map(|&v| (v, MatchKind::Full, 0)));
            if !self.options.fragments_alongside_full {
                return self.results(found, query.len());
            }
        }

        let Some((offset, postings)) = query
            .windows(2)
            .enumerate()
            .map(|(i, w)| (i, self.bigrams.get(&(w[0], w[1]))))
            .map(|(i, p)| p.map(|p| (i, p)))
            .collect::<Option<Vec<_>>>()
            .and_then(|all| all.into_iter().min_by_key(|(_, p)| p.len()))
        else {
            return self.results(found, query.len());
        };

        let mut last_verse = None;
        for posting in postings {
            if last_verse == Some(posting.verse) {
                continue;
            }
            let Some(start) = (posting.pos as usize).checked_sub(offset) else {
                continue;
            };
            let seq = &self.sequences[posting.verse as usize];
            if seq.len() == query.len() || seq.get(start..start + query.len()) != Some(&query[..]) {
                continue;
            }
            last_verse = Some(posting.verse);
            found.push((posting.verse, MatchKind::Fragment, start));
        }
        self.results(found, query.len())
    }

    fn results(&self, mut found: Vec<(u32, MatchKind, usize)>, len: usize) -> Vec<MatchResult> {
        found.sort_unstable_by_key(|&(v, kind, _)| (v, kind));
        found
            .into_iter()
            .map(|(v, kind, start)| MatchResult {
                verse: self.refs[v as usize],
                kind,
                sentence_index: 0,
                matched_span: start..start + len,
                categories: self.categories[v as usize],
            })
            .collect()
    }

    /// Splits a raw post into sentences and matches each one.
    pub fn extract_verses(&self, text: &str) -> MatchList {
        let normalized = self.splitter.split(text);
        let mut matches = Vec::new();
        for (i, sentence) in normalized.sentences().enumerate() {
            matches.extend(self.match_sentence(sentence).into_iter().map(|mut m| {
                m.sentence_index = i;
                m
            }));
        }
        MatchList { matches }
    }
}
