//! Detection and analysis of Quran verses quoted in Arabic social media posts.

pub mod category;
pub mod corpus;
pub mod ingest;
pub mod matcher;
pub mod normalize;
pub mod analytics;
pub mod cli;

pub use category::{Category, CategorySet};
pub use corpus::{QuranCorpus, Verse, VerseRef};
pub use ingest::{TweetRecord, KeyPhraseSet, AppRegistry};
pub use matcher::{MatchIndex, MatchKind, MatchList, MatchResult};
