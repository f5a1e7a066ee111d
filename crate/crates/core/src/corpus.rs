//! Quran text and verse-to-category reference data.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::category::{Category, CategorySet};
use crate::normalize;

pub const SURA_COUNT: usize = 114;
pub const VERSE_COUNT: usize = 6236;

/// Number of verses in each sura, in mushaf order.
pub const AYAH_COUNTS: [u16; SURA_COUNT] = [
    7, 286, 200, 176, 120, 165, 206, 75, 129, 109, 123, 111, 43, 52, 99, 128, 111, 110, 98, 135,
    112, 78, 118, 64, 77, 227, 93, 88, 69, 60, 34, 30, 73, 54, 45, 83, 182, 88, 75, 85, 54, 53, 89,
    59, 37, 35, 38, 29, 18, 45, 60, 49, 62, 55, 78, 96, 29, 22, 24, 13, 14, 11, 11, 18, 12, 12, 30,
    52, 52, 44, 28, 28, 20, 56, 40, 31, 50, 40, 46, 42, 29, 19, 36, 25, 22, 17, 19, 26, 30, 20, 15,
    21, 11, 8, 8, 19, 5, 8, 8, 11, 11, 8, 3, 9, 5, 4, 7, 3, 6, 3, 5, 4, 5, 6,
];

pub fn ayah_count(sura: u8) -> Option<u16> {
    AYAH_COUNTS.get((sura as usize).checked_sub(1)?).copied()
}

/// A verse address, `sura:ayah`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VerseRef {
    pub sura: u8,
    pub ayah: u16,
}

impl VerseRef {
    pub const fn new(sura: u8, ayah: u16) -> Self {
        VerseRef { sura, ayah }
    }

    /// Whether the address exists in the canonical verse numbering.
    pub fn is_canonical(self) -> bool {
        ayah_count(self.sura).is_some_and(|n| self.ayah >= 1 && self.ayah <= n)
    }
}

impl fmt::Display for VerseRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.sura, self.ayah)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid verse reference `{0}`")]
pub struct InvalidVerseRef(pub String);

impl FromStr for VerseRef {
    type Err = InvalidVerseRef;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || InvalidVerseRef(s.to_string());
        let (sura, ayah) = s.trim().split_once(':').ok_or_else(bad)?;
        Ok(VerseRef {
            sura: sura.trim().parse().map_err(|_| bad())?,
            ayah: ayah.trim().parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verse {
    #[serde(rename = "ref")]
    pub reference: VerseRef,
    pub raw_text: String,
    pub norm_tokens: Vec<String>,
    pub categories: CategorySet,
}

impl Verse {
    /// Builds a verse from raw text; `None` when nothing survives normalization.
    pub fn new(reference: VerseRef, raw_text: impl Into<String>) -> Option<Self> {
        let raw_text = raw_text.into();
        let norm_tokens = normalize::tokenize(&raw_text);
        if norm_tokens.is_empty() {
            return None;
        }
        Some(Verse {
            reference,
            raw_text,
            norm_tokens,
            categories: CategorySet::general(),
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("corpus incomplete: found {0} verses, expected {VERSE_COUNT}")]
    CorpusIncomplete(usize),
    #[error("duplicate verse {0}")]
    DuplicateVerse(VerseRef),
    #[error("line {line}: verse {reference} is not in the corpus")]
    UnknownVerseRef { line: usize, reference: String },
    #[error("line {line}: unknown category `{name}`")]
    UnknownCategory { line: usize, name: String },
    #[error("line {line}: `General` is assigned implicitly and cannot be listed")]
    ReservedCategory { line: usize },
}

impl CorpusError {
    fn io(path: &Path, source: io::Error) -> Self {
        CorpusError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// Layout of a corpus text file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusFormat {
    /// `sura|ayah|text`, `#` comment lines (Tanzil "text with aya numbers").
    #[default]
    TanzilPipe,
    /// `sura<TAB>ayah<TAB>text`.
    Tsv,
}

impl CorpusFormat {
    fn separator(self) -> char {
        match self {
            CorpusFormat::TanzilPipe => '|',
            CorpusFormat::Tsv => '\t',
        }
    }
}

impl FromStr for CorpusFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tanzil-pipe" | "pipe" | "tanzil" => Ok(CorpusFormat::TanzilPipe),
            "tsv" => Ok(CorpusFormat::Tsv),
            other => Err(format!("unknown corpus format `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    pub format: CorpusFormat,
    /// Accept a corpus that is not the full 6,236 verses (test fixtures).
    pub allow_partial: bool,
}

impl LoadOptions {
    pub fn partial() -> Self {
        LoadOptions {
            allow_partial: true,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CategoryCount {
    pub count: usize,
    pub percent: f64,
}

/// Immutable verse collection in canonical (sura, ayah) order.
#[derive(Debug, Clone, PartialEq)]
pub struct QuranCorpus {
    verses: Vec<Verse>,
    positions: HashMap<VerseRef, usize>,
    by_sura: Vec<Range<usize>>,
}

impl QuranCorpus {
    /// Validates and indexes a verse list.
    pub fn from_verses(mut verses: Vec<Verse>, allow_partial: bool) -> Result<Self, CorpusError> {
        verses.sort_by_key(|v| v.reference);
        if let Some(w) = verses.windows(2).find(|w| w[0].reference == w[1].reference) {
            return Err(CorpusError::DuplicateVerse(w[0].reference));
        }
        if verses.is_empty() || (!allow_partial && verses.len() != VERSE_COUNT) {
            return Err(CorpusError::CorpusIncomplete(verses.len()));
        }
        let mut by_sura = vec![0..0; SURA_COUNT];
        let mut start = 0;
        while start < verses.len() {
            let sura = verses[start].reference.sura;
            let end = start + verses[start..].iter().take_while(|v| v.reference.sura == sura).count();
            by_sura[sura as usize - 1] = start..end;
            start = end;
        }
        let positions = verses.iter().enumerate().map(|(i, v)| (v.reference, i)).collect();
        Ok(QuranCorpus {
            verses,
            positions,
            by_sura,
        })
    }

    pub fn load(path: &Path, options: LoadOptions) -> Result<Self, CorpusError> {
        let file = File::open(path).map_err(|e| CorpusError::io(path, e))?;
        Self::parse(BufReader::new(file), options).map_err(|e| match e {
            CorpusError::Io { source, .. } => CorpusError::io(path, source),
            other => other,
        })
    }

    pub fn parse<R: BufRead>(reader: R, options: LoadOptions) -> Result<Self, CorpusError> {
        let separator = options.format.separator();
        let mut verses = Vec::with_capacity(VERSE_COUNT);
        for (i, line) in reader.lines().enumerate() {
            let line_no = i + 1;
            let line = line.map_err(|e| CorpusError::io(Path::new("<corpus>"), e))?;
            let line = line.trim_start_matches('\u{FEFF}').trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = |reason: &str| CorpusError::MalformedLine {
                line: line_no,
                reason: reason.to_string(),
            };
            let mut fields = line.splitn(3, separator);
            let (Some(sura), Some(ayah), Some(text)) = (fields.next(), fields.next(), fields.next())
            else {
                return Err(malformed("expected sura, ayah and text fields"));
            };
            let sura: u8 = sura.trim().parse().map_err(|_| malformed("sura is not a number"))?;
            let ayah: u16 = ayah.trim().parse().map_err(|_| malformed("ayah is not a number"))?;
            let reference = VerseRef::new(sura, ayah);
            if !reference.is_canonical() {
                return Err(malformed(&format!("verse {reference} does not exist")));
            }
            let verse = Verse::new(reference, text.trim())
                .ok_or_else(|| malformed("verse text is empty after normalization"))?;
            verses.push(verse);
        }
        Self::from_verses(verses, options.allow_partial)
    }

    pub fn len(&self) -> usize {
        self.verses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verses.is_empty()
    }

    pub fn verses(&self) -> &[Verse] {
        &self.verses
    }

    pub fn get(&self, reference: VerseRef) -> Option<&Verse> {
        self.positions.get(&reference).map(|&i| &self.verses[i])
    }

    /// Position of a verse in canonical order.
    pub fn position(&self, reference: VerseRef) -> Option<usize> {
        self.positions.get(&reference).copied()
    }

    /// Verses of one sura (1-based); empty for suras absent from a partial corpus.
    pub fn sura(&self, sura: u8) -> &[Verse] {
        match (sura as usize).checked_sub(1).and_then(|i| self.by_sura.get(i)) {
            Some(range) => &self.verses[range.clone()],
            None => &[],
        }
    }

    /// Number of suras with at least one verse loaded.
    pub fn sura_count(&self) -> usize {
        self.by_sura.iter().filter(|r| !r.is_empty()).count()
    }

    /// Replaces every verse's categories from a category file.
    pub fn load_categories(self, path: &Path) -> Result<Self, CorpusError> {
        let file = File::open(path).map_err(|e| CorpusError::io(path, e))?;
        self.apply_categories(file)
    }

    /// Category rows: `sura,ayah,category[;category...][,subcategory...]`.
    ///
    /// A header row is skipped when its first cell is not numeric. A
    /// `Main/Sub` or `Main:Sub` label counts toward `Main`; extra columns
    /// are ignored. Verses absent from the file fall back to `General`.
    pub fn apply_categories<R: Read>(mut self, reader: R) -> Result<Self, CorpusError> {
        let mut csv = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let mut assigned: HashMap<VerseRef, CategorySet> = HashMap::new();
        for (i, record) in csv.records().enumerate() {
            let record = record.map_err(|e| CorpusError::MalformedLine {
                line: i + 1,
                reason: e.to_string(),
            })?;
            let line = record.position().map_or(i + 1, |p| p.line() as usize);
            let first = record.get(0).unwrap_or("").trim_start_matches('\u{FEFF}');
            if i == 0 && first.parse::<u32>().is_err() {
                continue;
            }
            if record.iter().all(str::is_empty) {
                continue;
            }
            let (Some(sura), Some(ayah), Some(labels)) = (record.get(0), record.get(1), record.get(2))
            else {
                return Err(CorpusError::MalformedLine {
                    line,
                    reason: "expected sura, ayah and category columns".into(),
                });
            };
            let sura = sura.trim_start_matches('\u{FEFF}');
            let reference = match (sura.parse::<u8>(), ayah.parse::<u16>()) {
                (Ok(s), Ok(a)) => VerseRef::new(s, a),
                _ => {
                    return Err(CorpusError::UnknownVerseRef {
                        line,
                        reference: format!("{sura}:{ayah}"),
                    })
                }
            };
            if self.position(reference).is_none() {
                return Err(CorpusError::UnknownVerseRef {
                    line,
                    reference: reference.to_string(),
                });
            }
            let entry = assigned.entry(reference).or_default();
            for label in labels.split(';').map(str::trim).filter(|l| !l.is_empty()) {
                let main = label.split(['/', ':']).next().unwrap_or(label).trim();
                let category: Category = main.parse().map_err(|_| CorpusError::UnknownCategory {
                    line,
                    name: main.to_string(),
                })?;
                if category == Category::General {
                    return Err(CorpusError::ReservedCategory { line });
                }
                entry.insert(category);
            }
        }
        for verse in &mut self.verses {
            verse.categories = match assigned.get(&verse.reference) {
                Some(set) if !set.is_empty() => *set,
                _ => CategorySet::general(),
            };
        }
        Ok(self)
    }

    /// Verses per category and their share of the corpus, in percent.
    pub fn category_counts(&self) -> BTreeMap<Category, CategoryCount> {
        let mut counts: BTreeMap<Category, usize> = Category::ALL.into_iter().map(|c| (c, 0)).collect();
        for verse in &self.verses {
            for c in verse.categories.iter() {
                *counts.get_mut(&c).expect("all categories seeded") += 1;
            }
        }
        let total = self.verses.len() as f64;
        counts
            .into_iter()
            .map(|(c, count)| {
                let percent = if total > 0.0 { count as f64 / total * 100.0 } else { 0.0 };
                (c, CategoryCount { count, percent })
            })
            .collect()
    }

    /// Number of verses carrying at least one non-`General` category.
    pub fn categorized_count(&self) -> usize {
        self.verses.iter().filter(|v| !v.categories.contains(Category::General)).count()
    }

    /// Canonical JSON form; byte-identical for identical corpora.
    pub fn to_json(&self) -> Vec<u8> {
        serde_json::to_vec(&self.verses).expect("verses serialize")
    }

    pub fn from_json(bytes: &[u8], allow_partial: bool) -> Result<Self, CorpusError> {
        let verses: Vec<Verse> = serde_json::from_slice(bytes).map_err(|e| CorpusError::MalformedLine {
            line: e.line(),
            reason: e.to_string(),
        })?;
        Self::from_verses(verses, allow_partial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = "\
112|1|قُلْ هُوَ ٱللَّهُ أَحَدٌ
112|2|ٱللَّهُ ٱلصَّمَدُ
112|3|لَمْ يَلِدْ وَلَمْ يُولَدْ
112|4|وَلَمْ يَكُن لَّهُۥ كُفُوًا أَحَدٌۢ
113|1|قُلْ أَعُوذُ بِرَبِّ ٱلْفَلَقِ
113|2|مِن شَرِّ مَا خَلَقَ
113|3|وَمِن شَرِّ غَاسِقٍ إِذَا وَقَبَ
113|4|وَمِن شَرِّ ٱلنَّفَّٰثَٰتِ فِى ٱلْعُقَدِ
113|5|وَمِن شَرِّ حَاسِدٍ إِذَا حَسَدَ
48|1|إِنَّا فَتَحْنَا لَكَ فَتْحًا مُّبِينًا

# trailing comment block
";

    fn fixture() -> QuranCorpus {
        QuranCorpus::parse(FIXTURE.as_bytes(), LoadOptions::partial()).unwrap()
    }

    #[test]
    fn ayah_table_sums_to_verse_count() {
        assert_eq!(AYAH_COUNTS.iter().map(|&n| n as usize).sum::<usize>(), VERSE_COUNT);
    }

    #[test]
    fn partial_fixture_loads_in_canonical_order() {
        let corpus = fixture();
        assert_eq!(corpus.len(), 10);
        assert_eq!(corpus.sura_count(), 3);
        assert_eq!(corpus.verses()[0].reference, VerseRef::new(48, 1));
        assert_eq!(corpus.sura(112).len(), 4);
        assert_eq!(corpus.sura(113).len(), 5);
        assert!(corpus.sura(1).is_empty());
        assert!(corpus.sura(0).is_empty());
        let v = corpus.get(VerseRef::new(113, 1)).unwrap();
        assert_eq!(v.norm_tokens.join(" "), "قل اعوذ برب الفلق");
        assert_eq!(v.categories, CategorySet::general());
    }

    #[test]
    fn partial_fixture_rejected_without_override() {
        let err = QuranCorpus::parse(FIXTURE.as_bytes(), LoadOptions::default()).unwrap_err();
        assert!(matches!(err, CorpusError::CorpusIncomplete(10)));
    }

    #[test]
    fn empty_input_is_incomplete() {
        let err = QuranCorpus::parse(&b""[..], LoadOptions::default()).unwrap_err();
        assert!(matches!(err, CorpusError::CorpusIncomplete(0)));
        let err = QuranCorpus::parse(&b"# only comments\n"[..], LoadOptions::partial()).unwrap_err();
        assert!(matches!(err, CorpusError::CorpusIncomplete(0)));
    }

    #[test]
    fn malformed_and_duplicate_lines() {
        let err = QuranCorpus::parse(&b"1|1|x\n1|two|y\n"[..], LoadOptions::partial()).unwrap_err();
        assert!(matches!(err, CorpusError::MalformedLine { line: 2, .. }));
        let single = QuranCorpus::parse(&b"1|1|x\n"[..], LoadOptions::partial()).unwrap();
        assert_eq!(single.len(), 1);
        let err = QuranCorpus::parse(&b"1|1|a\n1|1|b\n"[..], LoadOptions::partial()).unwrap_err();
        assert!(matches!(err, CorpusError::DuplicateVerse(r) if r == VerseRef::new(1, 1)));
        let err = QuranCorpus::parse(&b"1|8|a\n"[..], LoadOptions::partial()).unwrap_err();
        assert!(matches!(err, CorpusError::MalformedLine { line: 1, .. }));
        let err = QuranCorpus::parse(&b"1|1|\xd9\x8e\n"[..], LoadOptions::partial()).unwrap_err();
        assert!(matches!(err, CorpusError::MalformedLine { line: 1, .. }));
    }

    #[test]
    fn tsv_format() {
        let corpus = QuranCorpus::parse(
            "1\t1\tبِسْمِ ٱللَّهِ ٱلرَّحْمَٰنِ ٱلرَّحِيمِ\n".as_bytes(),
            LoadOptions {
                format: CorpusFormat::Tsv,
                allow_partial: true,
            },
        )
        .unwrap();
        assert_eq!(corpus.verses()[0].norm_tokens, ["بسم", "الله", "الرحمن", "الرحيم"]);
    }

    #[test]
    fn categories_apply_with_header_and_subcategories() {
        let csv = "sura,ayah,categories\n48,1,Muhammad\n113,1,Worship;God/Attributes\n113,1,Sins,extra\n";
        let corpus = fixture().apply_categories(csv.as_bytes()).unwrap();
        let cats = |s, a| corpus.get(VerseRef::new(s, a)).unwrap().categories;
        assert_eq!(cats(48, 1).to_field(), "Muhammad");
        assert_eq!(cats(113, 1).to_field(), "Worship;God;Sins");
        assert_eq!(cats(112, 1), CategorySet::general());
        assert_eq!(corpus.categorized_count(), 2);
    }

    #[test]
    fn empty_mapping_makes_everything_general() {
        let corpus = fixture().apply_categories(&b""[..]).unwrap();
        let counts = corpus.category_counts();
        assert_eq!(counts[&Category::General].count, 10);
        assert_eq!(counts[&Category::General].percent, 100.0);
        assert_eq!(counts[&Category::Jihad].count, 0);
    }

    #[test]
    fn category_errors() {
        let err = fixture().apply_categories(&b"2,999,Worship\n"[..]).unwrap_err();
        assert!(matches!(err, CorpusError::UnknownVerseRef { ref reference, .. } if reference == "2:999"));
        let err = fixture().apply_categories(&b"48,1,Poetry\n"[..]).unwrap_err();
        assert!(matches!(err, CorpusError::UnknownCategory { ref name, .. } if name == "Poetry"));
        let err = fixture().apply_categories(&b"48,1,General\n"[..]).unwrap_err();
        assert!(matches!(err, CorpusError::ReservedCategory { line: 1 }));
    }

    #[test]
    fn json_round_trip_is_byte_stable() {
        let corpus = fixture();
        let bytes = corpus.to_json();
        let back = QuranCorpus::from_json(&bytes, true).unwrap();
        assert_eq!(back, corpus);
        assert_eq!(back.to_json(), bytes);
    }

    #[test]
    fn verse_ref_parsing() {
        assert_eq!("2:255".parse::<VerseRef>().unwrap(), VerseRef::new(2, 255));
        assert!("2-255".parse::<VerseRef>().is_err());
        assert!(VerseRef::new(114, 6).is_canonical());
        assert!(!VerseRef::new(114, 7).is_canonical());
        assert!(!VerseRef::new(0, 1).is_canonical());
        assert!(!VerseRef::new(115, 1).is_canonical());
    }
}
