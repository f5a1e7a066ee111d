//! Arabic text normalization shared by verses and posts.
//!
//! Both sides of a match must live in the same normalized space, so every
//! verse and every tweet sentence goes through [`normalize`]:
//!
//! 1. Arabic presentation forms (U+FB50..U+FDFF, U+FE70..U+FEFF) are
//!    NFKC-folded to their base letters.
//! 2. Optional marks are dropped: tashkeel (U+064B..U+065F, U+0670), Quranic
//!    annotation signs (U+06D6..U+06ED), kashida (U+0640) and invisible
//!    format characters (ZWNJ, ZWJ, bidi marks, BOM).
//! 3. Letters are folded: أ إ آ ٱ -> ا, ؤ ئ -> ء, ة -> ه, ى -> ي.
//! 4. Whitespace-delimited tokens starting with `@` or `#` are removed.
//! 5. Whitespace is collapsed to single spaces.
//!
//! No stemming, stop-word removal or prefix stripping happens here.

use std::ops::Range;

use unicode_normalization::UnicodeNormalization;

/// Characters that end a sentence inside a post.
pub const DEFAULT_SENTENCE_DELIMITERS: &[char] = &[
    '.', ',', ';', ':', '!', '?', '\u{060C}', // ،
    '\u{061B}', // ؛
    '\u{061F}', // ؟
    '\u{06D4}', // ۔
    '\u{2026}', // …
    '(', ')', '[', ']', '{', '}', '\u{00AB}', // «
    '\u{00BB}', // »
    '"', '\u{201C}', // “
    '\u{201D}', // ”
    '\u{FD3E}', // ﴾
    '\u{FD3F}', // ﴿
    '\n', '\r',
];

fn is_presentation_form(c: char) -> bool {
    matches!(c, '\u{FB50}'..='\u{FDFF}' | '\u{FE70}'..='\u{FEFF}')
}

/// Tashkeel, superscript alef and Quranic annotation marks.
pub fn is_diacritic(c: char) -> bool {
    matches!(c, '\u{064B}'..='\u{065F}' | '\u{0670}' | '\u{06D6}'..='\u{06ED}')
}

pub const KASHIDA: char = '\u{0640}';

fn is_invisible(c: char) -> bool {
    matches!(
        c,
        '\u{200B}'..='\u{200F}' | '\u{202A}'..='\u{202E}' | '\u{2066}'..='\u{2069}' | '\u{061C}' | '\u{FEFF}'
    )
}

fn fold_letter(c: char) -> char {
    match c {
        '\u{0623}' | '\u{0625}' | '\u{0622}' | '\u{0671}' => '\u{0627}',
        '\u{0624}' | '\u{0626}' => '\u{0621}',
        '\u{0629}' => '\u{0647}',
        '\u{0649}' => '\u{064A}',
        other => other,
    }
}

/// Letters that never survive normalization.
pub const FOLDED_LETTERS: &[char] = &[
    '\u{0623}', '\u{0625}', '\u{0622}', '\u{0671}', '\u{0624}', '\u{0626}', '\u{0629}', '\u{0649}',
];

fn is_entity_token(token: &str) -> bool {
    token.starts_with('@') || token.starts_with('#')
}

/// Normalizes arbitrary text into the matching space.
///
/// Total and idempotent: `normalize(&normalize(x)) == normalize(x)`.
pub fn normalize(raw: &str) -> String {
    let mut folded = String::with_capacity(raw.len());
    for c in raw.chars() {
        if is_presentation_form(c) {
            folded.extend(c.to_string().nfkc());
        } else {
            folded.push(c);
        }
    }

    let cleaned: String = folded
        .chars()
        .filter(|&c| !is_diacritic(c) && c != KASHIDA && !is_invisible(c))
        .map(fold_letter)
        .collect();

    let mut out = String::with_capacity(cleaned.len());
    for token in cleaned.split_whitespace().filter(|t| !is_entity_token(t)) {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(token);
    }
    out
}

/// Normalizes and splits into word tokens.
pub fn tokenize(raw: &str) -> Vec<String> {
    normalize(raw).split(' ').filter(|t| !t.is_empty()).map(str::to_owned).collect()
}

/// Tokens of a post grouped into sentences.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalizedText {
    pub tokens: Vec<String>,
    /// Half-open token index ranges, one per non-empty sentence, in order.
    pub sentence_bounds: Vec<Range<usize>>,
}

impl NormalizedText {
    pub fn sentence_count(&self) -> usize {
        self.sentence_bounds.len()
    }

    pub fn sentence(&self, index: usize) -> &[String] {
        &self.tokens[self.sentence_bounds[index].clone()]
    }

    pub fn sentences(&self) -> impl Iterator<Item = &[String]> {
        self.sentence_bounds.iter().map(|r| &self.tokens[r.clone()])
    }
}

/// Splits raw text into sentences and normalizes each one.
#[derive(Debug, Clone)]
pub struct SentenceSplitter {
    delimiters: Vec<char>,
}

impl Default for SentenceSplitter {
    fn default() -> Self {
        SentenceSplitter {
            delimiters: DEFAULT_SENTENCE_DELIMITERS.to_vec(),
        }
    }
}

impl SentenceSplitter {
    pub fn with_delimiters(delimiters: impl IntoIterator<Item = char>) -> Self {
        let mut delimiters: Vec<char> = delimiters.into_iter().collect();
        delimiters.push('\n');
        delimiters.sort_unstable();
        delimiters.dedup();
        SentenceSplitter { delimiters }
    }

    pub fn delimiters(&self) -> &[char] {
        &self.delimiters
    }

    pub fn split(&self, raw: &str) -> NormalizedText {
        let mut text = NormalizedText::default();
        for piece in raw.split(|c: char| self.delimiters.contains(&c)) {
            let start = text.tokens.len();
            text.tokens.extend(tokenize(piece));
            if text.tokens.len() > start {
                text.sentence_bounds.push(start..text.tokens.len());
            }
        }
        text
    }
}

/// Splits with the default delimiter set.
pub fn split_sentences(raw: &str) -> NormalizedText {
    SentenceSplitter::default().split(raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn victory_verse_example() {
        assert_eq!(
            normalize("إِنَّا فَتَحْنَا لَكَ فَتْحًا مُبِينًا"),
            "انا فتحنا لك فتحا مبينا"
        );
    }

    #[test]
    fn empty_input() {
        assert_eq!(normalize(""), "");
        assert!(tokenize("   ").is_empty());
    }

    #[test]
    fn mentions_and_hashtags_removed() {
        assert_eq!(normalize("قال تعالى @user #دعاء"), "قال تعالي");
        assert_eq!(normalize("# @ وما"), "وما");
    }

    #[test]
    fn letter_folding() {
        assert_eq!(normalize("أإآٱ ؤئ ة ى"), "اااا ءء ه ي");
        assert_eq!(normalize("ـــالله"), "الله");
    }

    #[test]
    fn uthmani_marks_are_dropped() {
        // 112:4 in Uthmani script carries small waw and small high meem.
        assert_eq!(normalize("وَلَمْ يَكُن لَّهُۥ كُفُوًا أَحَدٌۢ"), "ولم يكن له كفوا احد");
        assert_eq!(normalize("قُلْ أَعُوذُ بِرَبِّ ٱلْفَلَقِ"), "قل اعوذ برب الفلق");
    }

    #[test]
    fn presentation_forms_fold() {
        // ﻗﻞ in isolated/final presentation forms.
        assert_eq!(normalize("\u{FED7}\u{FEDE}"), "قل");
        assert_eq!(normalize("\u{FDF2}"), "الله");
    }

    #[test]
    fn latin_passes_through() {
        assert_eq!(normalize("  Hello,   World  "), "Hello, World");
    }

    #[test]
    fn split_on_newline() {
        let text = split_sentences("بسم الله الرحمن الرحيم\nقل هو الله احد");
        assert_eq!(text.sentence_count(), 2);
        assert_eq!(text.sentence(1), ["قل", "هو", "الله", "احد"]);
    }

    #[test]
    fn split_single_sentence_with_stop() {
        let text = split_sentences("صدق الله العظيم.");
        assert_eq!(text.sentence_count(), 1);
        assert_eq!(text.tokens, ["صدق", "الله", "العظيم"]);
    }

    #[test]
    fn delimiters_only() {
        assert_eq!(split_sentences("،؛").sentence_count(), 0);
    }

    #[test]
    fn colon_and_ornate_brackets_split() {
        let text = split_sentences("قال تعالى: ﴿وَمَا كَانَ رَبُّكَ نَسِيًّا﴾ #دعاء");
        let sentences: Vec<_> = text.sentences().map(|s| s.join(" ")).collect();
        assert_eq!(sentences, ["قال تعالي", "وما كان ربك نسيا"]);
    }

    fn arabic_text() -> impl Strategy<Value = String> {
        let pool: Vec<char> = ('\u{0600}'..='\u{06FF}')
            .chain(['\u{FE8D}', '\u{FEF7}', '\u{FB56}', '\u{FDF2}', '\u{FC5E}'])
            .chain([' ', ' ', '\n', '@', '#', '.', 'a', '\u{200F}'])
            .collect();
        proptest::collection::vec(proptest::sample::select(pool), 0..60)
            .prop_map(|cs| cs.into_iter().collect())
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(s in arabic_text()) {
            let once = normalize(&s);
            prop_assert_eq!(normalize(&once), once);
        }

        #[test]
        fn no_forbidden_characters_survive(s in arabic_text()) {
            let out = normalize(&s);
            for c in out.chars() {
                prop_assert!(!is_diacritic(c));
                prop_assert!(c != KASHIDA);
                prop_assert!(!FOLDED_LETTERS.contains(&c));
            }
            for token in out.split(' ') {
                prop_assert!(!token.starts_with('@') && !token.starts_with('#'));
            }
        }

        #[test]
        fn splitting_preserves_token_order(s in arabic_text()) {
            let text = split_sentences(&s);
            let mut expected = 0;
            for r in &text.sentence_bounds {
                prop_assert_eq!(r.start, expected);
                prop_assert!(r.end > r.start);
                expected = r.end;
            }
            prop_assert_eq!(expected, text.tokens.len());
            // Re-joining sentences and normalizing again changes nothing.
            for sentence in text.sentences() {
                let joined = sentence.join(" ");
                prop_assert_eq!(normalize(&joined), joined);
            }
        }
    }
}
