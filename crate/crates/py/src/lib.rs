use std::collections::BTreeMap;
use std::path::PathBuf;

use ayatrack::analytics::{self, Dataset, KindFilter, TweetMatches, WeightMode};
use ayatrack::corpus::{LoadOptions, QuranCorpus, VerseRef};
use ayatrack::matcher::{self, MatchOptions, MatchResult};
use ayatrack::normalize;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Normalize Arabic text into the matching space.
#[pyfunction]
fn normalize_text(text: &str) -> String {
    normalize::normalize(text)
}

#[pyfunction]
fn tokenize(text: &str) -> Vec<String> {
    normalize::tokenize(text)
}

/// Split raw text into sentences of normalized tokens.
#[pyfunction]
fn split_sentences(text: &str) -> Vec<Vec<String>> {
    normalize::split_sentences(text).sentences().map(|s| s.to_vec()).collect()
}

#[pyclass(frozen, from_py_object, module = "ayatrack")]
#[derive(Clone)]
struct Match {
    inner: MatchResult,
}

#[pymethods]
impl Match {
    #[getter]
    fn sura(&self) -> u8 {
        self.inner.verse.sura
    }

    #[getter]
    fn ayah(&self) -> u16 {
        self.inner.verse.ayah
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind.as_str()
    }

    #[getter]
    fn sentence_index(&self) -> usize {
        self.inner.sentence_index
    }

    #[getter]
    fn span(&self) -> (usize, usize) {
        (self.inner.matched_span.start, self.inner.matched_span.end)
    }

    #[getter]
    fn categories(&self) -> Vec<&'static str> {
        self.inner.categories.iter().map(|c| c.name()).collect()
    }

    fn __repr__(&self) -> String {
        format!("Match({}, {}, sentence={})", self.inner.verse, self.inner.kind, self.inner.sentence_index)
    }
}

#[pyclass(frozen, module = "ayatrack")]
struct Corpus {
    inner: QuranCorpus,
}

#[pymethods]
impl Corpus {
    /// Load a `sura|ayah|text` file, optionally with a category CSV.
    #[staticmethod]
    #[pyo3(signature = (path, categories=None, partial=false))]
    fn load(path: PathBuf, categories: Option<PathBuf>, partial: bool) -> PyResult<Self> {
        let options = LoadOptions {
            allow_partial: partial,
            ..Default::default()
        };
        let mut corpus = QuranCorpus::load(&path, options).map_err(|e| PyIOError::new_err(e.to_string()))?;
        if let Some(c) = categories {
            corpus = corpus.load_categories(&c).map_err(value_err)?;
        }
        Ok(Corpus { inner: corpus })
    }

    /// Parse verse lines held in memory; partial texts are accepted.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        let inner = QuranCorpus::parse(text.as_bytes(), LoadOptions::partial()).map_err(value_err)?;
        Ok(Corpus { inner })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn sura_count(&self) -> usize {
        self.inner.sura_count()
    }

    /// `(raw_text, tokens, categories)` for a verse, or None.
    fn verse(&self, sura: u8, ayah: u16) -> Option<(String, Vec<String>, Vec<&'static str>)> {
        self.inner.get(VerseRef::new(sura, ayah)).map(|v| {
            (
                v.raw_text.clone(),
                v.norm_tokens.clone(),
                v.categories.iter().map(|c| c.name()).collect(),
            )
        })
    }

    fn category_counts(&self) -> BTreeMap<&'static str, usize> {
        self.inner.category_counts().into_iter().map(|(c, n)| (c.name(), n.count)).collect()
    }

    /// Percentage of verses per category.
    fn baseline(&self) -> BTreeMap<&'static str, f64> {
        percentages(&analytics::quran_baseline(&self.inner))
    }
}

#[pyclass(frozen, module = "ayatrack")]
struct MatchIndex {
    inner: matcher::MatchIndex,
}

#[pymethods]
impl MatchIndex {
    #[new]
    #[pyo3(signature = (corpus, min_tokens=matcher::DEFAULT_MIN_TOKENS))]
    fn new(corpus: &Corpus, min_tokens: usize) -> PyResult<Self> {
        let options = MatchOptions::default().with_min_tokens(min_tokens).map_err(value_err)?;
        Ok(MatchIndex {
            inner: matcher::MatchIndex::with_options(&corpus.inner, options),
        })
    }

    fn match_sentence(&self, tokens: Vec<String>) -> Vec<Match> {
        wrap(self.inner.match_sentence(&tokens))
    }

    /// All verse matches in a raw post.
    fn extract(&self, py: Python<'_>, text: &str) -> Vec<Match> {
        wrap(py.detach(|| self.inner.extract_verses(text).matches))
    }

    fn extract_many(&self, py: Python<'_>, texts: Vec<String>) -> Vec<Vec<Match>> {
        let lists = py.detach(|| {
            use rayon::prelude::*;
            texts.par_iter().map(|t| self.inner.extract_verses(t).matches).collect::<Vec<_>>()
        });
        lists.into_iter().map(wrap).collect()
    }
}

fn wrap(matches: Vec<MatchResult>) -> Vec<Match> {
    matches.into_iter().map(|inner| Match { inner }).collect()
}

fn percentages(d: &analytics::CategoryDistribution) -> BTreeMap<&'static str, f64> {
    d.percentages().into_iter().map(|(c, p)| (c.name(), p)).collect()
}

fn to_posts(posts: Vec<(u64, Vec<Match>)>) -> Vec<TweetMatches> {
    posts
        .into_iter()
        .enumerate()
        .map(|(i, (retweets, matches))| TweetMatches {
            tweet_id: i.to_string(),
            author_id: String::new(),
            retweet_count: retweets,
            dataset: Dataset::Human,
            matches: matches.into_iter().map(|m| m.inner).collect(),
        })
        .collect()
}

/// Category percentages over `(retweet_count, matches)` posts.
#[pyfunction]
#[pyo3(signature = (posts, weight_mode="volume", distinct_verses=false))]
fn category_distribution(
    posts: Vec<(u64, Vec<Match>)>,
    weight_mode: &str,
    distinct_verses: bool,
) -> PyResult<BTreeMap<&'static str, f64>> {
    let mode: WeightMode = weight_mode.parse().map_err(PyValueError::new_err)?;
    let d = analytics::category_distribution(&to_posts(posts), mode, distinct_verses).map_err(value_err)?;
    Ok(percentages(&d))
}

/// `(sura, ayah, weighted_count)` for the most shared verses.
#[pyfunction]
#[pyo3(signature = (posts, kind="full", n=10, weight_mode="volume"))]
fn top_verses(posts: Vec<(u64, Vec<Match>)>, kind: &str, n: usize, weight_mode: &str) -> PyResult<Vec<(u8, u16, u64)>> {
    let kind: KindFilter = kind.parse().map_err(PyValueError::new_err)?;
    let mode: WeightMode = weight_mode.parse().map_err(PyValueError::new_err)?;
    Ok(analytics::top_verses(&to_posts(posts), kind, n, mode)
        .entries
        .into_iter()
        .map(|e| (e.verse.sura, e.verse.ayah, e.weighted_count))
        .collect())
}

/// `(bins, fraction_retweeted, fitted_slope)`; the slope is None when
/// fewer than two head bins exist.
#[pyfunction]
fn retweet_histogram(counts: Vec<u64>) -> (BTreeMap<u64, u64>, f64, Option<f64>) {
    let h = analytics::retweet_histogram(counts);
    let slope = h.fit_power_law().map(|f| f.slope);
    let fraction = h.fraction_retweeted();
    (h.bins, fraction, slope)
}

#[pyfunction]
fn pearson(xs: Vec<f64>, ys: Vec<f64>) -> PyResult<f64> {
    if xs.len() != ys.len() {
        return Err(PyValueError::new_err("xs and ys differ in length"));
    }
    analytics::pearson(&xs, &ys).map_err(value_err)
}

#[pymodule]
#[pyo3(name = "ayatrack")]
fn ayatrack_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(normalize_text, m)?)?;
    m.add("normalize", m.getattr("normalize_text")?)?;
    m.add_function(wrap_pyfunction!(tokenize, m)?)?;
    m.add_function(wrap_pyfunction!(split_sentences, m)?)?;
    m.add_function(wrap_pyfunction!(category_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(top_verses, m)?)?;
    m.add_function(wrap_pyfunction!(retweet_histogram, m)?)?;
    m.add_function(wrap_pyfunction!(pearson, m)?)?;
    m.add_class::<Match>()?;
    m.add_class::<Corpus>()?;
    m.add_class::<MatchIndex>()?;
    Ok(())
}
