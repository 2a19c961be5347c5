//! Text ingestion, documents and collection-level averages.

use std::collections::HashMap;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

use crate::eraser::EraserChain;
use crate::error::{Error, Result};

pub type TermId = u32;

/// Which characters separate tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitPattern {
    /// Anything that is not a Unicode letter or digit.
    #[default]
    NonAlphanumeric,
    /// Anything that is not a Unicode letter; digits separate tokens too.
    NonAlphabetic,
    Whitespace,
}

impl SplitPattern {
    fn is_separator(self, c: char) -> bool {
        match self {
            SplitPattern::NonAlphanumeric => !c.is_alphanumeric(),
            SplitPattern::NonAlphabetic => !c.is_alphabetic(),
            SplitPattern::Whitespace => c.is_whitespace(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TokenizerConfig {
    pub lowercase: bool,
    pub split: SplitPattern,
    pub keep_diacritics: bool,
    pub min_token_length: usize,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        Self {
            lowercase: true,
            split: SplitPattern::NonAlphanumeric,
            keep_diacritics: true,
            min_token_length: 1,
        }
    }
}

impl TokenizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_token_length == 0 {
            return Err(Error::InvalidConfig("min_token_length must be at least 1".into()));
        }
        Ok(())
    }

    fn normalize(&self, raw: &str) -> String {
        let s: String = if self.keep_diacritics {
            raw.to_owned()
        } else {
            raw.nfd().filter(|c| !is_combining_mark(*c)).nfc().collect()
        };
        if self.lowercase {
            s.to_lowercase()
        } else {
            s
        }
    }
}

/// Outcome of looking for Project Gutenberg boilerplate markers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GutenbergMarkers {
    Both,
    /// Start marker found, no end marker: body runs to end of text.
    MissingEnd,
    /// No start marker: text returned unchanged.
    Missing,
}

/// Returns the text strictly between the first `*** START OF` line and the
/// first following `*** END OF` line.
pub fn strip_gutenberg(raw: &str) -> (&str, GutenbergMarkers) {
    let mut offset = 0;
    let mut body_start = None;
    for line in raw.split_inclusive('\n') {
        let next = offset + line.len();
        match body_start {
            None if line.contains("*** START OF") => body_start = Some(next),
            Some(start) if line.contains("*** END OF") => {
                return (&raw[start..offset], GutenbergMarkers::Both);
            }
            _ => {}
        }
        offset = next;
    }
    match body_start {
        Some(start) => (&raw[start..], GutenbergMarkers::MissingEnd),
        None => (raw, GutenbergMarkers::Missing),
    }
}

/// A position-indexed token sequence with its own vocabulary.
#[derive(Debug, Clone)]
pub struct Document {
    id: String,
    language: String,
    tokens: Vec<TermId>,
    terms: Vec<String>,
    vocabulary: HashMap<String, TermId>,
    // sorted occurrence positions per term id
    postings: Vec<Vec<u32>>,
}

impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
            && self.language == other.language
            && self.tokens == other.tokens
            && self.terms == other.terms
    }
}

impl Document {
    /// Builds a document from already-split token strings. Term ids are
    /// assigned in order of first occurrence.
    pub fn from_tokens<S: AsRef<str>>(
        id: impl Into<String>,
        language: impl Into<String>,
        tokens: &[S],
    ) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::EmptyDocument);
        }
        assert!(tokens.len() <= u32::MAX as usize, "document too long");
        let mut vocabulary = HashMap::new();
        let mut terms = Vec::new();
        let mut postings: Vec<Vec<u32>> = Vec::new();
        let mut ids = Vec::with_capacity(tokens.len());
        for (pos, tok) in tokens.iter().enumerate() {
            let tok = tok.as_ref();
            let id = *vocabulary.entry(tok.to_owned()).or_insert_with(|| {
                terms.push(tok.to_owned());
                postings.push(Vec::new());
                (terms.len() - 1) as TermId
            });
            postings[id as usize].push(pos as u32);
            ids.push(id);
        }
        Ok(Self {
            id: id.into(),
            language: language.into(),
            tokens: ids,
            terms,
            vocabulary,
            postings,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn language(&self) -> &str {
        &self.language
    }

    /// Number of tokens, `|D|`.
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn tokens(&self) -> &[TermId] {
        &self.tokens
    }

    pub fn term_id(&self, term: &str) -> Option<TermId> {
        self.vocabulary.get(term).copied()
    }

    pub fn term(&self, id: TermId) -> &str {
        &self.terms[id as usize]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    /// Sorted positions of `term`; empty if the term does not occur.
    pub fn positions(&self, term: &str) -> &[u32] {
        self.term_id(term)
            .map(|id| self.postings[id as usize].as_slice())
            .unwrap_or(&[])
    }

    pub fn frequency(&self, term: &str) -> usize {
        self.positions(term).len()
    }

    pub fn token_strings(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(|&t| self.term(t))
    }

    pub fn dump(&self, include_tokens: bool) -> DocumentDump {
        DocumentDump {
            id: self.id.clone(),
            language: self.language.clone(),
            token_count: self.len(),
            term_count: self.term_count(),
            tokens: include_tokens.then(|| self.token_strings().map(str::to_owned).collect()),
        }
    }
}

/// JSON form of a document: counts, and optionally the token strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentDump {
    pub id: String,
    pub language: String,
    pub token_count: usize,
    pub term_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tokens: Option<Vec<String>>,
}

impl DocumentDump {
    /// Rebuilds the document; requires the dump to carry its tokens.
    pub fn into_document(self) -> Result<Document> {
        let tokens = self
            .tokens
            .ok_or_else(|| Error::InvalidConfig("document dump has no tokens".into()))?;
        let doc = Document::from_tokens(self.id, self.language, &tokens)?;
        if doc.len() != self.token_count || doc.term_count() != self.term_count {
            return Err(Error::InvalidConfig(
                "document dump counts do not match its tokens".into(),
            ));
        }
        Ok(doc)
    }
}

/// Splits `raw` into tokens under `cfg` and builds a document.
pub fn tokenize(
    id: impl Into<String>,
    language: impl Into<String>,
    raw: &str,
    cfg: &TokenizerConfig,
) -> Result<Document> {
    cfg.validate()?;
    let tokens: Vec<String> = raw
        .split(|c: char| cfg.split.is_separator(c))
        .filter(|s| !s.is_empty())
        .map(|s| cfg.normalize(s))
        .filter(|s| s.chars().count() >= cfg.min_token_length)
        .collect();
    Document::from_tokens(id, language, &tokens)
}

/// Weighted document collection.
#[derive(Debug, Clone)]
pub struct Corpus {
    documents: Vec<Document>,
    weights: Vec<f64>,
}

impl Corpus {
    pub fn uniform(documents: Vec<Document>) -> Result<Self> {
        if documents.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let w = 1.0 / documents.len() as f64;
        let weights = vec![w; documents.len()];
        Ok(Self { documents, weights })
    }

    pub fn weighted(documents: Vec<Document>, weights: Vec<f64>) -> Result<Self> {
        if documents.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        if weights.len() != documents.len() {
            return Err(Error::InvalidConfig(format!(
                "{} weights for {} documents",
                weights.len(),
                documents.len()
            )));
        }
        let sum: f64 = weights.iter().sum();
        if weights.iter().any(|w| w.is_nan() || *w < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidWeights(sum));
        }
        Ok(Self { documents, weights })
    }

    pub fn single(document: Document) -> Self {
        Self {
            documents: vec![document],
            weights: vec![1.0],
        }
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Document, f64)> {
        self.documents.iter().zip(self.weights.iter().copied())
    }

    pub fn max_len(&self) -> usize {
        self.documents.iter().map(Document::len).max().unwrap_or(0)
    }
}

/// Memoized weighted mean norms `Σ ω_i |chain(D_i)|`, standing in for the
/// average document in smoothing.
#[derive(Debug)]
pub struct CorpusAverages<'c> {
    corpus: &'c Corpus,
    cache: RwLock<HashMap<String, f64>>,
}

impl<'c> CorpusAverages<'c> {
    pub fn new(corpus: &'c Corpus) -> Self {
        Self {
            corpus,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn corpus(&self) -> &'c Corpus {
        self.corpus
    }

    pub fn average_norm(&self, chain: &EraserChain) -> f64 {
        let key = chain.to_string();
        if let Some(v) = self.cache.read().expect("cache poisoned").get(&key) {
            return *v;
        }
        let value = self.compute(chain);
        self.cache.write().expect("cache poisoned").entry(key).or_insert(value);
        value
    }

    /// Recomputes without consulting the cache.
    pub fn compute(&self, chain: &EraserChain) -> f64 {
        self.corpus.iter().map(|(d, w)| w * chain.apply(d).norm() as f64).sum()
    }

    pub fn clear(&self) {
        self.cache.write().expect("cache poisoned").clear();
    }

    pub fn cached_len(&self) -> usize {
        self.cache.read().expect("cache poisoned").len()
    }
}
