//! Corpus access for the acceptance suite in `tests/acceptance.rs`.
//!
//! The Gutenberg Quixote texts (Spanish #2000, English #996) are read from
//! `QUIXOTE_ES` / `QUIXOTE_EN`, falling back to `data/quixote_es.txt` and
//! `data/quixote_en.txt` at the workspace root.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use selattice::corpus::{strip_gutenberg, tokenize};
use selattice::{Document, TokenizerConfig};

pub fn corpus_path(lang: &str) -> PathBuf {
    match std::env::var_os(format!("QUIXOTE_{}", lang.to_uppercase())) {
        Some(p) => PathBuf::from(p),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("../../data")
            .join(format!("quixote_{lang}.txt")),
    }
}

/// Tokenized text with Gutenberg boilerplate removed, and the time it took.
pub fn load_quixote(lang: &str) -> Result<(Document, Duration), String> {
    let path = corpus_path(lang);
    let start = Instant::now();
    let raw = std::fs::read_to_string(&path).map_err(|e| {
        format!(
            "corpus missing: {} ({e}); set QUIXOTE_{} or place the Gutenberg text there",
            path.display(),
            lang.to_uppercase()
        )
    })?;
    let doc = tokenize(
        format!("quixote-{lang}"),
        lang,
        strip_gutenberg(&raw).0,
        &TokenizerConfig::default(),
    )
    .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((doc, start.elapsed()))
}
