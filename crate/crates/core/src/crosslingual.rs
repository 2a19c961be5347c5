//! Comparison of topic lattices built from two language versions of a text.
//!
//! Edges are compared at term granularity: a measured edge `E(a,w1) → E(b,w2)`
//! projects to the term pair `(a, b)`. Width differences of shared pairs are
//! reported separately.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{CorpusAverages, Document};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::topic::{build_lattice, resolve, ResolveStrategy, TopicConfig, TopicLattice};

/// Bijection between keywords of the first and second language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(String, String)>", into = "Vec<(String, String)>")]
pub struct KeywordAlignment {
    forward: BTreeMap<String, String>,
    backward: BTreeMap<String, String>,
}

impl KeywordAlignment {
    pub fn new<A: Into<String>, B: Into<String>>(pairs: impl IntoIterator<Item = (A, B)>) -> Result<Self> {
        let mut forward = BTreeMap::new();
        let mut backward = BTreeMap::new();
        for (a, b) in pairs {
            let (a, b) = (a.into(), b.into());
            if forward.insert(a.clone(), b.clone()).is_some() {
                return Err(Error::InvalidAlignment(format!("`{a}` aligned twice")));
            }
            if backward.insert(b.clone(), a).is_some() {
                return Err(Error::InvalidAlignment(format!("`{b}` aligned twice")));
            }
        }
        Ok(Self { forward, backward })
    }

    /// Parses whitespace-separated `first second` pairs, one per line; `#`
    /// starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                [a, b] => pairs.push((a.to_string(), b.to_string())),
                _ => {
                    return Err(Error::InvalidAlignment(format!(
                        "line {}: expected two terms, got `{line}`",
                        n + 1
                    )));
                }
            }
        }
        Self::new(pairs)
    }

    pub fn map(&self, first: &str) -> Option<&str> {
        self.forward.get(first).map(String::as_str)
    }

    pub fn map_back(&self, second: &str) -> Option<&str> {
        self.backward.get(second).map(String::as_str)
    }

    pub fn inverse(&self) -> Self {
        Self {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.forward.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    fn check_covers(&self, l1: &TopicLattice, l2: &TopicLattice) -> Result<()> {
        for k in &l1.config.keywords {
            if !self.forward.contains_key(k) {
                return Err(Error::AlignmentGap(k.clone()));
            }
        }
        for k in &l2.config.keywords {
            if !self.backward.contains_key(k) {
                return Err(Error::AlignmentGap(k.clone()));
            }
        }
        Ok(())
    }
}

impl TryFrom<Vec<(String, String)>> for KeywordAlignment {
    type Error = Error;

    fn try_from(v: Vec<(String, String)>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<KeywordAlignment> for Vec<(String, String)> {
    fn from(a: KeywordAlignment) -> Self {
        a.forward.into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TermPair {
    pub ante: String,
    pub cons: String,
}

impl TermPair {
    fn new(ante: &str, cons: &str) -> Self {
        Self {
            ante: ante.to_owned(),
            cons: cons.to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharedEdge {
    pub l1: TermPair,
    pub l2: TermPair,
    /// Second-language width minus first-language width.
    pub delta_ante_width: i64,
    pub delta_cons_width: i64,
    pub delta_p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeDiff {
    pub similarity: f64,
    pub shared: Vec<SharedEdge>,
    /// In first-language terms.
    pub only_l1: Vec<TermPair>,
    /// In second-language terms.
    pub only_l2: Vec<TermPair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorphismReport {
    pub holds: bool,
    /// First-language edges whose image is not implied by the second lattice.
    pub violations: Vec<TermPair>,
}

/// Full comparison report as written by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiffReport {
    pub similarity: f64,
    pub shared: Vec<SharedEdge>,
    pub only_l1: Vec<TermPair>,
    pub only_l2: Vec<TermPair>,
    pub morphism: MorphismReport,
}

impl DiffReport {
    pub fn new(diff: LatticeDiff, morphism: MorphismReport) -> Self {
        Self {
            similarity: diff.similarity,
            shared: diff.shared,
            only_l1: diff.only_l1,
            only_l2: diff.only_l2,
            morphism,
        }
    }
}

/// Measured edges keyed by term pair; the first edge wins if a pair repeats.
fn term_edges(l: &TopicLattice) -> BTreeMap<TermPair, (usize, usize, f64)> {
    let mut m = BTreeMap::new();
    for e in l.measured_edges() {
        if e.antecedent.term == e.consequent.term {
            continue;
        }
        m.entry(TermPair::new(&e.antecedent.term, &e.consequent.term))
            .or_insert((e.antecedent.width, e.consequent.width, e.probability));
    }
    m
}

fn check_resolved(l: &TopicLattice, which: &str) -> Result<()> {
    if l.is_resolved() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "{which} lattice has unresolved anomalies"
        )))
    }
}

/// Jaccard similarity of the term-level edge sets after mapping the second
/// lattice through the alignment. Two empty edge sets score 0.
pub fn align_compare(l1: &TopicLattice, l2: &TopicLattice, al: &KeywordAlignment) -> Result<LatticeDiff> {
    check_resolved(l1, "first")?;
    check_resolved(l2, "second")?;
    al.check_covers(l1, l2)?;
    let e1 = term_edges(l1);
    let e2 = term_edges(l2);
    let map_back =
        |p: &TermPair| -> Option<TermPair> { Some(TermPair::new(al.map_back(&p.ante)?, al.map_back(&p.cons)?)) };
    let e2_in_l1: BTreeMap<TermPair, (&TermPair, &(usize, usize, f64))> =
        e2.iter().filter_map(|(p, v)| Some((map_back(p)?, (p, v)))).collect();

    let mut shared = Vec::new();
    let mut only_l1 = Vec::new();
    for (p, (wa, wb, prob)) in &e1 {
        match e2_in_l1.get(p) {
            Some((p2, (wa2, wb2, prob2))) => shared.push(SharedEdge {
                l1: p.clone(),
                l2: (*p2).clone(),
                delta_ante_width: *wa2 as i64 - *wa as i64,
                delta_cons_width: *wb2 as i64 - *wb as i64,
                delta_p: prob2 - prob,
            }),
            None => only_l1.push(p.clone()),
        }
    }
    let only_l2: Vec<TermPair> = e2
        .keys()
        .filter(|p| map_back(p).is_none_or(|q| !e1.contains_key(&q)))
        .cloned()
        .collect();
    let union = shared.len() + only_l1.len() + only_l2.len();
    let similarity = if union == 0 {
        0.0
    } else {
        shared.len() as f64 / union as f64
    };
    Ok(LatticeDiff {
        similarity,
        shared,
        only_l1,
        only_l2,
    })
}

/// Checks that the alignment maps every term-level order edge of `l1` onto a
/// pair related in the transitive closure of `l2`.
pub fn morphism_check(l1: &TopicLattice, l2: &TopicLattice, al: &KeywordAlignment) -> Result<MorphismReport> {
    al.check_covers(l1, l2)?;
    let mut succ: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    let e2 = term_edges(l2);
    for p in e2.keys() {
        succ.entry(p.ante.as_str()).or_default().insert(p.cons.as_str());
    }
    let reaches = |from: &str, to: &str| -> bool {
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<&str> = succ.get(from).into_iter().flatten().copied().collect();
        while let Some(n) = queue.pop_front() {
            if n == to {
                return true;
            }
            if seen.insert(n) {
                queue.extend(succ.get(n).into_iter().flatten().copied());
            }
        }
        false
    };
    let violations: Vec<TermPair> = term_edges(l1)
        .into_keys()
        .filter(|p| match (al.map(&p.ante), al.map(&p.cons)) {
            (Some(a), Some(b)) => !reaches(a, b),
            _ => true,
        })
        .collect();
    Ok(MorphismReport {
        holds: violations.is_empty(),
        violations,
    })
}

/// One language version entering a cross-lingual run.
#[derive(Debug, Clone, Copy)]
pub struct LanguageSide<'a> {
    pub doc: &'a Document,
    pub averages: &'a CorpusAverages<'a>,
    pub config: &'a TopicConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NullSummary {
    pub trials: usize,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub similarities: Vec<f64>,
}

/// Builds both lattices with the given keywords, resolves them by pruning and
/// compares them under the positional alignment `kw1[i] ↔ kw2[i]`.
pub fn keyword_similarity(
    first: LanguageSide<'_>,
    second: LanguageSide<'_>,
    kw1: &[String],
    kw2: &[String],
) -> Result<f64> {
    let c1 = TopicConfig {
        keywords: kw1.to_vec(),
        ..first.config.clone()
    };
    let c2 = TopicConfig {
        keywords: kw2.to_vec(),
        ..second.config.clone()
    };
    let l1 = resolve(
        &build_lattice(first.doc, &c1, first.averages, Execution::Sequential)?,
        ResolveStrategy::PruneMin,
    )?;
    let l2 = resolve(
        &build_lattice(second.doc, &c2, second.averages, Execution::Sequential)?,
        ResolveStrategy::PruneMin,
    )?;
    let al = KeywordAlignment::new(kw1.iter().cloned().zip(kw2.iter().cloned()))?;
    Ok(align_compare(&l1, &l2, &al)?.similarity)
}

/// Draws keywords matching the frequency of each of `keywords` in `doc`:
/// a uniformly chosen term whose count lies within a factor 2 of the
/// original, the band doubling until a candidate exists. The originals and
/// earlier draws are excluded.
pub fn frequency_matched_keywords(doc: &Document, keywords: &[String], rng: &mut ChaCha8Rng) -> Result<Vec<String>> {
    let exclude: BTreeSet<&str> = keywords.iter().map(String::as_str).collect();
    let mut chosen: BTreeSet<String> = BTreeSet::new();
    let mut out = Vec::with_capacity(keywords.len());
    let freqs: Vec<(&str, usize)> = doc.terms().iter().map(|t| (t.as_str(), doc.frequency(t))).collect();
    let available = freqs.iter().filter(|(t, _)| !exclude.contains(t)).count();
    if available < keywords.len() {
        return Err(Error::VocabularyTooSmall { needed: keywords.len() });
    }
    for k in keywords {
        let target = doc.frequency(k).max(1);
        let mut factor = 2usize;
        let pick = loop {
            let lo = target / factor;
            let hi = target.saturating_mul(factor);
            let cands: Vec<&str> = freqs
                .iter()
                .filter(|(t, f)| *f >= lo && *f <= hi && !exclude.contains(t) && !chosen.contains(*t))
                .map(|(t, _)| *t)
                .collect();
            if let Some(t) = cands.choose(rng) {
                break t.to_string();
            }
            if lo == 0 && hi >= doc.len() {
                return Err(Error::VocabularyTooSmall { needed: keywords.len() });
            }
            factor = factor.saturating_mul(2);
        };
        chosen.insert(pick.clone());
        out.push(pick);
    }
    Ok(out)
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Null distribution of lattice similarity under frequency-matched random
/// keyword sets, one independent seeded draw per trial.
pub fn baseline_similarity(
    first: LanguageSide<'_>,
    second: LanguageSide<'_>,
    trials: usize,
    seed: u64,
    exec: Execution,
) -> Result<NullSummary> {
    baseline_similarity_with(first, second, trials, seed, exec, |_, rng| {
        let k1 = frequency_matched_keywords(first.doc, &first.config.keywords, rng)?;
        let k2 = frequency_matched_keywords(second.doc, &second.config.keywords, rng)?;
        Ok((k1, k2))
    })
}

/// [`baseline_similarity`] with a caller-supplied keyword draw.
pub fn baseline_similarity_with<F>(
    first: LanguageSide<'_>,
    second: LanguageSide<'_>,
    trials: usize,
    seed: u64,
    exec: Execution,
    draw: F,
) -> Result<NullSummary>
where
    F: Fn(usize, &mut ChaCha8Rng) -> Result<(Vec<String>, Vec<String>)> + Sync,
{
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    let idx: Vec<usize> = (0..trials).collect();
    let sims = exec.map(&idx, |&t| {
        let mut rng = trial_rng(seed, t);
        let (k1, k2) = draw(t, &mut rng)?;
        keyword_similarity(first, second, &k1, &k2)
    });
    let similarities = sims.into_iter().collect::<Result<Vec<f64>>>()?;
    let mean = similarities.iter().sum::<f64>() / trials as f64;
    let min = similarities.iter().copied().fold(f64::INFINITY, f64::min);
    let max = similarities.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(NullSummary {
        trials,
        mean,
        min,
        max,
        similarities,
    })
}
