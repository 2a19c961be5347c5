//! Conditionals between selective erasers.
//!
//! All subjunctive variants share one shape: a numerator chain and a
//! denominator chain are applied to the document, optionally smoothed with
//! collection averages weighted by `mu`, and the ratio is reported. A zero
//! denominator yields an undetermined result rather than an error.

use serde::{Deserialize, Serialize};

use crate::corpus::{CorpusAverages, Document};
use crate::eraser::{EraserChain, MaskedDocument, SelectiveEraser};
use crate::error::{Error, Result};

/// Reading of the composed operator string in the numerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CompositionConvention {
    /// `|E_a E_b D|` read as function composition: the consequent eraser acts
    /// first, the antecedent eraser last.
    #[default]
    Written,
    /// Restrict to the antecedent first, then apply the consequent.
    Ramsey,
}

impl std::str::FromStr for CompositionConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "written" => Ok(Self::Written),
            "ramsey" => Ok(Self::Ramsey),
            other => Err(Error::InvalidConfig(format!("unknown convention `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SmoothingConfig<'a> {
    mu: f64,
    averages: Option<&'a CorpusAverages<'a>>,
}

impl<'a> SmoothingConfig<'a> {
    pub fn new(mu: f64, averages: &'a CorpusAverages<'a>) -> Result<Self> {
        if mu < 0.0 || !mu.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "mu must be a finite value >= 0, got {mu}"
            )));
        }
        Ok(Self {
            mu,
            averages: Some(averages),
        })
    }

    /// `mu = 0`: raw document ratio.
    pub fn unsmoothed() -> Self {
        Self {
            mu: 0.0,
            averages: None,
        }
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    fn smoothing_term(&self, chain: &EraserChain) -> f64 {
        match self.averages {
            Some(avgs) if self.mu > 0.0 => self.mu * avgs.average_norm(chain),
            _ => 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalResult {
    /// `None` means undetermined (zero denominator).
    pub value: Option<f64>,
    pub numerator: f64,
    pub denominator: f64,
    pub convention: CompositionConvention,
    pub mu: f64,
}

impl ConditionalResult {
    fn from_parts(numerator: f64, denominator: f64, convention: CompositionConvention, mu: f64) -> Self {
        let value = (denominator > 0.0).then(|| numerator / denominator);
        Self {
            value,
            numerator,
            denominator,
            convention,
            mu,
        }
    }

    pub fn is_undetermined(&self) -> bool {
        self.value.is_none()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ValueRepr {
    Number(f64),
    Word(String),
}

#[derive(Serialize, Deserialize)]
struct ResultRepr {
    value: ValueRepr,
    numerator: f64,
    denominator: f64,
    convention: CompositionConvention,
    mu: f64,
}

impl Serialize for ConditionalResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ResultRepr {
            value: match self.value {
                Some(v) => ValueRepr::Number(v),
                None => ValueRepr::Word("undetermined".into()),
            },
            numerator: self.numerator,
            denominator: self.denominator,
            convention: self.convention,
            mu: self.mu,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConditionalResult {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ResultRepr::deserialize(d)?;
        let value = match r.value {
            ValueRepr::Number(v) => Some(v),
            ValueRepr::Word(w) if w == "undetermined" => None,
            ValueRepr::Word(w) => {
                return Err(serde::de::Error::custom(format!("unexpected value `{w}`")));
            }
        };
        Ok(Self {
            value,
            numerator: r.numerator,
            denominator: r.denominator,
            convention: r.convention,
            mu: r.mu,
        })
    }
}

fn chain(erasers: &[&SelectiveEraser]) -> EraserChain {
    EraserChain::new(erasers.iter().map(|e| (*e).clone()).collect()).expect("non-empty chain")
}

fn smoothed_ratio(
    d: &Document,
    numerator: &EraserChain,
    denominator: &EraserChain,
    sm: &SmoothingConfig<'_>,
    conv: CompositionConvention,
) -> ConditionalResult {
    let num = numerator.apply(d).norm() as f64 + sm.smoothing_term(numerator);
    let den = denominator.apply(d).norm() as f64 + sm.smoothing_term(denominator);
    ConditionalResult::from_parts(num, den, conv, sm.mu())
}

fn numerator_chain(
    ea: &SelectiveEraser,
    eb: &SelectiveEraser,
    topic: Option<&SelectiveEraser>,
    conv: CompositionConvention,
) -> EraserChain {
    let (outer, inner) = match conv {
        CompositionConvention::Written => (ea, eb),
        CompositionConvention::Ramsey => (eb, ea),
    };
    match topic {
        Some(t) => chain(&[outer, inner, t]),
        None => chain(&[outer, inner]),
    }
}

/// Material implication probability within one document, using mask union and
/// intersection as join and meet: `1 - |A|/|D| + |A ∩ B|/|D|`.
pub fn material_implication(d: &Document, ea: &SelectiveEraser, eb: &SelectiveEraser) -> Result<f64> {
    if d.is_empty() {
        return Err(Error::EmptyDocument);
    }
    let full = MaskedDocument::full(d);
    let ma = ea.apply(&full);
    let mb = eb.apply(&full);
    let both = ma.meet(&mb)?.norm() as f64;
    let n = d.len() as f64;
    Ok(1.0 - ma.norm() as f64 / n + both / n)
}

/// `|E_a E_b D| / |E_a D|`, unsmoothed.
pub fn subjunctive(
    d: &Document,
    ea: &SelectiveEraser,
    eb: &SelectiveEraser,
    conv: CompositionConvention,
) -> ConditionalResult {
    smoothed_subjunctive(d, ea, eb, &SmoothingConfig::unsmoothed(), conv)
}

/// Subjunctive conditional with collection-average pseudo-counts:
/// `(|E_a E_b D| + mu·avg) / (|E_a D| + mu·avg)`.
pub fn smoothed_subjunctive(
    d: &Document,
    ea: &SelectiveEraser,
    eb: &SelectiveEraser,
    sm: &SmoothingConfig<'_>,
    conv: CompositionConvention,
) -> ConditionalResult {
    let num = numerator_chain(ea, eb, None, conv);
    smoothed_ratio(d, &num, &EraserChain::from(ea.clone()), sm, conv)
}

/// Subjunctive conditional evaluated inside the text preserved by the topic
/// eraser `E(a, topic_width)` centred on the antecedent term.
///
/// The numerator applies the topic eraser first; the denominator is the plain
/// antecedent norm.
pub fn topic_subjunctive(
    d: &Document,
    ea: &SelectiveEraser,
    eb: &SelectiveEraser,
    topic_width: usize,
    sm: &SmoothingConfig<'_>,
    conv: CompositionConvention,
) -> Result<ConditionalResult> {
    check_topic_width(ea, topic_width)?;
    let topic = SelectiveEraser::new(ea.term.clone(), topic_width);
    let num = numerator_chain(ea, eb, Some(&topic), conv);
    Ok(smoothed_ratio(d, &num, &EraserChain::from(ea.clone()), sm, conv))
}

/// Maximum over topic keywords `k` of the conditional evaluated inside the
/// text preserved by `E(k, topic_width)`:
/// `|E_a E_b E_k D| / |E_a E_k D|` (smoothed likewise).
///
/// For `k = a` the denominator reduces to `|E_a D|`, so a keyword set holding
/// only the antecedent term reproduces [`topic_subjunctive`]. Ties keep the
/// earliest keyword; if every keyword is undetermined the first keyword's
/// result is returned.
pub fn topic_subjunctive_general<S: AsRef<str>>(
    d: &Document,
    keywords: &[S],
    ea: &SelectiveEraser,
    eb: &SelectiveEraser,
    topic_width: usize,
    sm: &SmoothingConfig<'_>,
    conv: CompositionConvention,
) -> Result<ConditionalResult> {
    if keywords.is_empty() {
        return Err(Error::InvalidConfig("keyword set must not be empty".into()));
    }
    check_topic_width(ea, topic_width)?;
    let mut best: Option<ConditionalResult> = None;
    for k in keywords {
        let topic = SelectiveEraser::new(k.as_ref(), topic_width);
        let num = numerator_chain(ea, eb, Some(&topic), conv);
        let den = chain(&[ea, &topic]);
        let r = smoothed_ratio(d, &num, &den, sm, conv);
        best = match best {
            None => Some(r),
            Some(b) => match (b.value, r.value) {
                (None, Some(_)) => Some(r),
                (Some(bv), Some(rv)) if rv > bv => Some(r),
                _ => Some(b),
            },
        };
    }
    Ok(best.expect("non-empty keywords"))
}

fn check_topic_width(ea: &SelectiveEraser, topic_width: usize) -> Result<()> {
    if ea.width >= topic_width {
        return Err(Error::AntecedentWiderThanTopic {
            antecedent: ea.width,
            topic: topic_width,
        });
    }
    Ok(())
}
