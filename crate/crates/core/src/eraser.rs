//! Selective erasers as mask transformations.
//!
//! `E(t, w)` keeps position `q` of a masked document iff `q` is still preserved
//! and some *preserved* occurrence `p` of `t` satisfies `|q - p| <= w`.
//! Distances are measured in original positions, erased ones included. An
//! erased token has lost its identity and never acts as an anchor.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Document};
use crate::error::{Error, Result};
use crate::mask::PositionMask;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SelectiveEraser {
    pub term: String,
    pub width: usize,
}

impl SelectiveEraser {
    pub fn new(term: impl Into<String>, width: usize) -> Self {
        Self {
            term: term.into(),
            width,
        }
    }

    /// Applies the eraser to `md`.
    ///
    /// Anchor windows `[p - w, p + w]` are clipped to the document, merged into
    /// sorted disjoint ranges and intersected with the incoming mask.
    pub fn apply<'d>(&self, md: &MaskedDocument<'d>) -> MaskedDocument<'d> {
        let len = md.doc.len();
        let mut ranges: Vec<Range<usize>> = Vec::new();
        for &p in md.doc.positions(&self.term) {
            let p = p as usize;
            if !md.mask.contains(p) {
                continue;
            }
            let start = p.saturating_sub(self.width);
            let end = p.saturating_add(self.width).saturating_add(1).min(len);
            match ranges.last_mut() {
                Some(last) if start <= last.end => last.end = last.end.max(end),
                _ => ranges.push(start..end),
            }
        }
        MaskedDocument {
            doc: md.doc,
            mask: md.mask.retain_ranges(&ranges),
        }
    }

    /// Same contract as [`apply`](Self::apply), computed by a plain double
    /// scan over positions. Used as a test oracle.
    pub fn naive_apply<'d>(&self, md: &MaskedDocument<'d>) -> MaskedDocument<'d> {
        let doc = md.doc;
        let target = doc.term_id(&self.term);
        let len = doc.len();
        let mut keep = Vec::new();
        for q in 0..len {
            if !md.mask.contains(q) {
                continue;
            }
            let mut anchored = false;
            for p in 0..len {
                if md.mask.contains(p) && Some(doc.tokens()[p]) == target && q.abs_diff(p) <= self.width {
                    anchored = true;
                    break;
                }
            }
            if anchored {
                keep.push(q);
            }
        }
        MaskedDocument {
            doc,
            mask: PositionMask::from_positions(len, keep),
        }
    }

    /// `|E D|` on a fresh document.
    pub fn norm(&self, doc: &Document) -> usize {
        self.apply(&MaskedDocument::full(doc)).norm()
    }
}

impl fmt::Display for SelectiveEraser {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({},{})", self.term, self.width)
    }
}

/// Parses `term,width` or `E(term,width)`.
impl FromStr for SelectiveEraser {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix("E(")
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s.trim());
        let (term, width) = inner
            .rsplit_once(',')
            .ok_or_else(|| Error::InvalidConfig(format!("expected `term,width`, got `{s}`")))?;
        let width = width
            .trim()
            .parse()
            .map_err(|_| Error::InvalidConfig(format!("invalid width in `{s}`")))?;
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::InvalidConfig(format!("empty term in `{s}`")));
        }
        Ok(Self::new(term, width))
    }
}

/// A composition of erasers written left to right and applied right to left,
/// like function composition: `[E1, E2]` means `E1(E2(D))`.
///
/// The empty chain is the identity and serializes as `I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EraserChain(Vec<SelectiveEraser>);

impl EraserChain {
    pub fn new(erasers: Vec<SelectiveEraser>) -> Result<Self> {
        if erasers.is_empty() {
            return Err(Error::InvalidConfig("eraser chain must not be empty".into()));
        }
        Ok(Self(erasers))
    }

    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn erasers(&self) -> &[SelectiveEraser] {
        &self.0
    }

    pub fn apply_to<'d>(&self, md: &MaskedDocument<'d>) -> MaskedDocument<'d> {
        self.0.iter().rev().fold(md.clone(), |acc, e| e.apply(&acc))
    }

    pub fn apply<'d>(&self, doc: &'d Document) -> MaskedDocument<'d> {
        self.apply_to(&MaskedDocument::full(doc))
    }
}

impl From<SelectiveEraser> for EraserChain {
    fn from(e: SelectiveEraser) -> Self {
        Self(vec![e])
    }
}

impl fmt::Display for EraserChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("I");
        }
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("∘")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// A document together with the set of positions whose identity survives.
#[derive(Debug, Clone)]
pub struct MaskedDocument<'d> {
    doc: &'d Document,
    mask: PositionMask,
}

impl PartialEq for MaskedDocument<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.doc, other.doc) && self.mask == other.mask
    }
}

impl<'d> MaskedDocument<'d> {
    pub fn full(doc: &'d Document) -> Self {
        Self {
            doc,
            mask: PositionMask::full(doc.len()),
        }
    }

    pub fn with_mask(doc: &'d Document, mask: PositionMask) -> Result<Self> {
        if mask.len() != doc.len() {
            return Err(Error::DimensionMismatch {
                expected: doc.len(),
                got: mask.len(),
            });
        }
        Ok(Self { doc, mask })
    }

    pub fn document(&self) -> &'d Document {
        self.doc
    }

    pub fn mask(&self) -> &PositionMask {
        &self.mask
    }

    /// Count of preserved tokens.
    pub fn norm(&self) -> usize {
        self.mask.count()
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.same_base(other)?;
        Ok(Self {
            doc: self.doc,
            mask: self.mask.union(&other.mask),
        })
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.same_base(other)?;
        Ok(Self {
            doc: self.doc,
            mask: self.mask.intersection(&other.mask),
        })
    }

    fn same_base(&self, other: &Self) -> Result<()> {
        if std::ptr::eq(self.doc, other.doc) {
            Ok(())
        } else {
            Err(Error::DocumentMismatch)
        }
    }
}

/// `e1 ⩾ e2` relative to `docs`: applying `e1` after `e2` changes nothing on
/// every document.
pub fn order_holds(e1: &SelectiveEraser, e2: &SelectiveEraser, docs: &Corpus) -> bool {
    docs.documents().iter().all(|d| {
        let after_e2 = e2.apply(&MaskedDocument::full(d));
        e1.apply(&after_e2) == after_e2
    })
}

/// `Σ ω_i |E D_i| / |D_i|`.
pub fn weighted_valuation(corpus: &Corpus, e: &SelectiveEraser) -> Result<f64> {
    corpus
        .iter()
        .map(|(d, w)| {
            if d.is_empty() {
                return Err(Error::ZeroLengthDocument(d.id().to_owned()));
            }
            Ok(w * e.norm(d) as f64 / d.len() as f64)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn doc(s: &str) -> Document {
        let toks: Vec<&str> = s.split_whitespace().collect();
        Document::from_tokens("d", "xx", &toks).unwrap()
    }

    fn positions(md: &MaskedDocument<'_>) -> Vec<usize> {
        md.mask().iter().collect()
    }

    fn e(t: &str, w: usize) -> SelectiveEraser {
        SelectiveEraser::new(t, w)
    }

    #[test]
    fn apply_examples() {
        let d1 = doc("a b c a d");
        let full = MaskedDocument::full(&d1);
        for f in [SelectiveEraser::apply, SelectiveEraser::naive_apply] {
            let m = f(&e("a", 1), &full);
            assert_eq!(positions(&m), [0, 1, 2, 3, 4]);
            assert_eq!(m.norm(), 5);
            assert_eq!(f(&e("z", 3), &full).norm(), 0);
            let after_b = f(&e("b", 1), &full);
            assert_eq!(positions(&after_b), [0, 1, 2]);
            let m = f(&e("a", 1), &after_b);
            assert_eq!(positions(&m), [0, 1]);
        }
    }

    #[test]
    fn chain_examples() {
        let d1 = doc("a b c a d");
        assert_eq!(EraserChain::from(e("a", 1)).apply(&d1).norm(), 5);
        let chain = EraserChain::new(vec![e("a", 1), e("b", 1)]).unwrap();
        assert_eq!(chain.apply(&d1).norm(), 2);
        assert_eq!(EraserChain::from(e("t", 4)).apply(&d1).norm(), 0);
        assert_eq!(EraserChain::identity().apply(&d1).norm(), 5);
        assert!(EraserChain::new(vec![]).is_err());
    }

    #[test]
    fn chain_serialization_is_order_sensitive() {
        let ab = EraserChain::new(vec![e("a", 1), e("b", 2)]).unwrap();
        let ba = EraserChain::new(vec![e("b", 2), e("a", 1)]).unwrap();
        assert_eq!(ab.to_string(), "E(a,1)∘E(b,2)");
        assert_ne!(ab.to_string(), ba.to_string());
        assert_eq!(EraserChain::identity().to_string(), "I");
    }

    #[test]
    fn norms() {
        let d1 = doc("a b c a d");
        assert_eq!(MaskedDocument::full(&d1).norm(), 5);
        let empty = MaskedDocument::with_mask(&d1, PositionMask::empty(5)).unwrap();
        assert_eq!(empty.norm(), 0);
        assert_eq!(e("b", 1).norm(&d1), 3);
    }

    #[test]
    fn order_examples() {
        let c = Corpus::single(doc("a b c a d"));
        assert!(order_holds(&e("a", 2), &e("a", 1), &c));
        assert!(!order_holds(&e("a", 1), &e("b", 1), &c));
        assert!(order_holds(&e("c", 0), &e("c", 0), &c));
    }

    #[test]
    fn valuation_examples() {
        let c = Corpus::single(doc("a b c a d"));
        assert_eq!(weighted_valuation(&c, &e("a", 1)).unwrap(), 1.0);
        assert!((weighted_valuation(&c, &e("d", 0)).unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(weighted_valuation(&c, &e("q", 5)).unwrap(), 0.0);
    }

    #[test]
    fn join_meet_examples() {
        let d1 = doc("a b c a d");
        let m1 = MaskedDocument::with_mask(&d1, PositionMask::from_positions(5, [0, 1])).unwrap();
        let m2 = MaskedDocument::with_mask(&d1, PositionMask::from_positions(5, [1, 2])).unwrap();
        assert_eq!(positions(&m1.join(&m2).unwrap()), [0, 1, 2]);
        let m3 = MaskedDocument::with_mask(&d1, PositionMask::from_positions(5, [3, 4])).unwrap();
        assert_eq!(m1.meet(&m3).unwrap().norm(), 0);
        let full = MaskedDocument::full(&d1);
        let ma = e("a", 1).apply(&full);
        let mb = e("b", 1).apply(&full);
        assert_eq!(positions(&ma.meet(&mb).unwrap()), [0, 1, 2]);

        let other = doc("a b c a d");
        let mo = MaskedDocument::full(&other);
        assert!(matches!(ma.join(&mo), Err(Error::DocumentMismatch)));
        assert!(matches!(ma.meet(&mo), Err(Error::DocumentMismatch)));
    }

    #[test]
    fn parse_eraser() {
        assert_eq!("sword,2".parse::<SelectiveEraser>().unwrap(), e("sword", 2));
        assert_eq!("E(hand,3)".parse::<SelectiveEraser>().unwrap(), e("hand", 3));
        assert!("hand".parse::<SelectiveEraser>().is_err());
        assert!("hand,x".parse::<SelectiveEraser>().is_err());
        assert!(",3".parse::<SelectiveEraser>().is_err());
    }

    fn arb_doc() -> impl Strategy<Value = Vec<&'static str>> {
        proptest::collection::vec(proptest::sample::select(vec!["a", "b", "c", "d", "e"]), 1..40)
    }

    fn arb_eraser() -> impl Strategy<Value = SelectiveEraser> {
        (proptest::sample::select(vec!["a", "b", "c", "d", "e", "z"]), 0usize..7)
            .prop_map(|(t, w)| SelectiveEraser::new(t, w))
    }

    proptest! {
        #[test]
        fn contraction_and_idempotence(toks in arb_doc(), first in arb_eraser(), e in arb_eraser()) {
            let d = Document::from_tokens("p", "xx", &toks).unwrap();
            let md = first.apply(&MaskedDocument::full(&d));
            let once = e.apply(&md);
            prop_assert!(once.mask().is_subset(md.mask()));
            prop_assert_eq!(e.apply(&once), once);
        }

        #[test]
        fn width_monotonicity_and_absorption(toks in arb_doc(), t in proptest::sample::select(vec!["a", "b", "z"]),
                                             w1 in 0usize..7, dw in 0usize..7) {
            let d = Document::from_tokens("p", "xx", &toks).unwrap();
            let (narrow, wide) = (SelectiveEraser::new(t, w1), SelectiveEraser::new(t, w1 + dw));
            prop_assert!(order_holds(&wide, &narrow, &Corpus::single(d.clone())));
            let after = narrow.apply(&MaskedDocument::full(&d));
            prop_assert_eq!(wide.apply(&after), after);
        }

        #[test]
        fn inclusion_exclusion(toks in arb_doc(), e1 in arb_eraser(), e2 in arb_eraser()) {
            let d = Document::from_tokens("p", "xx", &toks).unwrap();
            let full = MaskedDocument::full(&d);
            let (m1, m2) = (e1.apply(&full), e2.apply(&full));
            let j = m1.join(&m2).unwrap();
            let m = m1.meet(&m2).unwrap();
            prop_assert_eq!(j.norm() + m.norm(), m1.norm() + m2.norm());
        }

        #[test]
        fn matches_naive_oracle(toks in arb_doc(), chain in proptest::collection::vec(arb_eraser(), 1..4)) {
            let d = Document::from_tokens("p", "xx", &toks).unwrap();
            let mut fast = MaskedDocument::full(&d);
            let mut slow = MaskedDocument::full(&d);
            for e in chain.iter().rev() {
                fast = e.apply(&fast);
                slow = e.naive_apply(&slow);
                prop_assert_eq!(&fast, &slow);
            }
        }
    }
}
