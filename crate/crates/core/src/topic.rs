//! Topic lattices: measured relations between keyword erasers.
//!
//! A measured edge `E(a,w1) → E(b,w2)` records that
//! `P_topic(E(a,w1) □→ E(b,w2))` reached the acceptance threshold, written in
//! table notation as `E(a,w1) ⊒ E(b,w2)`. Width-axiom edges `E(t,w2) → E(t,w1)`
//! for `w1 < w2` encode the fact that a wider eraser on the same term lies
//! above a narrower one. Cycles in the resulting digraph are ordering
//! anomalies.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use petgraph::algo::{tarjan_scc, toposort};
use petgraph::graph::{DiGraph, NodeIndex};
use serde::{Deserialize, Serialize};

use crate::conditional::{topic_subjunctive, CompositionConvention, SmoothingConfig};
use crate::corpus::{CorpusAverages, Document};
use crate::eraser::SelectiveEraser;
use crate::error::{Error, Result};
use crate::exec::Execution;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TopicConfig {
    pub keywords: Vec<String>,
    /// Width of the topic-defining erasers.
    pub topic_width: usize,
    /// Largest antecedent/consequent width scanned.
    pub max_width: usize,
    /// Minimum probability for a relation to be recorded.
    pub tau: f64,
    pub mu: f64,
    pub convention: CompositionConvention,
}

impl Default for TopicConfig {
    fn default() -> Self {
        Self {
            keywords: Vec::new(),
            topic_width: 10,
            max_width: 8,
            tau: 0.5,
            mu: 1.0,
            convention: CompositionConvention::Written,
        }
    }
}

impl TopicConfig {
    pub fn new<S: Into<String>>(keywords: impl IntoIterator<Item = S>) -> Self {
        Self {
            keywords: keywords.into_iter().map(Into::into).collect(),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.keywords.is_empty() {
            return Err(Error::InvalidConfig("keywords must not be empty".into()));
        }
        let unique: BTreeSet<&String> = self.keywords.iter().collect();
        if unique.len() != self.keywords.len() {
            return Err(Error::InvalidConfig("keywords must be distinct".into()));
        }
        if self.max_width < 1 || self.max_width >= self.topic_width {
            return Err(Error::InvalidConfig(format!(
                "need 1 <= max_width < topic_width (got {} and {})",
                self.max_width, self.topic_width
            )));
        }
        if !(0.0..=1.0).contains(&self.tau) {
            return Err(Error::InvalidConfig(format!(
                "tau must lie in [0, 1], got {}",
                self.tau
            )));
        }
        if self.mu < 0.0 || !self.mu.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "mu must be finite and >= 0, got {}",
                self.mu
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeKind {
    Measured,
    WidthAxiom,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationEdge {
    #[serde(rename = "ante")]
    pub antecedent: SelectiveEraser,
    #[serde(rename = "cons")]
    pub consequent: SelectiveEraser,
    #[serde(rename = "p")]
    pub probability: f64,
    pub kind: EdgeKind,
}

impl RelationEdge {
    pub fn measured(antecedent: SelectiveEraser, consequent: SelectiveEraser, probability: f64) -> Self {
        Self {
            antecedent,
            consequent,
            probability,
            kind: EdgeKind::Measured,
        }
    }

    pub fn width_axiom(term: &str, wider: usize, narrower: usize) -> Self {
        Self {
            antecedent: SelectiveEraser::new(term, wider),
            consequent: SelectiveEraser::new(term, narrower),
            probability: 1.0,
            kind: EdgeKind::WidthAxiom,
        }
    }

    fn sort_key(&self) -> (&SelectiveEraser, &SelectiveEraser, EdgeKind) {
        (&self.antecedent, &self.consequent, self.kind)
    }
}

/// A strongly connected group of erasers, with its weakest internal edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Anomaly {
    pub nodes: Vec<SelectiveEraser>,
    pub weakest: RelationEdge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolveStrategy {
    /// Delete the weakest measured edge inside a cycle until none remain.
    PruneMin,
    /// Merge every strongly connected group into one equivalence class.
    Collapse,
}

impl std::str::FromStr for ResolveStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prune-min" => Ok(Self::PruneMin),
            "collapse" => Ok(Self::Collapse),
            other => Err(Error::InvalidConfig(format!("unknown strategy `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopicLattice {
    pub config: TopicConfig,
    pub nodes: Vec<SelectiveEraser>,
    pub edges: Vec<RelationEdge>,
    pub anomalies: Vec<Anomaly>,
    /// Partition of `nodes`; singletons unless collapsed.
    pub classes: Vec<Vec<SelectiveEraser>>,
    /// Measured edges removed by pruning, in removal order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pruned: Vec<RelationEdge>,
}

/// Scans `(w_a, w_b) ∈ [1, max_width]²` for the relation `a → b` and returns
/// the representative edge: among probabilities `>= tau`, the smallest
/// `w_a + w_b`, then the higher probability, then the smaller `w_a`.
pub fn scan_pair(
    d: &Document,
    cfg: &TopicConfig,
    a: &str,
    b: &str,
    sm: &SmoothingConfig<'_>,
) -> Result<Option<RelationEdge>> {
    if a == b {
        return Err(Error::InvalidConfig(format!(
            "scan_pair needs distinct terms, got `{a}` twice"
        )));
    }
    if d.term_id(a).is_none() || d.term_id(b).is_none() {
        return Ok(None);
    }
    let mut best: Option<(usize, usize, f64)> = None;
    for wa in 1..=cfg.max_width {
        let ea = SelectiveEraser::new(a, wa);
        for wb in 1..=cfg.max_width {
            let eb = SelectiveEraser::new(b, wb);
            let r = topic_subjunctive(d, &ea, &eb, cfg.topic_width, sm, cfg.convention)?;
            let Some(p) = r.value else { continue };
            if p < cfg.tau {
                continue;
            }
            let better = match best {
                None => true,
                Some((ba, bb, bp)) => (wa + wb)
                    .cmp(&(ba + bb))
                    .then(bp.total_cmp(&p))
                    .then(wa.cmp(&ba))
                    .is_lt(),
            };
            if better {
                best = Some((wa, wb, p));
            }
        }
    }
    Ok(best.map(|(wa, wb, p)| RelationEdge::measured(SelectiveEraser::new(a, wa), SelectiveEraser::new(b, wb), p)))
}

/// Runs [`scan_pair`] over every ordered keyword pair and assembles the
/// lattice with width axioms and detected anomalies.
pub fn build_lattice(
    d: &Document,
    cfg: &TopicConfig,
    averages: &CorpusAverages<'_>,
    exec: Execution,
) -> Result<TopicLattice> {
    cfg.validate()?;
    let sm = SmoothingConfig::new(cfg.mu, averages)?;
    let pairs: Vec<(&str, &str)> = cfg
        .keywords
        .iter()
        .flat_map(|a| cfg.keywords.iter().map(move |b| (a.as_str(), b.as_str())))
        .filter(|(a, b)| a != b)
        .collect();
    let scanned = exec.map(&pairs, |(a, b)| scan_pair(d, cfg, a, b, &sm));
    let mut measured = Vec::new();
    for r in scanned {
        measured.extend(r?);
    }
    Ok(TopicLattice::from_measured(cfg.clone(), measured))
}

impl TopicLattice {
    /// Builds a lattice from measured edges, adding width axioms between every
    /// pair of same-term nodes.
    pub fn from_measured(config: TopicConfig, measured: Vec<RelationEdge>) -> Self {
        let nodes: BTreeSet<SelectiveEraser> = measured
            .iter()
            .flat_map(|e| [e.antecedent.clone(), e.consequent.clone()])
            .collect();
        let mut by_term: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for n in &nodes {
            by_term.entry(n.term.as_str()).or_default().push(n.width);
        }
        let mut edges = measured;
        for (term, widths) in &by_term {
            for (i, &narrow) in widths.iter().enumerate() {
                for &wide in &widths[i + 1..] {
                    edges.push(RelationEdge::width_axiom(term, wide, narrow));
                }
            }
        }
        Self::from_edges(config, edges)
    }

    /// Builds a lattice from an explicit edge list (nodes are the endpoints).
    pub fn from_edges(config: TopicConfig, mut edges: Vec<RelationEdge>) -> Self {
        edges.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
        let nodes: Vec<SelectiveEraser> = edges
            .iter()
            .flat_map(|e| [e.antecedent.clone(), e.consequent.clone()])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let classes = nodes.iter().map(|n| vec![n.clone()]).collect();
        let mut l = Self {
            config,
            nodes,
            edges,
            anomalies: Vec::new(),
            classes,
            pruned: Vec::new(),
        };
        l.anomalies = detect_anomalies(&l);
        l
    }

    pub fn measured_edges(&self) -> impl Iterator<Item = &RelationEdge> {
        self.edges.iter().filter(|e| e.kind == EdgeKind::Measured)
    }

    /// Measured edge from a term to another, if any.
    pub fn relation(&self, a: &str, b: &str) -> Option<&RelationEdge> {
        self.measured_edges()
            .find(|e| e.antecedent.term == a && e.consequent.term == b)
    }

    fn class_of(&self) -> BTreeMap<&SelectiveEraser, usize> {
        let mut m = BTreeMap::new();
        for (i, class) in self.classes.iter().enumerate() {
            for n in class {
                m.insert(n, i);
            }
        }
        m
    }

    /// Topological order of the equivalence classes, if their quotient graph
    /// is acyclic.
    pub fn class_topological_order(&self) -> Option<Vec<usize>> {
        let class_of = self.class_of();
        let mut g: DiGraph<usize, ()> = DiGraph::new();
        let idx: Vec<NodeIndex> = (0..self.classes.len()).map(|i| g.add_node(i)).collect();
        for e in &self.edges {
            let (a, b) = (class_of[&e.antecedent], class_of[&e.consequent]);
            if a != b {
                g.add_edge(idx[a], idx[b], ());
            }
        }
        toposort(&g, None)
            .ok()
            .map(|order| order.into_iter().map(|n| g[n]).collect())
    }

    pub fn is_resolved(&self) -> bool {
        self.class_topological_order().is_some()
    }
}

fn graph_of(l: &TopicLattice) -> (DiGraph<usize, usize>, BTreeMap<&SelectiveEraser, NodeIndex>) {
    let mut g = DiGraph::new();
    let idx: BTreeMap<&SelectiveEraser, NodeIndex> =
        l.nodes.iter().enumerate().map(|(i, n)| (n, g.add_node(i))).collect();
    for (ei, e) in l.edges.iter().enumerate() {
        g.add_edge(idx[&e.antecedent], idx[&e.consequent], ei);
    }
    (g, idx)
}

/// Weakest edge inside a node set: lowest probability, measured edges before
/// axioms, then edge order.
fn weakest_edge<'a>(l: &'a TopicLattice, members: &BTreeSet<&SelectiveEraser>) -> Option<&'a RelationEdge> {
    l.edges
        .iter()
        .filter(|e| members.contains(&e.antecedent) && members.contains(&e.consequent))
        .min_by(|x, y| {
            x.probability
                .total_cmp(&y.probability)
                .then(x.kind.cmp(&y.kind))
                .then(x.sort_key().cmp(&y.sort_key()))
        })
}

/// Every strongly connected component with more than one node.
pub fn detect_anomalies(l: &TopicLattice) -> Vec<Anomaly> {
    let (g, _) = graph_of(l);
    let mut out: Vec<Anomaly> = tarjan_scc(&g)
        .into_iter()
        .filter(|scc| scc.len() > 1)
        .map(|scc| {
            let mut nodes: Vec<SelectiveEraser> = scc.iter().map(|&n| l.nodes[g[n]].clone()).collect();
            nodes.sort();
            let members: BTreeSet<&SelectiveEraser> = nodes.iter().collect();
            let weakest = weakest_edge(l, &members).expect("scc has internal edges").clone();
            Anomaly { nodes, weakest }
        })
        .collect();
    out.sort_by(|a, b| a.nodes.cmp(&b.nodes));
    out
}

/// Removes ordering anomalies.
pub fn resolve(l: &TopicLattice, strategy: ResolveStrategy) -> Result<TopicLattice> {
    let mut out = l.clone();
    match strategy {
        ResolveStrategy::PruneMin => loop {
            let anomalies = detect_anomalies(&out);
            if anomalies.is_empty() {
                break;
            }
            let mut victim: Option<RelationEdge> = None;
            for a in &anomalies {
                if a.weakest.kind != EdgeKind::Measured {
                    return Err(Error::Internal(format!(
                        "cycle through {} consists of width axioms only",
                        a.nodes.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                    )));
                }
                let weaker = match &victim {
                    None => true,
                    Some(v) => a
                        .weakest
                        .probability
                        .total_cmp(&v.probability)
                        .then(a.weakest.sort_key().cmp(&v.sort_key()))
                        .is_lt(),
                };
                if weaker {
                    victim = Some(a.weakest.clone());
                }
            }
            let victim = victim.expect("at least one anomaly");
            out.edges.retain(|e| e != &victim);
            out.pruned.push(victim);
        },
        ResolveStrategy::Collapse => {
            for a in detect_anomalies(&out) {
                let members: BTreeSet<&SelectiveEraser> = a.nodes.iter().collect();
                if !out.edges.iter().any(|e| {
                    e.kind == EdgeKind::Measured && members.contains(&e.antecedent) && members.contains(&e.consequent)
                }) {
                    return Err(Error::Internal("cycle consists of width axioms only".into()));
                }
            }
            let (g, _) = graph_of(&out);
            let mut classes: Vec<Vec<SelectiveEraser>> = tarjan_scc(&g)
                .into_iter()
                .map(|scc| {
                    let mut c: Vec<SelectiveEraser> = scc.iter().map(|&n| out.nodes[g[n]].clone()).collect();
                    c.sort();
                    c
                })
                .collect();
            classes.sort();
            out.classes = classes;
        }
    }
    out.anomalies = if strategy == ResolveStrategy::Collapse {
        Vec::new()
    } else {
        detect_anomalies(&out)
    };
    debug_assert!(out.is_resolved());
    Ok(out)
}

fn node_id(e: &SelectiveEraser) -> String {
    format!("\"{}\"", e.to_string().replace('"', "\\\""))
}

/// Graphviz rendering with probabilities on measured edges and dashed width
/// axioms. Non-trivial equivalence classes are drawn as clusters.
pub fn export_dot(l: &TopicLattice) -> String {
    let mut s = String::from("digraph topic {\n  rankdir=TB;\n  node [shape=box];\n");
    let mut clustered = BTreeSet::new();
    for (i, class) in l.classes.iter().enumerate().filter(|(_, c)| c.len() > 1) {
        let _ = writeln!(
            s,
            "  subgraph cluster_{i} {{\n    style=dashed;\n    label=\"class {i}\";"
        );
        for n in class {
            let _ = writeln!(s, "    {};", node_id(n));
            clustered.insert(n);
        }
        s.push_str("  }\n");
    }
    for n in l.nodes.iter().filter(|n| !clustered.contains(n)) {
        let _ = writeln!(s, "  {};", node_id(n));
    }
    for e in &l.edges {
        match e.kind {
            EdgeKind::Measured => {
                let _ = writeln!(
                    s,
                    "  {} -> {} [label=\"{:.2}\"];",
                    node_id(&e.antecedent),
                    node_id(&e.consequent),
                    e.probability
                );
            }
            EdgeKind::WidthAxiom => {
                let _ = writeln!(
                    s,
                    "  {} -> {} [style=dashed];",
                    node_id(&e.antecedent),
                    node_id(&e.consequent)
                );
            }
        }
    }
    s.push_str("}\n");
    s
}

/// Pretty JSON with sorted keys.
pub fn export_json(l: &TopicLattice) -> Result<String> {
    let v = serde_json::to_value(l)?;
    Ok(serde_json::to_string_pretty(&v)?)
}

pub fn import_json(text: &str) -> Result<TopicLattice> {
    let l: TopicLattice = serde_json::from_str(text)?;
    l.config.validate()?;
    let known: BTreeSet<&SelectiveEraser> = l.nodes.iter().collect();
    for e in &l.edges {
        if !known.contains(&e.antecedent) || !known.contains(&e.consequent) {
            return Err(Error::InvalidConfig(format!(
                "edge {} -> {} references an unknown node",
                e.antecedent, e.consequent
            )));
        }
    }
    let mut in_classes: Vec<&SelectiveEraser> = l.classes.iter().flatten().collect();
    in_classes.sort();
    if in_classes != l.nodes.iter().collect::<Vec<_>>() {
        return Err(Error::InvalidConfig("classes do not partition the nodes".into()));
    }
    Ok(l)
}

/// Keyword-by-keyword grid in the style `P(w1⊒w2)=NN%`: rows are
/// antecedent terms, columns consequent terms.
pub fn render_table(l: &TopicLattice) -> String {
    let kws = &l.config.keywords;
    let cell = |a: &str, b: &str| -> String {
        if a == b {
            return "trivial".into();
        }
        match l.relation(a, b) {
            Some(e) => format!(
                "P({}⊒{})={:.0}%",
                e.antecedent.width,
                e.consequent.width,
                e.probability * 100.0
            ),
            None => "-".into(),
        }
    };
    let mut rows: Vec<Vec<String>> = vec![std::iter::once(String::new()).chain(kws.iter().cloned()).collect()];
    for a in kws {
        rows.push(
            std::iter::once(a.clone())
                .chain(kws.iter().map(|b| cell(a, b)))
                .collect(),
        );
    }
    let widths: Vec<usize> = (0..=kws.len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for r in &rows {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        s.push_str(line.join(" | ").trim_end());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Corpus;

    fn e(t: &str, w: usize) -> SelectiveEraser {
        SelectiveEraser::new(t, w)
    }

    fn doc(s: &str) -> Document {
        let toks: Vec<&str> = s.split_whitespace().collect();
        Document::from_tokens("d", "xx", &toks).unwrap()
    }

    fn cfg(kws: &[&str], wt: usize, wmax: usize) -> TopicConfig {
        TopicConfig {
            topic_width: wt,
            max_width: wmax,
            mu: 0.0,
            ..TopicConfig::new(kws.iter().copied())
        }
    }

    /// The four-node cycle: two measured cross edges plus width axioms.
    pub(crate) fn fig2_lattice() -> TopicLattice {
        TopicLattice::from_measured(
            TopicConfig::new(["sword", "hand"]),
            vec![
                RelationEdge::measured(e("sword", 2), e("hand", 3), 0.87),
                RelationEdge::measured(e("hand", 2), e("sword", 3), 0.96),
            ],
        )
    }

    #[test]
    fn config_validation() {
        assert!(TopicConfig::new(["a"]).validate().is_ok());
        assert!(TopicConfig::new(Vec::<String>::new()).validate().is_err());
        assert!(TopicConfig::new(["a", "a"]).validate().is_err());
        assert!(TopicConfig {
            max_width: 10,
            ..TopicConfig::new(["a"])
        }
        .validate()
        .is_err());
        assert!(TopicConfig {
            max_width: 0,
            ..TopicConfig::new(["a"])
        }
        .validate()
        .is_err());
        assert!(TopicConfig {
            tau: 1.5,
            ..TopicConfig::new(["a"])
        }
        .validate()
        .is_err());
    }

    #[test]
    fn scan_pair_no_cooccurrence() {
        let mut toks = vec!["a"];
        toks.extend(std::iter::repeat_n("x", 30));
        toks.push("b");
        let d = Document::from_tokens("d", "xx", &toks).unwrap();
        let c = cfg(&["a", "b"], 10, 8);
        let sm = SmoothingConfig::unsmoothed();
        assert_eq!(scan_pair(&d, &c, "a", "b", &sm).unwrap(), None);
        assert_eq!(scan_pair(&d, &c, "a", "zz", &sm).unwrap(), None);
        assert!(scan_pair(&d, &c, "a", "a", &sm).is_err());
    }

    #[test]
    fn scan_pair_prefers_small_widths() {
        // b always two positions after a
        let d = doc("a x b y y y y y y y a x b y y y y y y y");
        let c = cfg(&["a", "b"], 10, 8);
        let edge = scan_pair(&d, &c, "a", "b", &SmoothingConfig::unsmoothed())
            .unwrap()
            .unwrap();
        // brute force over the grid with the same ordering rule
        let sm = SmoothingConfig::unsmoothed();
        let mut cands = Vec::new();
        for wa in 1..=8 {
            for wb in 1..=8 {
                let p = topic_subjunctive(&d, &e("a", wa), &e("b", wb), 10, &sm, c.convention)
                    .unwrap()
                    .value
                    .unwrap();
                if p >= 0.5 {
                    cands.push((wa + wb, -p, wa, wb, p));
                }
            }
        }
        cands.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let (_, _, wa, wb, p) = cands[0];
        assert_eq!(
            (edge.antecedent.width, edge.consequent.width, edge.probability),
            (wa, wb, p)
        );
    }

    #[test]
    fn alternating_doc_has_both_cross_edges() {
        let toks: Vec<&str> = (0..40).map(|i| if i % 2 == 0 { "a" } else { "b" }).collect();
        let d = Document::from_tokens("d", "xx", &toks).unwrap();
        let corpus = Corpus::single(d.clone());
        let avgs = CorpusAverages::new(&corpus);
        let c = cfg(&["a", "b"], 3, 2);
        let l = build_lattice(&d, &c, &avgs, Execution::Sequential).unwrap();
        let ab = l.relation("a", "b").unwrap();
        let ba = l.relation("b", "a").unwrap();
        assert_eq!(ab.probability, 1.0);
        assert_eq!(ba.probability, 1.0);
        assert_eq!((ab.antecedent.width, ab.consequent.width), (1, 1));
    }

    #[test]
    fn single_keyword_lattice() {
        let d = doc("a b a c");
        let corpus = Corpus::single(d.clone());
        let avgs = CorpusAverages::new(&corpus);
        let l = build_lattice(&d, &cfg(&["a"], 10, 8), &avgs, Execution::Sequential).unwrap();
        assert_eq!(l.measured_edges().count(), 0);
        assert!(l.edges.iter().all(|e| e.kind == EdgeKind::WidthAxiom));
        assert!(l.anomalies.is_empty());
    }

    #[test]
    fn parallel_matches_sequential() {
        let d = doc("a b c a d b b a c d a a b c d d c b a a b c a b d");
        let corpus = Corpus::single(d.clone());
        let avgs = CorpusAverages::new(&corpus);
        let c = TopicConfig {
            mu: 1.0,
            ..cfg(&["a", "b", "c", "d"], 5, 4)
        };
        let s = build_lattice(&d, &c, &avgs, Execution::Sequential).unwrap();
        let p = build_lattice(&d, &c, &avgs, Execution::Parallel).unwrap();
        assert_eq!(export_json(&s).unwrap(), export_json(&p).unwrap());
    }

    #[test]
    fn fig2_anomaly_detected() {
        let l = fig2_lattice();
        assert_eq!(l.anomalies.len(), 1);
        let a = &l.anomalies[0];
        assert_eq!(a.nodes, vec![e("hand", 2), e("hand", 3), e("sword", 2), e("sword", 3)]);
        assert_eq!(a.weakest.probability, 0.87);
    }

    #[test]
    fn axioms_only_is_acyclic() {
        let l = TopicLattice::from_edges(
            TopicConfig::new(["a"]),
            vec![
                RelationEdge::width_axiom("a", 3, 1),
                RelationEdge::width_axiom("a", 3, 2),
                RelationEdge::width_axiom("a", 2, 1),
            ],
        );
        assert!(detect_anomalies(&l).is_empty());
    }

    #[test]
    fn two_cycle() {
        let l = TopicLattice::from_edges(
            TopicConfig::new(["a", "b"]),
            vec![
                RelationEdge::measured(e("a", 1), e("b", 1), 0.7),
                RelationEdge::measured(e("b", 1), e("a", 1), 0.9),
            ],
        );
        let an = detect_anomalies(&l);
        assert_eq!(an.len(), 1);
        assert_eq!(an[0].nodes, vec![e("a", 1), e("b", 1)]);
    }

    #[test]
    fn prune_removes_weaker_relation() {
        let r = resolve(&fig2_lattice(), ResolveStrategy::PruneMin).unwrap();
        assert_eq!(r.pruned.len(), 1);
        assert_eq!(r.pruned[0].probability, 0.87);
        assert!(r.relation("hand", "sword").is_some());
        assert!(r.relation("sword", "hand").is_none());
        assert!(r.anomalies.is_empty());
        assert!(r.is_resolved());
    }

    #[test]
    fn collapse_merges_cycle() {
        let r = resolve(&fig2_lattice(), ResolveStrategy::Collapse).unwrap();
        let big: Vec<_> = r.classes.iter().filter(|c| c.len() > 1).collect();
        assert_eq!(big.len(), 1);
        assert_eq!(big[0].len(), 4);
        assert!(r.is_resolved());
        assert!(!fig2_lattice().is_resolved());
    }

    #[test]
    fn resolve_leaves_acyclic_input_alone() {
        let l = TopicLattice::from_measured(
            TopicConfig::new(["a", "b"]),
            vec![RelationEdge::measured(e("a", 1), e("b", 2), 0.8)],
        );
        assert_eq!(resolve(&l, ResolveStrategy::PruneMin).unwrap(), l);
        assert_eq!(resolve(&l, ResolveStrategy::Collapse).unwrap(), l);
    }

    #[test]
    fn dot_and_json() {
        let empty = TopicLattice::from_edges(TopicConfig::new(["a"]), vec![]);
        assert_eq!(
            export_dot(&empty),
            "digraph topic {\n  rankdir=TB;\n  node [shape=box];\n}\n"
        );
        let l = fig2_lattice();
        let dot = export_dot(&l);
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert!(dot.contains("\"E(sword,2)\" -> \"E(hand,3)\" [label=\"0.87\"]"));
        assert_eq!(dot, export_dot(&l));
        let json = export_json(&l).unwrap();
        assert_eq!(import_json(&json).unwrap(), l);
        let collapsed = resolve(&l, ResolveStrategy::Collapse).unwrap();
        assert!(export_dot(&collapsed).contains("subgraph cluster_"));
        assert_eq!(import_json(&export_json(&collapsed).unwrap()).unwrap(), collapsed);
        assert!(import_json("{\"nodes\": []}").is_err());
    }

    #[test]
    fn table_cells() {
        let t = render_table(&fig2_lattice());
        assert!(t.contains("P(2⊒3)=87%"));
        assert!(t.contains("P(2⊒3)=96%"));
        assert!(t.contains("trivial"));
    }
}
