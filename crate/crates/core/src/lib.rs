//! Selective-eraser measurements over tokenized text.
//!
//! A selective eraser `E(t, w)` keeps the identity of every token lying within
//! `w` positions of an occurrence of term `t` and erases everything else. The
//! crate builds on that primitive:
//!
//! * [`corpus`] turns raw text into position-indexed documents and keeps
//!   collection-level norm averages.
//! * [`mask`] and [`eraser`] implement erasers as operations on position masks.
//! * [`conditional`] computes material and subjunctive conditionals between
//!   erasers, with smoothing and topic restriction.
//! * [`order`] holds finite posets, valuations and the real-vector quantum
//!   reference measure used to validate the order-theoretic definitions.
//! * [`topic`] scans keyword pairs, assembles relation graphs, finds ordering
//!   anomalies and resolves them.
//! * [`crosslingual`] compares two topic lattices under a keyword alignment.
//!
//! Data-parallel loops go through [`exec::Execution`]; with the `parallel`
//! feature disabled every path runs sequentially and produces identical output.

pub mod conditional;
pub mod corpus;
pub mod crosslingual;
pub mod eraser;
pub mod error;
pub mod exec;
pub mod mask;
pub mod order;
pub mod topic;

pub use conditional::{CompositionConvention, ConditionalResult, SmoothingConfig};
pub use corpus::{Corpus, CorpusAverages, Document, TokenizerConfig};
pub use eraser::{EraserChain, MaskedDocument, SelectiveEraser};
pub use error::{Error, Result};
pub use exec::Execution;
pub use mask::PositionMask;
pub use topic::{RelationEdge, TopicConfig, TopicLattice};
