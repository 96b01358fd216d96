use thiserror::Error;

use crate::tree::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unbalanced brackets at byte {pos}")]
    UnbalancedBrackets { pos: usize },
    #[error("node without a label at byte {pos}")]
    EmptyNode { pos: usize },
    #[error("node at byte {pos} mixes a word with children (or has several words)")]
    MixedNode { pos: usize },
    #[error("unexpected input after the tree at byte {pos}")]
    TrailingInput { pos: usize },
    #[error("no tree in input")]
    EmptyInput,

    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}` survives disambiguation")]
    DuplicateLabel(String),
    #[error("triangle vertices must be distinct")]
    DuplicateVertex,
    #[error("matrix is not square: {labels} labels, row {row} has {len} entries")]
    NonSquare { labels: usize, row: usize, len: usize },
    #[error("at least {needed} labels required, got {got}")]
    TooFewLabels { needed: usize, got: usize },

    #[error("nodes {a} and {b} sit at different heights ({ha} vs {hb})")]
    HeightMismatch { a: NodeId, b: NodeId, ha: u32, hb: u32 },
    #[error("node {0} has no branching ancestor")]
    NoBranchingAncestor(NodeId),
    #[error("governor policy is empty")]
    EmptyPolicy,
    #[error("bad arity spec: {0}")]
    BadAritySpec(String),
    #[error("leaf count must be at least 1")]
    NoLeaves,

    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("missing entry for ({0}, {1})")]
    MissingEntry(String, String),

    #[error("unknown category `{0}`")]
    UnknownCategory(String),
    #[error("feature table does not produce a symmetric matrix at ({0}, {1})")]
    AsymmetricFeatures(String, String),

    #[error("partial order contains a cycle through `{0}`")]
    CyclicOrder(String),
}
