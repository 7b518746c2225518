use thiserror::Error;

use crate::axioms::Axiom;
use crate::graph::{FeedbackKind, Mode, NodeId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("missing `mode positive|negative|combined` header")]
    MissingMode,
    #[error("self-loop on node `{0}`")]
    SelfLoop(NodeId),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("invalid node identifier {0:?}")]
    InvalidNodeId(String),
    #[error("node `{0}` listed more than once")]
    DuplicateNode(NodeId),
    #[error("duplicate {kind} edge {source_node} -> {target}")]
    DuplicateEdge {
        source_node: NodeId,
        target: NodeId,
        kind: FeedbackKind,
    },
    #[error("{kind} edge not allowed in {mode} graph")]
    KindMismatch { mode: Mode, kind: FeedbackKind },
    #[error("operation requires a {expected} graph, found {found}")]
    WrongMode { expected: Mode, found: Mode },
    #[error("axiom {axiom} does not apply to a {mode} graph")]
    AxiomModeMismatch { axiom: Axiom, mode: Mode },
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("ranks are not dense: expected every level 1..={levels} to be used")]
    NotDense { levels: u32 },
    #[error("rank must be a positive integer, got {0}")]
    InvalidRank(i64),
    #[error("ranking and graph cover different node sets")]
    NodeSetMismatch,
    #[error("{nodes} nodes exceeds the enumeration cap of {cap}")]
    CapExceeded { nodes: usize, cap: usize },
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Error {
        Error::AtLine {
            line,
            source: Box::new(self),
        }
    }
}
