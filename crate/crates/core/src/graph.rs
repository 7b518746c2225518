//! Reputation graphs: agents as nodes, feedback as directed, signed edges.
//!
//! A graph is immutable once built. Nodes are kept in lexicographic order and
//! every downstream computation addresses them by their index in that order,
//! so index order and identifier order always agree.

use std::borrow::Borrow;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Identifier of an agent. Non-empty, printable, no whitespace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        let valid = !name.is_empty()
            && !name.starts_with('#')
            && name.chars().all(|c| !c.is_whitespace() && !c.is_control());
        if valid {
            Ok(NodeId(name))
        } else {
            Err(Error::InvalidNodeId(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for NodeId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl FromStr for NodeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NodeId::new(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FeedbackKind {
    Positive,
    Negative,
}

impl FeedbackKind {
    pub fn sign(self) -> char {
        match self {
            FeedbackKind::Positive => '+',
            FeedbackKind::Negative => '-',
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for FeedbackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FeedbackKind::Positive => "positive",
            FeedbackKind::Negative => "negative",
        })
    }
}

/// Which feedback kinds a graph may carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    PositiveOnly,
    NegativeOnly,
    Combined,
}

impl Mode {
    pub fn admits(self, kind: FeedbackKind) -> bool {
        match self {
            Mode::PositiveOnly => kind == FeedbackKind::Positive,
            Mode::NegativeOnly => kind == FeedbackKind::Negative,
            Mode::Combined => true,
        }
    }

    /// The single feedback kind of a single-polarity mode.
    pub fn single_kind(self) -> Option<FeedbackKind> {
        match self {
            Mode::PositiveOnly => Some(FeedbackKind::Positive),
            Mode::NegativeOnly => Some(FeedbackKind::Negative),
            Mode::Combined => None,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Mode::PositiveOnly => "positive",
            Mode::NegativeOnly => "negative",
            Mode::Combined => "combined",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "positive" => Ok(Mode::PositiveOnly),
            "negative" => Ok(Mode::NegativeOnly),
            "combined" => Ok(Mode::Combined),
            other => Err(Error::Syntax(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: NodeId,
    pub target: NodeId,
    pub kind: FeedbackKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReputationGraph {
    mode: Mode,
    nodes: Vec<NodeId>,
    edges: BTreeSet<Edge>,
    // incoming[kind][target index] -> sorted source indices
    incoming: [Vec<Vec<usize>>; 2],
}

/// Incremental, validating construction of a [`ReputationGraph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    mode: Mode,
    nodes: BTreeSet<NodeId>,
    edges: BTreeSet<Edge>,
}

impl GraphBuilder {
    pub fn new(mode: Mode) -> Self {
        GraphBuilder {
            mode,
            nodes: BTreeSet::new(),
            edges: BTreeSet::new(),
        }
    }

    /// Declares a node. Declaring the same node twice is a no-op.
    pub fn add_node(&mut self, node: NodeId) -> &mut Self {
        self.nodes.insert(node);
        self
    }

    pub fn contains(&self, node: &str) -> bool {
        self.nodes.contains(node)
    }

    /// Adds an edge between two already declared nodes.
    pub fn add_edge(&mut self, source: NodeId, target: NodeId, kind: FeedbackKind) -> Result<()> {
        if source == target {
            return Err(Error::SelfLoop(source));
        }
        for endpoint in [&source, &target] {
            if !self.nodes.contains(endpoint) {
                return Err(Error::UnknownNode(endpoint.to_string()));
            }
        }
        if !self.mode.admits(kind) {
            return Err(Error::KindMismatch {
                mode: self.mode,
                kind,
            });
        }
        let edge = Edge {
            source,
            target,
            kind,
        };
        if self.edges.contains(&edge) {
            return Err(Error::DuplicateEdge {
                source_node: edge.source,
                target: edge.target,
                kind,
            });
        }
        self.edges.insert(edge);
        Ok(())
    }

    pub fn build(self) -> ReputationGraph {
        let nodes: Vec<NodeId> = self.nodes.into_iter().collect();
        let n = nodes.len();
        let mut incoming = [vec![Vec::new(); n], vec![Vec::new(); n]];
        let index = |id: &NodeId| nodes.binary_search(id).expect("endpoint declared");
        for edge in &self.edges {
            incoming[edge.kind.slot()][index(&edge.target)].push(index(&edge.source));
        }
        for lists in &mut incoming {
            for list in lists.iter_mut() {
                list.sort_unstable();
            }
        }
        ReputationGraph {
            mode: self.mode,
            nodes,
            edges: self.edges,
            incoming,
        }
    }
}

impl ReputationGraph {
    /// Builds a graph from `(source, kind, target)` triples, declaring
    /// endpoints as they appear.
    pub fn from_edges<'a, I>(mode: Mode, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, FeedbackKind, &'a str)>,
    {
        let mut builder = GraphBuilder::new(mode);
        for (source, kind, target) in edges {
            let source = NodeId::new(source)?;
            let target = NodeId::new(target)?;
            builder.add_node(source.clone()).add_node(target.clone());
            builder.add_edge(source, target, kind)?;
        }
        Ok(builder.build())
    }

    /// Positive-only graph from `(source, target)` pairs.
    pub fn positive(pairs: &[(&str, &str)]) -> Result<Self> {
        Self::from_edges(
            Mode::PositiveOnly,
            pairs.iter().map(|&(s, t)| (s, FeedbackKind::Positive, t)),
        )
    }

    /// Negative-only graph from `(source, target)` pairs.
    pub fn negative(pairs: &[(&str, &str)]) -> Result<Self> {
        Self::from_edges(
            Mode::NegativeOnly,
            pairs.iter().map(|&(s, t)| (s, FeedbackKind::Negative, t)),
        )
    }

    /// Graph with the given nodes and no edges.
    pub fn isolated(mode: Mode, names: &[&str]) -> Result<Self> {
        let mut builder = GraphBuilder::new(mode);
        for name in names {
            builder.add_node(NodeId::new(*name)?);
        }
        Ok(builder.build())
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn index_of(&self, node: &str) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.as_str().cmp(node)).ok()
    }

    pub(crate) fn require_index(&self, node: &str) -> Result<usize> {
        self.index_of(node)
            .ok_or_else(|| Error::UnknownNode(node.to_string()))
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, source: &str, target: &str, kind: FeedbackKind) -> bool {
        match (self.index_of(source), self.index_of(target)) {
            (Some(s), Some(t)) => self.incoming[kind.slot()][t].binary_search(&s).is_ok(),
            _ => false,
        }
    }

    /// Indices of the nodes with a `kind` edge into node `target`, ascending.
    pub fn supporters(&self, target: usize, kind: FeedbackKind) -> &[usize] {
        &self.incoming[kind.slot()][target]
    }

    /// `R(v)` for the given feedback kind.
    pub fn support_set(&self, node: &str, kind: FeedbackKind) -> Result<BTreeSet<NodeId>> {
        let target = self.require_index(node)?;
        Ok(self
            .supporters(target, kind)
            .iter()
            .map(|&s| self.nodes[s].clone())
            .collect())
    }

    /// Negative-feedback graph in which every agent accuses exactly the
    /// agents it did not support in `self`.
    pub fn complement(&self) -> Result<ReputationGraph> {
        if self.mode != Mode::PositiveOnly {
            return Err(Error::WrongMode {
                expected: Mode::PositiveOnly,
                found: self.mode,
            });
        }
        let n = self.nodes.len();
        let mut builder = GraphBuilder::new(Mode::NegativeOnly);
        for node in &self.nodes {
            builder.add_node(node.clone());
        }
        for target in 0..n {
            let supporters = self.supporters(target, FeedbackKind::Positive);
            for source in (0..n).filter(|&s| s != target) {
                if supporters.binary_search(&source).is_err() {
                    builder.add_edge(
                        self.nodes[source].clone(),
                        self.nodes[target].clone(),
                        FeedbackKind::Negative,
                    )?;
                }
            }
        }
        Ok(builder.build())
    }

    /// The same graph with every negative edge flipped to positive (or the
    /// reverse), under the corresponding single-polarity mode.
    pub fn with_mode(&self, mode: Mode) -> Result<ReputationGraph> {
        let mut builder = GraphBuilder::new(mode);
        for node in &self.nodes {
            builder.add_node(node.clone());
        }
        for edge in &self.edges {
            let kind = mode.single_kind().unwrap_or(edge.kind);
            builder.add_edge(edge.source.clone(), edge.target.clone(), kind)?;
        }
        Ok(builder.build())
    }

    /// True iff every node reaches every other node along edge direction.
    /// Feedback kind is ignored.
    pub fn is_strongly_connected(&self) -> Result<bool> {
        let n = self.nodes.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut forward = vec![Vec::new(); n];
        let mut backward = vec![Vec::new(); n];
        for lists in &self.incoming {
            for (target, sources) in lists.iter().enumerate() {
                for &source in sources {
                    forward[source].push(target);
                    backward[target].push(source);
                }
            }
        }
        Ok(reaches_all(&forward) && reaches_all(&backward))
    }

    /// Renders the graph in edge-list format: header, isolated nodes, then
    /// edges, all in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("mode {}\n", self.mode);
        for (i, node) in self.nodes.iter().enumerate() {
            let touched = self.edges.iter().any(|e| &e.source == node || &e.target == node);
            if !touched {
                out.push_str(&format!("node {}\n", self.nodes[i]));
            }
        }
        for edge in &self.edges {
            out.push_str(&format!(
                "{} {} {}\n",
                edge.source,
                edge.kind.sign(),
                edge.target
            ));
        }
        out
    }
}

fn reaches_all(adjacency: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adjacency.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &w in &adjacency[u] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

impl fmt::Display for ReputationGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

/// Parses an edge-list document.
///
/// ```text
/// mode positive
/// # comment
/// a + b
/// node lonely
/// ```
pub fn parse_graph(text: &str) -> Result<ReputationGraph> {
    let mut builder: Option<GraphBuilder> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = raw
            .split_whitespace()
            .take_while(|t| !t.starts_with('#'))
            .collect();
        if tokens.is_empty() {
            continue;
        }
        let Some(builder) = builder.as_mut() else {
            match tokens.as_slice() {
                ["mode", mode] => {
                    builder = Some(GraphBuilder::new(mode.parse().map_err(|e: Error| e.at_line(line))?));
                    continue;
                }
                _ => return Err(Error::MissingMode.at_line(line)),
            }
        };
        parse_line(builder, &tokens).map_err(|e| e.at_line(line))?;
    }
    builder.map(GraphBuilder::build).ok_or(Error::MissingMode)
}

fn parse_line(builder: &mut GraphBuilder, tokens: &[&str]) -> Result<()> {
    match tokens {
        ["mode", _] => Err(Error::Syntax("repeated mode header".into())),
        ["node", name] => {
            builder.add_node(NodeId::new(*name)?);
            Ok(())
        }
        [source, sign, target] => {
            let kind = match *sign {
                "+" => FeedbackKind::Positive,
                "-" => FeedbackKind::Negative,
                other => return Err(Error::Syntax(format!("expected `+` or `-`, found `{other}`"))),
            };
            let source = NodeId::new(*source)?;
            let target = NodeId::new(*target)?;
            builder.add_node(source.clone()).add_node(target.clone());
            builder.add_edge(source, target, kind)
        }
        _ => Err(Error::Syntax(format!(
            "expected `SOURCE +|- TARGET` or `node NAME`, found `{}`",
            tokens.join(" ")
        ))),
    }
}

impl FromStr for ReputationGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(names: &[&str]) -> BTreeSet<NodeId> {
        names.iter().map(|n| NodeId::new(*n).unwrap()).collect()
    }

    fn cycle_with_tail() -> ReputationGraph {
        ReputationGraph::positive(&[("a", "b"), ("b", "c"), ("c", "a"), ("d", "a")]).unwrap()
    }

    #[test]
    fn parses_positive_path() {
        let g = parse_graph("mode positive\na + b\nb + c").unwrap();
        assert_eq!(g.mode(), Mode::PositiveOnly);
        assert_eq!(g.nodes(), ids(&["a", "b", "c"]).into_iter().collect::<Vec<_>>());
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge("a", "b", FeedbackKind::Positive));
        assert!(g.has_edge("b", "c", FeedbackKind::Positive));
    }

    #[test]
    fn rejects_self_loop() {
        let err = parse_graph("mode positive\na + a").unwrap_err();
        assert_eq!(err, Error::SelfLoop(NodeId::new("a").unwrap()).at_line(2));
    }

    #[test]
    fn rejects_kind_outside_mode() {
        let err = parse_graph("mode negative\na + b").unwrap_err();
        assert!(matches!(
            err,
            Error::AtLine { line: 2, ref source } if matches!(**source, Error::KindMismatch { .. })
        ));
    }

    #[test]
    fn rejects_duplicate_edges_and_garbage() {
        let err = parse_graph("mode positive\na + b\n\na + b").unwrap_err();
        assert!(matches!(err, Error::AtLine { line: 4, .. }));
        let err = parse_graph("mode positive\na * b").unwrap_err();
        assert!(matches!(err, Error::AtLine { line: 2, .. }));
        assert!(matches!(parse_graph("a + b"), Err(Error::AtLine { line: 1, .. })));
        assert_eq!(parse_graph("# nothing\n"), Err(Error::MissingMode));
        assert!(parse_graph("mode sideways").is_err());
    }

    #[test]
    fn comments_blank_lines_and_isolated_nodes() {
        let g = parse_graph("# header\n\nmode combined # trailing\nnode z\na + b # ok\nb - a\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge("b", "a", FeedbackKind::Negative));
    }

    #[test]
    fn builder_requires_declared_endpoints() {
        let mut b = GraphBuilder::new(Mode::PositiveOnly);
        b.add_node(NodeId::new("a").unwrap());
        let err = b
            .add_edge(NodeId::new("a").unwrap(), NodeId::new("b").unwrap(), FeedbackKind::Positive)
            .unwrap_err();
        assert_eq!(err, Error::UnknownNode("b".into()));
    }

    #[test]
    fn support_sets() {
        let path = ReputationGraph::positive(&[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(path.support_set("b", FeedbackKind::Positive).unwrap(), ids(&["a"]));
        assert!(path.support_set("a", FeedbackKind::Positive).unwrap().is_empty());
        assert_eq!(cycle_with_tail().support_set("a", FeedbackKind::Positive).unwrap(), ids(&["c", "d"]));
        assert!(matches!(
            path.support_set("q", FeedbackKind::Positive),
            Err(Error::UnknownNode(_))
        ));
    }

    #[test]
    fn complement_of_two_nodes() {
        let g = ReputationGraph::positive(&[("a", "b")]).unwrap();
        let c = g.complement().unwrap();
        assert_eq!(c.mode(), Mode::NegativeOnly);
        assert_eq!(c.edge_count(), 1);
        assert!(c.has_edge("b", "a", FeedbackKind::Negative));
    }

    #[test]
    fn complement_of_cycle_graph() {
        let g = ReputationGraph::positive(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "b")]).unwrap();
        // all 12 ordered pairs minus the 4 original edges
        let mut expected = Vec::new();
        for s in ["a", "b", "c", "d"] {
            for t in ["a", "b", "c", "d"] {
                if s != t && !g.has_edge(s, t, FeedbackKind::Positive) {
                    expected.push((s, t));
                }
            }
        }
        assert_eq!(
            expected,
            vec![("a", "c"), ("a", "d"), ("b", "a"), ("b", "d"), ("c", "a"), ("c", "b"), ("d", "a"), ("d", "c")]
        );
        assert_eq!(g.complement().unwrap(), ReputationGraph::negative(&expected).unwrap());
    }

    #[test]
    fn complement_of_empty_and_wrong_mode() {
        let g = ReputationGraph::isolated(Mode::PositiveOnly, &["a", "b", "c"]).unwrap();
        assert_eq!(g.complement().unwrap().edge_count(), 6);
        let neg = ReputationGraph::negative(&[("a", "b")]).unwrap();
        assert!(matches!(neg.complement(), Err(Error::WrongMode { .. })));
    }

    #[test]
    fn strong_connectivity() {
        let t3 = ReputationGraph::negative(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")]).unwrap();
        assert!(t3.is_strongly_connected().unwrap());
        assert!(!cycle_with_tail().is_strongly_connected().unwrap());
        let single = ReputationGraph::isolated(Mode::PositiveOnly, &["a"]).unwrap();
        assert!(single.is_strongly_connected().unwrap());
        let empty = ReputationGraph::isolated(Mode::PositiveOnly, &[]).unwrap();
        assert_eq!(empty.is_strongly_connected(), Err(Error::EmptyGraph));
    }

    #[test]
    fn serializes_in_lexicographic_order() {
        let g = parse_graph("mode combined\nnode q\nc - a\nb + a\na + c\n").unwrap();
        assert_eq!(g.to_edge_list(), "mode combined\nnode q\na + c\nb + a\nc - a\n");
    }

    #[test]
    fn node_ids_are_validated() {
        assert!(NodeId::new("").is_err());
        assert!(NodeId::new("a b").is_err());
        assert!(NodeId::new("#a").is_err());
        assert!(NodeId::new("agent-7").is_ok());
    }
}
