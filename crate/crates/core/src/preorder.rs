//! Social rankings as total preorders, and exhaustive enumeration of them.
//!
//! A [`Ranking`] stores dense rank numbers: level 1 is the most preferred and
//! the used levels are exactly `1..=k`. Enumeration walks ordered set
//! partitions block by block, choosing each block as a submask of the nodes
//! still unplaced, in increasing mask order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::NodeId;

/// Largest node count the enumeration will ever accept.
pub const MAX_CAP: usize = 16;
/// Default enumeration cap (545,835 preorders).
pub const DEFAULT_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RankingComparison {
    Higher,
    Equal,
    Lower,
}

impl RankingComparison {
    pub fn reverse(self) -> Self {
        match self {
            RankingComparison::Higher => RankingComparison::Lower,
            RankingComparison::Equal => RankingComparison::Equal,
            RankingComparison::Lower => RankingComparison::Higher,
        }
    }
}

/// A total preorder over a node set, as dense ranks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ranking {
    nodes: Vec<NodeId>,
    ranks: Vec<u32>,
}

impl Ranking {
    /// Builds a ranking from `(node, rank)` pairs; ranks must already be dense.
    pub fn new(entries: impl IntoIterator<Item = (NodeId, u32)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (node, rank) in entries {
            if rank == 0 {
                return Err(Error::InvalidRank(0));
            }
            if map.insert(node.clone(), rank).is_some() {
                return Err(Error::DuplicateNode(node));
            }
        }
        let (nodes, ranks) = map.into_iter().unzip();
        Self::from_ranks(nodes, ranks)
    }

    /// `nodes` must be strictly increasing and aligned with `ranks`.
    pub fn from_ranks(nodes: Vec<NodeId>, ranks: Vec<u32>) -> Result<Self> {
        assert_eq!(nodes.len(), ranks.len(), "nodes and ranks must align");
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        if !is_dense(&ranks) {
            return Err(Error::NotDense {
                levels: ranks.iter().copied().max().unwrap_or(0),
            });
        }
        Ok(Ranking { nodes, ranks })
    }

    pub(crate) fn from_dense(nodes: Vec<NodeId>, ranks: Vec<u32>) -> Self {
        debug_assert!(is_dense(&ranks));
        Ranking { nodes, ranks }
    }

    /// Every node on level 1.
    pub fn uniform(nodes: &[NodeId]) -> Self {
        Ranking {
            nodes: nodes.to_vec(),
            ranks: vec![1; nodes.len()],
        }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    /// Ranks aligned with [`Ranking::nodes`].
    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn rank(&self, node: &str) -> Option<u32> {
        self.index_of(node).map(|i| self.ranks[i])
    }

    /// Number of distinct levels.
    pub fn levels(&self) -> u32 {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NodeId, u32)> + '_ {
        self.nodes.iter().zip(self.ranks.iter().copied())
    }

    fn index_of(&self, node: &str) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.as_str().cmp(node)).ok()
    }

    fn require(&self, node: &str) -> Result<u32> {
        self.rank(node).ok_or_else(|| Error::UnknownNode(node.to_string()))
    }

    pub fn compare(&self, u: &str, v: &str) -> Result<RankingComparison> {
        let (ru, rv) = (self.require(u)?, self.require(v)?);
        Ok(compare_ranks(ru, rv))
    }

    /// True iff every strict relation of `earlier` still holds here.
    pub fn is_refinement_of(&self, earlier: &Ranking) -> Result<bool> {
        if self.nodes != earlier.nodes {
            return Err(Error::NodeSetMismatch);
        }
        Ok(refines(&self.ranks, &earlier.ranks))
    }

    /// Renders `NAME RANK` lines in lexicographic node order.
    pub fn to_ranking_file(&self) -> String {
        self.iter().map(|(n, r)| format!("{n} {r}\n")).collect()
    }

    /// Nodes in order of preference, grouped by level.
    pub fn level_groups(&self) -> Vec<Vec<&NodeId>> {
        let mut groups = vec![Vec::new(); self.levels() as usize];
        for (node, rank) in self.iter() {
            groups[rank as usize - 1].push(node);
        }
        groups
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let groups = self.level_groups();
        for (i, group) in groups.iter().enumerate() {
            if i > 0 {
                f.write_str(" > ")?;
            }
            let names: Vec<&str> = group.iter().map(|n| n.as_str()).collect();
            f.write_str(&names.join(" = "))?;
        }
        Ok(())
    }
}

pub(crate) fn compare_ranks(ru: u32, rv: u32) -> RankingComparison {
    match ru.cmp(&rv) {
        std::cmp::Ordering::Less => RankingComparison::Higher,
        std::cmp::Ordering::Equal => RankingComparison::Equal,
        std::cmp::Ordering::Greater => RankingComparison::Lower,
    }
}

pub(crate) fn refines(later: &[u32], earlier: &[u32]) -> bool {
    let n = earlier.len();
    (0..n).all(|u| (0..n).all(|v| earlier[u] >= earlier[v] || later[u] < later[v]))
}

fn is_dense(ranks: &[u32]) -> bool {
    let used: BTreeSet<u32> = ranks.iter().copied().collect();
    used.iter().copied().eq(1..=used.len() as u32)
}

/// Order-preserving relabeling of arbitrary integers onto `1..=k`.
pub fn dense_ranks(raw: &[i64]) -> Vec<u32> {
    let distinct: BTreeSet<i64> = raw.iter().copied().collect();
    let position: BTreeMap<i64, u32> = distinct.into_iter().zip(1..).collect();
    raw.iter().map(|r| position[r]).collect()
}

pub fn normalize(raw: &BTreeMap<NodeId, i64>) -> Ranking {
    let values: Vec<i64> = raw.values().copied().collect();
    Ranking::from_dense(raw.keys().cloned().collect(), dense_ranks(&values))
}

/// Parses `NAME RANK` lines. Blank lines and `#` comments are ignored; the
/// ranks must be dense positive integers.
pub fn parse_ranking(text: &str) -> Result<Ranking> {
    let mut entries = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = raw
            .split_whitespace()
            .take_while(|t| !t.starts_with('#'))
            .collect();
        match tokens.as_slice() {
            [] => continue,
            [name, rank] => {
                let node = NodeId::new(*name).map_err(|e| e.at_line(line))?;
                let rank: i64 = rank
                    .parse()
                    .map_err(|_| Error::Syntax(format!("rank `{rank}` is not an integer")).at_line(line))?;
                if rank < 1 || rank > u32::MAX as i64 {
                    return Err(Error::InvalidRank(rank).at_line(line));
                }
                if !seen.insert(node.clone()) {
                    return Err(Error::DuplicateNode(node).at_line(line));
                }
                entries.push((node, rank as u32));
            }
            _ => {
                return Err(Error::Syntax(format!("expected `NAME RANK`, found `{}`", tokens.join(" "))).at_line(line))
            }
        }
    }
    Ranking::new(entries)
}

/// Number of total preorders on `n` elements (ordered Bell / Fubini number),
/// as `sum_k k! * S(n, k)`.
pub fn preorder_count(n: usize) -> u64 {
    // stirling[k] = S(m, k) for the current m
    let mut stirling = vec![0u64; n + 1];
    stirling[0] = 1;
    for m in 1..=n {
        for k in (1..=m).rev() {
            stirling[k] = k as u64 * stirling[k] + stirling[k - 1];
        }
        stirling[0] = 0;
    }
    let mut factorial = 1u64;
    let mut total = if n == 0 { 1 } else { 0 };
    for (k, s) in stirling.iter().enumerate().skip(1) {
        factorial *= k as u64;
        total += factorial * s;
    }
    total
}

/// Streams every total preorder on `n` indexed nodes as a dense rank vector.
#[derive(Debug, Clone)]
pub struct RankVectors {
    full: u32,
    n: usize,
    blocks: Vec<u32>,
    fixed: usize,
    started: bool,
    done: bool,
}

impl RankVectors {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_CAP, "at most {MAX_CAP} nodes");
        RankVectors {
            full: full_mask(n),
            n,
            blocks: Vec::with_capacity(n),
            fixed: 0,
            started: false,
            done: false,
        }
    }

    /// The sub-range of preorders whose top level is exactly `first_block`.
    pub fn with_first_block(n: usize, first_block: u32) -> Self {
        let mut it = Self::new(n);
        assert!(first_block != 0 && first_block & !it.full == 0, "first block must be a nonempty subset");
        it.blocks.push(first_block);
        it.fixed = 1;
        it
    }

    fn used(&self) -> u32 {
        self.blocks.iter().fold(0, |acc, b| acc | b)
    }

    fn fill(&mut self) {
        let mut used = self.used();
        while used != self.full {
            let avail = self.full & !used;
            let lowest = avail & avail.wrapping_neg();
            self.blocks.push(lowest);
            used |= lowest;
        }
    }

    fn advance(&mut self) -> bool {
        while self.blocks.len() > self.fixed {
            let last = self.blocks.pop().expect("non-empty");
            let avail = self.full & !self.used();
            let next = (last | !avail).wrapping_add(1) & avail;
            if next != 0 {
                self.blocks.push(next);
                self.fill();
                return true;
            }
        }
        false
    }

    fn current(&self) -> Vec<u32> {
        let mut ranks = vec![0; self.n];
        for (level, &block) in self.blocks.iter().enumerate() {
            let mut bits = block;
            while bits != 0 {
                ranks[bits.trailing_zeros() as usize] = level as u32 + 1;
                bits &= bits - 1;
            }
        }
        ranks
    }
}

impl Iterator for RankVectors {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        if self.started {
            if !self.advance() {
                self.done = true;
                return None;
            }
        } else {
            self.started = true;
            self.fill();
        }
        Some(self.current())
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        u32::MAX >> (32 - n)
    }
}

/// The enumeration partitioned by top level: each entry is a first-block mask
/// together with the number of preorders enumerated before its sub-range.
pub fn first_block_ranges(n: usize) -> Vec<(u32, u64)> {
    let mut offset = 0;
    (1..=full_mask(n))
        .map(|mask| {
            let start = offset;
            offset += preorder_count(n - mask.count_ones() as usize);
            (mask, start)
        })
        .collect()
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(MAX_CAP);
    if n > cap {
        Err(Error::CapExceeded { nodes: n, cap })
    } else {
        Ok(())
    }
}

/// Every total preorder over `nodes` exactly once, in deterministic order.
pub fn enumerate_preorders(nodes: &[NodeId], cap: usize) -> Result<impl Iterator<Item = Ranking> + '_> {
    check_cap(nodes.len(), cap)?;
    let mut sorted = nodes.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != nodes.len() {
        return Err(Error::NodeSetMismatch);
    }
    Ok(RankVectors::new(sorted.len()).map(move |ranks| Ranking::from_dense(sorted.clone(), ranks)))
}
