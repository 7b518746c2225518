//! Comparing support sets under a ranking.
//!
//! `A` is at least as strong as `B` when some injection `f: B -> A` maps every
//! member of `B` to a member of `A` ranked at least as high. Sorting both sets
//! by rank (best first) reduces this to a pointwise test: `|A| >= |B|` and the
//! i-th best of `A` is at least as high as the i-th best of `B`. Two sets are
//! equally strong when their rank multisets coincide, and one is strictly
//! stronger (more important, or more reliable under negative feedback) when it
//! is at least as strong but not equally strong.
//!
//! The same combinatorics serves both polarities; only the reading differs.
//! Under negative feedback a more reliable accuser set makes its target worse.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{FeedbackKind, Mode, NodeId, ReputationGraph};
use crate::preorder::Ranking;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DominanceVerdict {
    StrictlyDominates,
    EquallyStrong,
    Incomparable,
    StrictlyDominated,
}

impl DominanceVerdict {
    pub fn reverse(self) -> Self {
        match self {
            DominanceVerdict::StrictlyDominates => DominanceVerdict::StrictlyDominated,
            DominanceVerdict::StrictlyDominated => DominanceVerdict::StrictlyDominates,
            other => other,
        }
    }
}

/// Greedy injection test on rank lists sorted best first.
pub(crate) fn covers(stronger: &[u32], weaker: &[u32]) -> bool {
    stronger.len() >= weaker.len() && stronger.iter().zip(weaker).all(|(s, w)| s <= w)
}

pub(crate) fn outranks(stronger: &[u32], weaker: &[u32]) -> bool {
    covers(stronger, weaker) && stronger != weaker
}

pub(crate) fn verdict_sorted(a: &[u32], b: &[u32]) -> DominanceVerdict {
    if a == b {
        DominanceVerdict::EquallyStrong
    } else if covers(a, b) {
        DominanceVerdict::StrictlyDominates
    } else if covers(b, a) {
        DominanceVerdict::StrictlyDominated
    } else {
        DominanceVerdict::Incomparable
    }
}

fn ranks_of(r: &Ranking, set: &BTreeSet<NodeId>) -> Result<Vec<u32>> {
    let mut out = set
        .iter()
        .map(|n| r.rank(n.as_str()).ok_or_else(|| Error::UnknownNode(n.to_string())))
        .collect::<Result<Vec<u32>>>()?;
    out.sort_unstable();
    Ok(out)
}

/// Whether an injection `b -> a` exists mapping each element to one ranked at
/// least as high.
pub fn at_least_as_strong(r: &Ranking, a: &BTreeSet<NodeId>, b: &BTreeSet<NodeId>) -> Result<bool> {
    Ok(covers(&ranks_of(r, a)?, &ranks_of(r, b)?))
}

pub fn more_important(r: &Ranking, a: &BTreeSet<NodeId>, b: &BTreeSet<NodeId>) -> Result<bool> {
    Ok(outranks(&ranks_of(r, a)?, &ranks_of(r, b)?))
}

pub fn equally_strong(r: &Ranking, a: &BTreeSet<NodeId>, b: &BTreeSet<NodeId>) -> Result<bool> {
    Ok(ranks_of(r, a)? == ranks_of(r, b)?)
}

pub fn compare_support(r: &Ranking, a: &BTreeSet<NodeId>, b: &BTreeSet<NodeId>) -> Result<DominanceVerdict> {
    Ok(verdict_sorted(&ranks_of(r, a)?, &ranks_of(r, b)?))
}

/// Whether `u`'s feedback is socially stronger than `v`'s: accusers no more
/// reliable, supporters no less important, and one of the two strictly.
pub fn socially_stronger(r: &Ranking, g: &ReputationGraph, u: &str, v: &str) -> Result<bool> {
    if r.nodes() != g.nodes() {
        return Err(Error::NodeSetMismatch);
    }
    let (u, v) = (g.require_index(u)?, g.require_index(v)?);
    Ok(SupportProfile::new(g, r.ranks()).socially_stronger(u, v))
}

/// Sorted supporter ranks of every node under one ranking, for both feedback
/// kinds. Rebuilt in place as the ranking changes.
#[derive(Debug, Clone, Default)]
pub(crate) struct SupportProfile {
    good: Vec<Vec<u32>>,
    bad: Vec<Vec<u32>>,
}

impl SupportProfile {
    pub(crate) fn new(g: &ReputationGraph, ranks: &[u32]) -> Self {
        let mut profile = SupportProfile::default();
        profile.update(g, ranks);
        profile
    }

    pub(crate) fn update(&mut self, g: &ReputationGraph, ranks: &[u32]) {
        let n = g.node_count();
        for (lists, kind) in [(&mut self.good, FeedbackKind::Positive), (&mut self.bad, FeedbackKind::Negative)] {
            lists.resize_with(n, Vec::new);
            for (v, list) in lists.iter_mut().enumerate() {
                list.clear();
                list.extend(g.supporters(v, kind).iter().map(|&s| ranks[s]));
                list.sort_unstable();
            }
        }
    }

    pub(crate) fn of(&self, kind: FeedbackKind, v: usize) -> &[u32] {
        match kind {
            FeedbackKind::Positive => &self.good[v],
            FeedbackKind::Negative => &self.bad[v],
        }
    }

    /// `R_kind(u)` is strictly stronger than `R_kind(v)`.
    pub(crate) fn outranks(&self, kind: FeedbackKind, u: usize, v: usize) -> bool {
        outranks(self.of(kind, u), self.of(kind, v))
    }

    pub(crate) fn equal(&self, kind: FeedbackKind, u: usize, v: usize) -> bool {
        self.of(kind, u) == self.of(kind, v)
    }

    pub(crate) fn socially_stronger(&self, u: usize, v: usize) -> bool {
        let bad_strict = outranks(&self.bad[v], &self.bad[u]);
        let good_strict = outranks(&self.good[u], &self.good[v]);
        let bad_ok = bad_strict || self.bad[u] == self.bad[v];
        let good_ok = good_strict || self.good[u] == self.good[v];
        bad_ok && good_ok && (bad_strict || good_strict)
    }

    /// Both support sets of `u` and `v` are equally strong.
    pub(crate) fn socially_equal(&self, u: usize, v: usize) -> bool {
        self.good[u] == self.good[v] && self.bad[u] == self.bad[v]
    }
}

/// The strict "stronger support" relation a graph mode ranks by: more
/// important supporters, more reliable accusers, or socially stronger feedback.
pub(crate) fn mode_dominates(mode: Mode, profile: &SupportProfile, u: usize, v: usize) -> bool {
    match mode {
        Mode::PositiveOnly => profile.outranks(FeedbackKind::Positive, u, v),
        Mode::NegativeOnly => profile.outranks(FeedbackKind::Negative, u, v),
        Mode::Combined => profile.socially_stronger(u, v),
    }
}

pub(crate) fn mode_equal(mode: Mode, profile: &SupportProfile, u: usize, v: usize) -> bool {
    match mode {
        Mode::PositiveOnly => profile.equal(FeedbackKind::Positive, u, v),
        Mode::NegativeOnly => profile.equal(FeedbackKind::Negative, u, v),
        Mode::Combined => profile.socially_equal(u, v),
    }
}
