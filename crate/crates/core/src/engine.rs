//! Ranking by iterative refinement.
//!
//! Start from a coarse ranking (in-degree, or all tied), then repeatedly pick a
//! node whose support strictly dominates some levelmate's while nothing in its
//! level dominates it, and split that level in two: the chosen node with its
//! equally supported levelmates on one side, everyone else on the other. Every
//! split only turns a tie into a strict preference, so at most `|V| - 1` splits
//! happen and the final ranking separates every dominated pair.
//!
//! Positive feedback lifts the chosen group; negative feedback pushes it down,
//! since reliable accusers make a node less reliable. Combined feedback lifts
//! by the "socially stronger" relation.

use crate::dominance::{mode_dominates, mode_equal, SupportProfile};
use crate::error::{Error, Result};
use crate::graph::{FeedbackKind, Mode, NodeId, ReputationGraph};
use crate::preorder::{dense_ranks, Ranking};

/// One level split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementStep {
    /// 1-based iteration index.
    pub iteration: usize,
    pub chosen: NodeId,
    /// Levelmate whose support the chosen node's support dominated.
    pub witness: NodeId,
    /// Former levelmates now on the upper of the two new levels.
    pub above: Vec<NodeId>,
    /// Former levelmates now on the lower of the two new levels.
    pub below: Vec<NodeId>,
    /// Ranking after the split.
    pub ranking: Ranking,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementTrace {
    pub initial: Ranking,
    pub steps: Vec<RefinementStep>,
}

impl RefinementTrace {
    /// Snapshots in order, starting with the initial ranking.
    pub fn rankings(&self) -> impl Iterator<Item = &Ranking> + '_ {
        std::iter::once(&self.initial).chain(self.steps.iter().map(|s| &s.ranking))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SplitDirection {
    /// The chosen group takes the upper level.
    Lift,
    /// The chosen group takes the lower level.
    Sink,
}

fn require_mode(g: &ReputationGraph, expected: Mode) -> Result<()> {
    if g.mode() == expected {
        Ok(())
    } else {
        Err(Error::WrongMode {
            expected,
            found: g.mode(),
        })
    }
}

fn in_degrees(g: &ReputationGraph, kind: FeedbackKind) -> Vec<i64> {
    (0..g.node_count())
        .map(|v| g.supporters(v, kind).len() as i64)
        .collect()
}

/// Ranks a positive-feedback graph. Initial order is by number of supporters,
/// more supporters first.
pub fn rank_positive(g: &ReputationGraph) -> Result<(Ranking, RefinementTrace)> {
    require_mode(g, Mode::PositiveOnly)?;
    let initial: Vec<i64> = in_degrees(g, FeedbackKind::Positive).into_iter().map(|d| -d).collect();
    Ok(refine(g, dense_ranks(&initial), SplitDirection::Lift))
}

/// Ranks a negative-feedback graph. Initial order is by number of accusers,
/// fewer accusers first.
pub fn rank_negative(g: &ReputationGraph) -> Result<(Ranking, RefinementTrace)> {
    require_mode(g, Mode::NegativeOnly)?;
    let initial = in_degrees(g, FeedbackKind::Negative);
    Ok(refine(g, dense_ranks(&initial), SplitDirection::Sink))
}

/// Ranks a graph carrying both feedback kinds, starting from a single level.
pub fn rank_combined(g: &ReputationGraph) -> Result<(Ranking, RefinementTrace)> {
    require_mode(g, Mode::Combined)?;
    Ok(refine(g, vec![1; g.node_count()], SplitDirection::Lift))
}

/// Dispatches on the graph's mode.
pub fn rank(g: &ReputationGraph) -> (Ranking, RefinementTrace) {
    let result = match g.mode() {
        Mode::PositiveOnly => rank_positive(g),
        Mode::NegativeOnly => rank_negative(g),
        Mode::Combined => rank_combined(g),
    };
    result.expect("mode matches by construction")
}

/// First eligible `(chosen, witness)` pair in identifier order.
fn select(mode: Mode, profile: &SupportProfile, ranks: &[u32]) -> Option<(usize, usize)> {
    let n = ranks.len();
    let levelmates = |i: usize| (0..n).filter(move |&l| l != i && ranks[l] == ranks[i]);
    (0..n).find_map(|i| {
        let witness = levelmates(i).find(|&j| mode_dominates(mode, profile, i, j))?;
        let dominated = levelmates(i).any(|s| mode_dominates(mode, profile, s, i));
        (!dominated).then_some((i, witness))
    })
}

fn refine(g: &ReputationGraph, mut ranks: Vec<u32>, direction: SplitDirection) -> (Ranking, RefinementTrace) {
    let mode = g.mode();
    let nodes = g.nodes();
    let initial = Ranking::from_dense(nodes.to_vec(), ranks.clone());
    let mut profile = SupportProfile::new(g, &ranks);
    let mut steps = Vec::new();

    while let Some((chosen, witness)) = select(mode, &profile, &ranks) {
        let level = ranks[chosen];
        let (group, others): (Vec<usize>, Vec<usize>) = (0..ranks.len())
            .filter(|&l| ranks[l] == level)
            .partition(|&l| mode_equal(mode, &profile, chosen, l));
        let (above, below) = match direction {
            SplitDirection::Lift => (group, others),
            SplitDirection::Sink => (others, group),
        };
        for r in ranks.iter_mut().filter(|r| **r > level) {
            *r += 1;
        }
        for &l in &below {
            ranks[l] = level + 1;
        }
        profile.update(g, &ranks);
        let names = |ix: &[usize]| ix.iter().map(|&i| nodes[i].clone()).collect();
        steps.push(RefinementStep {
            iteration: steps.len() + 1,
            chosen: nodes[chosen].clone(),
            witness: nodes[witness].clone(),
            above: names(&above),
            below: names(&below),
            ranking: Ranking::from_dense(nodes.to_vec(), ranks.clone()),
        });
    }

    let ranking = Ranking::from_dense(nodes.to_vec(), ranks);
    (ranking, RefinementTrace { initial, steps })
}
