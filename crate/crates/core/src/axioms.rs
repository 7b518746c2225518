//! Postulates a (graph, ranking) pair can satisfy or violate.
//!
//! Each axiom is a condition over ordered node pairs. [`check`] reports the
//! first violating pair in identifier order; [`violations`] lists them all.
//! Generality is a property of a ranking rule over whole graph families and is
//! covered by the oracle and the engine test suites, not here.

use std::fmt;
use std::str::FromStr;

use crate::dominance::SupportProfile;
use crate::error::{Error, Result};
use crate::graph::{FeedbackKind, Mode, NodeId, ReputationGraph};
use crate::preorder::Ranking;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// Transitivity: more important support forces a strictly higher rank.
    T,
    /// Weak monotonicity: an unforced strict preference needs a supporter of
    /// the higher node ranked above a supporter of the lower one.
    M,
    /// Transitivity under negative feedback: more reliable accusers force a
    /// strictly lower rank.
    BT,
    /// Weak monotonicity under negative feedback.
    BM,
    /// Transitivity over socially stronger combined feedback.
    Tc,
    /// Weak monotonicity over combined feedback.
    Mc,
    /// Very weak monotonicity: `M`, restricted to pairs whose support sizes
    /// differ by at most one in the higher node's favour.
    VWM,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [Axiom::T, Axiom::M, Axiom::BT, Axiom::BM, Axiom::Tc, Axiom::Mc, Axiom::VWM];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::T => "T",
            Axiom::M => "M",
            Axiom::BT => "BT",
            Axiom::BM => "BM",
            Axiom::Tc => "Tc",
            Axiom::Mc => "Mc",
            Axiom::VWM => "VWM",
        }
    }

    /// The graph mode this axiom is stated for.
    pub fn mode(self) -> Mode {
        match self {
            Axiom::T | Axiom::M | Axiom::VWM => Mode::PositiveOnly,
            Axiom::BT | Axiom::BM => Mode::NegativeOnly,
            Axiom::Tc | Axiom::Mc => Mode::Combined,
        }
    }

    pub(crate) fn require_mode(self, mode: Mode) -> Result<()> {
        if self.mode() == mode {
            Ok(())
        } else {
            Err(Error::AxiomModeMismatch { axiom: self, mode })
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Syntax(format!("unknown axiom `{s}`")))
    }
}

/// Parses a comma-separated axiom list such as `T,M`.
pub fn parse_axioms(list: &str) -> Result<Vec<Axiom>> {
    let mut out = Vec::new();
    for item in list.split(',').filter(|s| !s.trim().is_empty()) {
        let axiom: Axiom = item.parse()?;
        if !out.contains(&axiom) {
            out.push(axiom);
        }
    }
    Ok(out)
}

/// The axioms stated for a graph mode, in report order.
pub fn axioms_for(mode: Mode) -> &'static [Axiom] {
    match mode {
        Mode::PositiveOnly => &[Axiom::T, Axiom::M, Axiom::VWM],
        Mode::NegativeOnly => &[Axiom::BT, Axiom::BM],
        Mode::Combined => &[Axiom::Tc, Axiom::Mc],
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub first: NodeId,
    pub second: NodeId,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{} pass", self.axiom),
            Some(w) => write!(f, "{} fail witness: ({},{}) {}", self.axiom, w.first, w.second, w.reason),
        }
    }
}

/// Evaluates one axiom's pair condition. `None` means the pair is fine.
pub(crate) fn pair_violation(
    axiom: Axiom,
    g: &ReputationGraph,
    profile: &SupportProfile,
    ranks: &[u32],
    i: usize,
    j: usize,
) -> Option<&'static str> {
    use FeedbackKind::{Negative, Positive};
    let above = ranks[i] < ranks[j];
    let below = ranks[i] > ranks[j];
    // some member of R_kind(i) is ranked strictly above some member of R_kind(j)
    let supporter_above = |kind| match (profile.of(kind, i).first(), profile.of(kind, j).last()) {
        (Some(best_i), Some(worst_j)) => best_i < worst_j,
        _ => false,
    };
    // some member of R_kind(i) is ranked strictly below some member of R_kind(j)
    let supporter_below = |kind| match (profile.of(kind, i).last(), profile.of(kind, j).first()) {
        (Some(worst_i), Some(best_j)) => worst_i > best_j,
        _ => false,
    };
    match axiom {
        Axiom::T => (profile.outranks(Positive, i, j) && !above)
            .then_some("support of the first is more important but it is not ranked strictly higher"),
        Axiom::M => (above && !profile.outranks(Positive, i, j) && !supporter_above(Positive))
            .then_some("ranked strictly higher without more important support and no supporter of the first outranks a supporter of the second"),
        Axiom::VWM => (above
            && !profile.outranks(Positive, i, j)
            && g.supporters(i, Positive).len() <= g.supporters(j, Positive).len() + 1
            && !supporter_above(Positive))
        .then_some("ranked strictly higher with support at most one larger, without more important support, and no supporter of the first outranks a supporter of the second"),
        Axiom::BT => (profile.outranks(Negative, i, j) && !below)
            .then_some("accusers of the first are more reliable but it is not ranked strictly lower"),
        Axiom::BM => (below && !profile.outranks(Negative, i, j) && !supporter_above(Negative))
            .then_some("ranked strictly lower without more reliable accusers and no accuser of the first outranks an accuser of the second"),
        Axiom::Tc => (profile.socially_stronger(i, j) && !above)
            .then_some("feedback of the first is socially stronger but it is not ranked strictly higher"),
        Axiom::Mc => (above
            && !profile.socially_stronger(i, j)
            && !supporter_above(Positive)
            && !supporter_below(Negative))
        .then_some("ranked strictly higher without socially stronger feedback and neither a supporter nor an accuser witness exists"),
    }
}

/// First violating pair in identifier order.
pub(crate) fn first_violation(
    axiom: Axiom,
    g: &ReputationGraph,
    profile: &SupportProfile,
    ranks: &[u32],
) -> Option<(usize, usize, &'static str)> {
    let n = ranks.len();
    (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .find_map(|(i, j)| pair_violation(axiom, g, profile, ranks, i, j).map(|why| (i, j, why)))
}

pub(crate) fn satisfies_all(axioms: &[Axiom], g: &ReputationGraph, profile: &SupportProfile, ranks: &[u32]) -> bool {
    axioms.iter().all(|&a| first_violation(a, g, profile, ranks).is_none())
}

fn validate(g: &ReputationGraph, r: &Ranking, axiom: Axiom) -> Result<()> {
    axiom.require_mode(g.mode())?;
    if r.nodes() != g.nodes() {
        return Err(Error::NodeSetMismatch);
    }
    Ok(())
}

fn witness(g: &ReputationGraph, i: usize, j: usize, reason: &str) -> Witness {
    Witness {
        first: g.nodes()[i].clone(),
        second: g.nodes()[j].clone(),
        reason: reason.to_string(),
    }
}

pub fn check(g: &ReputationGraph, r: &Ranking, axiom: Axiom) -> Result<AxiomReport> {
    validate(g, r, axiom)?;
    let profile = SupportProfile::new(g, r.ranks());
    let witness = first_violation(axiom, g, &profile, r.ranks()).map(|(i, j, why)| witness(g, i, j, why));
    Ok(AxiomReport {
        axiom,
        passed: witness.is_none(),
        witness,
    })
}

/// One report per axiom stated for the graph's mode.
pub fn check_all(g: &ReputationGraph, r: &Ranking) -> Result<Vec<AxiomReport>> {
    axioms_for(g.mode()).iter().map(|&a| check(g, r, a)).collect()
}

/// Every violating pair, in identifier order.
pub fn violations(g: &ReputationGraph, r: &Ranking, axiom: Axiom) -> Result<Vec<Witness>> {
    validate(g, r, axiom)?;
    let profile = SupportProfile::new(g, r.ranks());
    let n = g.node_count();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            if let Some(why) = pair_violation(axiom, g, &profile, r.ranks(), i, j) {
                out.push(witness(g, i, j, why));
            }
        }
    }
    Ok(out)
}

/// Re-evaluates the axiom on a single ordered pair: `true` if the pair is
/// consistent with it.
pub fn pair_holds(g: &ReputationGraph, r: &Ranking, axiom: Axiom, first: &str, second: &str) -> Result<bool> {
    validate(g, r, axiom)?;
    let (i, j) = (g.require_index(first)?, g.require_index(second)?);
    let profile = SupportProfile::new(g, r.ranks());
    Ok(pair_violation(axiom, g, &profile, r.ranks(), i, j).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preorder::parse_ranking;

    fn cycle_with_tail() -> ReputationGraph {
        ReputationGraph::positive(&[("a", "b"), ("b", "c"), ("c", "a"), ("d", "a")]).unwrap()
    }

    #[test]
    fn path_ranking_satisfies_t() {
        let g = ReputationGraph::positive(&[("a", "b"), ("b", "c")]).unwrap();
        let r = parse_ranking("a 3\nb 2\nc 1").unwrap();
        assert!(check(&g, &r, Axiom::T).unwrap().passed);
    }

    #[test]
    fn descending_ranking_violates_m_at_a_b() {
        let g = cycle_with_tail();
        let r = parse_ranking("a 1\nb 2\nc 3\nd 4").unwrap();
        assert!(check(&g, &r, Axiom::T).unwrap().passed);
        let report = check(&g, &r, Axiom::M).unwrap();
        assert!(!report.passed);
        let w = report.witness.unwrap();
        assert_eq!((w.first.as_str(), w.second.as_str()), ("a", "b"));
        assert!(!pair_holds(&g, &r, Axiom::M, "a", "b").unwrap());
    }

    #[test]
    fn all_tied_ranking_passes_m() {
        let g = cycle_with_tail();
        let r = Ranking::uniform(g.nodes());
        assert!(check(&g, &r, Axiom::M).unwrap().passed);
        assert!(check(&g, &r, Axiom::VWM).unwrap().passed);
        // but a tie cannot satisfy T here: R(a) = {c, d} dominates R(d) = {}
        assert!(!check(&g, &r, Axiom::T).unwrap().passed);
    }

    #[test]
    fn check_all_dispatches_on_mode() {
        let pos = cycle_with_tail();
        let names = |g: &ReputationGraph| -> Vec<Axiom> {
            check_all(g, &Ranking::uniform(g.nodes())).unwrap().iter().map(|r| r.axiom).collect()
        };
        assert_eq!(names(&pos), vec![Axiom::T, Axiom::M, Axiom::VWM]);
        let neg = ReputationGraph::negative(&[("a", "b")]).unwrap();
        assert_eq!(names(&neg), vec![Axiom::BT, Axiom::BM]);
        let comb = pos.with_mode(Mode::Combined).unwrap();
        assert_eq!(names(&comb), vec![Axiom::Tc, Axiom::Mc]);
    }

    #[test]
    fn mode_and_node_mismatches() {
        let g = cycle_with_tail();
        let r = Ranking::uniform(g.nodes());
        assert!(matches!(check(&g, &r, Axiom::BT), Err(Error::AxiomModeMismatch { .. })));
        let other = parse_ranking("a 1\nb 1").unwrap();
        assert_eq!(check(&g, &other, Axiom::T), Err(Error::NodeSetMismatch));
    }

    #[test]
    fn negative_examples() {
        let path = ReputationGraph::negative(&[("a", "b"), ("b", "c")]).unwrap();
        let r = parse_ranking("a 1\nc 2\nb 3").unwrap();
        assert!(check(&path, &r, Axiom::BT).unwrap().passed);
        // b and c swapped: R(b) = {a} is more reliable than R(c) = {b}
        let bad = parse_ranking("a 1\nb 2\nc 3").unwrap();
        let report = check(&path, &bad, Axiom::BT).unwrap();
        let w = report.witness.unwrap();
        assert_eq!((w.first.as_str(), w.second.as_str()), ("b", "c"));
    }

    #[test]
    fn complement_rankings() {
        let g = ReputationGraph::positive(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "b")])
            .unwrap()
            .complement()
            .unwrap();
        let r = parse_ranking("b 1\nc 1\nd 2\na 3").unwrap();
        for report in check_all(&g, &r).unwrap() {
            assert!(report.passed, "{report}");
        }
        // R(c) = {a, d} ranks [1, 4] against R(b) = {c} at [2]: c's accusers
        // are more reliable, so c may not sit above b
        let r = parse_ranking("d 1\nc 2\nb 3\na 4").unwrap();
        let report = check(&g, &r, Axiom::BT).unwrap();
        let w = report.witness.unwrap();
        assert_eq!((w.first.as_str(), w.second.as_str()), ("c", "b"));
        assert!(check(&g, &r, Axiom::BM).unwrap().passed);
    }

    #[test]
    fn combined_witnesses() {
        let mut b = crate::graph::GraphBuilder::new(Mode::Combined);
        for n in ["u", "v", "x", "y"] {
            b.add_node(NodeId::new(n).unwrap());
        }
        let id = |s: &str| NodeId::new(s).unwrap();
        b.add_edge(id("x"), id("u"), FeedbackKind::Positive).unwrap();
        b.add_edge(id("y"), id("v"), FeedbackKind::Positive).unwrap();
        let g = b.build();
        // u above v with equal-strength supporters: no good-side witness
        let r = parse_ranking("u 1\nv 2\nx 3\ny 3").unwrap();
        assert!(!pair_holds(&g, &r, Axiom::Mc, "u", "v").unwrap());
        // x above y makes u's feedback socially stronger
        let r = parse_ranking("u 1\nv 2\nx 3\ny 4").unwrap();
        assert!(pair_holds(&g, &r, Axiom::Mc, "u", "v").unwrap());
        assert!(pair_holds(&g, &r, Axiom::Tc, "u", "v").unwrap());
    }

    #[test]
    fn report_rendering() {
        let g = cycle_with_tail();
        let r = parse_ranking("a 1\nb 2\nc 3\nd 4").unwrap();
        let text = check(&g, &r, Axiom::M).unwrap().to_string();
        assert!(text.starts_with("M fail witness: (a,b) "), "{text}");
        assert_eq!(check(&g, &r, Axiom::T).unwrap().to_string(), "T pass");
    }

    #[test]
    fn parses_axiom_lists() {
        assert_eq!(parse_axioms("T,M").unwrap(), vec![Axiom::T, Axiom::M]);
        assert_eq!(parse_axioms("tc, MC,Tc").unwrap(), vec![Axiom::Tc, Axiom::Mc]);
        assert!(parse_axioms("T,Q").is_err());
    }
}
