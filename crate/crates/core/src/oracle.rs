//! Exhaustive certification: does any total preorder satisfy a set of axioms
//! on a given graph?
//!
//! UNSAT certificates come from scanning every preorder. The scan splits by
//! top level into independent ranges; with the `parallel` feature the ranges
//! run on the rayon pool and the witness reported is still the first one in
//! sequential enumeration order, so both executions return identical
//! certificates.

use std::fmt;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::axioms::{satisfies_all, Axiom};
use crate::dominance::SupportProfile;
use crate::error::{Error, Result};
use crate::graph::{FeedbackKind, GraphBuilder, Mode, NodeId, ReputationGraph};
use crate::preorder::{check_cap, first_block_ranges, preorder_count, RankVectors, Ranking, DEFAULT_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Sat,
    Unsat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub status: Status,
    /// First satisfying ranking in enumeration order (SAT only).
    pub witness: Option<Ranking>,
    /// Preorders checked, counting the witness itself.
    pub examined: u64,
}

impl Certificate {
    pub fn is_sat(&self) -> bool {
        self.status == Status::Sat
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => writeln!(f, "UNSAT after {} preorders", self.examined),
            Some(w) => write!(f, "SAT:\n{}", w.to_ranking_file()),
        }
    }
}

/// How the preorder scan is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Splits the scan across the rayon pool. Without the `parallel` feature
    /// this runs sequentially.
    #[default]
    Parallel,
}

#[derive(Debug, Clone, Copy)]
pub struct Certifier {
    cap: usize,
    execution: Execution,
}

impl Default for Certifier {
    fn default() -> Self {
        Certifier {
            cap: DEFAULT_CAP,
            execution: Execution::default(),
        }
    }
}

impl Certifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    fn validate(&self, g: &ReputationGraph, axioms: &[Axiom]) -> Result<()> {
        for axiom in axioms {
            axiom.require_mode(g.mode())?;
        }
        check_cap(g.node_count(), self.cap)
    }

    pub fn certify(&self, g: &ReputationGraph, axioms: &[Axiom]) -> Result<Certificate> {
        self.validate(g, axioms)?;
        let n = g.node_count();
        let found = match self.execution {
            Execution::Parallel if n > 0 => first_witness_parallel(g, axioms),
            _ => first_witness(g, axioms, RankVectors::new(n)).map(|(i, r)| (i as u64, r)),
        };
        Ok(match found {
            Some((index, ranks)) => Certificate {
                status: Status::Sat,
                witness: Some(Ranking::from_dense(g.nodes().to_vec(), ranks)),
                examined: index + 1,
            },
            None => Certificate {
                status: Status::Unsat,
                witness: None,
                examined: preorder_count(n),
            },
        })
    }

    /// Number of preorders satisfying every axiom.
    pub fn count_satisfying(&self, g: &ReputationGraph, axioms: &[Axiom]) -> Result<u64> {
        self.validate(g, axioms)?;
        let n = g.node_count();
        let count_range = |it: RankVectors| {
            let mut profile = SupportProfile::default();
            it.filter(|ranks| {
                profile.update(g, ranks);
                satisfies_all(axioms, g, &profile, ranks)
            })
            .count() as u64
        };
        if n == 0 || self.execution == Execution::Sequential {
            return Ok(count_range(RankVectors::new(n)));
        }
        let ranges = first_block_ranges(n);
        #[cfg(feature = "parallel")]
        let total = ranges
            .par_iter()
            .map(|&(mask, _)| count_range(RankVectors::with_first_block(n, mask)))
            .sum();
        #[cfg(not(feature = "parallel"))]
        let total = ranges
            .iter()
            .map(|&(mask, _)| count_range(RankVectors::with_first_block(n, mask)))
            .sum();
        Ok(total)
    }

    /// Certifies `{T, VWM}` on a strongly connected positive graph.
    pub fn certify_vwm_strongly_connected(&self, g: &ReputationGraph) -> Result<Certificate> {
        if g.mode() != Mode::PositiveOnly {
            return Err(Error::WrongMode {
                expected: Mode::PositiveOnly,
                found: g.mode(),
            });
        }
        if !g.is_strongly_connected()? {
            return Err(Error::NotStronglyConnected);
        }
        self.certify(g, &[Axiom::T, Axiom::VWM])
    }
}

fn first_witness(g: &ReputationGraph, axioms: &[Axiom], preorders: RankVectors) -> Option<(usize, Vec<u32>)> {
    let mut profile = SupportProfile::default();
    preorders.enumerate().find(|(_, ranks)| {
        profile.update(g, ranks);
        satisfies_all(axioms, g, &profile, ranks)
    })
}

fn first_witness_parallel(g: &ReputationGraph, axioms: &[Axiom]) -> Option<(u64, Vec<u32>)> {
    let n = g.node_count();
    let ranges = first_block_ranges(n);
    let scan = |&(mask, offset): &(u32, u64)| {
        first_witness(g, axioms, RankVectors::with_first_block(n, mask)).map(|(i, r)| (offset + i as u64, r))
    };
    #[cfg(feature = "parallel")]
    return ranges.par_iter().find_map_first(scan);
    #[cfg(not(feature = "parallel"))]
    return ranges.iter().find_map(scan);
}

pub fn certify(g: &ReputationGraph, axioms: &[Axiom]) -> Result<Certificate> {
    Certifier::default().certify(g, axioms)
}

pub fn certify_vwm_strongly_connected(g: &ReputationGraph) -> Result<Certificate> {
    Certifier::default().certify_vwm_strongly_connected(g)
}

/// Node names `a`, `b`, ... used for generated graphs.
pub fn letter_nodes(n: usize) -> Vec<NodeId> {
    (0..n)
        .map(|i| NodeId::new(((b'a' + i as u8) as char).to_string()).expect("letter"))
        .collect()
}

/// The positive graph on `n` lettered nodes whose edge set is given by the
/// bits of `mask`, over ordered pairs `(s, t)`, `s != t`, in row-major order.
pub fn graph_from_mask(n: usize, mask: u64) -> ReputationGraph {
    let names = letter_nodes(n);
    let mut builder = GraphBuilder::new(Mode::PositiveOnly);
    for name in &names {
        builder.add_node(name.clone());
    }
    let pairs = (0..n).flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t)));
    for (bit, (s, t)) in pairs.enumerate() {
        if mask >> bit & 1 == 1 {
            builder
                .add_edge(names[s].clone(), names[t].clone(), FeedbackKind::Positive)
                .expect("generated edges are valid");
        }
    }
    builder.build()
}

/// Searches the strongly connected positive graphs on `n` nodes, by
/// increasing edge mask, for one where no preorder satisfies `axioms`.
pub fn find_unsat_strongly_connected(n: usize, axioms: &[Axiom], execution: Execution) -> Result<Option<ReputationGraph>> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    for axiom in axioms {
        axiom.require_mode(Mode::PositiveOnly)?;
    }
    check_cap(n, DEFAULT_CAP)?;
    let pairs = n * (n - 1);
    let inner = Certifier::new().execution(Execution::Sequential);
    let probe = |mask: u64| -> Option<ReputationGraph> {
        let g = graph_from_mask(n, mask);
        if !g.is_strongly_connected().unwrap_or(false) {
            return None;
        }
        let cert = inner.certify(&g, axioms).expect("validated above");
        (!cert.is_sat()).then_some(g)
    };
    let masks = 0..(1u64 << pairs);
    #[cfg(feature = "parallel")]
    if execution == Execution::Parallel {
        return Ok(masks.into_par_iter().find_map_first(probe));
    }
    let _ = execution;
    Ok(masks.into_iter().find_map(probe))
}
