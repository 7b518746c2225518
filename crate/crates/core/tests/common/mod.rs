#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use reputation_axioms::graph::GraphBuilder;
use reputation_axioms::oracle::letter_nodes;
use reputation_axioms::{FeedbackKind, Mode, NodeId, Ranking, ReputationGraph};

pub const EDGE_PROBABILITIES: [f64; 3] = [0.1, 0.3, 0.5];

/// Random graph on `n` lettered nodes. Each ordered pair carries each
/// admissible feedback kind independently with probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, mode: Mode, n: usize, p: f64) -> ReputationGraph {
    let names = letter_nodes(n);
    let mut builder = GraphBuilder::new(mode);
    for name in &names {
        builder.add_node(name.clone());
    }
    for s in 0..n {
        for t in (0..n).filter(|&t| t != s) {
            for kind in [FeedbackKind::Positive, FeedbackKind::Negative] {
                if mode.admits(kind) && rng.gen_bool(p) {
                    builder.add_edge(names[s].clone(), names[t].clone(), kind).unwrap();
                }
            }
        }
    }
    builder.build()
}

/// Every graph of the given single-polarity mode on `n` lettered nodes.
pub fn all_graphs(mode: Mode, n: usize) -> Vec<ReputationGraph> {
    let kind = mode.single_kind().expect("single polarity");
    let names = letter_nodes(n);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t)))
        .collect();
    (0..1u64 << pairs.len())
        .map(|mask| {
            let mut builder = GraphBuilder::new(mode);
            for name in &names {
                builder.add_node(name.clone());
            }
            for (bit, &(s, t)) in pairs.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    builder.add_edge(names[s].clone(), names[t].clone(), kind).unwrap();
                }
            }
            builder.build()
        })
        .collect()
}

/// Random dense ranking over the given nodes.
pub fn random_ranking<R: Rng>(rng: &mut R, nodes: &[NodeId]) -> Ranking {
    let raw = nodes
        .iter()
        .map(|n| (n.clone(), rng.gen_range(0..nodes.len().max(1)) as i64))
        .collect();
    reputation_axioms::preorder::normalize(&raw)
}

pub fn subsets(nodes: &[NodeId], max_size: usize) -> Vec<BTreeSet<NodeId>> {
    (0..1u32 << nodes.len())
        .filter(|m| m.count_ones() as usize <= max_size)
        .map(|m| {
            nodes
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, n)| n.clone())
                .collect()
        })
        .collect()
}

/// Explicit search for an injection `f: b -> a` with `rank(f(x)) <= rank(x)`.
/// Returns (exists, exists_strict) where strict means the injection is not
/// onto or improves at least one element.
pub fn injection_search(r: &Ranking, a: &BTreeSet<NodeId>, b: &BTreeSet<NodeId>) -> (bool, bool) {
    let a: Vec<u32> = a.iter().map(|n| r.rank(n.as_str()).unwrap()).collect();
    let b: Vec<u32> = b.iter().map(|n| r.rank(n.as_str()).unwrap()).collect();
    let mut used = vec![false; a.len()];
    let mut found = (false, false);
    search(&a, &b, 0, &mut used, false, &mut found);
    found
}

fn search(a: &[u32], b: &[u32], k: usize, used: &mut [bool], strict: bool, found: &mut (bool, bool)) {
    if found.1 {
        return;
    }
    if k == b.len() {
        let onto = used.iter().all(|u| *u);
        found.0 = true;
        found.1 |= strict || !onto;
        return;
    }
    for i in 0..a.len() {
        if !used[i] && a[i] <= b[k] {
            used[i] = true;
            search(a, b, k + 1, used, strict || a[i] < b[k], found);
            used[i] = false;
        }
    }
}

/// Exact rank-preserving bijection, by explicit search.
pub fn bijection_search(r: &Ranking, a: &BTreeSet<NodeId>, b: &BTreeSet<NodeId>) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let a: Vec<u32> = a.iter().map(|n| r.rank(n.as_str()).unwrap()).collect();
    let b: Vec<u32> = b.iter().map(|n| r.rank(n.as_str()).unwrap()).collect();
    fn go(a: &[u32], b: &[u32], k: usize, used: &mut [bool]) -> bool {
        if k == b.len() {
            return true;
        }
        (0..a.len()).any(|i| {
            if used[i] || a[i] != b[k] {
                return false;
            }
            used[i] = true;
            let ok = go(a, b, k + 1, used);
            used[i] = false;
            ok
        })
    }
    go(&a, &b, 0, &mut vec![false; a.len()])
}

/// Number of total preorders on `n` elements by summing over the size of the
/// top level: a(n) = sum_{k=1..n} C(n, k) a(n - k).
pub fn preorder_recurrence(n: usize) -> u64 {
    let mut a = vec![1u64; n + 1];
    for m in 1..=n {
        a[m] = (1..=m).map(|k| binomial(m, k) * a[m - k]).sum();
    }
    a[n]
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}
