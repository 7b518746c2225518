//! Axiomatic social rankings over reputation graphs.
//!
//! Agents rate each other with positive feedback (support), negative feedback
//! (accusations), or both. This crate ranks agents by iterative refinement
//! ([`engine`]), checks rankings against transitivity and monotonicity
//! postulates ([`axioms`]), and decides by exhaustive enumeration of total
//! preorders whether any ranking can satisfy a given set of postulates on a
//! given graph ([`oracle`]).
//!
//! ```
//! use reputation_axioms::{axioms::Axiom, engine, oracle, ReputationGraph};
//!
//! let g = ReputationGraph::positive(&[("a", "b"), ("b", "c"), ("c", "a"), ("d", "a")]).unwrap();
//! let (ranking, _trace) = engine::rank_positive(&g).unwrap();
//! assert_eq!(ranking.to_string(), "a > b > c > d");
//!
//! let cert = oracle::certify(&g, &[Axiom::T, Axiom::M]).unwrap();
//! assert!(!cert.is_sat());
//! assert_eq!(cert.examined, 75);
//! ```

pub mod axioms;
pub mod dominance;
pub mod engine;
mod error;
pub mod graph;
pub mod oracle;
pub mod preorder;

pub use error::{Error, Result};
pub use graph::{parse_graph, FeedbackKind, Mode, NodeId, ReputationGraph};
pub use preorder::{parse_ranking, Ranking};
