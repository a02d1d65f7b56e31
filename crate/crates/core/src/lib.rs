//! Elections over votes with ties and single-peaked preference models.
//!
//! The crate covers:
//!
//! * ballots as weak orders, weighted profiles, and PrefLib/JSON I/O
//!   ([`order`], [`io`]);
//! * scoring rules with the min, max, round-down and average extensions
//!   ([`scoring`]);
//! * majority graphs, Copeland^α and weak Condorcet winners ([`pairwise`]);
//! * elimination veto ([`elimination`]);
//! * single-peaked, single-plateaued, outside-options and possibly
//!   single-peaked models ([`peakedness`]);
//! * constructive weighted coalitional manipulation: polynomial-time
//!   solvers, an exhaustive oracle, and the Partition reduction
//!   ([`manipulation`]).

pub mod elimination;
pub mod error;
pub mod io;
pub mod manipulation;
pub mod order;
pub mod pairwise;
pub mod peakedness;
pub mod scoring;
pub mod weight;

pub use elimination::{elimination_veto_winner, EliminationOrder};
pub use error::{Error, Result};
pub use io::{parse_profile, serialize_profile, Format};
pub use manipulation::{CwcmInstance, ManipulationResult, PartitionInstance, Rule, SolverTag};
pub use order::{classify_order, Candidate, CandidateId, OrderClass, Profile, WeakOrder, WeightedVoter};
pub use pairwise::{CopelandRule, MajorityGraph};
pub use peakedness::{Axis, PeakDecomposition, SPModel, VoteConstraint};
pub use scoring::{Extension, ScoreTable, ScoringVector};
pub use weight::Weight;
