//! Constructive weighted coalitional manipulation (CWCM).
//!
//! An instance fixes the nonmanipulators `S`, the manipulator weights `T`,
//! a preferred candidate `p`, an axis and a single-peakedness model. The
//! question is whether the manipulators can cast model-consistent votes that
//! make `p` a winner (the unique winner, for elimination veto).
//!
//! Polynomial-time solvers live in [`scoring_sp`], [`copeland`] and
//! [`elimination`]; [`oracle`] is the exhaustive reference they are checked
//! against.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::elimination::elimination_veto_winner;
use crate::error::{Error, Result};
use crate::order::{CandidateId, Profile, WeakOrder, WeightedVoter};
use crate::pairwise::{copeland_winners, CopelandRule};
use crate::peakedness::{validate_vote, Axis, SPModel};
use crate::scoring::{scoring_winners, Extension, ScoringVector};
use crate::weight::Weight;

pub mod copeland;
pub mod elimination;
pub mod json;
pub mod normalize;
pub mod oracle;
pub mod partition;
pub mod scoring_sp;
pub mod sweep;

pub use copeland::{doubling_transform, solve_cwcm_copeland_sp};
pub use elimination::solve_cwcm_elimination_veto;
pub use normalize::normalize_p_first;
pub use oracle::{solve_cwcm_oracle, solve_cwcm_oracle_with, OracleConfig};
pub use partition::{find_partition, reduce_partition_to_cwcm, solve_partition, PartitionInstance};
pub use scoring_sp::{check_l_sp2p, solve_cwcm_scoring_sp, PolyTimeCase};

/// The election system under attack.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Scoring {
        vector: ScoringVector,
        ext: Extension,
    },
    Copeland(CopelandRule),
    /// Min extension, unique winner, lexicographic tie-breaking.
    EliminationVeto,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Scoring { vector, ext } => write!(f, "scoring {vector} ({ext})"),
            Rule::Copeland(r) => write!(f, "copeland^{r}"),
            Rule::EliminationVeto => f.write_str("elimination veto"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverTag {
    Polytime,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwcmInstance {
    names: Vec<String>,
    nonmanipulators: Vec<WeightedVoter>,
    manipulators: Vec<Weight>,
    preferred: CandidateId,
    axis: Axis,
    model: SPModel,
    rule: Rule,
}

impl CwcmInstance {
    pub fn new(
        names: Vec<String>,
        nonmanipulators: Vec<WeightedVoter>,
        manipulators: Vec<Weight>,
        preferred: CandidateId,
        axis: Axis,
        model: SPModel,
        rule: Rule,
    ) -> Result<Self> {
        let m = names.len();
        // validates names and ballots
        Profile::new(names.clone(), nonmanipulators.clone())?;
        if axis.len() != m {
            return Err(Error::Validation(format!(
                "axis has {} candidates, election has {m}",
                axis.len()
            )));
        }
        if preferred.index() >= m {
            return Err(Error::Validation(format!("preferred candidate {preferred} is unknown")));
        }
        if let Rule::Scoring { vector, .. } = &rule {
            if vector.len() != m {
                return Err(Error::Dimension {
                    expected: m,
                    actual: vector.len(),
                });
            }
        }
        for (i, v) in nonmanipulators.iter().enumerate() {
            if validate_vote(&v.order, &axis, model).is_none() {
                return Err(Error::Validation(format!(
                    "nonmanipulator {} is not {model} with respect to the axis",
                    i + 1
                )));
            }
        }
        Ok(CwcmInstance {
            names,
            nonmanipulators,
            manipulators,
            preferred,
            axis,
            model,
            rule,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_candidates(&self) -> usize {
        self.names.len()
    }

    pub fn nonmanipulators(&self) -> &[WeightedVoter] {
        &self.nonmanipulators
    }

    pub fn manipulators(&self) -> &[Weight] {
        &self.manipulators
    }

    pub fn preferred(&self) -> CandidateId {
        self.preferred
    }

    pub fn axis(&self) -> &Axis {
        &self.axis
    }

    pub fn model(&self) -> SPModel {
        self.model
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    /// The same question under another rule.
    pub fn with_rule(&self, rule: Rule) -> Result<Self> {
        CwcmInstance::new(
            self.names.clone(),
            self.nonmanipulators.clone(),
            self.manipulators.clone(),
            self.preferred,
            self.axis.clone(),
            self.model,
            rule,
        )
    }

    /// `(C, S ∪ T)` with the manipulators casting `votes`.
    pub fn profile_with(&self, votes: &[WeakOrder]) -> Result<Profile> {
        if votes.len() != self.manipulators.len() {
            return Err(Error::Validation(format!(
                "{} manipulator votes given for {} manipulators",
                votes.len(),
                self.manipulators.len()
            )));
        }
        let mut voters = self.nonmanipulators.clone();
        voters.extend(votes.iter().zip(&self.manipulators).map(|(v, w)| WeightedVoter {
            order: v.clone(),
            weight: w.clone(),
        }));
        Profile::new(self.names.clone(), voters)
    }

    /// Whether `p` wins `profile` under the instance's rule and winner model.
    pub fn preferred_wins(&self, profile: &Profile) -> Result<bool> {
        let p = self.preferred;
        Ok(match &self.rule {
            Rule::Scoring { vector, ext } => scoring_winners(profile, vector, *ext)?.contains(&p),
            Rule::Copeland(rule) => copeland_winners(profile, rule).contains(&p),
            Rule::EliminationVeto => elimination_veto_winner(profile)?.0 == p,
        })
    }

    /// Checks a claimed manipulation from scratch: every vote is consistent
    /// with the model and `p` wins the combined election.
    pub fn verify_witness(&self, votes: &[WeakOrder]) -> Result<bool> {
        if votes
            .iter()
            .any(|v| validate_vote(v, &self.axis, self.model).is_none())
        {
            return Ok(false);
        }
        self.preferred_wins(&self.profile_with(votes)?)
    }

    /// Everyone in `T` casting the same vote.
    pub(crate) fn uniform(&self, vote: &WeakOrder) -> Vec<WeakOrder> {
        vec![vote.clone(); self.manipulators.len()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManipulationResult {
    pub decision: bool,
    /// One vote per manipulator, aligned with the instance's weights.
    pub witness: Option<Vec<WeakOrder>>,
    pub solver: SolverTag,
}

impl ManipulationResult {
    pub fn yes(witness: Vec<WeakOrder>, solver: SolverTag) -> Self {
        ManipulationResult {
            decision: true,
            witness: Some(witness),
            solver,
        }
    }

    pub fn no(solver: SolverTag) -> Self {
        ManipulationResult {
            decision: false,
            witness: None,
            solver,
        }
    }
}

/// Picks the polynomial-time solver matching the instance's rule.
pub fn solve_polytime(instance: &CwcmInstance) -> Result<ManipulationResult> {
    match instance.rule() {
        Rule::Scoring { .. } => solve_cwcm_scoring_sp(instance),
        Rule::Copeland(_) => solve_cwcm_copeland_sp(instance),
        Rule::EliminationVeto => solve_cwcm_elimination_veto(instance),
    }
}

/// Polynomial-time solver when one applies, oracle otherwise.
pub fn solve_auto(instance: &CwcmInstance) -> Result<ManipulationResult> {
    match solve_polytime(instance) {
        Err(Error::NotApplicable(_)) => solve_cwcm_oracle(instance),
        other => other,
    }
}

pub(crate) fn require_sp_or_plateau(instance: &CwcmInstance) -> Result<()> {
    match instance.model() {
        SPModel::SinglePeaked | SPModel::SinglePlateaued => Ok(()),
        other => Err(Error::NotApplicable(format!(
            "the polynomial-time solvers cover single-peaked and single-plateaued votes, not {other}"
        ))),
    }
}

/// `p > b_1 > ... > b_{m2} > a_1 > ... > a_{m1}` where `a_i`/`b_i` are the
/// `i`-th neighbours of `p` to the left/right on the axis. With
/// `right_first = false` the sides are swapped.
pub fn sweep_vote(axis: &Axis, p: CandidateId, right_first: bool) -> WeakOrder {
    let pos = axis.position(p);
    let left = (0..pos).rev().map(|i| axis.at(i));
    let right = (pos + 1..axis.len()).map(|i| axis.at(i));
    let rest: Vec<CandidateId> = if right_first {
        right.chain(left).collect()
    } else {
        left.chain(right).collect()
    };
    WeakOrder::total(std::iter::once(p).chain(rest))
}
