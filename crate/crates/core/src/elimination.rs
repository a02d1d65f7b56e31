//! Elimination veto over votes with ties.
//!
//! Each round scores the remaining candidates with the veto vector of the
//! current size, using the min extension on the votes restricted to the
//! remaining candidates, and drops the lowest scorer. Under min a vote gives
//! 0 points exactly to its bottom group, so a round amounts to finding the
//! candidate with the most veto weight.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::order::{CandidateId, Profile};

/// Which of several lowest scorers is eliminated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    /// Eliminate the lexicographically smallest name.
    SmallestNameFirst,
    /// Eliminate the lexicographically largest name.
    LargestNameFirst,
}

pub const DEFAULT_TIE_BREAK: TieBreak = TieBreak::SmallestNameFirst;

/// Candidates in the order they were eliminated; the survivor is last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EliminationOrder(Vec<CandidateId>);

impl EliminationOrder {
    pub fn new(sequence: Vec<CandidateId>) -> Self {
        EliminationOrder(sequence)
    }

    pub fn sequence(&self) -> &[CandidateId] {
        &self.0
    }

    pub fn winner(&self) -> CandidateId {
        *self.0.last().expect("an elimination order is never empty")
    }

    /// The eliminated candidates, first eliminated first.
    pub fn eliminated(&self) -> &[CandidateId] {
        &self.0[..self.0.len() - 1]
    }

    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        self.0
            .iter()
            .map(|c| serde_json::Value::String(names[c.index()].clone()))
            .collect()
    }
}

/// Veto weight received by each remaining candidate in one round.
pub fn veto_weights(profile: &Profile, remaining: &[bool]) -> Vec<BigUint> {
    let mut vetoes = vec![BigUint::zero(); profile.num_candidates()];
    for voter in profile.voters() {
        let restricted = voter.order.restrict(|c| remaining[c.index()]);
        if let Some(bottom) = restricted.groups().last() {
            for c in bottom {
                vetoes[c.index()] += voter.weight.value();
            }
        }
    }
    vetoes
}

pub fn elimination_veto_winner(profile: &Profile) -> Result<(CandidateId, EliminationOrder)> {
    elimination_veto_winner_with(profile, DEFAULT_TIE_BREAK)
}

pub fn elimination_veto_winner_with(
    profile: &Profile,
    tie_break: TieBreak,
) -> Result<(CandidateId, EliminationOrder)> {
    let m = profile.num_candidates();
    if m == 0 {
        return Err(Error::Domain("elimination veto needs at least one candidate".into()));
    }
    let mut remaining = vec![true; m];
    let mut sequence = Vec::with_capacity(m);
    for _ in 1..m {
        let vetoes = veto_weights(profile, &remaining);
        let most = (0..m)
            .filter(|&c| remaining[c])
            .map(|c| &vetoes[c])
            .max()
            .expect("at least two candidates remain")
            .clone();
        let lowest = (0..m).filter(|&c| remaining[c] && vetoes[c] == most);
        let out = match tie_break {
            TieBreak::SmallestNameFirst => lowest.min_by(|&a, &b| {
                profile.name(CandidateId(a)).cmp(profile.name(CandidateId(b)))
            }),
            TieBreak::LargestNameFirst => lowest.max_by(|&a, &b| {
                profile.name(CandidateId(a)).cmp(profile.name(CandidateId(b)))
            }),
        }
        .expect("non-empty");
        remaining[out] = false;
        sequence.push(CandidateId(out));
    }
    let survivor = CandidateId(remaining.iter().position(|&r| r).expect("one survivor"));
    sequence.push(survivor);
    Ok((survivor, EliminationOrder(sequence)))
}
