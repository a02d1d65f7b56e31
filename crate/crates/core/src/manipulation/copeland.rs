//! Copeland^α CWCM for single-peaked and single-plateaued votes.
//!
//! Each nonmanipulator of weight `w` is replaced by two weight-`w` total
//! orders breaking its ties along and against the axis. The new weighted
//! majority graph is exactly twice the old one, so after doubling the
//! manipulator weights the question is unchanged but every nonmanipulator
//! is a single-peaked total order. There a single uniform vote for all
//! manipulators suffices; we try every single-peaked total order with `p`
//! first.

use super::{require_sp_or_plateau, CwcmInstance, ManipulationResult, Rule, SolverTag};
use crate::error::{Error, Result};
use crate::order::{CandidateId, Profile, WeakOrder, WeightedVoter};
use crate::pairwise::copeland_winners;
use crate::peakedness::{enumerate_consistent_votes, Axis, SPModel, VoteConstraint};

/// Breaks the ties of `order` in increasing (`along = true`) or decreasing
/// axis order.
pub fn break_ties_along(order: &WeakOrder, axis: &Axis, along: bool) -> WeakOrder {
    let mut sequence = Vec::with_capacity(order.num_candidates());
    for group in order.groups() {
        let mut g: Vec<CandidateId> = group.clone();
        g.sort_by_key(|&c| axis.position(c));
        if !along {
            g.reverse();
        }
        sequence.extend(g);
    }
    WeakOrder::total(sequence)
}

/// Each voter becomes two voters of the same weight, one per tie-breaking
/// direction.
pub fn doubling_transform(voters: &[WeightedVoter], axis: &Axis) -> Vec<WeightedVoter> {
    voters
        .iter()
        .flat_map(|v| {
            [true, false].map(|along| WeightedVoter {
                order: break_ties_along(&v.order, axis, along),
                weight: v.weight.clone(),
            })
        })
        .collect()
}

pub fn solve_cwcm_copeland_sp(instance: &CwcmInstance) -> Result<ManipulationResult> {
    let Rule::Copeland(rule) = instance.rule() else {
        return Err(Error::Contract(format!(
            "Copeland solver called on a {} instance",
            instance.rule()
        )));
    };
    require_sp_or_plateau(instance)?;
    let p = instance.preferred();
    let axis = instance.axis();
    let doubled = doubling_transform(instance.nonmanipulators(), axis);
    let manipulators: Vec<_> = instance.manipulators().iter().map(|w| w.scaled(2)).collect();
    let candidates = if manipulators.is_empty() {
        // nothing to vote; evaluate the transformed election once
        vec![None]
    } else {
        enumerate_consistent_votes(
            axis,
            SPModel::SinglePeaked,
            VoteConstraint::p_uniquely_first(p).and_total(),
        )?
        .into_iter()
        .map(Some)
        .collect()
    };
    for vote in candidates {
        let mut voters = doubled.clone();
        if let Some(vote) = &vote {
            voters.extend(manipulators.iter().map(|w| WeightedVoter {
                order: vote.clone(),
                weight: w.clone(),
            }));
        }
        let profile = Profile::new(instance.names().to_vec(), voters)?;
        if copeland_winners(&profile, rule).contains(&p) {
            let witness = vote.map(|v| instance.uniform(&v)).unwrap_or_default();
            return Ok(ManipulationResult::yes(witness, SolverTag::Polytime));
        }
    }
    Ok(ManipulationResult::no(SolverTag::Polytime))
}
