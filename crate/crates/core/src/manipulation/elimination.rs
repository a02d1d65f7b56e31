//! Elimination veto CWCM for single-peaked and single-plateaued votes.
//!
//! Once the manipulators have positive weight, every round eliminates the
//! leftmost or rightmost remaining axis candidate. An elimination order that
//! some manipulation induces is also induced when every manipulator votes
//! its reverse, and that reverse is single-peaked. So it suffices to try,
//! for each way of peeling the axis from both ends down to `p`, the uniform
//! reverse-order vote.

use super::{require_sp_or_plateau, CwcmInstance, ManipulationResult, Rule, SolverTag};
use crate::error::{Error, Result};
use crate::order::{CandidateId, Profile, WeakOrder};
use crate::peakedness::Axis;

/// All elimination orders obtained by repeatedly removing an end of the
/// axis other than `p`; `p` is last in each.
pub fn end_peeling_orders(axis: &Axis, p: CandidateId) -> Vec<Vec<CandidateId>> {
    fn peel(
        axis: &Axis,
        p_pos: usize,
        lo: usize,
        hi: usize,
        prefix: &mut Vec<CandidateId>,
        out: &mut Vec<Vec<CandidateId>>,
    ) {
        if lo == hi {
            let mut order = prefix.clone();
            order.push(axis.at(p_pos));
            out.push(order);
            return;
        }
        if lo < p_pos {
            prefix.push(axis.at(lo));
            peel(axis, p_pos, lo + 1, hi, prefix, out);
            prefix.pop();
        }
        if hi > p_pos {
            prefix.push(axis.at(hi));
            peel(axis, p_pos, lo, hi - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if axis.is_empty() {
        return out;
    }
    peel(axis, axis.position(p), 0, axis.len() - 1, &mut Vec::new(), &mut out);
    out
}

pub fn solve_cwcm_elimination_veto(instance: &CwcmInstance) -> Result<ManipulationResult> {
    if *instance.rule() != Rule::EliminationVeto {
        return Err(Error::Contract(format!(
            "elimination veto solver called on a {} instance",
            instance.rule()
        )));
    }
    require_sp_or_plateau(instance)?;
    let p = instance.preferred();
    if instance.manipulators().is_empty() {
        let profile = Profile::new(instance.names().to_vec(), instance.nonmanipulators().to_vec())?;
        return Ok(if instance.preferred_wins(&profile)? {
            ManipulationResult::yes(Vec::new(), SolverTag::Polytime)
        } else {
            ManipulationResult::no(SolverTag::Polytime)
        });
    }
    for order in end_peeling_orders(instance.axis(), p) {
        let vote = WeakOrder::total(order.iter().rev().copied());
        let witness = instance.uniform(&vote);
        if instance.preferred_wins(&instance.profile_with(&witness)?)? {
            return Ok(ManipulationResult::yes(witness, SolverTag::Polytime));
        }
    }
    Ok(ManipulationResult::no(SolverTag::Polytime))
}
