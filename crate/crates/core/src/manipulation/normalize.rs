//! Rewriting a manipulator's vote so that `p` is ranked uniquely first.
//!
//! Write the vote as `A_wo > P > B_1 > ... > B_l` with `p ∈ P`. If `P`
//! lies on one side of `A` (or `A` is empty) the vote becomes
//! `p > (P - p) > A > B_1 > ... > B_l`; otherwise `P` splits into the part
//! `P'` on `p`'s side of `A` and the part `P''` beyond it, and the vote
//! becomes `p > (P' - p) > A > P'' > B_1 > ... > B_l`. The prefix is laid out
//! as a strict order that grows an axis interval around `p`, which keeps
//! the vote inside every model. The score gap between `p` and any other
//! candidate never shrinks, whatever scoring vector and extension is used.

use crate::error::{Error, Result};
use crate::order::{CandidateId, WeakOrder};
use crate::peakedness::{validate_vote, Axis, SPModel};

pub fn normalize_p_first(
    vote: &WeakOrder,
    axis: &Axis,
    model: SPModel,
    p: CandidateId,
) -> Result<WeakOrder> {
    if validate_vote(vote, axis, model).is_none() {
        return Err(Error::Contract(format!(
            "vote {vote:?} is not {model} with respect to the axis"
        )));
    }
    if vote.ranks_uniquely_first(p) {
        return Ok(vote.clone());
    }
    let groups = vote.groups();
    let p_level = vote.levels()[p.index()];
    let above: Vec<CandidateId> = groups[..p_level].iter().flatten().copied().collect();
    let tied: Vec<CandidateId> = groups[p_level].clone();

    let stages: Vec<Vec<CandidateId>> = if above.is_empty() {
        vec![without(&tied, p)]
    } else {
        let a_lo = above.iter().map(|&c| axis.position(c)).min().unwrap();
        let a_hi = above.iter().map(|&c| axis.position(c)).max().unwrap();
        if tied.iter().any(|&c| (a_lo..=a_hi).contains(&axis.position(c))) {
            return Err(Error::Contract(
                "candidates tied with p sit inside the span of those above it".into(),
            ));
        }
        let (left, right): (Vec<_>, Vec<_>) =
            tied.iter().partition(|&&c| axis.position(c) < a_lo);
        let (near, far) = if axis.position(p) < a_lo {
            (left, right)
        } else {
            (right, left)
        };
        // Case 1 is the special case of an empty far side.
        vec![without(&near, p), above, far]
    };

    let mut lo = axis.position(p);
    let mut hi = lo;
    let mut prefix = vec![p];
    for stage in stages {
        let mut pending = stage;
        while !pending.is_empty() {
            let next = pending
                .iter()
                .position(|&c| {
                    let pos = axis.position(c);
                    pos + 1 == lo || pos == hi + 1
                })
                .ok_or_else(|| {
                    Error::Contract("upper contour set of the vote is not an axis interval".into())
                })?;
            let c = pending.swap_remove(next);
            let pos = axis.position(c);
            if pos < lo {
                lo = pos;
            } else {
                hi = pos;
            }
            prefix.push(c);
        }
    }

    let mut out: Vec<Vec<CandidateId>> = prefix.into_iter().map(|c| vec![c]).collect();
    out.extend(groups[p_level + 1..].iter().cloned());
    let out = WeakOrder::from_groups_unchecked(out);
    if validate_vote(&out, axis, model).is_none() {
        return Err(Error::Contract(format!(
            "normalized vote {out:?} left the {model} domain"
        )));
    }
    Ok(out)
}

fn without(set: &[CandidateId], p: CandidateId) -> Vec<CandidateId> {
    set.iter().copied().filter(|&c| c != p).collect()
}
