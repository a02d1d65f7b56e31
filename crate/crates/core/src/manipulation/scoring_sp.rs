//! Polynomial-time CWCM for scoring rules under single-peaked and
//! single-plateaued votes with ties.
//!
//! All manipulators may rank `p` uniquely first, and in every tractable case
//! below some uniform total-order vote is optimal, so at most two candidate
//! strategies need evaluating.

use num_traits::Zero;

use super::{require_sp_or_plateau, sweep_vote, CwcmInstance, ManipulationResult, Rule, SolverTag};
use crate::error::{Error, Result};
use crate::order::Profile;
use crate::scoring::ScoringVector;

/// Which tractable case a scoring vector falls into for a given axis split.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyTimeCase {
    /// `p` sits at an end of the axis: only one consistent vote ranks it
    /// uniquely first.
    AxisEnd,
    /// `α_2 = α_m`: only the top position carries points.
    SecondIsZero,
    /// `α_1 = α_{⌊(m-1)/2⌋+2}`.
    FlatTop,
    /// The axis-aware product inequality of [`check_l_sp2p`].
    ProductCondition,
    /// `α_1 ≤ 2α_2`, `α_1 > α_2 > α_m` and `α_2 = α_{m-1}`.
    NearlyFlat,
}

/// `(α_1 − α_i)(α_1 − α_j) ≤ (α_i − α_{i+1})(α_j − α_{j+1})` for all
/// `1 < i ≤ m1 + 1` and `1 < j ≤ m2 + 1`.
pub fn check_l_sp2p(vector: &ScoringVector, m1: usize, m2: usize) -> bool {
    let m = vector.len();
    assert_eq!(m1 + m2 + 1, m, "axis split must cover the candidates");
    let a = |k: usize| vector.alpha(k) as i128;
    for i in 2..=m1 + 1 {
        for j in 2..=m2 + 1 {
            // i + 1 and j + 1 stay within 1..=m because both sides are non-empty here
            let lhs = (a(1) - a(i)) * (a(1) - a(j));
            let rhs = (a(i) - a(i + 1)) * (a(j) - a(j + 1));
            if lhs > rhs {
                return false;
            }
        }
    }
    true
}

/// First tractable case that applies, tried in the order end-of-axis,
/// second-is-zero, flat-top, product condition, nearly-flat.
pub fn applicable_case(vector: &ScoringVector, m1: usize, m2: usize) -> Option<PolyTimeCase> {
    let m = vector.len();
    if m1 == 0 || m2 == 0 {
        return Some(PolyTimeCase::AxisEnd);
    }
    let n = vector.normalized();
    let a = |k: usize| n.alpha(k);
    if a(2) == 0 {
        return Some(PolyTimeCase::SecondIsZero);
    }
    let mid = (m - 1) / 2 + 2;
    if mid <= m && a(1) == a(mid) {
        return Some(PolyTimeCase::FlatTop);
    }
    if check_l_sp2p(vector, m1, m2) {
        return Some(PolyTimeCase::ProductCondition);
    }
    if a(1) <= 2 * a(2) && a(1) > a(2) && a(2) > 0 && a(2) == a(m - 1) {
        return Some(PolyTimeCase::NearlyFlat);
    }
    None
}

pub fn solve_cwcm_scoring_sp(instance: &CwcmInstance) -> Result<ManipulationResult> {
    let Rule::Scoring { vector, .. } = instance.rule() else {
        return Err(Error::Contract(format!(
            "scoring solver called on a {} instance",
            instance.rule()
        )));
    };
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
    let (m1, m2) = instance.axis().split_at(p)?;
    let case = applicable_case(vector, m1, m2).ok_or_else(|| {
        Error::NotApplicable(format!(
            "{vector} with {m1} candidates left and {m2} right of p matches no tractable case"
        ))
    })?;
    let strategies = match case {
        // both sweeps coincide when one side is empty
        PolyTimeCase::AxisEnd | PolyTimeCase::SecondIsZero => vec![sweep_vote(instance.axis(), p, true)],
        PolyTimeCase::FlatTop | PolyTimeCase::ProductCondition | PolyTimeCase::NearlyFlat => vec![
            sweep_vote(instance.axis(), p, true),
            sweep_vote(instance.axis(), p, false),
        ],
    };
    for vote in strategies {
        let witness = instance.uniform(&vote);
        if instance.preferred_wins(&instance.profile_with(&witness)?)? {
            return Ok(ManipulationResult::yes(witness, SolverTag::Polytime));
        }
    }
    Ok(ManipulationResult::no(SolverTag::Polytime))
}

/// Whether every entry of the vector is zero after normalization.
pub fn is_trivial(vector: &ScoringVector) -> bool {
    vector.normalized().alphas().iter().all(Zero::is_zero)
}
