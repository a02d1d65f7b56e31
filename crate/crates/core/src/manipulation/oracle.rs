//! Exhaustive CWCM oracle.
//!
//! Every manipulator may cast any model-consistent vote (for scoring rules,
//! by default only votes ranking `p` uniquely first). Under all three rules
//! the outcome depends on the votes only through an additive summary:
//! scores for scoring rules, pairwise margins for Copeland, and the veto
//! weight of every candidate within every remaining-candidate subset for
//! elimination veto. The oracle walks the manipulators in order and keeps
//! every distinct partial summary reachable so far, so it explores all
//! `|votes|^|T|` assignments while merging those that are indistinguishable.
//!
//! The arithmetic here is machine-integer and independent of the exact
//! rational evaluation used by the polynomial-time solvers.

use indexmap::map::Entry;
use indexmap::IndexMap;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{CwcmInstance, ManipulationResult, Rule, SolverTag};
use crate::elimination::{TieBreak, DEFAULT_TIE_BREAK};
use crate::error::{Error, Result};
use crate::order::WeakOrder;
use crate::peakedness::{enumerate_consistent_votes, VoteConstraint};
use crate::scoring::group_offsets;
use crate::scoring::group_score;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Restrict manipulators to votes ranking `p` uniquely first. `None`
    /// restricts for scoring rules only.
    pub p_first: Option<bool>,
    /// Upper bound on distinct partial summaries kept at any step.
    pub max_states: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            p_first: None,
            max_states: 2_000_000,
        }
    }
}

pub fn solve_cwcm_oracle(instance: &CwcmInstance) -> Result<ManipulationResult> {
    solve_cwcm_oracle_with(instance, &OracleConfig::default())
}

pub fn solve_cwcm_oracle_with(
    instance: &CwcmInstance,
    config: &OracleConfig,
) -> Result<ManipulationResult> {
    let p = instance.preferred();
    let p_first = config
        .p_first
        .unwrap_or(matches!(instance.rule(), Rule::Scoring { .. }));
    let constraint = if p_first {
        VoteConstraint::p_uniquely_first(p)
    } else {
        VoteConstraint::none()
    };
    let votes = enumerate_consistent_votes(instance.axis(), instance.model(), constraint)?;
    let summary = Summary::new(instance)?;

    let weights = instance
        .manipulators()
        .iter()
        .map(|w| w.to_u64().map(i128::from))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Capacity("manipulator weight exceeds 64 bits".into()))?;
    let mut total: i128 = weights.iter().sum();
    for v in instance.nonmanipulators() {
        total += v
            .weight
            .to_u64()
            .ok_or_else(|| Error::Capacity("nonmanipulator weight exceeds 64 bits".into()))?
            as i128;
    }
    if total.checked_mul(summary.scale).is_none_or(|x| x > 1i128 << 100) {
        return Err(Error::Capacity("total weight too large for the oracle".into()));
    }

    let base = summary.base(instance)?;
    let features: Vec<Vec<i128>> = votes.iter().map(|v| summary.features(v)).collect();
    // Scores only grow, and p gains at most α_1 per unit weight, so a state
    // in which someone already outscores p's best final score is dead.
    let ceiling = summary.p_ceiling(&base, weights.iter().sum());

    // arena of (parent node, vote index)
    let mut arena: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX)];
    let mut frontier: IndexMap<Vec<i128>, usize> = IndexMap::new();
    frontier.insert(vec![0; summary.dim], 0);
    for &w in &weights {
        if votes.is_empty() {
            return Ok(ManipulationResult::no(SolverTag::Oracle));
        }
        let mut next: IndexMap<Vec<i128>, usize> = IndexMap::with_capacity(frontier.len());
        for (state, &node) in &frontier {
            for (j, f) in features.iter().enumerate() {
                let s: Vec<i128> = state.iter().zip(f).map(|(a, b)| a + w * b).collect();
                if let Some(limit) = ceiling {
                    if s.iter().zip(&base).any(|(x, b)| x + b > limit) {
                        continue;
                    }
                }
                if let Entry::Vacant(slot) = next.entry(s) {
                    arena.push((node, j));
                    slot.insert(arena.len() - 1);
                }
            }
            if next.len() > config.max_states {
                return Err(Error::Capacity(format!(
                    "oracle exceeded {} distinct partial outcomes",
                    config.max_states
                )));
            }
        }
        frontier = next;
    }

    let mut combined = vec![0i128; summary.dim];
    for (state, &node) in &frontier {
        for ((c, b), s) in combined.iter_mut().zip(&base).zip(state) {
            *c = b + s;
        }
        if summary.p_wins(&combined) {
            let mut witness = Vec::with_capacity(weights.len());
            let mut at = node;
            while at != 0 {
                let (parent, j) = arena[at];
                witness.push(votes[j].clone());
                at = parent;
            }
            witness.reverse();
            return Ok(ManipulationResult::yes(witness, SolverTag::Oracle));
        }
    }
    Ok(ManipulationResult::no(SolverTag::Oracle))
}

enum Kind {
    /// Scores scaled by `lcm(1..=m)` so averages stay integral.
    Scoring,
    /// Entry per unordered pair `a < b`: weight preferring a minus weight
    /// preferring b.
    Copeland { numer: i128, denom: i128 },
    /// Entry per (subset, candidate): veto weight within that subset.
    Elimination { name_rank: Vec<usize> },
}

struct Summary<'a> {
    instance: &'a CwcmInstance,
    m: usize,
    dim: usize,
    scale: i128,
    kind: Kind,
}

impl<'a> Summary<'a> {
    fn new(instance: &'a CwcmInstance) -> Result<Self> {
        let m = instance.num_candidates();
        let (dim, scale, kind) = match instance.rule() {
            Rule::Scoring { vector, .. } => {
                let lcm = (1..=m as i128).fold(1i128, |acc, k| acc.lcm(&k));
                let top = vector.alphas().first().copied().unwrap_or(0) as i128;
                (m, lcm * top.max(1), Kind::Scoring)
            }
            Rule::Copeland(rule) => {
                let numer = rule.alpha().numer().to_i128().expect("alpha in [0, 1]");
                let denom = rule.alpha().denom().to_i128().expect("alpha in [0, 1]");
                (m * m, 1, Kind::Copeland { numer, denom })
            }
            Rule::EliminationVeto => {
                if m > 12 {
                    return Err(Error::Capacity("elimination oracle supports m ≤ 12".into()));
                }
                let mut by_name: Vec<usize> = (0..m).collect();
                by_name.sort_by(|&a, &b| instance.names()[a].cmp(&instance.names()[b]));
                let mut name_rank = vec![0; m];
                for (rank, &c) in by_name.iter().enumerate() {
                    name_rank[c] = rank;
                }
                ((1usize << m) * m, 1, Kind::Elimination { name_rank })
            }
        };
        Ok(Summary {
            instance,
            m,
            dim,
            scale,
            kind,
        })
    }

    fn features(&self, vote: &WeakOrder) -> Vec<i128> {
        let m = self.m;
        let mut f = vec![0i128; self.dim];
        match &self.kind {
            Kind::Scoring => {
                let Rule::Scoring { vector, ext } = self.instance.rule() else {
                    unreachable!()
                };
                let lcm = (1..=m as i128).fold(1i128, |acc, k| acc.lcm(&k));
                let r = vote.num_groups();
                for ((i, group), k) in vote.groups().iter().enumerate().zip(group_offsets(vote)) {
                    let (num, den) = group_score(vector, *ext, m, r, i, k, group.len());
                    for c in group {
                        f[c.index()] = num as i128 * (lcm / den as i128);
                    }
                }
            }
            Kind::Copeland { .. } => {
                let levels = vote.levels();
                for a in 0..m {
                    for b in 0..m {
                        if levels[a] < levels[b] {
                            f[a * m + b] += 1;
                            f[b * m + a] -= 1;
                        }
                    }
                }
            }
            Kind::Elimination { .. } => {
                let levels = vote.levels();
                for mask in 0usize..(1 << m) {
                    if mask.count_ones() < 2 {
                        continue;
                    }
                    let bottom = (0..m)
                        .filter(|c| mask >> c & 1 == 1)
                        .map(|c| levels[c])
                        .max()
                        .expect("non-empty subset");
                    for c in (0..m).filter(|c| mask >> c & 1 == 1) {
                        if levels[c] == bottom {
                            f[mask * m + c] = 1;
                        }
                    }
                }
            }
        }
        f
    }

    fn base(&self, instance: &CwcmInstance) -> Result<Vec<i128>> {
        let mut base = vec![0i128; self.dim];
        for v in instance.nonmanipulators() {
            let w = v.weight.to_u64().expect("checked by caller") as i128;
            for (b, f) in base.iter_mut().zip(self.features(&v.order)) {
                *b += w * f;
            }
        }
        Ok(base)
    }

    fn p_ceiling(&self, base: &[i128], manipulator_weight: i128) -> Option<i128> {
        match self.kind {
            Kind::Scoring => {
                let Rule::Scoring { vector, .. } = self.instance.rule() else {
                    unreachable!()
                };
                let lcm = (1..=self.m as i128).fold(1i128, |acc, k| acc.lcm(&k));
                let top = vector.alphas().first().copied().unwrap_or(0) as i128;
                Some(base[self.instance.preferred().index()] + manipulator_weight * top * lcm)
            }
            _ => None,
        }
    }

    fn p_wins(&self, totals: &[i128]) -> bool {
        let m = self.m;
        let p = self.instance.preferred().index();
        match &self.kind {
            Kind::Scoring => totals.iter().all(|&s| s <= totals[p]),
            Kind::Copeland { numer, denom } => {
                // denom * (wins + alpha * ties)
                let score = |c: usize| -> i128 {
                    (0..m)
                        .filter(|&d| d != c)
                        .map(|d| match totals[c * m + d].signum() {
                            1 => *denom,
                            0 => *numer,
                            _ => 0,
                        })
                        .sum()
                };
                let sp = score(p);
                (0..m).all(|c| score(c) <= sp)
            }
            Kind::Elimination { name_rank } => {
                let mut mask = (1usize << m) - 1;
                while mask.count_ones() > 1 {
                    let out = (0..m)
                        .filter(|c| mask >> c & 1 == 1)
                        .max_by(|&a, &b| {
                            let by_veto = totals[mask * m + a].cmp(&totals[mask * m + b]);
                            // among equal vetoes the preferred victim compares greater
                            let by_name = match DEFAULT_TIE_BREAK {
                                TieBreak::SmallestNameFirst => name_rank[b].cmp(&name_rank[a]),
                                TieBreak::LargestNameFirst => name_rank[a].cmp(&name_rank[b]),
                            };
                            by_veto.then(by_name)
                        })
                        .expect("non-empty");
                    if out == p {
                        return false;
                    }
                    mask &= !(1 << out);
                }
                true
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{letter_names, CandidateId, WeightedVoter};
    use crate::pairwise::CopelandRule;
    use crate::peakedness::{Axis, SPModel};
    use crate::scoring::{Extension, ScoringVector};
    use crate::weight::Weight;

    fn inst(rule: Rule, s: Vec<WeightedVoter>, t: Vec<u32>, m: usize, p: usize) -> CwcmInstance {
        CwcmInstance::new(
            letter_names(m),
            s,
            t.into_iter().map(Weight::from).collect(),
            CandidateId(p),
            Axis::identity(m),
            SPModel::SinglePeaked,
            rule,
        )
        .unwrap()
    }

    #[test]
    fn empty_coalition_evaluates_s() {
        let abc = WeightedVoter::new(WeakOrder::from_indices(&[&[0], &[1], &[2]]), 1u32);
        let rule = Rule::Scoring {
            vector: ScoringVector::borda(3),
            ext: Extension::Min,
        };
        let r = solve_cwcm_oracle(&inst(rule.clone(), vec![abc.clone()], vec![], 3, 0)).unwrap();
        assert!(r.decision);
        assert_eq!(r.witness, Some(vec![]));
        let r = solve_cwcm_oracle(&inst(rule, vec![abc], vec![], 3, 1)).unwrap();
        assert!(!r.decision);
    }

    #[test]
    fn witnesses_verify() {
        let s = vec![
            WeightedVoter::new(WeakOrder::from_indices(&[&[0], &[1], &[2], &[3]]), 3u32),
            WeightedVoter::new(WeakOrder::from_indices(&[&[2], &[1, 3], &[0]]), 2u32),
        ];
        let rules = [
            Rule::Scoring {
                vector: ScoringVector::borda(4),
                ext: Extension::Average,
            },
            Rule::Copeland(CopelandRule::from_ratio(1, 2).unwrap()),
            Rule::EliminationVeto,
        ];
        for rule in rules {
            for p in 0..4 {
                let i = inst(rule.clone(), s.clone(), vec![1, 2, 2], 4, p);
                let r = solve_cwcm_oracle(&i).unwrap();
                if let Some(w) = &r.witness {
                    assert!(r.decision);
                    assert!(i.verify_witness(w).unwrap(), "{rule} p={p}");
                }
            }
        }
    }

    /// The summary-based evaluation agrees with the public rule
    /// implementations on every single-vote assignment.
    #[test]
    fn summary_matches_direct_evaluation() {
        let s = vec![
            WeightedVoter::new(WeakOrder::from_indices(&[&[1], &[0, 2], &[3]]), 2u32),
            WeightedVoter::new(WeakOrder::from_indices(&[&[3], &[2], &[1], &[0]]), 1u32),
        ];
        let rules = [
            Rule::Scoring {
                vector: ScoringVector::borda(4),
                ext: Extension::RoundDown,
            },
            Rule::Scoring {
                vector: ScoringVector::veto(4),
                ext: Extension::Average,
            },
            Rule::Copeland(CopelandRule::from_ratio(0, 1).unwrap()),
            Rule::Copeland(CopelandRule::from_ratio(1, 1).unwrap()),
            Rule::EliminationVeto,
        ];
        for rule in rules {
            for p in 0..4 {
                let i = inst(rule.clone(), s.clone(), vec![2], 4, p);
                let summary = Summary::new(&i).unwrap();
                let base = summary.base(&i).unwrap();
                let votes =
                    enumerate_consistent_votes(i.axis(), i.model(), VoteConstraint::none()).unwrap();
                for v in votes {
                    let total: Vec<i128> = base
                        .iter()
                        .zip(summary.features(&v))
                        .map(|(b, f)| b + 2 * f)
                        .collect();
                    let direct = i.preferred_wins(&i.profile_with(std::slice::from_ref(&v)).unwrap()).unwrap();
                    assert_eq!(summary.p_wins(&total), direct, "{rule} p={p} {v:?}");
                }
            }
        }
    }

    #[test]
    fn state_budget() {
        let rule = Rule::Scoring {
            vector: ScoringVector::borda(5),
            ext: Extension::Average,
        };
        let i = inst(rule, vec![], (1..=12).collect(), 5, 2);
        let tiny = OracleConfig {
            p_first: Some(false),
            max_states: 50,
        };
        assert!(matches!(solve_cwcm_oracle_with(&i, &tiny), Err(Error::Capacity(_))));
    }
}
