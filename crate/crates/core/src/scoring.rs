//! Positional scoring rules and their extensions to votes with ties.
//!
//! For a vote `G_1 > ... > G_r` with `k_i` candidates strictly above `G_i`,
//! each member of `G_i` receives
//!
//! | extension  | score                                   |
//! |------------|-----------------------------------------|
//! | min        | `α[k_i + |G_i|]`                        |
//! | max        | `α[k_i + 1]`                            |
//! | round down | `α[m - r + i]`                          |
//! | average    | mean of `α[k_i + 1 ..= k_i + |G_i|]`    |
//!
//! (positions one-based). All scores are exact rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::{CandidateId, Profile, WeakOrder};

/// `⟨α_1, ..., α_m⟩` with `α_1 ≥ ... ≥ α_m ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct ScoringVector(Vec<u64>);

impl ScoringVector {
    pub fn new(alphas: Vec<u64>) -> Result<Self> {
        if alphas.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Validation(format!(
                "scoring vector {alphas:?} is not non-increasing"
            )));
        }
        Ok(ScoringVector(alphas))
    }

    pub fn plurality(m: usize) -> Self {
        ScoringVector((0..m).map(|i| u64::from(i == 0)).collect())
    }

    pub fn veto(m: usize) -> Self {
        ScoringVector((0..m).map(|i| u64::from(i + 1 < m)).collect())
    }

    pub fn borda(m: usize) -> Self {
        ScoringVector((0..m).rev().map(|i| i as u64).collect())
    }

    pub fn triviality(m: usize) -> Self {
        ScoringVector(vec![0; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn alphas(&self) -> &[u64] {
        &self.0
    }

    /// One-based access, `alpha(1)` is the top score.
    #[inline]
    pub fn alpha(&self, position: usize) -> u64 {
        self.0[position - 1]
    }

    /// The same rule shifted so the last entry is zero.
    pub fn normalized(&self) -> ScoringVector {
        let last = self.0.last().copied().unwrap_or(0);
        ScoringVector(self.0.iter().map(|a| a - last).collect())
    }
}

impl TryFrom<Vec<u64>> for ScoringVector {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        ScoringVector::new(v)
    }
}

impl From<ScoringVector> for Vec<u64> {
    fn from(v: ScoringVector) -> Self {
        v.0
    }
}

impl FromStr for ScoringVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let alphas = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Validation(format!("bad scoring entry {:?}", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        ScoringVector::new(alphas)
    }
}

impl fmt::Display for ScoringVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "⟨{}⟩", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Extension {
    Min,
    Max,
    RoundDown,
    Average,
}

impl Extension {
    pub const ALL: [Extension; 4] = [
        Extension::Min,
        Extension::Max,
        Extension::RoundDown,
        Extension::Average,
    ];
}

impl FromStr for Extension {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "min" => Ok(Extension::Min),
            "max" => Ok(Extension::Max),
            "round-down" | "rounddown" | "round_down" => Ok(Extension::RoundDown),
            "average" | "avg" => Ok(Extension::Average),
            other => Err(Error::Validation(format!("unknown extension {other:?}"))),
        }
    }
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Extension::Min => "min",
            Extension::Max => "max",
            Extension::RoundDown => "round-down",
            Extension::Average => "average",
        })
    }
}

/// Exact score of every candidate, indexed by candidate id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreTable(Vec<BigRational>);

impl ScoreTable {
    pub fn zeros(m: usize) -> Self {
        ScoreTable(vec![BigRational::zero(); m])
    }

    pub fn from_scores(scores: Vec<BigRational>) -> Self {
        ScoreTable(scores)
    }

    pub fn get(&self, c: CandidateId) -> &BigRational {
        &self.0[c.index()]
    }

    pub fn scores(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Candidates attaining the maximum score, in id order.
    pub fn argmax(&self) -> Vec<CandidateId> {
        let Some(best) = self.0.iter().max() else {
            return Vec::new();
        };
        (0..self.0.len())
            .filter(|&i| &self.0[i] == best)
            .map(CandidateId)
            .collect()
    }

    /// JSON object from candidate name to `"p/q"`, in id order.
    pub fn to_json(&self, profile_names: &[String]) -> serde_json::Value {
        let map = profile_names
            .iter()
            .zip(&self.0)
            .map(|(n, s)| (n.clone(), serde_json::Value::String(s.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(value: &serde_json::Value, names: &[String]) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Validation("score table must be a JSON object".into()))?;
        let scores = names
            .iter()
            .map(|n| {
                let text = obj
                    .get(n)
                    .and_then(|v| v.as_str())
                    .ok_or_else(|| Error::Validation(format!("no score for {n:?}")))?;
                BigRational::from_str(text)
                    .map_err(|_| Error::Validation(format!("bad rational {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ScoreTable(scores))
    }
}

/// `k_i` for every group: how many candidates are strictly above it.
pub fn group_offsets(order: &WeakOrder) -> Vec<usize> {
    order
        .groups()
        .iter()
        .scan(0, |acc, g| {
            let k = *acc;
            *acc += g.len();
            Some(k)
        })
        .collect()
}

/// Score of every member of group `i` (zero-based), as a fraction
/// `numerator / denominator` with the denominator equal to 1 except for
/// the average extension.
pub(crate) fn group_score(
    vector: &ScoringVector,
    ext: Extension,
    m: usize,
    r: usize,
    i: usize,
    k: usize,
    size: usize,
) -> (u64, u64) {
    match ext {
        Extension::Min => (vector.alpha(k + size), 1),
        Extension::Max => (vector.alpha(k + 1), 1),
        Extension::RoundDown => (vector.alpha(m - r + i + 1), 1),
        Extension::Average => {
            let sum: u64 = (k + 1..=k + size).map(|j| vector.alpha(j)).sum();
            (sum, size as u64)
        }
    }
}

pub fn score_vote(order: &WeakOrder, vector: &ScoringVector, ext: Extension) -> Result<ScoreTable> {
    let m = order.num_candidates();
    if vector.len() != m {
        return Err(Error::Dimension {
            expected: m,
            actual: vector.len(),
        });
    }
    let mut table = ScoreTable::zeros(m);
    let r = order.num_groups();
    for ((i, group), k) in order.groups().iter().enumerate().zip(group_offsets(order)) {
        let (num, den) = group_score(vector, ext, m, r, i, k, group.len());
        let score = BigRational::new(BigInt::from(num), BigInt::from(den));
        for &c in group {
            table.0[c.index()] = score.clone();
        }
    }
    Ok(table)
}

pub fn score_profile(
    profile: &Profile,
    vector: &ScoringVector,
    ext: Extension,
) -> Result<ScoreTable> {
    let m = profile.num_candidates();
    if vector.len() != m {
        return Err(Error::Dimension {
            expected: m,
            actual: vector.len(),
        });
    }
    let mut total = ScoreTable::zeros(m);
    for voter in profile.voters() {
        let vote = score_vote(&voter.order, vector, ext)?;
        let w = BigRational::from_integer(BigInt::from(BigUint::clone(voter.weight.value())));
        for (acc, s) in total.0.iter_mut().zip(vote.0) {
            *acc += s * &w;
        }
    }
    Ok(total)
}

/// Nonunique winners: every candidate with maximum score.
pub fn scoring_winners(
    profile: &Profile,
    vector: &ScoringVector,
    ext: Extension,
) -> Result<Vec<CandidateId>> {
    Ok(score_profile(profile, vector, ext)?.argmax())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::WeightedVoter;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| q(x, 1)).collect()
    }

    fn example_vote() -> WeakOrder {
        WeakOrder::from_indices(&[&[0, 1], &[2, 3], &[4]])
    }

    #[test]
    fn offsets() {
        assert_eq!(group_offsets(&example_vote()), vec![0, 2, 4]);
        assert_eq!(
            group_offsets(&WeakOrder::total((0..4).map(CandidateId))),
            vec![0, 1, 2, 3]
        );
        assert_eq!(group_offsets(&WeakOrder::from_indices(&[&[0, 1, 2]])), vec![0]);
    }

    #[test]
    fn borda_extensions_on_tied_vote() {
        let b = ScoringVector::borda(5);
        let v = example_vote();
        let table = |e| score_vote(&v, &b, e).unwrap().0;
        assert_eq!(table(Extension::Min), ints(&[3, 3, 1, 1, 0]));
        assert_eq!(table(Extension::Max), ints(&[4, 4, 2, 2, 0]));
        assert_eq!(table(Extension::RoundDown), ints(&[2, 2, 1, 1, 0]));
        assert_eq!(
            table(Extension::Average),
            vec![q(7, 2), q(7, 2), q(3, 2), q(3, 2), q(0, 1)]
        );
    }

    #[test]
    fn triviality_scores_zero() {
        for e in Extension::ALL {
            let t = score_vote(&example_vote(), &ScoringVector::triviality(5), e).unwrap();
            assert!(t.0.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn dimension_mismatch() {
        let err = score_vote(&example_vote(), &ScoringVector::borda(4), Extension::Min);
        assert_eq!(
            err,
            Err(Error::Dimension {
                expected: 5,
                actual: 4
            })
        );
    }

    #[test]
    fn named_vectors() {
        assert_eq!(ScoringVector::plurality(3).alphas(), &[1, 0, 0]);
        assert_eq!(ScoringVector::veto(3).alphas(), &[1, 1, 0]);
        assert_eq!(ScoringVector::borda(4).alphas(), &[3, 2, 1, 0]);
        assert!(ScoringVector::new(vec![1, 2]).is_err());
        assert_eq!("4,3,2,0,0".parse::<ScoringVector>().unwrap().alphas(), &[4, 3, 2, 0, 0]);
    }

    #[test]
    fn profile_scores_and_winners() {
        let abc = WeakOrder::from_indices(&[&[0], &[1], &[2]]);
        let bac = WeakOrder::from_indices(&[&[1], &[0], &[2]]);
        let p = Profile::with_letters(
            3,
            vec![WeightedVoter::new(abc.clone(), 2u32), WeightedVoter::new(bac, 1u32)],
        )
        .unwrap();
        let winners = scoring_winners(&p, &ScoringVector::plurality(3), Extension::Min).unwrap();
        assert_eq!(winners, vec![CandidateId(0)]);

        let single = Profile::with_letters(3, vec![WeightedVoter::new(abc.clone(), 3u32)]).unwrap();
        let b = ScoringVector::borda(3);
        let tripled = score_profile(&single, &b, Extension::Average).unwrap();
        assert_eq!(tripled.0, ints(&[6, 3, 0]));

        let empty = Profile::with_letters(3, vec![]).unwrap();
        assert_eq!(score_profile(&empty, &b, Extension::Max).unwrap().0, ints(&[0, 0, 0]));
        assert_eq!(
            scoring_winners(&empty, &b, Extension::Max).unwrap().len(),
            3
        );
    }

    #[test]
    fn opposed_votes_tie() {
        let ab = WeakOrder::from_indices(&[&[0], &[1]]);
        let ba = WeakOrder::from_indices(&[&[1], &[0]]);
        let p = Profile::with_letters(
            2,
            vec![WeightedVoter::new(ab, 4u32), WeightedVoter::new(ba, 4u32)],
        )
        .unwrap();
        let w = scoring_winners(&p, &ScoringVector::borda(2), Extension::Min).unwrap();
        assert_eq!(w, vec![CandidateId(0), CandidateId(1)]);
    }

    #[test]
    fn all_tied_average_everyone_wins() {
        let p = Profile::with_letters(
            4,
            vec![WeightedVoter::new(WeakOrder::from_indices(&[&[0, 1, 2, 3]]), 1u32)],
        )
        .unwrap();
        let w = scoring_winners(&p, &ScoringVector::borda(4), Extension::Average).unwrap();
        assert_eq!(w.len(), 4);
    }

    #[test]
    fn score_table_json_round_trip() {
        let names: Vec<String> = crate::order::letter_names(5);
        let t = score_vote(&example_vote(), &ScoringVector::borda(5), Extension::Average).unwrap();
        let json = t.to_json(&names);
        assert_eq!(
            serde_json::to_string(&json).unwrap(),
            r#"{"a":"7/2","b":"7/2","c":"3/2","d":"3/2","e":"0"}"#
        );
        assert_eq!(ScoreTable::from_json(&json, &names).unwrap(), t);
    }
}
