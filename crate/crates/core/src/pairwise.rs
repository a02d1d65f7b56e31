//! Weighted majority graphs, Copeland^α and weak Condorcet winners.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::order::{CandidateId, Profile, WeakOrder};
use crate::scoring::ScoreTable;

/// Pairwise margins: `margin(a, b)` is the weight stating `a > b` minus the
/// weight stating `b > a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajorityGraph {
    m: usize,
    margins: Vec<BigInt>,
}

impl MajorityGraph {
    pub fn zeros(m: usize) -> Self {
        MajorityGraph {
            m,
            margins: vec![BigInt::zero(); m * m],
        }
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn margin(&self, a: CandidateId, b: CandidateId) -> &BigInt {
        &self.margins[a.index() * self.m + b.index()]
    }

    /// Strict majority: `a` beats `b`.
    pub fn beats(&self, a: CandidateId, b: CandidateId) -> bool {
        self.margin(a, b).is_positive()
    }

    fn add_vote(&mut self, order: &WeakOrder, weight: &BigInt) {
        let levels = order.levels();
        for a in 0..self.m {
            for b in 0..self.m {
                if levels[a] < levels[b] {
                    self.margins[a * self.m + b] += weight;
                    self.margins[b * self.m + a] -= weight;
                }
            }
        }
    }

    /// Adjacency list of the induced majority graph: for every candidate,
    /// the candidates it beats with the winning margin.
    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        for (a, name_a) in names.iter().enumerate().take(self.m) {
            let mut edges = serde_json::Map::new();
            for (b, name_b) in names.iter().enumerate().take(self.m) {
                let margin = self.margin(CandidateId(a), CandidateId(b));
                if margin.is_positive() {
                    let n: serde_json::Number =
                        margin.to_string().parse().expect("integers are JSON numbers");
                    edges.insert(name_b.clone(), serde_json::Value::Number(n));
                }
            }
            obj.insert(name_a.clone(), serde_json::Value::Object(edges));
        }
        serde_json::Value::Object(obj)
    }
}

pub fn weighted_majority_graph(profile: &Profile) -> MajorityGraph {
    let mut graph = MajorityGraph::zeros(profile.num_candidates());
    for voter in profile.voters() {
        graph.add_vote(&voter.order, &BigInt::from(voter.weight.value().clone()));
    }
    graph
}

/// Copeland^α: one point per pairwise win, α per pairwise tie.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CopelandRule {
    alpha: BigRational,
}

impl CopelandRule {
    pub fn new(alpha: BigRational) -> Result<Self> {
        if alpha.is_negative() || alpha > BigRational::one() {
            return Err(Error::Domain(format!("Copeland alpha {alpha} is outside [0, 1]")));
        }
        Ok(CopelandRule { alpha })
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Domain("Copeland alpha has a zero denominator".into()));
        }
        Self::new(BigRational::new(numer.into(), denom.into()))
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    /// Llull is Copeland with α = 1.
    pub fn is_llull(&self) -> bool {
        self.alpha.is_one()
    }
}

impl FromStr for CopelandRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let alpha = BigRational::from_str(s.trim())
            .map_err(|_| Error::Validation(format!("bad Copeland alpha {s:?}, expected p/q")))?;
        CopelandRule::new(alpha)
    }
}

impl fmt::Display for CopelandRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.alpha)
    }
}

pub fn copeland_scores_from_graph(graph: &MajorityGraph, rule: &CopelandRule) -> ScoreTable {
    let m = graph.num_candidates();
    let scores = (0..m)
        .map(|c| {
            let mut wins = 0i64;
            let mut ties = 0i64;
            for d in (0..m).filter(|&d| d != c) {
                let margin = graph.margin(CandidateId(c), CandidateId(d));
                if margin.is_positive() {
                    wins += 1;
                } else if margin.is_zero() {
                    ties += 1;
                }
            }
            BigRational::from_integer(wins.into()) + &rule.alpha * BigInt::from(ties)
        })
        .collect();
    ScoreTable::from_scores(scores)
}

pub fn copeland_scores(profile: &Profile, rule: &CopelandRule) -> ScoreTable {
    copeland_scores_from_graph(&weighted_majority_graph(profile), rule)
}

pub fn copeland_winners(profile: &Profile, rule: &CopelandRule) -> Vec<CandidateId> {
    copeland_scores(profile, rule).argmax()
}

/// Candidates that beat or tie everybody; possibly none.
pub fn weak_condorcet_winners(profile: &Profile) -> Vec<CandidateId> {
    let graph = weighted_majority_graph(profile);
    let m = profile.num_candidates();
    (0..m)
        .filter(|&c| {
            (0..m).all(|d| d == c || !graph.margin(CandidateId(c), CandidateId(d)).is_negative())
        })
        .map(CandidateId)
        .collect()
}

/// Whether the strict majority relation is transitive.
pub fn is_majority_transitive(profile: &Profile) -> bool {
    let graph = weighted_majority_graph(profile);
    let m = profile.num_candidates();
    let ids: Vec<CandidateId> = (0..m).map(CandidateId).collect();
    for &a in &ids {
        for &b in &ids {
            if !graph.beats(a, b) {
                continue;
            }
            for &c in &ids {
                if graph.beats(b, c) && !graph.beats(a, c) {
                    return false;
                }
            }
        }
    }
    true
}
