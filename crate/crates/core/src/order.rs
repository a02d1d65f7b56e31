//! Ballots, voters and profiles.
//!
//! Candidates are dense indices `0..m` with a separate name table. A ballot
//! is a [`WeakOrder`]: an ordered partition of the candidates into
//! indifference groups, best group first. Groups are kept as sorted id lists
//! so that structural equality is also semantic equality.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::weight::Weight;

/// Dense candidate index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateId(pub usize);

impl CandidateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Candidate {
    pub id: CandidateId,
    pub name: String,
}

/// How restrictive the ties in a weak order are.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderClass {
    Total,
    /// Ties only among the bottom-ranked candidates.
    TopOrder,
    /// Ties only among the top-ranked candidates.
    BottomOrder,
    Weak,
}

/// A complete ranking with ties, written `G_1 > G_2 > ... > G_r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeakOrder {
    groups: Vec<Vec<CandidateId>>,
}

impl WeakOrder {
    /// Builds a weak order over the candidates `0..m`.
    pub fn new(groups: Vec<Vec<CandidateId>>, m: usize) -> Result<Self> {
        let order = Self::from_groups_unchecked(groups);
        order.check_partition(m)?;
        Ok(order)
    }

    /// Builds a weak order over whatever candidates the groups mention.
    /// Groups are sorted but the partition property is not checked.
    pub(crate) fn from_groups_unchecked(mut groups: Vec<Vec<CandidateId>>) -> Self {
        for g in &mut groups {
            g.sort_unstable();
        }
        WeakOrder { groups }
    }

    /// The total order listing `ids` from best to worst.
    pub fn total(ids: impl IntoIterator<Item = CandidateId>) -> Self {
        WeakOrder {
            groups: ids.into_iter().map(|c| vec![c]).collect(),
        }
    }

    /// Convenience constructor from raw indices, mainly for tests.
    pub fn from_indices(groups: &[&[usize]]) -> Self {
        Self::from_groups_unchecked(
            groups
                .iter()
                .map(|g| g.iter().map(|&c| CandidateId(c)).collect())
                .collect(),
        )
    }

    fn check_partition(&self, m: usize) -> Result<()> {
        if self.groups.is_empty() {
            return Err(Error::Validation("a weak order needs at least one group".into()));
        }
        let mut seen = vec![false; m];
        let mut count = 0;
        for group in &self.groups {
            if group.is_empty() {
                return Err(Error::Validation("empty indifference group".into()));
            }
            for &c in group {
                if c.0 >= m {
                    return Err(Error::Validation(format!(
                        "candidate {} is not among the {m} declared candidates",
                        c.0 + 1
                    )));
                }
                if seen[c.0] {
                    return Err(Error::Validation(format!(
                        "candidate {} appears twice in one ballot",
                        c.0 + 1
                    )));
                }
                seen[c.0] = true;
                count += 1;
            }
        }
        if count != m {
            return Err(Error::Validation(format!(
                "incomplete ballot: ranks {count} of {m} candidates"
            )));
        }
        Ok(())
    }

    pub fn groups(&self) -> &[Vec<CandidateId>] {
        &self.groups
    }

    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn num_candidates(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    /// Group index of every candidate (0 = most preferred), indexed by id.
    pub fn levels(&self) -> Vec<usize> {
        let mut levels = vec![usize::MAX; self.num_candidates()];
        for (level, group) in self.groups.iter().enumerate() {
            for &c in group {
                levels[c.0] = level;
            }
        }
        levels
    }

    pub fn top(&self) -> &[CandidateId] {
        &self.groups[0]
    }

    pub fn is_total(&self) -> bool {
        self.groups.iter().all(|g| g.len() == 1)
    }

    /// True when `c` alone forms the first group.
    pub fn ranks_uniquely_first(&self, c: CandidateId) -> bool {
        self.groups[0].len() == 1 && self.groups[0][0] == c
    }

    /// Deletes every candidate not in `keep` and drops emptied groups.
    /// Candidate ids are left untouched.
    pub fn restrict(&self, keep: impl Fn(CandidateId) -> bool) -> WeakOrder {
        WeakOrder {
            groups: self
                .groups
                .iter()
                .map(|g| g.iter().copied().filter(|&c| keep(c)).collect::<Vec<_>>())
                .filter(|g| !g.is_empty())
                .collect(),
        }
    }
}

/// Most specific class of `order`; total orders take precedence.
pub fn classify_order(order: &WeakOrder) -> OrderClass {
    let groups = order.groups();
    let last = groups.len() - 1;
    let tied = |i: usize| groups[i].len() > 1;
    if !(0..=last).any(tied) {
        OrderClass::Total
    } else if !(0..last).any(tied) {
        OrderClass::TopOrder
    } else if !(1..=last).any(tied) {
        OrderClass::BottomOrder
    } else {
        OrderClass::Weak
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedVoter {
    pub order: WeakOrder,
    pub weight: Weight,
}

impl WeightedVoter {
    pub fn new(order: WeakOrder, weight: impl Into<Weight>) -> Self {
        WeightedVoter {
            order,
            weight: weight.into(),
        }
    }
}

/// A candidate set together with weighted voters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    candidates: Vec<Candidate>,
    voters: Vec<WeightedVoter>,
}

impl Profile {
    pub fn new(names: Vec<String>, voters: Vec<WeightedVoter>) -> Result<Self> {
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() {
                return Err(Error::Validation("candidate names must be non-empty".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::Validation(format!("duplicate candidate name {name:?}")));
            }
        }
        let m = names.len();
        for voter in &voters {
            voter.order.check_partition(m)?;
        }
        let candidates = names
            .into_iter()
            .enumerate()
            .map(|(i, name)| Candidate {
                id: CandidateId(i),
                name,
            })
            .collect();
        Ok(Profile { candidates, voters })
    }

    /// Candidates named `a`, `b`, `c`, ... (then `c26`, `c27`, ...).
    pub fn with_letters(m: usize, voters: Vec<WeightedVoter>) -> Result<Self> {
        Self::new(letter_names(m), voters)
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn voters(&self) -> &[WeightedVoter] {
        &self.voters
    }

    pub fn name(&self, c: CandidateId) -> &str {
        &self.candidates[c.0].name
    }

    pub fn names(&self) -> Vec<String> {
        self.candidates.iter().map(|c| c.name.clone()).collect()
    }

    pub fn candidate_by_name(&self, name: &str) -> Option<CandidateId> {
        self.candidates.iter().find(|c| c.name == name).map(|c| c.id)
    }

    pub fn ids(&self) -> impl Iterator<Item = CandidateId> + '_ {
        self.candidates.iter().map(|c| c.id)
    }

    /// A copy with extra voters appended. The new orders must cover the
    /// same candidates.
    pub fn with_voters(&self, extra: impl IntoIterator<Item = WeightedVoter>) -> Result<Self> {
        let mut voters = self.voters.clone();
        voters.extend(extra);
        Profile::new(self.names(), voters)
    }
}

pub fn letter_names(m: usize) -> Vec<String> {
    (0..m)
        .map(|i| {
            if i < 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("c{i}")
            }
        })
        .collect()
}

/// Every weak order over `0..m`, in no particular order. There are
/// Fubini-many (1, 3, 13, 75, 541, 4683, ...), so keep `m` small.
pub fn all_weak_orders(m: usize) -> Vec<WeakOrder> {
    // Assign each candidate a level in 0..m, keep assignments whose used
    // levels are exactly 0..k.
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let mut levels = vec![0usize; m];
    loop {
        let max = *levels.iter().max().unwrap();
        let mut used = vec![false; max + 1];
        for &l in &levels {
            used[l] = true;
        }
        if used.iter().all(|&u| u) {
            let mut groups = vec![Vec::new(); max + 1];
            for (c, &l) in levels.iter().enumerate() {
                groups[l].push(CandidateId(c));
            }
            out.push(WeakOrder { groups });
        }
        // odometer
        let mut i = 0;
        loop {
            if i == m {
                return out;
            }
            levels[i] += 1;
            if levels[i] < m {
                break;
            }
            levels[i] = 0;
            i += 1;
        }
    }
}
