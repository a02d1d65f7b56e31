//! Partition and its reduction to ⟨4,3,2,0,0⟩-CWCM on the axis
//! `a1 < p < b1 < b2 < b3`.

use serde::{Deserialize, Serialize};

use super::{CwcmInstance, Rule};
use crate::error::{Error, Result};
use crate::order::{CandidateId, WeakOrder, WeightedVoter};
use crate::peakedness::{Axis, SPModel};
use crate::scoring::{Extension, ScoringVector};
use crate::weight::Weight;

/// Candidate names of the reduced election, in axis order.
pub const REDUCTION_NAMES: [&str; 5] = ["a1", "p", "b1", "b2", "b3"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionInstance {
    items: Vec<u64>,
}

impl PartitionInstance {
    /// Items must be positive. An odd total is accepted; it simply has no
    /// equal split.
    pub fn new(items: Vec<u64>) -> Result<Self> {
        if items.contains(&0) {
            return Err(Error::Validation("partition items must be positive".into()));
        }
        Ok(PartitionInstance { items })
    }

    pub fn items(&self) -> &[u64] {
        &self.items
    }

    pub fn total(&self) -> u64 {
        self.items.iter().sum()
    }

    /// `K` with `Σk_i = 2K`, if the total is even.
    pub fn half_sum(&self) -> Option<u64> {
        let total = self.total();
        total.is_multiple_of(2).then_some(total / 2)
    }
}

/// Subset-sum dynamic program over `0..=K`.
pub fn solve_partition(inst: &PartitionInstance) -> bool {
    find_partition(inst).is_some()
}

/// Indices of a subcollection summing to `K`, if one exists.
pub fn find_partition(inst: &PartitionInstance) -> Option<Vec<usize>> {
    let k = inst.half_sum()? as usize;
    // first[s] = index of the item that first reached sum s
    let mut first: Vec<Option<usize>> = vec![None; k + 1];
    let mut reached = vec![false; k + 1];
    reached[0] = true;
    for (i, &item) in inst.items.iter().enumerate() {
        let item = item as usize;
        for s in (item..=k).rev() {
            if !reached[s] && reached[s - item] {
                reached[s] = true;
                first[s] = Some(i);
            }
        }
    }
    if !reached[k] {
        return None;
    }
    let mut subset = Vec::new();
    let mut s = k;
    while s > 0 {
        let i = first[s].expect("reached sums record their item");
        subset.push(i);
        s -= inst.items[i] as usize;
    }
    subset.reverse();
    Some(subset)
}

/// The CWCM instance that is a yes-instance iff `inst` has an equal split.
///
/// Nonmanipulators are `20K: a1 > p > b1 > b2 > b3` and
/// `8K: b1 > b2 > b3 > p > a1` (`24K` and `9K` for Min); manipulator `i`
/// has weight `4k_i`. For an odd total every item is doubled first, which
/// keeps the answer (no) and makes all weights integral.
pub fn reduce_partition_to_cwcm(inst: &PartitionInstance, ext: Extension) -> Result<CwcmInstance> {
    if inst.items.is_empty() {
        return Err(Error::Validation("partition instance has no items".into()));
    }
    let (k, scale) = match inst.half_sum() {
        Some(k) => (k, 1),
        None => (inst.total(), 2),
    };
    let (w_first, w_second) = match ext {
        Extension::Min => (24 * k, 9 * k),
        _ => (20 * k, 8 * k),
    };
    let [a1, p, b1, b2, b3] = [0, 1, 2, 3, 4].map(CandidateId);
    let nonmanipulators = vec![
        WeightedVoter::new(WeakOrder::total([a1, p, b1, b2, b3]), w_first),
        WeightedVoter::new(WeakOrder::total([b1, b2, b3, p, a1]), w_second),
    ];
    let manipulators = inst
        .items
        .iter()
        .map(|&item| Weight::from(4 * scale * item))
        .collect();
    CwcmInstance::new(
        REDUCTION_NAMES.iter().map(|s| s.to_string()).collect(),
        nonmanipulators,
        manipulators,
        p,
        Axis::identity(5),
        SPModel::SinglePeaked,
        Rule::Scoring {
            vector: reduction_vector(),
            ext,
        },
    )
}

pub fn reduction_vector() -> ScoringVector {
    ScoringVector::new(vec![4, 3, 2, 0, 0]).expect("non-increasing")
}

/// Manipulator votes realizing a split: members of `subset` vote the first
/// order, everyone else the second. Under Max (and RoundDown, Average) the
/// first order is `p > a1 > b1 > b2 > b3`; under Min it is
/// `p > a1 ~ b1 > b2 > b3`. The second is `p > b1 > b2 > b3 > a1`.
pub fn half_half_witness(t: usize, subset: &[usize], ext: Extension) -> Vec<WeakOrder> {
    let first = match ext {
        Extension::Min => WeakOrder::from_indices(&[&[1], &[0, 2], &[3], &[4]]),
        _ => WeakOrder::from_indices(&[&[1], &[0], &[2], &[3], &[4]]),
    };
    let second = WeakOrder::from_indices(&[&[1], &[2], &[3], &[4], &[0]]);
    (0..t)
        .map(|i| {
            if subset.contains(&i) {
                first.clone()
            } else {
                second.clone()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scoring::score_profile;
    use num_rational::BigRational;

    fn brute_force(items: &[u64]) -> bool {
        let total: u64 = items.iter().sum();
        (0u32..1 << items.len()).any(|mask| {
            let s: u64 = (0..items.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| items[i])
                .sum();
            2 * s == total
        })
    }

    #[test]
    fn small_instances() {
        assert!(solve_partition(&PartitionInstance::new(vec![1, 1, 2]).unwrap()));
        assert!(!solve_partition(&PartitionInstance::new(vec![1, 1, 1]).unwrap()));
        assert!(!solve_partition(&PartitionInstance::new(vec![1, 5]).unwrap()));
        assert!(solve_partition(&PartitionInstance::new(vec![]).unwrap()));
        assert!(PartitionInstance::new(vec![0, 1]).is_err());
    }

    #[test]
    fn dp_matches_subset_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let t = rng.gen_range(1..=12);
            let items: Vec<u64> = (0..t).map(|_| rng.gen_range(1..=20)).collect();
            let inst = PartitionInstance::new(items.clone()).unwrap();
            assert_eq!(solve_partition(&inst), brute_force(&items), "{items:?}");
            if let Some(subset) = find_partition(&inst) {
                let s: u64 = subset.iter().map(|&i| items[i]).sum();
                assert_eq!(Some(s), inst.half_sum());
            }
        }
    }

    fn scores(ext: Extension, items: Vec<u64>) -> Vec<BigRational> {
        let inst = PartitionInstance::new(items).unwrap();
        let subset = find_partition(&inst).unwrap();
        let cwcm = reduce_partition_to_cwcm(&inst, ext).unwrap();
        let votes = half_half_witness(inst.items().len(), &subset, ext);
        let profile = cwcm.profile_with(&votes).unwrap();
        score_profile(&profile, &reduction_vector(), ext).unwrap().scores().to_vec()
    }

    #[test]
    fn half_half_identities() {
        // K = 2
        let r = |n: i64| BigRational::from_integer(n.into());
        let max = scores(Extension::Max, vec![1, 1, 2]);
        assert_eq!(&max[..3], &[r(184), r(184), r(184)]);
        let min = scores(Extension::Min, vec![1, 1, 2]);
        assert_eq!(&min[..3], &[r(208), r(208), r(208)]);
    }

    #[test]
    fn odd_total_doubles_items() {
        let inst = PartitionInstance::new(vec![1, 1, 1]).unwrap();
        let cwcm = reduce_partition_to_cwcm(&inst, Extension::Min).unwrap();
        let w: Vec<u64> = cwcm.manipulators().iter().map(|w| w.to_u64().unwrap()).collect();
        assert_eq!(w, vec![8, 8, 8]);
        assert_eq!(cwcm.nonmanipulators()[0].weight.to_u64(), Some(72));
        assert_eq!(cwcm.nonmanipulators()[1].weight.to_u64(), Some(27));
    }
}
