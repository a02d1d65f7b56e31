//! Single-peakedness for votes with ties.
//!
//! A vote is checked against an axis (a left-to-right total order of the
//! candidates) under one of four models:
//!
//! * **single-peaked**: a unique top candidate, strictly increasing to its
//!   left and strictly decreasing to its right;
//! * **single-plateaued**: as above, but the top group may be any contiguous
//!   plateau;
//! * **outside options**: single-peaked on a central segment, with every
//!   candidate outside that segment tied and ranked below it;
//! * **possibly single-peaked**: weakly increasing then weakly decreasing
//!   around a contiguous top group.
//!
//! Validation returns a [`PeakDecomposition`] witness on success. Axis
//! search and vote enumeration are exhaustive and meant for small `m`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::{CandidateId, Profile, WeakOrder};

/// Largest candidate count accepted by the exhaustive procedures.
pub const DEFAULT_ENUMERATION_CAP: usize = 9;

/// A societal axis, leftmost candidate first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Axis {
    order: Vec<CandidateId>,
    position: Vec<usize>,
}

impl Axis {
    pub fn new(order: Vec<CandidateId>) -> Result<Self> {
        let m = order.len();
        let mut position = vec![usize::MAX; m];
        for (i, c) in order.iter().enumerate() {
            if c.index() >= m || position[c.index()] != usize::MAX {
                return Err(Error::Validation(format!(
                    "axis {order:?} is not a permutation of the candidates"
                )));
            }
            position[c.index()] = i;
        }
        Ok(Axis { order, position })
    }

    pub fn from_indices(order: &[usize]) -> Result<Self> {
        Self::new(order.iter().map(|&c| CandidateId(c)).collect())
    }

    /// The axis `0 < 1 < ... < m-1`.
    pub fn identity(m: usize) -> Self {
        Self::new((0..m).map(CandidateId).collect()).expect("identity is a permutation")
    }

    pub fn from_names(names: &[impl AsRef<str>], profile: &Profile) -> Result<Self> {
        let order = names
            .iter()
            .map(|n| {
                profile
                    .candidate_by_name(n.as_ref())
                    .ok_or_else(|| Error::Validation(format!("unknown candidate {:?}", n.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        if order.len() != profile.num_candidates() {
            return Err(Error::Validation(format!(
                "axis lists {} of {} candidates",
                order.len(),
                profile.num_candidates()
            )));
        }
        Axis::new(order)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[CandidateId] {
        &self.order
    }

    pub fn at(&self, position: usize) -> CandidateId {
        self.order[position]
    }

    pub fn position(&self, c: CandidateId) -> usize {
        self.position[c.index()]
    }

    pub fn reversed(&self) -> Axis {
        Axis::new(self.order.iter().rev().copied().collect()).expect("still a permutation")
    }

    /// Representative of `{self, self.reversed()}` whose first id is
    /// smaller than its last.
    pub fn canonical(&self) -> Axis {
        match (self.order.first(), self.order.last()) {
            (Some(first), Some(last)) if first > last => self.reversed(),
            _ => self.clone(),
        }
    }

    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        self.order
            .iter()
            .map(|c| serde_json::Value::String(names[c.index()].clone()))
            .collect()
    }

    /// `(m1, m2)`: how many candidates lie left and right of `p`.
    pub fn split_at(&self, p: CandidateId) -> Result<(usize, usize)> {
        if p.index() >= self.len() {
            return Err(Error::Domain(format!("candidate {p} is not on the axis")));
        }
        let left = self.position(p);
        Ok((left, self.len() - left - 1))
    }
}

pub fn split_at(axis: &Axis, p: CandidateId) -> Result<(usize, usize)> {
    axis.split_at(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SPModel {
    SinglePeaked,
    SinglePlateaued,
    OutsideOptions,
    PossiblySinglePeaked,
}

impl SPModel {
    pub const ALL: [SPModel; 4] = [
        SPModel::SinglePeaked,
        SPModel::SinglePlateaued,
        SPModel::OutsideOptions,
        SPModel::PossiblySinglePeaked,
    ];
}

impl FromStr for SPModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "single-peaked" | "sp" => Ok(SPModel::SinglePeaked),
            "single-plateaued" | "plateaued" => Ok(SPModel::SinglePlateaued),
            "outside-options" | "oo" => Ok(SPModel::OutsideOptions),
            "possibly-single-peaked" | "possibly" | "psp" => Ok(SPModel::PossiblySinglePeaked),
            other => Err(Error::Validation(format!("unknown model {other:?}"))),
        }
    }
}

impl fmt::Display for SPModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SPModel::SinglePeaked => "single-peaked",
            SPModel::SinglePlateaued => "single-plateaued",
            SPModel::OutsideOptions => "outside-options",
            SPModel::PossiblySinglePeaked => "possibly-single-peaked",
        })
    }
}

/// Axis positions split into `O1 | X | Y | Z | O2`, left to right.
///
/// `Y` holds the top of the vote, `X` rises towards it, `Z` falls away from
/// it, and `O1`/`O2` are the tied outside options. An all-tied vote under
/// the outside-options model is witnessed by `O1` spanning the whole axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeakDecomposition {
    pub o1: Range<usize>,
    pub x: Range<usize>,
    pub y: Range<usize>,
    pub z: Range<usize>,
    pub o2: Range<usize>,
}

impl PeakDecomposition {
    fn core(x_end: usize, y_end: usize, m: usize, offset: usize) -> Self {
        PeakDecomposition {
            o1: 0..offset,
            x: offset..x_end,
            y: x_end..y_end,
            z: y_end..m,
            o2: m..m,
        }
    }

    /// Segments as lists of candidates.
    pub fn segments<'a>(&self, axis: &'a Axis) -> [&'a [CandidateId]; 5] {
        let o = axis.order();
        [
            &o[self.o1.clone()],
            &o[self.x.clone()],
            &o[self.y.clone()],
            &o[self.z.clone()],
            &o[self.o2.clone()],
        ]
    }

    pub fn to_json(&self, axis: &Axis, names: &[String]) -> serde_json::Value {
        let seg = |s: &[CandidateId]| -> serde_json::Value {
            s.iter()
                .map(|c| serde_json::Value::String(names[c.index()].clone()))
                .collect()
        };
        let [o1, x, y, z, o2] = self.segments(axis);
        serde_json::json!({ "o1": seg(o1), "x": seg(x), "y": seg(y), "z": seg(z), "o2": seg(o2) })
    }
}

/// Levels (0 = best) read along the axis.
fn levels_along(levels: &[usize], axis: &Axis) -> Vec<usize> {
    axis.order().iter().map(|c| levels[c.index()]).collect()
}

/// Finds the top group as a contiguous range of the sequence, if it is one.
fn top_interval(seq: &[usize]) -> Option<Range<usize>> {
    let start = seq.iter().position(|&l| l == 0)?;
    let len = seq[start..].iter().take_while(|&&l| l == 0).count();
    if seq[start + len..].contains(&0) {
        return None;
    }
    Some(start..start + len)
}

/// Checks rise-then-fall around a contiguous top group. With `strict`, no
/// two neighbours on the same side may be tied.
fn unimodal(seq: &[usize], strict: bool, unique_top: bool) -> Option<Range<usize>> {
    let top = top_interval(seq)?;
    if unique_top && top.len() != 1 {
        return None;
    }
    let rising = |a: usize, b: usize| if strict { a > b } else { a >= b };
    for j in 0..top.start.saturating_sub(1) {
        if !rising(seq[j], seq[j + 1]) {
            return None;
        }
    }
    for j in top.end..seq.len().saturating_sub(1) {
        if !rising(seq[j + 1], seq[j]) {
            return None;
        }
    }
    Some(top)
}

fn validate_sequence(seq: &[usize], model: SPModel) -> Option<PeakDecomposition> {
    let m = seq.len();
    match model {
        SPModel::SinglePeaked => {
            unimodal(seq, true, true).map(|y| PeakDecomposition::core(y.start, y.end, m, 0))
        }
        SPModel::SinglePlateaued => {
            unimodal(seq, true, false).map(|y| PeakDecomposition::core(y.start, y.end, m, 0))
        }
        SPModel::PossiblySinglePeaked => {
            unimodal(seq, false, false).map(|y| PeakDecomposition::core(y.start, y.end, m, 0))
        }
        SPModel::OutsideOptions => {
            if let Some(d) = validate_sequence(seq, SPModel::SinglePeaked) {
                return Some(d);
            }
            let bottom = *seq.iter().max()?;
            if bottom == 0 {
                // everything tied: all candidates are outside options
                return Some(PeakDecomposition {
                    o1: 0..m,
                    x: m..m,
                    y: m..m,
                    z: m..m,
                    o2: m..m,
                });
            }
            let left = seq.iter().take_while(|&&l| l == bottom).count();
            let right = seq.iter().rev().take_while(|&&l| l == bottom).count();
            let inner = left..m - right;
            if seq[inner.clone()].contains(&bottom) {
                return None;
            }
            let y = unimodal(&seq[inner.clone()], true, true)?;
            Some(PeakDecomposition {
                o1: 0..left,
                x: left..left + y.start,
                y: left + y.start..left + y.end,
                z: left + y.end..inner.end,
                o2: inner.end..m,
            })
        }
    }
}

/// Witness that `order` satisfies `model` with respect to `axis`, if any.
pub fn validate_vote(order: &WeakOrder, axis: &Axis, model: SPModel) -> Option<PeakDecomposition> {
    if order.num_candidates() != axis.len() {
        return None;
    }
    validate_sequence(&levels_along(&order.levels(), axis), model)
}

pub fn validate_profile(profile: &Profile, axis: &Axis, model: SPModel) -> bool {
    profile
        .voters()
        .iter()
        .all(|v| validate_vote(&v.order, axis, model).is_some())
}

/// `validate(from) ⇒ validate(to)` for this profile and axis.
pub fn check_model_implication(profile: &Profile, axis: &Axis, from: SPModel, to: SPModel) -> bool {
    !validate_profile(profile, axis, from) || validate_profile(profile, axis, to)
}

/// Rearranges `perm` into the next lexicographic permutation.
pub(crate) fn next_permutation<T: Ord>(perm: &mut [T]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Every axis over `0..m` up to reversal, in lexicographic order.
pub fn canonical_axes(m: usize) -> Vec<Axis> {
    let mut perm: Vec<CandidateId> = (0..m).map(CandidateId).collect();
    let mut out = Vec::new();
    loop {
        if m < 2 || perm[0] < perm[m - 1] {
            out.push(Axis::new(perm.clone()).expect("permutation"));
        }
        if !next_permutation(&mut perm) {
            return out;
        }
    }
}

pub fn find_axis(profile: &Profile, model: SPModel) -> Result<Option<Axis>> {
    find_axis_with_cap(profile, model, DEFAULT_ENUMERATION_CAP)
}

/// Exhaustive search over the `m!/2` axes, returning the first canonical
/// axis in lexicographic order that validates every voter.
pub fn find_axis_with_cap(profile: &Profile, model: SPModel, cap: usize) -> Result<Option<Axis>> {
    let m = profile.num_candidates();
    if m > cap {
        return Err(Error::Capacity(format!(
            "axis search over {m} candidates exceeds the cap of {cap}; \
             exhaustive search is meant for desk-scale elections"
        )));
    }
    let levels: Vec<Vec<usize>> = profile.voters().iter().map(|v| v.order.levels()).collect();
    let mut perm: Vec<CandidateId> = (0..m).map(CandidateId).collect();
    loop {
        if m < 2 || perm[0] < perm[m - 1] {
            let axis = Axis::new(perm.clone())?;
            if levels
                .iter()
                .all(|l| validate_sequence(&levels_along(l, &axis), model).is_some())
            {
                return Ok(Some(axis));
            }
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

/// Restriction applied while enumerating votes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VoteConstraint {
    /// Only votes ranking this candidate uniquely first.
    pub first: Option<CandidateId>,
    /// Only votes without ties.
    pub total_only: bool,
}

impl VoteConstraint {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn p_uniquely_first(p: CandidateId) -> Self {
        VoteConstraint {
            first: Some(p),
            total_only: false,
        }
    }

    pub fn total_orders_only() -> Self {
        VoteConstraint {
            first: None,
            total_only: true,
        }
    }

    pub fn and_total(mut self) -> Self {
        self.total_only = true;
        self
    }

    fn admits(&self, order: &WeakOrder) -> bool {
        self.first.is_none_or(|p| order.ranks_uniquely_first(p)) && (!self.total_only || order.is_total())
    }
}

pub fn enumerate_consistent_votes(
    axis: &Axis,
    model: SPModel,
    constraint: VoteConstraint,
) -> Result<Vec<WeakOrder>> {
    enumerate_consistent_votes_with_cap(axis, model, constraint, DEFAULT_ENUMERATION_CAP)
}

/// Every vote satisfying `model` on `axis` and the constraint, sorted and
/// without duplicates.
///
/// Votes are grown outwards from their top group: each further group
/// extends the current axis interval to the left and/or right. Strict
/// models take at most one candidate per side per group; outside options
/// may additionally close with one group holding every candidate not yet
/// ranked.
pub fn enumerate_consistent_votes_with_cap(
    axis: &Axis,
    model: SPModel,
    constraint: VoteConstraint,
    cap: usize,
) -> Result<Vec<WeakOrder>> {
    let m = axis.len();
    if m > cap {
        return Err(Error::Capacity(format!(
            "vote enumeration over {m} candidates exceeds the cap of {cap}"
        )));
    }
    let mut out = BTreeSet::new();
    if m == 0 {
        return Ok(Vec::new());
    }
    let strict = model != SPModel::PossiblySinglePeaked;
    let unique_top = matches!(model, SPModel::SinglePeaked | SPModel::OutsideOptions);
    let mut grower = Grower {
        axis,
        strict,
        close_with_outside: model == SPModel::OutsideOptions,
        groups: Vec::new(),
        out: &mut out,
    };
    let tops: Vec<Range<usize>> = match constraint.first {
        Some(p) => {
            let pos = axis.position(p);
            std::iter::once(pos..pos + 1).collect()
        }
        None if unique_top => (0..m).map(|i| i..i + 1).collect(),
        None => (0..m)
            .flat_map(|s| (s + 1..=m).map(move |e| s..e))
            .collect(),
    };
    for top in tops {
        grower.groups.push(axis.order()[top.clone()].to_vec());
        grower.grow(top.start, top.end);
        grower.groups.pop();
    }
    if model == SPModel::OutsideOptions && m > 1 {
        out.insert(WeakOrder::from_groups_unchecked(vec![axis.order().to_vec()]));
    }
    Ok(out.into_iter().filter(|v| constraint.admits(v)).collect())
}

struct Grower<'a> {
    axis: &'a Axis,
    strict: bool,
    close_with_outside: bool,
    groups: Vec<Vec<CandidateId>>,
    out: &'a mut BTreeSet<WeakOrder>,
}

impl Grower<'_> {
    fn grow(&mut self, lo: usize, hi: usize) {
        let m = self.axis.len();
        if lo == 0 && hi == m {
            self.out
                .insert(WeakOrder::from_groups_unchecked(self.groups.clone()));
            return;
        }
        if self.close_with_outside {
            let mut outside = self.axis.order()[..lo].to_vec();
            outside.extend_from_slice(&self.axis.order()[hi..]);
            self.groups.push(outside);
            self.out
                .insert(WeakOrder::from_groups_unchecked(self.groups.clone()));
            self.groups.pop();
        }
        let max_left = if self.strict { lo.min(1) } else { lo };
        let max_right = if self.strict { (m - hi).min(1) } else { m - hi };
        for left in 0..=max_left {
            for right in 0..=max_right {
                if left + right == 0 {
                    continue;
                }
                let mut group = self.axis.order()[lo - left..lo].to_vec();
                group.extend_from_slice(&self.axis.order()[hi..hi + right]);
                self.groups.push(group);
                self.grow(lo - left, hi + right);
                self.groups.pop();
            }
        }
    }
}
