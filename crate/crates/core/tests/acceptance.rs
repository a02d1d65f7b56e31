//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::BTreeSet;
use std::time::Instant;

use itertools::Itertools;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sptie::manipulation::oracle::{solve_cwcm_oracle_with, OracleConfig};
use sptie::manipulation::partition::{
    find_partition, half_half_witness, reduce_partition_to_cwcm, reduction_vector, solve_partition,
};
use sptie::manipulation::sweep::{random_instance, RuleFamily, SweepConfig};
use sptie::manipulation::{solve_cwcm_oracle, solve_polytime};
use sptie::order::all_weak_orders;
use sptie::pairwise::{is_majority_transitive, weak_condorcet_winners};
use sptie::peakedness::{check_model_implication, enumerate_consistent_votes, validate_profile, validate_vote};
use sptie::scoring::score_vote;
use sptie::{
    classify_order, Axis, CandidateId, Error, Extension, OrderClass, PartitionInstance, Profile, Rule,
    SPModel, ScoringVector, WeakOrder, WeightedVoter,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("tied five-candidate score tables", criterion_1),
        ("seven-candidate validation matrix", criterion_2),
        ("model lattice, m <= 4", criterion_3),
        ("majority transitivity and weak Condorcet winners", criterion_4),
        ("polytime solvers agree with the oracle", criterion_5),
        ("Partition reduction fidelity", criterion_6),
        ("forced vote at the axis ends", criterion_7),
        ("p-first restriction keeps every yes", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({why}; {secs:.2}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn criterion_1() -> Outcome {
    let vote = WeakOrder::from_indices(&[&[0, 1], &[2, 3], &[4]]);
    let borda = ScoringVector::borda(5);
    let expected = [
        (Extension::Min, [q(3, 1), q(3, 1), q(1, 1), q(1, 1), q(0, 1)]),
        (Extension::Max, [q(4, 1), q(4, 1), q(2, 1), q(2, 1), q(0, 1)]),
        (Extension::RoundDown, [q(2, 1), q(2, 1), q(1, 1), q(1, 1), q(0, 1)]),
        (Extension::Average, [q(7, 2), q(7, 2), q(3, 2), q(3, 2), q(0, 1)]),
    ];
    for (ext, table) in expected {
        let got = score_vote(&vote, &borda, ext).map_err(|e| e.to_string())?;
        ensure(got.scores() == table, || format!("{ext}: got {:?}", got.scores()))?;
    }
    Ok("4 tables exact".into())
}

// Definition-level model checks, written against the axis directly and
// independent of the library's level-sequence implementation.

/// Levels (0 = most preferred) read along the axis.
fn along(order: &WeakOrder, axis: &Axis) -> Vec<usize> {
    let levels = order.levels();
    axis.order().iter().map(|c| levels[c.index()]).collect()
}

/// Every candidate strictly prefers the one next to it towards `[s, e]`.
fn strict_towards(seq: &[usize], s: usize, e: usize) -> bool {
    (0..s).all(|i| seq[i] > seq[i + 1]) && (e..seq.len() - 1).all(|i| seq[i] < seq[i + 1])
}

fn top_positions(seq: &[usize]) -> Vec<usize> {
    let best = *seq.iter().min().expect("non-empty");
    (0..seq.len()).filter(|&i| seq[i] == best).collect()
}

fn def_single_peaked(seq: &[usize]) -> bool {
    let top = top_positions(seq);
    top.len() == 1 && strict_towards(seq, top[0], top[0])
}

fn def_single_plateaued(seq: &[usize]) -> bool {
    let top = top_positions(seq);
    let (s, e) = (top[0], *top.last().unwrap());
    e - s + 1 == top.len() && strict_towards(seq, s, e)
}

fn def_outside_options(seq: &[usize]) -> bool {
    let m = seq.len();
    if seq.iter().all(|&l| l == seq[0]) {
        return true;
    }
    for lo in 0..m {
        for hi in lo + 1..=m {
            let inner = &seq[lo..hi];
            let outer: Vec<usize> = seq[..lo].iter().chain(&seq[hi..]).copied().collect();
            let worst_inner = *inner.iter().max().unwrap();
            let outside_ok = outer.iter().all(|&l| l == outer[0] && l > worst_inner);
            if outside_ok && def_single_peaked(inner) {
                return true;
            }
        }
    }
    false
}

/// Some linear extension is single-peaked, i.e. every prefix of it is an
/// axis interval.
fn def_possibly_single_peaked(seq: &[usize]) -> bool {
    let m = seq.len();
    (0..m).permutations(m).any(|perm| {
        let consistent = perm.windows(2).all(|w| seq[w[0]] <= seq[w[1]]);
        consistent
            && (1..=m).all(|k| {
                let lo = perm[..k].iter().min().unwrap();
                let hi = perm[..k].iter().max().unwrap();
                hi - lo + 1 == k
            })
    })
}

fn def_matrix_row(order: &WeakOrder, axis: &Axis) -> [bool; 4] {
    let seq = along(order, axis);
    [
        def_single_peaked(&seq),
        def_single_plateaued(&seq),
        def_outside_options(&seq),
        def_possibly_single_peaked(&seq),
    ]
}

const MODELS: [SPModel; 4] = [
    SPModel::SinglePeaked,
    SPModel::SinglePlateaued,
    SPModel::OutsideOptions,
    SPModel::PossiblySinglePeaked,
];

/// Weak-order arrows of the model lattice.
const ARROWS: [(SPModel, SPModel); 4] = [
    (SPModel::SinglePeaked, SPModel::SinglePlateaued),
    (SPModel::SinglePlateaued, SPModel::PossiblySinglePeaked),
    (SPModel::SinglePeaked, SPModel::OutsideOptions),
    (SPModel::OutsideOptions, SPModel::PossiblySinglePeaked),
];

fn library_row(order: &WeakOrder, axis: &Axis) -> [bool; 4] {
    MODELS.map(|model| validate_vote(order, axis, model).is_some())
}

fn criterion_2() -> Outcome {
    let axis = Axis::identity(7);
    let votes = [
        WeakOrder::from_indices(&[&[4], &[3], &[2, 5], &[1], &[0], &[6]]),
        WeakOrder::from_indices(&[&[1, 2], &[3], &[4], &[5], &[6], &[0]]),
        WeakOrder::from_indices(&[&[3], &[2, 4], &[0, 1, 5, 6]]),
        WeakOrder::from_indices(&[&[5, 6], &[4], &[2, 3], &[1], &[0]]),
    ];
    // each vote validates under its labeled model
    for (vote, labeled) in votes.iter().zip(MODELS) {
        ensure(validate_vote(vote, &axis, labeled).is_some(), || {
            format!("{vote:?} fails its labeled model {labeled}")
        })?;
    }
    // columns: single-peaked, single-plateaued, outside options, possibly
    let expected = [
        [true, true, true, true],
        [false, true, false, true],
        [false, false, true, true],
        [false, false, false, true],
    ];
    for (vote, want) in votes.iter().zip(expected) {
        let lib = library_row(vote, &axis);
        let def = def_matrix_row(vote, &axis);
        ensure(lib == def, || format!("{vote:?}: library {lib:?}, definitions {def:?}"))?;
        ensure(lib == want, || format!("{vote:?}: got {lib:?}, expected {want:?}"))?;
        let profile = Profile::with_letters(7, vec![WeightedVoter::new(vote.clone(), 1u32)])
            .map_err(|e| e.to_string())?;
        for (from, to) in ARROWS {
            ensure(check_model_implication(&profile, &axis, from, to), || {
                format!("{vote:?}: {from} does not imply {to}")
            })?;
        }
    }
    Ok("16 cells match the definitions".into())
}

fn criterion_3() -> Outcome {
    let mut cells = 0usize;
    for m in 1..=4 {
        let orders = all_weak_orders(m);
        for perm in (0..m).permutations(m) {
            let axis = Axis::from_indices(&perm).map_err(|e| e.to_string())?;
            for order in &orders {
                let row = library_row(order, &axis);
                cells += 4;
                let [sp, plat, oo, psp] = row;
                ensure(row == def_matrix_row(order, &axis), || {
                    format!("{order:?} on {perm:?}: library {row:?} disagrees with definitions")
                })?;
                ensure((!sp || plat) && (!plat || psp) && (!sp || oo) && (!oo || psp), || {
                    format!("{order:?} on {perm:?}: lattice violated {row:?}")
                })?;
                match classify_order(order) {
                    OrderClass::Total => ensure(row.iter().all(|&b| b == sp), || {
                        format!("{order:?} on {perm:?}: models differ on a total order")
                    })?,
                    OrderClass::TopOrder => ensure(oo == psp, || {
                        format!("{order:?} on {perm:?}: outside options and possibly single-peaked differ")
                    })?,
                    _ => {}
                }
            }
        }
    }
    Ok(format!("{cells} vote/axis/model cells"))
}

/// A random single-peaked or single-plateaued vote: grow an axis interval
/// out of the top group, one candidate per side per step.
fn random_peaked_vote(rng: &mut impl Rng, axis: &Axis, plateau: bool) -> WeakOrder {
    let m = axis.len();
    let (mut lo, mut hi) = if plateau {
        let a = rng.gen_range(0..m);
        let b = rng.gen_range(0..m);
        (a.min(b), a.max(b))
    } else {
        let a = rng.gen_range(0..m);
        (a, a)
    };
    let mut groups = vec![(lo..=hi).map(|i| axis.at(i)).collect_vec()];
    while lo > 0 || hi + 1 < m {
        let (take_left, take_right) = match (lo > 0, hi + 1 < m) {
            (true, true) => *[(true, false), (false, true), (true, true)].choose(rng).unwrap(),
            (l, r) => (l, r),
        };
        let mut group = Vec::new();
        if take_left {
            lo -= 1;
            group.push(axis.at(lo));
        }
        if take_right {
            hi += 1;
            group.push(axis.at(hi));
        }
        groups.push(group);
    }
    WeakOrder::new(groups, m).expect("partition of the candidates")
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let profiles = 10_000;
    for _ in 0..profiles {
        let m = rng.gen_range(1..=7);
        let mut order: Vec<CandidateId> = (0..m).map(CandidateId).collect();
        order.shuffle(&mut rng);
        let axis = Axis::new(order).unwrap();
        let plateau = rng.gen_bool(0.5);
        let voters = (0..rng.gen_range(1..=20))
            .map(|_| WeightedVoter::new(random_peaked_vote(&mut rng, &axis, plateau), rng.gen_range(1..=5u32)))
            .collect();
        let profile = Profile::with_letters(m, voters).unwrap();
        let model = if plateau {
            SPModel::SinglePlateaued
        } else {
            SPModel::SinglePeaked
        };
        ensure(validate_profile(&profile, &axis, model), || {
            format!("generated profile is not {model}")
        })?;
        ensure(is_majority_transitive(&profile), || {
            format!("intransitive majority on a {model} profile: {profile:?}")
        })?;
        ensure(!weak_condorcet_winners(&profile).is_empty(), || {
            format!("no weak Condorcet winner on a {model} profile: {profile:?}")
        })?;
    }
    Ok(format!("{profiles} profiles"))
}

const SWEEP_PER_SOLVER: usize = 10_000;

fn criterion_5() -> Outcome {
    let config = SweepConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut summary = Vec::new();
    for family in RuleFamily::ALL {
        let (mut compared, mut yes, mut skipped, mut central_43200) = (0, 0, 0, 0);
        while compared < SWEEP_PER_SOLVER {
            let inst = random_instance(&mut rng, family, &config).map_err(|e| e.to_string())?;
            let fast = match solve_polytime(&inst) {
                Ok(r) => r,
                Err(Error::NotApplicable(_)) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(e.to_string()),
            };
            let slow = solve_cwcm_oracle(&inst).map_err(|e| e.to_string())?;
            ensure(fast.decision == slow.decision, || {
                format!("{} on {inst:?}: polytime {} oracle {}", inst.rule(), fast.decision, slow.decision)
            })?;
            for witness in [&fast.witness, &slow.witness].into_iter().flatten() {
                ensure(inst.verify_witness(witness).unwrap_or(false), || {
                    format!("bad witness {witness:?} for {inst:?}")
                })?;
            }
            compared += 1;
            yes += usize::from(slow.decision);
            if inst.num_candidates() == 5 && inst.axis().split_at(inst.preferred()) == Ok((2, 2)) {
                central_43200 += 1;
            }
        }
        if family == RuleFamily::Scoring {
            ensure(central_43200 > 0, || "no ⟨4,3,2,0,0⟩ instance with m1 = m2 = 2".into())?;
        }
        summary.push(format!(
            "{family:?}: {compared} agree, {yes} yes, {skipped} not applicable{}",
            if family == RuleFamily::Scoring {
                format!(", {central_43200} with ⟨4,3,2,0,0⟩ at m1 = m2 = 2")
            } else {
                String::new()
            }
        ));
    }
    Ok(summary.join("; "))
}

fn criterion_6() -> Outcome {
    let (mut checked, mut yes) = (0, 0);
    for t in 1..=8 {
        for items in (1..=6u64).combinations_with_replacement(t) {
            let inst = PartitionInstance::new(items.clone()).map_err(|e| e.to_string())?;
            let expected = solve_partition(&inst);
            for ext in Extension::ALL {
                let cwcm = reduce_partition_to_cwcm(&inst, ext).map_err(|e| e.to_string())?;
                let result = solve_cwcm_oracle(&cwcm).map_err(|e| format!("{items:?} {ext}: {e}"))?;
                checked += 1;
                ensure(result.decision == expected, || {
                    format!("{items:?} {ext}: partition {expected}, oracle {}", result.decision)
                })?;
                if let Some(w) = &result.witness {
                    ensure(cwcm.verify_witness(w).unwrap_or(false), || {
                        format!("{items:?} {ext}: oracle witness does not verify")
                    })?;
                }
                let Some(subset) = find_partition(&inst) else {
                    continue;
                };
                yes += 1;
                let witness = half_half_witness(t, &subset, ext);
                ensure(cwcm.verify_witness(&witness).unwrap_or(false), || {
                    format!("{items:?} {ext}: half/half witness does not make p win")
                })?;
                let k = inst.half_sum().expect("yes-instances have even sums") as i64;
                let target = match ext {
                    Extension::Max => Some(92 * k),
                    Extension::Min => Some(104 * k),
                    _ => None,
                };
                if let Some(target) = target {
                    let profile = cwcm.profile_with(&witness).map_err(|e| e.to_string())?;
                    let scores = sptie::scoring::score_profile(&profile, &reduction_vector(), ext)
                        .map_err(|e| e.to_string())?;
                    let want = q(target, 1);
                    ensure(scores.scores()[..3].iter().all(|s| *s == want), || {
                        format!("{items:?} {ext}: p, a1, b1 score {:?}, expected {target}", &scores.scores()[..3])
                    })?;
                }
            }
        }
    }
    Ok(format!("{checked} reduced instances, {yes} yes with 92K/104K identities"))
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for m in 1..=7 {
        for perm in (0..m).permutations(m) {
            let axis = Axis::from_indices(&perm).unwrap();
            for p in [axis.at(0), axis.at(m - 1)] {
                for model in [SPModel::SinglePeaked, SPModel::SinglePlateaued] {
                    let votes = enumerate_consistent_votes(
                        &axis,
                        model,
                        sptie::VoteConstraint::p_uniquely_first(p),
                    )
                    .map_err(|e| e.to_string())?;
                    checked += 1;
                    ensure(votes.len() == 1, || {
                        format!("axis {perm:?}, p = {p}, {model}: {} votes", votes.len())
                    })?;
                }
            }
        }
    }
    Ok(format!("{checked} axis/end/model combinations"))
}

fn criterion_8() -> Outcome {
    // the criterion 5 scoring sweep, plus the two models without a
    // polynomial-time solver
    let restricted = OracleConfig {
        p_first: Some(true),
        ..OracleConfig::default()
    };
    let unrestricted = OracleConfig {
        p_first: Some(false),
        ..OracleConfig::default()
    };
    let mut summary = Vec::new();
    for (seed, models) in [
        (5, vec![SPModel::SinglePeaked, SPModel::SinglePlateaued]),
        (8, vec![SPModel::OutsideOptions, SPModel::PossiblySinglePeaked]),
    ] {
        let config = SweepConfig {
            models,
            ..SweepConfig::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut yes, mut total) = (0, 0);
        let mut vectors = BTreeSet::new();
        while total < SWEEP_PER_SOLVER {
            let inst = random_instance(&mut rng, RuleFamily::Scoring, &config).map_err(|e| e.to_string())?;
            if let Rule::Scoring { vector, .. } = inst.rule() {
                vectors.insert(vector.to_string());
            }
            let free = solve_cwcm_oracle_with(&inst, &unrestricted).map_err(|e| e.to_string())?;
            let first = solve_cwcm_oracle_with(&inst, &restricted).map_err(|e| e.to_string())?;
            total += 1;
            if free.decision {
                yes += 1;
                ensure(first.decision, || format!("p-first restriction loses a yes: {inst:?}"))?;
            }
            ensure(!first.decision || free.decision, || format!("restricted yes without free yes: {inst:?}"))?;
        }
        summary.push(format!("{} vectors over {:?}: {yes}/{total} yes kept", vectors.len(), config.models));
    }
    Ok(summary.join("; "))
}
