//! Random small CWCM instances and polytime-vs-oracle comparison.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::json::instance_to_json;
use super::{solve_cwcm_oracle, solve_polytime, CwcmInstance, Rule};
use crate::error::{Error, Result};
use crate::order::{letter_names, CandidateId, WeightedVoter};
use crate::pairwise::CopelandRule;
use crate::peakedness::{enumerate_consistent_votes, Axis, SPModel, VoteConstraint};
use crate::scoring::{Extension, ScoringVector};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleFamily {
    Scoring,
    EliminationVeto,
    Copeland,
}

impl RuleFamily {
    pub const ALL: [RuleFamily; 3] = [
        RuleFamily::Scoring,
        RuleFamily::EliminationVeto,
        RuleFamily::Copeland,
    ];
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub seed: u64,
    /// Instances per rule family on which the polynomial-time solver answers.
    pub instances: usize,
    pub families: Vec<RuleFamily>,
    pub max_nonmanipulators: usize,
    pub max_nonmanipulator_weight: u64,
    pub max_manipulators: usize,
    pub max_manipulator_weight: u64,
    /// Models to draw from; the polynomial-time solvers need the first two.
    pub models: Vec<SPModel>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            seed: 0,
            instances: 1000,
            families: RuleFamily::ALL.to_vec(),
            max_nonmanipulators: 3,
            max_nonmanipulator_weight: 2,
            max_manipulators: 3,
            max_manipulator_weight: 2,
            models: vec![SPModel::SinglePeaked, SPModel::SinglePlateaued],
        }
    }
}

/// Draws one instance of the given family.
///
/// Scoring instances use Borda, Veto or Plurality over 3 or 4 candidates,
/// or ⟨4,3,2,0,0⟩ over 5 candidates with `p` in the middle half the time.
/// Copeland uses α ∈ {0, 1/2, 1}. Nonmanipulators are drawn from the votes
/// consistent with a model picked from `config.models`.
pub fn random_instance(rng: &mut impl Rng, family: RuleFamily, config: &SweepConfig) -> Result<CwcmInstance> {
    let mut m = rng.gen_range(3..=4);
    let rule = match family {
        RuleFamily::Scoring => {
            let vector = match rng.gen_range(0..4) {
                0 => ScoringVector::borda(m),
                1 => ScoringVector::veto(m),
                2 => ScoringVector::plurality(m),
                _ => {
                    m = 5;
                    ScoringVector::new(vec![4, 3, 2, 0, 0])?
                }
            };
            Rule::Scoring {
                vector,
                ext: *Extension::ALL.choose(rng).expect("non-empty"),
            }
        }
        RuleFamily::EliminationVeto => Rule::EliminationVeto,
        RuleFamily::Copeland => {
            let (n, d) = *[(0, 1), (1, 2), (1, 1)].choose(rng).expect("non-empty");
            Rule::Copeland(CopelandRule::from_ratio(n, d)?)
        }
    };
    let mut order: Vec<CandidateId> = (0..m).map(CandidateId).collect();
    order.shuffle(rng);
    let axis = Axis::new(order)?;
    let p = if m == 5 && rng.gen_bool(0.5) {
        axis.at(2)
    } else {
        CandidateId(rng.gen_range(0..m))
    };
    let model = *config.models.choose(rng).ok_or_else(|| {
        Error::Validation("sweep needs at least one model".into())
    })?;
    let pool = enumerate_consistent_votes(&axis, model, VoteConstraint::none())?;
    let s = (0..rng.gen_range(0..=config.max_nonmanipulators))
        .map(|_| {
            WeightedVoter::new(
                pool.choose(rng).expect("non-empty").clone(),
                rng.gen_range(1..=config.max_nonmanipulator_weight),
            )
        })
        .collect();
    let t = (0..rng.gen_range(0..=config.max_manipulators))
        .map(|_| Weight::from(rng.gen_range(1..=config.max_manipulator_weight)))
        .collect();
    CwcmInstance::new(letter_names(m), s, t, p, axis, model, rule)
}

#[derive(Clone, Debug, Serialize)]
pub struct Disagreement {
    pub instance: serde_json::Value,
    pub polytime: bool,
    pub oracle: bool,
    /// Set when a yes answer came with a witness that does not check out.
    pub bad_witness: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FamilyReport {
    pub compared: usize,
    pub yes: usize,
    pub not_applicable: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub families: Vec<(RuleFamily, FamilyReport)>,
    pub disagreements: Vec<Disagreement>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Draws instances until each family has `config.instances` comparisons
/// (instances outside the polynomial-time cases are counted and skipped).
pub fn compare(config: &SweepConfig) -> Result<SweepReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = SweepReport {
        seed: config.seed,
        families: Vec::new(),
        disagreements: Vec::new(),
    };
    for &family in &config.families {
        let mut stats = FamilyReport::default();
        while stats.compared < config.instances {
            let instance = random_instance(&mut rng, family, config)?;
            let fast = match solve_polytime(&instance) {
                Ok(r) => r,
                Err(Error::NotApplicable(_)) => {
                    stats.not_applicable += 1;
                    if stats.not_applicable > 100 * (config.instances + 10) {
                        return Err(Error::NotApplicable(
                            "almost no generated instance falls in a polynomial-time case".into(),
                        ));
                    }
                    continue;
                }
                Err(e) => return Err(e),
            };
            let slow = solve_cwcm_oracle(&instance)?;
            stats.compared += 1;
            stats.yes += usize::from(slow.decision);
            let witness_ok = |w: &Option<Vec<_>>| match w {
                Some(w) => instance.verify_witness(w),
                None => Ok(true),
            };
            let bad_witness = !witness_ok(&fast.witness)? || !witness_ok(&slow.witness)?;
            if fast.decision != slow.decision || bad_witness {
                report.disagreements.push(Disagreement {
                    instance: instance_to_json(&instance),
                    polytime: fast.decision,
                    oracle: slow.decision,
                    bad_witness,
                });
            }
        }
        report.families.push((family, stats));
    }
    Ok(report)
}
