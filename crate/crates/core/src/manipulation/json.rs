//! JSON forms of CWCM instances and results.
//!
//! ```json
//! {"candidates":["a","p","b"],"axis":["a","p","b"],"model":"single-peaked",
//!  "rule":{"kind":"scoring","vector":[2,1,0],"extension":"min"},
//!  "nonmanipulators":[{"weight":2,"groups":[[0],[1],[2]]}],
//!  "manipulators":[1,1],"preferred":"p"}
//! ```
//!
//! Votes are lists of groups of candidate indices, as in the native profile
//! format. Copeland's α is a `"p/q"` string.

use serde::{Deserialize, Serialize};

use super::{CwcmInstance, ManipulationResult, Rule, SolverTag};
use crate::error::{Error, Result};
use crate::io::{groups_to_indices, indices_to_order, VoterJson};
use crate::order::Profile;
use crate::pairwise::CopelandRule;
use crate::peakedness::{Axis, SPModel};
use crate::scoring::{Extension, ScoringVector};
use crate::weight::{self, Weight};

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum RuleJson {
    Scoring {
        vector: ScoringVector,
        extension: Extension,
    },
    Copeland {
        alpha: String,
    },
    EliminationVeto,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct WeightJson(#[serde(with = "weight::serde_number")] Weight);

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    candidates: Vec<String>,
    axis: Vec<String>,
    model: SPModel,
    rule: RuleJson,
    nonmanipulators: Vec<VoterJson>,
    manipulators: Vec<WeightJson>,
    preferred: String,
}

#[derive(Serialize, Deserialize)]
struct ResultJson {
    decision: bool,
    witness: Option<Vec<Vec<Vec<usize>>>>,
    solver: SolverTag,
}

pub fn instance_to_json(instance: &CwcmInstance) -> serde_json::Value {
    let names = instance.names();
    let rule = match instance.rule() {
        Rule::Scoring { vector, ext } => RuleJson::Scoring {
            vector: vector.clone(),
            extension: *ext,
        },
        Rule::Copeland(r) => RuleJson::Copeland {
            alpha: r.to_string(),
        },
        Rule::EliminationVeto => RuleJson::EliminationVeto,
    };
    let doc = InstanceJson {
        candidates: names.to_vec(),
        axis: instance
            .axis()
            .order()
            .iter()
            .map(|c| names[c.index()].clone())
            .collect(),
        model: instance.model(),
        rule,
        nonmanipulators: instance
            .nonmanipulators()
            .iter()
            .map(VoterJson::from_voter)
            .collect(),
        manipulators: instance.manipulators().iter().cloned().map(WeightJson).collect(),
        preferred: names[instance.preferred().index()].clone(),
    };
    serde_json::to_value(doc).expect("instance serializes")
}

pub fn instance_from_json(text: &str) -> Result<CwcmInstance> {
    let doc: InstanceJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let m = doc.candidates.len();
    let nonmanipulators = doc
        .nonmanipulators
        .into_iter()
        .map(|v| v.into_voter(m))
        .collect::<Result<Vec<_>>>()?;
    // a voterless profile resolves names for the axis and p
    let names_only = Profile::new(doc.candidates.clone(), Vec::new())?;
    let axis = Axis::from_names(&doc.axis, &names_only)?;
    let preferred = names_only
        .candidate_by_name(&doc.preferred)
        .ok_or_else(|| Error::Validation(format!("unknown preferred candidate {:?}", doc.preferred)))?;
    let rule = match doc.rule {
        RuleJson::Scoring { vector, extension } => Rule::Scoring {
            vector,
            ext: extension,
        },
        RuleJson::Copeland { alpha } => Rule::Copeland(alpha.parse::<CopelandRule>()?),
        RuleJson::EliminationVeto => Rule::EliminationVeto,
    };
    CwcmInstance::new(
        doc.candidates,
        nonmanipulators,
        doc.manipulators.into_iter().map(|w| w.0).collect(),
        preferred,
        axis,
        doc.model,
        rule,
    )
}

pub fn result_to_json(result: &ManipulationResult) -> serde_json::Value {
    let doc = ResultJson {
        decision: result.decision,
        witness: result
            .witness
            .as_ref()
            .map(|w| w.iter().map(groups_to_indices).collect()),
        solver: result.solver,
    };
    serde_json::to_value(doc).expect("result serializes")
}

pub fn result_from_json(text: &str, m: usize) -> Result<ManipulationResult> {
    let doc: ResultJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let witness = doc
        .witness
        .map(|w| {
            w.into_iter()
                .map(|groups| indices_to_order(groups, m))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    Ok(ManipulationResult {
        decision: doc.decision,
        witness,
        solver: doc.solver,
    })
}
