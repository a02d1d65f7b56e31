use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sptie::elimination::elimination_veto_winner;
use sptie::manipulation::json::{instance_from_json, instance_to_json, result_to_json};
use sptie::manipulation::oracle::{solve_cwcm_oracle_with, OracleConfig};
use sptie::manipulation::partition::reduce_partition_to_cwcm;
use sptie::manipulation::sweep::{compare, RuleFamily, SweepConfig};
use sptie::manipulation::{solve_polytime, ManipulationResult};
use sptie::pairwise::copeland_winners;
use sptie::peakedness::{find_axis, validate_vote};
use sptie::scoring::{score_profile, scoring_winners};
use sptie::{
    parse_profile, Axis, CandidateId, CopelandRule, Error, Extension, Format, PartitionInstance, Profile,
    SPModel, ScoringVector,
};

#[derive(Parser)]
#[command(name = "sptie", version, about = "Elections with ties, single-peaked models and CWCM solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scores of every candidate under a scoring rule.
    Score {
        #[arg(long, value_parser = ScoringVector::from_str)]
        vector: ScoringVector,
        #[arg(long, value_parser = Extension::from_str)]
        ext: Extension,
        #[command(flatten)]
        input: ProfileInput,
    },
    /// Winner set under a rule.
    Winners {
        /// scoring:<vector>:<ext>, copeland:<p/q> or elimveto
        #[arg(long, value_parser = RuleSpec::from_str)]
        rule: RuleSpec,
        #[command(flatten)]
        input: ProfileInput,
    },
    /// Validates every voter against an axis.
    CheckAxis {
        #[arg(long, value_parser = SPModel::from_str)]
        model: SPModel,
        /// Candidate names, leftmost first, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        axis: Vec<String>,
        #[command(flatten)]
        input: ProfileInput,
    },
    /// Searches for an axis the whole profile is consistent with.
    FindAxis {
        #[arg(long, value_parser = SPModel::from_str)]
        model: SPModel,
        #[command(flatten)]
        input: ProfileInput,
    },
    /// Solves a CWCM instance given as JSON.
    Cwcm {
        #[arg(long, value_enum, default_value_t = Solver::Auto)]
        solver: Solver,
        /// Largest number of partial outcomes the oracle may track.
        #[arg(long)]
        max_states: Option<usize>,
        /// Instance file; standard input when absent or `-`.
        path: Option<PathBuf>,
    },
    /// Emits the ⟨4,3,2,0,0⟩ CWCM instance reduced from a Partition instance.
    GenPartition {
        #[arg(long, value_delimiter = ',', required = true)]
        items: Vec<u64>,
        #[arg(long, value_parser = Extension::from_str)]
        ext: Extension,
    },
    /// Runs the polynomial-time solvers and the oracle on random instances.
    Compare {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Compared instances per rule family.
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        #[arg(long, value_enum, value_delimiter = ',')]
        families: Option<Vec<Family>>,
    },
}

#[derive(clap::Args)]
struct ProfileInput {
    #[arg(long, value_enum, default_value_t = InputFormat::Json)]
    format: InputFormat,
    /// Profile file; standard input when absent or `-`.
    path: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Preflib,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Solver {
    Auto,
    Polytime,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Scoring,
    Elimveto,
    Copeland,
}

#[derive(Clone, Debug)]
enum RuleSpec {
    Scoring(ScoringVector, Extension),
    Copeland(CopelandRule),
    EliminationVeto,
}

impl FromStr for RuleSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        match kind {
            "scoring" => {
                let (vector, ext) = rest
                    .rsplit_once(':')
                    .ok_or("expected scoring:<vector>:<ext>")?;
                Ok(RuleSpec::Scoring(
                    vector.parse().map_err(|e: Error| e.to_string())?,
                    ext.parse().map_err(|e: Error| e.to_string())?,
                ))
            }
            "copeland" => Ok(RuleSpec::Copeland(rest.parse().map_err(|e: Error| e.to_string())?)),
            "elimveto" if rest.is_empty() => Ok(RuleSpec::EliminationVeto),
            _ => Err(format!("unknown rule {s:?}; use scoring:<vector>:<ext>, copeland:<p/q> or elimveto")),
        }
    }
}

fn read_input(path: Option<&PathBuf>) -> anyhow::Result<Vec<u8>> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf).context("reading standard input")?;
            Ok(buf)
        }
    }
}

fn read_profile(input: &ProfileInput) -> anyhow::Result<Profile> {
    let bytes = read_input(input.path.as_ref())?;
    let format = match input.format {
        InputFormat::Preflib => Format::PreflibToi,
        InputFormat::Json => Format::NativeJson,
    };
    Ok(parse_profile(&bytes, format)?)
}

fn names_of(profile: &Profile, ids: &[CandidateId]) -> Value {
    ids.iter().map(|&c| Value::from(profile.name(c))).collect()
}

fn run(command: Command) -> anyhow::Result<Value> {
    Ok(match command {
        Command::Score { vector, ext, input } => {
            let profile = read_profile(&input)?;
            score_profile(&profile, &vector, ext)?.to_json(&profile.names())
        }
        Command::Winners { rule, input } => {
            let profile = read_profile(&input)?;
            let winners = match rule {
                RuleSpec::Scoring(v, e) => scoring_winners(&profile, &v, e)?,
                RuleSpec::Copeland(r) => copeland_winners(&profile, &r),
                RuleSpec::EliminationVeto => vec![elimination_veto_winner(&profile)?.0],
            };
            names_of(&profile, &winners)
        }
        Command::CheckAxis { model, axis, input } => {
            let profile = read_profile(&input)?;
            let axis = Axis::from_names(&axis, &profile)?;
            let names = profile.names();
            let voters: Vec<Value> = profile
                .voters()
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let witness = validate_vote(&v.order, &axis, model);
                    json!({
                        "voter": i + 1,
                        "valid": witness.is_some(),
                        "decomposition": witness.map(|d| d.to_json(&axis, &names)),
                    })
                })
                .collect();
            let all = voters.iter().all(|v| v["valid"] == Value::Bool(true));
            json!({ "model": model.to_string(), "valid": all, "voters": voters })
        }
        Command::FindAxis { model, input } => {
            let profile = read_profile(&input)?;
            match find_axis(&profile, model)? {
                Some(axis) => axis.to_json(&profile.names()),
                None => Value::from("none"),
            }
        }
        Command::Cwcm {
            solver,
            max_states,
            path,
        } => {
            let bytes = read_input(path.as_ref())?;
            let text = std::str::from_utf8(&bytes).context("instance is not UTF-8")?;
            let instance = instance_from_json(text)?;
            let mut config = OracleConfig::default();
            if let Some(n) = max_states {
                config.max_states = n;
            }
            let oracle = |i| -> anyhow::Result<ManipulationResult> { Ok(solve_cwcm_oracle_with(i, &config)?) };
            let result = match solver {
                Solver::Polytime => solve_polytime(&instance)?,
                Solver::Oracle => oracle(&instance)?,
                Solver::Auto => match solve_polytime(&instance) {
                    Err(Error::NotApplicable(_)) => oracle(&instance)?,
                    other => other?,
                },
            };
            result_to_json(&result)
        }
        Command::GenPartition { items, ext } => {
            let inst = PartitionInstance::new(items)?;
            instance_to_json(&reduce_partition_to_cwcm(&inst, ext)?)
        }
        Command::Compare {
            seed,
            instances,
            families,
        } => {
            let mut config = SweepConfig {
                seed,
                instances,
                ..SweepConfig::default()
            };
            if let Some(f) = families {
                config.families = f
                    .into_iter()
                    .map(|f| match f {
                        Family::Scoring => RuleFamily::Scoring,
                        Family::Elimveto => RuleFamily::EliminationVeto,
                        Family::Copeland => RuleFamily::Copeland,
                    })
                    .collect();
            }
            let report = compare(&config)?;
            let mut value = serde_json::to_value(&report).map_err(|e| anyhow!(e))?;
            value["clean"] = Value::Bool(report.is_clean());
            value
        }
    })
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Capacity(_) | Error::NotApplicable(_)) => 3,
        Some(Error::Domain(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(value) => {
            let mut out = io::stdout().lock();
            // a closed pipe is not worth reporting
            let _ = writeln!(out, "{value}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
