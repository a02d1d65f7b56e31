//! Profile ingestion and canonical serialization.
//!
//! Two formats are supported:
//!
//! * native JSON: `{"candidates": [names...], "voters": [{"weight": n, "groups": [[ids...]...]}...]}`
//!   with zero-based candidate ids;
//! * PrefLib-style order files (soc/soi/toc/toi bodies). Header lines start
//!   with `#`; only `NUMBER ALTERNATIVES` and `ALTERNATIVE NAME i` are read.
//!   Ballot lines look like `3: 1,{2,3},4` with one-based ids and tied
//!   groups in braces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::{CandidateId, OrderClass, Profile, WeakOrder, WeightedVoter};
use crate::weight::{self, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    PreflibToi,
    NativeJson,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct VoterJson {
    #[serde(with = "weight::serde_number")]
    pub weight: Weight,
    pub groups: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct ProfileJson {
    candidates: Vec<String>,
    voters: Vec<VoterJson>,
}

impl VoterJson {
    pub(crate) fn from_voter(voter: &WeightedVoter) -> Self {
        VoterJson {
            weight: voter.weight.clone(),
            groups: groups_to_indices(&voter.order),
        }
    }

    pub(crate) fn into_voter(self, m: usize) -> Result<WeightedVoter> {
        Ok(WeightedVoter {
            order: indices_to_order(self.groups, m)?,
            weight: self.weight,
        })
    }
}

pub(crate) fn groups_to_indices(order: &WeakOrder) -> Vec<Vec<usize>> {
    order
        .groups()
        .iter()
        .map(|g| g.iter().map(|c| c.index()).collect())
        .collect()
}

pub(crate) fn indices_to_order(groups: Vec<Vec<usize>>, m: usize) -> Result<WeakOrder> {
    WeakOrder::new(
        groups
            .into_iter()
            .map(|g| g.into_iter().map(CandidateId).collect())
            .collect(),
        m,
    )
}

pub fn parse_profile(text: &[u8], format: Format) -> Result<Profile> {
    let text = std::str::from_utf8(text).map_err(|e| Error::Parse {
        line: 0,
        message: format!("input is not UTF-8: {e}"),
    })?;
    match format {
        Format::NativeJson => parse_json(text),
        Format::PreflibToi => parse_preflib(text),
    }
}

pub fn serialize_profile(profile: &Profile, format: Format) -> Vec<u8> {
    match format {
        Format::NativeJson => {
            let doc = ProfileJson {
                candidates: profile.names(),
                voters: profile.voters().iter().map(VoterJson::from_voter).collect(),
            };
            let mut out = serde_json::to_vec(&doc).expect("profile serializes");
            out.push(b'\n');
            out
        }
        Format::PreflibToi => write_preflib(profile).into_bytes(),
    }
}

fn parse_json(text: &str) -> Result<Profile> {
    let doc: ProfileJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let m = doc.candidates.len();
    let voters = doc
        .voters
        .into_iter()
        .map(|v| v.into_voter(m))
        .collect::<Result<Vec<_>>>()?;
    Profile::new(doc.candidates, voters)
}

fn parse_preflib(text: &str) -> Result<Profile> {
    let mut declared: Option<usize> = None;
    let mut names: Vec<(usize, String)> = Vec::new();
    let mut ballots: Vec<(usize, Weight, Vec<Vec<usize>>)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('#') {
            let header = header.trim();
            if let Some(rest) = header.strip_prefix("NUMBER ALTERNATIVES:") {
                let m = rest.trim().parse().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("bad alternative count {:?}", rest.trim()),
                })?;
                declared = Some(m);
            } else if let Some(rest) = header.strip_prefix("ALTERNATIVE NAME") {
                let (idx, name) = rest.split_once(':').ok_or_else(|| Error::Parse {
                    line: lineno,
                    message: "expected `ALTERNATIVE NAME i: name`".into(),
                })?;
                let idx: usize = idx.trim().parse().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("bad alternative index {:?}", idx.trim()),
                })?;
                if idx == 0 {
                    return Err(Error::Parse {
                        line: lineno,
                        message: "alternatives are numbered from 1".into(),
                    });
                }
                names.push((idx, name.trim().to_string()));
            }
            continue;
        }
        let (count, body) = line.split_once(':').ok_or_else(|| Error::Parse {
            line: lineno,
            message: "expected `count: ballot`".into(),
        })?;
        let weight: Weight = count.trim().parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("bad multiplicity {:?}", count.trim()),
        })?;
        let groups = parse_ballot(body, lineno)?;
        ballots.push((lineno, weight, groups));
    }

    let m = match declared {
        Some(m) => m,
        None => names.iter().map(|(i, _)| *i).max().unwrap_or(0),
    };
    let mut table: Vec<Option<String>> = vec![None; m];
    for (idx, name) in names {
        if idx > m {
            return Err(Error::Validation(format!(
                "name declared for alternative {idx} but only {m} alternatives exist"
            )));
        }
        table[idx - 1] = Some(name);
    }
    let names = table
        .into_iter()
        .enumerate()
        .map(|(i, n)| n.unwrap_or_else(|| format!("c{}", i + 1)))
        .collect();

    let mut voters = Vec::with_capacity(ballots.len());
    for (lineno, weight, groups) in ballots {
        let zero_based = groups
            .into_iter()
            .map(|g| g.into_iter().map(|c| c - 1).collect())
            .collect();
        let order = indices_to_order(zero_based, m).map_err(|e| match e {
            Error::Validation(msg) => Error::Validation(format!("line {lineno}: {msg}")),
            other => other,
        })?;
        voters.push(WeightedVoter { order, weight });
    }
    Profile::new(names, voters)
}

fn parse_ballot(body: &str, line: usize) -> Result<Vec<Vec<usize>>> {
    let err = |message: String| Error::Parse { line, message };
    let mut groups = Vec::new();
    let mut chars = body.trim().chars().peekable();
    let read_id = |token: &str| -> Result<usize> {
        let id: usize = token
            .trim()
            .parse()
            .map_err(|_| err(format!("bad candidate id {:?}", token.trim())))?;
        if id == 0 {
            return Err(err("candidate ids are numbered from 1".into()));
        }
        Ok(id)
    };
    loop {
        while chars.peek().is_some_and(|c| c.is_whitespace()) {
            chars.next();
        }
        match chars.peek() {
            None => break,
            Some('{') => {
                chars.next();
                let mut inner = String::new();
                loop {
                    match chars.next() {
                        Some('}') => break,
                        Some('{') => return Err(err("nested braces".into())),
                        Some(c) => inner.push(c),
                        None => return Err(err("unclosed brace".into())),
                    }
                }
                let group = inner
                    .split(',')
                    .map(read_id)
                    .collect::<Result<Vec<_>>>()?;
                groups.push(group);
            }
            Some(_) => {
                let mut token = String::new();
                while let Some(&c) = chars.peek() {
                    if c == ',' {
                        break;
                    }
                    if c == '{' || c == '}' {
                        return Err(err("brace inside a candidate id".into()));
                    }
                    token.push(c);
                    chars.next();
                }
                groups.push(vec![read_id(&token)?]);
            }
        }
        while chars.peek().is_some_and(|c| c.is_whitespace()) {
            chars.next();
        }
        match chars.next() {
            None => break,
            Some(',') => {
                if chars.peek().is_none() {
                    return Err(err("trailing comma".into()));
                }
            }
            Some(c) => return Err(err(format!("unexpected character {c:?}"))),
        }
    }
    if groups.is_empty() {
        return Err(err("empty ballot".into()));
    }
    Ok(groups)
}

fn write_preflib(profile: &Profile) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let has_ties = profile
        .voters()
        .iter()
        .any(|v| crate::order::classify_order(&v.order) != OrderClass::Total);
    let total: num_bigint::BigUint = profile.voters().iter().map(|v| v.weight.value()).sum();
    let _ = writeln!(out, "# DATA TYPE: {}", if has_ties { "toc" } else { "soc" });
    let _ = writeln!(out, "# NUMBER ALTERNATIVES: {}", profile.num_candidates());
    for c in profile.candidates() {
        let _ = writeln!(out, "# ALTERNATIVE NAME {}: {}", c.id.index() + 1, c.name);
    }
    let _ = writeln!(out, "# NUMBER VOTERS: {total}");
    let _ = writeln!(out, "# NUMBER UNIQUE ORDERS: {}", profile.voters().len());
    for voter in profile.voters() {
        let body: Vec<String> = voter
            .order
            .groups()
            .iter()
            .map(|g| {
                let ids: Vec<String> = g.iter().map(|c| (c.index() + 1).to_string()).collect();
                if g.len() == 1 {
                    ids[0].clone()
                } else {
                    format!("{{{}}}", ids.join(","))
                }
            })
            .collect();
        let _ = writeln!(out, "{}: {}", voter.weight, body.join(","));
    }
    out
}
