use std::fmt;
use std::path::PathBuf;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use super::schema::{parse_sequence, AlgebraDoc, ParsedSequence};
use super::IoError;
use crate::algebra::{homology, truncate, validate, Block, ChainAlgebra, NatElem};
use crate::oracle::EnumerationBudget;
use crate::toda::{
    adams_d, build_chain_complex, oracle_bracket_set, toda_bracket, triple_indeterminacy, BracketStatus,
    ChainComplexFailure, ChainComplexResult, ChoiceRecord, TodaError,
};
use crate::track::{Kq, Morphism, TrackError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Command {
    Validate,
    Truncate,
    Homology,
    Massey,
    Toda,
    ChainComplex,
    AdamsD,
    Oracle,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Validate,
        Command::Truncate,
        Command::Homology,
        Command::Massey,
        Command::Toda,
        Command::ChainComplex,
        Command::AdamsD,
        Command::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Truncate => "truncate",
            Command::Homology => "homology",
            Command::Massey => "massey",
            Command::Toda => "toda",
            Command::ChainComplex => "chain-complex",
            Command::AdamsD => "adams-d",
            Command::Oracle => "oracle",
        }
    }
}

impl std::str::FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command {s:?}"))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Command and numeric options, independent of where the documents come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub command: Command,
    pub n: Option<usize>,
    pub k: Option<u32>,
    pub budget: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub params: Params,
    pub algebra: PathBuf,
    pub sequence: Option<PathBuf>,
}

/// A failed request: exit code 1 for user errors, 2 for internal ones, with
/// the diagnostics document that is still printed.
#[derive(Clone, Debug, PartialEq)]
pub struct RunError {
    pub code: i32,
    pub message: String,
    pub document: Value,
}

enum Failure {
    User(String, Value),
    Internal(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let message = e.to_string();
        match e {
            IoError::Json { line, column, .. } => Failure::User(message, json!({"kind": "json", "line": line, "column": column})),
            IoError::Schema { path, .. } => Failure::User(message, json!({"kind": "schema", "path": path})),
            IoError::Invalid(v) => Failure::User(message, json!({"kind": "invalid_algebra", "violations": v})),
            IoError::Algebra(_) => Failure::User(message, json!({"kind": "algebra"})),
            IoError::Toda(t) => toda_failure(t),
        }
    }
}

fn toda_failure(t: TodaError) -> Failure {
    let message = t.to_string();
    let kind = match &t {
        TodaError::ConventionViolation(_) => return Failure::Internal(message),
        TodaError::Track(TrackError::InvalidAlgebra(v)) => {
            return Failure::User(message, json!({"kind": "invalid_algebra", "violations": v}))
        }
        TodaError::Track(TrackError::BudgetExceeded { needed, budget }) => {
            return Failure::User(message, json!({"kind": "budget", "needed": needed.to_string(), "budget": budget.to_string()}))
        }
        TodaError::Budget(b) => {
            return Failure::User(message, json!({"kind": "budget", "needed": b.needed.to_string(), "budget": b.budget.to_string()}))
        }
        TodaError::Track(_) => return Failure::Internal(message),
        TodaError::Algebra(_) => "algebra",
        TodaError::TruncationMismatch { .. } => "truncation_mismatch",
        TodaError::SequenceLength { .. } => "sequence_length",
        TodaError::NotComposable { .. } => "not_composable",
        TodaError::Unsupported(_) => "unsupported",
        TodaError::NotACocycle(_) => "not_a_cocycle",
    };
    Failure::User(message, json!({"kind": kind}))
}

impl From<TodaError> for Failure {
    fn from(e: TodaError) -> Self {
        toda_failure(e)
    }
}

impl From<TrackError> for Failure {
    fn from(e: TrackError) -> Self {
        IoError::from(e).into()
    }
}

fn read(path: &PathBuf) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::User(format!("{}: {e}", path.display()), json!({"kind": "io"})))
}

fn decode(bytes: &[u8], what: &str) -> Result<(String, String), Failure> {
    let hash = hex::encode(Sha256::digest(bytes));
    let text = String::from_utf8(bytes.to_vec())
        .map_err(|_| Failure::User(format!("the {what} document is not UTF-8"), json!({"kind": "io"})))?;
    Ok((text, hash))
}

fn elem_strings(q: &ChainAlgebra, b: &Block) -> Value {
    Value::from(b.iter().map(|row| row.iter().map(|e| q.format(e)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// A class of D^k, entry by entry: homology coordinates plus the cycle chosen
/// to represent them. Entries are indexed `[source generator][target generator]`.
pub(crate) fn nat_json(kq: &Kq, e: &NatElem) -> Value {
    let q = kq.algebra();
    let ns = kq.natural(e.level).expect("classes live at available levels");
    let rep = ns.representative(e);
    let entries: Vec<Value> = e
        .entries
        .iter()
        .zip(&rep)
        .map(|(row, reps)| {
            Value::from(
                row.iter()
                    .zip(reps)
                    .map(|(c, r)| json!({"coordinates": c, "cycle": q.format(r)}))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    json!({
        "source": e.source.name,
        "target": e.target.name,
        "level": e.level,
        "zero": e.is_zero(),
        "entries": entries,
    })
}

fn morphism_json(kq: &Kq, f: &Morphism) -> Value {
    let q = kq.algebra();
    let cells: Map<String, Value> = f
        .complex()
        .cells()
        .iter()
        .zip(f.values())
        .map(|(c, v)| (c.to_string(), elem_strings(q, v)))
        .collect();
    Value::Object(cells)
}

fn log_json(log: &[ChoiceRecord]) -> Value {
    serde_json::to_value(log).expect("choice records serialize")
}

fn load_kq(text: &str) -> Result<Kq, Failure> {
    let q = AlgebraDoc::parse(text)?.build()?;
    Ok(Kq::new(q)?)
}

fn need_sequence(req: &Params, sequence: Option<&[u8]>, kq: &Kq) -> Result<(ParsedSequence, String), Failure> {
    let bytes =
        sequence.ok_or_else(|| Failure::User(format!("{} needs a sequence", req.command), json!({"kind": "usage"})))?;
    let (text, hash) = decode(bytes, "sequence")?;
    Ok((parse_sequence(kq, &text)?, hash))
}

fn order_or(req: &Params, default: usize) -> usize {
    req.n.unwrap_or(default)
}

fn execute(
    req: &Params,
    algebra: &[u8],
    sequence: Option<&[u8]>,
    inputs: &mut Map<String, Value>,
) -> Result<Map<String, Value>, Failure> {
    let (alg_text, alg_hash) = decode(algebra, "algebra")?;
    inputs.insert("algebra".into(), json!({ "sha256": alg_hash }));
    let mut out = Map::new();
    let budget = req.budget.map(EnumerationBudget::new).unwrap_or_else(EnumerationBudget::from_env);

    match req.command {
        Command::Validate => {
            let q = AlgebraDoc::parse(&alg_text)?.build()?;
            let report = validate(&q);
            let truncated: Vec<Value> = report.truncated_products.iter().map(|(a, b)| json!([a, b])).collect();
            if !report.is_valid() {
                return Err(Failure::User(
                    format!("the algebra violates {} axiom(s)", report.violations.len()),
                    json!({"kind": "invalid_algebra", "violations": report.violations}),
                ));
            }
            out.insert("status".into(), "valid".into());
            out.insert("truncated_products".into(), truncated.into());
        }
        Command::Truncate => {
            let q = AlgebraDoc::parse(&alg_text)?.build()?;
            let level = req
                .k
                .or(req.n.map(|n| n as u32))
                .ok_or_else(|| Failure::User("truncate needs --k".into(), json!({"kind": "usage"})))?;
            let t = truncate(&q, level).map_err(IoError::from)?;
            out.insert("status".into(), "ok".into());
            out.insert("algebra".into(), serde_json::to_value(AlgebraDoc::from_algebra(&t)).expect("documents serialize"));
        }
        Command::Homology => {
            let q = AlgebraDoc::parse(&alg_text)?.build()?;
            let levels: Vec<u32> = match req.k {
                Some(k) => vec![k],
                None => (0..=q.truncation()).collect(),
            };
            let mut all = Vec::new();
            for k in levels {
                let h = homology(&q, k).map_err(IoError::from)?;
                let groups: Vec<Value> = h
                    .groups()
                    .map(|g| json!({"r": g.r, "cardinality": g.cardinality().to_string(), "generators": g.generators(&q)}))
                    .collect();
                all.push(json!({"k": k, "groups": groups}));
            }
            out.insert("status".into(), "ok".into());
            out.insert("homology".into(), all.into());
        }
        Command::Massey | Command::Toda => {
            let kq = load_kq(&alg_text)?;
            let (parsed, hash) = need_sequence(req, sequence, &kq)?;
            inputs.insert("sequence".into(), json!({ "sha256": hash }));
            let seq = &parsed.sequence;
            let default = if req.command == Command::Massey {
                seq.len().saturating_sub(2)
            } else {
                kq.truncation() as usize
            };
            let n = order_or(req, default);
            out.insert("n".into(), n.into());
            let result = toda_bracket(&kq, seq, n)?;
            match &result.status {
                BracketStatus::Defined { representative } => {
                    out.insert("status".into(), "defined".into());
                    out.insert("representative".into(), nat_json(&kq, representative));
                    if n == 1 {
                        let ind = triple_indeterminacy(&kq, seq)?;
                        let gens: Vec<Value> = ind.generators.iter().map(|g| nat_json(&kq, g)).collect();
                        out.insert(
                            "indeterminacy".into(),
                            json!({"generators": gens, "cardinality": ind.cardinality.to_string()}),
                        );
                    }
                }
                BracketStatus::NotConstructible { step, index, obstacle } => {
                    out.insert("status".into(), "not_constructible".into());
                    out.insert("step".into(), (*step).into());
                    out.insert("index".into(), (*index).into());
                    out.insert("certificate".into(), serde_json::to_value(obstacle).expect("obstacles serialize"));
                }
                BracketStatus::DegreeWindowUnsound { source, target, degree, r_max } => {
                    out.insert("status".into(), "degree_window_unsound".into());
                    out.insert(
                        "window".into(),
                        json!({"source": source, "target": target, "degree": degree, "r_max": r_max}),
                    );
                }
            }
            out.insert("choice_log".into(), log_json(&result.choice_log));
        }
        Command::ChainComplex => {
            let kq = load_kq(&alg_text)?;
            let (parsed, hash) = need_sequence(req, sequence, &kq)?;
            inputs.insert("sequence".into(), json!({ "sha256": hash }));
            let n = order_or(req, kq.truncation() as usize);
            out.insert("n".into(), n.into());
            let result = build_chain_complex(&kq, &parsed.sequence, n)?;
            match &result {
                ChainComplexResult::Built { complex, .. } => {
                    out.insert("status".into(), "built".into());
                    let maps: Vec<Value> = complex
                        .data()
                        .iter()
                        .filter(|((_, k), _)| *k >= 1)
                        .map(|(&(i, k), f)| json!({"index": i, "order": k, "cells": morphism_json(&kq, f)}))
                        .collect();
                    out.insert("maps".into(), maps.into());
                }
                ChainComplexResult::Failed { failure, .. } => {
                    out.insert("status".into(), "failed".into());
                    let detail = match failure {
                        ChainComplexFailure::NotConstructible { step, index, obstacle } => {
                            json!({"kind": "not_constructible", "step": step, "index": index, "certificate": obstacle})
                        }
                        ChainComplexFailure::ObstructionNonzero { index, obstruction, certificate } => json!({
                            "kind": "obstruction_nonzero",
                            "index": index,
                            "obstruction": nat_json(&kq, obstruction),
                            "certificate": certificate,
                        }),
                    };
                    out.insert("failure".into(), detail);
                }
            }
            out.insert("choice_log".into(), log_json(result.choice_log()));
        }
        Command::AdamsD => {
            let kq = load_kq(&alg_text)?;
            let (parsed, hash) = need_sequence(req, sequence, &kq)?;
            inputs.insert("sequence".into(), json!({ "sha256": hash }));
            let (j, module, beta) = parsed
                .beta
                .clone()
                .ok_or_else(|| Failure::User("adams-d needs a beta entry in the sequence".into(), json!({"kind": "usage"})))?;
            let n = order_or(req, kq.truncation() as usize);
            out.insert("n".into(), n.into());
            let built = build_chain_complex(&kq, &parsed.sequence, n)?;
            let Some(complex) = built.complex() else {
                return Err(Failure::User(
                    "the resolution window is not a higher chain complex".into(),
                    json!({"kind": "not_a_chain_complex"}),
                ));
            };
            let result = adams_d(&kq, complex, j, &module, beta)?;
            out.insert("status".into(), if result.vanishes() { "zero" } else { "nonzero" }.into());
            out.insert("representative".into(), nat_json(&kq, &result.raw));
            out.insert("reduced".into(), nat_json(&kq, &result.reduced));
            out.insert("choice_log".into(), log_json(&result.choice_log));
        }
        Command::Oracle => {
            let kq = load_kq(&alg_text)?;
            let (parsed, hash) = need_sequence(req, sequence, &kq)?;
            inputs.insert("sequence".into(), json!({ "sha256": hash }));
            let n = order_or(req, parsed.sequence.len().saturating_sub(2));
            out.insert("n".into(), n.into());
            let set = oracle_bracket_set(&kq, &parsed.sequence, n, budget)?;
            out.insert("status".into(), if set.is_defined() { "defined" } else { "empty" }.into());
            let classes: Vec<Value> = set.classes.iter().map(|c| nat_json(&kq, c)).collect();
            out.insert("size".into(), classes.len().into());
            out.insert("classes".into(), classes.into());
            out.insert("systems".into(), set.systems.to_string().into());
            out.insert("states".into(), set.states.to_string().into());
        }
    }
    Ok(out)
}

/// Runs one request. Identical inputs give byte-identical documents.
pub fn run(req: &Request) -> Result<Value, RunError> {
    let files = read(&req.algebra).and_then(|a| Ok((a, req.sequence.as_ref().map(read).transpose()?)));
    match files {
        Ok((a, s)) => run_documents(&req.params, &a, s.as_deref()),
        Err(f) => finish(&req.params, Map::new(), Err(f)),
    }
}

/// Runs a command on in-memory documents.
pub fn run_documents(params: &Params, algebra: &[u8], sequence: Option<&[u8]>) -> Result<Value, RunError> {
    let mut inputs = Map::new();
    let result = execute(params, algebra, sequence, &mut inputs);
    finish(params, inputs, result)
}

fn finish(
    params: &Params,
    inputs: Map<String, Value>,
    result: Result<Map<String, Value>, Failure>,
) -> Result<Value, RunError> {
    let mut doc = Map::new();
    doc.insert(
        "engine".into(),
        json!({"name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION")}),
    );
    doc.insert("command".into(), params.command.name().into());
    doc.insert("inputs".into(), Value::Object(inputs));
    match result {
        Ok(body) => {
            doc.extend(body);
            Ok(Value::Object(doc))
        }
        Err(f) => {
            let (code, message, detail) = match f {
                Failure::User(m, d) => (1, m, d),
                Failure::Internal(m) => (2, m, json!({"kind": "internal"})),
            };
            doc.insert("status".into(), "error".into());
            doc.insert("error".into(), json!({"message": message, "detail": detail}));
            Err(RunError {
                code,
                message,
                document: Value::Object(doc),
            })
        }
    }
}
