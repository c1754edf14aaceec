mod args;

use std::fs;
use std::io::{self, Read};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use kmodal_core::formula::ParseError;
use kmodal_core::kripke::{graft, p_morphism_defects, truncate, unravel, ModelError};
use kmodal_core::unification::{
    chain_check, classify_unifier, exactness_refute, is_projective, margin_rule_admissible,
    weak_margins, ConclusionCheck, UnifierClassification,
};
use kmodal_core::{
    parse, Formula, KripkeModel, Prover, ProverConfig, ProverError, Substitution, TreeModel,
    UnificationError, WorldMap,
};
use serde_json::{json, Value};

use args::{Cli, Command, Global, ModelCommand};

const POSITIVE: u8 = 0;
const NEGATIVE: u8 = 1;
const USAGE: u8 = 2;
const RESOURCE: u8 = 3;
const INTERNAL: u8 = 4;

enum Failure {
    Usage(String),
    Resource(String),
    Internal(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ProverError> for Failure {
    fn from(e: ProverError) -> Self {
        Failure::Resource(e.to_string())
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::TooLarge => Failure::Resource(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// A verdict: exit status and the JSON body for stdout.
struct Reply {
    code: u8,
    body: Value,
}

impl Reply {
    fn new(positive: bool, body: Value) -> Self {
        Reply {
            code: if positive { POSITIVE } else { NEGATIVE },
            body,
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| Failure::Usage(format!("{text:?}: {e}")))
}

fn formulas(texts: &[String]) -> Result<Vec<Formula>, Failure> {
    texts.iter().map(|t| formula(t)).collect()
}

fn substitution(text: &str) -> Result<Substitution, Failure> {
    text.parse()
        .map_err(|e: UnificationError| Failure::Usage(e.to_string()))
}

fn read_source(path: &Path) -> Result<String, Failure> {
    let read = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        fs::read_to_string(path)
    };
    read.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read_source(path)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Turns unifier-analysis errors into replies where they carry a
/// certificate.
fn analysis<T>(result: Result<T, UnificationError>) -> Result<Result<T, Reply>, Failure> {
    match result {
        Ok(v) => Ok(Ok(v)),
        Err(UnificationError::NotAUnifier {
            formula,
            countermodel,
        }) => Ok(Err(Reply::new(
            false,
            json!({ "unifier": false, "formula": formula, "countermodel": countermodel }),
        ))),
        Err(UnificationError::Precondition {
            formula,
            countermodel,
        }) => Ok(Err(Reply::new(
            false,
            json!({ "verdict": "unstable", "formula": formula, "countermodel": countermodel }),
        ))),
        Err(UnificationError::Prover(e)) => Err(e.into()),
        Err(UnificationError::Inconsistent(msg)) => Err(Failure::Internal(msg)),
        Err(e) => Err(Failure::Usage(e.to_string())),
    }
}

fn prover(global: &Global) -> Prover {
    let defaults = ProverConfig::default();
    Prover::new(ProverConfig {
        max_nodes: global.max_nodes.unwrap_or(defaults.max_nodes),
        max_closure: global.max_closure.unwrap_or(defaults.max_closure),
    })
}

fn run(cli: Cli) -> Result<Reply, Failure> {
    let prover = prover(&cli.global);
    match cli.command {
        Command::Prove { formula: text } => {
            let verdict = prover.prove(&formula(&text)?)?;
            Ok(Reply::new(verdict.is_proved(), to_value(&verdict)))
        }
        Command::Conseq {
            premises,
            formula: text,
        } => {
            let verdict = prover.global_consequence(&formulas(&premises)?, &formula(&text)?)?;
            Ok(Reply::new(verdict.is_derivable(), to_value(&verdict)))
        }
        Command::Rule {
            premises,
            conclusions,
        } => {
            let premises = formulas(&premises)?;
            let mut checks = Vec::new();
            for c in formulas(&conclusions)? {
                let verdict = prover.global_consequence(&premises, &c)?;
                let done = verdict.is_derivable();
                checks.push(ConclusionCheck {
                    conclusion: c,
                    verdict,
                });
                if done {
                    break;
                }
            }
            let derivable = checks.last().is_some_and(|c| c.verdict.is_derivable());
            Ok(Reply::new(
                derivable,
                json!({ "derivable": derivable, "conclusions": checks }),
            ))
        }
        Command::Classify { subst } => {
            let c = analysis(classify_unifier(&prover, &substitution(&subst)?))?;
            Ok(match c {
                Ok(c) => Reply::new(
                    matches!(c, UnifierClassification::Unifier { .. }),
                    to_value(&c),
                ),
                Err(reply) => reply,
            })
        }
        Command::Margins { formula: text } => {
            Ok(match analysis(weak_margins(&prover, &formula(&text)?))? {
                Ok(margin) => Reply::new(true, to_value(&margin)),
                Err(reply) => reply,
            })
        }
        Command::Chain { n } => {
            let mut reports = Vec::with_capacity(n + 1);
            for level in 0..=n {
                reports.push(chain_check(&prover, level)?);
            }
            let passed = reports.iter().all(|r| r.passed);
            Ok(Reply::new(
                passed,
                json!({ "passed": passed, "levels": reports }),
            ))
        }
        Command::Projective { gamma, subst } => {
            let r = analysis(is_projective(
                &prover,
                &formulas(&gamma)?,
                &substitution(&subst)?,
            ))?;
            Ok(match r {
                Ok(report) => Reply::new(report.projective, to_value(&report)),
                Err(reply) => reply,
            })
        }
        Command::Exactness {
            gamma,
            subst,
            bound,
            probes,
        } => {
            let r = analysis(exactness_refute(
                &prover,
                &formulas(&gamma)?,
                &substitution(&subst)?,
                bound,
                &formulas(&probes)?,
            ))?;
            Ok(match r {
                Ok(None) => Reply::new(true, json!({ "witness": null })),
                Ok(Some(w)) => Reply::new(false, json!({ "witness": w })),
                Err(reply) => reply,
            })
        }
        Command::AdmissibleMargin { conclusions } => {
            let r = analysis(margin_rule_admissible(&prover, &formulas(&conclusions)?))?;
            Ok(match r {
                Ok(report) => Reply::new(report.admissible, to_value(&report)),
                Err(reply) => reply,
            })
        }
        Command::Model(cmd) => model(cmd),
    }
}

fn read_model(path: &Path) -> Result<KripkeModel, Failure> {
    Ok(KripkeModel::from_json(&read_source(path)?)?)
}

fn model(cmd: ModelCommand) -> Result<Reply, Failure> {
    match cmd {
        ModelCommand::Eval {
            model,
            world,
            formula: text,
        } => {
            let phi = formula(&text)?;
            let value = read_model(&model)?.eval(&world, &phi)?;
            Ok(Reply::new(
                value,
                json!({ "world": world, "formula": phi, "value": value }),
            ))
        }
        ModelCommand::Unravel {
            model,
            world,
            depth,
            map_out,
        } => {
            let (tree, map) = unravel(&read_model(&model)?, &world, depth)?;
            if let Some(path) = map_out {
                let text = serde_json::to_string(&map).expect("maps serialize");
                fs::write(&path, text)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            Ok(Reply::new(true, to_value(&tree)))
        }
        ModelCommand::Truncate { tree, depth } => {
            let tree: TreeModel = read_json(&tree)?;
            Ok(Reply::new(true, to_value(&truncate(&tree, depth)?)))
        }
        ModelCommand::Graft {
            left,
            right,
            from,
            to,
        } => {
            let h = graft(&read_model(&left)?, &read_model(&right)?, &from, &to)?;
            Ok(Reply::new(true, to_value(&h)))
        }
        ModelCommand::Pmorphism {
            source,
            target,
            map,
        } => {
            let map: WorldMap = read_json(&map)?;
            let defects = p_morphism_defects(&map, &read_model(&source)?, &read_model(&target)?);
            Ok(Reply::new(
                defects.is_empty(),
                json!({ "p_morphism": defects.is_empty(), "defects": defects }),
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { POSITIVE });
        }
    };
    let quiet = cli.global.quiet;
    let (code, message) = match run(cli) {
        Ok(reply) => {
            if !quiet {
                println!("{}", reply.body);
            }
            (reply.code, None)
        }
        Err(Failure::Usage(m)) => (USAGE, Some(m)),
        Err(Failure::Resource(m)) => (RESOURCE, Some(m)),
        Err(Failure::Internal(m)) => (INTERNAL, Some(format!("internal consistency failure: {m}"))),
    };
    if let Some(m) = message {
        eprintln!("kmodal: {m}");
    }
    ExitCode::from(code)
}
