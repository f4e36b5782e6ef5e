//! The `inqdef` command line.
//!
//! Exit codes: 0 when the command succeeded or the claim was confirmed,
//! 1 when a claim was refuted (a definition or counterexample was found),
//! 2 on usage, parse or format errors.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::closure::{ops_for, ClosureError, semantic_closure, GeneratorConfig, GeneratorSet, DEFAULT_CAP};
use crate::parser::{parse_formula, parse_model};
use crate::semantics::{proposition, supports, Model, Proposition};
use crate::syntax::{Formula, Language};
use crate::verify::{cross_check, render_template, Theorem};

pub const EXIT_CONFIRMED: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "inqdef", version, about = "Definability checks for inquisitive and dependence logics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a state supports a formula.
    Eval {
        model: PathBuf,
        /// Comma-separated world names; empty for the empty state.
        state: String,
        formula: String,
        #[arg(long, default_value = "all", value_parser = parse_language)]
        sig: Language,
    },
    /// Print a formula's proposition as its maximal states.
    Prop {
        model: PathBuf,
        formula: String,
        #[arg(long, default_value = "all", value_parser = parse_language)]
        sig: Language,
    },
    /// Run an undefinability harness on its canonical model.
    Verify {
        #[arg(value_parser = parse_theorem)]
        theorem: Theorem,
        /// Run in another signature (e.g. `inq+` as a negative control).
        #[arg(long, value_parser = parse_language)]
        sig: Option<Language>,
        #[arg(long)]
        json: bool,
    },
    /// List the closure members with witnesses.
    Closure {
        model: PathBuf,
        #[arg(long, value_parser = parse_language)]
        sig: Language,
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Check the closure against exhaustive template enumeration.
    Crosscheck {
        model: PathBuf,
        #[arg(long, value_parser = parse_language)]
        sig: Language,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 7)]
        max_size: usize,
        #[arg(long)]
        json: bool,
    },
}

fn parse_language(s: &str) -> Result<Language, String> {
    s.parse().map_err(|e: crate::syntax::UnknownLanguage| e.to_string())
}

fn parse_theorem(s: &str) -> Result<Theorem, String> {
    s.parse()
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureMember {
    pub proposition: Proposition,
    pub rendered: String,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub model: Model,
    pub signature: Language,
    pub closure_size: usize,
    pub rounds: usize,
    pub op_applications: usize,
    pub members: Vec<ClosureMember>,
}

/// Closure of `m` in `lang` over the given arguments, with witnesses
/// rendered as templates. Without arguments only the constants seed it.
pub fn closure_report(
    m: &Model,
    lang: Language,
    left: Option<&Formula>,
    right: Option<&Formula>,
) -> Result<ClosureReport, ClosureError> {
    let signature = lang.signature();
    let config = GeneratorConfig::default();
    let g = if left.is_none() && right.is_none() {
        GeneratorSet::new(m.world_count())
    } else {
        GeneratorSet::build(m, &signature, left, right, &config)?
    };
    let c = semantic_closure(m, &g, &ops_for(&signature), DEFAULT_CAP)?;
    let members = c
        .members()
        .map(|(p, w)| ClosureMember {
            proposition: p.clone(),
            rendered: p.render(m),
            witness: render_template(
                &w.to_template(c.generators()),
                &signature,
                &config.fresh_letters[0],
            ),
        })
        .collect();
    Ok(ClosureReport {
        model: m.clone(),
        signature: lang,
        closure_size: c.len(),
        rounds: c.rounds,
        op_applications: c.op_applications,
        members,
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code: EXIT_ERROR,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(EXIT_CONFIRMED, text)
            }
        }
    }
}

fn load_model(path: &Path) -> Result<Model, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_model(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn formula(text: &str, lang: Language) -> Result<Formula, String> {
    parse_formula(text, &lang.signature()).map_err(|e| format!("`{text}`: {e}"))
}

fn check_letters(m: &Model, f: &Formula) -> Result<(), String> {
    match f.free_letters().iter().find(|l| !m.letter_universe().contains(*l)) {
        Some(l) => Err(format!("letter `{l}` is not in the model's letter universe")),
        None => Ok(()),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn execute(command: Command) -> Outcome {
    match try_execute(command) {
        Ok(outcome) => outcome,
        Err(message) => Outcome::error(message),
    }
}

fn try_execute(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Eval {
            model,
            state,
            formula: text,
            sig,
        } => {
            let m = load_model(&model)?;
            let s = m.state_from_names(&state).map_err(|e| e.to_string())?;
            let f = formula(&text, sig)?;
            Ok(Outcome::ok(EXIT_CONFIRMED, format!("{}\n", supports(&m, s, &f))))
        }
        Command::Prop {
            model,
            formula: text,
            sig,
        } => {
            let m = load_model(&model)?;
            let f = formula(&text, sig)?;
            Ok(Outcome::ok(EXIT_CONFIRMED, format!("{}\n", proposition(&m, &f).render(&m))))
        }
        Command::Verify { theorem, sig, json } => {
            let report = theorem.run(sig).map_err(|e| e.to_string())?;
            let code = if report.defined { EXIT_REFUTED } else { EXIT_CONFIRMED };
            let out = if json { to_json(&report) } else { report.summary() };
            Ok(Outcome::ok(code, out))
        }
        Command::Closure {
            model,
            sig,
            left,
            right,
            json,
        } => {
            let m = load_model(&model)?;
            let left = left.map(|t| formula(&t, sig)).transpose()?;
            let right = right.map(|t| formula(&t, sig)).transpose()?;
            for f in left.iter().chain(&right) {
                check_letters(&m, f)?;
            }
            let report = closure_report(&m, sig, left.as_ref(), right.as_ref())
                .map_err(|e| e.to_string())?;
            if json {
                return Ok(Outcome::ok(EXIT_CONFIRMED, to_json(&report)));
            }
            let mut out = format!(
                "{} members, rounds: {}, operation applications: {}\n",
                report.closure_size, report.rounds, report.op_applications
            );
            for member in &report.members {
                out.push_str(&format!("{}    {}\n", member.rendered, member.witness));
            }
            Ok(Outcome::ok(EXIT_CONFIRMED, out))
        }
        Command::Crosscheck {
            model,
            sig,
            left,
            right,
            max_size,
            json,
        } => {
            if max_size == 0 {
                return Err("--max-size must be at least 1".into());
            }
            let m = load_model(&model)?;
            let (left, right) = (formula(&left, sig)?, formula(&right, sig)?);
            check_letters(&m, &left)?;
            check_letters(&m, &right)?;
            let report = cross_check(&m, &sig.signature(), &left, &right, max_size)
                .map_err(|e| e.to_string())?;
            let code = if report.passed() { EXIT_CONFIRMED } else { EXIT_REFUTED };
            let out = if json { to_json(&report) } else { report.summary() };
            Ok(Outcome::ok(code, out))
        }
    }
}
