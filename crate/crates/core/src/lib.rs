//! Propositional inquisitive and dependence logic over finite models, with
//! an exhaustive engine for deciding which propositions a template formula
//! can define on a fixed model.
//!
//! The pieces, bottom-up:
//!
//! - [`syntax`]: formula and template trees, language signatures, contexts
//!   and substitution.
//! - [`parser`]: the text syntax for formulas and templates, and the JSON
//!   model format.
//! - [`semantics`]: models, states, propositions and support.
//! - [`closure`]: the least set of propositions reachable from generator
//!   propositions under a language's connectives, with witness terms.
//! - [`verify`]: the undefinability harnesses and the brute-force template
//!   enumerator used to cross-check the closure engine.
//! - [`cli`]: the `inqdef` command line.

pub mod cli;
pub mod closure;
pub mod parser;
pub mod semantics;
pub mod syntax;
pub mod verify;

pub use parser::{parse_formula, parse_model, parse_template, render, ParseError};
pub use semantics::{proposition, supports, Model, Proposition, State};
pub use syntax::{Formula, Hole, Language, LanguageSignature, Template, Term};
