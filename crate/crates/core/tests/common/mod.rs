#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use inqdef::syntax::{BinaryOp, DepAtom, Formula, Letter, Term, UnaryOp};
use inqdef::Model;
use proptest::prelude::*;

pub const LETTERS: [&str; 3] = ["p", "q", "r"];

pub fn models_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

pub fn model_path(name: &str) -> String {
    models_dir().join(name).to_string_lossy().into_owned()
}

pub fn letter() -> impl Strategy<Value = Letter> {
    prop::sample::select(&LETTERS[..]).prop_map(Letter::from)
}

/// Models with 1 to 3 worlds over `p, q, r`.
pub fn small_model() -> impl Strategy<Value = Model> {
    prop::collection::vec(0u8..8, 1..=3).prop_map(|codes| model_from_codes(&codes, &LETTERS))
}

/// Models over `p, q` in which `r` is in the universe but false everywhere.
pub fn model_with_fresh_r() -> impl Strategy<Value = Model> {
    prop::collection::vec(0u8..4, 1..=3).prop_map(|codes| model_from_codes(&codes, &["p", "q"]))
}

fn model_from_codes(codes: &[u8], letters: &[&str]) -> Model {
    let worlds = codes.iter().enumerate().map(|(i, code)| {
        let true_letters: BTreeSet<Letter> = letters
            .iter()
            .enumerate()
            .filter(|(b, _)| code >> b & 1 == 1)
            .map(|(_, l)| Letter::from(*l))
            .collect();
        (format!("w{}", i + 1), true_letters)
    });
    Model::new(worlds, LETTERS.iter().map(|l| Letter::from(*l))).unwrap()
}

/// Classical formulas: letters, literal negations, `bot`, `/\` and `(x)`.
pub fn classical(depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        letter().prop_map(Term::Atom),
        letter().prop_map(Term::NegAtom),
        Just(Term::bot()),
    ];
    leaf.prop_recursive(depth, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::tensor(a, b)),
        ]
    })
}

fn dep_atom(args: BoxedStrategy<Formula>) -> impl Strategy<Value = Formula> {
    (prop::collection::vec(args.clone(), 0..=2), args).prop_map(|(antecedents, consequent)| {
        Term::Dep(DepAtom {
            antecedents,
            consequent: Box::new(consequent),
        })
    })
}

/// Formulas of the full signature up to the given depth: every connective,
/// with dependence atoms over letters or classical arguments.
pub fn formula(depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => letter().prop_map(Term::Atom),
        1 => Just(Term::bot()),
        1 => Just(Term::top()),
        1 => dep_atom(letter().prop_map(Term::Atom).boxed()),
        1 => dep_atom(classical(1).boxed()),
    ];
    leaf.prop_recursive(depth, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Term::Unary(UnaryOp::Neg, Box::new(a))),
            inner.clone().prop_map(|a| Term::Unary(UnaryOp::Question, Box::new(a))),
            binary(inner.clone(), BinaryOp::And),
            binary(inner.clone(), BinaryOp::Or),
            binary(inner.clone(), BinaryOp::Tensor),
            binary(inner, BinaryOp::Implies),
        ]
    })
}

/// Formulas of the dependence language with letters-only atoms.
pub fn d_formula(depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        letter().prop_map(Term::Atom),
        letter().prop_map(Term::NegAtom),
        Just(Term::bot()),
        Just(Term::top()),
        dep_atom(letter().prop_map(Term::Atom).boxed()),
    ];
    leaf.prop_recursive(depth, 32, 2, |inner| {
        prop_oneof![
            binary(inner.clone(), BinaryOp::And),
            binary(inner, BinaryOp::Tensor),
        ]
    })
}

fn binary(inner: BoxedStrategy<Formula>, op: BinaryOp) -> impl Strategy<Value = Formula> {
    (inner.clone(), inner).prop_map(move |(a, b)| Term::Binary(op, Box::new(a), Box::new(b)))
}
