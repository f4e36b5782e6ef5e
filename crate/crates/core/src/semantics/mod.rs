//! Support semantics over finite models.
//!
//! Two independent evaluation routes live here. [`supports`] follows the
//! support clauses literally, quantifying over substates and state splits.
//! [`proposition`] computes the whole proposition bottom-up from the
//! set-level connective operations on [`Proposition`]. Tests check that the
//! two agree.

mod model;
mod proposition;

use std::collections::BTreeSet;

pub use model::{canonical_dep_model, canonical_impl_model, Model, ModelError, ModelFile, MAX_WORLDS};
pub use proposition::{Family, Proposition, PropositionError, State};

use crate::syntax::{BinaryOp, Constant, DepAtom, Formula, Letter, Term, UnaryOp};

/// `M, s ⊨ f`, evaluated clause by clause.
pub fn supports(m: &Model, s: State, f: &Formula) -> bool {
    match f {
        Term::Atom(p) => s.worlds().all(|w| m.is_true(w, p)),
        Term::NegAtom(p) => s.worlds().all(|w| !m.is_true(w, p)),
        Term::Hole(h) => match *h {},
        Term::Const(Constant::Bot) => s.is_empty(),
        Term::Const(Constant::Top) => true,
        Term::Unary(UnaryOp::Neg, a) => s.subsets().all(|t| t.is_empty() || !supports(m, t, a)),
        Term::Unary(UnaryOp::Question, a) => {
            supports(m, s, a) || s.subsets().all(|t| t.is_empty() || !supports(m, t, a))
        }
        Term::Binary(BinaryOp::And, a, b) => supports(m, s, a) && supports(m, s, b),
        Term::Binary(BinaryOp::Or, a, b) => supports(m, s, a) || supports(m, s, b),
        Term::Binary(BinaryOp::Implies, a, b) => s
            .subsets()
            .all(|t| !supports(m, t, a) || supports(m, t, b)),
        Term::Binary(BinaryOp::Tensor, a, b) => s.subsets().any(|t1| {
            supports(m, t1, a) && {
                // t2 ranges over the states with t1 ∪ t2 = s
                let rest = s.difference(t1);
                t1.subsets().any(|extra| supports(m, rest.union(extra), b))
            }
        }),
        Term::Dep(d) => supports_dep(m, s, d),
    }
}

fn supports_dep(m: &Model, s: State, d: &DepAtom<std::convert::Infallible>) -> bool {
    let pairs = || {
        s.worlds()
            .flat_map(move |w| s.worlds().map(move |v| (w, v)))
    };
    if d.is_letters_only() {
        let letter = |t: &Formula| match t {
            Term::Atom(l) => l.clone(),
            _ => unreachable!("letters-only atom"),
        };
        let ante: Vec<Letter> = d.antecedents.iter().map(letter).collect();
        let cons = letter(&d.consequent);
        pairs().all(|(w, v)| {
            let agree = ante.iter().all(|p| m.is_true(w, p) == m.is_true(v, p));
            !agree || m.is_true(w, &cons) == m.is_true(v, &cons)
        })
    } else {
        let at = |w: usize, t: &Formula| supports(m, State::singleton(w), t);
        let conj = |w: usize| d.antecedents.iter().all(|a| at(w, a));
        pairs().all(|(w, v)| conj(w) != conj(v) || at(w, &d.consequent) == at(v, &d.consequent))
    }
}

/// Support at the singleton `{w}`, by truth-table recursion. At singletons
/// every connective behaves classically: tensor is disjunction, `?` and
/// dependence atoms are always supported.
pub fn classical_truth(m: &Model, w: usize, f: &Formula) -> bool {
    match f {
        Term::Atom(p) => m.is_true(w, p),
        Term::NegAtom(p) => !m.is_true(w, p),
        Term::Hole(h) => match *h {},
        Term::Const(Constant::Bot) => false,
        Term::Const(Constant::Top) => true,
        Term::Unary(UnaryOp::Neg, a) => !classical_truth(m, w, a),
        Term::Unary(UnaryOp::Question, _) | Term::Dep(_) => true,
        Term::Binary(BinaryOp::And, a, b) => classical_truth(m, w, a) && classical_truth(m, w, b),
        Term::Binary(BinaryOp::Or | BinaryOp::Tensor, a, b) => {
            classical_truth(m, w, a) || classical_truth(m, w, b)
        }
        Term::Binary(BinaryOp::Implies, a, b) => {
            !classical_truth(m, w, a) || classical_truth(m, w, b)
        }
    }
}

/// `[f]_M`, computed compositionally.
pub fn proposition(m: &Model, f: &Formula) -> Proposition {
    let n = m.world_count();
    let same = "operands share the model";
    match f {
        Term::Atom(p) => Proposition::powerset_of(n, m.truth_set(p)),
        Term::NegAtom(p) => {
            Proposition::powerset_of(n, m.full_state().difference(m.truth_set(p)))
        }
        Term::Hole(h) => match *h {},
        Term::Const(Constant::Bot) => Proposition::bottom(n),
        Term::Const(Constant::Top) => Proposition::top(n),
        Term::Unary(UnaryOp::Neg, a) => proposition(m, a).neg(),
        Term::Unary(UnaryOp::Question, a) => proposition(m, a).question(),
        Term::Binary(op, a, b) => {
            let (a, b) = (proposition(m, a), proposition(m, b));
            match op {
                BinaryOp::And => a.and(&b),
                BinaryOp::Or => a.or(&b),
                BinaryOp::Tensor => a.tensor(&b),
                BinaryOp::Implies => a.implies(&b),
            }
            .expect(same)
        }
        Term::Dep(d) => dep_atom_proposition(m, d),
    }
}

/// The states supporting `f`, collected by calling [`supports`] on every
/// state. The result is a raw family so that a semantic bug would show up
/// as a failed downward-closure check rather than being masked.
pub fn pointwise_family(m: &Model, f: &Formula) -> Family {
    Family::from_states(
        m.world_count(),
        m.full_state().subsets().filter(|s| supports(m, *s, f)),
    )
}

/// The proposition of a dependence atom: the states containing no pair of
/// worlds that agree on the antecedents but disagree on the consequent.
pub fn dep_atom_proposition(m: &Model, d: &DepAtom<std::convert::Infallible>) -> Proposition {
    let n = m.world_count();
    let (keys, values): (Vec<Vec<bool>>, Vec<bool>) = (0..n)
        .map(|w| {
            if d.is_letters_only() {
                let key = d
                    .antecedents
                    .iter()
                    .map(|a| classical_truth(m, w, a))
                    .collect();
                (key, classical_truth(m, w, &d.consequent))
            } else {
                let conj = d.antecedents.iter().all(|a| classical_truth(m, w, a));
                (vec![conj], classical_truth(m, w, &d.consequent))
            }
        })
        .unzip();
    let conflicts = (0..n).flat_map(|w| (w + 1..n).map(move |v| (w, v))).filter(|&(w, v)| {
        keys[w] == keys[v] && values[w] != values[v]
    });
    let bad = Family::from_states(n, conflicts.map(|(w, v)| State::from_worlds([w, v])));
    Proposition::try_from_family(bad.upward_closure().complement())
        .expect("conflict-free states are downward closed")
}

/// `f ≡_M g`.
pub fn equivalent_in(m: &Model, f: &Formula, g: &Formula) -> bool {
    proposition(m, f) == proposition(m, g)
}

/// Checks `f ≡_M g` on every model over the letters of `f` and `g` with
/// 1 to `max_worlds` worlds. Models are enumerated as non-decreasing
/// sequences of world valuations, which removes reorderings of worlds.
pub fn equivalent_upto(f: &Formula, g: &Formula, max_worlds: usize) -> bool {
    assert!(max_worlds <= MAX_WORLDS, "at most {MAX_WORLDS} worlds");
    let letters: Vec<Letter> = f
        .free_letters()
        .union(&g.free_letters())
        .cloned()
        .collect();
    assert!(letters.len() < 32, "too many letters to enumerate valuations");
    let kinds = 1usize << letters.len();
    (1..=max_worlds).all(|n| {
        let mut seq = vec![0usize; n];
        loop {
            let m = model_from_codes(&letters, &seq);
            if !equivalent_in(&m, f, g) {
                return false;
            }
            // next non-decreasing sequence over 0..kinds
            let Some(i) = (0..n).rev().find(|&i| seq[i] + 1 < kinds) else {
                return true;
            };
            let v = seq[i] + 1;
            seq[i..].iter_mut().for_each(|x| *x = v);
        }
    })
}

fn model_from_codes(letters: &[Letter], codes: &[usize]) -> Model {
    let worlds = codes.iter().enumerate().map(|(i, code)| {
        let true_letters: BTreeSet<Letter> = letters
            .iter()
            .enumerate()
            .filter(|(j, _)| code >> j & 1 == 1)
            .map(|(_, l)| l.clone())
            .collect();
        (format!("w{}", i + 1), true_letters)
    });
    Model::new(worlds, letters.iter().cloned()).expect("valid generated model")
}
