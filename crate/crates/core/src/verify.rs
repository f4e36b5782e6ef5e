//! Undefinability harnesses and the brute-force template oracle.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closure::{
    self, letter_dep_atoms, ops_for, semantic_closure, ClosureError, ClosureResult, GeneratorConfig,
    GeneratorSet, DEFAULT_CAP,
};
use crate::parser::render_abbreviated;
use crate::semantics::{
    canonical_dep_model, canonical_impl_model, classical_truth, dep_atom_proposition,
    pointwise_family, proposition, Model, Proposition, PropositionError, State,
};
use crate::syntax::{
    DepAtomPolicy, Formula, Hole, Language, LanguageSignature, Letter, NegationPolicy,
    SubstitutionError, Template, Term,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Closure(#[from] ClosureError),
    #[error(transparent)]
    Substitution(#[from] SubstitutionError),
    #[error(transparent)]
    Proposition(#[from] PropositionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    Implication,
    GlobalorD,
    GlobalorDplus,
}

impl Theorem {
    pub const ALL: [Theorem; 3] = [Theorem::Implication, Theorem::GlobalorD, Theorem::GlobalorDplus];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Implication => "implication",
            Theorem::GlobalorD => "globalor-d",
            Theorem::GlobalorDplus => "globalor-dplus",
        }
    }

    pub fn default_language(self) -> Language {
        match self {
            Theorem::Implication => Language::InqMinus,
            Theorem::GlobalorD => Language::D,
            Theorem::GlobalorDplus => Language::DPlus,
        }
    }

    /// Runs the harness, optionally in a signature other than the default.
    pub fn run(self, lang: Option<Language>) -> Result<UndefinabilityReport, VerifyError> {
        let lang = lang.unwrap_or(self.default_language());
        let mut report = match self {
            Theorem::Implication => verify_implication_in(lang)?,
            Theorem::GlobalorD | Theorem::GlobalorDplus => verify_globalor_undefinability(lang)?,
        };
        report.theorem = self;
        Ok(report)
    }
}

impl std::str::FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown theorem `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenHit {
    pub label: String,
    pub proposition: Proposition,
    pub present: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UndefinabilityReport {
    pub theorem: Theorem,
    pub model: Model,
    pub signature: Language,
    pub target_label: String,
    pub target_proposition: Proposition,
    pub closure_size: usize,
    pub defined: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub forbidden_hits: Vec<ForbiddenHit>,
    /// Outcome of the generalized dependence-atom check, when one was run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dep_triviality: Option<bool>,
}

impl UndefinabilityReport {
    /// Human-readable report.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let verdict = if self.defined { "DEFINABLE" } else { "UNDEFINABLE" };
        match &self.witness {
            Some(w) => out.push_str(&format!("{verdict}, witness {w}\n")),
            None => out.push_str(&format!("{verdict}\n")),
        }
        out.push_str(&format!("theorem: {}\n", self.theorem.name()));
        out.push_str(&format!("signature: {}\n", self.signature));
        out.push_str(&format!(
            "target: [{}] = {}\n",
            self.target_label,
            self.target_proposition.render(&self.model)
        ));
        out.push_str(&format!("closure size: {}\n", self.closure_size));
        if let Some(t) = self.dep_triviality {
            out.push_str(&format!("dependence atoms trivial: {t}\n"));
        }
        for hit in &self.forbidden_hits {
            let mark = if hit.present { "in closure" } else { "absent" };
            out.push_str(&format!(
                "  [{}] = {}: {mark}\n",
                hit.label,
                hit.proposition.render(&self.model)
            ));
        }
        out
    }
}

/// Renders a template the way the signature's users write it: in the
/// dependence languages `top` is spelled through the fresh letter.
pub fn render_template(t: &Template, sig: &LanguageSignature, fresh: &Letter) -> String {
    if sig.negation_policy == NegationPolicy::LiteralOnly {
        render_abbreviated(t.body(), fresh)
    } else {
        t.to_string()
    }
}

fn run_harness(
    m: &Model,
    lang: Language,
    left: &Formula,
    right: &Formula,
    target: &Formula,
    auxiliary: &[Formula],
) -> Result<(UndefinabilityReport, ClosureResult), VerifyError> {
    let sig = lang.signature();
    let config = GeneratorConfig::default();
    let g = GeneratorSet::build(m, &sig, Some(left), Some(right), &config)?;
    let c = semantic_closure(m, &g, &ops_for(&sig), DEFAULT_CAP)?;
    let target_proposition = proposition(m, target);
    let witness = c
        .contains(&target_proposition)?
        .map(|w| render_template(&w.to_template(c.generators()), &sig, &config.fresh_letters[0]));
    let forbidden_hits = auxiliary
        .iter()
        .map(|f| {
            let p = proposition(m, f);
            Ok(ForbiddenHit {
                label: f.to_string(),
                present: c.contains(&p)?.is_some(),
                proposition: p,
            })
        })
        .collect::<Result<_, PropositionError>>()?;
    let dep_triviality = (sig.dep_atom_policy == DepAtomPolicy::ClassicalArgs).then(|| {
        let excluded = left.free_letters().union(&right.free_letters()).cloned().collect();
        check_dep_triviality(m, &excluded, config.dep_depth)
    });
    let report = UndefinabilityReport {
        theorem: Theorem::Implication,
        model: m.clone(),
        signature: lang,
        target_label: target.to_string(),
        target_proposition,
        closure_size: c.len(),
        defined: witness.is_some(),
        witness,
        forbidden_hits,
        dep_triviality,
    };
    Ok((report, c))
}

fn qp() -> Formula {
    Term::question(Term::atom("p"))
}

fn qq() -> Formula {
    Term::question(Term::atom("q"))
}

/// The three propositions no implication-free context reaches over the
/// implication model: `A = [?p -> ?q]`, `B = [?q -> ?p]`, `C = A ∩ B`.
pub fn implication_forbidden() -> [Formula; 3] {
    let a = Term::implies(qp(), qq());
    let b = Term::implies(qq(), qp());
    let c = Term::and(a.clone(), b.clone());
    [a, b, c]
}

/// Six formulas whose propositions make up the dependence closure over the
/// dependence model.
pub fn dependence_closure_formulas() -> [Formula; 6] {
    let cp = || Term::constancy(Term::atom("p"));
    let cq = || Term::constancy(Term::atom("q"));
    let both = || Term::and(cp(), cq());
    [
        Term::top(),
        Term::tensor(both(), both()),
        cp(),
        cq(),
        both(),
        Term::bot(),
    ]
}

pub fn verify_implication_undefinability() -> Result<UndefinabilityReport, VerifyError> {
    verify_implication_in(Language::InqMinus)
}

/// The implication harness in an arbitrary signature; with INQ⁺ the
/// implication defines itself.
pub fn verify_implication_in(lang: Language) -> Result<UndefinabilityReport, VerifyError> {
    let m = canonical_impl_model();
    let [a, b, c] = implication_forbidden();
    let (mut report, _) = run_harness(&m, lang, &qp(), &qq(), &a, &[a.clone(), b, c])?;
    report.theorem = Theorem::Implication;
    Ok(report)
}

/// The global-disjunction harness over the dependence model, with
/// `=(p)` and `=(q)` as arguments.
pub fn verify_globalor_undefinability(lang: Language) -> Result<UndefinabilityReport, VerifyError> {
    let m = canonical_dep_model();
    let (cp, cq) = (Term::constancy(Term::atom("p")), Term::constancy(Term::atom("q")));
    let target = Term::or(cp.clone(), cq.clone());
    let (mut report, _) = run_harness(&m, lang, &cp, &cq, &target, &dependence_closure_formulas())?;
    report.theorem = if lang == Language::DPlus {
        Theorem::GlobalorDplus
    } else {
        Theorem::GlobalorD
    };
    Ok(report)
}

/// Every member is `{∅}` or contains all singletons. Requires three worlds.
pub fn check_singleton_property<'a>(
    members: impl IntoIterator<Item = &'a Proposition>,
    m: &Model,
) -> bool {
    assert_eq!(m.world_count(), 3, "the singleton property is stated for three worlds");
    members.into_iter().all(|p| {
        p.is_bottom() || (0..m.world_count()).all(|w| p.contains(State::singleton(w)))
    })
}

/// Whether every dependence atom over the letters outside `excluded` is
/// equivalent to `top` in `m`.
///
/// The semantic core (all worlds agree on those letters) is necessary and
/// sufficient, and is confirmed by a sweep: letters-only atoms with up to
/// two antecedents, and generalized atoms whose arguments are classical
/// formulas of depth at most `depth`. Generalized atoms only depend on the
/// truth tables of their arguments, so the sweep keeps one formula per
/// truth table.
pub fn check_dep_triviality(m: &Model, excluded: &BTreeSet<Letter>, depth: usize) -> bool {
    let letters: Vec<Letter> = m
        .letter_universe()
        .iter()
        .filter(|l| !excluded.contains(*l))
        .cloned()
        .collect();
    let n = m.world_count();
    let core = letters
        .iter()
        .all(|l| (1..n).all(|w| m.is_true(w, l) == m.is_true(0, l)));
    if !core {
        return false;
    }
    let top = Proposition::top(n);
    let is_top = |f: &Formula| match f {
        Term::Dep(d) => dep_atom_proposition(m, d) == top,
        _ => unreachable!(),
    };

    for c in &letters {
        for a in 0..letters.len() {
            for b in a..letters.len() {
                let one = vec![Term::Atom(letters[a].clone())];
                let two = vec![Term::Atom(letters[a].clone()), Term::Atom(letters[b].clone())];
                for ante in [one, two] {
                    if !is_top(&Term::dep(ante, Term::Atom(c.clone()))) {
                        return false;
                    }
                }
            }
        }
    }
    if letter_dep_atoms(&letters).iter().any(|f| !is_top(f)) {
        return false;
    }

    let tables = classical_tables(m, &letters, depth);
    let reps: Vec<&Formula> = tables.values().collect();
    for c in &reps {
        if !is_top(&Term::dep(vec![], (*c).clone())) {
            return false;
        }
        for a in &reps {
            for b in &reps {
                let ante = vec![(*a).clone(), (*b).clone()];
                if !is_top(&Term::dep(vec![(*a).clone()], (*c).clone()))
                    || !is_top(&Term::dep(ante, (*c).clone()))
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Classical formulas up to `depth` over `letters`, one per truth table
/// (keyed by the set of worlds where the formula is true). Formulas are
/// generated level by level from `∧` and `⊗` over earlier representatives,
/// which reaches every truth table a full enumeration would.
pub(crate) fn classical_tables(m: &Model, letters: &[Letter], depth: usize) -> BTreeMap<u32, Formula> {
    let table = |f: &Formula| {
        (0..m.world_count())
            .filter(|&w| classical_truth(m, w, f))
            .fold(0u32, |acc, w| acc | 1 << w)
    };
    let mut tables = BTreeMap::new();
    let leaves = letters
        .iter()
        .flat_map(|l| [Term::Atom(l.clone()), Term::NegAtom(l.clone())])
        .chain([Term::bot()]);
    for f in leaves {
        tables.entry(table(&f)).or_insert(f);
    }
    for _ in 0..depth {
        let reps: Vec<Formula> = tables.values().cloned().collect();
        for a in &reps {
            for b in &reps {
                for f in [Term::and(a.clone(), b.clone()), Term::tensor(a.clone(), b.clone())] {
                    tables.entry(table(&f)).or_insert(f);
                }
            }
        }
    }
    tables
}

/// Leaf templates of size 1 in `sig`.
pub fn template_leaves(sig: &LanguageSignature, fresh: &[Letter]) -> Vec<Term<Hole>> {
    let mut out = vec![Term::Hole(Hole::Left), Term::Hole(Hole::Right)];
    for c in [crate::syntax::Constant::Bot, crate::syntax::Constant::Top] {
        if sig.allowed_connectives.contains(c.into()) {
            out.push(Term::Const(c));
        }
    }
    out.extend(fresh.iter().map(|r| Term::Atom(r.clone())));
    if sig.negation_policy == NegationPolicy::LiteralOnly {
        out.extend(fresh.iter().map(|r| Term::NegAtom(r.clone())));
    }
    match sig.dep_atom_policy {
        DepAtomPolicy::None => {}
        DepAtomPolicy::LettersOnly => {
            out.extend(letter_dep_atoms(fresh).iter().map(Formula::lift));
        }
        DepAtomPolicy::ClassicalArgs => {
            let args: Vec<Formula> = fresh
                .iter()
                .flat_map(|r| [Term::Atom(r.clone()), Term::NegAtom(r.clone())])
                .chain([Term::bot()])
                .collect();
            for c in &args {
                out.push(Term::dep(vec![], c.lift()));
            }
            for a in &args {
                for c in &args {
                    out.push(Term::dep(vec![a.lift()], c.lift()));
                }
            }
        }
    }
    out
}

/// Every context of node count at most `max_size` built from the leaves
/// of [`template_leaves`] and the signature's connectives, ordered by size.
/// Levels below `max_size` are materialized; the top level is generated
/// on demand.
pub fn enumerate_templates(
    sig: &LanguageSignature,
    max_size: usize,
) -> impl Iterator<Item = Template> + Send {
    enumerate_templates_with(sig, max_size, &GeneratorConfig::default().fresh_letters)
}

pub fn enumerate_templates_with(
    sig: &LanguageSignature,
    max_size: usize,
    fresh: &[Letter],
) -> impl Iterator<Item = Template> + Send {
    assert!(max_size >= 1, "templates have at least one node");
    let ops = ops_for(sig);
    let mut levels: Vec<Vec<Term<Hole>>> = vec![Vec::new(), template_leaves(sig, fresh)];
    for k in 2..max_size {
        let level = build_level(&levels, k, &ops).collect();
        levels.push(level);
    }
    let levels = Arc::new(levels);
    let stored = Arc::clone(&levels);
    let eager = (1..max_size.min(levels.len()))
        .flat_map(move |k| {
            let stored = Arc::clone(&stored);
            (0..stored[k].len()).map(move |i| stored[k][i].clone())
        });
    let top: Box<dyn Iterator<Item = Term<Hole>> + Send> = if max_size == 1 {
        Box::new(levels[1].clone().into_iter())
    } else {
        Box::new(build_level_owned(levels, max_size, ops))
    };
    eager.chain(top).map(Template::new)
}

fn build_level<'a>(
    levels: &'a [Vec<Term<Hole>>],
    k: usize,
    ops: &'a closure::SemanticOpSet,
) -> impl Iterator<Item = Term<Hole>> + 'a {
    let binary = ops.binary.iter().flat_map(move |&op| {
        (1..k - 1).flat_map(move |i| {
            let j = k - 1 - i;
            levels[i].iter().flat_map(move |a| {
                levels[j]
                    .iter()
                    .map(move |b| Term::Binary(op, Box::new(a.clone()), Box::new(b.clone())))
            })
        })
    });
    let unary = ops.unary.iter().flat_map(move |&op| {
        levels[k - 1]
            .iter()
            .map(move |a| Term::Unary(op, Box::new(a.clone())))
    });
    binary.chain(unary)
}

fn build_level_owned(
    levels: Arc<Vec<Vec<Term<Hole>>>>,
    k: usize,
    ops: closure::SemanticOpSet,
) -> impl Iterator<Item = Term<Hole>> + Send {
    let ls = Arc::clone(&levels);
    let binary = ops.binary.clone().into_iter().flat_map(move |op| {
        let ls = Arc::clone(&ls);
        (1..k - 1).flat_map(move |i| {
            let ls = Arc::clone(&ls);
            let j = k - 1 - i;
            (0..ls[i].len()).flat_map(move |a| {
                let ls = Arc::clone(&ls);
                (0..ls[j].len()).map(move |b| {
                    Term::Binary(op, Box::new(ls[i][a].clone()), Box::new(ls[j][b].clone()))
                })
            })
        })
    });
    let unary = ops.unary.into_iter().flat_map(move |op| {
        let ls = Arc::clone(&levels);
        (0..ls[k - 1].len()).map(move |a| Term::Unary(op, Box::new(ls[k - 1][a].clone())))
    });
    binary.chain(unary)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Position in enumeration order.
    pub index: usize,
    pub template: String,
    /// The substituted proposition, absent when the supporting states were
    /// not downward closed.
    pub proposition: Option<Proposition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub signature: Language,
    pub max_size: usize,
    pub templates_checked: usize,
    pub closure_size: usize,
    pub all_in_closure: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<Counterexample>,
    pub witnesses_checked: usize,
    pub witnesses_sound: usize,
}

impl EnumerationReport {
    /// Soundness and completeness both hold.
    pub fn passed(&self) -> bool {
        self.all_in_closure && self.witnesses_sound == self.witnesses_checked
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "{}\nsignature: {}\nmax size: {}\ntemplates checked: {}\nclosure size: {}\nwitnesses sound: {}/{}\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.signature,
            self.max_size,
            self.templates_checked,
            self.closure_size,
            self.witnesses_sound,
            self.witnesses_checked,
        );
        if let Some(c) = &self.first_counterexample {
            out.push_str(&format!("first counterexample (#{}): {}\n", c.index, c.template));
        }
        out
    }
}

/// Checks the closure against brute force: every enumerated template's
/// substituted proposition, computed state by state from the support
/// clauses, must be a closure member, and every member's witness must read
/// back to a context that reproduces it.
pub fn cross_check(
    m: &Model,
    sig: &LanguageSignature,
    left: &Formula,
    right: &Formula,
    max_size: usize,
) -> Result<EnumerationReport, VerifyError> {
    cross_check_with(m, sig, left, right, max_size, &GeneratorConfig::default())
}

pub fn cross_check_with(
    m: &Model,
    sig: &LanguageSignature,
    left: &Formula,
    right: &Formula,
    max_size: usize,
    config: &GeneratorConfig,
) -> Result<EnumerationReport, VerifyError> {
    let g = GeneratorSet::build(m, sig, Some(left), Some(right), config)?;
    let c = semantic_closure(m, &g, &ops_for(sig), DEFAULT_CAP)?;

    let mut witnesses_sound = 0;
    for (p, w) in c.members() {
        let t = w.to_template(c.generators());
        let f = t.substitute(left, right, sig)?;
        let by_support = pointwise_family(m, &f);
        if &by_support == p.family() && &w.evaluate(c.generators())? == p {
            witnesses_sound += 1;
        }
    }

    let fresh = &config.fresh_letters[0];
    let (templates_checked, first) = enumerate_templates_with(sig, max_size, &config.fresh_letters)
        .enumerate()
        .par_bridge()
        .map(|(index, t)| -> Result<(usize, Option<Counterexample>), VerifyError> {
            let f = t.substitute(left, right, sig)?;
            let prop = Proposition::try_from_family(pointwise_family(m, &f)).ok();
            let member = match &prop {
                Some(p) => c.contains(p)?.is_some(),
                None => false,
            };
            let bad = (!member).then(|| Counterexample {
                index,
                template: render_template(&t, sig, fresh),
                proposition: prop,
            });
            Ok((1, bad))
        })
        .try_reduce(
            || (0, None),
            |(n1, c1), (n2, c2)| {
                let first = match (c1, c2) {
                    (Some(a), Some(b)) => Some(if a.index <= b.index { a } else { b }),
                    (a, b) => a.or(b),
                };
                Ok((n1 + n2, first))
            },
        )?;

    Ok(EnumerationReport {
        signature: sig.name,
        max_size,
        templates_checked,
        closure_size: c.len(),
        all_in_closure: first.is_none(),
        first_counterexample: first,
        witnesses_checked: c.len(),
        witnesses_sound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn down(states: &[&[usize]]) -> Proposition {
        Proposition::downward_close(3, states.iter().map(|w| State::from_worlds(w.iter().copied())))
    }

    #[test]
    fn implication_report() {
        let r = verify_implication_undefinability().unwrap();
        assert!(!r.defined);
        assert!(r.witness.is_none());
        assert_eq!(r.target_proposition, down(&[&[0, 1], &[0, 2]]));
        assert!(r.forbidden_hits.iter().all(|h| !h.present));
        let expected = [
            down(&[&[0, 1], &[0, 2]]),
            down(&[&[0, 1], &[1, 2]]),
            down(&[&[0, 1], &[2]]),
        ];
        let got: Vec<_> = r.forbidden_hits.iter().map(|h| h.proposition.clone()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn negative_control() {
        let r = verify_implication_in(Language::InqPlus).unwrap();
        assert!(r.defined);
        assert_eq!(r.witness.as_deref(), Some("#1 -> #2"));
    }

    #[test]
    fn globalor_reports() {
        let d = verify_globalor_undefinability(Language::D).unwrap();
        let plus = verify_globalor_undefinability(Language::DPlus).unwrap();
        for r in [&d, &plus] {
            assert!(!r.defined);
            assert_eq!(r.closure_size, 6);
            assert_eq!(r.target_proposition, down(&[&[0, 1], &[1, 2]]));
            assert!(r.forbidden_hits.iter().all(|h| h.present));
        }
        assert_eq!(d.theorem, Theorem::GlobalorD);
        assert_eq!(plus.theorem, Theorem::GlobalorDplus);
        assert_eq!(plus.dep_triviality, Some(true));
        assert_eq!(d.dep_triviality, None);
    }

    #[test]
    fn singleton_property() {
        let m = canonical_impl_model();
        let c = closure::closure_for(&m, Language::InqMinus, Some(&qp()), Some(&qq())).unwrap();
        assert!(check_singleton_property(c.propositions(), &m));
        // A contains every singleton, so it passes; [p] misses {w2} and {w3}
        let a = down(&[&[0, 1], &[0, 2]]);
        assert!(check_singleton_property([&a], &m));
        let p = proposition(&m, &Term::atom("p"));
        assert!(!check_singleton_property([&p], &m));
        assert!(check_singleton_property([&Proposition::bottom(3)], &m));
    }

    #[test]
    fn dep_triviality() {
        let pq: BTreeSet<Letter> = ["p".into(), "q".into()].into();
        let p: BTreeSet<Letter> = ["p".into()].into();
        assert!(check_dep_triviality(&canonical_dep_model(), &pq, 2));
        assert!(!check_dep_triviality(&canonical_dep_model(), &p, 2));
        assert!(check_dep_triviality(&canonical_impl_model(), &pq, 2));
    }

    #[test]
    fn classical_tables_cover_all_truth_tables() {
        let m = canonical_dep_model();
        let ls: Vec<Letter> = vec!["p".into(), "q".into()];
        // {p, q} separates all three worlds, so depth 2 reaches all 8 tables
        assert_eq!(classical_tables(&m, &ls, 2).len(), 8);
        assert_eq!(classical_tables(&m, &["r".into()], 2).len(), 2);
    }

    #[test]
    fn leaf_census() {
        let d = Language::D.signature();
        let leaves: Vec<String> = template_leaves(&d, &["r".into()]).iter().map(|t| t.to_string()).collect();
        assert_eq!(leaves, ["#1", "#2", "bot", "top", "r", "~r", "=(r)", "=(r; r)"]);
        assert_eq!(template_leaves(&Language::DPlus.signature(), &["r".into()]).len(), 18);
        assert_eq!(template_leaves(&Language::InqMinus.signature(), &["r".into()]).len(), 5);
    }

    #[test]
    fn enumeration_shape() {
        let minus = Language::InqMinus.signature();
        let two: Vec<String> = enumerate_templates(&minus, 2).map(|t| t.to_string()).collect();
        assert_eq!(two.len(), 5 + 10);
        assert!(two.contains(&"~#1".to_string()) && two.contains(&"?#2".to_string()));
        let d = Language::D.signature();
        assert!(enumerate_templates(&d, 5).all(|t| t.is_valid_context(&d)));
        assert_eq!(enumerate_templates(&d, 3).count(), 8 + 2 * 64);
        let counts: Vec<usize> = (1..=5).map(|k| enumerate_templates(&minus, k).count()).collect();
        assert!(counts.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn small_cross_checks() {
        let m = canonical_impl_model();
        let sig = Language::InqMinus.signature();
        let r = cross_check(&m, &sig, &qp(), &qq(), 1).unwrap();
        assert_eq!(r.templates_checked, 5);
        assert!(r.passed());
        let r = cross_check(&m, &sig, &qp(), &qq(), 4).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn report_json_round_trip() {
        let r = verify_globalor_undefinability(Language::DPlus).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: UndefinabilityReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["theorem"], "globalor-dplus");
        assert_eq!(v["signature"], "D_PLUS");
    }
}
