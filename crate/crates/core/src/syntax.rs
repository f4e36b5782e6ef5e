//! Formula and template ASTs, language signatures and well-formedness.
//!
//! A single generic tree [`Term<H>`] serves both plain formulas and
//! templates: the parameter `H` is the type of hole leaves. Plain formulas
//! use [`Infallible`], so they cannot contain holes at all, while template
//! bodies use [`Hole`].

use std::collections::BTreeSet;
use std::convert::Infallible;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A propositional letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(String);

impl Letter {
    pub fn new(name: impl Into<String>) -> Self {
        Letter(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Whether `name` is a valid identifier in the text syntax.
    pub fn is_valid_name(name: &str) -> bool {
        let mut chars = name.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return false,
        }
        chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
            && name != "bot"
            && name != "top"
    }
}

impl From<&str> for Letter {
    fn from(s: &str) -> Self {
        Letter(s.to_owned())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Connective tags with their fixed arities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    Bot,
    Top,
    Neg,
    Question,
    And,
    GlobalOr,
    Tensor,
    Implies,
}

impl Connective {
    pub const ALL: [Connective; 8] = [
        Connective::Bot,
        Connective::Top,
        Connective::Neg,
        Connective::Question,
        Connective::And,
        Connective::GlobalOr,
        Connective::Tensor,
        Connective::Implies,
    ];

    pub fn arity(self) -> usize {
        match self {
            Connective::Bot | Connective::Top => 0,
            Connective::Neg | Connective::Question => 1,
            Connective::And | Connective::GlobalOr | Connective::Tensor | Connective::Implies => 2,
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Connective::Bot => "bot",
            Connective::Top => "top",
            Connective::Neg => "~",
            Connective::Question => "?",
            Connective::And => "/\\",
            Connective::GlobalOr => "\\/",
            Connective::Tensor => "(x)",
            Connective::Implies => "->",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constant {
    Bot,
    Top,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnaryOp {
    Neg,
    Question,
}

/// Binary connectives. `Or` is the global (inquisitive) disjunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryOp {
    And,
    Or,
    Tensor,
    Implies,
}

impl From<Constant> for Connective {
    fn from(c: Constant) -> Self {
        match c {
            Constant::Bot => Connective::Bot,
            Constant::Top => Connective::Top,
        }
    }
}

impl From<UnaryOp> for Connective {
    fn from(op: UnaryOp) -> Self {
        match op {
            UnaryOp::Neg => Connective::Neg,
            UnaryOp::Question => Connective::Question,
        }
    }
}

impl From<BinaryOp> for Connective {
    fn from(op: BinaryOp) -> Self {
        match op {
            BinaryOp::And => Connective::And,
            BinaryOp::Or => Connective::GlobalOr,
            BinaryOp::Tensor => Connective::Tensor,
            BinaryOp::Implies => Connective::Implies,
        }
    }
}

/// The two hole symbols of a template, written `#1` and `#2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hole {
    Left,
    Right,
}

/// Leaf type usable as a hole parameter of [`Term`].
pub trait HoleKind: Clone + PartialEq + Eq + fmt::Debug {
    fn symbol(&self) -> &'static str;
}

impl HoleKind for Infallible {
    fn symbol(&self) -> &'static str {
        match *self {}
    }
}

impl HoleKind for Hole {
    fn symbol(&self) -> &'static str {
        match self {
            Hole::Left => "#1",
            Hole::Right => "#2",
        }
    }
}

/// A formula tree whose holes have type `H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term<H> {
    Atom(Letter),
    /// Literal negation `~p`, the only negation of the dependence languages.
    NegAtom(Letter),
    Dep(DepAtom<H>),
    Hole(H),
    Const(Constant),
    Unary(UnaryOp, Box<Term<H>>),
    Binary(BinaryOp, Box<Term<H>>, Box<Term<H>>),
}

/// `=(a1, ..., an; b)`; an empty antecedent list is a constancy atom `=(b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DepAtom<H> {
    pub antecedents: Vec<Term<H>>,
    pub consequent: Box<Term<H>>,
}

impl<H> DepAtom<H> {
    /// True when every component is a bare letter, i.e. the atom uses the
    /// value-agreement clause rather than the generalized one.
    pub fn is_letters_only(&self) -> bool {
        self.components().all(|t| matches!(t, Term::Atom(_)))
    }

    pub fn components(&self) -> impl Iterator<Item = &Term<H>> {
        self.antecedents
            .iter()
            .chain(std::iter::once(&*self.consequent))
    }
}

pub type Formula = Term<Infallible>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("connective {connective} takes {expected} arguments, got {got}")]
pub struct ArityError {
    pub connective: Connective,
    pub expected: usize,
    pub got: usize,
}

impl<H> Term<H> {
    pub fn atom(name: &str) -> Self {
        Term::Atom(Letter::from(name))
    }

    pub fn neg_atom(name: &str) -> Self {
        Term::NegAtom(Letter::from(name))
    }

    pub fn bot() -> Self {
        Term::Const(Constant::Bot)
    }

    pub fn top() -> Self {
        Term::Const(Constant::Top)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(t: Self) -> Self {
        Term::Unary(UnaryOp::Neg, Box::new(t))
    }

    pub fn question(t: Self) -> Self {
        Term::Unary(UnaryOp::Question, Box::new(t))
    }

    pub fn and(a: Self, b: Self) -> Self {
        Term::Binary(BinaryOp::And, Box::new(a), Box::new(b))
    }

    pub fn or(a: Self, b: Self) -> Self {
        Term::Binary(BinaryOp::Or, Box::new(a), Box::new(b))
    }

    pub fn tensor(a: Self, b: Self) -> Self {
        Term::Binary(BinaryOp::Tensor, Box::new(a), Box::new(b))
    }

    pub fn implies(a: Self, b: Self) -> Self {
        Term::Binary(BinaryOp::Implies, Box::new(a), Box::new(b))
    }

    pub fn dep(antecedents: Vec<Self>, consequent: Self) -> Self {
        Term::Dep(DepAtom {
            antecedents,
            consequent: Box::new(consequent),
        })
    }

    pub fn constancy(consequent: Self) -> Self {
        Term::dep(Vec::new(), consequent)
    }

    /// Builds a compound node from a connective tag, checking its arity.
    pub fn compound(connective: Connective, children: Vec<Self>) -> Result<Self, ArityError> {
        let got = children.len();
        let expected = connective.arity();
        if got != expected {
            return Err(ArityError {
                connective,
                expected,
                got,
            });
        }
        let mut it = children.into_iter();
        let mut next = || it.next().expect("arity checked");
        Ok(match connective {
            Connective::Bot => Term::bot(),
            Connective::Top => Term::top(),
            Connective::Neg => Term::neg(next()),
            Connective::Question => Term::question(next()),
            Connective::And => {
                let a = next();
                Term::and(a, next())
            }
            Connective::GlobalOr => {
                let a = next();
                Term::or(a, next())
            }
            Connective::Tensor => {
                let a = next();
                Term::tensor(a, next())
            }
            Connective::Implies => {
                let a = next();
                Term::implies(a, next())
            }
        })
    }

    /// The connective at the root, if the root is a connective node.
    pub fn connective(&self) -> Option<Connective> {
        match self {
            Term::Const(c) => Some((*c).into()),
            Term::Unary(op, _) => Some((*op).into()),
            Term::Binary(op, _, _) => Some((*op).into()),
            _ => None,
        }
    }

    /// Node count. Leaves (letters, literals, holes, constants and whole
    /// dependence atoms) count as one node each.
    pub fn node_count(&self) -> usize {
        match self {
            Term::Unary(_, a) => 1 + a.node_count(),
            Term::Binary(_, a, b) => 1 + a.node_count() + b.node_count(),
            _ => 1,
        }
    }

    /// Depth of the tree; leaves have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Unary(_, a) => 1 + a.depth(),
            Term::Binary(_, a, b) => 1 + a.depth().max(b.depth()),
            _ => 0,
        }
    }

    /// Every propositional letter occurring anywhere, including inside
    /// dependence atoms.
    pub fn free_letters(&self) -> BTreeSet<Letter> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<Letter>) {
        match self {
            Term::Atom(l) | Term::NegAtom(l) => {
                out.insert(l.clone());
            }
            Term::Dep(d) => d.components().for_each(|t| t.collect_letters(out)),
            Term::Hole(_) | Term::Const(_) => {}
            Term::Unary(_, a) => a.collect_letters(out),
            Term::Binary(_, a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
        }
    }

    /// Replaces every hole by the term produced by `f`.
    pub fn map_holes<K>(&self, f: &mut impl FnMut(&H) -> Term<K>) -> Term<K> {
        match self {
            Term::Atom(l) => Term::Atom(l.clone()),
            Term::NegAtom(l) => Term::NegAtom(l.clone()),
            Term::Dep(d) => Term::Dep(DepAtom {
                antecedents: d.antecedents.iter().map(|t| t.map_holes(f)).collect(),
                consequent: Box::new(d.consequent.map_holes(f)),
            }),
            Term::Hole(h) => f(h),
            Term::Const(c) => Term::Const(*c),
            Term::Unary(op, a) => Term::Unary(*op, Box::new(a.map_holes(f))),
            Term::Binary(op, a, b) => {
                Term::Binary(*op, Box::new(a.map_holes(f)), Box::new(b.map_holes(f)))
            }
        }
    }
}

impl Formula {
    /// Lifts a hole-free formula into any hole type.
    pub fn lift<K>(&self) -> Term<K> {
        self.map_holes(&mut |h| match *h {})
    }

    /// Rewrites every `?t` into `t \/ ~t`.
    pub fn eliminate_questions(&self) -> Formula {
        match self {
            Term::Unary(UnaryOp::Question, a) => {
                let a = a.eliminate_questions();
                Term::or(a.clone(), Term::neg(a))
            }
            Term::Unary(op, a) => Term::Unary(*op, Box::new(a.eliminate_questions())),
            Term::Binary(op, a, b) => Term::Binary(
                *op,
                Box::new(a.eliminate_questions()),
                Box::new(b.eliminate_questions()),
            ),
            other => other.clone(),
        }
    }
}

/// True iff `f` is a classical formula: built from letters, literal
/// negations, `bot`, conjunction and tensor only.
pub fn is_classical<H>(f: &Term<H>) -> bool {
    match f {
        Term::Atom(_) | Term::NegAtom(_) | Term::Const(Constant::Bot) => true,
        Term::Binary(BinaryOp::And | BinaryOp::Tensor, a, b) => is_classical(a) && is_classical(b),
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NegationPolicy {
    Full,
    LiteralOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DepAtomPolicy {
    None,
    LettersOnly,
    ClassicalArgs,
}

/// The named languages. `All` is the permissive union used as the CLI
/// default so that inquisitive and dependence formulas can be mixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Language {
    #[serde(rename = "INQ")]
    Inq,
    #[serde(rename = "INQ_TENSOR")]
    InqTensor,
    #[serde(rename = "INQ_PLUS")]
    InqPlus,
    #[serde(rename = "INQ_MINUS")]
    InqMinus,
    #[serde(rename = "D")]
    D,
    #[serde(rename = "D_PLUS")]
    DPlus,
    #[serde(rename = "ALL")]
    All,
}

impl Language {
    pub const NAMED: [Language; 6] = [
        Language::Inq,
        Language::InqTensor,
        Language::InqPlus,
        Language::InqMinus,
        Language::D,
        Language::DPlus,
    ];

    pub fn signature(self) -> LanguageSignature {
        use Connective::*;
        let inq = ConnectiveSet::of(&[And, GlobalOr, Implies, Bot, Top]);
        let (allowed, negation, deps) = match self {
            Language::Inq => (inq, NegationPolicy::Full, DepAtomPolicy::None),
            Language::InqTensor => (inq.with(Tensor), NegationPolicy::Full, DepAtomPolicy::None),
            Language::InqPlus => (
                inq.with(Tensor).with(Neg).with(Question),
                NegationPolicy::Full,
                DepAtomPolicy::None,
            ),
            Language::InqMinus => (
                ConnectiveSet::of(&[And, GlobalOr, Tensor, Bot, Top, Neg, Question]),
                NegationPolicy::Full,
                DepAtomPolicy::None,
            ),
            Language::D => (
                ConnectiveSet::of(&[And, Tensor, Bot, Top]),
                NegationPolicy::LiteralOnly,
                DepAtomPolicy::LettersOnly,
            ),
            Language::DPlus => (
                ConnectiveSet::of(&[And, Tensor, Bot, Top]),
                NegationPolicy::LiteralOnly,
                DepAtomPolicy::ClassicalArgs,
            ),
            Language::All => (
                ConnectiveSet::of(&Connective::ALL),
                NegationPolicy::Full,
                DepAtomPolicy::ClassicalArgs,
            ),
        };
        LanguageSignature {
            name: self,
            allowed_connectives: allowed,
            negation_policy: negation,
            dep_atom_policy: deps,
        }
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            Language::Inq => "inq",
            Language::InqTensor => "inq-tensor",
            Language::InqPlus => "inq+",
            Language::InqMinus => "inq-",
            Language::D => "d",
            Language::DPlus => "d+",
            Language::All => "all",
        }
    }

    pub fn is_dependence(self) -> bool {
        matches!(self, Language::D | Language::DPlus)
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Language::Inq => "INQ",
            Language::InqTensor => "INQ_TENSOR",
            Language::InqPlus => "INQ_PLUS",
            Language::InqMinus => "INQ_MINUS",
            Language::D => "D",
            Language::DPlus => "D_PLUS",
            Language::All => "ALL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown language `{0}` (expected one of inq, inq-tensor, inq+, inq-, d, d+, all)")]
pub struct UnknownLanguage(String);

impl FromStr for Language {
    type Err = UnknownLanguage;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "inq" => Language::Inq,
            "inq-tensor" | "inqx" | "inq_tensor" => Language::InqTensor,
            "inq+" | "inq-plus" | "inqplus" | "inq_plus" => Language::InqPlus,
            "inq-" | "inq-minus" | "inqminus" | "inq_minus" => Language::InqMinus,
            "d" => Language::D,
            "d+" | "dplus" | "d-plus" | "d_plus" => Language::DPlus,
            "all" => Language::All,
            _ => return Err(UnknownLanguage(s.to_owned())),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ConnectiveSet(u8);

impl ConnectiveSet {
    pub fn of(cs: &[Connective]) -> Self {
        ConnectiveSet(cs.iter().fold(0, |acc, c| acc | c.bit()))
    }

    pub fn with(self, c: Connective) -> Self {
        ConnectiveSet(self.0 | c.bit())
    }

    pub fn without(self, c: Connective) -> Self {
        ConnectiveSet(self.0 & !c.bit())
    }

    pub fn contains(self, c: Connective) -> bool {
        self.0 & c.bit() != 0
    }

    pub fn is_subset(self, other: ConnectiveSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Connective> {
        Connective::ALL.into_iter().filter(move |c| self.contains(*c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LanguageSignature {
    pub name: Language,
    pub allowed_connectives: ConnectiveSet,
    pub negation_policy: NegationPolicy,
    pub dep_atom_policy: DepAtomPolicy,
}

impl From<Language> for LanguageSignature {
    fn from(l: Language) -> Self {
        l.signature()
    }
}

/// Why a node is not licensed by a signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    ConnectiveNotAllowed(Connective),
    /// `~` applied to something other than a letter in a literal-only
    /// language.
    NonLiteralNegation,
    /// A literal node in a language with full negation.
    LiteralNotAllowed,
    DepAtomNotAllowed,
    DepArgumentNotLetter,
    DepArgumentNotClassical,
    HoleInDepAtom,
    HoleUnderNegation,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::ConnectiveNotAllowed(c) => write!(f, "connective `{c}` is not allowed"),
            ViolationKind::NonLiteralNegation => {
                f.write_str("negation is only allowed in front of letters")
            }
            ViolationKind::LiteralNotAllowed => {
                f.write_str("literal node where full negation is expected")
            }
            ViolationKind::DepAtomNotAllowed => f.write_str("dependence atoms are not allowed"),
            ViolationKind::DepArgumentNotLetter => {
                f.write_str("dependence atom arguments must be letters")
            }
            ViolationKind::DepArgumentNotClassical => {
                f.write_str("dependence atom arguments must be classical formulas")
            }
            ViolationKind::HoleInDepAtom => f.write_str("hole inside a dependence atom"),
            ViolationKind::HoleUnderNegation => f.write_str("hole under negation"),
        }
    }
}

/// The first offending node: `path` lists child indices from the root
/// (dependence atom components are numbered antecedents first).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at node path {path:?}")]
pub struct Violation {
    pub path: Vec<usize>,
    pub kind: ViolationKind,
}

/// Diagnostic form of [`well_formed`]; holes are treated as letters.
pub fn check_well_formed<H>(f: &Term<H>, sig: &LanguageSignature) -> Result<(), Violation> {
    let mut path = Vec::new();
    check_node(f, sig, &mut path, false)
}

pub fn well_formed<H>(f: &Term<H>, sig: &LanguageSignature) -> bool {
    check_well_formed(f, sig).is_ok()
}

fn violation(path: &[usize], kind: ViolationKind) -> Result<(), Violation> {
    Err(Violation {
        path: path.to_vec(),
        kind,
    })
}

fn check_node<H>(
    f: &Term<H>,
    sig: &LanguageSignature,
    path: &mut Vec<usize>,
    context_rules: bool,
) -> Result<(), Violation> {
    match f {
        Term::Atom(_) | Term::Hole(_) => Ok(()),
        Term::NegAtom(_) => match sig.negation_policy {
            NegationPolicy::LiteralOnly => Ok(()),
            NegationPolicy::Full => violation(path, ViolationKind::LiteralNotAllowed),
        },
        Term::Const(c) => {
            let c = Connective::from(*c);
            if sig.allowed_connectives.contains(c) {
                Ok(())
            } else {
                violation(path, ViolationKind::ConnectiveNotAllowed(c))
            }
        }
        Term::Unary(op, a) => {
            let c = Connective::from(*op);
            if *op == UnaryOp::Neg && sig.negation_policy == NegationPolicy::LiteralOnly {
                let kind = if context_rules && contains_hole(a) {
                    ViolationKind::HoleUnderNegation
                } else {
                    ViolationKind::NonLiteralNegation
                };
                return violation(path, kind);
            }
            if !sig.allowed_connectives.contains(c) {
                return violation(path, ViolationKind::ConnectiveNotAllowed(c));
            }
            path.push(0);
            check_node(a, sig, path, context_rules)?;
            path.pop();
            Ok(())
        }
        Term::Binary(op, a, b) => {
            let c = Connective::from(*op);
            if !sig.allowed_connectives.contains(c) {
                return violation(path, ViolationKind::ConnectiveNotAllowed(c));
            }
            for (i, child) in [a, b].into_iter().enumerate() {
                path.push(i);
                check_node(child, sig, path, context_rules)?;
                path.pop();
            }
            Ok(())
        }
        Term::Dep(d) => {
            for (i, arg) in d.components().enumerate() {
                path.push(i);
                let bad = if context_rules && contains_hole(arg) {
                    Some(ViolationKind::HoleInDepAtom)
                } else {
                    match sig.dep_atom_policy {
                        DepAtomPolicy::None => Some(ViolationKind::DepAtomNotAllowed),
                        DepAtomPolicy::LettersOnly => (!matches!(arg, Term::Atom(_) | Term::Hole(_)))
                            .then_some(ViolationKind::DepArgumentNotLetter),
                        DepAtomPolicy::ClassicalArgs => (!is_classical_or_hole(arg))
                            .then_some(ViolationKind::DepArgumentNotClassical),
                    }
                };
                if let Some(kind) = bad {
                    if kind == ViolationKind::DepAtomNotAllowed {
                        path.pop();
                    }
                    return violation(path, kind);
                }
                path.pop();
            }
            Ok(())
        }
    }
}

fn contains_hole<H>(f: &Term<H>) -> bool {
    match f {
        Term::Hole(_) => true,
        Term::Dep(d) => d.components().any(contains_hole),
        Term::Unary(_, a) => contains_hole(a),
        Term::Binary(_, a, b) => contains_hole(a) || contains_hole(b),
        _ => false,
    }
}

fn is_classical_or_hole<H>(f: &Term<H>) -> bool {
    match f {
        Term::Hole(_) => true,
        Term::Binary(BinaryOp::And | BinaryOp::Tensor, a, b) => {
            is_classical_or_hole(a) && is_classical_or_hole(b)
        }
        other => is_classical(other),
    }
}

/// A formula with hole leaves `#1` and `#2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Template {
    body: Term<Hole>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstitutionError {
    #[error("template is not a valid context: {0}")]
    InvalidContext(Violation),
    #[error("substitution result is ill-formed: {0}")]
    SubstitutionIllFormed(Violation),
}

impl Template {
    pub fn new(body: Term<Hole>) -> Self {
        Template { body }
    }

    pub fn body(&self) -> &Term<Hole> {
        &self.body
    }

    pub fn into_body(self) -> Term<Hole> {
        self.body
    }

    pub fn hole_count(&self, hole: Hole) -> usize {
        fn count(t: &Term<Hole>, hole: Hole) -> usize {
            match t {
                Term::Hole(h) => usize::from(*h == hole),
                Term::Dep(d) => d.components().map(|c| count(c, hole)).sum(),
                Term::Unary(_, a) => count(a, hole),
                Term::Binary(_, a, b) => count(a, hole) + count(b, hole),
                _ => 0,
            }
        }
        count(&self.body, hole)
    }

    /// Holes may never sit inside a dependence atom; in the literal-negation
    /// languages they may not be negated either. Otherwise the body must be
    /// well-formed with holes read as letters.
    pub fn check_context(&self, sig: &LanguageSignature) -> Result<(), Violation> {
        let mut path = Vec::new();
        check_node(&self.body, sig, &mut path, true)
    }

    pub fn is_valid_context(&self, sig: &LanguageSignature) -> bool {
        self.check_context(sig).is_ok()
    }

    /// Replaces `#1` by `left` and `#2` by `right`.
    pub fn substitute(
        &self,
        left: &Formula,
        right: &Formula,
        sig: &LanguageSignature,
    ) -> Result<Formula, SubstitutionError> {
        self.check_context(sig)
            .map_err(SubstitutionError::InvalidContext)?;
        let out = self.fill(left, right);
        check_well_formed(&out, sig).map_err(SubstitutionError::SubstitutionIllFormed)?;
        Ok(out)
    }

    /// Substitution without any signature checks.
    pub fn fill(&self, left: &Formula, right: &Formula) -> Formula {
        self.body.map_holes(&mut |h| match h {
            Hole::Left => left.clone(),
            Hole::Right => right.clone(),
        })
    }
}

impl From<Term<Hole>> for Template {
    fn from(body: Term<Hole>) -> Self {
        Template { body }
    }
}
