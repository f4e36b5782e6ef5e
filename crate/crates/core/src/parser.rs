//! Text syntax for formulas, templates and models.
//!
//! Grammar, loosest to tightest:
//!
//! ```text
//! implication := disjunction ( "->" implication )?
//! disjunction := tensor ( "\/" tensor )*
//! tensor      := conjunction ( "(x)" conjunction )*
//! conjunction := prefix ( "/\" prefix )*
//! prefix      := "~" prefix | "?" prefix | primary
//! primary     := letter | "bot" | "top" | "#1" | "#2"
//!              | "(" implication ")" | "=(" args ")"
//! args        := implication | [ implication ( "," implication )* ] ";" implication
//! ```
//!
//! `\/` is the global disjunction and `(x)` the tensor. Because `(x)` is a
//! token, a letter named `x` cannot be written in parentheses on its own.

use std::fmt;

use thiserror::Error;

use crate::semantics::{Model, ModelFile};
use crate::syntax::{
    is_classical, BinaryOp, Connective, Constant, DepAtom, DepAtomPolicy, Formula, Hole, HoleKind,
    Language, LanguageSignature, Letter, NegationPolicy, Template, Term, UnaryOp,
};

/// Character offsets `start..end` into the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }

    fn join(self, other: SourceSpan) -> Self {
        SourceSpan::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {span}: {message}")]
    Syntax { span: SourceSpan, message: String },
    #[error("not licensed by {language} at {span}: {message}")]
    Signature {
        span: SourceSpan,
        language: Language,
        message: String,
    },
    #[error("model format error: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Hole(Hole),
    Bot,
    Top,
    Tilde,
    Question,
    And,
    Or,
    Tensor,
    Arrow,
    LParen,
    RParen,
    DepOpen,
    Comma,
    Semi,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Hole(h) => write!(f, "`{}`", h.symbol()),
            Tok::Bot => f.write_str("`bot`"),
            Tok::Top => f.write_str("`top`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Question => f.write_str("`?`"),
            Tok::And => f.write_str("`/\\`"),
            Tok::Or => f.write_str("`\\/`"),
            Tok::Tensor => f.write_str("`(x)`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::DepOpen => f.write_str("`=(`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
        }
    }
}

fn syntax(start: usize, end: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        span: SourceSpan::new(start, end),
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let at = |i: usize| chars.get(i).copied();
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' => {
                i += 1;
                Tok::Tilde
            }
            '?' => {
                i += 1;
                Tok::Question
            }
            ',' => {
                i += 1;
                Tok::Comma
            }
            ';' => {
                i += 1;
                Tok::Semi
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            '(' if at(i + 1) == Some('x') && at(i + 2) == Some(')') => {
                i += 3;
                Tok::Tensor
            }
            '(' => {
                i += 1;
                Tok::LParen
            }
            '/' if at(i + 1) == Some('\\') => {
                i += 2;
                Tok::And
            }
            '\\' if at(i + 1) == Some('/') => {
                i += 2;
                Tok::Or
            }
            '-' if at(i + 1) == Some('>') => {
                i += 2;
                Tok::Arrow
            }
            '=' if at(i + 1) == Some('(') => {
                i += 2;
                Tok::DepOpen
            }
            '#' => {
                i += 1;
                while at(i).is_some_and(|c| c.is_ascii_digit()) {
                    i += 1;
                }
                let digits: String = chars[start + 1..i].iter().collect();
                match digits.as_str() {
                    "1" => Tok::Hole(Hole::Left),
                    "2" => Tok::Hole(Hole::Right),
                    _ => return Err(syntax(start, i, "only the holes #1 and #2 exist")),
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while at(i).is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                match word.as_str() {
                    "bot" => Tok::Bot,
                    "top" => Tok::Top,
                    _ => Tok::Ident(word),
                }
            }
            other => return Err(syntax(start, start + 1, format!("unexpected character `{other}`"))),
        };
        out.push((tok, SourceSpan::new(start, i)));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    len: usize,
    sig: &'a LanguageSignature,
    allow_holes: bool,
}

type Node = (Term<Hole>, SourceSpan);

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn bump(&mut self) -> Option<(Tok, SourceSpan)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eof_span(&self) -> SourceSpan {
        SourceSpan::new(self.len, self.len)
    }

    fn expect(&mut self, want: Tok) -> Result<SourceSpan, ParseError> {
        match self.bump() {
            Some((t, span)) if t == want => Ok(span),
            Some((t, span)) => Err(syntax(span.start, span.end, format!("expected {want}, found {t}"))),
            None => {
                let e = self.eof_span();
                Err(syntax(e.start, e.end, format!("expected {want}, found end of input")))
            }
        }
    }

    fn deny(&self, span: SourceSpan, message: impl Into<String>) -> ParseError {
        ParseError::Signature {
            span,
            language: self.sig.name,
            message: message.into(),
        }
    }

    fn license(&self, c: Connective, span: SourceSpan) -> Result<(), ParseError> {
        if self.sig.allowed_connectives.contains(c) {
            Ok(())
        } else {
            Err(self.deny(span, format!("connective `{c}` is not allowed")))
        }
    }

    fn implication(&mut self) -> Result<Node, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            let (_, op) = self.bump().expect("peeked");
            self.license(Connective::Implies, op)?;
            let rhs = self.implication()?;
            let span = lhs.1.join(rhs.1);
            return Ok((Term::implies(lhs.0, rhs.0), span));
        }
        Ok(lhs)
    }

    fn left_assoc(
        &mut self,
        tok: Tok,
        op: BinaryOp,
        next: fn(&mut Self) -> Result<Node, ParseError>,
    ) -> Result<Node, ParseError> {
        let mut lhs = next(self)?;
        while self.peek() == Some(&tok) {
            let (_, span) = self.bump().expect("peeked");
            self.license(op.into(), span)?;
            let rhs = next(self)?;
            let span = lhs.1.join(rhs.1);
            lhs = (Term::Binary(op, Box::new(lhs.0), Box::new(rhs.0)), span);
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Node, ParseError> {
        self.left_assoc(Tok::Or, BinaryOp::Or, Self::tensor)
    }

    fn tensor(&mut self) -> Result<Node, ParseError> {
        self.left_assoc(Tok::Tensor, BinaryOp::Tensor, Self::conjunction)
    }

    fn conjunction(&mut self) -> Result<Node, ParseError> {
        self.left_assoc(Tok::And, BinaryOp::And, Self::prefix)
    }

    fn prefix(&mut self) -> Result<Node, ParseError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                let (_, op) = self.bump().expect("peeked");
                let (arg, span) = self.prefix()?;
                let span = op.join(span);
                let node = match (self.sig.negation_policy, arg) {
                    (NegationPolicy::LiteralOnly, Term::Atom(l)) => Term::NegAtom(l),
                    (NegationPolicy::LiteralOnly, hole @ Term::Hole(_)) => Term::neg(hole),
                    (NegationPolicy::LiteralOnly, _) => {
                        return Err(self.deny(span, "negation is only allowed in front of letters"))
                    }
                    (NegationPolicy::Full, arg) => {
                        self.license(Connective::Neg, op)?;
                        Term::neg(arg)
                    }
                };
                Ok((node, span))
            }
            Some(Tok::Question) => {
                let (_, op) = self.bump().expect("peeked");
                self.license(Connective::Question, op)?;
                let (arg, span) = self.prefix()?;
                Ok((Term::question(arg), op.join(span)))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Node, ParseError> {
        let Some((tok, span)) = self.bump() else {
            let e = self.eof_span();
            return Err(syntax(e.start, e.end, "unexpected end of input"));
        };
        match tok {
            Tok::Ident(name) => Ok((Term::Atom(Letter::new(name)), span)),
            Tok::Bot => {
                self.license(Connective::Bot, span)?;
                Ok((Term::bot(), span))
            }
            Tok::Top => {
                self.license(Connective::Top, span)?;
                Ok((Term::top(), span))
            }
            Tok::Hole(h) if self.allow_holes => Ok((Term::Hole(h), span)),
            Tok::Hole(_) => Err(syntax(span.start, span.end, "holes are only allowed in templates")),
            Tok::LParen => {
                let (inner, _) = self.implication()?;
                let close = self.expect(Tok::RParen)?;
                Ok((inner, span.join(close)))
            }
            Tok::DepOpen => self.dep_atom(span),
            other => Err(syntax(span.start, span.end, format!("unexpected {other}"))),
        }
    }

    fn dep_atom(&mut self, open: SourceSpan) -> Result<Node, ParseError> {
        let mut antecedents = Vec::new();
        let consequent;
        if self.peek() == Some(&Tok::Semi) {
            self.bump();
            consequent = self.implication()?.0;
        } else {
            antecedents.push(self.implication()?.0);
            loop {
                match self.peek() {
                    Some(Tok::Comma) => {
                        self.bump();
                        antecedents.push(self.implication()?.0);
                    }
                    Some(Tok::Semi) => {
                        self.bump();
                        consequent = self.implication()?.0;
                        break;
                    }
                    _ => {
                        if antecedents.len() != 1 {
                            let e = self.toks.get(self.pos).map_or(self.eof_span(), |t| t.1);
                            return Err(syntax(e.start, e.end, "expected `;` in dependence atom"));
                        }
                        consequent = antecedents.pop().expect("one element");
                        break;
                    }
                }
            }
        }
        let close = self.expect(Tok::RParen)?;
        let span = open.join(close);
        let dep = DepAtom {
            antecedents: antecedents.into_iter().map(literalize).collect(),
            consequent: Box::new(literalize(consequent)),
        };
        for arg in dep.components() {
            let ok = match self.sig.dep_atom_policy {
                DepAtomPolicy::None => {
                    return Err(self.deny(span, "dependence atoms are not allowed"));
                }
                DepAtomPolicy::LettersOnly => matches!(arg, Term::Atom(_) | Term::Hole(_)),
                DepAtomPolicy::ClassicalArgs => classical_with_holes(arg),
            };
            if !ok {
                let what = match self.sig.dep_atom_policy {
                    DepAtomPolicy::LettersOnly => "letters",
                    _ => "classical formulas",
                };
                return Err(self.deny(span, format!("dependence atom arguments must be {what}")));
            }
        }
        Ok((Term::Dep(dep), span))
    }
}

/// Dependence atom arguments are classical, so `~p` inside them is a literal.
fn literalize(t: Term<Hole>) -> Term<Hole> {
    match t {
        Term::Unary(UnaryOp::Neg, a) => match *a {
            Term::Atom(l) => Term::NegAtom(l),
            other => Term::neg(literalize(other)),
        },
        Term::Unary(op, a) => Term::Unary(op, Box::new(literalize(*a))),
        Term::Binary(op, a, b) => {
            Term::Binary(op, Box::new(literalize(*a)), Box::new(literalize(*b)))
        }
        other => other,
    }
}

fn classical_with_holes(t: &Term<Hole>) -> bool {
    match t {
        Term::Hole(_) => true,
        Term::Binary(BinaryOp::And | BinaryOp::Tensor, a, b) => {
            classical_with_holes(a) && classical_with_holes(b)
        }
        other => is_classical(other),
    }
}

fn parse_term(text: &str, sig: &LanguageSignature, allow_holes: bool) -> Result<Term<Hole>, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        len: text.chars().count(),
        sig,
        allow_holes,
    };
    let (term, _) = p.implication()?;
    if let Some((tok, span)) = p.toks.get(p.pos) {
        return Err(syntax(span.start, span.end, format!("unexpected {tok} after formula")));
    }
    Ok(term)
}

/// Parses a formula licensed by `sig`.
pub fn parse_formula(text: &str, sig: &LanguageSignature) -> Result<Formula, ParseError> {
    let term = parse_term(text, sig, false)?;
    let formula = term.map_holes(&mut |_| unreachable!("holes rejected by the lexer stage"));
    debug_assert!(crate::syntax::well_formed(&formula, sig));
    Ok(formula)
}

/// Parses a template with holes `#1` and `#2`. Connectives must be licensed
/// by `sig`; whether the result is a valid context is checked separately.
pub fn parse_template(text: &str, sig: &LanguageSignature) -> Result<Template, ParseError> {
    parse_term(text, sig, true).map(Template::new)
}

/// Parses the JSON model format
/// `{"worlds": [...], "valuation": {world: [letter, ...]}, "letters": [...]}`.
pub fn parse_model(text: &str) -> Result<Model, ParseError> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| ParseError::Format(e.to_string()))?;
    Model::try_from(file).map_err(|e| ParseError::Format(e.to_string()))
}

pub fn render<H: HoleKind>(f: &Term<H>) -> String {
    f.to_string()
}

/// Renders with `top` spelled as `r (x) ~r` for the given letter, the
/// abbreviation used in the dependence languages.
pub fn render_abbreviated<H: HoleKind>(f: &Term<H>, top_letter: &Letter) -> String {
    let mut out = String::new();
    write_term(&mut out, f, Some(top_letter)).expect("writing to a string");
    out
}

const IMPLIES: u8 = 1;
const OR: u8 = 2;
const TENSOR: u8 = 3;
const AND: u8 = 4;
const PREFIX: u8 = 5;
const ATOMIC: u8 = 6;

fn precedence<H>(t: &Term<H>, top_letter: Option<&Letter>) -> u8 {
    match t {
        Term::Binary(BinaryOp::Implies, ..) => IMPLIES,
        Term::Binary(BinaryOp::Or, ..) => OR,
        Term::Binary(BinaryOp::Tensor, ..) => TENSOR,
        Term::Const(Constant::Top) if top_letter.is_some() => TENSOR,
        Term::Binary(BinaryOp::And, ..) => AND,
        Term::Unary(..) | Term::NegAtom(_) => PREFIX,
        _ => ATOMIC,
    }
}

fn write_child<H: HoleKind>(
    out: &mut impl fmt::Write,
    t: &Term<H>,
    parens: bool,
    top_letter: Option<&Letter>,
) -> fmt::Result {
    if parens {
        out.write_char('(')?;
        write_term(out, t, top_letter)?;
        out.write_char(')')
    } else {
        write_term(out, t, top_letter)
    }
}

fn write_term<H: HoleKind>(
    out: &mut impl fmt::Write,
    t: &Term<H>,
    top_letter: Option<&Letter>,
) -> fmt::Result {
    match t {
        Term::Atom(l) => write!(out, "{l}"),
        Term::NegAtom(l) => write!(out, "~{l}"),
        Term::Hole(h) => out.write_str(h.symbol()),
        Term::Const(Constant::Bot) => out.write_str("bot"),
        Term::Const(Constant::Top) => match top_letter {
            Some(r) => write!(out, "{r} (x) ~{r}"),
            None => out.write_str("top"),
        },
        Term::Unary(op, a) => {
            out.write_str(match op {
                UnaryOp::Neg => "~",
                UnaryOp::Question => "?",
            })?;
            write_child(out, a, precedence(a, top_letter) < PREFIX, top_letter)
        }
        Term::Binary(op, a, b) => {
            let prec = precedence(t, top_letter);
            let (pa, pb) = (precedence(a, top_letter), precedence(b, top_letter));
            let (left_parens, right_parens) = if *op == BinaryOp::Implies {
                (pa <= prec, pb < prec)
            } else {
                (pa < prec, pb <= prec)
            };
            write_child(out, a, left_parens, top_letter)?;
            write!(out, " {} ", Connective::from(*op))?;
            write_child(out, b, right_parens, top_letter)
        }
        Term::Dep(d) => {
            out.write_str("=(")?;
            for (i, a) in d.antecedents.iter().enumerate() {
                if i > 0 {
                    out.write_str(", ")?;
                }
                write_term(out, a, top_letter)?;
            }
            if !d.antecedents.is_empty() {
                out.write_str("; ")?;
            }
            write_term(out, &d.consequent, top_letter)?;
            out.write_char(')')
        }
    }
}

impl<H: HoleKind> fmt::Display for Term<H> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, None)
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self.body(), None)
    }
}
