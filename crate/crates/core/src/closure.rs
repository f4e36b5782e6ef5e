//! Semantic closure: the propositions a language can reach on one model.
//!
//! Given generator propositions (the two substitution arguments plus every
//! leaf a context may use), the closure is the least set of propositions
//! containing them and closed under the language's connective operations.
//! Every member carries a witness term, which read back as a template gives
//! a context defining that member.
//!
//! Discovery proceeds by witness size: size-1 terms are the generators and
//! constants, and a size-`k` level combines unary operations on level `k-1`
//! with binary operations on levels `i` and `k-1-i`. Each proposition keeps
//! the first term that reached it, so witnesses are size-minimal.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::semantics::{proposition, Model, Proposition, PropositionError};
use crate::syntax::{
    BinaryOp, Connective, Constant, DepAtomPolicy, Formula, Hole, Language, LanguageSignature,
    Letter, NegationPolicy, Template, Term, UnaryOp,
};

/// The semantic operations a signature contributes to the closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticOpSet {
    pub unary: Vec<UnaryOp>,
    pub binary: Vec<BinaryOp>,
    pub constants: Vec<Constant>,
}

impl SemanticOpSet {
    pub fn with_binary(mut self, op: BinaryOp) -> Self {
        if !self.binary.contains(&op) {
            self.binary.push(op);
            self.binary.sort();
        }
        self
    }
}

/// Connective operations licensed by `sig`. Literals and dependence atoms
/// are not operations: holes may not occur under them, so they enter the
/// closure as generators.
pub fn ops_for(sig: &LanguageSignature) -> SemanticOpSet {
    let allowed = |c: Connective| sig.allowed_connectives.contains(c);
    let unary = [UnaryOp::Neg, UnaryOp::Question]
        .into_iter()
        .filter(|op| {
            allowed((*op).into())
                && (*op != UnaryOp::Neg || sig.negation_policy == NegationPolicy::Full)
        })
        .collect();
    let binary = [BinaryOp::And, BinaryOp::Or, BinaryOp::Tensor, BinaryOp::Implies]
        .into_iter()
        .filter(|op| allowed((*op).into()))
        .collect();
    let constants = [Constant::Bot, Constant::Top]
        .into_iter()
        .filter(|c| allowed((*c).into()))
        .collect();
    SemanticOpSet {
        unary,
        binary,
        constants,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("argument letters clash with the reserved fresh letter `{0}`")]
    LetterClash(Letter),
    #[error("fresh letter `{0}` does not have the same proposition as the representative fresh letter")]
    NonUniformFreshAtoms(Letter),
    #[error("generalized dependence atoms over the fresh letters are not all equivalent to top in this model")]
    NonTrivialDepAtoms,
    #[error("closure exceeded the cap of {0} propositions")]
    CapExceeded(usize),
    #[error(transparent)]
    ModelMismatch(#[from] PropositionError),
}

/// A labelled generator: its proposition and the template leaf it stands
/// for (a hole, or a hole-free leaf formula).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub leaf: Term<Hole>,
    pub proposition: Proposition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    world_count: usize,
    entries: Vec<Generator>,
}

/// Fresh-letter and dependence-sweep settings for generator construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    /// The first letter is the representative; extra letters are added as
    /// further generators.
    pub fresh_letters: Vec<Letter>,
    /// Depth of the classical-formula sweep certifying generalized atoms.
    pub dep_depth: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            fresh_letters: vec![Letter::from("r")],
            dep_depth: 2,
        }
    }
}

impl GeneratorSet {
    pub fn new(world_count: usize) -> Self {
        GeneratorSet {
            world_count,
            entries: Vec::new(),
        }
    }

    /// Adds a generator; labels must be unique.
    pub fn push(&mut self, label: impl Into<String>, leaf: Term<Hole>, proposition: Proposition) {
        let label = label.into();
        assert!(
            self.entries.iter().all(|g| g.label != label),
            "duplicate generator label `{label}`"
        );
        assert_eq!(proposition.world_count(), self.world_count, "generator over another model");
        self.entries.push(Generator {
            label,
            leaf,
            proposition,
        });
    }

    fn push_formula(&mut self, m: &Model, leaf: Formula) {
        let prop = proposition(m, &leaf);
        self.push(leaf.to_string(), leaf.lift(), prop);
    }

    pub fn world_count(&self) -> usize {
        self.world_count
    }

    pub fn entries(&self) -> &[Generator] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&Generator> {
        self.entries.iter().find(|g| g.label == label)
    }

    /// Generators for a closure over `m` in `sig`: the arguments (when
    /// given) as `#1` and `#2`, the constants, the representative fresh
    /// letter, and for the dependence languages its negation and the
    /// dependence atoms a context may use as leaves.
    pub fn build(
        m: &Model,
        sig: &LanguageSignature,
        left: Option<&Formula>,
        right: Option<&Formula>,
        config: &GeneratorConfig,
    ) -> Result<GeneratorSet, ClosureError> {
        let mut g = GeneratorSet::new(m.world_count());
        let mut used = BTreeSet::new();
        for (hole, arg) in [(Hole::Left, left), (Hole::Right, right)] {
            if let Some(f) = arg {
                used.extend(f.free_letters());
                g.push(hole_label(hole), Term::Hole(hole), proposition(m, f));
            }
        }
        if let Some(clash) = config.fresh_letters.iter().find(|l| used.contains(*l)) {
            return Err(ClosureError::LetterClash(clash.clone()));
        }
        for c in [Constant::Bot, Constant::Top] {
            if sig.allowed_connectives.contains(c.into()) {
                g.push_formula(m, Term::Const(c));
            }
        }

        let fresh = &config.fresh_letters;
        let representative = fresh.first().expect("at least one fresh letter").clone();
        let reference = proposition(m, &Term::Atom(representative.clone()));
        let others = m.letter_universe().iter().filter(|l| !used.contains(*l));
        if let Some(bad) = others
            .chain(fresh)
            .find(|l| proposition(m, &Term::Atom((*l).clone())) != reference)
        {
            return Err(ClosureError::NonUniformFreshAtoms(bad.clone()));
        }

        for r in fresh {
            g.push_formula(m, Term::Atom(r.clone()));
        }
        if sig.negation_policy == NegationPolicy::LiteralOnly {
            for r in fresh {
                g.push_formula(m, Term::NegAtom(r.clone()));
            }
        }
        match sig.dep_atom_policy {
            DepAtomPolicy::None => {}
            DepAtomPolicy::LettersOnly => {
                for atom in letter_dep_atoms(fresh) {
                    g.push_formula(m, atom);
                }
            }
            DepAtomPolicy::ClassicalArgs => {
                if !crate::verify::check_dep_triviality(m, &used, config.dep_depth) {
                    return Err(ClosureError::NonTrivialDepAtoms);
                }
                // every generalized atom avoiding the arguments' letters is top
                g.push_formula(m, Term::constancy(Term::Atom(representative)));
            }
        }
        Ok(g)
    }

    /// Uses the members of an earlier closure as generators, each standing
    /// for its witness template.
    pub fn from_closure(c: &ClosureResult) -> GeneratorSet {
        let mut g = GeneratorSet::new(c.world_count());
        for (i, (p, w)) in c.members().enumerate() {
            let t = w.to_template(c.generators());
            g.push(format!("m{i}"), t.into_body(), p.clone());
        }
        g
    }
}

/// `generators_for` with the default configuration (fresh letter `r`).
pub fn generators_for(
    m: &Model,
    sig: &LanguageSignature,
    left: &Formula,
    right: &Formula,
) -> Result<GeneratorSet, ClosureError> {
    GeneratorSet::build(m, sig, Some(left), Some(right), &GeneratorConfig::default())
}

fn hole_label(h: Hole) -> &'static str {
    match h {
        Hole::Left => "#1",
        Hole::Right => "#2",
    }
}

/// Letters-only dependence atoms over `letters`: every antecedent subset
/// (in order) with every consequent.
pub(crate) fn letter_dep_atoms(letters: &[Letter]) -> Vec<Formula> {
    let mut out = Vec::new();
    for mask in 0..(1usize << letters.len()) {
        let ante: Vec<Formula> = letters
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, l)| Term::Atom(l.clone()))
            .collect();
        for c in letters {
            out.push(Term::dep(ante.clone(), Term::Atom(c.clone())));
        }
    }
    out
}

/// A term over generator indices and connectives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    Generator(usize),
    Const(Constant),
    Unary(UnaryOp, Arc<Witness>),
    Binary(BinaryOp, Arc<Witness>, Arc<Witness>),
}

impl Witness {
    pub fn size(&self) -> usize {
        match self {
            Witness::Generator(_) | Witness::Const(_) => 1,
            Witness::Unary(_, a) => 1 + a.size(),
            Witness::Binary(_, a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Re-evaluates the term with the set-level operations.
    pub fn evaluate(&self, g: &GeneratorSet) -> Result<Proposition, PropositionError> {
        Ok(match self {
            Witness::Generator(i) => g.entries[*i].proposition.clone(),
            Witness::Const(Constant::Bot) => Proposition::bottom(g.world_count),
            Witness::Const(Constant::Top) => Proposition::top(g.world_count),
            Witness::Unary(op, a) => apply_unary(*op, &a.evaluate(g)?),
            Witness::Binary(op, a, b) => apply_binary(*op, &a.evaluate(g)?, &b.evaluate(g)?)?,
        })
    }

    /// Reads the term back as a template by replacing generators with their
    /// leaves.
    pub fn to_template(&self, g: &GeneratorSet) -> Template {
        fn go(w: &Witness, g: &GeneratorSet) -> Term<Hole> {
            match w {
                Witness::Generator(i) => g.entries[*i].leaf.clone(),
                Witness::Const(c) => Term::Const(*c),
                Witness::Unary(op, a) => Term::Unary(*op, Box::new(go(a, g))),
                Witness::Binary(op, a, b) => {
                    Term::Binary(*op, Box::new(go(a, g)), Box::new(go(b, g)))
                }
            }
        }
        Template::new(go(self, g))
    }

    /// Operator-style rendering over generator labels, e.g. `or(#1, #2)`.
    pub fn display<'a>(&'a self, g: &'a GeneratorSet) -> impl fmt::Display + 'a {
        struct Show<'a>(&'a Witness, &'a GeneratorSet);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                match self.0 {
                    Witness::Generator(i) => f.write_str(&self.1.entries[*i].label),
                    Witness::Const(c) => write!(f, "{}", Connective::from(*c)),
                    Witness::Unary(op, a) => write!(f, "{}({})", unary_name(*op), Show(a, self.1)),
                    Witness::Binary(op, a, b) => write!(
                        f,
                        "{}({}, {})",
                        binary_name(*op),
                        Show(a, self.1),
                        Show(b, self.1)
                    ),
                }
            }
        }
        Show(self, g)
    }
}

fn unary_name(op: UnaryOp) -> &'static str {
    match op {
        UnaryOp::Neg => "neg",
        UnaryOp::Question => "question",
    }
}

fn binary_name(op: BinaryOp) -> &'static str {
    match op {
        BinaryOp::And => "and",
        BinaryOp::Or => "or",
        BinaryOp::Tensor => "tensor",
        BinaryOp::Implies => "implies",
    }
}

fn apply_unary(op: UnaryOp, a: &Proposition) -> Proposition {
    match op {
        UnaryOp::Neg => a.neg(),
        UnaryOp::Question => a.question(),
    }
}

fn apply_binary(op: BinaryOp, a: &Proposition, b: &Proposition) -> Result<Proposition, PropositionError> {
    match op {
        BinaryOp::And => a.and(b),
        BinaryOp::Or => a.or(b),
        BinaryOp::Tensor => a.tensor(b),
        BinaryOp::Implies => a.implies(b),
    }
}

fn commutative(op: BinaryOp) -> bool {
    op != BinaryOp::Implies
}

#[derive(Debug, Clone)]
pub struct ClosureResult {
    generators: GeneratorSet,
    propositions: Vec<Proposition>,
    witnesses: Vec<Arc<Witness>>,
    index: HashMap<Proposition, usize>,
    /// Number of witness-size levels that discovered new propositions.
    pub rounds: usize,
    pub op_applications: usize,
}

impl ClosureResult {
    pub fn len(&self) -> usize {
        self.propositions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.propositions.is_empty()
    }

    pub fn world_count(&self) -> usize {
        self.generators.world_count
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn propositions(&self) -> &[Proposition] {
        &self.propositions
    }

    /// Members in discovery order with their witnesses.
    pub fn members(&self) -> impl Iterator<Item = (&Proposition, &Witness)> {
        self.propositions
            .iter()
            .zip(self.witnesses.iter().map(|w| &**w))
    }

    /// The witness of `p`, or `None` when `p` is outside the closure.
    pub fn contains(&self, p: &Proposition) -> Result<Option<&Witness>, PropositionError> {
        if p.world_count() != self.world_count() {
            return Err(PropositionError::ModelMismatch {
                left: self.world_count(),
                right: p.world_count(),
            });
        }
        Ok(self.index.get(p).map(|&i| &*self.witnesses[i]))
    }

    pub fn proposition_set(&self) -> BTreeSet<Vec<usize>> {
        self.propositions
            .iter()
            .map(|p| p.states().map(|s| s.index()).collect())
            .collect()
    }
}

pub const DEFAULT_CAP: usize = 1 << 20;

struct Builder {
    propositions: Vec<Proposition>,
    witnesses: Vec<Arc<Witness>>,
    index: HashMap<Proposition, usize>,
    cap: usize,
}

impl Builder {
    fn offer(&mut self, p: Proposition, w: impl FnOnce() -> Witness) -> Result<Option<usize>, ClosureError> {
        if self.index.contains_key(&p) {
            return Ok(None);
        }
        if self.propositions.len() >= self.cap {
            return Err(ClosureError::CapExceeded(self.cap));
        }
        let id = self.propositions.len();
        self.index.insert(p.clone(), id);
        self.propositions.push(p);
        self.witnesses.push(Arc::new(w()));
        Ok(Some(id))
    }
}

/// Least set containing the generators and the op constants, closed under
/// `ops`.
pub fn semantic_closure(
    m: &Model,
    g: &GeneratorSet,
    ops: &SemanticOpSet,
    cap: usize,
) -> Result<ClosureResult, ClosureError> {
    if g.world_count != m.world_count() {
        return Err(PropositionError::ModelMismatch {
            left: m.world_count(),
            right: g.world_count,
        }
        .into());
    }
    let mut b = Builder {
        propositions: Vec::new(),
        witnesses: Vec::new(),
        index: HashMap::new(),
        cap,
    };
    let mut op_applications = 0;
    // levels[k] holds the ids first reached by a size-k witness
    let mut levels: Vec<Vec<usize>> = vec![Vec::new(), Vec::new()];
    for (i, gen) in g.entries.iter().enumerate() {
        if let Some(id) = b.offer(gen.proposition.clone(), || Witness::Generator(i))? {
            levels[1].push(id);
        }
    }
    for c in &ops.constants {
        let p = match c {
            Constant::Bot => Proposition::bottom(g.world_count),
            Constant::Top => Proposition::top(g.world_count),
        };
        if let Some(id) = b.offer(p, || Witness::Const(*c))? {
            levels[1].push(id);
        }
    }
    let mut rounds = usize::from(!levels[1].is_empty());

    let mut size = 2;
    loop {
        let deepest = levels.iter().rposition(|l| !l.is_empty()).unwrap_or(0);
        if size > 2 * deepest + 1 {
            break;
        }
        let mut fresh = Vec::new();
        for &op in &ops.binary {
            for i in 1..size - 1 {
                let j = size - 1 - i;
                if commutative(op) && i > j {
                    continue;
                }
                let (left, right) = (levels[i].clone(), levels[j].clone());
                for (ai, &a) in left.iter().enumerate() {
                    for (bi, &c) in right.iter().enumerate() {
                        if commutative(op) && i == j && bi < ai {
                            continue;
                        }
                        op_applications += 1;
                        let p = apply_binary(op, &b.propositions[a], &b.propositions[c])?;
                        let (wa, wc) = (b.witnesses[a].clone(), b.witnesses[c].clone());
                        if let Some(id) = b.offer(p, || Witness::Binary(op, wa, wc))? {
                            fresh.push(id);
                        }
                    }
                }
            }
        }
        for &op in &ops.unary {
            for a in levels[size - 1].clone() {
                op_applications += 1;
                let p = apply_unary(op, &b.propositions[a]);
                let wa = b.witnesses[a].clone();
                if let Some(id) = b.offer(p, || Witness::Unary(op, wa))? {
                    fresh.push(id);
                }
            }
        }
        if !fresh.is_empty() {
            rounds += 1;
        }
        levels.push(fresh);
        size += 1;
    }

    Ok(ClosureResult {
        generators: g.clone(),
        propositions: b.propositions,
        witnesses: b.witnesses,
        index: b.index,
        rounds,
        op_applications,
    })
}

/// Convenience: generators and ops derived from `lang`, default cap. With
/// neither argument the generator set is empty and only the constants seed
/// the closure.
pub fn closure_for(
    m: &Model,
    lang: Language,
    left: Option<&Formula>,
    right: Option<&Formula>,
) -> Result<ClosureResult, ClosureError> {
    let sig = lang.signature();
    let g = if left.is_none() && right.is_none() {
        GeneratorSet::new(m.world_count())
    } else {
        GeneratorSet::build(m, &sig, left, right, &GeneratorConfig::default())?
    };
    semantic_closure(m, &g, &ops_for(&sig), DEFAULT_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{canonical_dep_model, canonical_impl_model, State};
    use crate::syntax::Formula as F;

    fn down(states: &[&[usize]]) -> Proposition {
        Proposition::downward_close(3, states.iter().map(|w| State::from_worlds(w.iter().copied())))
    }

    fn qp() -> F {
        F::question(F::atom("p"))
    }

    fn qq() -> F {
        F::question(F::atom("q"))
    }

    #[test]
    fn op_sets() {
        let minus = ops_for(&Language::InqMinus.signature());
        assert_eq!(minus.binary, [BinaryOp::And, BinaryOp::Or, BinaryOp::Tensor]);
        assert_eq!(minus.unary, [UnaryOp::Neg, UnaryOp::Question]);
        assert_eq!(minus.constants, [Constant::Bot, Constant::Top]);
        let d = ops_for(&Language::D.signature());
        assert_eq!(d.binary, [BinaryOp::And, BinaryOp::Tensor]);
        assert!(d.unary.is_empty());
        assert_eq!(d.constants, [Constant::Bot, Constant::Top]);
        assert!(ops_for(&Language::InqPlus.signature())
            .binary
            .contains(&BinaryOp::Implies));
    }

    #[test]
    fn implication_model_generators() {
        let m = canonical_impl_model();
        let g = generators_for(&m, &Language::InqMinus.signature(), &qp(), &qq()).unwrap();
        let labels: Vec<&str> = g.entries().iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["#1", "#2", "bot", "top", "r"]);
        assert_eq!(g.get("r").unwrap().proposition, Proposition::bottom(3));
        assert_eq!(g.get("top").unwrap().proposition, Proposition::top(3));
        assert_eq!(g.get("#1").unwrap().proposition, down(&[&[0], &[1, 2]]));
    }

    #[test]
    fn dependence_model_generators() {
        let m = canonical_dep_model();
        let (cp, cq) = (F::constancy(F::atom("p")), F::constancy(F::atom("q")));
        let g = generators_for(&m, &Language::D.signature(), &cp, &cq).unwrap();
        let labels: Vec<&str> = g.entries().iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["#1", "#2", "bot", "top", "r", "~r", "=(r)", "=(r; r)"]);
        assert_eq!(g.get("~r").unwrap().proposition, Proposition::top(3));
        assert_eq!(g.get("=(r)").unwrap().proposition, Proposition::top(3));
        assert_eq!(g.get("=(r; r)").unwrap().proposition, Proposition::top(3));

        let plus = generators_for(&m, &Language::DPlus.signature(), &cp, &cq).unwrap();
        assert_eq!(plus.len(), 7);
    }

    #[test]
    fn fresh_letters_are_interchangeable() {
        for m in [canonical_impl_model(), canonical_dep_model()] {
            let r = proposition(&m, &F::atom("r"));
            assert_eq!(r, proposition(&m, &F::atom("r'")));
            assert_eq!(r, proposition(&m, &F::atom("s")));
        }
    }

    #[test]
    fn generator_errors() {
        let m = canonical_impl_model();
        let sig = Language::InqMinus.signature();
        assert_eq!(
            generators_for(&m, &sig, &F::atom("r"), &qq()).unwrap_err(),
            ClosureError::LetterClash("r".into())
        );
        let odd = Model::from_table(&[("w1", &["p", "s"]), ("w2", &[])], &[]).unwrap();
        assert_eq!(
            generators_for(&odd, &sig, &qp(), &qq()).unwrap_err(),
            ClosureError::NonUniformFreshAtoms("s".into())
        );
        let everywhere = Model::from_table(&[("w1", &["s"]), ("w2", &["p", "s"])], &[]).unwrap();
        let cfg = GeneratorConfig {
            fresh_letters: vec!["s".into()],
            dep_depth: 2,
        };
        let d = Language::DPlus.signature();
        assert!(GeneratorSet::build(&everywhere, &d, Some(&F::constancy(F::atom("p"))), None, &cfg).is_ok());
        let varying = Model::from_table(&[("w1", &["s"]), ("w2", &["p"])], &[]).unwrap();
        assert_eq!(
            GeneratorSet::build(&varying, &d, Some(&F::constancy(F::atom("p"))), None, &cfg)
                .unwrap_err(),
            ClosureError::NonTrivialDepAtoms
        );
    }

    #[test]
    fn implication_closure_avoids_abc() {
        let m = canonical_impl_model();
        let c = closure_for(&m, Language::InqMinus, Some(&qp()), Some(&qq())).unwrap();
        let a = down(&[&[0, 1], &[0, 2]]);
        let b = down(&[&[0, 1], &[1, 2]]);
        let cc = down(&[&[0, 1], &[2]]);
        for x in [&a, &b, &cc] {
            assert!(c.contains(x).unwrap().is_none());
        }
        let or = down(&[&[0, 2], &[1, 2]]);
        let w = c.contains(&or).unwrap().expect("disjunction is reachable");
        assert_eq!(w.display(c.generators()).to_string(), "or(#1, #2)");
        assert!(c.contains(&Proposition::bottom(3)).unwrap().is_some());
    }

    #[test]
    fn implication_is_reachable_with_implies() {
        let m = canonical_impl_model();
        let sig = Language::InqMinus.signature();
        let g = generators_for(&m, &sig, &qp(), &qq()).unwrap();
        let ops = ops_for(&sig).with_binary(BinaryOp::Implies);
        let c = semantic_closure(&m, &g, &ops, DEFAULT_CAP).unwrap();
        let a = down(&[&[0, 1], &[0, 2]]);
        let w = c.contains(&a).unwrap().unwrap();
        assert_eq!(w.display(c.generators()).to_string(), "implies(#1, #2)");
        assert_eq!(w.to_template(c.generators()).to_string(), "#1 -> #2");
    }

    #[test]
    fn dependence_closure_is_the_six_propositions() {
        let m = canonical_dep_model();
        let (cp, cq) = (F::constancy(F::atom("p")), F::constancy(F::atom("q")));
        let c = closure_for(&m, Language::D, Some(&cp), Some(&cq)).unwrap();
        assert_eq!(c.len(), 6);
        let target = down(&[&[0, 1], &[1, 2]]);
        assert!(c.contains(&target).unwrap().is_none());
    }

    #[test]
    fn constants_only() {
        let m = canonical_dep_model();
        let c = closure_for(&m, Language::D, None, None).unwrap();
        assert_eq!(c.len(), 2);
        let c = closure_for(&m, Language::InqMinus, None, None).unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn witnesses_reevaluate() {
        let m = canonical_impl_model();
        let c = closure_for(&m, Language::InqMinus, Some(&qp()), Some(&qq())).unwrap();
        for (p, w) in c.members() {
            assert_eq!(&w.evaluate(c.generators()).unwrap(), p);
        }
    }

    #[test]
    fn closure_is_idempotent_and_deterministic() {
        let m = canonical_impl_model();
        let sig = Language::InqMinus.signature();
        let c = closure_for(&m, Language::InqMinus, Some(&qp()), Some(&qq())).unwrap();
        let again = closure_for(&m, Language::InqMinus, Some(&qp()), Some(&qq())).unwrap();
        assert_eq!(c.propositions(), again.propositions());
        assert_eq!(c.rounds, again.rounds);
        assert_eq!(c.op_applications, again.op_applications);

        let g = GeneratorSet::from_closure(&c);
        let re = semantic_closure(&m, &g, &ops_for(&sig), DEFAULT_CAP).unwrap();
        assert_eq!(re.proposition_set(), c.proposition_set());
        assert_eq!(re.rounds, 1);
    }

    #[test]
    fn cap_is_enforced() {
        let m = canonical_impl_model();
        let sig = Language::InqMinus.signature();
        let g = generators_for(&m, &sig, &qp(), &qq()).unwrap();
        assert_eq!(
            semantic_closure(&m, &g, &ops_for(&sig), 4).unwrap_err(),
            ClosureError::CapExceeded(4)
        );
    }

    #[test]
    fn mismatched_model() {
        let m = canonical_impl_model();
        let small = Model::from_table(&[("w1", &[])], &[]).unwrap();
        let g = GeneratorSet::new(1);
        assert!(semantic_closure(&m, &g, &ops_for(&Language::D.signature()), 10).is_err());
        let c = closure_for(&small, Language::D, None, None).unwrap();
        assert!(c.contains(&Proposition::top(3)).is_err());
    }
}
