//! Acceptance suite: one PASS/FAIL line per criterion; exits non-zero if any
//! criterion fails.

mod common;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use inqdef::closure::{closure_for, ClosureResult};
use inqdef::semantics::{canonical_dep_model, canonical_impl_model, pointwise_family};
use inqdef::syntax::{Formula, Language, Term};
use inqdef::verify::{
    check_dep_triviality, check_singleton_property, cross_check, dependence_closure_formulas,
    verify_globalor_undefinability, verify_implication_in, verify_implication_undefinability,
};
use inqdef::{proposition, Proposition, State};
use proptest::test_runner::{Config, TestCaseError, TestRunner};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

/// `S↓` over three worlds, worlds given 1-based.
fn down(maximal: &[&[usize]]) -> Proposition {
    Proposition::downward_close(
        3,
        maximal.iter().map(|ws| State::from_worlds(ws.iter().map(|w| w - 1))),
    )
}

fn qp() -> Formula {
    Term::question(Term::atom("p"))
}

fn qq() -> Formula {
    Term::question(Term::atom("q"))
}

fn dep_args() -> (Formula, Formula) {
    (Term::constancy(Term::atom("p")), Term::constancy(Term::atom("q")))
}

fn implication_undefinable() -> Result<String, String> {
    let start = Instant::now();
    let report = verify_implication_undefinability().map_err(|e| e.to_string())?;
    let took = within(Duration::from_secs(1), start)?;
    ensure(!report.defined && report.witness.is_none(), || "reported DEFINABLE".into())?;
    let expected = [
        ("A", down(&[&[1, 2], &[1, 3]])),
        ("B", down(&[&[1, 2], &[2, 3]])),
        ("C", down(&[&[1, 2], &[3]])),
    ];
    ensure(report.forbidden_hits.len() == 3, || "expected three forbidden propositions".into())?;
    for ((name, want), hit) in expected.iter().zip(&report.forbidden_hits) {
        ensure(&hit.proposition == want, || format!("{name} computed as {:?}", hit.proposition))?;
        ensure(!hit.present, || format!("{name} is in the closure"))?;
    }
    ensure(report.target_proposition == expected[0].1, || "target differs from A".into())?;
    Ok(format!("UNDEFINABLE, closure size {}, A/B/C absent, {took:?}", report.closure_size))
}

fn dependence_closure(lang: Language) -> Result<ClosureResult, String> {
    let (cp, cq) = dep_args();
    closure_for(&canonical_dep_model(), lang, Some(&cp), Some(&cq)).map_err(|e| e.to_string())
}

fn globalor_undefinable_in_d() -> Result<String, String> {
    let start = Instant::now();
    let report = verify_globalor_undefinability(Language::D).map_err(|e| e.to_string())?;
    let closure = dependence_closure(Language::D)?;
    let took = within(Duration::from_secs(1), start)?;

    let m = canonical_dep_model();
    let listed: HashSet<Proposition> = dependence_closure_formulas()
        .iter()
        .map(|f| Proposition::try_from_family(pointwise_family(&m, f)).unwrap())
        .collect();
    let literal: HashSet<Proposition> = [
        down(&[&[1, 2, 3]]),
        down(&[&[1, 2], &[1, 3], &[2, 3]]),
        down(&[&[1, 2], &[3]]),
        down(&[&[1], &[2, 3]]),
        down(&[&[1], &[2], &[3]]),
        down(&[]),
    ]
    .into();
    ensure(listed == literal, || "the six formulas do not have the expected propositions".into())?;
    let members: HashSet<Proposition> = closure.propositions().iter().cloned().collect();
    ensure(closure.len() == 6 && members == literal, || {
        format!("closure has {} members, not the six expected", closure.len())
    })?;
    let target = down(&[&[1, 2], &[2, 3]]);
    ensure(report.target_proposition == target, || "target computed incorrectly".into())?;
    ensure(!members.contains(&target) && !report.defined, || "target is in the closure".into())?;
    Ok(format!("UNDEFINABLE, closure = the six propositions, {took:?}"))
}

fn globalor_undefinable_in_dplus() -> Result<String, String> {
    let start = Instant::now();
    let pq = ["p".into(), "q".into()].into();
    ensure(check_dep_triviality(&canonical_dep_model(), &pq, 2), || {
        "dependence-atom triviality check failed".into()
    })?;
    let report = verify_globalor_undefinability(Language::DPlus).map_err(|e| e.to_string())?;
    let plus = dependence_closure(Language::DPlus)?;
    let d = dependence_closure(Language::D)?;
    let took = within(Duration::from_secs(1), start)?;
    ensure(plus.proposition_set() == d.proposition_set(), || "D+ closure differs from D".into())?;
    ensure(!report.defined && report.closure_size == 6, || "reported DEFINABLE".into())?;
    Ok(format!("UNDEFINABLE, closure identical to D, {took:?}"))
}

fn singleton_property() -> Result<String, String> {
    let m = canonical_impl_model();
    let c = closure_for(&m, Language::InqMinus, Some(&qp()), Some(&qq())).map_err(|e| e.to_string())?;
    ensure(check_singleton_property(c.propositions(), &m), || "a member violates it".into())?;
    // independent restatement: every member is {∅} or supported by each singleton
    for p in c.propositions() {
        let ok = p.len() == 1 || (0..3).all(|w| p.contains(State::singleton(w)));
        ensure(ok, || format!("member {} violates it", p.render(&m)))?;
    }
    Ok(format!("holds for all {} members", c.len()))
}

fn oracle_equivalence() -> Result<String, String> {
    let start = Instant::now();
    let (cp, cq) = dep_args();
    let runs = [
        (canonical_impl_model(), Language::InqMinus, qp(), qq()),
        (canonical_dep_model(), Language::D, cp, cq),
    ];
    let mut parts = Vec::new();
    for (m, lang, left, right) in runs {
        let r = cross_check(&m, &lang.signature(), &left, &right, 7).map_err(|e| e.to_string())?;
        ensure(r.all_in_closure, || format!("{lang}: counterexample {:?}", r.first_counterexample))?;
        ensure(r.witnesses_sound == r.witnesses_checked, || {
            format!("{lang}: {}/{} witnesses sound", r.witnesses_sound, r.witnesses_checked)
        })?;
        parts.push(format!("{lang}: {} templates", r.templates_checked));
    }
    let took = within(Duration::from_secs(60), start)?;
    Ok(format!("{}, {took:?}", parts.join(", ")))
}

fn semantics_properties() -> Result<String, String> {
    const CASES: u32 = 1000;
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (
        common::small_model(),
        common::formula(5),
        common::formula(5),
        common::classical(3),
    );
    runner
        .run(&strategy, |(m, a, b, beta)| {
            let fam = |f: &Formula| pointwise_family(&m, f);
            let check = |cond: bool, what: &str| {
                if cond {
                    Ok(())
                } else {
                    Err(TestCaseError::fail(what.to_string()))
                }
            };
            let (fa, fb) = (fam(&a), fam(&b));
            check(fa.contains(State::EMPTY), "empty state property")?;
            check(fa.is_downward_closed(), "downward closure")?;
            let (pa, pb) = (proposition(&m, &a), proposition(&m, &b));
            check(&fa == pa.family() && &fb == pb.family(), "routes disagree")?;
            check(fam(&Term::and(a.clone(), b.clone())) == fa.intersection(&fb), "conjunction")?;
            check(fam(&Term::or(a.clone(), b.clone())) == fa.union(&fb), "global disjunction")?;
            let tensor = pa.tensor(&pb).map_err(|e| TestCaseError::fail(e.to_string()))?;
            check(&fam(&Term::tensor(a.clone(), b.clone())) == tensor.family(), "tensor")?;
            check(
                fam(&Term::neg(a.clone())) == fam(&Term::implies(a.clone(), Term::bot())),
                "negation",
            )?;
            check(
                fam(&Term::question(a.clone())) == fam(&Term::or(a.clone(), Term::neg(a.clone()))),
                "question",
            )?;
            check(
                fam(&Term::constancy(beta.clone())) == fam(&Term::question(beta.clone())),
                "constancy",
            )
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("{CASES} random cases, no failures"))
}

fn negative_control() -> Result<String, String> {
    let report = verify_implication_in(Language::InqPlus).map_err(|e| e.to_string())?;
    ensure(report.defined, || "INQ+ reported UNDEFINABLE".into())?;
    ensure(report.witness.as_deref() == Some("#1 -> #2"), || {
        format!("witness {:?}", report.witness)
    })?;
    let out = inqdef::cli::run(["inqdef", "verify", "implication", "--sig", "inq+"]);
    ensure(out.code == 1, || format!("exit code {}", out.code))?;
    ensure(out.stdout.starts_with("DEFINABLE, witness #1 -> #2"), || out.stdout.clone())?;
    Ok("DEFINABLE, witness #1 -> #2, exit code 1".into())
}

fn main() {
    let criteria: [(&str, Check); 7] = [
        ("implication undefinable in INQ-", implication_undefinable),
        ("global disjunction undefinable in D", globalor_undefinable_in_d),
        ("global disjunction undefinable in D+", globalor_undefinable_in_dplus),
        ("singleton property of the INQ- closure", singleton_property),
        ("closure agrees with template enumeration", oracle_equivalence),
        ("semantics property suite", semantics_properties),
        ("INQ+ negative control", negative_control),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
