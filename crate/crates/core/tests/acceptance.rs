//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use tableaux_core::dnf::{dnf_equivalent, equivalent, Clause};
use tableaux_core::formula::Literal;
use tableaux_core::semantics::model_from_valuation;
use tableaux_core::tableau::BranchStatus;
use tableaux_core::{
    check_satisfiable, check_valid, complete_dnf, dnf_from_tableau, parse, rewrite_to_dnf,
    satisfies, Dnf, Formula, Tableau, TruthTable,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn f(s: &str) -> Formula {
    parse(s).expect("fixture parses")
}

fn lits(names: &[&str]) -> BTreeSet<Literal> {
    names
        .iter()
        .map(|s| match s.strip_prefix('¬') {
            Some(a) => Literal::negative(a),
            None => Literal::positive(*s),
        })
        .collect()
}

fn clause(names: &[&str]) -> Clause {
    Clause::new(lits(names))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

struct Corpora {
    exhaustive: Vec<Formula>,
    random: Vec<Formula>,
}

impl Corpora {
    fn all(&self) -> impl Iterator<Item = &Formula> {
        self.exhaustive.iter().chain(&self.random)
    }
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let phi = f("(p|q)&(~p|r)");
    let check = check_satisfiable(std::slice::from_ref(&phi)).unwrap();
    let t = &check.tableau;
    let branches: Vec<_> = t
        .branches()
        .map(|b| (b.number, b.status, b.literals.clone()))
        .collect();
    let expected = vec![
        (1, BranchStatus::Closed, lits(&["p", "¬p"])),
        (2, BranchStatus::Open, lits(&["p", "r"])),
        (3, BranchStatus::Open, lits(&["q", "¬p"])),
        (4, BranchStatus::Open, lits(&["q", "r"])),
    ];
    ensure(branches == expected, || format!("branches {branches:?}"))?;

    let model = check.model.ok_or("no model")?;
    let universe: Vec<_> = model.universe().iter().copied().collect();
    ensure(universe == [2, 3, 4], || format!("universe {universe:?}"))?;
    for (atom, states) in [("p", vec![2]), ("q", vec![3, 4]), ("r", vec![2, 4])] {
        let got: Vec<_> = model.atom_states(atom).unwrap().iter().copied().collect();
        ensure(got == states, || format!("v({atom}) = {got:?}"))?;
    }

    let dnf = dnf_from_tableau(t).unwrap();
    let want = Dnf::new([
        clause(&["p", "r"]),
        clause(&["¬p", "q"]),
        clause(&["q", "r"]),
    ]);
    ensure(dnf == want, || format!("dnf {dnf}"))?;
    ensure(
        dnf.to_string() == "(p ∧ r) ∨ (¬p ∧ q) ∨ (q ∧ r)",
        || format!("dnf text {dnf}"),
    )?;

    let table = TruthTable::new(&phi).unwrap();
    let true_rows: Vec<String> = table
        .satisfying_rows()
        .map(|r| {
            r.assignment
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect()
        })
        .collect();
    ensure(true_rows == ["111", "101", "011", "010"], || {
        format!("rows {true_rows:?}")
    })?;
    ensure(table.rows.len() == 8, || "row count".into())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("4 leaves, model {{2,3,4}}, {elapsed:.2?}"))
}

fn complete_dnf_example() -> Outcome {
    let start = Instant::now();
    let phi = f("(p|q)&(~p|r)");
    let complete = complete_dnf(&phi).unwrap();
    let want = Dnf::new([
        clause(&["p", "q", "r"]),
        clause(&["p", "¬q", "r"]),
        clause(&["¬p", "q", "r"]),
        clause(&["¬p", "q", "¬r"]),
    ]);
    ensure(complete == want, || format!("complete dnf {complete}"))?;
    let tableau_dnf = dnf_from_tableau(&Tableau::build(&[phi]).unwrap()).unwrap();
    let a = tableaux_core::dnf::dnf_to_formula(&complete).unwrap();
    let b = tableaux_core::dnf::dnf_to_formula(&tableau_dnf).unwrap();
    ensure(equivalent(&a, &b).unwrap(), || {
        "not equivalent to tableau DNF".into()
    })?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{complete}"))
}

fn implication_complete_dnf() -> Outcome {
    let start = Instant::now();
    let phi = f("~p|q");
    let complete = complete_dnf(&phi).unwrap();
    let want = Dnf::new([
        clause(&["¬p", "¬q"]),
        clause(&["¬p", "q"]),
        clause(&["p", "q"]),
    ]);
    ensure(complete == want, || format!("complete dnf {complete}"))?;
    ensure(dnf_equivalent(&phi, &complete).unwrap(), || {
        "not equivalent".into()
    })?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{complete}"))
}

fn validity_example() -> Outcome {
    let start = Instant::now();
    let phi = f("(p&q)->(p|q)");
    let check = check_valid(&phi);
    ensure(check.valid && check.counter_model.is_none(), || {
        "not valid".into()
    })?;
    ensure(
        check
            .tableau
            .branches()
            .all(|b| b.status == BranchStatus::Closed),
        || "negation tableau has a non-closed branch".into(),
    )?;
    let direct = Tableau::build(&[phi]).unwrap();
    let got: Vec<_> = direct
        .branches()
        .map(|b| (b.status, b.literals.clone()))
        .collect();
    let want: Vec<_> = [["¬p"], ["¬q"], ["p"], ["q"]]
        .iter()
        .map(|l| (BranchStatus::Open, lits(l)))
        .collect();
    ensure(got == want, || format!("direct leaves {got:?}"))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "closed negation tableau, 4 open direct leaves, {elapsed:.2?}"
    ))
}

fn oracle_agreement(c: &Corpora) -> Outcome {
    let start = Instant::now();
    let mut disagreements = 0usize;
    let mut first = None;
    for phi in c.all() {
        let open = Tableau::build(std::slice::from_ref(phi))
            .unwrap()
            .is_open()
            .unwrap();
        let tt = TruthTable::new(phi).unwrap().rows.iter().any(|r| r.value);
        if open != tt {
            disagreements += 1;
            first.get_or_insert_with(|| phi.to_string());
        }
    }
    let elapsed = start.elapsed();
    ensure(disagreements == 0, || {
        format!("{disagreements} disagreements, first {first:?}")
    })?;
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!(
        "{} exhaustive + {} random, 0 disagreements, {elapsed:.2?}",
        c.exhaustive.len(),
        c.random.len()
    ))
}

fn extraction_soundness(c: &Corpora) -> Outcome {
    let mut violations = 0usize;
    let mut models = 0usize;
    for phi in c.all() {
        let check = check_satisfiable(std::slice::from_ref(phi)).unwrap();
        if let Some(m) = &check.model {
            models += 1;
            if !m.universe().iter().all(|&s| satisfies(m, s, phi).unwrap()) {
                violations += 1;
            }
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok(format!("{models} models checked, 0 violations"))
}

fn standard_vs_set_semantics(c: &Corpora) -> Outcome {
    let mut disagreements = 0usize;
    for phi in &c.exhaustive {
        let table = TruthTable::new(phi).unwrap();
        let standard = table.rows.iter().any(|r| r.value);
        let set_level = table
            .rows
            .iter()
            .any(|row| satisfies(&model_from_valuation(&table.valuation(row)), 1, phi).unwrap());
        if standard != set_level {
            disagreements += 1;
        }
    }
    ensure(disagreements == 0, || {
        format!("{disagreements} disagreements")
    })?;
    Ok(format!("{} formulas, 0 disagreements", c.exhaustive.len()))
}

fn dnf_suites(c: &Corpora) -> Outcome {
    let mut violations = 0usize;
    let mut first = None;
    let mut steps = 0usize;
    for phi in c.all() {
        let t = Tableau::build(std::slice::from_ref(phi)).unwrap();
        let mut ok = dnf_equivalent(phi, &dnf_from_tableau(&t).unwrap()).unwrap();
        let rewrite = rewrite_to_dnf(phi);
        ok &= dnf_equivalent(phi, &rewrite.dnf).unwrap();
        for step in &rewrite.trace {
            steps += 1;
            ok &= equivalent(&step.before, &step.after).unwrap();
        }
        if !ok {
            violations += 1;
            first.get_or_insert_with(|| phi.to_string());
        }
    }
    ensure(violations == 0, || {
        format!("{violations} violations, first {first:?}")
    })?;
    Ok(format!("{steps} rewrite steps checked, 0 violations"))
}

fn termination_and_determinism() -> Outcome {
    let corpus = common::random_corpus(0x7e57_0014, &["p", "q", "r", "s", "t"], 14, 200);
    let mut slowest = Duration::ZERO;
    for phi in &corpus {
        let start = Instant::now();
        let a = Tableau::build(std::slice::from_ref(phi)).unwrap();
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        ensure(elapsed < Duration::from_secs(2), || {
            format!("{phi} took {elapsed:?}")
        })?;
        let b = Tableau::build(std::slice::from_ref(phi)).unwrap();
        let (ja, jb) = (
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap(),
        );
        ensure(ja == jb, || format!("{phi} serialized differently"))?;
    }
    Ok(format!("200 formulas, slowest {slowest:.2?}"))
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort();
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2
    }
}

/// Time per call, averaged over enough repetitions to exceed a few
/// hundred microseconds.
fn time<T>(mut op: impl FnMut() -> T) -> Duration {
    let mut reps = 1u32;
    loop {
        let start = Instant::now();
        for _ in 0..reps {
            std::hint::black_box(op());
        }
        let elapsed = start.elapsed();
        if elapsed > Duration::from_micros(500) || reps >= 1 << 16 {
            return elapsed / reps;
        }
        reps *= 4;
    }
}

fn tableau_vs_truth_table() -> Outcome {
    let atoms = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"];
    let mut rng = common::rng(0x7ab1_e010);
    let corpus: Vec<Formula> = (0..100)
        .map(|_| common::random_covering_formula(&mut rng, &atoms, 20))
        .collect();
    let mut tableau_times = Vec::new();
    let mut table_times = Vec::new();
    for phi in &corpus {
        let gamma = std::slice::from_ref(phi);
        let by_tableau = Tableau::build(gamma).unwrap().is_open().unwrap();
        let by_table = TruthTable::new(phi).unwrap().rows.iter().any(|r| r.value);
        ensure(by_tableau == by_table, || {
            format!("verdicts differ on {phi}")
        })?;
        tableau_times.push(time(|| Tableau::build(gamma).unwrap().is_open().unwrap()));
        table_times.push(time(|| {
            TruthTable::new(phi).unwrap().rows.iter().any(|r| r.value)
        }));
    }
    let (mt, mtt) = (median(tableau_times), median(table_times));
    let ratio = mt.as_secs_f64() / mtt.as_secs_f64();
    let detail = format!("median tableau {mt:.2?}, truth table {mtt:.2?}, ratio {ratio:.3}");
    ensure(mt < mtt, || detail.clone())?;
    Ok(detail)
}

fn main() -> ExitCode {
    let build = Instant::now();
    let corpora = Corpora {
        exhaustive: common::enumerate(&["p", "q"], 5),
        random: common::random_corpus(0x5eed_0010, &["p", "q", "r"], 10, 1000),
    };
    println!(
        "corpora: {} exhaustive over {{p,q}} (degree ≤ 5), {} random over {{p,q,r}} (degree ≤ 10), built in {:.2?}",
        corpora.exhaustive.len(),
        corpora.random.len(),
        build.elapsed()
    );

    let criteria: Vec<Criterion> = vec![
        ("worked satisfiability example", Box::new(worked_example)),
        (
            "complete DNF of the worked example",
            Box::new(complete_dnf_example),
        ),
        ("complete DNF of ¬p ∨ q", Box::new(implication_complete_dnf)),
        ("validity of (p ∧ q) → (p ∨ q)", Box::new(validity_example)),
        (
            "tableau openness matches truth tables",
            Box::new(|| oracle_agreement(&corpora)),
        ),
        (
            "extracted models satisfy the input",
            Box::new(|| extraction_soundness(&corpora)),
        ),
        (
            "standard and set-theoretic satisfiability coincide",
            Box::new(|| standard_vs_set_semantics(&corpora)),
        ),
        (
            "DNF constructions preserve meaning",
            Box::new(|| dnf_suites(&corpora)),
        ),
        (
            "termination and deterministic serialization",
            Box::new(termination_and_determinism),
        ),
        (
            "tableau median time below truth-table median",
            Box::new(tableau_vs_truth_table),
        ),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!(
                "PASS {:>2} {name}: {detail} [{:.2?}]",
                i + 1,
                start.elapsed()
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "FAIL {:>2} {name}: {detail} [{:.2?}]",
                    i + 1,
                    start.elapsed()
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
