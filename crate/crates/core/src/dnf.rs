//! Disjunctive normal forms: read off a finished tableau, read off a truth
//! table (the complete DNF), or obtained by syntactic rewriting.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{atoms_of, Formula, Literal};
use crate::semantics::{row_assignment, truth_column, SemanticsError, TruthTable};
use crate::tableau::{Tableau, TableauError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DnfError {
    #[error("a branch with no literals gives no clause")]
    EmptyBranch,
    #[error("the empty DNF denotes a contradiction, which has no formula in this language")]
    EmptyDnf,
}

/// A conjunction of literals, kept sorted by atom with the positive literal
/// first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Clause(BTreeSet<Literal>);

impl Clause {
    pub fn new<I: IntoIterator<Item = Literal>>(literals: I) -> Clause {
        Clause(literals.into_iter().collect())
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// False when the clause holds a complementary pair.
    pub fn is_consistent(&self) -> bool {
        self.0
            .iter()
            .filter(|l| l.is_positive())
            .all(|l| !self.0.contains(&l.complement()))
    }

    pub fn to_formula(&self) -> Option<Formula> {
        self.0
            .iter()
            .rev()
            .map(Literal::to_formula)
            .reduce(|acc, lit| Formula::and(lit, acc))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" ∧ "))
    }
}

/// A disjunction of clauses in canonical (sorted, deduplicated) order. The
/// empty DNF denotes ⊥.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Clause>")]
pub struct Dnf(Vec<Clause>);

impl From<Vec<Clause>> for Dnf {
    fn from(clauses: Vec<Clause>) -> Self {
        Dnf::new(clauses)
    }
}

impl Dnf {
    pub fn new<I: IntoIterator<Item = Clause>>(clauses: I) -> Dnf {
        Dnf(clauses.into_iter().collect()).canonicalized()
    }

    pub fn canonicalized(mut self) -> Dnf {
        self.0.sort();
        self.0.dedup();
        self
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when every clause mentions each of `atoms`.
    pub fn is_complete_over(&self, atoms: &BTreeSet<String>) -> bool {
        self.0.iter().all(|c| {
            let mentioned: BTreeSet<&String> = c.literals().map(|l| &l.atom).collect();
            mentioned.len() == atoms.len() && atoms.iter().all(|a| mentioned.contains(a))
        })
    }
}

impl fmt::Display for Dnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("⊥");
        }
        let wrap = self.0.len() > 1;
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|c| {
                if wrap && c.len() > 1 {
                    format!("({c})")
                } else {
                    c.to_string()
                }
            })
            .collect();
        f.write_str(&parts.join(" ∨ "))
    }
}

pub fn clause_from_branch(literals: &BTreeSet<Literal>) -> Result<Clause, DnfError> {
    if literals.is_empty() {
        return Err(DnfError::EmptyBranch);
    }
    Ok(Clause(literals.clone()))
}

/// One clause per open branch. Empty when the tableau is closed.
pub fn dnf_from_tableau(tableau: &Tableau) -> Result<Dnf, TableauError> {
    Ok(Dnf::new(
        tableau
            .open_branches()?
            .into_iter()
            .map(|b| Clause(b.literals)),
    ))
}

/// One full clause per satisfying truth-table row.
pub fn complete_dnf(f: &Formula) -> Result<Dnf, SemanticsError> {
    let table = TruthTable::new(f)?;
    Ok(Dnf::new(table.satisfying_rows().map(|row| {
        Clause::new(
            table
                .atoms
                .iter()
                .zip(&row.assignment)
                .map(|(atom, &value)| {
                    if value {
                        Literal::positive(atom.clone())
                    } else {
                        Literal::negative(atom.clone())
                    }
                }),
        )
    })))
}

/// Right-nested disjunction of right-nested conjunctions.
pub fn dnf_to_formula(dnf: &Dnf) -> Result<Formula, DnfError> {
    dnf.0
        .iter()
        .rev()
        .map(|c| c.to_formula().ok_or(DnfError::EmptyBranch))
        .try_fold(None, |acc: Option<Formula>, clause| {
            let clause = clause?;
            Ok(Some(match acc {
                None => clause,
                Some(rest) => Formula::or(clause, rest),
            }))
        })?
        .ok_or(DnfError::EmptyDnf)
}

/// True when `f` and `g` agree on every assignment to their combined atoms.
pub fn equivalent(f: &Formula, g: &Formula) -> Result<bool, SemanticsError> {
    let atoms: Vec<String> = atoms_of([f, g]).into_iter().collect();
    Ok(truth_column(f, &atoms)? == truth_column(g, &atoms)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RewriteRule {
    /// φ → χ ⇒ ¬φ ∨ χ
    ImplicationElimination,
    /// ¬(φ → χ) ⇒ φ ∧ ¬χ
    NegatedImplication,
    /// ¬¬φ ⇒ φ
    DoubleNegation,
    /// ¬(φ ∧ χ) ⇒ ¬φ ∨ ¬χ
    DeMorganAnd,
    /// ¬(φ ∨ χ) ⇒ ¬φ ∧ ¬χ
    DeMorganOr,
    /// (φ ∨ χ) ∧ ψ ⇒ (φ ∧ ψ) ∨ (χ ∧ ψ)
    DistributeLeft,
    /// φ ∧ (χ ∨ ψ) ⇒ (φ ∧ χ) ∨ (φ ∧ ψ)
    DistributeRight,
}

impl RewriteRule {
    pub fn describe(self) -> &'static str {
        match self {
            RewriteRule::ImplicationElimination => "implication elimination",
            RewriteRule::NegatedImplication => "negated implication",
            RewriteRule::DoubleNegation => "double negation",
            RewriteRule::DeMorganAnd => "De Morgan (¬∧)",
            RewriteRule::DeMorganOr => "De Morgan (¬∨)",
            RewriteRule::DistributeLeft => "distribution of ∧ over ∨ (left)",
            RewriteRule::DistributeRight => "distribution of ∧ over ∨ (right)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub rule: RewriteRule,
    pub before: Formula,
    pub after: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rewrite {
    pub dnf: Dnf,
    /// Clauses of the distributed formula, left to right, before inconsistent
    /// clauses are dropped.
    pub unpruned: Vec<Clause>,
    pub trace: Vec<RewriteStep>,
}

type RedexFn = fn(&Formula) -> Option<(RewriteRule, Formula)>;

fn eliminate_implication(f: &Formula) -> Option<(RewriteRule, Formula)> {
    match f {
        Formula::Implies(l, r) => Some((
            RewriteRule::ImplicationElimination,
            Formula::or(Formula::not((**l).clone()), (**r).clone()),
        )),
        _ => None,
    }
}

fn push_negation(f: &Formula) -> Option<(RewriteRule, Formula)> {
    let Formula::Not(inner) = f else { return None };
    Some(match inner.as_ref() {
        Formula::Not(x) => (RewriteRule::DoubleNegation, (**x).clone()),
        Formula::And(l, r) => (
            RewriteRule::DeMorganAnd,
            Formula::or(Formula::not((**l).clone()), Formula::not((**r).clone())),
        ),
        Formula::Or(l, r) => (
            RewriteRule::DeMorganOr,
            Formula::and(Formula::not((**l).clone()), Formula::not((**r).clone())),
        ),
        Formula::Implies(l, r) => (
            RewriteRule::NegatedImplication,
            Formula::and((**l).clone(), Formula::not((**r).clone())),
        ),
        Formula::Atom(_) => return None,
    })
}

fn distribute(f: &Formula) -> Option<(RewriteRule, Formula)> {
    let Formula::And(l, r) = f else { return None };
    if let Formula::Or(a, b) = l.as_ref() {
        return Some((
            RewriteRule::DistributeLeft,
            Formula::or(
                Formula::and((**a).clone(), (**r).clone()),
                Formula::and((**b).clone(), (**r).clone()),
            ),
        ));
    }
    if let Formula::Or(a, b) = r.as_ref() {
        return Some((
            RewriteRule::DistributeRight,
            Formula::or(
                Formula::and((**l).clone(), (**a).clone()),
                Formula::and((**l).clone(), (**b).clone()),
            ),
        ));
    }
    None
}

/// Rewrites the leftmost-outermost redex, if any.
fn rewrite_once(f: &Formula, redex: RedexFn) -> Option<(RewriteRule, Formula)> {
    if let Some(hit) = redex(f) {
        return Some(hit);
    }
    match f {
        Formula::Atom(_) => None,
        Formula::Not(inner) => rewrite_once(inner, redex).map(|(rule, x)| (rule, Formula::not(x))),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            let rebuild = |l: Formula, r: Formula| match f {
                Formula::And(..) => Formula::and(l, r),
                Formula::Or(..) => Formula::or(l, r),
                _ => Formula::implies(l, r),
            };
            if let Some((rule, x)) = rewrite_once(l, redex) {
                return Some((rule, rebuild(x, (**r).clone())));
            }
            rewrite_once(r, redex).map(|(rule, x)| (rule, rebuild((**l).clone(), x)))
        }
    }
}

fn collect_disjuncts<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    match f {
        Formula::Or(l, r) => {
            collect_disjuncts(l, out);
            collect_disjuncts(r, out);
        }
        other => out.push(other),
    }
}

fn collect_conjuncts(f: &Formula, out: &mut BTreeSet<Literal>) {
    match f {
        Formula::And(l, r) => {
            collect_conjuncts(l, out);
            collect_conjuncts(r, out);
        }
        other => {
            out.insert(
                other
                    .as_literal()
                    .expect("normal form conjuncts are literals"),
            );
        }
    }
}

/// Syntactic conversion: eliminate implications, push negations to the atoms,
/// distribute ∧ over ∨, then drop inconsistent clauses. Every rewrite is
/// recorded with the whole formula before and after it.
pub fn rewrite_to_dnf(f: &Formula) -> Rewrite {
    let mut trace = Vec::new();
    let mut current = f.clone();
    for redex in [eliminate_implication as RedexFn, push_negation, distribute] {
        while let Some((rule, next)) = rewrite_once(&current, redex) {
            trace.push(RewriteStep {
                rule,
                before: std::mem::replace(&mut current, next.clone()),
                after: next,
            });
        }
    }
    let mut disjuncts = Vec::new();
    collect_disjuncts(&current, &mut disjuncts);
    let unpruned: Vec<Clause> = disjuncts
        .into_iter()
        .map(|d| {
            let mut lits = BTreeSet::new();
            collect_conjuncts(d, &mut lits);
            Clause(lits)
        })
        .collect();
    let dnf = Dnf::new(unpruned.iter().filter(|c| c.is_consistent()).cloned());
    Rewrite {
        dnf,
        unpruned,
        trace,
    }
}

/// Evaluates a DNF directly, without converting it to a formula.
pub fn eval_dnf(
    dnf: &Dnf,
    valuation: &crate::semantics::StandardValuation,
) -> Result<bool, SemanticsError> {
    for clause in &dnf.0 {
        let mut holds = true;
        for lit in clause.literals() {
            holds &= valuation.get(&lit.atom)? == lit.is_positive();
        }
        if holds {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Truth-table equivalence between a formula and a DNF, which may be empty.
pub fn dnf_equivalent(f: &Formula, dnf: &Dnf) -> Result<bool, SemanticsError> {
    let mut atoms = f.atoms();
    for clause in dnf.clauses() {
        atoms.extend(clause.literals().map(|l| l.atom.clone()));
    }
    let atoms: Vec<String> = atoms.into_iter().collect();
    let column = truth_column(f, &atoms)?;
    let index = |atom: &str| {
        atoms
            .iter()
            .position(|a| a == atom)
            .expect("collected above")
    };
    let clauses: Vec<Vec<(usize, bool)>> = dnf
        .clauses()
        .iter()
        .map(|c| {
            c.literals()
                .map(|l| (index(&l.atom), l.is_positive()))
                .collect()
        })
        .collect();
    let n = atoms.len();
    Ok(column.iter().enumerate().all(|(i, &value)| {
        let bits = row_assignment(n, i);
        let holds = clauses
            .iter()
            .any(|c| c.iter().all(|&(j, positive)| bits[j] == positive));
        holds == value
    }))
}
