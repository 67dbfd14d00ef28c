//! One-shot reports for the command line and the HTTP API.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dnf::{complete_dnf, dnf_from_tableau, rewrite_to_dnf, Dnf, RewriteStep};
use crate::formula::{parse, Formula, ParseError};
use crate::semantics::{Model, SemanticsError, TruthTable};
use crate::tableau::{check_entails, check_satisfiable, check_valid, OpenBranch, Tableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Sat,
    Valid,
    Entails,
    Dnf,
    Truthtable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRequest {
    pub kind: CheckKind,
    pub formulas: Vec<String>,
}

#[derive(Debug, Error)]
pub enum CheckError {
    #[error("formula {index}: {source}")]
    Parse { index: usize, source: ParseError },
    #[error("{kind:?} takes {expected}, got {given} formula(s)")]
    FormulaCount {
        kind: CheckKind,
        expected: &'static str,
        given: usize,
    },
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

impl CheckError {
    pub fn code(&self) -> &'static str {
        match self {
            CheckError::Parse { .. } => "PARSE_ERROR",
            CheckError::FormulaCount { .. } => "INVALID_REQUEST",
            CheckError::Semantics(SemanticsError::TooManyAtoms { .. }) => "TOO_MANY_ATOMS",
            CheckError::Semantics(_) => "INVALID_REQUEST",
        }
    }
}

/// Parses formula texts, reporting the index of the first failure.
pub fn parse_all<S: AsRef<str>>(texts: &[S]) -> Result<Vec<Formula>, CheckError> {
    texts
        .iter()
        .enumerate()
        .map(|(index, t)| parse(t.as_ref()).map_err(|source| CheckError::Parse { index, source }))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SatReport {
    pub satisfiable: bool,
    pub model: Option<Model>,
    pub dnf: String,
    pub clauses: Dnf,
    pub open_branches: Vec<OpenBranch>,
    #[serde(skip)]
    pub tableau: Tableau,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidReport {
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counter_model: Option<Model>,
    #[serde(skip)]
    pub tableau: Tableau,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EntailsReport {
    pub entails: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counter_model: Option<Model>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DnfText {
    pub dnf: String,
    pub clauses: Dnf,
}

impl From<Dnf> for DnfText {
    fn from(clauses: Dnf) -> Self {
        DnfText {
            dnf: clauses.to_string(),
            clauses,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteReport {
    pub dnf: String,
    pub clauses: Dnf,
    pub trace: Vec<RewriteStep>,
}

/// The tableau-derived DNF at the top level, alongside the truth-table and
/// rewriting constructions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DnfReport {
    pub dnf: String,
    pub clauses: Dnf,
    pub complete: DnfText,
    pub rewrite: RewriteReport,
}

pub fn sat_report(formulas: &[Formula]) -> Result<SatReport, CheckError> {
    let check = check_satisfiable(formulas).map_err(|_| CheckError::FormulaCount {
        kind: CheckKind::Sat,
        expected: "at least one formula",
        given: 0,
    })?;
    let clauses = dnf_from_tableau(&check.tableau).expect("built tableaux are finished");
    Ok(SatReport {
        satisfiable: check.satisfiable,
        model: check.model,
        dnf: clauses.to_string(),
        clauses,
        open_branches: check
            .tableau
            .open_branches()
            .expect("built tableaux are finished"),
        tableau: check.tableau,
    })
}

pub fn valid_report(f: &Formula) -> ValidReport {
    let check = check_valid(f);
    ValidReport {
        valid: check.valid,
        counter_model: check.counter_model,
        tableau: check.tableau,
    }
}

pub fn entails_report(premises: &[Formula], conclusion: &Formula) -> EntailsReport {
    let check = check_entails(premises, conclusion);
    EntailsReport {
        entails: check.entails,
        counter_model: check.counter_model,
    }
}

pub fn dnf_report(f: &Formula) -> Result<DnfReport, CheckError> {
    let tableau = Tableau::build(std::slice::from_ref(f)).expect("one formula");
    let clauses = dnf_from_tableau(&tableau).expect("built tableaux are finished");
    let complete = complete_dnf(f)?.into();
    let rewrite = rewrite_to_dnf(f);
    Ok(DnfReport {
        dnf: clauses.to_string(),
        clauses,
        complete,
        rewrite: RewriteReport {
            dnf: rewrite.dnf.to_string(),
            clauses: rewrite.dnf,
            trace: rewrite.trace,
        },
    })
}

fn single(kind: CheckKind, formulas: Vec<Formula>) -> Result<Formula, CheckError> {
    let given = formulas.len();
    let mut it = formulas.into_iter();
    match (it.next(), it.next()) {
        (Some(f), None) => Ok(f),
        _ => Err(CheckError::FormulaCount {
            kind,
            expected: "exactly one formula",
            given,
        }),
    }
}

/// Runs a stateless check and returns its JSON report. For entailment the
/// last formula is the conclusion.
pub fn run_check(request: &CheckRequest) -> Result<serde_json::Value, CheckError> {
    let formulas = parse_all(&request.formulas)?;
    let kind = request.kind;
    let json = match kind {
        CheckKind::Sat => serde_json::to_value(sat_report(&formulas)?),
        CheckKind::Valid => serde_json::to_value(valid_report(&single(kind, formulas)?)),
        CheckKind::Entails => {
            let mut premises = formulas;
            let conclusion = premises.pop().ok_or(CheckError::FormulaCount {
                kind,
                expected: "zero or more premises followed by a conclusion",
                given: 0,
            })?;
            serde_json::to_value(entails_report(&premises, &conclusion))
        }
        CheckKind::Dnf => serde_json::to_value(dnf_report(&single(kind, formulas)?)?),
        CheckKind::Truthtable => serde_json::to_value(TruthTable::new(&single(kind, formulas)?)?),
    };
    Ok(json.expect("reports serialize"))
}
