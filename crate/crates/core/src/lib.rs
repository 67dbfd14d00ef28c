//! Propositional logic workbench.
//!
//! Formulas are parsed from text, evaluated by truth tables or in set-theoretic
//! models, decided with analytic tableaux and normalized to disjunctive normal
//! form. The [`session`] module wraps the tableau engine in a step-by-step
//! protocol for students, and [`check`] bundles one-shot reports.

pub mod check;
pub mod dnf;
pub mod formula;
pub mod render;
pub mod semantics;
pub mod session;
pub mod tableau;

#[cfg(test)]
pub(crate) mod testing;

pub use dnf::{complete_dnf, dnf_from_tableau, rewrite_to_dnf, Clause, Dnf};
pub use formula::{parse, Formula, Literal, ParseError, Polarity};
pub use semantics::{
    eval_standard, interpret, is_satisfiable_tt, is_valid_tt, satisfies, Model, StandardValuation,
    TruthTable,
};
pub use session::{Mode, ModeKind, Session, SessionError, SessionStore};
pub use tableau::{check_entails, check_satisfiable, check_valid, Tableau};
