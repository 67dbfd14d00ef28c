//! Two semantics for the language: classical 0/1 valuations with truth tables,
//! and set-theoretic models where each atom denotes the set of states of the
//! world at which it holds.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Formula;

/// Identifier of a state of the world. Always positive.
pub type StateId = usize;

/// Largest atom count accepted by truth-table based operations.
pub const MAX_TABLE_ATOMS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("atom `{0}` has no truth value in the valuation")]
    UnmappedAtom(String),
    #[error("atom `{0}` is not interpreted by the model")]
    MissingAtom(String),
    #[error("state {0} is not in the universe of the model")]
    StateNotInUniverse(StateId),
    #[error("{count} atoms exceed the truth-table limit of {max}")]
    TooManyAtoms { count: usize, max: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("the universe of states must not be empty")]
    EmptyUniverse,
    #[error("state ids are positive integers, found 0")]
    ZeroState,
    #[error("v({atom}) contains state {state}, which is outside the universe")]
    OutsideUniverse { atom: String, state: StateId },
    #[error("invalid atom name {0:?}")]
    BadAtom(String),
}

/// Classical assignment of truth values to atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StandardValuation(BTreeMap<String, bool>);

impl StandardValuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, atom: impl Into<String>, value: bool) {
        self.0.insert(atom.into(), value);
    }

    pub fn with(mut self, atom: impl Into<String>, value: bool) -> Self {
        self.set(atom, value);
        self
    }

    pub fn get(&self, atom: &str) -> Result<bool, SemanticsError> {
        self.0
            .get(atom)
            .copied()
            .ok_or_else(|| SemanticsError::UnmappedAtom(atom.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<S: Into<String>> FromIterator<(S, bool)> for StandardValuation {
    fn from_iter<I: IntoIterator<Item = (S, bool)>>(iter: I) -> Self {
        StandardValuation(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

/// Truth-functional evaluation.
pub fn eval_standard(f: &Formula, valuation: &StandardValuation) -> Result<bool, SemanticsError> {
    Ok(match f {
        Formula::Atom(name) => valuation.get(name)?,
        Formula::Not(inner) => !eval_standard(inner, valuation)?,
        Formula::And(l, r) => eval_standard(l, valuation)? & eval_standard(r, valuation)?,
        Formula::Or(l, r) => eval_standard(l, valuation)? | eval_standard(r, valuation)?,
        Formula::Implies(l, r) => !eval_standard(l, valuation)? | eval_standard(r, valuation)?,
    })
}

/// A formula flattened to postfix with atoms replaced by column indices, so
/// that evaluating a table row costs no map lookups.
enum Op {
    Push(usize),
    Not,
    And,
    Or,
    Implies,
}

struct Compiled {
    ops: Vec<Op>,
    stack: Vec<bool>,
}

impl Compiled {
    fn new(f: &Formula, atoms: &[String]) -> Result<Self, SemanticsError> {
        fn go(f: &Formula, atoms: &[String], ops: &mut Vec<Op>) -> Result<(), SemanticsError> {
            match f {
                Formula::Atom(name) => {
                    let idx = atoms
                        .iter()
                        .position(|a| a == name)
                        .ok_or_else(|| SemanticsError::UnmappedAtom(name.clone()))?;
                    ops.push(Op::Push(idx));
                }
                Formula::Not(inner) => {
                    go(inner, atoms, ops)?;
                    ops.push(Op::Not);
                }
                Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                    go(l, atoms, ops)?;
                    go(r, atoms, ops)?;
                    ops.push(match f {
                        Formula::And(..) => Op::And,
                        Formula::Or(..) => Op::Or,
                        _ => Op::Implies,
                    });
                }
            }
            Ok(())
        }
        let mut ops = Vec::new();
        go(f, atoms, &mut ops)?;
        Ok(Compiled {
            ops,
            stack: Vec::new(),
        })
    }

    fn eval(&mut self, bits: &[bool]) -> bool {
        self.stack.clear();
        for op in &self.ops {
            let v = match op {
                Op::Push(i) => bits[*i],
                Op::Not => !self.stack.pop().unwrap(),
                binary => {
                    let r = self.stack.pop().unwrap();
                    let l = self.stack.pop().unwrap();
                    match binary {
                        Op::And => l & r,
                        Op::Or => l | r,
                        _ => !l | r,
                    }
                }
            };
            self.stack.push(v);
        }
        self.stack.pop().unwrap()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthRow {
    #[serde(with = "bits")]
    pub assignment: Vec<bool>,
    #[serde(with = "bit")]
    pub value: bool,
}

/// Exhaustive truth table. Rows run from all-true down to all-false with the
/// first atom as the most significant bit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthTable {
    pub formula: Formula,
    pub atoms: Vec<String>,
    pub rows: Vec<TruthRow>,
}

fn check_capacity(count: usize) -> Result<(), SemanticsError> {
    if count > MAX_TABLE_ATOMS {
        Err(SemanticsError::TooManyAtoms {
            count,
            max: MAX_TABLE_ATOMS,
        })
    } else {
        Ok(())
    }
}

/// Assignment of row `index` in a table over `n` atoms.
pub fn row_assignment(n: usize, index: usize) -> Vec<bool> {
    let code = (1usize << n) - 1 - index;
    (0..n).map(|j| code >> (n - 1 - j) & 1 == 1).collect()
}

/// The value column of the truth table of `f` over `atoms`, in table row
/// order, without materializing the assignments.
pub fn truth_column(f: &Formula, atoms: &[String]) -> Result<Vec<bool>, SemanticsError> {
    check_capacity(atoms.len())?;
    let mut compiled = Compiled::new(f, atoms)?;
    let n = atoms.len();
    let mut bits = vec![false; n];
    Ok((0..1usize << n)
        .map(|i| {
            let code = (1usize << n) - 1 - i;
            for (j, b) in bits.iter_mut().enumerate() {
                *b = code >> (n - 1 - j) & 1 == 1;
            }
            compiled.eval(&bits)
        })
        .collect())
}

impl TruthTable {
    pub fn new(f: &Formula) -> Result<TruthTable, SemanticsError> {
        let atoms: Vec<String> = f.atoms().into_iter().collect();
        TruthTable::over(f, atoms)
    }

    /// Table over an explicit atom order, which must cover the formula.
    pub fn over(f: &Formula, atoms: Vec<String>) -> Result<TruthTable, SemanticsError> {
        check_capacity(atoms.len())?;
        let mut compiled = Compiled::new(f, &atoms)?;
        let n = atoms.len();
        let rows = (0..1usize << n)
            .map(|i| {
                let assignment = row_assignment(n, i);
                let value = compiled.eval(&assignment);
                TruthRow { assignment, value }
            })
            .collect();
        Ok(TruthTable {
            formula: f.clone(),
            atoms,
            rows,
        })
    }

    pub fn valuation(&self, row: &TruthRow) -> StandardValuation {
        self.atoms
            .iter()
            .cloned()
            .zip(row.assignment.iter().copied())
            .collect()
    }

    pub fn satisfying_rows(&self) -> impl Iterator<Item = &TruthRow> {
        self.rows.iter().filter(|r| r.value)
    }

    /// Aligned plain text: one column per atom, then the formula.
    pub fn to_text(&self) -> String {
        let widths: Vec<usize> = self.atoms.iter().map(|a| a.chars().count()).collect();
        let mut out = String::new();
        for (atom, w) in self.atoms.iter().zip(&widths) {
            out.push_str(&format!("{atom:<w$}  "));
        }
        out.push_str(&format!("| {}\n", self.formula));
        for row in &self.rows {
            for (bit, w) in row.assignment.iter().zip(&widths) {
                out.push_str(&format!("{:<w$}  ", u8::from(*bit)));
            }
            out.push_str(&format!("| {}\n", u8::from(row.value)));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.atoms.join(",");
        out.push_str(&format!(",{}\n", self.formula));
        for row in &self.rows {
            for bit in &row.assignment {
                out.push_str(if *bit { "1," } else { "0," });
            }
            out.push_str(if row.value { "1\n" } else { "0\n" });
        }
        out
    }
}

mod bit {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &bool, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(u8::from(*v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
        match u8::deserialize(d)? {
            0 => Ok(false),
            1 => Ok(true),
            other => Err(serde::de::Error::custom(format!(
                "expected 0 or 1, got {other}"
            ))),
        }
    }
}

mod bits {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[bool], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|b| u8::from(*b))
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<bool>, D::Error> {
        Vec::<u8>::deserialize(d)?
            .into_iter()
            .map(|b| match b {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(serde::de::Error::custom(format!(
                    "expected 0 or 1, got {other}"
                ))),
            })
            .collect()
    }
}

pub fn is_satisfiable_tt(f: &Formula) -> Result<bool, SemanticsError> {
    Ok(TruthTable::new(f)?.rows.iter().any(|r| r.value))
}

pub fn is_valid_tt(f: &Formula) -> Result<bool, SemanticsError> {
    Ok(TruthTable::new(f)?.rows.iter().all(|r| r.value))
}

/// A set-theoretic model: a non-empty universe of states and, for each atom,
/// the states at which it is true.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawModel")]
pub struct Model {
    universe: BTreeSet<StateId>,
    valuation: BTreeMap<String, BTreeSet<StateId>>,
}

#[derive(Deserialize)]
struct RawModel {
    universe: BTreeSet<StateId>,
    valuation: BTreeMap<String, BTreeSet<StateId>>,
}

impl TryFrom<RawModel> for Model {
    type Error = ModelError;

    fn try_from(raw: RawModel) -> Result<Self, Self::Error> {
        Model::new(raw.universe, raw.valuation)
    }
}

impl Model {
    pub fn new(
        universe: BTreeSet<StateId>,
        valuation: BTreeMap<String, BTreeSet<StateId>>,
    ) -> Result<Model, ModelError> {
        if universe.is_empty() {
            return Err(ModelError::EmptyUniverse);
        }
        if universe.contains(&0) {
            return Err(ModelError::ZeroState);
        }
        for (atom, states) in &valuation {
            if !crate::formula::is_atom_name(atom) {
                return Err(ModelError::BadAtom(atom.clone()));
            }
            if let Some(&state) = states.iter().find(|s| !universe.contains(s)) {
                return Err(ModelError::OutsideUniverse {
                    atom: atom.clone(),
                    state,
                });
            }
        }
        Ok(Model {
            universe,
            valuation,
        })
    }

    pub fn universe(&self) -> &BTreeSet<StateId> {
        &self.universe
    }

    pub fn valuation(&self) -> &BTreeMap<String, BTreeSet<StateId>> {
        &self.valuation
    }

    /// v(p) for an atom.
    pub fn atom_states(&self, atom: &str) -> Result<&BTreeSet<StateId>, SemanticsError> {
        self.valuation
            .get(atom)
            .ok_or_else(|| SemanticsError::MissingAtom(atom.to_string()))
    }

    fn check_state(&self, s: StateId) -> Result<(), SemanticsError> {
        if self.universe.contains(&s) {
            Ok(())
        } else {
            Err(SemanticsError::StateNotInUniverse(s))
        }
    }
}

fn fmt_states(states: &BTreeSet<StateId>) -> String {
    let items: Vec<String> = states.iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

/// Multi-line listing: the universe, then one line per atom.
impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "𝒰 = {}", fmt_states(&self.universe))?;
        for (atom, states) in &self.valuation {
            write!(f, "\nv({atom}) = {}", fmt_states(states))?;
        }
        Ok(())
    }
}

/// v(f): the set of states at which `f` holds, computed by set operations.
pub fn interpret(model: &Model, f: &Formula) -> Result<BTreeSet<StateId>, SemanticsError> {
    Ok(match f {
        Formula::Atom(name) => model.atom_states(name)?.clone(),
        Formula::Not(inner) => {
            let inner = interpret(model, inner)?;
            model.universe.difference(&inner).copied().collect()
        }
        Formula::And(l, r) => {
            let (l, r) = (interpret(model, l)?, interpret(model, r)?);
            l.intersection(&r).copied().collect()
        }
        Formula::Or(l, r) => {
            let (l, r) = (interpret(model, l)?, interpret(model, r)?);
            l.union(&r).copied().collect()
        }
        Formula::Implies(l, r) => {
            let (l, r) = (interpret(model, l)?, interpret(model, r)?);
            model
                .universe
                .iter()
                .copied()
                .filter(|s| !l.contains(s) || r.contains(s))
                .collect()
        }
    })
}

/// M, s ⊨ f, evaluated clause by clause at a single state.
pub fn satisfies(model: &Model, s: StateId, f: &Formula) -> Result<bool, SemanticsError> {
    model.check_state(s)?;
    fn go(model: &Model, s: StateId, f: &Formula) -> Result<bool, SemanticsError> {
        Ok(match f {
            Formula::Atom(name) => model.atom_states(name)?.contains(&s),
            Formula::Not(inner) => !go(model, s, inner)?,
            Formula::And(l, r) => go(model, s, l)? & go(model, s, r)?,
            Formula::Or(l, r) => go(model, s, l)? | go(model, s, r)?,
            Formula::Implies(l, r) => !go(model, s, l)? | go(model, s, r)?,
        })
    }
    go(model, s, f)
}

/// Single-state model whose only state makes true exactly the atoms `V` maps to 1.
pub fn model_from_valuation(valuation: &StandardValuation) -> Model {
    let universe = BTreeSet::from([1]);
    let valuation = valuation
        .iter()
        .map(|(atom, value)| {
            let states = if value {
                universe.clone()
            } else {
                BTreeSet::new()
            };
            (atom.to_string(), states)
        })
        .collect();
    Model {
        universe,
        valuation,
    }
}

/// Reads off the classical valuation holding at state `s`.
pub fn valuation_from_state<S: AsRef<str>>(
    model: &Model,
    s: StateId,
    atoms: &[S],
) -> Result<StandardValuation, SemanticsError> {
    model.check_state(s)?;
    atoms
        .iter()
        .map(|a| {
            let a = a.as_ref();
            Ok((a.to_string(), model.atom_states(a)?.contains(&s)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use proptest::prelude::*;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn set(items: &[StateId]) -> BTreeSet<StateId> {
        items.iter().copied().collect()
    }

    fn model(universe: &[StateId], val: &[(&str, &[StateId])]) -> Model {
        Model::new(
            set(universe),
            val.iter().map(|(a, s)| (a.to_string(), set(s))).collect(),
        )
        .unwrap()
    }

    fn worked_model() -> Model {
        model(&[2, 3, 4], &[("p", &[2]), ("q", &[3, 4]), ("r", &[2, 4])])
    }

    fn val(pairs: &[(&str, bool)]) -> StandardValuation {
        pairs.iter().map(|(a, v)| (a.to_string(), *v)).collect()
    }

    #[test]
    fn standard_evaluation() {
        let phi = f("(p|q)&(~p|r)");
        let v = val(&[("p", true), ("q", true), ("r", true)]);
        assert!(eval_standard(&phi, &v).unwrap());
        let v = val(&[("p", true), ("q", true), ("r", false)]);
        assert!(!eval_standard(&phi, &v).unwrap());
        let v = val(&[("p", false), ("q", false)]);
        assert!(eval_standard(&f("p -> q"), &v).unwrap());
        assert_eq!(
            eval_standard(&f("p & z"), &v),
            Err(SemanticsError::UnmappedAtom("z".into()))
        );
    }

    #[test]
    fn worked_example_table() {
        let table = TruthTable::new(&f("(p|q)&(~p|r)")).unwrap();
        assert_eq!(table.rows.len(), 8);
        let codes: Vec<String> = table
            .rows
            .iter()
            .map(|r| {
                r.assignment
                    .iter()
                    .map(|b| if *b { '1' } else { '0' })
                    .collect()
            })
            .collect();
        assert_eq!(
            codes,
            ["111", "110", "101", "100", "011", "010", "001", "000"]
        );
        let values: Vec<bool> = table.rows.iter().map(|r| r.value).collect();
        assert_eq!(values, [true, false, true, false, true, true, false, false]);
    }

    #[test]
    fn contradiction_and_tautology_tables() {
        assert!(TruthTable::new(&f("p & ~p"))
            .unwrap()
            .rows
            .iter()
            .all(|r| !r.value));
        assert!(TruthTable::new(&f("p | ~p"))
            .unwrap()
            .rows
            .iter()
            .all(|r| r.value));
    }

    #[test]
    fn table_capacity() {
        let wide = (0..21)
            .map(|i| Formula::atom(format!("a{i}")))
            .reduce(Formula::or)
            .unwrap();
        assert_eq!(
            TruthTable::new(&wide),
            Err(SemanticsError::TooManyAtoms { count: 21, max: 20 })
        );
        assert!(is_satisfiable_tt(&wide).is_err());
    }

    #[test]
    fn table_text_and_csv() {
        let table = TruthTable::new(&f("p -> q")).unwrap();
        assert_eq!(
            table.to_text(),
            "p  q  | p → q\n1  1  | 1\n1  0  | 0\n0  1  | 1\n0  0  | 1\n"
        );
        assert_eq!(table.to_csv(), "p,q,p → q\n1,1,1\n1,0,0\n0,1,1\n0,0,1\n");
        let json = serde_json::to_value(&table).unwrap();
        assert_eq!(json["rows"][1]["assignment"], serde_json::json!([1, 0]));
        assert_eq!(json["rows"][1]["value"], serde_json::json!(0));
    }

    #[test]
    fn interpretation() {
        let m = model(&[1, 2], &[("p", &[1])]);
        assert_eq!(interpret(&m, &f("~p")).unwrap(), set(&[2]));

        // (v(p) ∩ v(q)) ⊆ v(r) makes p ∧ q → r true everywhere.
        let m = model(&[1, 2, 3], &[("p", &[1, 2]), ("q", &[2]), ("r", &[2, 3])]);
        assert_eq!(interpret(&m, &f("p & q -> r")).unwrap(), set(&[1, 2, 3]));

        assert_eq!(
            interpret(&worked_model(), &f("(p|q)&(~p|r)")).unwrap(),
            set(&[2, 3, 4])
        );
        assert_eq!(
            interpret(&worked_model(), &f("s")),
            Err(SemanticsError::MissingAtom("s".into()))
        );
    }

    #[test]
    fn satisfaction() {
        let phi = f("(p|q)&(~p|r)");
        for s in [2, 3, 4] {
            assert!(satisfies(&worked_model(), s, &phi).unwrap());
        }
        let m = model(&[1], &[("p", &[])]);
        assert!(!satisfies(&m, 1, &f("p")).unwrap());
        assert!(satisfies(&m, 1, &f("~p")).unwrap());
        assert_eq!(
            satisfies(&m, 7, &f("p")),
            Err(SemanticsError::StateNotInUniverse(7))
        );
    }

    #[test]
    fn model_invariants() {
        assert_eq!(
            Model::new(BTreeSet::new(), BTreeMap::new()),
            Err(ModelError::EmptyUniverse)
        );
        assert_eq!(
            Model::new(set(&[0, 1]), BTreeMap::new()),
            Err(ModelError::ZeroState)
        );
        assert!(matches!(
            Model::new(set(&[1]), [("p".to_string(), set(&[2]))].into()),
            Err(ModelError::OutsideUniverse { state: 2, .. })
        ));
    }

    #[test]
    fn model_json() {
        let json = serde_json::to_string(&worked_model()).unwrap();
        assert_eq!(
            json,
            r#"{"universe":[2,3,4],"valuation":{"p":[2],"q":[3,4],"r":[2,4]}}"#
        );
        assert_eq!(
            serde_json::from_str::<Model>(&json).unwrap(),
            worked_model()
        );
        assert!(serde_json::from_str::<Model>(r#"{"universe":[],"valuation":{}}"#).is_err());
        assert!(
            serde_json::from_str::<Model>(r#"{"universe":[1],"valuation":{"p":[5]}}"#).is_err()
        );
    }

    #[test]
    fn model_display() {
        assert_eq!(
            worked_model().to_string(),
            "𝒰 = {2, 3, 4}\nv(p) = {2}\nv(q) = {3, 4}\nv(r) = {2, 4}"
        );
    }

    #[test]
    fn singleton_models() {
        let m = model_from_valuation(&val(&[("p", true), ("q", false)]));
        assert_eq!(m, model(&[1], &[("p", &[1]), ("q", &[])]));
        let m = model_from_valuation(&StandardValuation::new());
        assert_eq!(m.universe(), &set(&[1]));
        assert!(m.valuation().is_empty());
        let m = model_from_valuation(&val(&[("p", true), ("q", true), ("r", true)]));
        assert!(satisfies(&m, 1, &f("(p|q)&(~p|r)")).unwrap());
    }

    #[test]
    fn valuation_at_state() {
        let m = worked_model();
        assert_eq!(
            valuation_from_state(&m, 2, &["p", "q", "r"]).unwrap(),
            val(&[("p", true), ("q", false), ("r", true)])
        );
        assert_eq!(
            valuation_from_state(&m, 4, &["p", "q", "r"]).unwrap(),
            val(&[("p", false), ("q", true), ("r", true)])
        );
        assert!(valuation_from_state::<&str>(&m, 3, &[]).unwrap().is_empty());
        assert!(valuation_from_state(&m, 1, &["p"]).is_err());
    }

    #[test]
    fn oracle_verdicts() {
        let phi = f("(p|q)&(~p|r)");
        assert!(is_satisfiable_tt(&phi).unwrap());
        assert!(!is_valid_tt(&phi).unwrap());
        assert!(is_valid_tt(&f("(p&q)->(p|q)")).unwrap());
        assert!(!is_satisfiable_tt(&f("p & ~p")).unwrap());
    }

    #[test]
    fn standard_and_set_satisfiability_coincide() {
        // Exhaustive over three atoms up to degree 3, including formulas that
        // mention only some of the atoms.
        let atoms = ["p", "q", "r"];
        let names: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
        for phi in crate::testing::enumerate(&atoms, 3) {
            let table = TruthTable::over(&phi, names.clone()).unwrap();
            let standard = table.rows.iter().any(|r| r.value);
            let witness = table
                .satisfying_rows()
                .next()
                .map(|row| model_from_valuation(&table.valuation(row)));
            if let Some(m) = &witness {
                assert!(satisfies(m, 1, &phi).unwrap(), "{phi}");
            }
            let refuted = table.rows.iter().all(|row| {
                !satisfies(&model_from_valuation(&table.valuation(row)), 1, &phi).unwrap()
            });
            assert_eq!(standard, witness.is_some(), "{phi}");
            assert_eq!(standard, !refuted, "{phi}");
        }
    }

    fn arb_model() -> impl Strategy<Value = Model> {
        (1usize..=5).prop_flat_map(|n| {
            let states = proptest::collection::btree_set(1..=n, 0..=n);
            (states.clone(), states.clone(), states).prop_map(move |(p, q, r)| {
                Model::new(
                    (1..=n).collect(),
                    [("p".into(), p), ("q".into(), q), ("r".into(), r)].into(),
                )
                .unwrap()
            })
        })
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        crate::formula::tests::arb_formula(&["p", "q", "r"])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn membership_matches_satisfaction(m in arb_model(), phi in arb_formula()) {
            let v = interpret(&m, &phi).unwrap();
            for &s in m.universe() {
                prop_assert_eq!(satisfies(&m, s, &phi).unwrap(), v.contains(&s));
            }
            if let Formula::Atom(a) = &phi {
                for &s in m.universe() {
                    if satisfies(&m, s, &phi).unwrap() {
                        prop_assert!(!m.atom_states(a).unwrap().is_empty());
                    }
                }
            }
        }

        #[test]
        fn interpretation_is_compositional(m in arb_model(), l in arb_formula(), r in arb_formula()) {
            let (vl, vr) = (interpret(&m, &l).unwrap(), interpret(&m, &r).unwrap());
            let complement_l: BTreeSet<_> = m.universe().difference(&vl).copied().collect();
            prop_assert_eq!(
                interpret(&m, &Formula::and(l.clone(), r.clone())).unwrap(),
                vl.intersection(&vr).copied().collect::<BTreeSet<_>>()
            );
            prop_assert_eq!(
                interpret(&m, &Formula::or(l.clone(), r.clone())).unwrap(),
                vl.union(&vr).copied().collect::<BTreeSet<_>>()
            );
            prop_assert_eq!(
                interpret(&m, &Formula::implies(l.clone(), r.clone())).unwrap(),
                complement_l.union(&vr).copied().collect::<BTreeSet<_>>()
            );
            // De Morgan on sets.
            prop_assert_eq!(
                interpret(&m, &Formula::not(Formula::and(l.clone(), r.clone()))).unwrap(),
                interpret(&m, &Formula::or(Formula::not(l), Formula::not(r))).unwrap()
            );
        }

        #[test]
        fn state_valuations_agree_with_satisfaction(m in arb_model(), phi in arb_formula()) {
            for &s in m.universe() {
                let v = valuation_from_state(&m, s, &["p", "q", "r"]).unwrap();
                prop_assert_eq!(eval_standard(&phi, &v).unwrap(), satisfies(&m, s, &phi).unwrap());
                let single = model_from_valuation(&v);
                prop_assert_eq!(satisfies(&single, 1, &phi).unwrap(), eval_standard(&phi, &v).unwrap());
            }
        }

        #[test]
        fn compiled_rows_match_tree_evaluation(phi in arb_formula()) {
            let table = TruthTable::new(&phi).unwrap();
            for row in &table.rows {
                prop_assert_eq!(row.value, eval_standard(&phi, &table.valuation(row)).unwrap());
            }
        }
    }
}
