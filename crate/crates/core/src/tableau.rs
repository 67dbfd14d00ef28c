//! Analytic tableaux.
//!
//! Every complex formula is either a double negation, an α-formula (expanded
//! by stacking both components on the branch) or a β-formula (expanded by
//! splitting the branch in two):
//!
//! | α          | α₁ | α₂ |   | β          | β₁ | β₂ |
//! |------------|----|----|---|------------|----|----|
//! | φ ∧ χ      | φ  | χ  |   | φ ∨ χ      | φ  | χ  |
//! | ¬(φ ∨ χ)   | ¬φ | ¬χ |   | ¬(φ ∧ χ)   | ¬φ | ¬χ |
//! | ¬(φ → χ)   | φ  | ¬χ |   | φ → χ      | ¬φ | χ  |
//!
//! A branch closes as soon as it holds a pair of complementary literals. It is
//! open once it is not closed and every complex formula on it has been
//! expanded on that branch. A finished tableau with an open branch means the
//! input set is satisfiable, and each open branch yields a state of a model.
//!
//! Rules are applied per branch: a step names the node to expand and the leaf
//! of the branch that receives the result. Leaves are numbered 1.. from left to
//! right after every step.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{atoms_of, Formula, Literal};
use crate::semantics::{Model, StandardValuation, StateId};

pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlphaKind {
    And,
    NotOr,
    NotImplies,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BetaKind {
    Or,
    NotAnd,
    Implies,
}

/// Which rule, if any, expands a formula, together with its components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleClass {
    DoubleNegation(Formula),
    Alpha {
        kind: AlphaKind,
        first: Formula,
        second: Formula,
    },
    Beta {
        kind: BetaKind,
        left: Formula,
        right: Formula,
    },
    Literal(Literal),
}

impl RuleClass {
    pub fn rule(&self) -> Option<RuleKind> {
        match self {
            RuleClass::DoubleNegation(_) => Some(RuleKind::DoubleNegation),
            RuleClass::Alpha { kind, .. } => Some(RuleKind::Alpha(*kind)),
            RuleClass::Beta { kind, .. } => Some(RuleKind::Beta(*kind)),
            RuleClass::Literal(_) => None,
        }
    }

    /// Short family name: `double-negation`, `alpha`, `beta` or `literal`.
    pub fn family(&self) -> &'static str {
        match self {
            RuleClass::DoubleNegation(_) => "double-negation",
            RuleClass::Alpha { .. } => "alpha",
            RuleClass::Beta { .. } => "beta",
            RuleClass::Literal(_) => "literal",
        }
    }
}

pub fn classify(f: &Formula) -> RuleClass {
    use Formula::*;
    match f {
        Atom(name) => RuleClass::Literal(Literal::positive(name.clone())),
        And(l, r) => RuleClass::Alpha {
            kind: AlphaKind::And,
            first: (**l).clone(),
            second: (**r).clone(),
        },
        Or(l, r) => RuleClass::Beta {
            kind: BetaKind::Or,
            left: (**l).clone(),
            right: (**r).clone(),
        },
        Implies(l, r) => RuleClass::Beta {
            kind: BetaKind::Implies,
            left: Formula::not((**l).clone()),
            right: (**r).clone(),
        },
        Not(inner) => match inner.as_ref() {
            Atom(name) => RuleClass::Literal(Literal::negative(name.clone())),
            Not(x) => RuleClass::DoubleNegation((**x).clone()),
            And(l, r) => RuleClass::Beta {
                kind: BetaKind::NotAnd,
                left: Formula::not((**l).clone()),
                right: Formula::not((**r).clone()),
            },
            Or(l, r) => RuleClass::Alpha {
                kind: AlphaKind::NotOr,
                first: Formula::not((**l).clone()),
                second: Formula::not((**r).clone()),
            },
            Implies(l, r) => RuleClass::Alpha {
                kind: AlphaKind::NotImplies,
                first: (**l).clone(),
                second: Formula::not((**r).clone()),
            },
        },
    }
}

/// The rule [`classify`] would select, without building the components.
pub fn rule_kind(f: &Formula) -> Option<RuleKind> {
    use Formula::*;
    match f {
        Atom(_) => None,
        And(..) => Some(RuleKind::Alpha(AlphaKind::And)),
        Or(..) => Some(RuleKind::Beta(BetaKind::Or)),
        Implies(..) => Some(RuleKind::Beta(BetaKind::Implies)),
        Not(inner) => match inner.as_ref() {
            Atom(_) => None,
            Not(_) => Some(RuleKind::DoubleNegation),
            And(..) => Some(RuleKind::Beta(BetaKind::NotAnd)),
            Or(..) => Some(RuleKind::Alpha(AlphaKind::NotOr)),
            Implies(..) => Some(RuleKind::Alpha(AlphaKind::NotImplies)),
        },
    }
}

/// The rule that produced a node, as recorded in the tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKind {
    DoubleNegation,
    Alpha(AlphaKind),
    Beta(BetaKind),
}

impl RuleKind {
    pub const ALL: [RuleKind; 7] = [
        RuleKind::DoubleNegation,
        RuleKind::Alpha(AlphaKind::And),
        RuleKind::Alpha(AlphaKind::NotOr),
        RuleKind::Alpha(AlphaKind::NotImplies),
        RuleKind::Beta(BetaKind::Or),
        RuleKind::Beta(BetaKind::NotAnd),
        RuleKind::Beta(BetaKind::Implies),
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleKind::DoubleNegation => "double-negation",
            RuleKind::Alpha(AlphaKind::And) => "alpha-and",
            RuleKind::Alpha(AlphaKind::NotOr) => "alpha-not-or",
            RuleKind::Alpha(AlphaKind::NotImplies) => "alpha-not-implies",
            RuleKind::Beta(BetaKind::Or) => "beta-or",
            RuleKind::Beta(BetaKind::NotAnd) => "beta-not-and",
            RuleKind::Beta(BetaKind::Implies) => "beta-implies",
        }
    }

    /// `double-negation`, `alpha` or `beta`.
    pub fn family(self) -> &'static str {
        match self {
            RuleKind::DoubleNegation => "double-negation",
            RuleKind::Alpha(_) => "alpha",
            RuleKind::Beta(_) => "beta",
        }
    }

    /// Lower runs first under the automatic strategy.
    fn priority(self) -> u8 {
        match self {
            RuleKind::DoubleNegation => 0,
            RuleKind::Alpha(_) => 1,
            RuleKind::Beta(_) => 2,
        }
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown rule kind {s:?}"))
    }
}

impl Serialize for RuleKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for RuleKind {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub source: NodeId,
    pub kind: RuleKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauNode {
    pub id: NodeId,
    pub formula: Formula,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    pub produced_by: Option<Provenance>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchStatus {
    Open,
    Closed,
    Unfinished,
}

/// Bookkeeping for one root-to-leaf path.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BranchState {
    leaf: NodeId,
    literals: BTreeSet<Literal>,
    /// Atom of the first complementary pair, once the branch closes.
    clash: Option<String>,
    /// Complex formulas on the branch not yet expanded on it, root first.
    pending: Vec<NodeId>,
}

impl BranchState {
    fn status(&self) -> BranchStatus {
        if self.clash.is_some() {
            BranchStatus::Closed
        } else if self.pending.is_empty() {
            BranchStatus::Open
        } else {
            BranchStatus::Unfinished
        }
    }

    fn add(&mut self, id: NodeId, formula: &Formula) {
        match formula.as_literal() {
            Some(lit) => {
                if self.clash.is_none() && self.literals.contains(&lit.complement()) {
                    self.clash = Some(lit.atom.clone());
                }
                self.literals.insert(lit);
            }
            None => self.pending.push(id),
        }
    }
}

/// Read-only view of a branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch<'a> {
    /// Left-to-right leaf number, starting at 1.
    pub number: usize,
    pub leaf: NodeId,
    pub status: BranchStatus,
    pub literals: &'a BTreeSet<Literal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpenBranch {
    pub number: usize,
    #[serde(serialize_with = "literal_strings")]
    pub literals: BTreeSet<Literal>,
}

fn literal_strings<S: Serializer>(lits: &BTreeSet<Literal>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(lits.iter().map(|l| l.to_string()))
}

/// Result of one successful rule application.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Expansion {
    pub node_id: NodeId,
    pub leaf_id: NodeId,
    pub rule: RuleKind,
    pub added: Vec<NodeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("a tableau needs at least one formula")]
    EmptyInput,
    #[error("the tableau is not finished: {unfinished} branch(es) still have unexpanded formulas")]
    Unfinished { unfinished: usize },
}

/// A rejected step. The messages are addressed to a student.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("there is no node {0} in this tableau")]
    UnknownNode(NodeId),
    #[error("node {0} is not a leaf; rules add formulas at the end of a branch, so pick the leaf of the branch you want to extend")]
    NotALeaf(NodeId),
    #[error("node {node} (`{formula}`) is not on the branch ending at node {leaf}; a rule can only extend branches that contain the formula")]
    NodeNotOnBranch {
        node: NodeId,
        leaf: NodeId,
        formula: Formula,
    },
    #[error("branch {number} is closed: it contains both {atom} and ¬{atom}, so no state satisfies it and it needs no further work")]
    BranchClosed {
        leaf: NodeId,
        number: usize,
        atom: String,
    },
    #[error(
        "`{formula}` is a literal; literals are never expanded, they are what branches are made of"
    )]
    NotApplicable { node: NodeId, formula: Formula },
    #[error("`{formula}` has already been expanded on branch {number}; each formula is used once per branch")]
    AlreadyExpanded {
        node: NodeId,
        number: usize,
        formula: Formula,
    },
}

impl StepError {
    pub fn code(&self) -> &'static str {
        match self {
            StepError::UnknownNode(_) => "UNKNOWN_NODE",
            StepError::NotALeaf(_) => "NOT_A_LEAF",
            StepError::NodeNotOnBranch { .. } => "NODE_NOT_ON_BRANCH",
            StepError::BranchClosed { .. } => "BRANCH_CLOSED",
            StepError::NotApplicable { .. } => "NOT_APPLICABLE",
            StepError::AlreadyExpanded { .. } => "ALREADY_EXPANDED",
        }
    }
}

/// A tableau for a finite set of formulas. The initial formulas form a chain
/// from the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    nodes: Vec<TableauNode>,
    initial: Vec<NodeId>,
    branches: Vec<BranchState>,
}

impl Tableau {
    /// Unexpanded tableau holding `formulas` on a single branch.
    pub fn new(formulas: &[Formula]) -> Result<Tableau, TableauError> {
        if formulas.is_empty() {
            return Err(TableauError::EmptyInput);
        }
        let mut t = Tableau {
            nodes: Vec::with_capacity(formulas.len()),
            initial: Vec::with_capacity(formulas.len()),
            branches: Vec::new(),
        };
        let mut branch = BranchState {
            leaf: 0,
            literals: BTreeSet::new(),
            clash: None,
            pending: Vec::new(),
        };
        for f in formulas {
            let parent = t.nodes.len().checked_sub(1);
            let id = t.push_node(f.clone(), parent, None);
            t.initial.push(id);
            branch.add(id, f);
            branch.leaf = id;
        }
        t.branches.push(branch);
        Ok(t)
    }

    /// Fully expanded tableau under the automatic strategy.
    pub fn build(formulas: &[Formula]) -> Result<Tableau, TableauError> {
        let mut t = Tableau::new(formulas)?;
        t.expand_all();
        Ok(t)
    }

    fn push_node(
        &mut self,
        formula: Formula,
        parent: Option<NodeId>,
        produced_by: Option<Provenance>,
    ) -> NodeId {
        let id = self.nodes.len();
        if let Some(p) = parent {
            self.nodes[p].children.push(id);
        }
        self.nodes.push(TableauNode {
            id,
            formula,
            parent,
            children: Vec::new(),
            produced_by,
        });
        id
    }

    pub fn nodes(&self) -> &[TableauNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> Option<&TableauNode> {
        self.nodes.get(id)
    }

    pub fn initial(&self) -> &[NodeId] {
        &self.initial
    }

    pub fn initial_formulas(&self) -> Vec<Formula> {
        self.initial
            .iter()
            .map(|&id| self.nodes[id].formula.clone())
            .collect()
    }

    pub fn branches(&self) -> impl Iterator<Item = Branch<'_>> {
        self.branches.iter().enumerate().map(|(i, b)| Branch {
            number: i + 1,
            leaf: b.leaf,
            status: b.status(),
            literals: &b.literals,
        })
    }

    pub fn leaf_count(&self) -> usize {
        self.branches.len()
    }

    /// Leaf number of the branch ending at `leaf`.
    pub fn leaf_number(&self, leaf: NodeId) -> Option<usize> {
        self.branch_index(leaf).map(|i| i + 1)
    }

    fn branch_index(&self, leaf: NodeId) -> Option<usize> {
        self.branches.iter().position(|b| b.leaf == leaf)
    }

    /// Node ids from the root down to `leaf`.
    pub fn path(&self, leaf: NodeId) -> Vec<NodeId> {
        let mut path = Vec::new();
        let mut cursor = self.nodes.get(leaf).map(|n| n.id);
        while let Some(id) = cursor {
            path.push(id);
            cursor = self.nodes[id].parent;
        }
        path.reverse();
        path
    }

    fn on_path(&self, node: NodeId, leaf: NodeId) -> bool {
        let mut cursor = Some(leaf);
        while let Some(id) = cursor {
            if id == node {
                return true;
            }
            cursor = self.nodes[id].parent;
        }
        false
    }

    pub fn is_finished(&self) -> bool {
        self.unfinished_count() == 0
    }

    fn unfinished_count(&self) -> usize {
        self.branches
            .iter()
            .filter(|b| b.status() == BranchStatus::Unfinished)
            .count()
    }

    fn require_finished(&self) -> Result<(), TableauError> {
        match self.unfinished_count() {
            0 => Ok(()),
            unfinished => Err(TableauError::Unfinished { unfinished }),
        }
    }

    /// True when the node has been expanded on every branch through it.
    /// Literals are never expanded.
    pub fn is_expanded(&self, node: NodeId) -> bool {
        self.unexpanded_nodes().get(node).is_some_and(|u| !u)
            && self.nodes[node].formula.as_literal().is_none()
    }

    fn unexpanded_nodes(&self) -> Vec<bool> {
        let mut unexpanded = vec![false; self.nodes.len()];
        for b in &self.branches {
            for &id in &b.pending {
                unexpanded[id] = true;
            }
        }
        unexpanded
    }

    /// Every legal `(node, leaf, rule)` step, branches left to right and nodes
    /// root first.
    pub fn legal_steps(&self) -> Vec<(NodeId, NodeId, RuleKind)> {
        self.branches
            .iter()
            .filter(|b| b.clash.is_none())
            .flat_map(|b| {
                b.pending.iter().map(move |&n| {
                    let rule =
                        rule_kind(&self.nodes[n].formula).expect("pending nodes are complex");
                    (n, b.leaf, rule)
                })
            })
            .collect()
    }

    /// The step the automatic strategy takes next: on the leftmost unfinished
    /// branch, double negations before α before β, and the formula closest to
    /// the root within a class.
    pub fn next_auto_step(&self) -> Option<(NodeId, NodeId)> {
        let branch = self
            .branches
            .iter()
            .find(|b| b.status() == BranchStatus::Unfinished)?;
        let node = branch.pending.iter().copied().min_by_key(|&n| {
            rule_kind(&self.nodes[n].formula).map_or(u8::MAX, RuleKind::priority)
        })?;
        Some((node, branch.leaf))
    }

    /// Runs the automatic strategy to completion.
    pub fn expand_all(&mut self) -> Vec<Expansion> {
        let mut steps = Vec::new();
        while let Some((node, leaf)) = self.next_auto_step() {
            steps.push(self.apply(node, leaf).expect("auto steps are legal"));
        }
        steps
    }

    /// Expands `node` on the branch ending at `leaf`.
    pub fn apply(&mut self, node: NodeId, leaf: NodeId) -> Result<Expansion, StepError> {
        for id in [node, leaf] {
            if id >= self.nodes.len() {
                return Err(StepError::UnknownNode(id));
            }
        }
        let index = self.branch_index(leaf).ok_or(StepError::NotALeaf(leaf))?;
        let formula = || self.nodes[node].formula.clone();
        if !self.on_path(node, leaf) {
            return Err(StepError::NodeNotOnBranch {
                node,
                leaf,
                formula: formula(),
            });
        }
        if let Some(atom) = &self.branches[index].clash {
            return Err(StepError::BranchClosed {
                leaf,
                number: index + 1,
                atom: atom.clone(),
            });
        }
        if rule_kind(&self.nodes[node].formula).is_none() {
            return Err(StepError::NotApplicable {
                node,
                formula: formula(),
            });
        }
        let Some(slot) = self.branches[index].pending.iter().position(|&n| n == node) else {
            return Err(StepError::AlreadyExpanded {
                node,
                number: index + 1,
                formula: formula(),
            });
        };
        let class = classify(&self.nodes[node].formula);
        let rule = class.rule().expect("checked above");

        let provenance = Some(Provenance {
            source: node,
            kind: rule,
        });
        let mut branch = self.branches[index].clone();
        branch.pending.remove(slot);
        let added = match class {
            RuleClass::DoubleNegation(inner) => {
                let id = self.push_node(inner.clone(), Some(leaf), provenance);
                branch.add(id, &inner);
                branch.leaf = id;
                self.branches[index] = branch;
                vec![id]
            }
            RuleClass::Alpha { first, second, .. } => {
                let a = self.push_node(first.clone(), Some(leaf), provenance);
                let b = self.push_node(second.clone(), Some(a), provenance);
                branch.add(a, &first);
                branch.add(b, &second);
                branch.leaf = b;
                self.branches[index] = branch;
                vec![a, b]
            }
            RuleClass::Beta { left, right, .. } => {
                let l = self.push_node(left.clone(), Some(leaf), provenance);
                let r = self.push_node(right.clone(), Some(leaf), provenance);
                let mut right_branch = branch.clone();
                branch.add(l, &left);
                branch.leaf = l;
                right_branch.add(r, &right);
                right_branch.leaf = r;
                self.branches[index] = branch;
                self.branches.insert(index + 1, right_branch);
                vec![l, r]
            }
            RuleClass::Literal(_) => unreachable!("literals have no rule"),
        };
        Ok(Expansion {
            node_id: node,
            leaf_id: leaf,
            rule,
            added,
        })
    }

    /// True when at least one branch is open.
    pub fn is_open(&self) -> Result<bool, TableauError> {
        self.require_finished()?;
        Ok(self
            .branches
            .iter()
            .any(|b| b.status() == BranchStatus::Open))
    }

    pub fn open_branches(&self) -> Result<Vec<OpenBranch>, TableauError> {
        self.require_finished()?;
        Ok(self
            .branches()
            .filter(|b| b.status == BranchStatus::Open)
            .map(|b| OpenBranch {
                number: b.number,
                literals: b.literals.clone(),
            })
            .collect())
    }

    /// The model whose states are the open leaves; an atom holds at a state
    /// exactly when its branch carries the atom as a positive literal.
    pub fn extract_model(&self) -> Result<Option<Model>, TableauError> {
        let open = self.open_branches()?;
        if open.is_empty() {
            return Ok(None);
        }
        let universe: BTreeSet<StateId> = open.iter().map(|b| b.number).collect();
        let mut valuation: BTreeMap<String, BTreeSet<StateId>> =
            atoms_of(self.initial.iter().map(|&id| &self.nodes[id].formula))
                .into_iter()
                .map(|a| (a, BTreeSet::new()))
                .collect();
        for branch in &open {
            for lit in branch.literals.iter().filter(|l| l.is_positive()) {
                if let Some(states) = valuation.get_mut(&lit.atom) {
                    states.insert(branch.number);
                }
            }
        }
        Ok(Some(
            Model::new(universe, valuation).expect("extracted models are well formed"),
        ))
    }

    /// Open-branch numbers whose literals all hold under `valuation`.
    pub fn states_for(&self, valuation: &StandardValuation) -> Vec<StateId> {
        self.branches()
            .filter(|b| b.status == BranchStatus::Open)
            .filter(|b| {
                b.literals
                    .iter()
                    .all(|l| valuation.get(&l.atom).is_ok_and(|v| v == l.is_positive()))
            })
            .map(|b| b.number)
            .collect()
    }
}

#[derive(Serialize)]
struct NodeJson<'a> {
    id: NodeId,
    formula: &'a Formula,
    class: &'static str,
    parent: Option<NodeId>,
    children: &'a [NodeId],
    rule: Option<Provenance>,
    expanded: bool,
}

#[derive(Serialize)]
struct LeafJson<'a> {
    number: usize,
    node: NodeId,
    status: BranchStatus,
    #[serde(serialize_with = "literal_strings")]
    literals: &'a BTreeSet<Literal>,
}

#[derive(Serialize)]
struct TableauJson<'a> {
    initial: &'a [NodeId],
    nodes: Vec<NodeJson<'a>>,
    leaves: Vec<LeafJson<'a>>,
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let unexpanded = self.unexpanded_nodes();
        let nodes = self
            .nodes
            .iter()
            .map(|n| {
                let class = classify(&n.formula);
                NodeJson {
                    id: n.id,
                    formula: &n.formula,
                    class: class.family(),
                    parent: n.parent,
                    children: &n.children,
                    rule: n.produced_by,
                    expanded: class.rule().is_some() && !unexpanded[n.id],
                }
            })
            .collect();
        let leaves = self
            .branches()
            .map(|b| LeafJson {
                number: b.number,
                node: b.leaf,
                status: b.status,
                literals: b.literals,
            })
            .collect();
        TableauJson {
            initial: &self.initial,
            nodes,
            leaves,
        }
        .serialize(serializer)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatCheck {
    pub satisfiable: bool,
    pub model: Option<Model>,
    pub tableau: Tableau,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityCheck {
    pub valid: bool,
    /// Model of the negation; every state falsifies the formula.
    pub counter_model: Option<Model>,
    pub tableau: Tableau,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntailmentCheck {
    pub entails: bool,
    /// States satisfying every premise and falsifying the conclusion.
    pub counter_model: Option<Model>,
    pub tableau: Tableau,
}

pub fn check_satisfiable(formulas: &[Formula]) -> Result<SatCheck, TableauError> {
    let tableau = Tableau::build(formulas)?;
    let model = tableau.extract_model()?;
    Ok(SatCheck {
        satisfiable: model.is_some(),
        model,
        tableau,
    })
}

/// Decides validity through the tableau of the negation.
pub fn check_valid(f: &Formula) -> ValidityCheck {
    let tableau =
        Tableau::build(&[Formula::not(f.clone())]).expect("a single formula is never empty");
    let counter_model = tableau
        .extract_model()
        .expect("built tableaux are finished");
    ValidityCheck {
        valid: counter_model.is_none(),
        counter_model,
        tableau,
    }
}

/// Decides `premises ⊨ conclusion` through the tableau of the premises plus
/// the negated conclusion.
pub fn check_entails(premises: &[Formula], conclusion: &Formula) -> EntailmentCheck {
    let mut formulas = premises.to_vec();
    formulas.push(Formula::not(conclusion.clone()));
    let tableau = Tableau::build(&formulas).expect("the negated conclusion is always present");
    let counter_model = tableau
        .extract_model()
        .expect("built tableaux are finished");
    EntailmentCheck {
        entails: counter_model.is_none(),
        counter_model,
        tableau,
    }
}
