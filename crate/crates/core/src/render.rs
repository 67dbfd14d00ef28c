//! Text and Graphviz renderings of tableaux, and Venn-region maps.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Formula;
use crate::semantics::TruthTable;
use crate::tableau::{BranchStatus, NodeId, Tableau};

/// Venn diagrams are drawn for at most this many atoms.
pub const MAX_VENN_ATOMS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("Venn diagrams support at most {MAX_VENN_ATOMS} atoms, the formula has {0}")]
    TooManyAtoms(usize),
}

fn leaf_labels(t: &Tableau) -> BTreeMap<NodeId, (usize, BranchStatus)> {
    t.branches()
        .map(|b| (b.leaf, (b.number, b.status)))
        .collect()
}

/// Indented tree. Stacked formulas share an indentation level; a split draws
/// two sub-trees. Leaves carry their number, closed ones a `×`.
pub fn render_ascii(t: &Tableau) -> String {
    let leaves = leaf_labels(t);
    let mut out = String::new();
    // (node, prefix for its own line, prefix for its descendants)
    let mut stack: Vec<(NodeId, String, String)> = vec![(0, String::new(), String::new())];
    while let Some((id, line_prefix, child_prefix)) = stack.pop() {
        let node = &t.nodes()[id];
        out.push_str(&line_prefix);
        out.push_str(&node.formula.to_string());
        if let Some((number, status)) = leaves.get(&id) {
            if *status == BranchStatus::Closed {
                out.push_str(" ×");
            }
            let _ = write!(out, " [{number}]");
        }
        out.push('\n');
        match node.children.as_slice() {
            [] => {}
            [only] => stack.push((*only, child_prefix.clone(), child_prefix)),
            [left, right] => {
                stack.push((
                    *right,
                    format!("{child_prefix}└── "),
                    format!("{child_prefix}    "),
                ));
                stack.push((
                    *left,
                    format!("{child_prefix}├── "),
                    format!("{child_prefix}│   "),
                ));
            }
            _ => unreachable!("tableau nodes have at most two children"),
        }
    }
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz digraph; closed leaves are filled grey and marked `×`.
pub fn render_dot(t: &Tableau) -> String {
    let leaves = leaf_labels(t);
    let mut out = String::from(
        "digraph tableau {\n  node [shape=box, style=rounded, fontname=\"Helvetica\"];\n",
    );
    for node in t.nodes() {
        let mut label = dot_escape(&node.formula.to_string());
        let mut attrs = String::new();
        if let Some((number, status)) = leaves.get(&node.id) {
            match status {
                BranchStatus::Closed => {
                    label.push_str(" ×");
                    attrs.push_str(", style=\"rounded,filled\", fillcolor=\"#d9d9d9\"");
                }
                BranchStatus::Open => attrs.push_str(", penwidth=2"),
                BranchStatus::Unfinished => attrs.push_str(", style=\"rounded,dashed\""),
            }
            label.push_str(&format!("\\n[{number}]"));
        }
        let _ = writeln!(out, "  n{} [label=\"{}\"{}];", node.id, label, attrs);
    }
    for node in t.nodes() {
        for child in &node.children {
            let _ = writeln!(out, "  n{} -> n{};", node.id, child);
        }
    }
    out.push_str("}\n");
    out
}

/// Shading of the regions of a Venn diagram with one circle per atom. Region
/// keys are bitmasks: bit `i` set means the region lies inside atom `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VennRegionMap {
    pub atoms: Vec<String>,
    pub regions: BTreeMap<u32, bool>,
}

impl VennRegionMap {
    pub fn is_shaded(&self, mask: u32) -> Option<bool> {
        self.regions.get(&mask).copied()
    }
}

pub fn venn_regions(f: &Formula) -> Result<VennRegionMap, RenderError> {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    if atoms.len() > MAX_VENN_ATOMS {
        return Err(RenderError::TooManyAtoms(atoms.len()));
    }
    let table = TruthTable::over(f, atoms.clone()).expect("three atoms fit in a truth table");
    let regions = table
        .rows
        .iter()
        .map(|row| {
            let mask = row
                .assignment
                .iter()
                .enumerate()
                .filter(|(_, v)| **v)
                .fold(0u32, |m, (i, _)| m | 1 << i);
            (mask, row.value)
        })
        .collect();
    Ok(VennRegionMap { atoms, regions })
}
