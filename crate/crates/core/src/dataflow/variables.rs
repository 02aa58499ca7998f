use crate::frontend::{NumberedProgram, StatementId};

use super::DefUse;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarEdge {
    /// Variable read.
    pub from: String,
    /// Variable written.
    pub to: String,
    pub via: StatementId,
}

/// Variable-level dependences; may contain cycles and self-loops.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VariableGraph {
    /// Declared variables, sorted.
    pub nodes: Vec<String>,
    /// Sorted by (from, to, via).
    pub edges: Vec<VarEdge>,
}

pub fn variable_dependences(program: &NumberedProgram, du: &DefUse) -> VariableGraph {
    let mut nodes: Vec<String> = du.variables().into_iter().map(str::to_string).collect();
    nodes.sort();

    let mut edges = Vec::new();
    for id in program.ids() {
        let Some(target) = du.def_of(id) else {
            continue;
        };
        for source in du.uses_of(id) {
            edges.push(VarEdge {
                from: source.to_string(),
                to: target.to_string(),
                via: id,
            });
        }
    }
    edges.sort();
    VariableGraph { nodes, edges }
}
