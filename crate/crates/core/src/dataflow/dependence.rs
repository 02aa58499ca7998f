use std::fmt;

use crate::cfg::{NodeRef, Outcome};
use crate::frontend::{Node, NumberedProgram};

use super::{DefUse, ReachSets};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DepKind {
    Data(String),
    Control(Outcome),
}

impl fmt::Display for DepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DepKind::Data(v) => write!(f, "data({v})"),
            DepKind::Control(Outcome::True) => f.write_str("control(T)"),
            DepKind::Control(Outcome::False) => f.write_str("control(F)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DepEdge {
    pub from: NodeRef,
    pub to: NodeRef,
    pub kind: DepKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DependenceKind {
    Data,
    Control,
    Program,
}

impl DependenceKind {
    pub fn short_name(self) -> &'static str {
        match self {
            DependenceKind::Data => "ddg",
            DependenceKind::Control => "cdg",
            DependenceKind::Program => "pdg",
        }
    }
}

/// Statement-level dependence graph. Edges are kept sorted by (from, to, kind).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceGraph {
    pub kind: DependenceKind,
    pub nodes: Vec<NodeRef>,
    pub edges: Vec<DepEdge>,
}

impl DependenceGraph {
    fn new(kind: DependenceKind, nodes: Vec<NodeRef>, mut edges: Vec<DepEdge>) -> Self {
        edges.sort();
        edges.dedup();
        DependenceGraph { kind, nodes, edges }
    }

    pub fn data_edges(&self) -> impl Iterator<Item = &DepEdge> + '_ {
        self.edges
            .iter()
            .filter(|e| matches!(e.kind, DepKind::Data(_)))
    }

    pub fn control_edges(&self) -> impl Iterator<Item = &DepEdge> + '_ {
        self.edges
            .iter()
            .filter(|e| matches!(e.kind, DepKind::Control(_)))
    }
}

/// Edge d → u tagged `Data(v)` whenever definition (d, v) reaches u and u reads v.
pub fn data_dependences(reach: &ReachSets, du: &DefUse) -> DependenceGraph {
    let mut edges = Vec::new();
    for (&id, used) in &du.uses {
        let Some(reaching) = reach.ins.get(&NodeRef::Stmt(id)) else {
            continue;
        };
        for def in reaching.iter().filter(|d| used.contains(&d.var)) {
            edges.push(DepEdge {
                from: NodeRef::Stmt(def.site),
                to: NodeRef::Stmt(id),
                kind: DepKind::Data(def.var.clone()),
            });
        }
    }
    let nodes = du.uses.keys().map(|&id| NodeRef::Stmt(id)).collect();
    DependenceGraph::new(DependenceKind::Data, nodes, edges)
}

/// Structural control dependence read off the statement nesting.
///
/// Each statement depends on its innermost enclosing `if`/`while` header with the
/// label of the arm it sits in, or on ENTRY when it is at top level. A `while`
/// header also depends on itself.
pub fn control_dependences(program: &NumberedProgram) -> DependenceGraph {
    fn walk(seq: &[Node], parent: NodeRef, label: Outcome, edges: &mut Vec<DepEdge>) {
        for node in seq {
            edges.push(DepEdge {
                from: parent,
                to: NodeRef::Stmt(node.first_id()),
                kind: DepKind::Control(label),
            });
            match node {
                Node::Simple(_) => {}
                Node::If {
                    header,
                    then_arm,
                    else_arm,
                } => {
                    let h = NodeRef::Stmt(*header);
                    walk(then_arm, h, Outcome::True, edges);
                    if let Some(arm) = else_arm {
                        walk(arm, h, Outcome::False, edges);
                    }
                }
                Node::While { header, body } => {
                    let h = NodeRef::Stmt(*header);
                    edges.push(DepEdge {
                        from: h,
                        to: h,
                        kind: DepKind::Control(Outcome::True),
                    });
                    walk(body, h, Outcome::True, edges);
                }
            }
        }
    }

    let mut edges = Vec::new();
    walk(&program.skeleton, NodeRef::Entry, Outcome::True, &mut edges);
    DependenceGraph::new(DependenceKind::Control, with_entry(program), edges)
}

fn with_entry(program: &NumberedProgram) -> Vec<NodeRef> {
    std::iter::once(NodeRef::Entry)
        .chain(program.ids().map(NodeRef::Stmt))
        .collect()
}

/// Union of the data and control graphs; no edge is merged across kinds.
pub fn build_pdg(data: &DependenceGraph, control: &DependenceGraph) -> DependenceGraph {
    let mut nodes: Vec<NodeRef> = data
        .nodes
        .iter()
        .chain(&control.nodes)
        .copied()
        .chain(std::iter::once(NodeRef::Entry))
        .collect();
    nodes.sort();
    nodes.dedup();
    let edges = data.edges.iter().chain(&control.edges).cloned().collect();
    DependenceGraph::new(DependenceKind::Program, nodes, edges)
}
