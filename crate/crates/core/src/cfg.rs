//! Statement-level control-flow graph.
//!
//! Every numbered statement is its own node; there are no basic blocks and no
//! synthetic join nodes. `ENTRY` and `EXIT` carry no statement ID.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::frontend::{Node, NumberedProgram, StatementId};

/// Ordered ENTRY < statements (by ID) < EXIT.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeRef {
    Entry,
    Stmt(StatementId),
    Exit,
}

impl NodeRef {
    pub fn stmt(id: usize) -> NodeRef {
        NodeRef::Stmt(StatementId(id))
    }

    pub fn statement_id(self) -> Option<StatementId> {
        match self {
            NodeRef::Stmt(id) => Some(id),
            _ => None,
        }
    }
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeRef::Entry => f.write_str("ENTRY"),
            NodeRef::Exit => f.write_str("EXIT"),
            NodeRef::Stmt(id) => write!(f, "{id}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    False,
    True,
}

impl Outcome {
    pub fn from_bool(b: bool) -> Outcome {
        if b {
            Outcome::True
        } else {
            Outcome::False
        }
    }

    pub fn as_bool(self) -> bool {
        self == Outcome::True
    }
}

/// Sorted so that a branch's False edge precedes its True edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeLabel {
    Unconditional,
    False,
    True,
}

impl From<Outcome> for EdgeLabel {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::False => EdgeLabel::False,
            Outcome::True => EdgeLabel::True,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CfgEdge {
    pub from: NodeRef,
    pub to: NodeRef,
    pub label: EdgeLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfgError {
    #[error("node {0} is not in the control-flow graph")]
    UnknownNode(NodeRef),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cfg {
    /// Ascending: ENTRY, statements, EXIT.
    nodes: Vec<NodeRef>,
    /// Sorted by (from, to, label).
    edges: Vec<CfgEdge>,
    /// Indices into `edges`, per source node, False before True.
    out: BTreeMap<NodeRef, Vec<usize>>,
    loop_headers: Vec<StatementId>,
}

impl Cfg {
    pub fn nodes(&self) -> &[NodeRef] {
        &self.nodes
    }

    pub fn edges(&self) -> &[CfgEdge] {
        &self.edges
    }

    pub fn statement_count(&self) -> usize {
        self.nodes.len() - 2
    }

    pub fn contains(&self, node: NodeRef) -> bool {
        self.out.contains_key(&node)
    }

    /// `while` headers, ascending.
    pub fn loop_headers(&self) -> &[StatementId] {
        &self.loop_headers
    }

    pub fn is_loop_header(&self, id: StatementId) -> bool {
        self.loop_headers.binary_search(&id).is_ok()
    }

    pub fn successors(&self, node: NodeRef) -> Result<Vec<CfgEdge>, CfgError> {
        self.out
            .get(&node)
            .map(|idx| idx.iter().map(|&i| self.edges[i]).collect())
            .ok_or(CfgError::UnknownNode(node))
    }

    /// Iterator form of [`Cfg::successors`] for callers that already know the node exists.
    pub fn out_edges(&self, node: NodeRef) -> impl Iterator<Item = &CfgEdge> + '_ {
        self.out
            .get(&node)
            .into_iter()
            .flatten()
            .map(move |&i| &self.edges[i])
    }

    /// Target of the branch edge with the given outcome, if `node` is a branch.
    pub fn branch_target(&self, node: NodeRef, outcome: Outcome) -> Option<NodeRef> {
        let label = EdgeLabel::from(outcome);
        self.out_edges(node)
            .find(|e| e.label == label)
            .map(|e| e.to)
    }

    pub fn predecessors(&self, node: NodeRef) -> Vec<NodeRef> {
        let mut preds: Vec<_> = self
            .edges
            .iter()
            .filter(|e| e.to == node)
            .map(|e| e.from)
            .collect();
        preds.dedup();
        preds
    }
}

struct Builder {
    edges: Vec<CfgEdge>,
    loop_headers: Vec<StatementId>,
}

impl Builder {
    fn edge(&mut self, from: NodeRef, to: NodeRef, label: EdgeLabel) {
        self.edges.push(CfgEdge { from, to, label });
    }

    /// Wires `seq` so that control leaves it towards `next`; returns the node control enters.
    fn lower_seq(&mut self, seq: &[Node], next: NodeRef) -> NodeRef {
        seq.iter()
            .rev()
            .fold(next, |succ, node| self.lower(node, succ))
    }

    fn lower(&mut self, node: &Node, next: NodeRef) -> NodeRef {
        match node {
            Node::Simple(id) => {
                let n = NodeRef::Stmt(*id);
                self.edge(n, next, EdgeLabel::Unconditional);
                n
            }
            Node::If {
                header,
                then_arm,
                else_arm,
            } => {
                let h = NodeRef::Stmt(*header);
                let then_entry = self.lower_seq(then_arm, next);
                let else_entry = match else_arm {
                    Some(arm) => self.lower_seq(arm, next),
                    None => next,
                };
                self.edge(h, then_entry, EdgeLabel::True);
                self.edge(h, else_entry, EdgeLabel::False);
                h
            }
            Node::While { header, body } => {
                let h = NodeRef::Stmt(*header);
                self.loop_headers.push(*header);
                let body_entry = self.lower_seq(body, h);
                self.edge(h, body_entry, EdgeLabel::True);
                self.edge(h, next, EdgeLabel::False);
                h
            }
        }
    }
}

pub fn build_cfg(program: &NumberedProgram) -> Cfg {
    let mut b = Builder {
        edges: Vec::new(),
        loop_headers: Vec::new(),
    };
    let first = b.lower_seq(&program.skeleton, NodeRef::Exit);
    b.edge(NodeRef::Entry, first, EdgeLabel::Unconditional);

    let mut edges = b.edges;
    edges.sort();
    let mut loop_headers = b.loop_headers;
    loop_headers.sort();

    let mut nodes = vec![NodeRef::Entry];
    nodes.extend(program.ids().map(NodeRef::Stmt));
    nodes.push(NodeRef::Exit);

    let mut out: BTreeMap<NodeRef, Vec<usize>> = nodes.iter().map(|&n| (n, Vec::new())).collect();
    for (i, e) in edges.iter().enumerate() {
        out.get_mut(&e.from).expect("edge source is a node").push(i);
    }
    for idx in out.values_mut() {
        idx.sort_by_key(|&i| (edges[i].label, edges[i].to));
    }

    Cfg {
        nodes,
        edges,
        out,
        loop_headers,
    }
}
