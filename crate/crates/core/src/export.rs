//! Graphviz DOT and plain-text edge-list serialization.
//!
//! Output is deterministic: nodes ascend by ID, edges follow the graphs'
//! (from, to, kind) order, lines end in LF.

use std::fmt::Write as _;

use crate::cfg::{Cfg, EdgeLabel, NodeRef, Outcome};
use crate::dataflow::{DepKind, DependenceGraph, VariableGraph};
use crate::frontend::NumberedProgram;

#[derive(Clone, Copy, Debug)]
pub enum Graph<'a> {
    Cfg(&'a Cfg),
    Dependence(&'a DependenceGraph),
    Variable(&'a VariableGraph),
}

impl<'a> From<&'a Cfg> for Graph<'a> {
    fn from(g: &'a Cfg) -> Self {
        Graph::Cfg(g)
    }
}

impl<'a> From<&'a DependenceGraph> for Graph<'a> {
    fn from(g: &'a DependenceGraph) -> Self {
        Graph::Dependence(g)
    }
}

impl<'a> From<&'a VariableGraph> for Graph<'a> {
    fn from(g: &'a VariableGraph) -> Self {
        Graph::Variable(g)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DotOptions {
    /// Show ENTRY and its control edges in dependence graphs. The CFG always shows ENTRY.
    pub include_entry: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotDocument {
    pub text: String,
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn node_name(n: NodeRef) -> String {
    match n {
        NodeRef::Entry => "entry".into(),
        NodeRef::Exit => "exit".into(),
        NodeRef::Stmt(id) => format!("n{id}"),
    }
}

fn node_decl(out: &mut String, n: NodeRef, program: &NumberedProgram) {
    let label = match n {
        NodeRef::Entry => "ENTRY".to_string(),
        NodeRef::Exit => "EXIT".to_string(),
        NodeRef::Stmt(id) => format!("{id}: {}", program.source_text_of(id)),
    };
    let _ = writeln!(out, "  {} [label=\"{}\"];", node_name(n), escape(&label));
}

pub fn render_dot<'a>(
    graph: impl Into<Graph<'a>>,
    program: &NumberedProgram,
    options: DotOptions,
) -> DotDocument {
    let mut out = String::new();
    match graph.into() {
        Graph::Cfg(cfg) => {
            out.push_str("digraph cfg {\n  node [shape=box];\n");
            for &n in cfg.nodes() {
                node_decl(&mut out, n, program);
            }
            for e in cfg.edges() {
                let attrs = match e.label {
                    EdgeLabel::Unconditional => String::new(),
                    EdgeLabel::True => " [label=\"true\"]".into(),
                    EdgeLabel::False => " [label=\"false\"]".into(),
                };
                let _ = writeln!(
                    out,
                    "  {} -> {}{attrs};",
                    node_name(e.from),
                    node_name(e.to)
                );
            }
        }
        Graph::Dependence(g) => {
            let _ = writeln!(
                out,
                "digraph {} {{\n  node [shape=box];",
                g.kind.short_name()
            );
            let shown = |n: NodeRef| options.include_entry || n != NodeRef::Entry;
            for &n in g.nodes.iter().filter(|&&n| shown(n)) {
                node_decl(&mut out, n, program);
            }
            for e in g.edges.iter().filter(|e| shown(e.from) && shown(e.to)) {
                let attrs = match &e.kind {
                    DepKind::Data(v) => format!("label=\"{}\" style=dashed", escape(v)),
                    DepKind::Control(Outcome::True) => "label=\"T\" style=dotted".into(),
                    DepKind::Control(Outcome::False) => "label=\"F\" style=dotted".into(),
                };
                let _ = writeln!(
                    out,
                    "  {} -> {} [{attrs}];",
                    node_name(e.from),
                    node_name(e.to)
                );
            }
        }
        Graph::Variable(g) => {
            out.push_str("digraph vdg {\n  node [shape=ellipse];\n");
            for v in &g.nodes {
                let v = escape(v);
                let _ = writeln!(out, "  \"{v}\" [label=\"{v}\"];");
            }
            for e in &g.edges {
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [label=\"s{}\"];",
                    escape(&e.from),
                    escape(&e.to),
                    e.via
                );
            }
        }
    }
    out.push_str("}\n");
    DotDocument { text: out }
}

/// One `<from> -<label>-> <to>` line per edge; unlabeled CFG edges print as `<from> -> <to>`.
pub fn render_text<'a>(graph: impl Into<Graph<'a>>) -> String {
    let mut out = String::new();
    match graph.into() {
        Graph::Cfg(cfg) => {
            for e in cfg.edges() {
                let _ = match e.label {
                    EdgeLabel::Unconditional => writeln!(out, "{} -> {}", e.from, e.to),
                    EdgeLabel::True => writeln!(out, "{} -true-> {}", e.from, e.to),
                    EdgeLabel::False => writeln!(out, "{} -false-> {}", e.from, e.to),
                };
            }
        }
        Graph::Dependence(g) => {
            for e in &g.edges {
                let _ = writeln!(out, "{} -{}-> {}", e.from, e.kind, e.to);
            }
        }
        Graph::Variable(g) => {
            for e in &g.edges {
                let _ = writeln!(out, "{} -s{}-> {}", e.from, e.via, e.to);
            }
        }
    }
    out
}
