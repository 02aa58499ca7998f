//! Sequential statement numbering and the per-statement table shared by every analysis.

use std::fmt;

use super::ast::{Ast, Block, Expr, Stmt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StatementId(pub usize);

impl StatementId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// What a numbered statement does, with blocks and arms stripped away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StatementKind {
    Decl { name: String, init: Expr },
    Assign { name: String, value: Expr },
    Print(Expr),
    IfHeader { cond: Expr },
    WhileHeader { cond: Expr },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub id: StatementId,
    pub kind: StatementKind,
    /// Canonical one-line rendering.
    pub text: String,
}

impl Statement {
    pub fn condition(&self) -> Option<&Expr> {
        match &self.kind {
            StatementKind::IfHeader { cond } | StatementKind::WhileHeader { cond } => Some(cond),
            _ => None,
        }
    }

    pub fn is_branch(&self) -> bool {
        self.condition().is_some()
    }
}

/// Control skeleton of the program: nesting of numbered statements with blocks flattened.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Simple(StatementId),
    If {
        header: StatementId,
        then_arm: Vec<Node>,
        /// `None` when the source has no `else`.
        else_arm: Option<Vec<Node>>,
    },
    While {
        header: StatementId,
        body: Vec<Node>,
    },
}

impl Node {
    pub fn first_id(&self) -> StatementId {
        match self {
            Node::Simple(id) => *id,
            Node::If { header, .. } | Node::While { header, .. } => *header,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberedProgram {
    pub ast: Ast,
    /// Indexed by `StatementId`.
    pub statements: Vec<Statement>,
    pub skeleton: Vec<Node>,
}

impl NumberedProgram {
    pub fn len(&self) -> usize {
        self.statements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }

    pub fn statement(&self, id: StatementId) -> &Statement {
        &self.statements[id.0]
    }

    pub fn source_text_of(&self, id: StatementId) -> &str {
        &self.statements[id.0].text
    }

    pub fn ids(&self) -> impl Iterator<Item = StatementId> + '_ {
        (0..self.statements.len()).map(StatementId)
    }
}

pub fn number_statements(ast: Ast) -> NumberedProgram {
    let mut statements = Vec::new();
    let skeleton = number_block(&ast.main, &mut statements);
    NumberedProgram {
        ast,
        statements,
        skeleton,
    }
}

fn number_block(block: &Block, out: &mut Vec<Statement>) -> Vec<Node> {
    let mut nodes = Vec::new();
    for stmt in &block.stmts {
        number_stmt(stmt, out, &mut nodes);
    }
    nodes
}

fn push(out: &mut Vec<Statement>, kind: StatementKind) -> StatementId {
    let id = StatementId(out.len());
    let text = render_statement(&kind);
    out.push(Statement { id, kind, text });
    id
}

fn number_arm(stmt: &Stmt, out: &mut Vec<Statement>) -> Vec<Node> {
    let mut nodes = Vec::new();
    number_stmt(stmt, out, &mut nodes);
    nodes
}

fn number_stmt(stmt: &Stmt, out: &mut Vec<Statement>, nodes: &mut Vec<Node>) {
    match stmt {
        Stmt::VarDecl { name, init } => {
            let id = push(
                out,
                StatementKind::Decl {
                    name: name.clone(),
                    init: init.clone(),
                },
            );
            nodes.push(Node::Simple(id));
        }
        Stmt::Assign { name, value } => {
            let id = push(
                out,
                StatementKind::Assign {
                    name: name.clone(),
                    value: value.clone(),
                },
            );
            nodes.push(Node::Simple(id));
        }
        Stmt::Print(e) => {
            let id = push(out, StatementKind::Print(e.clone()));
            nodes.push(Node::Simple(id));
        }
        Stmt::Block(b) => nodes.extend(number_block(b, out)),
        Stmt::If {
            cond,
            then_branch,
            else_branch,
        } => {
            let header = push(out, StatementKind::IfHeader { cond: cond.clone() });
            let then_arm = number_arm(then_branch, out);
            let else_arm = else_branch.as_ref().map(|s| number_arm(s, out));
            nodes.push(Node::If {
                header,
                then_arm,
                else_arm,
            });
        }
        Stmt::While { cond, body } => {
            let header = push(out, StatementKind::WhileHeader { cond: cond.clone() });
            let body = number_arm(body, out);
            nodes.push(Node::While { header, body });
        }
    }
}

/// Headers render as `if <cond>` / `while <cond>`; other statements keep their `;`.
pub fn render_statement(kind: &StatementKind) -> String {
    match kind {
        StatementKind::Decl { name, init } => format!("int {name} = {init};"),
        StatementKind::Assign { name, value } => format!("{name} = {value};"),
        StatementKind::Print(e) => format!("System.out.println({e});"),
        StatementKind::IfHeader { cond } => format!("if {cond}"),
        StatementKind::WhileHeader { cond } => format!("while {cond}"),
    }
}

/// Re-assembles a complete compilation unit from the canonical statement renderings.
pub fn render_program(program: &NumberedProgram) -> String {
    let mut out = format!(
        "class {} {{\n    public static void main(String[] {}) {{\n",
        program.ast.class_name, program.ast.args_name
    );
    for stmt in &program.ast.main.stmts {
        render_stmt(stmt, 2, &mut out);
    }
    out.push_str("    }\n}\n");
    out
}

fn render_stmt(stmt: &Stmt, depth: usize, out: &mut String) {
    let pad = "    ".repeat(depth);
    match stmt {
        Stmt::VarDecl { name, init } => out.push_str(&format!(
            "{pad}{}\n",
            render_statement(&StatementKind::Decl {
                name: name.clone(),
                init: init.clone()
            })
        )),
        Stmt::Assign { name, value } => out.push_str(&format!(
            "{pad}{}\n",
            render_statement(&StatementKind::Assign {
                name: name.clone(),
                value: value.clone()
            })
        )),
        Stmt::Print(e) => out.push_str(&format!(
            "{pad}{}\n",
            render_statement(&StatementKind::Print(e.clone()))
        )),
        Stmt::Block(b) => {
            out.push_str(&format!("{pad}{{\n"));
            for s in &b.stmts {
                render_stmt(s, depth + 1, out);
            }
            out.push_str(&format!("{pad}}}\n"));
        }
        Stmt::If {
            cond,
            then_branch,
            else_branch,
        } => {
            out.push_str(&format!("{pad}if ({cond})\n"));
            // a then-arm ending in an else-less `if` would capture our `else`
            let braced = else_branch.is_some() && ends_in_open_if(then_branch);
            render_arm(then_branch, depth, braced, out);
            if let Some(e) = else_branch {
                out.push_str(&format!("{pad}else\n"));
                render_arm(e, depth, false, out);
            }
        }
        Stmt::While { cond, body } => {
            out.push_str(&format!("{pad}while ({cond})\n"));
            render_arm(body, depth, false, out);
        }
    }
}

fn ends_in_open_if(stmt: &Stmt) -> bool {
    match stmt {
        Stmt::If {
            else_branch: None, ..
        } => true,
        Stmt::If {
            else_branch: Some(e),
            ..
        } => ends_in_open_if(e),
        Stmt::While { body, .. } => ends_in_open_if(body),
        _ => false,
    }
}

fn render_arm(stmt: &Stmt, depth: usize, braced: bool, out: &mut String) {
    match stmt {
        Stmt::Block(_) => render_stmt(stmt, depth, out),
        _ if braced => {
            let pad = "    ".repeat(depth);
            out.push_str(&format!("{pad}{{\n"));
            render_stmt(stmt, depth + 1, out);
            out.push_str(&format!("{pad}}}\n"));
        }
        _ => render_stmt(stmt, depth + 1, out),
    }
}
