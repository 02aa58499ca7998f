//! Tracing tree-walking interpreter.
//!
//! `int` is 32-bit two's complement with wrapping arithmetic; `/` and `%`
//! truncate toward zero. Each executed numbered statement, headers included,
//! counts as one step and appends its ID to the trace.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::cfg::Outcome;
use crate::frontend::{BinaryOp, Expr, Node, NumberedProgram, StatementId, StatementKind, UnaryOp};
use crate::paths::{decision_line, join_ids, Decision};

pub const DEFAULT_STEP_LIMIT: u64 = 100_000;

pub type Env = BTreeMap<String, i32>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    pub node_ids: Vec<StatementId>,
    pub outcomes: Vec<Decision>,
    pub final_env: Env,
    pub output: Vec<i32>,
    pub steps: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i32),
    Bool(bool),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable '{0}' has no value")]
    Unbound(String),
    #[error("ill-typed operand")]
    TypeMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuntimeErrorKind {
    #[error("division by zero in statement {0}")]
    DivisionByZero(StatementId),
    #[error("step limit of {0} exceeded")]
    StepLimitExceeded(u64),
    /// Unreachable for programs accepted by the parser.
    #[error("statement {0}: {1}")]
    Malformed(StatementId, EvalError),
}

/// A failed run; `trace` holds everything executed before the failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind}")]
pub struct RuntimeError {
    pub kind: RuntimeErrorKind,
    pub trace: Box<Trace>,
}

impl Value {
    fn int(self) -> Result<i32, EvalError> {
        match self {
            Value::Int(v) => Ok(v),
            Value::Bool(_) => Err(EvalError::TypeMismatch),
        }
    }

    fn bool(self) -> Result<bool, EvalError> {
        match self {
            Value::Bool(b) => Ok(b),
            Value::Int(_) => Err(EvalError::TypeMismatch),
        }
    }
}

pub fn eval_expr(expr: &Expr, env: &Env) -> Result<Value, EvalError> {
    Ok(match expr {
        // 2147483648 wraps to i32::MIN, which is what `-2147483648` needs
        Expr::Int(v) => Value::Int(*v as i32),
        Expr::Var(name) => Value::Int(
            *env.get(name)
                .ok_or_else(|| EvalError::Unbound(name.clone()))?,
        ),
        Expr::Unary(UnaryOp::Neg, e) => Value::Int(eval_expr(e, env)?.int()?.wrapping_neg()),
        Expr::Unary(UnaryOp::Not, e) => Value::Bool(!eval_expr(e, env)?.bool()?),
        Expr::Binary(BinaryOp::And, l, r) => {
            Value::Bool(eval_expr(l, env)?.bool()? && eval_expr(r, env)?.bool()?)
        }
        Expr::Binary(BinaryOp::Or, l, r) => {
            Value::Bool(eval_expr(l, env)?.bool()? || eval_expr(r, env)?.bool()?)
        }
        Expr::Binary(op, l, r) => {
            let a = eval_expr(l, env)?.int()?;
            let b = eval_expr(r, env)?.int()?;
            match op {
                BinaryOp::Add => Value::Int(a.wrapping_add(b)),
                BinaryOp::Sub => Value::Int(a.wrapping_sub(b)),
                BinaryOp::Mul => Value::Int(a.wrapping_mul(b)),
                BinaryOp::Div if b == 0 => return Err(EvalError::DivisionByZero),
                BinaryOp::Div => Value::Int(a.wrapping_div(b)),
                BinaryOp::Rem if b == 0 => return Err(EvalError::DivisionByZero),
                BinaryOp::Rem => Value::Int(a.wrapping_rem(b)),
                BinaryOp::Lt => Value::Bool(a < b),
                BinaryOp::Gt => Value::Bool(a > b),
                BinaryOp::Le => Value::Bool(a <= b),
                BinaryOp::Ge => Value::Bool(a >= b),
                BinaryOp::Eq => Value::Bool(a == b),
                BinaryOp::Ne => Value::Bool(a != b),
                BinaryOp::And | BinaryOp::Or => unreachable!("handled above"),
            }
        }
    })
}

struct Machine<'p> {
    program: &'p NumberedProgram,
    step_limit: u64,
    trace: Trace,
    visits: Vec<u32>,
}

impl Machine<'_> {
    fn enter(&mut self, id: StatementId) -> Result<(), RuntimeErrorKind> {
        if self.trace.steps >= self.step_limit {
            return Err(RuntimeErrorKind::StepLimitExceeded(self.step_limit));
        }
        self.trace.steps += 1;
        self.trace.node_ids.push(id);
        self.visits[id.0] += 1;
        Ok(())
    }

    fn eval(&self, id: StatementId, e: &Expr) -> Result<Value, RuntimeErrorKind> {
        eval_expr(e, &self.trace.final_env).map_err(|err| match err {
            EvalError::DivisionByZero => RuntimeErrorKind::DivisionByZero(id),
            other => RuntimeErrorKind::Malformed(id, other),
        })
    }

    fn test(&mut self, id: StatementId, cond: &Expr) -> Result<bool, RuntimeErrorKind> {
        self.enter(id)?;
        let taken = self
            .eval(id, cond)?
            .bool()
            .map_err(|e| RuntimeErrorKind::Malformed(id, e))?;
        self.trace.outcomes.push(Decision {
            branch: id,
            outcome: Outcome::from_bool(taken),
            occurrence: self.visits[id.0],
        });
        Ok(taken)
    }

    fn run_seq(&mut self, seq: &[Node]) -> Result<(), RuntimeErrorKind> {
        seq.iter().try_for_each(|n| self.run(n))
    }

    fn run(&mut self, node: &Node) -> Result<(), RuntimeErrorKind> {
        let program = self.program;
        match node {
            Node::Simple(id) => {
                self.enter(*id)?;
                let int = |m: &Self, e: &Expr| {
                    m.eval(*id, e)?
                        .int()
                        .map_err(|err| RuntimeErrorKind::Malformed(*id, err))
                };
                match &program.statement(*id).kind {
                    StatementKind::Decl { name, init: e }
                    | StatementKind::Assign { name, value: e } => {
                        let v = int(self, e)?;
                        self.trace.final_env.insert(name.clone(), v);
                    }
                    StatementKind::Print(e) => {
                        let v = int(self, e)?;
                        self.trace.output.push(v);
                    }
                    StatementKind::IfHeader { .. } | StatementKind::WhileHeader { .. } => {
                        unreachable!("headers are never simple nodes")
                    }
                }
            }
            Node::If {
                header,
                then_arm,
                else_arm,
            } => {
                let cond = program.statement(*header).condition().expect("if header");
                if self.test(*header, cond)? {
                    self.run_seq(then_arm)?;
                } else if let Some(arm) = else_arm {
                    self.run_seq(arm)?;
                }
            }
            Node::While { header, body } => {
                let cond = program
                    .statement(*header)
                    .condition()
                    .expect("while header");
                while self.test(*header, cond)? {
                    self.run_seq(body)?;
                }
            }
        }
        Ok(())
    }
}

pub fn execute(program: &NumberedProgram, step_limit: u64) -> Result<Trace, RuntimeError> {
    let mut m = Machine {
        program,
        step_limit: step_limit.max(1),
        trace: Trace::default(),
        visits: vec![0; program.len()],
    };
    match m.run_seq(&program.skeleton) {
        Ok(()) => Ok(m.trace),
        Err(kind) => Err(RuntimeError {
            kind,
            trace: Box::new(m.trace),
        }),
    }
}

/// One decision line per evaluated condition, then `Execution Path: ...`.
pub fn render_dynamic_report(program: &NumberedProgram, trace: &Trace) -> String {
    let mut out = String::new();
    for d in &trace.outcomes {
        out.push_str(&decision_line(program, d));
        out.push('\n');
    }
    let _ = writeln!(out, "Execution Path:{}", join_ids(&trace.node_ids));
    out
}

/// `name = value` per variable, sorted by name.
pub fn render_env(env: &Env) -> String {
    env.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
}
