//! Recursive-descent parser with scope and type checking folded in.
//!
//! Scoping follows Java blocks: a declaration is visible until the end of the
//! enclosing block (or of the `if`/`while` arm it forms by itself). Names must
//! be unique across the whole of `main`, so every variable has exactly one
//! declaration site.

use std::collections::HashSet;

use super::ast::{Ast, BinaryOp, Block, Expr, Stmt, UnaryOp};
use super::error::FrontendError;
use super::lexer::{Token, TokenKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ty {
    Int,
    Bool,
}

impl Ty {
    fn name(self) -> &'static str {
        match self {
            Ty::Int => "int",
            Ty::Bool => "boolean",
        }
    }
}

type Pos = (usize, usize);

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    scopes: Vec<Vec<String>>,
    declared: HashSet<String>,
}

pub fn parse(tokens: &[Token]) -> Result<Ast, FrontendError> {
    let mut p = Parser {
        tokens,
        pos: 0,
        scopes: Vec::new(),
        declared: HashSet::new(),
    };
    let ast = p.program()?;
    if let Some(tok) = p.peek() {
        return Err(FrontendError::Parse {
            line: tok.line,
            column: tok.column,
            expected: vec!["end of input".into()],
            found: Some(tok.lexeme.clone()),
        });
    }
    Ok(ast)
}

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn peek_is(&self, lexeme: &str) -> bool {
        self.peek().is_some_and(|t| t.is(lexeme))
    }

    fn peek_at_is(&self, offset: usize, lexeme: &str) -> bool {
        self.tokens
            .get(self.pos + offset)
            .is_some_and(|t| t.is(lexeme))
    }

    fn here(&self) -> Pos {
        match self.peek() {
            Some(t) => (t.line, t.column),
            None => match self.tokens.last() {
                Some(t) => (t.line, t.column + t.lexeme.chars().count()),
                None => (1, 1),
            },
        }
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T, FrontendError> {
        let (line, column) = self.here();
        Err(FrontendError::Parse {
            line,
            column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().map(|t| t.lexeme.clone()),
        })
    }

    fn expect(&mut self, lexeme: &str) -> Result<&'t Token, FrontendError> {
        match self.peek() {
            Some(t) if t.is(lexeme) => {
                self.pos += 1;
                Ok(t)
            }
            _ => self.error(&[&format!("'{lexeme}'")]),
        }
    }

    fn eat(&mut self, lexeme: &str) -> bool {
        if self.peek_is(lexeme) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn identifier(&mut self) -> Result<&'t Token, FrontendError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier => {
                self.pos += 1;
                Ok(t)
            }
            _ => self.error(&["identifier"]),
        }
    }

    fn program(&mut self) -> Result<Ast, FrontendError> {
        self.eat("public");
        self.expect("class")?;
        let class_name = self.identifier()?.lexeme.clone();
        self.expect("{")?;
        self.expect("public")?;
        self.expect("static")?;
        self.expect("void")?;
        self.expect("main")?;
        self.expect("(")?;
        self.expect("String")?;
        self.expect("[")?;
        self.expect("]")?;
        let args_name = self.identifier()?.lexeme.clone();
        self.expect(")")?;
        let main = self.block()?;
        self.expect("}")?;
        Ok(Ast {
            class_name,
            args_name,
            main,
        })
    }

    fn block(&mut self) -> Result<Block, FrontendError> {
        self.expect("{")?;
        self.scopes.push(Vec::new());
        let mut stmts = Vec::new();
        while !self.peek_is("}") {
            if self.peek().is_none() {
                return self.error(&["statement", "'}'"]);
            }
            stmts.push(self.stmt()?);
        }
        self.pos += 1;
        self.scopes.pop();
        Ok(Block { stmts })
    }

    /// A statement that forms an `if`/`while` arm gets its own scope.
    fn arm(&mut self) -> Result<Stmt, FrontendError> {
        self.scopes.push(Vec::new());
        let s = self.stmt();
        self.scopes.pop();
        s
    }

    fn stmt(&mut self) -> Result<Stmt, FrontendError> {
        let Some(tok) = self.peek() else {
            return self.error(&["statement"]);
        };
        match tok.lexeme.as_str() {
            "{" => Ok(Stmt::Block(self.block()?)),
            "int" if tok.kind == TokenKind::Keyword => self.var_decl(),
            "if" if tok.kind == TokenKind::Keyword => {
                self.pos += 1;
                let cond = self.condition()?;
                let then_branch = Box::new(self.arm()?);
                let else_branch = if self.eat("else") {
                    Some(Box::new(self.arm()?))
                } else {
                    None
                };
                Ok(Stmt::If {
                    cond,
                    then_branch,
                    else_branch,
                })
            }
            "while" if tok.kind == TokenKind::Keyword => {
                self.pos += 1;
                let cond = self.condition()?;
                let body = Box::new(self.arm()?);
                Ok(Stmt::While { cond, body })
            }
            "System" if self.peek_at_is(1, ".") => {
                self.pos += 1;
                self.expect(".")?;
                self.expect("out")?;
                self.expect(".")?;
                self.expect("println")?;
                self.expect("(")?;
                let e = self.typed_expr(Ty::Int)?;
                self.expect(")")?;
                self.expect(";")?;
                Ok(Stmt::Print(e))
            }
            _ if tok.kind == TokenKind::Identifier => {
                let target = self.identifier()?;
                self.resolve(target)?;
                self.expect("=")?;
                let value = self.typed_expr(Ty::Int)?;
                self.expect(";")?;
                Ok(Stmt::Assign {
                    name: target.lexeme.clone(),
                    value,
                })
            }
            _ => self.error(&["statement"]),
        }
    }

    fn var_decl(&mut self) -> Result<Stmt, FrontendError> {
        self.expect("int")?;
        let name_tok = self.identifier()?;
        let name = name_tok.lexeme.clone();
        if self.declared.contains(&name) {
            return Err(FrontendError::DuplicateDeclaration {
                line: name_tok.line,
                column: name_tok.column,
                name,
            });
        }
        if self.peek_is(";") {
            return Err(FrontendError::MissingInitializer {
                line: name_tok.line,
                column: name_tok.column,
                name,
            });
        }
        self.expect("=")?;
        // the initializer cannot mention the variable being declared
        let init = self.typed_expr(Ty::Int)?;
        self.expect(";")?;
        self.declared.insert(name.clone());
        self.scopes
            .last_mut()
            .expect("declarations only occur inside a scope")
            .push(name.clone());
        Ok(Stmt::VarDecl { name, init })
    }

    fn condition(&mut self) -> Result<Expr, FrontendError> {
        self.expect("(")?;
        let e = self.typed_expr(Ty::Bool)?;
        self.expect(")")?;
        Ok(e)
    }

    fn resolve(&self, tok: &Token) -> Result<(), FrontendError> {
        if self.scopes.iter().any(|s| s.contains(&tok.lexeme)) {
            Ok(())
        } else {
            Err(FrontendError::UndeclaredVariable {
                line: tok.line,
                column: tok.column,
                name: tok.lexeme.clone(),
            })
        }
    }

    fn typed_expr(&mut self, want: Ty) -> Result<Expr, FrontendError> {
        let (e, ty, at) = self.expr(0)?;
        check(want, ty, at)?;
        Ok(e)
    }

    /// Precedence climbing; `min_prec` is the weakest operator this call may consume.
    fn expr(&mut self, min_prec: u8) -> Result<(Expr, Ty, Pos), FrontendError> {
        let (mut lhs, mut lhs_ty, start) = self.unary()?;
        while let Some(op) = self
            .peek()
            .filter(|t| t.kind == TokenKind::Operator)
            .and_then(|t| BinaryOp::from_symbol(&t.lexeme))
        {
            let prec = op.precedence();
            if prec < min_prec {
                break;
            }
            self.pos += 1;
            let (rhs, rhs_ty, rhs_at) = self.expr(prec + 1)?;
            let result_ty = match op {
                BinaryOp::Mul | BinaryOp::Div | BinaryOp::Rem | BinaryOp::Add | BinaryOp::Sub => {
                    check(Ty::Int, lhs_ty, start)?;
                    check(Ty::Int, rhs_ty, rhs_at)?;
                    Ty::Int
                }
                BinaryOp::Lt
                | BinaryOp::Gt
                | BinaryOp::Le
                | BinaryOp::Ge
                | BinaryOp::Eq
                | BinaryOp::Ne => {
                    check(Ty::Int, lhs_ty, start)?;
                    check(Ty::Int, rhs_ty, rhs_at)?;
                    Ty::Bool
                }
                BinaryOp::And | BinaryOp::Or => {
                    check(Ty::Bool, lhs_ty, start)?;
                    check(Ty::Bool, rhs_ty, rhs_at)?;
                    Ty::Bool
                }
            };
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
            lhs_ty = result_ty;
        }
        Ok((lhs, lhs_ty, start))
    }

    fn unary(&mut self) -> Result<(Expr, Ty, Pos), FrontendError> {
        let at = self.here();
        let op = if self.peek_is("-") {
            Some(UnaryOp::Neg)
        } else if self.peek_is("!") {
            Some(UnaryOp::Not)
        } else {
            None
        };
        if let Some(op) = op {
            self.pos += 1;
            let (operand, ty, operand_at) = self.unary()?;
            let ty = match op {
                UnaryOp::Neg => {
                    check(Ty::Int, ty, operand_at)?;
                    Ty::Int
                }
                UnaryOp::Not => {
                    check(Ty::Bool, ty, operand_at)?;
                    Ty::Bool
                }
            };
            return Ok((Expr::Unary(op, Box::new(operand)), ty, at));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<(Expr, Ty, Pos), FrontendError> {
        let at = self.here();
        match self.peek() {
            Some(t) if t.kind == TokenKind::IntegerLiteral => {
                self.pos += 1;
                let v = t.lexeme.parse().expect("lexer validated the literal");
                Ok((Expr::Int(v), Ty::Int, at))
            }
            Some(t) if t.kind == TokenKind::Identifier => {
                self.pos += 1;
                self.resolve(t)?;
                Ok((Expr::Var(t.lexeme.clone()), Ty::Int, at))
            }
            Some(t) if t.is("(") => {
                self.pos += 1;
                let (e, ty, _) = self.expr(0)?;
                self.expect(")")?;
                Ok((e, ty, at))
            }
            _ => self.error(&["expression"]),
        }
    }
}

fn check(want: Ty, got: Ty, (line, column): Pos) -> Result<(), FrontendError> {
    if want == got {
        Ok(())
    } else {
        Err(FrontendError::TypeMismatch {
            line,
            column,
            expected: want.name(),
            found: got.name(),
        })
    }
}
