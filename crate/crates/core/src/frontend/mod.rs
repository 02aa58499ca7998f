//! Source text to numbered program: tokenizer, parser and statement numbering.

pub mod ast;
mod error;
mod lexer;
mod numbering;
mod parser;

pub use ast::{Ast, BinaryOp, Block, Expr, Stmt, UnaryOp};
pub use error::FrontendError;
pub use lexer::{tokenize, Token, TokenKind, KEYWORDS};
pub use numbering::{
    number_statements, render_program, render_statement, Node, NumberedProgram, Statement,
    StatementId, StatementKind,
};
pub use parser::parse;

pub fn parse_source(source: &str) -> Result<Ast, FrontendError> {
    parse(&tokenize(source)?)
}

/// Tokenize, parse and number in one step.
pub fn load(source: &str) -> Result<NumberedProgram, FrontendError> {
    Ok(number_statements(parse_source(source)?))
}
