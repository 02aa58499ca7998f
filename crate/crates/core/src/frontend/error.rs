use thiserror::Error;

/// Lexical, syntactic and static-semantic errors. The first one found is reported.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrontendError {
    #[error("{line}:{column}: unexpected character '{found}'")]
    Lex {
        line: usize,
        column: usize,
        found: char,
    },

    #[error("{line}:{column}: unterminated block comment")]
    UnterminatedComment { line: usize, column: usize },

    #[error("{line}:{column}: integer literal {literal} is out of range")]
    IntegerOutOfRange {
        line: usize,
        column: usize,
        literal: String,
    },

    /// `found` is `None` at end of input.
    #[error("{line}:{column}: expected {}, found {}", expected.join(" or "), found.as_deref().map(|f| format!("'{f}'")).unwrap_or_else(|| "end of input".to_string()))]
    Parse {
        line: usize,
        column: usize,
        expected: Vec<String>,
        found: Option<String>,
    },

    #[error("{line}:{column}: variable '{name}' is not declared")]
    UndeclaredVariable {
        line: usize,
        column: usize,
        name: String,
    },

    #[error("{line}:{column}: variable '{name}' is already declared")]
    DuplicateDeclaration {
        line: usize,
        column: usize,
        name: String,
    },

    #[error("{line}:{column}: declaration of '{name}' has no initializer")]
    MissingInitializer {
        line: usize,
        column: usize,
        name: String,
    },

    #[error("{line}:{column}: expected {expected} expression, found {found} expression")]
    TypeMismatch {
        line: usize,
        column: usize,
        expected: &'static str,
        found: &'static str,
    },
}
