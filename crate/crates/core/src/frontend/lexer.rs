//! Tokenizer for the accepted Java subset.

use std::fmt;

use super::error::FrontendError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Keyword,
    Identifier,
    IntegerLiteral,
    Operator,
    Punctuation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
}

impl Token {
    pub fn is(&self, lexeme: &str) -> bool {
        self.lexeme == lexeme
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lexeme)
    }
}

pub const KEYWORDS: &[&str] = &[
    "public", "class", "static", "void", "int", "if", "else", "while",
];

/// Two-character operators come first so the scanner takes the longest match.
const OPERATORS: &[&str] = &[
    "<=", ">=", "==", "!=", "&&", "||", "+", "-", "*", "/", "%", "<", ">", "!", "=",
];

const PUNCTUATION: &[char] = &['(', ')', '{', '}', '[', ']', ';', '.'];

/// Largest literal magnitude accepted; it only denotes a valid `int` under unary minus.
const MAX_LITERAL: i64 = 1 << 31;

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    fn new(source: &'a str) -> Self {
        Cursor {
            chars: source.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, FrontendError> {
    let mut cur = Cursor::new(source);
    let mut tokens = Vec::new();

    while let Some(c) = cur.peek() {
        let (line, column) = (cur.line, cur.column);

        if c.is_whitespace() {
            cur.bump();
            continue;
        }

        if c == '/' && cur.peek2() == Some('/') {
            while let Some(c) = cur.peek() {
                if c == '\n' {
                    break;
                }
                cur.bump();
            }
            continue;
        }

        if c == '/' && cur.peek2() == Some('*') {
            cur.bump();
            cur.bump();
            let mut closed = false;
            while let Some(c) = cur.bump() {
                if c == '*' && cur.peek() == Some('/') {
                    cur.bump();
                    closed = true;
                    break;
                }
            }
            if !closed {
                return Err(FrontendError::UnterminatedComment { line, column });
            }
            continue;
        }

        if c.is_ascii_alphabetic() || c == '_' || c == '$' {
            let mut lexeme = String::new();
            while let Some(c) = cur.peek() {
                if c.is_ascii_alphanumeric() || c == '_' || c == '$' {
                    lexeme.push(c);
                    cur.bump();
                } else {
                    break;
                }
            }
            let kind = if KEYWORDS.contains(&lexeme.as_str()) {
                TokenKind::Keyword
            } else {
                TokenKind::Identifier
            };
            tokens.push(Token {
                kind,
                lexeme,
                line,
                column,
            });
            continue;
        }

        if c.is_ascii_digit() {
            let mut lexeme = String::new();
            while let Some(c) = cur.peek() {
                if c.is_ascii_digit() {
                    lexeme.push(c);
                    cur.bump();
                } else {
                    break;
                }
            }
            match lexeme.parse::<i64>() {
                Ok(v) if v <= MAX_LITERAL => {}
                _ => {
                    return Err(FrontendError::IntegerOutOfRange {
                        line,
                        column,
                        literal: lexeme,
                    })
                }
            }
            tokens.push(Token {
                kind: TokenKind::IntegerLiteral,
                lexeme,
                line,
                column,
            });
            continue;
        }

        if PUNCTUATION.contains(&c) {
            cur.bump();
            tokens.push(Token {
                kind: TokenKind::Punctuation,
                lexeme: c.to_string(),
                line,
                column,
            });
            continue;
        }

        let next = cur.peek2();
        let matched = OPERATORS.iter().find(|op| {
            let mut op_chars = op.chars();
            op_chars.next() == Some(c)
                && match op_chars.next() {
                    None => true,
                    Some(second) => next == Some(second),
                }
        });
        match matched {
            Some(op) => {
                for _ in 0..op.len() {
                    cur.bump();
                }
                tokens.push(Token {
                    kind: TokenKind::Operator,
                    lexeme: (*op).to_string(),
                    line,
                    column,
                });
            }
            None => {
                return Err(FrontendError::Lex {
                    line,
                    column,
                    found: c,
                })
            }
        }
    }

    Ok(tokens)
}
