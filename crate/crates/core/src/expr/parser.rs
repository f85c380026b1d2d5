//! Recursive-descent parser.
//!
//! ```text
//! expr   := term (("+"|"-") term)* ;
//! term   := factor (("*"|"/") factor)* ;
//! factor := "-" factor | power ;
//! power  := atom ("^" factor)? ;
//! atom   := NUMBER ("i")? | "pi" | "e" | VAR | FUNC "(" expr ")" | "(" expr ")" ;
//! ```

use std::fmt;

use thiserror::Error;

use super::{BinaryOp, Node, UnaryOp, MAX_DEPTH};
use crate::field::Elementary;

/// Recursion bound of the parser itself. Parentheses recurse without
/// adding tree depth, so this is looser than [`MAX_DEPTH`].
const MAX_NESTING: usize = 4 * MAX_DEPTH;

/// Why and where an input failed to parse.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseDiagnostic {
    /// Byte offset into the input; equals the input length at end of input.
    pub offset: usize,
    pub message: String,
    /// The offending token text; empty at end of input.
    pub token: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.token.is_empty() {
            write!(f, "at offset {}: {}", self.offset, self.message)
        } else {
            write!(
                f,
                "at offset {}: {} (found `{}`)",
                self.offset, self.message, self.token
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number { value: f64, imaginary: bool },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
    text: String,
}

fn diag(offset: usize, message: impl Into<String>, token: impl Into<String>) -> ParseDiagnostic {
    ParseDiagnostic {
        offset,
        message: message.into(),
        token: token.into(),
    }
}

fn lex(input: &str) -> Result<Vec<Token>, ParseDiagnostic> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < input.len() {
        let c = input[pos..].chars().next().expect("pos is on a char boundary");
        if c.is_whitespace() {
            pos += c.len_utf8();
            continue;
        }
        let start = pos;
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = simple {
            pos += 1;
            tokens.push(Token {
                tok,
                offset: start,
                text: c.to_string(),
            });
            continue;
        }

        let digit_at = |i: usize| bytes.get(i).is_some_and(u8::is_ascii_digit);
        if c.is_ascii_digit() || (c == '.' && digit_at(pos + 1)) {
            while digit_at(pos) {
                pos += 1;
            }
            if bytes.get(pos) == Some(&b'.') {
                pos += 1;
                while digit_at(pos) {
                    pos += 1;
                }
            }
            if matches!(bytes.get(pos), Some(b'e' | b'E')) {
                pos += 1;
                if matches!(bytes.get(pos), Some(b'+' | b'-')) {
                    pos += 1;
                }
                if !digit_at(pos) {
                    let end = next_boundary(input, pos);
                    return Err(diag(start, "malformed number: exponent has no digits", &input[start..end]));
                }
                while digit_at(pos) {
                    pos += 1;
                }
            }
            let text = &input[start..pos];
            let value: f64 = text
                .parse()
                .map_err(|_| diag(start, "malformed number", text))?;
            if !value.is_finite() {
                return Err(diag(start, "number is out of range", text));
            }
            let ident_at = |i: usize| {
                bytes
                    .get(i)
                    .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
            };
            let imaginary = bytes.get(pos) == Some(&b'i') && !ident_at(pos + 1);
            if imaginary {
                pos += 1;
            }
            tokens.push(Token {
                tok: Tok::Number { value, imaginary },
                offset: start,
                text: input[start..pos].to_string(),
            });
            continue;
        }

        if c.is_ascii_alphabetic() || c == '_' {
            while bytes
                .get(pos)
                .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
            {
                pos += 1;
            }
            let text = input[start..pos].to_string();
            tokens.push(Token {
                tok: Tok::Ident(text.clone()),
                offset: start,
                text,
            });
            continue;
        }

        return Err(diag(start, "unexpected character", c.to_string()));
    }
    tokens.push(Token {
        tok: Tok::End,
        offset: input.len(),
        text: String::new(),
    });
    Ok(tokens)
}

fn next_boundary(input: &str, pos: usize) -> usize {
    match input[pos..].chars().next() {
        Some(c) => pos + c.len_utf8(),
        None => pos,
    }
}

/// A node together with the depth of the tree rooted at it.
struct Sub {
    node: Node,
    depth: usize,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    nesting: usize,
}

pub(super) fn parse(input: &str) -> Result<Node, ParseDiagnostic> {
    let mut p = Parser {
        tokens: lex(input)?,
        pos: 0,
        nesting: 0,
    };
    let root = p.expr()?;
    let t = p.peek();
    match t.tok {
        Tok::End => Ok(root.node),
        Tok::RParen => Err(p.error_here("unmatched ')'")),
        _ => Err(p.error_here("expected an operator or end of input")),
    }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseDiagnostic {
        let t = self.peek();
        diag(t.offset, message, t.text.clone())
    }

    fn enter(&mut self) -> Result<(), ParseDiagnostic> {
        self.nesting += 1;
        if self.nesting > MAX_NESTING {
            return Err(self.error_here(format!(
                "expression nests deeper than {MAX_NESTING} levels"
            )));
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.nesting -= 1;
    }

    fn wrap(&self, offset: usize, text: &str, node: Node, depth: usize) -> Result<Sub, ParseDiagnostic> {
        if depth > MAX_DEPTH {
            return Err(diag(
                offset,
                format!("expression tree is deeper than {MAX_DEPTH} levels"),
                text,
            ));
        }
        Ok(Sub { node, depth })
    }

    fn binary(&self, op_token: &Token, op: BinaryOp, lhs: Sub, rhs: Sub) -> Result<Sub, ParseDiagnostic> {
        let depth = 1 + lhs.depth.max(rhs.depth);
        let node = Node::Binary(op, Box::new(lhs.node), Box::new(rhs.node));
        self.wrap(op_token.offset, &op_token.text, node, depth)
    }

    fn expr(&mut self) -> Result<Sub, ParseDiagnostic> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinaryOp::Add,
                Tok::Minus => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            let op_token = self.bump();
            let rhs = self.term()?;
            lhs = self.binary(&op_token, op, lhs, rhs)?;
        }
    }

    fn term(&mut self) -> Result<Sub, ParseDiagnostic> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinaryOp::Mul,
                Tok::Slash => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            let op_token = self.bump();
            let rhs = self.factor()?;
            lhs = self.binary(&op_token, op, lhs, rhs)?;
        }
    }

    fn factor(&mut self) -> Result<Sub, ParseDiagnostic> {
        self.enter()?;
        let result = if self.peek().tok == Tok::Minus {
            let op_token = self.bump();
            self.factor().and_then(|inner| {
                let node = Node::Unary(UnaryOp::Neg, Box::new(inner.node));
                self.wrap(op_token.offset, &op_token.text, node, inner.depth + 1)
            })
        } else {
            self.power()
        };
        self.leave();
        result
    }

    fn power(&mut self) -> Result<Sub, ParseDiagnostic> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let op_token = self.bump();
        let exponent = self.factor()?;
        self.binary(&op_token, BinaryOp::Pow, base, exponent)
    }

    fn atom(&mut self) -> Result<Sub, ParseDiagnostic> {
        let t = self.bump();
        match t.tok {
            Tok::Number { value, imaginary } => {
                let node = if imaginary {
                    Node::Literal { re: 0.0, im: value }
                } else {
                    Node::Literal { re: value, im: 0.0 }
                };
                Ok(Sub { node, depth: 1 })
            }
            Tok::LParen => {
                self.enter()?;
                let inner = self.expr();
                self.leave();
                let inner = inner?;
                self.expect_close("unbalanced parenthesis: expected ')'")?;
                Ok(inner)
            }
            Tok::Ident(ref name) => self.identifier(&t, name),
            Tok::End => Err(diag(t.offset, "expected an operand, found end of input", "")),
            Tok::RParen => Err(diag(t.offset, "expected an operand before ')'", t.text)),
            _ => Err(diag(t.offset, "expected an operand", t.text)),
        }
    }

    fn expect_close(&mut self, message: &str) -> Result<(), ParseDiagnostic> {
        if self.peek().tok == Tok::RParen {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(message))
        }
    }

    fn identifier(&mut self, t: &Token, name: &str) -> Result<Sub, ParseDiagnostic> {
        match name {
            "pi" => {
                return Ok(Sub {
                    node: Node::Literal {
                        re: std::f64::consts::PI,
                        im: 0.0,
                    },
                    depth: 1,
                })
            }
            "e" => {
                return Ok(Sub {
                    node: Node::Literal {
                        re: std::f64::consts::E,
                        im: 0.0,
                    },
                    depth: 1,
                })
            }
            _ => {}
        }
        if let Some(f) = Elementary::from_name(name) {
            if self.peek().tok != Tok::LParen {
                return Err(self.error_here(format!("expected '(' after {name}")));
            }
            self.bump();
            self.enter()?;
            let arg = self.expr();
            self.leave();
            let arg = arg?;
            if self.peek().tok == Tok::Comma {
                return Err(self.error_here(format!("{name} takes exactly one argument")));
            }
            self.expect_close("unbalanced parenthesis: expected ')'")?;
            let node = Node::Call(f, Box::new(arg.node));
            return self.wrap(t.offset, &t.text, node, arg.depth + 1);
        }
        if let Some(digits) = name.strip_prefix('x') {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                if digits.starts_with('0') {
                    return Err(diag(
                        t.offset,
                        "variables are numbered from x1 without leading zeros",
                        name,
                    ));
                }
                let index: usize = digits
                    .parse()
                    .map_err(|_| diag(t.offset, "variable index is too large", name))?;
                return Ok(Sub {
                    node: Node::Variable(index),
                    depth: 1,
                });
            }
        }
        Err(diag(t.offset, "unknown identifier", name))
    }
}
