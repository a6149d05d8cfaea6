//! Group expression syntax.
//!
//! ```text
//! expr  := cprod ("x" cprod)*
//! cprod := atom ("." atom | ".[" pairs "]" atom)*
//! atom  := "Cyc(" n ")" | "ElemAb(" n "," n ")" | "ES(" n "," n "," sign ")"
//!        | "D8" | "Q8" | "(" expr ")"
//! pairs := n ":" n ("," n ":" n)*
//! ```
//!
//! Both operators associate to the left and `.` binds tighter than `x`.

use std::fmt;

use pgcl_core::group::{GroupExpr, Identification, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset of the offending token.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: {}", self.position, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("{0}")]
    Parse(ParseError),
    #[error("semantic error: {0}")]
    Semantic(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Dot,
    Plus,
    Minus,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b',' => Tok::Comma,
            b':' => Tok::Colon,
            b'.' => Tok::Dot,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse().map_err(|_| ParseError {
                    position: start,
                    message: format!("number `{}` is too large", &text[start..i]),
                })?;
                out.push((start, Tok::Num(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError { position: start, message: format!("unexpected character `{ch}`") });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.pos(), message: message.into() })
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {want}, found {}", self.peek()))
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Tok::Num(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            t => self.error(format!("expected a number, found {t}")),
        }
    }

    fn small(&mut self) -> Result<usize, ParseError> {
        let pos = self.pos();
        let n = self.number()?;
        usize::try_from(n)
            .ok()
            .filter(|&n| n <= u32::MAX as usize)
            .ok_or(ParseError { position: pos, message: format!("number {n} is too large") })
    }

    fn is_times(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == "x")
    }

    fn expr(&mut self) -> Result<GroupExpr, ParseError> {
        let mut left = self.cprod()?;
        while self.is_times() {
            self.bump();
            let right = self.cprod()?;
            left = GroupExpr::dir(left, right);
        }
        Ok(left)
    }

    fn cprod(&mut self) -> Result<GroupExpr, ParseError> {
        let mut left = self.atom()?;
        while *self.peek() == Tok::Dot {
            self.bump();
            let ident = if *self.peek() == Tok::LBracket {
                self.bump();
                let mut pairs = Vec::new();
                loop {
                    let a = self.small()?;
                    self.expect(Tok::Colon)?;
                    let b = self.small()?;
                    pairs.push((a, b));
                    if *self.peek() == Tok::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::RBracket)?;
                Identification::Pairs(pairs)
            } else {
                Identification::Canonical
            };
            let right = self.atom()?;
            left = GroupExpr::CProd(Box::new(left), Box::new(right), ident);
        }
        Ok(left)
    }

    fn atom(&mut self) -> Result<GroupExpr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "D8" => Ok(GroupExpr::D8),
                "Q8" => Ok(GroupExpr::Q8),
                "Cyc" => {
                    self.expect(Tok::LParen)?;
                    let q = self.small()?;
                    self.expect(Tok::RParen)?;
                    Ok(GroupExpr::Cyc(q))
                }
                "ElemAb" => {
                    self.expect(Tok::LParen)?;
                    let p = self.small()?;
                    self.expect(Tok::Comma)?;
                    let k = self.small()? as u32;
                    self.expect(Tok::RParen)?;
                    Ok(GroupExpr::ElemAb(p, k))
                }
                "ES" => {
                    self.expect(Tok::LParen)?;
                    let p = self.small()?;
                    self.expect(Tok::Comma)?;
                    let m = self.small()? as u32;
                    self.expect(Tok::Comma)?;
                    let sign = match self.peek() {
                        Tok::Plus => Sign::Plus,
                        Tok::Minus => Sign::Minus,
                        t => return self.error(format!("expected `+` or `-`, found {t}")),
                    };
                    self.bump();
                    self.expect(Tok::RParen)?;
                    Ok(GroupExpr::Es(p, m, sign))
                }
                other => Err(ParseError { position: pos, message: format!("unknown group `{other}`") }),
            },
            t => Err(ParseError { position: pos, message: format!("expected a group, found {t}") }),
        }
    }
}

/// Parses without semantic checks.
pub fn parse_syntax(text: &str) -> Result<GroupExpr, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {}", p.peek()));
    }
    Ok(e)
}

pub fn parse_expr(text: &str) -> Result<GroupExpr, ExprError> {
    let e = parse_syntax(text).map_err(ExprError::Parse)?;
    e.check_semantics().map_err(|err| ExprError::Semantic(err.to_string()))?;
    Ok(e)
}
