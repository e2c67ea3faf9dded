//! Boolean expressions over variables `x1 ... xn`.
//!
//! Grammar (ASCII, whitespace-insensitive), loosest to tightest binding:
//!
//! ```text
//! or    := xor ( '|' xor )*
//! xor   := and ( '^' and )*
//! and   := unary ( '&' unary )*
//! unary := '~' unary | atom
//! atom  := var | '(' or ')'
//! var   := 'x' digits          (index in 1..=n)
//! ```

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Expression tree. `And`/`Or` are n-ary with at least two operands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoolExpr {
    Var(usize),
    Not(Box<BoolExpr>),
    And(Vec<BoolExpr>),
    Or(Vec<BoolExpr>),
    Xor(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    /// Evaluates against an assignment where `assignment[k-1]` is `x_k`.
    pub fn eval(&self, assignment: &[bool]) -> bool {
        match self {
            BoolExpr::Var(k) => assignment[k - 1],
            BoolExpr::Not(e) => !e.eval(assignment),
            BoolExpr::And(es) => es.iter().all(|e| e.eval(assignment)),
            BoolExpr::Or(es) => es.iter().any(|e| e.eval(assignment)),
            BoolExpr::Xor(a, b) => a.eval(assignment) ^ b.eval(assignment),
        }
    }

    /// Checks variable indices against `n` and that `And`/`Or` have arity >= 2.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            BoolExpr::Var(k) => {
                if *k == 0 || *k > n {
                    return Err(Error::MalformedExpr {
                        reason: "variable index outside 1..=n",
                    });
                }
            }
            BoolExpr::Not(e) => e.validate(n)?,
            BoolExpr::And(es) | BoolExpr::Or(es) => {
                if es.len() < 2 {
                    return Err(Error::MalformedExpr {
                        reason: "And/Or needs at least two operands",
                    });
                }
                for e in es {
                    e.validate(n)?;
                }
            }
            BoolExpr::Xor(a, b) => {
                a.validate(n)?;
                b.validate(n)?;
            }
        }
        Ok(())
    }

    /// Largest variable index appearing in the tree (0 for none).
    pub fn max_var(&self) -> usize {
        match self {
            BoolExpr::Var(k) => *k,
            BoolExpr::Not(e) => e.max_var(),
            BoolExpr::And(es) | BoolExpr::Or(es) => {
                es.iter().map(BoolExpr::max_var).max().unwrap_or(0)
            }
            BoolExpr::Xor(a, b) => a.max_var().max(b.max_var()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            BoolExpr::Or(_) => 0,
            BoolExpr::Xor(..) => 1,
            BoolExpr::And(_) => 2,
            BoolExpr::Not(_) => 3,
            BoolExpr::Var(_) => 4,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min_prec {
            f.write_str("(")?;
        }
        match self {
            BoolExpr::Var(k) => write!(f, "x{k}")?,
            BoolExpr::Not(e) => {
                f.write_str("~")?;
                e.fmt_prec(f, 3)?;
            }
            BoolExpr::And(es) => {
                for (j, e) in es.iter().enumerate() {
                    if j > 0 {
                        f.write_str(" & ")?;
                    }
                    e.fmt_prec(f, 3)?;
                }
            }
            BoolExpr::Or(es) => {
                for (j, e) in es.iter().enumerate() {
                    if j > 0 {
                        f.write_str(" | ")?;
                    }
                    e.fmt_prec(f, 1)?;
                }
            }
            BoolExpr::Xor(a, b) => {
                a.fmt_prec(f, 2)?;
                f.write_str(" ^ ")?;
                // Right operand needs parens for a nested Xor to keep the
                // reparse left-associative.
                b.fmt_prec(f, 2)?;
            }
        }
        if prec < min_prec {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for BoolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// Parse failure with the byte offset where it occurred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    ExpectedOperand,
    UnclosedParen,
    TrailingInput,
    MissingVarIndex,
    VarOutOfRange { index: usize, n: usize },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: ", self.pos)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character '{c}'"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::ExpectedOperand => write!(f, "expected a variable or '('"),
            ParseErrorKind::UnclosedParen => write!(f, "expected ')'"),
            ParseErrorKind::TrailingInput => write!(f, "trailing input after expression"),
            ParseErrorKind::MissingVarIndex => write!(f, "'x' must be followed by an index"),
            ParseErrorKind::VarOutOfRange { index, n } => {
                write!(f, "variable x{index} outside x1..=x{n}")
            }
        }
    }
}

impl core::error::Error for ParseError {}

/// Parses an expression over `x1 ..= xn`.
pub fn parse_expression(text: &str, n: usize) -> Result<BoolExpr> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        n,
    };
    let expr = parser.parse_or()?;
    parser.skip_ws();
    if parser.pos < parser.bytes.len() {
        return Err(parser.err(ParseErrorKind::TrailingInput).into());
    }
    Ok(expr)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            pos: self.pos,
            kind,
        }
    }

    fn skip_ws(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b' ' || b == b'\t' || b == b'\r' || b == b'\n' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse_or(&mut self) -> Result<BoolExpr> {
        let mut terms = alloc::vec![self.parse_xor()?];
        while self.peek() == Some(b'|') {
            self.pos += 1;
            terms.push(self.parse_xor()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            BoolExpr::Or(terms)
        })
    }

    fn parse_xor(&mut self) -> Result<BoolExpr> {
        let mut expr = self.parse_and()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            let rhs = self.parse_and()?;
            expr = BoolExpr::Xor(Box::new(expr), Box::new(rhs));
        }
        Ok(expr)
    }

    fn parse_and(&mut self) -> Result<BoolExpr> {
        let mut factors = alloc::vec![self.parse_unary()?];
        while self.peek() == Some(b'&') {
            self.pos += 1;
            factors.push(self.parse_unary()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            BoolExpr::And(factors)
        })
    }

    fn parse_unary(&mut self) -> Result<BoolExpr> {
        if self.peek() == Some(b'~') {
            self.pos += 1;
            return Ok(BoolExpr::Not(Box::new(self.parse_unary()?)));
        }
        self.parse_atom()
    }

    fn parse_atom(&mut self) -> Result<BoolExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_or()?;
                if self.peek() != Some(b')') {
                    return Err(self.err(ParseErrorKind::UnclosedParen).into());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                self.parse_var_index()
            }
            Some(b) if b.is_ascii() => {
                Err(self.err(ParseErrorKind::UnexpectedChar(b as char)).into())
            }
            Some(_) => Err(self.err(ParseErrorKind::UnexpectedChar('?')).into()),
            None => Err(self.err(ParseErrorKind::ExpectedOperand).into()),
        }
    }

    fn parse_var_index(&mut self) -> Result<BoolExpr> {
        let start = self.pos;
        let mut index: usize = 0;
        let mut digits = 0usize;
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_digit() {
                index = index.saturating_mul(10).saturating_add((b - b'0') as usize);
                digits += 1;
                self.pos += 1;
            } else {
                break;
            }
        }
        if digits == 0 {
            return Err(ParseError {
                pos: start,
                kind: ParseErrorKind::MissingVarIndex,
            }
            .into());
        }
        if index == 0 || index > self.n {
            return Err(ParseError {
                pos: start,
                kind: ParseErrorKind::VarOutOfRange { index, n: self.n },
            }
            .into());
        }
        Ok(BoolExpr::Var(index))
    }
}

/// Renders `expr` so that reparsing yields a semantically equal tree.
pub fn print_expression(expr: &BoolExpr) -> String {
    alloc::format!("{expr}")
}
