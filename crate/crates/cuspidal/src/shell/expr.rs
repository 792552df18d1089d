//! Expression DSL for unit products.
//!
//! ```text
//! expr := term (('*' | '/') term)*
//! term := atom ('^' signed_int)?
//! atom := 'eta' '(' uint ')' | 'F' '[' uint ',' uint ']' | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant; '/' negates the exponent of the
//! following term. Expressions are level-free until bound: the same
//! textual eta quotient means different divisors at different levels.

use num_bigint::BigInt;
use thiserror::Error;

use crate::etafam::{EtaQuotient, FLabel, FProduct};
use crate::modcurve::LevelContext;

/// A single multiplicand: eta(d) stands for the eta function of d tau at
/// the bound level, F[m,h] for the generalized-eta unit with that label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    Eta(u64),
    F(u64, u64),
}

impl std::fmt::Display for Atom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Atom::Eta(d) => write!(f, "eta({d})"),
            Atom::F(m, h) => write!(f, "F[{m},{h}]"),
        }
    }
}

/// A product of atoms with nonzero integer exponents, kept as a sequence
/// (merging happens at bind time).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expression {
    terms: Vec<(Atom, i64)>,
}

impl Expression {
    pub fn terms(&self) -> &[(Atom, i64)] {
        &self.terms
    }
}

impl std::fmt::Display for Expression {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "1");
        }
        for (i, (atom, e)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{atom}")?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("syntax error at column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BindError {
    #[error("eta({0}) is not valid at level {1}: {0} does not divide the level")]
    EtaNotDivisor(u64, u64),
    #[error("F[{0},{1}] is not valid at level {2}: the first index must be a divisor of the level other than the level itself")]
    BadLabel(u64, u64, u64),
    #[error("the {criterion} criterion applies to {expected}, but the expression mixes in {found}")]
    MixedAtoms {
        criterion: &'static str,
        expected: &'static str,
        found: &'static str,
    },
}

struct Parser<'a> {
    chars: Vec<char>,
    input: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            chars: input.chars().collect(),
            input,
            pos: 0,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.get(self.pos), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, expected: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == expected => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.error(format!("expected '{expected}', found '{c}'")),
            None => self.error(format!("expected '{expected}', found end of input")),
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let end = self.pos + word.len();
        if end <= self.chars.len() && self.chars[self.pos..end].iter().collect::<String>() == word {
            self.pos = end;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.chars.get(self.pos), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an unsigned integer");
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        match text.parse() {
            Ok(v) => Ok(v),
            Err(_) => Err(ParseError {
                column: start + 1,
                message: format!("integer '{text}' is out of range"),
            }),
        }
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let negative = match self.chars.get(self.pos) {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let magnitude = self.uint()?;
        let value = i64::try_from(magnitude).map_err(|_| ParseError {
            column: start + 1,
            message: "exponent is out of range".into(),
        })?;
        Ok(if negative { -value } else { value })
    }

    fn atom(&mut self) -> Result<Vec<(Atom, i64)>, ParseError> {
        match self.peek() {
            Some('e') if self.keyword("eta") => {
                self.eat('(')?;
                let d = self.uint()?;
                self.eat(')')?;
                Ok(vec![(Atom::Eta(d), 1)])
            }
            Some('F') => {
                self.pos += 1;
                self.eat('[')?;
                let m = self.uint()?;
                self.eat(',')?;
                let h = self.uint()?;
                self.eat(']')?;
                Ok(vec![(Atom::F(m, h), 1)])
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.eat(')')?;
                Ok(inner)
            }
            Some(c) => self.error(format!("expected 'eta', 'F' or '(', found '{c}'")),
            None => self.error("expected 'eta', 'F' or '(', found end of input"),
        }
    }

    fn term(&mut self, sign: i64) -> Result<Vec<(Atom, i64)>, ParseError> {
        let atoms = self.atom()?;
        let mut exponent = 1i64;
        if self.peek() == Some('^') {
            self.pos += 1;
            let column = {
                self.skip_ws();
                self.pos + 1
            };
            exponent = self.signed_int()?;
            if exponent == 0 {
                return Err(ParseError {
                    column,
                    message: "exponent must be nonzero".into(),
                });
            }
        }
        Ok(atoms
            .into_iter()
            .map(|(atom, e)| (atom, e * exponent * sign))
            .collect())
    }

    fn expr(&mut self) -> Result<Vec<(Atom, i64)>, ParseError> {
        let mut terms = self.term(1)?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    terms.extend(self.term(1)?);
                }
                Some('/') => {
                    self.pos += 1;
                    terms.extend(self.term(-1)?);
                }
                _ => break,
            }
        }
        Ok(terms)
    }

    fn parse(mut self) -> Result<Expression, ParseError> {
        let terms = self.expr()?;
        if self.peek().is_some() {
            let c = self.chars[self.pos];
            return self.error(format!("unexpected '{c}'"));
        }
        let _ = self.input;
        Ok(Expression { terms })
    }
}

/// Parse an expression; errors carry a 1-based column.
pub fn parse(input: &str) -> Result<Expression, ParseError> {
    Parser::new(input).parse()
}

/// An expression bound to a level: eta atoms merged into an eta
/// quotient, F atoms into an F-product (with h reduced mod ell(m)).
#[derive(Debug, Clone)]
pub struct BoundExpression {
    pub eta: EtaQuotient,
    pub f: FProduct,
    /// Human-readable notes emitted during binding, e.g. h reduction.
    pub warnings: Vec<String>,
}

impl BoundExpression {
    pub fn has_eta(&self) -> bool {
        !self.eta.is_empty()
    }

    pub fn has_f(&self) -> bool {
        !self.f.is_empty()
    }

    /// The divisor of the bound product.
    pub fn divisor(&self, ctx: &LevelContext) -> crate::etafam::CuspidalDivisor {
        let mut out = crate::etafam::eta_quotient_divisor(&self.eta, ctx);
        out.add_scaled(&self.f.divisor(ctx), &crate::ntheory::rat_int(1));
        out
    }
}

/// Bind an expression against a level, validating every atom.
pub fn bind(expr: &Expression, ctx: &LevelContext) -> Result<BoundExpression, BindError> {
    let mut eta = EtaQuotient::new(ctx.n());
    let mut f = FProduct::new(ctx.n());
    let mut warnings = Vec::new();
    for &(atom, e) in expr.terms() {
        match atom {
            Atom::Eta(d) => {
                eta.mul_eta_pow(ctx, d, &BigInt::from(e))
                    .map_err(|_| BindError::EtaNotDivisor(d, ctx.n()))?;
            }
            Atom::F(m, h) => {
                let label =
                    FLabel::new(ctx, m, h).map_err(|_| BindError::BadLabel(m, h, ctx.n()))?;
                if label.h() != h {
                    warnings.push(format!(
                        "F[{m},{h}]: index reduced mod ell({m}) = {} to F[{m},{}]",
                        ctx.ell(m),
                        label.h()
                    ));
                }
                f.mul_f_pow(label, &BigInt::from(e));
            }
        }
    }
    Ok(BoundExpression { eta, f, warnings })
}
