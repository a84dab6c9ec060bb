//! Ideal files: one polynomial in `x` and `y` per line, `#` starts a comment.

use std::fmt;

use basepoints_core::algebra::{BiPoly, Rational};
use num_bigint::BigInt;

type Q = BiPoly<Rational>;

const MAX_EXPONENT: u32 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line in the input.
    pub line: usize,
    /// 1-based character column in that line.
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IdealParseError {
    #[error("parse error at {0}")]
    Syntax(#[from] ParseError),
    #[error("the input contains no generators")]
    EmptyIdeal,
}

/// Parse an ideal file into its generators, in file order.
pub fn parse_ideal(text: &str) -> Result<Vec<Q>, IdealParseError> {
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        gens.push(parse_polynomial(body).map_err(|(col, message)| ParseError { line: i + 1, col, message })?);
    }
    if gens.is_empty() {
        return Err(IdealParseError::EmptyIdeal);
    }
    Ok(gens)
}

/// Parse one polynomial; errors carry a 1-based column.
pub fn parse_polynomial(s: &str) -> Result<Q, (usize, String)> {
    let mut p = Parser { chars: s.chars().collect(), pos: 0 };
    let f = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected '{c}'")));
    }
    Ok(f)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

type PResult<T> = Result<T, (usize, String)>;

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    /// Next non-blank character; the Unicode minus sign reads as '-'.
    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&c| if c == '\u{2212}' { '-' } else { c })
    }

    fn error(&self, message: String) -> (usize, String) {
        (self.pos + 1, message)
    }

    /// Right operand of the operator at `at`; a missing one is reported at
    /// the operator.
    fn operand(&mut self, at: usize, op: char, next: fn(&mut Self) -> PResult<Q>) -> PResult<Q> {
        next(self).map_err(|e| if self.peek().is_none() { (at + 1, format!("'{op}' has no right operand")) } else { e })
    }

    fn expr(&mut self) -> PResult<Q> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let t = self.operand(at, op, Self::term)?;
            acc = if op == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<Q> {
        let mut acc = self.unary()?;
        while self.peek() == Some('*') {
            let at = self.pos;
            self.pos += 1;
            acc = acc.mul(&self.operand(at, '*', Self::unary)?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Q> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<Q> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected a nonnegative integer exponent".into()));
        }
        match digits.parse::<u32>() {
            Ok(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
            _ => Err((start + 1, format!("exponent larger than {MAX_EXPONENT}"))),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> PResult<Q> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(Q::x())
            }
            Some('y') => {
                self.pos += 1;
                Ok(Q::y())
            }
            Some('(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(match self.peek() {
                        Some(c) => self.error(format!("expected ')' but found '{c}'")),
                        None => (open + 1, "unclosed '('".into()),
                    });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                let mut den = BigInt::from(1);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.error("expected a denominator".into()));
                    }
                    den = d.parse().expect("digits");
                    if den == BigInt::from(0) {
                        return Err((at + 1, "zero denominator".into()));
                    }
                }
                Ok(Q::constant(Rational::new(num, den)))
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of expression".into())),
        }
    }
}
