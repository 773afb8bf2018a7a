//! A small expression language over Γ.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := integer ('/' integer)? | name '[' partition ']' | '(' expr ')'
//! ```
//!
//! Names: `p` (odd partition), `fp` (odd partition), `hatp` and `psi`
//! (integer), `pstar`, `Q`, `P` (strict partition).

use std::fmt;

use spinplan::content::{hat_p, psi};
use spinplan::factorial::p_star;
use spinplan::frakp::frak_p;
use spinplan::schurq::{p_fn, q};
use spinplan::{GammaElement, OddPartition, Rational, StrictPartition};

#[derive(Clone, Debug, PartialEq)]
pub enum ExprAst {
    Number(Rational),
    PowerSum(OddPartition),
    Frak(OddPartition),
    HatP(u32),
    Psi(u32),
    PStar(StrictPartition),
    SchurQ(StrictPartition),
    SchurP(StrictPartition),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, position: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(self.pos, format!("expected `{c}`, found `{found}`")),
                None => self.error(self.pos, format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..]
            .find(|c: char| !pred(c))
            .unwrap_or(self.text.len() - start);
        self.pos += len;
        &self.text[start..start + len]
    }

    fn integer(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return self.error(start, "expected an integer");
        }
        digits
            .parse()
            .or_else(|_| self.error(start, format!("integer `{digits}` is too large")))
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ExprAst, ParseError> {
        if self.eat('-') {
            return Ok(ExprAst::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.integer()?;
            return Ok(ExprAst::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn bracketed(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.expect('[')?;
        let start = self.pos;
        let inner = self.take_while(|c| c != ']');
        self.expect(']')?;
        Ok((start, inner.trim()))
    }

    fn literal<T: std::str::FromStr<Err = spinplan::Error>>(
        &mut self,
    ) -> Result<T, ParseError> {
        let (start, inner) = self.bracketed()?;
        inner.parse().or_else(|e: spinplan::Error| self.error(start, e.to_string()))
    }

    fn index(&mut self) -> Result<u32, ParseError> {
        self.expect('[')?;
        let k = self.integer()?;
        self.expect(']')?;
        Ok(k)
    }

    fn atom(&mut self) -> Result<ExprAst, ParseError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            None => self.error(start, "unexpected end of input"),
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let numer = self.take_while(|c| c.is_ascii_digit());
                let mut text = numer.to_string();
                if self.eat('/') {
                    let denom = self.take_while(|c| c.is_ascii_digit());
                    if denom.is_empty() {
                        return self.error(self.pos, "expected a denominator");
                    }
                    text = format!("{numer}/{denom}");
                }
                spinplan::rational::parse(&text)
                    .map(ExprAst::Number)
                    .or_else(|e| self.error(start, e.to_string()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric());
                match name {
                    "p" => Ok(ExprAst::PowerSum(self.literal()?)),
                    "fp" => Ok(ExprAst::Frak(self.literal()?)),
                    "hatp" => Ok(ExprAst::HatP(self.index()?)),
                    "psi" => {
                        let k_pos = self.pos;
                        let k = self.index()?;
                        if k == 0 {
                            return self.error(k_pos, "psi needs k >= 1");
                        }
                        Ok(ExprAst::Psi(k))
                    }
                    "pstar" => Ok(ExprAst::PStar(self.literal()?)),
                    "Q" => Ok(ExprAst::SchurQ(self.literal()?)),
                    "P" => Ok(ExprAst::SchurP(self.literal()?)),
                    other => self.error(start, format!("unknown function `{other}`")),
                }
            }
            Some(c) => self.error(start, format!("unexpected `{c}`")),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<ExprAst, ParseError> {
    let mut parser = Parser { text, pos: 0 };
    let ast = parser.expr()?;
    match parser.peek() {
        None => Ok(ast),
        Some(c) => parser.error(parser.pos, format!("unexpected `{c}`")),
    }
}

pub fn eval_expr(ast: &ExprAst) -> GammaElement {
    match ast {
        ExprAst::Number(c) => GammaElement::constant(c.clone()),
        ExprAst::PowerSum(rho) => GammaElement::p(rho.clone()),
        ExprAst::Frak(rho) => frak_p(rho),
        ExprAst::HatP(k) => hat_p(*k),
        ExprAst::Psi(k) => psi(*k).expect("k >= 1 checked by the parser"),
        ExprAst::PStar(mu) => p_star(mu),
        ExprAst::SchurQ(lambda) => q(lambda),
        ExprAst::SchurP(lambda) => p_fn(lambda),
        ExprAst::Neg(a) => -&eval_expr(a),
        ExprAst::Add(a, b) => &eval_expr(a) + &eval_expr(b),
        ExprAst::Sub(a, b) => &eval_expr(a) - &eval_expr(b),
        ExprAst::Mul(a, b) => &eval_expr(a) * &eval_expr(b),
        ExprAst::Pow(a, e) => eval_expr(a).pow(*e),
    }
}
