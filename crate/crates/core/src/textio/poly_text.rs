//! Polynomial text syntax.
//!
//! ```text
//! poly   := factor+ | "1"
//! factor := clause | ";"
//! clause := "(" sum ")"
//! sum    := term ("+" term)*
//! term   := "1" | power ("*" power)*
//! power  := ident ("^" uint)?
//! ident  := letter (letter | digit | "_")*
//! ```
//!
//! Whitespace between tokens is ignored, adjacent clauses need no separator,
//! and at most one `;` may appear. A bare `1` is the empty product.

use std::fmt::Write as _;

use super::ParseError;
use crate::poly::{Clause, FactoredPolynomial, Monomial, VarId, VarTable, Witness};

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, at: usize, msg: impl Into<String>) -> ParseError {
        ParseError::at(self.src, at, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn describe(&self, at: usize) -> String {
        match self.src[at..].chars().next() {
            None => "end of input".to_owned(),
            Some(c) => format!("{c:?}"),
        }
    }

    fn expect(&mut self, want: u8, what: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(b) if b == want => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(self.pos, format!("expected {what}, found {}", self.describe(self.pos)))),
        }
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.bytes.get(self.pos) {
            Some(b) if b.is_ascii_alphabetic() => self.pos += 1,
            _ => return Err(self.err(start, format!("expected variable name, found {}", self.describe(start)))),
        }
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            self.pos += 1;
        }
        Ok(&self.src[start..self.pos])
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(start, format!("expected exponent, found {}", self.describe(start))));
        }
        let value: u32 = self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err(start, "exponent out of range"))?;
        if value == 0 {
            return Err(self.err(start, "exponent must be positive"));
        }
        Ok(value)
    }

    fn term(&mut self, vars: &mut VarTable) -> Result<Monomial, ParseError> {
        if self.peek() == Some(b'1') {
            let start = self.pos;
            self.pos += 1;
            if self.bytes.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
                return Err(self.err(start, "expected term, found a number other than 1"));
            }
            return Ok(Monomial::one());
        }
        let mut pairs: Vec<(VarId, u32)> = Vec::new();
        let mut degree = 0u64;
        loop {
            let start = self.pos;
            let name = self.ident()?;
            let v = vars.intern(name);
            let exp = if self.peek() == Some(b'^') {
                self.pos += 1;
                self.uint()?
            } else {
                1
            };
            degree += u64::from(exp);
            if degree > u64::from(u32::MAX) {
                return Err(self.err(start, "term degree out of range"));
            }
            pairs.push((v, exp));
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(Monomial::from_pairs(pairs))
    }

    fn clause(&mut self, vars: &mut VarTable) -> Result<Vec<Monomial>, ParseError> {
        self.expect(b'(', "'('")?;
        if self.peek() == Some(b')') {
            return Err(self.err(self.pos, "empty clause body"));
        }
        let mut terms = vec![self.term(vars)?];
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term(vars)?);
                }
                Some(b')') => {
                    self.pos += 1;
                    return Ok(terms);
                }
                _ => {
                    return Err(self.err(
                        self.pos,
                        format!("expected '+' or ')', found {}", self.describe(self.pos)),
                    ))
                }
            }
        }
    }

    fn polynomial(mut self) -> Result<FactoredPolynomial, ParseError> {
        if self.src.trim() == "1" {
            return Ok(FactoredPolynomial::one());
        }
        let mut vars = VarTable::new();
        let mut clauses: Vec<Vec<Monomial>> = Vec::new();
        let mut split: Option<usize> = None;
        let mut factors = 0usize;
        while let Some(b) = self.peek() {
            match b {
                b';' => {
                    if split.is_some() {
                        return Err(self.err(self.pos, "at most one ';' is allowed"));
                    }
                    split = Some(clauses.len());
                    self.pos += 1;
                }
                b'(' => clauses.push(self.clause(&mut vars)?),
                _ => {
                    return Err(self.err(
                        self.pos,
                        format!("expected '(' or ';', found {}", self.describe(self.pos)),
                    ))
                }
            }
            factors += 1;
        }
        if factors == 0 {
            return Err(self.err(self.pos, "expected '(' or ';', found end of input"));
        }
        let clauses = clauses.into_iter().map(Clause::new).collect();
        let poly = FactoredPolynomial::new(vars, clauses, split).expect("ids and split in range");
        Ok(poly)
    }
}

pub fn parse_polynomial(text: &str) -> Result<FactoredPolynomial, ParseError> {
    Parser::new(text).polynomial()
}

pub fn render_monomial(vars: &VarTable, mono: &Monomial) -> String {
    if mono.is_constant() {
        return "1".to_owned();
    }
    let mut out = String::new();
    for (i, (v, e)) in mono.iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        out.push_str(vars.name(v));
        if e != 1 {
            let _ = write!(out, "^{e}");
        }
    }
    out
}

/// Canonical text form, e.g. `(x1+x2*x3)(x2+x4)`. The empty product
/// renders as `1`; a clause with no terms renders as `()`, which does not
/// parse back.
pub fn render_polynomial(poly: &FactoredPolynomial) -> String {
    if poly.num_clauses() == 0 && poly.split().is_none() {
        return "1".to_owned();
    }
    let vars = poly.vars();
    let mut out = String::new();
    for (i, clause) in poly.clauses().iter().enumerate() {
        if poly.split() == Some(i) {
            out.push_str(if i == 0 { "; " } else { " ; " });
        }
        out.push('(');
        for (j, mono) in clause.monomials().enumerate() {
            if j > 0 {
                out.push('+');
            }
            out.push_str(&render_monomial(vars, mono));
        }
        out.push(')');
    }
    if poly.split() == Some(poly.num_clauses()) {
        out.push_str(if poly.num_clauses() == 0 { ";" } else { " ;" });
    }
    out
}

/// The chosen terms, one per clause, e.g. `y31 · y11*y12 · y22 · y42`.
pub fn render_witness_terms(poly: &FactoredPolynomial, w: &Witness) -> String {
    w.choices
        .iter()
        .zip(poly.clauses())
        .map(|(&i, c)| render_monomial(poly.vars(), c.term(i)))
        .collect::<Vec<_>>()
        .join(" · ")
}
