//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := coeff ('*'? factor)* | factor ('*'? factor)*
//! factor := ident ('^' uint)?
//! coeff  := uint ('/' uint)?
//! ident  := letter (letter | digit | '_')*
//! ```
//!
//! Whitespace is insignificant. Multiplication may be implicit between the
//! coefficient and a factor (`2z1^3`) and between factors (`z1 z2`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::{ExponentVector, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: &'static str,
        found: String,
    },
    #[error("negative exponent at position {position}")]
    NegativeExponent { position: usize },
    #[error("exponent too large at position {position}")]
    ExponentOverflow { position: usize },
    #[error("zero denominator at position {position}")]
    ZeroDenominator { position: usize },
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("variable `{0}` listed twice")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Vec<String>,
    fixed: bool,
}

type RawTerm = (Vec<(usize, u32)>, BigRational);

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn found(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("'{}'", c as char),
            None => "end of input".to_string(),
        }
    }

    fn syntax(&mut self, expected: &'static str) -> ParseError {
        let found = self.found();
        ParseError::Syntax {
            position: self.pos,
            expected,
            found,
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (exps, mut c) = self.term()?;
            if negative {
                c = -c;
            }
            terms.push((exps, c));
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                None => return Ok(terms),
                Some(_) => return Err(self.syntax("'+', '-', '*' or a factor")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        let mut coeff = BigRational::from_integer(BigInt::from(1));
        let mut exps = Vec::new();
        let mut need_factor = false;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => coeff = self.coeff()?,
            Some(c) if c.is_ascii_alphabetic() => {
                exps.push(self.factor()?);
            }
            _ => return Err(self.syntax("a coefficient or a variable")),
        }
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    need_factor = true;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    exps.push(self.factor()?);
                    need_factor = false;
                }
                _ if need_factor => return Err(self.syntax("a variable")),
                _ => return Ok((exps, coeff)),
            }
        }
    }

    fn coeff(&mut self) -> Result<BigRational, ParseError> {
        let num: BigInt = self.digits().unwrap().parse().unwrap();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = {
                self.skip_ws();
                self.pos
            };
            let den: BigInt = self
                .digits()
                .ok_or_else(|| self.syntax("a denominator"))?
                .parse()
                .unwrap();
            if den.is_zero() {
                return Err(ParseError::ZeroDenominator { position: at });
            }
            return Ok(BigRational::new(num, den));
        }
        Ok(BigRational::from_integer(num))
    }

    fn factor(&mut self) -> Result<(usize, u32), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let index = match self.vars.iter().position(|v| v == name) {
            Some(i) => i,
            None if self.fixed => {
                return Err(ParseError::UnknownVariable {
                    name: name.to_string(),
                    position: start,
                })
            }
            None => {
                self.vars.push(name.to_string());
                self.vars.len() - 1
            }
        };
        let mut exp = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            if self.peek() == Some(b'-') {
                return Err(ParseError::NegativeExponent { position: self.pos });
            }
            let at = self.pos;
            let d = self.digits().ok_or_else(|| self.syntax("an exponent"))?;
            exp = d
                .parse()
                .map_err(|_| ParseError::ExponentOverflow { position: at })?;
        }
        Ok((index, exp))
    }
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses `text` into a canonical sparse polynomial.
///
/// Without `variable_order` the variables are numbered by first appearance;
/// with it, the ambient variable set is exactly that list and any other
/// identifier is an error.
pub fn parse(text: &str, variable_order: Option<&[String]>) -> Result<Polynomial, ParseError> {
    let mut vars = Vec::new();
    if let Some(order) = variable_order {
        for v in order {
            if !valid_ident(v) {
                return Err(ParseError::InvalidVariableName(v.clone()));
            }
            if vars.contains(v) {
                return Err(ParseError::DuplicateVariable(v.clone()));
            }
            vars.push(v.clone());
        }
    }
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
        fixed: variable_order.is_some(),
    };
    let raw = parser.expr()?;
    let n = parser.vars.len();
    let mut p = Polynomial::zero(parser.vars);
    for (exps, c) in raw {
        let mut e = vec![0u32; n];
        for (i, k) in exps {
            e[i] = e[i]
                .checked_add(k)
                .ok_or(ParseError::ExponentOverflow { position: 0 })?;
        }
        p.add_term(ExponentVector(e), c);
    }
    Ok(p)
}
