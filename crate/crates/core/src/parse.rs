//! Text syntax for elements and polynomials.
//!
//! Two forms are accepted:
//! * coefficient vectors, ascending and comma separated: `0,2,0,0,0,0,0,1`;
//! * symbolic expressions in `x` with `+ - * ^` and parentheses: `x^7+2x`,
//!   `3x^7+7x`, `x^7+tx^5+2t^2x^3+4t^3x`.
//!
//! In extension fields `t` denotes the modulus root, so coefficients can be
//! written in basis form (`3+2t`) or as powers (`t^2`).

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::poly::Poly;

const MAX_PARSED_DEGREE: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq)]
enum Tok {
    Num(u64),
    T,
    X,
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '0'..='9' => {
                let mut n: u64 = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    n = n
                        .checked_mul(10)
                        .and_then(|n| n.checked_add(chars[i].to_digit(10).unwrap() as u64))
                        .ok_or_else(|| Error::Parse("integer literal too large".into()))?;
                    i += 1;
                }
                out.push(Tok::Num(n));
                continue;
            }
            't' | 'θ' => out.push(Tok::T),
            'x' | 'X' => out.push(Tok::X),
            '+' => out.push(Tok::Plus),
            '-' | '−' => out.push(Tok::Minus),
            '*' | '·' => out.push(Tok::Star),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::Open),
            ')' => out.push(Tok::Close),
            other => return Err(Error::Parse(format!("unexpected character {:?} in {:?}", other, s))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    field: &'a Field,
    toks: Vec<Tok>,
    pos: usize,
}

type Dense = Vec<Fe>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn add(&self, a: &Dense, b: &Dense) -> Dense {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(Fe::ZERO);
                let y = b.get(i).copied().unwrap_or(Fe::ZERO);
                self.field.add(x, y)
            })
            .collect()
    }

    fn mul(&self, a: &Dense, b: &Dense) -> Result<Dense> {
        if a.is_empty() || b.is_empty() {
            return Ok(Vec::new());
        }
        if a.len() + b.len() - 2 > MAX_PARSED_DEGREE {
            return Err(Error::Parse("degree too large".into()));
        }
        let f = self.field;
        let mut out = vec![Fe::ZERO; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Dense> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
            }
            Some(Tok::Minus) => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.iter().map(|&c| self.field.neg(c)).collect();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = self.add(&acc, &t);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t: Dense = self.term()?.iter().map(|&c| self.field.neg(c)).collect();
                    acc = self.add(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Dense> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = self.mul(&acc, &f)?;
                }
                Some(Tok::Num(_)) | Some(Tok::T) | Some(Tok::X) | Some(Tok::Open) => {
                    let f = self.factor()?;
                    acc = self.mul(&acc, &f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Dense> {
        let base = self.atom()?;
        if self.peek() == Some(Tok::Caret) {
            self.bump();
            let Some(Tok::Num(e)) = self.bump() else {
                return Err(Error::Parse("expected integer exponent after '^'".into()));
            };
            let mut out = vec![Fe::ONE];
            for _ in 0..e {
                out = self.mul(&out, &base)?;
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Dense> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(vec![self.field.from_int((n % self.field.characteristic() as u64) as i64)]),
            Some(Tok::T) => {
                if self.field.degree() == 1 {
                    return Err(Error::Parse("'t' is only defined for extension fields".into()));
                }
                Ok(vec![self.field.theta()])
            }
            Some(Tok::X) => Ok(vec![Fe::ZERO, Fe::ONE]),
            Some(Tok::Open) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::Close) => Ok(inner),
                    _ => Err(Error::Parse("unbalanced parentheses".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {:?}", other))),
        }
    }
}

fn parse_dense(field: &Field, s: &str) -> Result<Dense> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { field, toks, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {:?}", s)));
    }
    Ok(out)
}

/// Parses a field element such as `5`, `3+2t` or `t^3`.
pub fn parse_element(field: &Field, s: &str) -> Result<Fe> {
    let d = parse_dense(field, s)?;
    if d.iter().skip(1).any(|c| !c.is_zero()) {
        return Err(Error::Parse(format!("{:?} is not a constant", s)));
    }
    Ok(d.first().copied().unwrap_or(Fe::ZERO))
}

/// Parses either polynomial form.
pub fn parse_poly<'f>(field: &'f Field, s: &str) -> Result<Poly<'f>> {
    let trimmed = s.trim().trim_start_matches('[').trim_end_matches(']');
    if trimmed.contains(',') {
        let coeffs = trimmed
            .split(',')
            .map(|part| parse_element(field, part))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Poly::new(field, coeffs));
    }
    Ok(Poly::new(field, parse_dense(field, trimmed)?))
}

/// Comma-separated ascending coefficients in basis form.
pub fn format_coeffs(field: &Field, coeffs: &[Fe]) -> String {
    coeffs.iter().map(|&c| field.format(c)).collect::<Vec<_>>().join(",")
}
