//! Parser for the polynomial expression grammar used in instance files:
//! identifiers, integer literals, `+`, `-`, `*`, `^`, parentheses.

use crate::arith::FieldOps;
use crate::error::{Error, Result};
use crate::poly::MPoly;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v: i64 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("integer literal {s} out of range")))?;
                toks.push(Tok::Int(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                toks.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character {other:?} in polynomial"
                )))
            }
        }
    }
    Ok(toks)
}

struct Parser<'a, F: FieldOps> {
    toks: Vec<Tok>,
    pos: usize,
    ctx: &'a F,
    nvars: usize,
    resolve: &'a dyn Fn(&str) -> Option<MPoly<F>>,
}

impl<'a, F: FieldOps> Parser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<MPoly<F>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(self.ctx, &t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(self.ctx, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly<F>> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(self.ctx, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly<F>> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Int(e)) if e >= 0 => Ok(base.pow(self.ctx, e as u32)),
                other => Err(Error::Parse(format!(
                    "expected nonnegative exponent after ^, got {other:?}"
                ))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly<F>> {
        match self.next() {
            Some(Tok::Ident(name)) => (self.resolve)(&name)
                .ok_or_else(|| Error::Parse(format!("unknown identifier {name:?}"))),
            Some(Tok::Int(v)) => Ok(MPoly::constant(
                self.ctx,
                self.nvars,
                self.ctx.from_int(v),
            )),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse("missing closing parenthesis".into())),
                }
            }
            Some(Tok::Minus) => {
                let f = self.factor()?;
                Ok(f.neg(self.ctx))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse a polynomial expression; identifiers are resolved by the caller
/// (ring variables, base-field generators).
pub fn parse_poly<F: FieldOps>(
    ctx: &F,
    nvars: usize,
    src: &str,
    resolve: &dyn Fn(&str) -> Option<MPoly<F>>,
) -> Result<MPoly<F>> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial expression".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        ctx,
        nvars,
        resolve,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing tokens after position {}",
            p.pos
        )));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gf::GF;
    use crate::arith::Prime;
    use crate::poly::Mono;

    #[test]
    fn parse_examples() {
        let f = GF::prime_field(Prime::new(7).unwrap());
        let names = ["x".to_string(), "y".to_string()];
        let resolve = |s: &str| -> Option<MPoly<GF>> {
            names
                .iter()
                .position(|n| n == s)
                .map(|i| MPoly::var(&f, 2, i))
        };
        let p = parse_poly(&f, 2, "x*y - 2*y^2 + (x - 1)^2", &resolve).unwrap();
        // x*y - 2y^2 + x^2 - 2x + 1
        assert_eq!(p.coeff_of(&Mono(vec![1, 1])), Some(&f.from_int(1)));
        assert_eq!(p.coeff_of(&Mono(vec![0, 2])), Some(&f.from_int(-2)));
        assert_eq!(p.coeff_of(&Mono(vec![2, 0])), Some(&f.from_int(1)));
        assert_eq!(p.coeff_of(&Mono(vec![1, 0])), Some(&f.from_int(-2)));
        assert_eq!(p.coeff_of(&Mono(vec![0, 0])), Some(&f.from_int(1)));
        assert!(parse_poly(&f, 2, "x + w", &resolve).is_err());
        assert!(parse_poly(&f, 2, "x +", &resolve).is_err());
    }
}
