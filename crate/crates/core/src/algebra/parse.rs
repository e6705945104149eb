use std::sync::Arc;

use super::SuperPoly;
use crate::charts::Chart;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Num(s[st..i].to_string())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Syntax {
                offset: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    chart: &'a Arc<Chart>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.offset(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<C: Scalar>(&mut self) -> Result<SuperPoly<C>> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term::<C>()?;
        if neg {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<C: Scalar>(&mut self) -> Result<SuperPoly<C>> {
        let mut acc = self.factor::<C>()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<Option<i32>> {
        if !self.eat('^') {
            return Ok(None);
        }
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                let off = self.offset();
                self.pos += 1;
                let k: i32 = n.parse().map_err(|_| Error::Syntax {
                    offset: off,
                    msg: "exponent out of range".into(),
                })?;
                Ok(Some(if neg { -k } else { k }))
            }
            _ => self.err("expected an integer exponent after `^`"),
        }
    }

    fn factor<C: Scalar>(&mut self) -> Result<SuperPoly<C>> {
        let off = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut lit = n;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) => {
                            self.pos += 1;
                            lit = format!("{lit}/{d}");
                        }
                        _ => return self.err("expected a denominator after `/`"),
                    }
                }
                let c = C::parse_literal(&lit).ok_or(Error::Syntax {
                    offset: off,
                    msg: format!("bad number `{lit}`"),
                })?;
                let base = SuperPoly::constant(self.chart, c);
                match self.exponent()? {
                    Some(k) if k >= 0 => Ok(base.pow(k as u32)),
                    Some(_) => Err(Error::Syntax {
                        offset: off,
                        msg: "negative power of a number".into(),
                    }),
                    None => Ok(base),
                }
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = self.chart.index_of(&name).ok_or(Error::UnknownSymbol {
                    offset: off,
                    name: name.clone(),
                })?;
                let k = self.exponent()?.unwrap_or(1);
                SuperPoly::gen_pow(self.chart, i, k)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr::<C>()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                match self.exponent()? {
                    Some(k) if k >= 0 => Ok(inner.pow(k as u32)),
                    Some(_) => Err(Error::Syntax {
                        offset: off,
                        msg: "negative power of a parenthesized expression".into(),
                    }),
                    None => Ok(inner),
                }
            }
            // `a + -b`, `a*-b`
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.factor::<C>()?)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses the canonical textual form (and a little more: parentheses,
/// arbitrary factor order, powers of sums).
pub fn parse_poly<C: Scalar>(chart: &Arc<Chart>, s: &str) -> Result<SuperPoly<C>> {
    let toks = lex(s)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: s.len(),
        chart,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}
