//! Tiny recursive-descent reader for polynomial expressions in `x, y, z`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::curve::Mono;
use super::GeomError;
use crate::exact_fields::{Elem, FieldTower, Rational};

type P = BTreeMap<Mono, Elem>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>, GeomError> {
    let mut out = Vec::new();
    let cs: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[s..i].iter().collect();
            out.push(Tok::Num(t.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[s..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(GeomError::Malformed(format!("unexpected character {c:?} in expression")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    tower: &'a FieldTower,
}

fn add(a: P, b: P) -> P {
    let mut a = a;
    for (m, c) in b {
        let e = match a.remove(&m) {
            Some(x) => &x + &c,
            None => c,
        };
        if !e.is_zero() {
            a.insert(m, e);
        }
    }
    a
}

fn mul(a: &P, b: &P) -> P {
    let mut out = P::new();
    for (m1, c1) in a {
        for (m2, c2) in b {
            let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]];
            out = add(out, P::from([(m, c1 * c2)]));
        }
    }
    out
}

fn scale(a: &P, q: &Elem) -> P {
    a.iter().map(|(m, c)| (*m, c * q)).filter(|(_, c)| !c.is_zero()).collect()
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<P, GeomError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = add(acc, self.term()?);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = add(acc, scale(&t, &self.tower.int(-1)));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<P, GeomError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = mul(&acc, &self.unary()?);
            } else if self.eat('/') {
                let d = match self.toks.get(self.pos) {
                    Some(Tok::Num(n)) => n.clone(),
                    _ => return Err(GeomError::Malformed("division only by integer literals".into())),
                };
                self.pos += 1;
                let inv = Rational::new(BigInt::from(1), d);
                acc = scale(&acc, &self.tower.rational(&inv));
            } else if matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('('))) {
                acc = mul(&acc, &self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<P, GeomError> {
        if self.eat('-') {
            let t = self.unary()?;
            return Ok(scale(&t, &self.tower.int(-1)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<P, GeomError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => n.clone(),
                _ => return Err(GeomError::Malformed("exponent must be an integer literal".into())),
            };
            self.pos += 1;
            let e: u32 = e.try_into().map_err(|_| GeomError::Malformed("exponent too large".into()))?;
            let mut acc = P::from([([0, 0, 0], self.tower.one())]);
            for _ in 0..e {
                acc = mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<P, GeomError> {
        let tok = self.peek().cloned().ok_or(GeomError::Malformed("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => {
                let c = self.tower.rational(&Rational::from_integer(n));
                Ok(if c.is_zero() { P::new() } else { P::from([([0, 0, 0], c)]) })
            }
            Tok::Ident(s) => {
                let m = match s.as_str() {
                    "x" => Some([1, 0, 0]),
                    "y" => Some([0, 1, 0]),
                    "z" => Some([0, 0, 1]),
                    _ => None,
                };
                if let Some(m) = m {
                    return Ok(P::from([(m, self.tower.one())]));
                }
                for lvl in 1..=self.tower.depth() {
                    if self.tower.level_name(lvl) == s {
                        return Ok(P::from([([0, 0, 0], self.tower.gen_at(lvl))]));
                    }
                }
                Err(GeomError::Malformed(format!("unknown symbol {s:?}")))
            }
            Tok::Op('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(GeomError::Malformed("missing ')'".into()));
                }
                Ok(e)
            }
            Tok::Op(c) => Err(GeomError::Malformed(format!("unexpected {c:?}"))),
        }
    }
}

pub(crate) fn parse_poly(tower: &FieldTower, src: &str) -> Result<P, GeomError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        tower,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(GeomError::Malformed(format!("trailing input in {src:?}")));
    }
    Ok(out)
}

/// Parse a tower element written in terms of level names, e.g. `"-w - 1"`.
pub fn parse_elem(tower: &FieldTower, src: &str) -> Result<Elem, GeomError> {
    let p = parse_poly(tower, src)?;
    if p.keys().any(|m| *m != [0, 0, 0]) {
        return Err(GeomError::Malformed(format!("{src:?} is not a constant")));
    }
    Ok(p.get(&[0, 0, 0]).cloned().unwrap_or_else(|| tower.zero()))
}
