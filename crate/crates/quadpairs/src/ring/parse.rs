//! Text form of ring elements.
//!
//! Elements are written with `+`, `-`, `^`, integer coefficients, and
//! variable names; multiplication may be implicit (`4x`), product-ring
//! elements are tuples (`(1,x)`), and `w` names the generator of GF(2^m).
//! The printer emits canonical output the parser round-trips.

use super::{Element, Ring, Value};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i128),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut it = s.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                it.next();
            }
            '+' => {
                it.next();
                out.push(Tok::Plus);
            }
            '-' | '−' => {
                it.next();
                out.push(Tok::Minus);
            }
            '*' | '·' => {
                it.next();
                out.push(Tok::Star);
            }
            '^' => {
                it.next();
                out.push(Tok::Caret);
            }
            '(' => {
                it.next();
                out.push(Tok::LParen);
            }
            ')' => {
                it.next();
                out.push(Tok::RParen);
            }
            ',' => {
                it.next();
                out.push(Tok::Comma);
            }
            '0'..='9' => {
                let mut n: i128 = 0;
                while let Some(&d) = it.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add(v as i128))
                            .ok_or_else(|| Error::Parse("integer literal too large".into()))?;
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Int(n));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        name.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(name));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Ast {
    Int(i128),
    Ident(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i64),
    Tuple(Vec<Ast>),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
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

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(found) if found == t => Ok(()),
            other => Err(Error::Parse(format!("expected {t:?}, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let rhs = self.term()?;
                    lhs = Ast::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.next();
                    let rhs = self.term()?;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    let rhs = self.unary()?;
                    lhs = Ast::Mul(Box::new(lhs), Box::new(rhs));
                }
                // implicit multiplication: 4x, 2(1+x), x y
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let rhs = self.unary()?;
                    lhs = Ast::Mul(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            let e = self.signed_int()?;
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let parenthesized = matches!(self.peek(), Some(Tok::LParen));
        if parenthesized {
            self.next();
        }
        let neg = matches!(self.peek(), Some(Tok::Minus));
        if neg {
            self.next();
        }
        let Some(Tok::Int(n)) = self.next() else {
            return Err(Error::Parse("exponent must be an integer".into()));
        };
        if parenthesized {
            self.expect(Tok::RParen)?;
        }
        let n = i64::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?;
        Ok(if neg { -n } else { n })
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(Ast::Int(n)),
            Some(Tok::Ident(s)) => Ok(Ast::Ident(s)),
            Some(Tok::LParen) => {
                let first = self.expr()?;
                if matches!(self.peek(), Some(Tok::Comma)) {
                    let mut parts = vec![first];
                    while matches!(self.peek(), Some(Tok::Comma)) {
                        self.next();
                        parts.push(self.expr()?);
                    }
                    self.expect(Tok::RParen)?;
                    Ok(Ast::Tuple(parts))
                } else {
                    self.expect(Tok::RParen)?;
                    Ok(first)
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn resolve_ident(ring: &Ring, name: &str) -> Result<Value> {
    match ring {
        Ring::Poly { base, var, .. } | Ring::Laurent { base, var, .. } => {
            if var == name {
                ring.monomial(1)
            } else {
                let inner = resolve_ident(base, name)?;
                if base.is_zero(&inner) {
                    Ok(Value::Int(0))
                } else {
                    let mut m = BTreeMap::new();
                    m.insert(0, inner);
                    Ok(Value::Poly(m))
                }
            }
        }
        Ring::Quot { base, .. } => {
            let raw = resolve_ident(base, name)?;
            ring.canon(raw)
        }
        Ring::Gf(m) if name == "w" => {
            if *m >= 2 {
                Ok(Value::Int(0b10))
            } else {
                Err(Error::Parse("GF(2) has no generator w".into()))
            }
        }
        Ring::Product(fs) => {
            let parts: Result<Vec<Value>> = fs.iter().map(|f| resolve_ident(f, name)).collect();
            Ok(Value::Tuple(parts?))
        }
        _ => Err(Error::Parse(format!("unknown identifier {name:?} in this ring"))),
    }
}

fn eval(ring: &Arc<Ring>, ast: &Ast) -> Result<Value> {
    match ast {
        Ast::Int(n) => Ok(ring.from_int(*n)),
        Ast::Ident(s) => resolve_ident(ring, s),
        Ast::Neg(a) => ring.neg(&eval(ring, a)?),
        Ast::Add(a, b) => ring.add(&eval(ring, a)?, &eval(ring, b)?),
        Ast::Sub(a, b) => {
            let bv = ring.neg(&eval(ring, b)?)?;
            ring.add(&eval(ring, a)?, &bv)
        }
        Ast::Mul(a, b) => ring.mul(&eval(ring, a)?, &eval(ring, b)?),
        Ast::Pow(a, e) => {
            let base = eval(ring, a)?;
            if *e >= 0 {
                let mut out = ring.one();
                for _ in 0..*e {
                    out = ring.mul(&out, &base)?;
                }
                Ok(out)
            } else {
                let inv = ring.try_inv(&base)?;
                let mut out = ring.one();
                for _ in 0..e.unsigned_abs() {
                    out = ring.mul(&out, &inv)?;
                }
                Ok(out)
            }
        }
        Ast::Tuple(parts) => {
            let Ring::Product(fs) = &**ring else {
                return Err(Error::Parse("tuple literal outside a product ring".into()));
            };
            if fs.len() != parts.len() {
                return Err(Error::Dimension(format!(
                    "tuple arity {} vs product arity {}",
                    parts.len(),
                    fs.len()
                )));
            }
            let vals: Result<Vec<Value>> =
                parts.iter().zip(fs).map(|(p, f)| eval(f, p)).collect();
            Ok(Value::Tuple(vals?))
        }
    }
}

pub fn parse_element(ring: &Arc<Ring>, text: &str) -> Result<Element> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let ast = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing tokens in {text:?}")));
    }
    let v = eval(ring, &ast)?;
    ring.element(v)
}

/// Render a canonical value; the output parses back to the same value.
pub fn print_value(ring: &Ring, v: &Value) -> String {
    match (ring, v) {
        (Ring::Int | Ring::ZMod(_), Value::Int(n)) => n.to_string(),
        (Ring::Gf(_), Value::Int(bits)) => {
            if *bits == 0 {
                return "0".into();
            }
            let mut terms = Vec::new();
            for b in 0..4 {
                if bits >> b & 1 == 1 {
                    terms.push(match b {
                        0 => "1".to_string(),
                        1 => "w".to_string(),
                        e => format!("w^{e}"),
                    });
                }
            }
            terms.join("+")
        }
        (Ring::Poly { base, var, .. } | Ring::Laurent { base, var, .. }, _) => {
            let map = match v {
                Value::Poly(m) => m.clone(),
                _ => return print_value(base, v),
            };
            if map.is_empty() {
                return "0".into();
            }
            let mut terms = Vec::new();
            for (e, c) in &map {
                let cs = print_value(base, c);
                let atomic = !cs[1..].contains(['+', '-']);
                let coeff = if atomic { cs.clone() } else { format!("({cs})") };
                let term = if *e == 0 {
                    coeff
                } else {
                    let xpart = if *e == 1 { var.clone() } else { format!("{var}^{e}") };
                    if cs == "1" {
                        xpart
                    } else if cs == "-1" {
                        format!("-{xpart}")
                    } else {
                        format!("{coeff}{xpart}")
                    }
                };
                terms.push(term);
            }
            terms.join("+").replace("+-", "-")
        }
        (Ring::Quot { base, .. }, _) => print_value(base, v),
        (Ring::Product(fs), Value::Tuple(t)) => {
            let parts: Vec<String> = t.iter().zip(fs).map(|(c, f)| print_value(f, c)).collect();
            format!("({})", parts.join(","))
        }
        _ => format!("{v:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn zx_mod_4x() -> Arc<Ring> {
        Ring::quot(Ring::poly(Ring::int(), "x"), "4x").unwrap()
    }

    #[test]
    fn canonicalization_examples() {
        // 5x reduces to x in Z[x]/<4x>
        let r = zx_mod_4x();
        assert_eq!(r.parse("5x").unwrap(), r.parse("x").unwrap());
        // 6 + 4x^-1 reduces to 2 over Z/4[x,1/x]
        let l = Ring::laurent(Ring::zmod(4), "x");
        assert_eq!(l.parse("6+4x^-1").unwrap(), l.parse("2").unwrap());
        // w*w = w+1 in GF(4)
        let g = Ring::gf(2);
        assert_eq!(g.parse("w*w").unwrap(), g.parse("w+1").unwrap());
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let r = zx_mod_4x();
        let e = r.parse("7+13x+6x^2").unwrap();
        let again = r.element(e.v.clone()).unwrap();
        assert_eq!(e, again);
    }

    #[test]
    fn degree_truncate_examples() {
        let p = Ring::poly(Ring::int(), "x");
        let e = p.parse("x^2+2x+3").unwrap();
        assert_eq!(e.degree_truncate(1).unwrap(), p.parse("2x+3").unwrap());
        let l = Ring::laurent(Ring::zmod(4), "x");
        let e = l.parse("x^-2+1").unwrap();
        assert_eq!(e.degree_truncate(1).unwrap(), l.parse("1").unwrap());
        assert_eq!(p.parse("5").unwrap().degree_truncate(0).unwrap(), p.parse("5").unwrap());
    }

    #[test]
    fn degree_overflow_errors() {
        let p = Ring::poly_bounded(Ring::int(), "x", 4);
        let a = p.parse("x^3").unwrap();
        assert!(matches!(a.mul(&a), Err(crate::error::Error::DegreeOverflow { .. })));
    }

    #[test]
    fn print_round_trips() {
        let r = zx_mod_4x();
        for text in ["5+x", "3x^2+2x", "-7", "1+3x+2x^2"] {
            let e = r.parse(text).unwrap();
            let printed = e.to_string();
            assert_eq!(r.parse(&printed).unwrap(), e, "{text} -> {printed}");
        }
        let prod = Ring::product(vec![
            Ring::quot(Ring::poly(Ring::gf(2), "x"), "x^2+1").unwrap(),
            Ring::quot(Ring::poly(Ring::gf(2), "x"), "x^2+1").unwrap(),
        ]);
        let e = prod.parse("(1+x,x)").unwrap();
        assert_eq!(prod.parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn tuple_arity_checked() {
        let prod = Ring::product(vec![Ring::gf(2), Ring::gf(2)]);
        assert!(prod.parse("(1,0,1)").is_err());
    }

    #[test]
    fn two_torsion_in_z_x_mod_4x() {
        // 2b = 0 iff b has zero constant term and all tail coefficients even;
        // exhaustive over tail coefficients 0..3 up to degree 3 and small
        // constant terms.
        let r = zx_mod_4x();
        let two = r.int_elem(2);
        for c0 in -4i128..=4 {
            for c1 in 0i128..4 {
                for c2 in 0i128..4 {
                    for c3 in 0i128..4 {
                        let e = r
                            .parse(&format!("{c0}+{c1}x+{c2}x^2+{c3}x^3"))
                            .unwrap();
                        let doubled = two.mul(&e).unwrap();
                        let expect_zero = c0 == 0 && c1 % 2 == 0 && c2 % 2 == 0 && c3 % 2 == 0;
                        assert_eq!(doubled.is_zero(), expect_zero, "b = {e}");
                    }
                }
            }
        }
    }
}
