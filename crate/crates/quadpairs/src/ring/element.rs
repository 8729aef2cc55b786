//! Canonical element values and ring arithmetic.

use super::{gf_inv, gf_mul, QuotShape, Ring};
use crate::error::{Error, Result};
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Raw coefficient data of a ring element. Interpretation depends on the
/// descriptor: `Int` carries integers, residues, or GF bit patterns; `Poly`
/// is sparse exponent-to-coefficient data shared by the polynomial, Laurent,
/// and quotient layers; `Tuple` holds product components.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Value {
    Int(i128),
    Poly(BTreeMap<i64, Value>),
    Tuple(Vec<Value>),
}

pub(crate) fn poly_value(map: BTreeMap<i64, Value>) -> Value {
    if map.is_empty() {
        Value::Int(0)
    } else {
        Value::Poly(map)
    }
}

/// An element paired with its ring. All arithmetic canonicalizes.
#[derive(Debug, Clone)]
pub struct Element {
    pub ring: Arc<Ring>,
    pub v: Value,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.v == other.v
    }
}
impl Eq for Element {}

impl Element {
    fn guard(&self, other: &Element) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self, other)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.guard(other)?;
        Ok(Element { ring: self.ring.clone(), v: self.ring.add(&self.v, &other.v)? })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.guard(other)?;
        let n = self.ring.neg(&other.v)?;
        Ok(Element { ring: self.ring.clone(), v: self.ring.add(&self.v, &n)? })
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.guard(other)?;
        Ok(Element { ring: self.ring.clone(), v: self.ring.mul(&self.v, &other.v)? })
    }

    pub fn neg(&self) -> Result<Element> {
        Ok(Element { ring: self.ring.clone(), v: self.ring.neg(&self.v)? })
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.v)
    }

    pub fn is_one(&self) -> bool {
        self.v == self.ring.one()
    }

    pub fn pow(&self, e: u32) -> Result<Element> {
        let mut out = self.ring.one_elem();
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Structural inverse for easy unit shapes: integer units, residue and
    /// field units, constant units of polynomial layers, unit monomials of
    /// Laurent layers, componentwise tuples. Units of quotient towers beyond
    /// these shapes are inverted by the linear-algebra layer instead.
    pub fn try_inv(&self) -> Result<Element> {
        Ok(Element { ring: self.ring.clone(), v: self.ring.try_inv(&self.v)? })
    }

    /// Drop every monomial whose total layer degree exceeds `d` in absolute
    /// value. Only meaningful for descriptors with a degree filtration.
    pub fn degree_truncate(&self, d: i64) -> Result<Element> {
        if !self.ring.is_filtered() {
            return Err(Error::Unsupported(
                "degree_truncate needs a polynomial or Laurent descriptor".into(),
            ));
        }
        fn go(r: &Ring, v: &Value, d: i64) -> Value {
            match (r, v) {
                (Ring::Poly { .. } | Ring::Laurent { .. }, Value::Poly(map)) => {
                    let kept: BTreeMap<i64, Value> =
                        map.iter().filter(|(e, _)| e.abs() <= d).map(|(e, c)| (*e, c.clone())).collect();
                    poly_value(kept)
                }
                (Ring::Quot { base, .. }, v) => go(base, v, d),
                _ => v.clone(),
            }
        }
        let v = go(&self.ring, &self.v, d);
        self.ring.element(v)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::parse::print_value(&self.ring, &self.v))
    }
}

impl Ring {
    pub fn zero(&self) -> Value {
        match self {
            Ring::Product(fs) => Value::Tuple(fs.iter().map(|f| f.zero()).collect()),
            _ => Value::Int(0),
        }
    }

    pub fn one(&self) -> Value {
        match self {
            Ring::Product(fs) => Value::Tuple(fs.iter().map(|f| f.one()).collect()),
            Ring::Quot { base, .. } => base.one(),
            Ring::Poly { base, .. } | Ring::Laurent { base, .. } => {
                let mut m = BTreeMap::new();
                m.insert(0, base.one());
                Value::Poly(m)
            }
            _ => Value::Int(1),
        }
    }

    pub fn is_zero(&self, v: &Value) -> bool {
        match v {
            Value::Int(0) => true,
            Value::Int(_) => false,
            Value::Poly(m) => m.is_empty(),
            Value::Tuple(t) => match self {
                Ring::Product(fs) => t.iter().zip(fs).all(|(c, f)| f.is_zero(c)),
                _ => false,
            },
        }
    }

    pub fn from_int(&self, n: i128) -> Value {
        match self {
            Ring::Int => Value::Int(n),
            Ring::ZMod(m) => Value::Int(n.rem_euclid(*m as i128)),
            Ring::Gf(_) => Value::Int(n.rem_euclid(2)),
            Ring::Poly { base, .. } | Ring::Laurent { base, .. } => {
                let c = base.from_int(n);
                if base.is_zero(&c) {
                    Value::Int(0)
                } else {
                    let mut m = BTreeMap::new();
                    m.insert(0, c);
                    Value::Poly(m)
                }
            }
            Ring::Quot { base, .. } => {
                let raw = base.from_int(n);
                self.canon(raw).expect("constants reduce in every supported quotient")
            }
            Ring::Product(fs) => Value::Tuple(fs.iter().map(|f| f.from_int(n)).collect()),
        }
    }

    /// The monomial `x^e` of a polynomial or Laurent layer.
    pub fn monomial(&self, e: i64) -> Result<Value> {
        match self {
            Ring::Poly { base, .. } | Ring::Laurent { base, .. } => {
                let mut m = BTreeMap::new();
                m.insert(e, base.one());
                self.canon(Value::Poly(m))
            }
            Ring::Quot { base, .. } => {
                let raw = base.monomial(e)?;
                self.canon(raw)
            }
            _ => Err(Error::Unsupported("monomial of a non-polynomial ring".into())),
        }
    }

    /// Canonicalize raw coefficient data. Idempotent.
    pub fn canon(&self, v: Value) -> Result<Value> {
        match self {
            Ring::Int => match v {
                Value::Int(_) => Ok(v),
                _ => Err(Error::Parse("integer ring expects an integer value".into())),
            },
            Ring::ZMod(n) => match v {
                Value::Int(k) => Ok(Value::Int(k.rem_euclid(*n as i128))),
                _ => Err(Error::Parse("residue ring expects an integer value".into())),
            },
            Ring::Gf(m) => match v {
                // values are bit patterns; integer literals go through from_int
                Value::Int(k) if (0..1i128 << m).contains(&k) => Ok(Value::Int(k)),
                _ => Err(Error::Parse("field expects an in-range bit pattern".into())),
            },
            Ring::Poly { base, .. } | Ring::Laurent { base, .. } => {
                let map = match v {
                    Value::Poly(m) => m,
                    Value::Int(0) => BTreeMap::new(),
                    Value::Int(k) => {
                        let mut m = BTreeMap::new();
                        m.insert(0, Value::Int(k));
                        m
                    }
                    Value::Tuple(_) => {
                        return Err(Error::Parse("polynomial ring expects coefficient data".into()))
                    }
                };
                let lo = if matches!(self, Ring::Poly { .. }) { 0 } else { i64::MIN };
                let bound = self.layer_bound().expect("polynomial layer has a bound");
                let mut out = BTreeMap::new();
                for (e, c) in map {
                    if e < lo {
                        return Err(Error::Parse(format!("negative exponent {e} in polynomial ring")));
                    }
                    if e.abs() > bound {
                        return Err(Error::DegreeOverflow { degree: e, bound });
                    }
                    let c = base.canon(c)?;
                    if !base.is_zero(&c) {
                        out.insert(e, c);
                    }
                }
                Ok(poly_value(out))
            }
            Ring::Quot { base, modulus } => {
                let raw = match v {
                    Value::Int(k) => {
                        // allow scalar promotion before reduction
                        match &**base {
                            Ring::Poly { base: inner, .. } => {
                                let c = inner.canon(Value::Int(k))?;
                                if inner.is_zero(&c) {
                                    Value::Int(0)
                                } else {
                                    let mut m = BTreeMap::new();
                                    m.insert(0, c);
                                    Value::Poly(m)
                                }
                            }
                            _ => Value::Int(k),
                        }
                    }
                    other => other,
                };
                let reduced = self.reduce_quot(raw, modulus)?;
                base.canon(reduced)
            }
            Ring::Product(fs) => {
                let Value::Tuple(parts) = v else {
                    return Err(Error::Parse("product ring expects a tuple value".into()));
                };
                if parts.len() != fs.len() {
                    return Err(Error::Dimension(format!(
                        "tuple arity {} vs product arity {}",
                        parts.len(),
                        fs.len()
                    )));
                }
                let canon: Result<Vec<Value>> =
                    parts.into_iter().zip(fs).map(|(p, f)| f.canon(p)).collect();
                Ok(Value::Tuple(canon?))
            }
        }
    }

    fn reduce_quot(&self, raw: Value, modulus: &Value) -> Result<Value> {
        let Ring::Quot { base, .. } = self else { unreachable!() };
        let Ring::Poly { base: inner, .. } = &**base else { unreachable!() };
        match self.quot_shape()? {
            QuotShape::Monic { k } => {
                let Value::Poly(gen) = modulus else { unreachable!() };
                let mut map = match base.canon_unbounded(raw)? {
                    Value::Poly(m) => m,
                    Value::Int(0) => BTreeMap::new(),
                    other => {
                        let mut m = BTreeMap::new();
                        m.insert(0, inner.canon(other)?);
                        m
                    }
                };
                while let Some((&d, _)) = map.iter().next_back() {
                    if d < k {
                        break;
                    }
                    let lead = map.remove(&d).expect("entry present");
                    // subtract lead * x^(d-k) * gen; the leading term cancels
                    for (ge, gc) in gen.iter() {
                        if *ge == k {
                            continue;
                        }
                        let e = ge + (d - k);
                        let prod = inner.mul(gc, &lead)?;
                        let cur = map.remove(&e).unwrap_or(Value::Int(0));
                        let nc = inner.add(&cur, &inner.neg(&prod)?)?;
                        if !inner.is_zero(&nc) {
                            map.insert(e, nc);
                        }
                    }
                }
                Ok(poly_value(map))
            }
            QuotShape::MonomialInt { k, c } => {
                let map = match base.canon_unbounded(raw)? {
                    Value::Poly(m) => m,
                    Value::Int(0) => BTreeMap::new(),
                    other => {
                        let mut m = BTreeMap::new();
                        m.insert(0, inner.canon(other)?);
                        m
                    }
                };
                let mut out = BTreeMap::new();
                for (e, coeff) in map.iter() {
                    let v = if *e >= k {
                        match coeff {
                            Value::Int(x) => Value::Int(x.rem_euclid(c)),
                            _ => return Err(Error::Unsupported("integer coefficients expected".into())),
                        }
                    } else {
                        coeff.clone()
                    };
                    if !inner.is_zero(&v) {
                        out.insert(*e, v);
                    }
                }
                Ok(poly_value(out))
            }
        }
    }

    /// Canonicalize without enforcing the degree bound; used for
    /// intermediate products inside quotient reduction.
    fn canon_unbounded(&self, v: Value) -> Result<Value> {
        match self {
            Ring::Poly { base, .. } | Ring::Laurent { base, .. } => {
                let map = match v {
                    Value::Poly(m) => m,
                    Value::Int(0) => return Ok(Value::Int(0)),
                    Value::Int(k) => {
                        let mut m = BTreeMap::new();
                        m.insert(0, Value::Int(k));
                        m
                    }
                    Value::Tuple(_) => {
                        return Err(Error::Parse("polynomial ring expects coefficient data".into()))
                    }
                };
                let mut out = BTreeMap::new();
                for (e, c) in map {
                    let c = base.canon(c)?;
                    if !base.is_zero(&c) {
                        out.insert(e, c);
                    }
                }
                Ok(poly_value(out))
            }
            _ => self.canon(v),
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Result<Value> {
        let v = self.add_raw(a, b)?;
        self.canon(v)
    }

    fn add_raw(&self, a: &Value, b: &Value) -> Result<Value> {
        match self {
            Ring::Int | Ring::ZMod(_) => match (a, b) {
                (Value::Int(x), Value::Int(y)) => x
                    .checked_add(*y)
                    .map(Value::Int)
                    .ok_or_else(|| Error::Arithmetic("integer add".into())),
                _ => Err(Error::Parse("scalar expected".into())),
            },
            Ring::Gf(_) => match (a, b) {
                (Value::Int(x), Value::Int(y)) => Ok(Value::Int(x ^ y)),
                _ => Err(Error::Parse("field scalar expected".into())),
            },
            Ring::Poly { base, .. } | Ring::Laurent { base, .. } => {
                let (ma, mb) = (as_poly(a), as_poly(b));
                let mut out = ma.clone();
                for (e, c) in mb.iter() {
                    let cur = out.remove(e).unwrap_or(Value::Int(0));
                    let s = base.add(&cur, c)?;
                    if !base.is_zero(&s) {
                        out.insert(*e, s);
                    }
                }
                Ok(poly_value(out))
            }
            Ring::Quot { base, .. } => base.add_raw(a, b),
            Ring::Product(fs) => {
                let (Value::Tuple(ta), Value::Tuple(tb)) = (a, b) else {
                    return Err(Error::Parse("tuple expected".into()));
                };
                let parts: Result<Vec<Value>> =
                    ta.iter().zip(tb).zip(fs).map(|((x, y), f)| f.add(x, y)).collect();
                Ok(Value::Tuple(parts?))
            }
        }
    }

    pub fn neg(&self, a: &Value) -> Result<Value> {
        let v = match self {
            Ring::Int | Ring::ZMod(_) => match a {
                Value::Int(x) => Value::Int(-x),
                _ => return Err(Error::Parse("scalar expected".into())),
            },
            Ring::Gf(_) => a.clone(),
            Ring::Poly { base, .. } | Ring::Laurent { base, .. } => {
                let mut out = BTreeMap::new();
                for (e, c) in as_poly(a).iter() {
                    out.insert(*e, base.neg(c)?);
                }
                poly_value(out)
            }
            Ring::Quot { base, .. } => base.neg(a)?,
            Ring::Product(fs) => {
                let Value::Tuple(t) = a else { return Err(Error::Parse("tuple expected".into())) };
                let parts: Result<Vec<Value>> = t.iter().zip(fs).map(|(x, f)| f.neg(x)).collect();
                Value::Tuple(parts?)
            }
        };
        self.canon(v)
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Result<Value> {
        let v = self.mul_raw(a, b)?;
        self.canon(v)
    }

    fn mul_raw(&self, a: &Value, b: &Value) -> Result<Value> {
        match self {
            Ring::Int | Ring::ZMod(_) => match (a, b) {
                (Value::Int(x), Value::Int(y)) => x
                    .checked_mul(*y)
                    .map(Value::Int)
                    .ok_or_else(|| Error::Arithmetic("integer mul".into())),
                _ => Err(Error::Parse("scalar expected".into())),
            },
            Ring::Gf(m) => match (a, b) {
                (Value::Int(x), Value::Int(y)) => Ok(Value::Int(gf_mul(*m, *x as u16, *y as u16) as i128)),
                _ => Err(Error::Parse("field scalar expected".into())),
            },
            Ring::Poly { base, .. } | Ring::Laurent { base, .. } => {
                let (ma, mb) = (as_poly(a), as_poly(b));
                let mut out: BTreeMap<i64, Value> = BTreeMap::new();
                for (ea, ca) in ma.iter() {
                    for (eb, cb) in mb.iter() {
                        let e = ea
                            .checked_add(*eb)
                            .ok_or_else(|| Error::Arithmetic("exponent add".into()))?;
                        let p = base.mul(ca, cb)?;
                        let cur = out.remove(&e).unwrap_or(Value::Int(0));
                        let s = base.add(&cur, &p)?;
                        if !base.is_zero(&s) {
                            out.insert(e, s);
                        }
                    }
                }
                Ok(poly_value(out))
            }
            Ring::Quot { base, .. } => base.mul_raw(a, b),
            Ring::Product(fs) => {
                let (Value::Tuple(ta), Value::Tuple(tb)) = (a, b) else {
                    return Err(Error::Parse("tuple expected".into()));
                };
                let parts: Result<Vec<Value>> =
                    ta.iter().zip(tb).zip(fs).map(|((x, y), f)| f.mul(x, y)).collect();
                Ok(Value::Tuple(parts?))
            }
        }
    }

    pub(crate) fn try_inv(&self, a: &Value) -> Result<Value> {
        let fail = || Error::NotInvertible(format!("{:?}", a));
        match self {
            Ring::Int => match a {
                Value::Int(1) => Ok(Value::Int(1)),
                Value::Int(-1) => Ok(Value::Int(-1)),
                _ => Err(fail()),
            },
            Ring::ZMod(n) => match a {
                Value::Int(x) => {
                    let (g, inv, _) = ext_gcd(x.rem_euclid(*n as i128), *n as i128);
                    if g == 1 {
                        Ok(Value::Int(inv.rem_euclid(*n as i128)))
                    } else {
                        Err(fail())
                    }
                }
                _ => Err(fail()),
            },
            Ring::Gf(m) => match a {
                Value::Int(x) => gf_inv(*m, *x as u16).map(|y| Value::Int(y as i128)).ok_or_else(fail),
                _ => Err(fail()),
            },
            Ring::Poly { base, .. } => match a {
                Value::Poly(map) if map.len() == 1 && map.contains_key(&0) => {
                    let c = base.try_inv(&map[&0])?;
                    let mut m = BTreeMap::new();
                    m.insert(0, c);
                    Ok(Value::Poly(m))
                }
                _ => Err(fail()),
            },
            Ring::Laurent { base, .. } => match a {
                Value::Poly(map) if map.len() == 1 => {
                    let (e, c) = map.iter().next().expect("single term");
                    let ci = base.try_inv(c)?;
                    let mut m = BTreeMap::new();
                    m.insert(-e, ci);
                    self.canon(Value::Poly(m))
                }
                _ => Err(fail()),
            },
            Ring::Quot { .. } => {
                // structural fallback: constants only; towers go through the
                // linear solver in `linalg`
                match a {
                    Value::Poly(map) if map.len() == 1 && map.contains_key(&0) => {
                        let Ring::Quot { base, .. } = self else { unreachable!() };
                        let Ring::Poly { base: inner, .. } = &**base else { unreachable!() };
                        let c = inner.try_inv(&map[&0])?;
                        let mut m = BTreeMap::new();
                        m.insert(0, c);
                        self.canon(Value::Poly(m))
                    }
                    Value::Int(x) => {
                        let Ring::Quot { base, .. } = self else { unreachable!() };
                        let Ring::Poly { base: inner, .. } = &**base else { unreachable!() };
                        let c = inner.try_inv(&Value::Int(*x))?;
                        self.canon(c)
                    }
                    _ => Err(fail()),
                }
            }
            Ring::Product(fs) => {
                let Value::Tuple(t) = a else { return Err(fail()) };
                let parts: Result<Vec<Value>> = t.iter().zip(fs).map(|(x, f)| f.try_inv(x)).collect();
                Ok(Value::Tuple(parts?))
            }
        }
    }

    /// A random canonical element. `span` controls coefficient size over the
    /// integers and the sparse degree window of polynomial layers.
    pub fn random<R: Rng>(&self, rng: &mut R, span: i64) -> Value {
        match self {
            Ring::Int => Value::Int(rng.gen_range(-span.max(1)..=span.max(1)) as i128),
            Ring::ZMod(n) => Value::Int(rng.gen_range(0..*n) as i128),
            Ring::Gf(m) => Value::Int(rng.gen_range(0..1u32 << m) as i128),
            Ring::Poly { base, .. } | Ring::Laurent { base, .. } => {
                let lo = if matches!(self, Ring::Poly { .. }) { 0 } else { -span.min(2) };
                let hi = span.min(2);
                let mut m = BTreeMap::new();
                for e in lo..=hi {
                    if rng.gen_bool(0.6) {
                        let c = base.random(rng, span);
                        if !base.is_zero(&c) {
                            m.insert(e, c);
                        }
                    }
                }
                poly_value(m)
            }
            Ring::Quot { base, .. } => {
                let raw = base.random(rng, span);
                self.canon(raw).expect("random raw values reduce")
            }
            Ring::Product(fs) => Value::Tuple(fs.iter().map(|f| f.random(rng, span)).collect()),
        }
    }
}

fn as_poly(v: &Value) -> BTreeMap<i64, Value> {
    match v {
        Value::Poly(m) => m.clone(),
        Value::Int(0) => BTreeMap::new(),
        Value::Int(k) => {
            let mut m = BTreeMap::new();
            m.insert(0, Value::Int(*k));
            m
        }
        Value::Tuple(_) => BTreeMap::new(),
    }
}

pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        let s = if a < 0 { -1 } else { 1 };
        (a.abs(), s, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}
