//! The fixed family of finitely presented commutative rings.
//!
//! Rings are constructor trees over the integers, residue rings, the small
//! binary fields GF(2^m) for m <= 4, univariate polynomial and Laurent
//! layers, quotients by a principal generator, and finite products. Every
//! descriptor admits a canonical form on elements, so equality is decidable
//! everywhere.

mod element;
mod hom;
mod json;
mod parse;

pub use element::{Element, Value};
pub use hom::{Hom, HomSpec};
pub use json::{element_from_json, element_to_json, hom_from_json, hom_to_json, ring_from_json, ring_to_json};

use crate::error::{Error, Result};
use std::sync::Arc;

/// Default degree window for polynomial and Laurent layers without an
/// explicit bound. Overridable through the `QP_MAX_DEGREE` environment
/// variable, read once per process.
pub fn default_degree_bound() -> i64 {
    use std::sync::OnceLock;
    static BOUND: OnceLock<i64> = OnceLock::new();
    *BOUND.get_or_init(|| {
        std::env::var("QP_MAX_DEGREE")
            .ok()
            .and_then(|s| s.parse::<i64>().ok())
            .filter(|&b| b >= 1)
            .unwrap_or(8)
    })
}

/// Reduction polynomials for GF(2^m), m = 2, 3, 4, as bit patterns.
/// GF(2^2) uses x^2 + x + 1; GF(2) needs no reduction.
const GF_POLY: [u16; 5] = [0, 0b10, 0b111, 0b1011, 0b10011];

pub(crate) fn gf_mul(m: u8, a: u16, b: u16) -> u16 {
    let mut acc: u32 = 0;
    let (a, mut b, mut shift) = (a as u32, b as u32, 0);
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    // reduce modulo the fixed irreducible polynomial
    let poly = GF_POLY[m as usize] as u32;
    let deg = m as u32;
    let mut bit = 31 - acc.leading_zeros().min(31);
    while acc != 0 && bit >= deg {
        if acc >> bit & 1 == 1 {
            acc ^= poly << (bit - deg);
        }
        if bit == 0 {
            break;
        }
        bit -= 1;
    }
    acc as u16
}

/// GF(2^m) multiplication on bit patterns, for the linear-algebra backend.
pub fn gf_mul_pub(m: u8, a: u16, b: u16) -> u16 {
    gf_mul(m, a, b)
}

/// GF(2^m) inversion on bit patterns; `None` for zero.
pub fn gf_inv_pub(m: u8, a: u16) -> Option<u16> {
    gf_inv(m, a)
}

pub(crate) fn gf_inv(m: u8, a: u16) -> Option<u16> {
    if a == 0 {
        return None;
    }
    // a^(2^m - 2)
    let mut out: u16 = 1;
    let mut base = a;
    let mut e = (1u32 << m) - 2;
    while e > 0 {
        if e & 1 == 1 {
            out = gf_mul(m, out, base);
        }
        base = gf_mul(m, base, base);
        e >>= 1;
    }
    Some(out)
}

/// A ring descriptor. Construction goes through the checked helpers below so
/// invariants (nonzero quotient generators, product arity) hold by
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ring {
    /// The ring of integers.
    Int,
    /// Integers modulo n, n >= 2.
    ZMod(u64),
    /// The field GF(2^m), 1 <= m <= 4, with a fixed reduction polynomial.
    Gf(u8),
    /// Univariate polynomials over `base` in variable `var`. `bound` is the
    /// largest tracked exponent; `None` defers to [`default_degree_bound`].
    Poly { base: Arc<Ring>, var: String, bound: Option<i64> },
    /// Laurent polynomials; exponents range over `-bound ..= bound`.
    Laurent { base: Arc<Ring>, var: String, bound: Option<i64> },
    /// Quotient of a polynomial layer by the principal ideal generated by
    /// `modulus` (a canonical value of `base`).
    Quot { base: Arc<Ring>, modulus: Value },
    /// A finite product of at least two factors, with componentwise
    /// operations.
    Product(Vec<Arc<Ring>>),
}

impl Ring {
    pub fn int() -> Arc<Ring> {
        Arc::new(Ring::Int)
    }

    pub fn zmod(n: u64) -> Arc<Ring> {
        assert!(n >= 2, "residue ring needs modulus >= 2");
        Arc::new(Ring::ZMod(n))
    }

    pub fn gf(m: u8) -> Arc<Ring> {
        assert!((1..=4).contains(&m), "GF(2^m) supported for m <= 4 only");
        Arc::new(Ring::Gf(m))
    }

    pub fn poly(base: Arc<Ring>, var: &str) -> Arc<Ring> {
        Arc::new(Ring::Poly { base, var: var.to_string(), bound: None })
    }

    pub fn poly_bounded(base: Arc<Ring>, var: &str, bound: i64) -> Arc<Ring> {
        Arc::new(Ring::Poly { base, var: var.to_string(), bound: Some(bound) })
    }

    pub fn laurent(base: Arc<Ring>, var: &str) -> Arc<Ring> {
        Arc::new(Ring::Laurent { base, var: var.to_string(), bound: None })
    }

    /// Quotient of a polynomial ring by a principal generator given as text.
    pub fn quot(base: Arc<Ring>, generator: &str) -> Result<Arc<Ring>> {
        let g = base.parse(generator)?;
        Self::quot_by(base, g.v)
    }

    pub fn quot_by(base: Arc<Ring>, modulus: Value) -> Result<Arc<Ring>> {
        let m = base.canon(modulus)?;
        if base.is_zero(&m) {
            return Err(Error::Precondition("quotient generator must be nonzero".into()));
        }
        let r = Ring::Quot { base, modulus: m };
        r.quot_shape()?; // reject generators outside the supported shapes
        Ok(Arc::new(r))
    }

    pub fn product(factors: Vec<Arc<Ring>>) -> Arc<Ring> {
        assert!(factors.len() >= 2, "product needs at least two factors");
        Arc::new(Ring::Product(factors))
    }

    /// Effective degree bound of this layer (polynomial layers only).
    pub fn layer_bound(&self) -> Option<i64> {
        match self {
            Ring::Poly { bound, .. } | Ring::Laurent { bound, .. } => {
                Some(bound.unwrap_or_else(default_degree_bound))
            }
            _ => None,
        }
    }

    /// Whether the descriptor carries a degree filtration at its top level
    /// (directly or through a quotient).
    pub fn is_filtered(&self) -> bool {
        match self {
            Ring::Poly { .. } | Ring::Laurent { .. } => true,
            Ring::Quot { base, .. } => base.is_filtered(),
            _ => false,
        }
    }

    pub fn element(self: &Arc<Ring>, v: Value) -> Result<Element> {
        Ok(Element { ring: self.clone(), v: self.canon(v)? })
    }

    pub fn zero_elem(self: &Arc<Ring>) -> Element {
        Element { ring: self.clone(), v: self.zero() }
    }

    pub fn one_elem(self: &Arc<Ring>) -> Element {
        Element { ring: self.clone(), v: self.one() }
    }

    pub fn int_elem(self: &Arc<Ring>, n: i128) -> Element {
        Element { ring: self.clone(), v: self.from_int(n) }
    }

    pub fn parse(self: &Arc<Ring>, text: &str) -> Result<Element> {
        parse::parse_element(self, text)
    }

    /// Shape of a quotient generator, used by canonicalization.
    pub(crate) fn quot_shape(&self) -> Result<QuotShape> {
        let Ring::Quot { base, modulus } = self else {
            return Err(Error::Unsupported("not a quotient ring".into()));
        };
        let (inner, _var) = match &**base {
            Ring::Poly { base: inner, var, .. } => (inner, var),
            _ => {
                return Err(Error::Unsupported(
                    "quotients are supported over polynomial layers only".into(),
                ))
            }
        };
        let Value::Poly(map) = modulus else {
            // constant generator over the polynomial ring
            if let Value::Int(c) = modulus {
                if matches!(&**inner, Ring::Int) {
                    return Ok(QuotShape::MonomialInt { k: 0, c: c.unsigned_abs() as i128 });
                }
            }
            return Err(Error::Unsupported("unsupported quotient generator shape".into()));
        };
        let (&deg, lead) = map.iter().next_back().expect("canonical polys are nonempty");
        if *lead == inner.one() {
            return Ok(QuotShape::Monic { k: deg });
        }
        if map.len() == 1 {
            if let (Value::Int(c), Ring::Int) = (lead, &**inner) {
                return Ok(QuotShape::MonomialInt { k: deg, c: c.unsigned_abs() as i128 });
            }
        }
        Err(Error::Unsupported(
            "quotient generators must be monic or an integer multiple of a monomial".into(),
        ))
    }

    /// Does `k * 1 = 0` hold in this ring?
    pub fn int_vanishes(&self, k: i128) -> bool {
        self.is_zero(&self.from_int(k))
    }

    /// All elements of a small finite ring, or `None` when the ring is
    /// infinite or too large to enumerate (cap 4096).
    pub fn enumerate(&self) -> Option<Vec<Value>> {
        const CAP: usize = 4096;
        fn go(r: &Ring, cap: usize) -> Option<Vec<Value>> {
            match r {
                Ring::Int | Ring::Poly { .. } | Ring::Laurent { .. } => None,
                Ring::ZMod(n) => {
                    if *n as usize > cap {
                        return None;
                    }
                    Some((0..*n as i128).map(Value::Int).collect())
                }
                Ring::Gf(m) => Some((0..1i128 << m).map(Value::Int).collect()),
                Ring::Quot { base, .. } => {
                    let shape = r.quot_shape().ok()?;
                    let QuotShape::Monic { k } = shape else { return None };
                    let Ring::Poly { base: inner, .. } = &**base else { return None };
                    let coeffs = go(inner, cap)?;
                    let mut out = vec![Vec::new()];
                    for _ in 0..k {
                        let mut next = Vec::new();
                        for partial in &out {
                            for c in &coeffs {
                                let mut p = partial.clone();
                                p.push(c.clone());
                                next.push(p);
                            }
                            if next.len() > cap {
                                return None;
                            }
                        }
                        out = next;
                    }
                    Some(
                        out.into_iter()
                            .map(|coeffs| {
                                let map = coeffs
                                    .into_iter()
                                    .enumerate()
                                    .filter(|(_, c)| !inner.is_zero(c))
                                    .map(|(e, c)| (e as i64, c))
                                    .collect();
                                element::poly_value(map)
                            })
                            .collect(),
                    )
                }
                Ring::Product(fs) => {
                    let mut out = vec![Vec::new()];
                    for f in fs {
                        let vals = go(f, cap)?;
                        let mut next = Vec::new();
                        for partial in &out {
                            for v in &vals {
                                let mut p = partial.clone();
                                p.push(v.clone());
                                next.push(p);
                            }
                            if next.len() > cap {
                                return None;
                            }
                        }
                        out = next;
                    }
                    Some(out.into_iter().map(Value::Tuple).collect())
                }
            }
        }
        go(self, CAP)
    }
}

/// Supported shapes of principal quotient generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum QuotShape {
    /// Generator with unit leading coefficient of degree `k`; reduction is
    /// polynomial division.
    Monic { k: i64 },
    /// Generator `c * x^k` with integer constant `c` over an integer
    /// coefficient ring; reduction takes coefficients of degree >= k mod c.
    MonomialInt { k: i64, c: i128 },
}
