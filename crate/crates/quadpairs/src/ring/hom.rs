//! Ring homomorphisms between descriptors.
//!
//! A homomorphism is determined by where variables go, how product
//! components are routed, and the canonical behaviour on scalars. Structure
//! preservation is checked on generators plus random products.

use super::{Element, Ring, Value};
use crate::error::{Error, Result};
use rand::Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Recipe for a homomorphism.
#[derive(Debug, Clone, PartialEq)]
pub enum HomSpec {
    /// Scalars map canonically; no variables involved.
    Canonical,
    /// Variable substitution: each named variable of the source tower maps
    /// to the given target element; scalars map canonically.
    Vars(BTreeMap<String, Element>),
    /// Target is a product; one spec per target component.
    Tuple(Vec<HomSpec>),
    /// Precompose with projection onto a source product component.
    Project(usize, Box<HomSpec>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hom {
    pub source: Arc<Ring>,
    pub target: Arc<Ring>,
    pub spec: HomSpec,
}

impl Hom {
    pub fn new(source: Arc<Ring>, target: Arc<Ring>, spec: HomSpec) -> Hom {
        Hom { source, target, spec }
    }

    /// Identity on a ring.
    pub fn identity(ring: Arc<Ring>) -> Hom {
        let spec = identity_spec(&ring);
        Hom { source: ring.clone(), target: ring, spec }
    }

    /// Variable substitution map given as `(var, image-text)` pairs parsed
    /// in the target ring.
    pub fn substitute(source: Arc<Ring>, target: Arc<Ring>, images: &[(&str, &str)]) -> Result<Hom> {
        let mut map = BTreeMap::new();
        for (v, img) in images {
            map.insert(v.to_string(), target.parse(img)?);
        }
        Ok(Hom { source, target, spec: HomSpec::Vars(map) })
    }

    /// Diagonal embedding of a ring into a power of itself (or into any
    /// product whose components all accept the same spec).
    pub fn diagonal(source: Arc<Ring>, target: Arc<Ring>, inner: HomSpec) -> Result<Hom> {
        let Ring::Product(fs) = &*target else {
            return Err(Error::Unsupported("diagonal needs a product target".into()));
        };
        let spec = HomSpec::Tuple(vec![inner; fs.len()]);
        Ok(Hom { source, target, spec })
    }

    pub fn apply(&self, e: &Element) -> Result<Element> {
        if e.ring != self.source {
            return Err(Error::RingMismatch("element not in hom source".into()));
        }
        let v = apply_val(&self.source, &self.target, &self.spec, &e.v)?;
        self.target.element(v)
    }

    /// Structure checks: unit preservation, images of quotient generators
    /// vanish, additivity and multiplicativity on random pairs, and (when
    /// both sides are filtered) degree-non-increase on variable images.
    pub fn check<R: Rng>(&self, rng: &mut R, trials: usize) -> Result<()> {
        let one = self.apply(&self.source.one_elem())?;
        if !one.is_one() {
            return Err(Error::Verification("hom does not preserve 1".into()));
        }
        for modulus in lifted_quot_generators(&self.source) {
            let m = Element { ring: self.source.clone(), v: modulus };
            let img = self.apply(&m)?;
            if !img.is_zero() {
                return Err(Error::Verification(format!(
                    "hom does not kill quotient generator: {m} -> {img}"
                )));
            }
        }
        for _ in 0..trials {
            let a = Element { ring: self.source.clone(), v: self.source.random(rng, 3) };
            let b = Element { ring: self.source.clone(), v: self.source.random(rng, 3) };
            let lhs = self.apply(&a.add(&b)?)?;
            let rhs = self.apply(&a)?.add(&self.apply(&b)?)?;
            if lhs != rhs {
                return Err(Error::Verification("hom is not additive".into()));
            }
            let lhs = self.apply(&a.mul(&b)?)?;
            let rhs = self.apply(&a)?.mul(&self.apply(&b)?)?;
            if lhs != rhs {
                return Err(Error::Verification("hom is not multiplicative".into()));
            }
        }
        if self.source.is_filtered() && self.target.is_filtered() {
            if let HomSpec::Vars(map) = &self.spec {
                for (v, img) in map {
                    if top_degree(&img.ring, &img.v) > 1 {
                        return Err(Error::Verification(format!(
                            "hom increases degree on generator {v}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn identity_spec(ring: &Ring) -> HomSpec {
    match ring {
        Ring::Product(fs) => HomSpec::Tuple(
            fs.iter()
                .enumerate()
                .map(|(k, f)| HomSpec::Project(k, Box::new(identity_spec(f))))
                .collect(),
        ),
        _ => {
            let mut vars = BTreeMap::new();
            collect_vars(ring, ring, &mut vars);
            if vars.is_empty() {
                HomSpec::Canonical
            } else {
                HomSpec::Vars(vars)
            }
        }
    }
}

fn collect_vars(top: &Ring, r: &Ring, out: &mut BTreeMap<String, Element>) {
    match r {
        Ring::Poly { base, var, .. } | Ring::Laurent { base, var, .. } => {
            // the variable of this layer as an element of the top ring
            let elem = Arc::new(top.clone());
            if let Ok(e) = elem.parse(var) {
                out.insert(var.clone(), e);
            }
            collect_vars(top, base, out);
        }
        Ring::Quot { base, .. } => collect_vars(top, base, out),
        _ => {}
    }
}

fn apply_val(src: &Arc<Ring>, tgt: &Arc<Ring>, spec: &HomSpec, v: &Value) -> Result<Value> {
    match spec {
        HomSpec::Tuple(specs) => {
            let Ring::Product(fs) = &**tgt else {
                return Err(Error::Unsupported("tuple spec needs product target".into()));
            };
            if specs.len() != fs.len() {
                return Err(Error::Dimension("tuple spec arity".into()));
            }
            let parts: Result<Vec<Value>> =
                specs.iter().zip(fs).map(|(s, f)| apply_val(src, f, s, v)).collect();
            Ok(Value::Tuple(parts?))
        }
        HomSpec::Project(k, inner) => {
            let Ring::Product(fs) = &**src else {
                return Err(Error::Unsupported("project spec needs product source".into()));
            };
            let Value::Tuple(t) = v else {
                return Err(Error::Parse("tuple value expected".into()));
            };
            let f = fs.get(*k).ok_or_else(|| Error::Dimension("component index".into()))?;
            let c = t.get(*k).ok_or_else(|| Error::Dimension("component index".into()))?;
            apply_val(f, tgt, inner, c)
        }
        HomSpec::Canonical | HomSpec::Vars(_) => eval_structural(src, tgt, spec, v),
    }
}

fn eval_structural(src: &Arc<Ring>, tgt: &Arc<Ring>, spec: &HomSpec, v: &Value) -> Result<Value> {
    match &**src {
        Ring::Int | Ring::ZMod(_) | Ring::Gf(_) => embed_scalar(src, tgt, v),
        Ring::Poly { base, var, .. } | Ring::Laurent { base, var, .. } => {
            let map = match v {
                Value::Poly(m) => m.clone(),
                _ => {
                    let mut m = BTreeMap::new();
                    if !src.is_zero(v) {
                        m.insert(0i64, v.clone());
                    }
                    m
                }
            };
            let mut acc = tgt.zero();
            for (e, c) in map {
                let base_arc: Arc<Ring> = base.clone();
                let ci = eval_structural(&base_arc, tgt, spec, &c)?;
                let term = if e == 0 {
                    ci
                } else {
                    let img = var_image(spec, var)?;
                    if img.ring != *tgt {
                        return Err(Error::RingMismatch(format!(
                            "image of {var} lies in the wrong ring"
                        )));
                    }
                    let x = if e > 0 { img.clone() } else { img.try_inv()? };
                    let mut p = tgt.one();
                    for _ in 0..e.unsigned_abs() {
                        p = tgt.mul(&p, &x.v)?;
                    }
                    tgt.mul(&ci, &p)?
                };
                acc = tgt.add(&acc, &term)?;
            }
            Ok(acc)
        }
        Ring::Quot { base, .. } => {
            let base_arc: Arc<Ring> = base.clone();
            eval_structural(&base_arc, tgt, spec, v)
        }
        Ring::Product(_) => Err(Error::Unsupported(
            "product sources need explicit component routing".into(),
        )),
    }
}

fn var_image<'a>(spec: &'a HomSpec, var: &str) -> Result<&'a Element> {
    match spec {
        HomSpec::Vars(map) => map
            .get(var)
            .ok_or_else(|| Error::Unsupported(format!("no image for variable {var}"))),
        _ => Err(Error::Unsupported(format!("no image for variable {var}"))),
    }
}

fn embed_scalar(src: &Arc<Ring>, tgt: &Arc<Ring>, v: &Value) -> Result<Value> {
    let Value::Int(n) = v else {
        return Err(Error::Parse("scalar expected".into()));
    };
    match &**src {
        Ring::Int => Ok(tgt.from_int(*n)),
        Ring::ZMod(m) => {
            if !tgt.int_vanishes(*m as i128) {
                return Err(Error::RingMismatch(format!(
                    "Z/{m} does not map to the target (characteristic mismatch)"
                )));
            }
            Ok(tgt.from_int(*n))
        }
        Ring::Gf(m) => {
            if *n <= 1 {
                return Ok(tgt.from_int(*n));
            }
            embed_gf(tgt, *m, *n)
        }
        _ => unreachable!("embed_scalar is called on leaves"),
    }
}

fn embed_gf(tgt: &Arc<Ring>, m: u8, bits: i128) -> Result<Value> {
    match &**tgt {
        Ring::Gf(m2) if *m2 == m => Ok(Value::Int(bits)),
        Ring::Poly { base, .. } | Ring::Laurent { base, .. } => {
            let inner = embed_gf(base, m, bits)?;
            let mut map = BTreeMap::new();
            map.insert(0, inner);
            Ok(Value::Poly(map))
        }
        Ring::Quot { base, .. } => {
            let raw = embed_gf(base, m, bits)?;
            tgt.canon(raw)
        }
        Ring::Product(fs) => {
            let parts: Result<Vec<Value>> = fs.iter().map(|f| embed_gf(f, m, bits)).collect();
            Ok(Value::Tuple(parts?))
        }
        _ => Err(Error::RingMismatch(format!("GF(2^{m}) does not embed in the target"))),
    }
}

/// Quotient generators of every layer, lifted to top-level values.
fn lifted_quot_generators(ring: &Arc<Ring>) -> Vec<Value> {
    fn go(r: &Ring, lift: &dyn Fn(Value) -> Value, out: &mut Vec<Value>) {
        match r {
            Ring::Quot { base, modulus } => {
                out.push(lift(modulus.clone()));
                go(base, lift, out);
            }
            Ring::Poly { base, .. } | Ring::Laurent { base, .. } => {
                let wrap = move |v: Value| {
                    let mut m = BTreeMap::new();
                    m.insert(0i64, v);
                    lift(Value::Poly(m))
                };
                go(base, &wrap, out);
            }
            Ring::Product(fs) => {
                for (k, f) in fs.iter().enumerate() {
                    let n = fs.len();
                    let k_ = k;
                    let fs_clone: Vec<Arc<Ring>> = fs.clone();
                    let wrap = move |v: Value| {
                        let parts: Vec<Value> = (0..n)
                            .map(|i| if i == k_ { v.clone() } else { fs_clone[i].zero() })
                            .collect();
                        lift(Value::Tuple(parts))
                    };
                    go(f, &wrap, out);
                }
            }
            _ => {}
        }
    }
    let mut out = Vec::new();
    go(ring, &|v| v, &mut out);
    out
}

fn top_degree(ring: &Ring, v: &Value) -> i64 {
    match (ring, v) {
        (Ring::Poly { .. } | Ring::Laurent { .. }, Value::Poly(m)) => {
            m.keys().map(|e| e.abs()).max().unwrap_or(0)
        }
        (Ring::Quot { base, .. }, v) => top_degree(base, v),
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn restriction_to_laurent() {
        // Z[x]/<4x> -> Z/4[x,1/x], x -> x
        let src = Ring::quot(Ring::poly(Ring::int(), "x"), "4x").unwrap();
        let tgt = Ring::laurent(Ring::zmod(4), "x");
        let h = Hom::substitute(src.clone(), tgt.clone(), &[("x", "x")]).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        h.check(&mut rng, 50).unwrap();
        let e = src.parse("5+x").unwrap();
        assert_eq!(h.apply(&e).unwrap(), tgt.parse("1+x").unwrap());
    }

    #[test]
    fn inverted_variable_image() {
        // Z[y]/<4y> -> Z/4[x,1/x], y -> x^-1
        let src = Ring::quot(Ring::poly(Ring::int(), "y"), "4y").unwrap();
        let tgt = Ring::laurent(Ring::zmod(4), "x");
        let h = Hom::substitute(src.clone(), tgt.clone(), &[("y", "x^-1")]).unwrap();
        let mut rng = StdRng::seed_from_u64(8);
        h.check(&mut rng, 50).unwrap();
        let e = src.parse("2+3y^2").unwrap();
        assert_eq!(h.apply(&e).unwrap(), tgt.parse("2+3x^-2").unwrap());
    }

    #[test]
    fn diagonal_into_product() {
        // GF(4) -> (GF(4)[x]/<x^2+1>)^2, c -> (c, c)
        let k = Ring::gf(2);
        let comp = Ring::quot(Ring::poly(Ring::gf(2), "x"), "x^2+1").unwrap();
        let tgt = Ring::product(vec![comp.clone(), comp]);
        let h = Hom::diagonal(k.clone(), tgt.clone(), HomSpec::Canonical).unwrap();
        let mut rng = StdRng::seed_from_u64(9);
        h.check(&mut rng, 50).unwrap();
        let e = k.parse("w").unwrap();
        assert_eq!(h.apply(&e).unwrap(), tgt.parse("(w,w)").unwrap());
    }

    #[test]
    fn mod2_base_change() {
        // Z[x]/<4x> -> F2[x], 2+3x -> x
        let src = Ring::quot(Ring::poly(Ring::int(), "x"), "4x").unwrap();
        let tgt = Ring::poly(Ring::zmod(2), "x");
        let h = Hom::substitute(src.clone(), tgt.clone(), &[("x", "x")]).unwrap();
        let mut rng = StdRng::seed_from_u64(10);
        h.check(&mut rng, 50).unwrap();
        let e = src.parse("2+3x").unwrap();
        assert_eq!(h.apply(&e).unwrap(), tgt.parse("x").unwrap());
    }

    #[test]
    fn characteristic_mismatch_rejected() {
        let src = Ring::zmod(4);
        let tgt = Ring::zmod(8);
        let h = Hom::new(src.clone(), tgt, HomSpec::Canonical);
        assert!(h.apply(&src.int_elem(1)).is_err() || {
            let mut rng = StdRng::seed_from_u64(1);
            h.check(&mut rng, 5).is_err()
        });
    }
}
