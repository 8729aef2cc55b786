//! Flattening degree windows of grammar rings to finite coordinate modules.
//!
//! A ring truncated at degree `D` becomes a finite list of slots, each a
//! monomial position with a coordinate modulus (lattice backend) or a
//! GF(2^m) coordinate (field backend). The flattening map is a bijection
//! between degree-window values and coordinate vectors; anything outside
//! the window is an error, never silent truncation.

use super::matrix::Mat;
use crate::error::{Error, Result};
use crate::ring::{Ring, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Lattice,
    Gf(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Step {
    Comp(usize),
    Exp(i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    pub steps: Vec<Step>,
    /// Coordinate modulus for the lattice backend (0 = free over Z).
    pub modulus: i128,
    /// Signed total monomial degree, for graded slicing.
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlatVec {
    Lat(Vec<i128>),
    Gf(Vec<u16>),
}

impl FlatVec {
    pub fn len(&self) -> usize {
        match self {
            FlatVec::Lat(v) => v.len(),
            FlatVec::Gf(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FlatVec::Lat(v) => v.iter().all(|&x| x == 0),
            FlatVec::Gf(v) => v.iter().all(|&x| x == 0),
        }
    }

    pub fn zeros(backend: Backend, n: usize) -> FlatVec {
        match backend {
            Backend::Lattice => FlatVec::Lat(vec![0; n]),
            Backend::Gf(_) => FlatVec::Gf(vec![0; n]),
        }
    }

    pub fn concat(parts: &[FlatVec]) -> Result<FlatVec> {
        let mut lat: Option<Vec<i128>> = None;
        let mut gf: Option<Vec<u16>> = None;
        for p in parts {
            match p {
                FlatVec::Lat(v) => match &mut lat {
                    Some(acc) => acc.extend(v),
                    None if gf.is_none() => lat = Some(v.clone()),
                    None => return Err(Error::Unsupported("mixed backends".into())),
                },
                FlatVec::Gf(v) => match &mut gf {
                    Some(acc) => acc.extend(v),
                    None if lat.is_none() => gf = Some(v.clone()),
                    None => return Err(Error::Unsupported("mixed backends".into())),
                },
            }
        }
        Ok(lat.map(FlatVec::Lat).or(gf.map(FlatVec::Gf)).unwrap_or(FlatVec::Lat(Vec::new())))
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> FlatVec {
        match self {
            FlatVec::Lat(v) => FlatVec::Lat(v[range].to_vec()),
            FlatVec::Gf(v) => FlatVec::Gf(v[range].to_vec()),
        }
    }

    pub fn sub(&self, other: &FlatVec) -> Result<FlatVec> {
        match (self, other) {
            (FlatVec::Lat(a), FlatVec::Lat(b)) => Ok(FlatVec::Lat(
                a.iter().zip(b).map(|(x, y)| x - y).collect(),
            )),
            (FlatVec::Gf(a), FlatVec::Gf(b)) => {
                Ok(FlatVec::Gf(a.iter().zip(b).map(|(x, y)| x ^ y).collect()))
            }
            _ => Err(Error::Unsupported("mixed backends".into())),
        }
    }
}

/// A degree-`D` window of a ring flattened to coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatRing {
    pub ring: Arc<Ring>,
    pub degree: i64,
    pub backend: Backend,
    pub slots: Vec<Slot>,
    index: BTreeMap<Vec<Step>, usize>,
}

/// Classify the leaves of a descriptor to pick a backend.
fn backend_of(ring: &Ring) -> Result<Backend> {
    fn scan(r: &Ring, gf: &mut Vec<u8>, other: &mut bool) {
        match r {
            Ring::Int | Ring::ZMod(_) => *other = true,
            Ring::Gf(m) => gf.push(*m),
            Ring::Poly { base, .. } | Ring::Laurent { base, .. } => scan(base, gf, other),
            Ring::Quot { base, .. } => scan(base, gf, other),
            Ring::Product(fs) => fs.iter().for_each(|f| scan(f, gf, other)),
        }
    }
    let mut gf = Vec::new();
    let mut other = false;
    scan(ring, &mut gf, &mut other);
    let big: Vec<u8> = gf.iter().copied().filter(|&m| m >= 2).collect();
    if let Some(&m) = big.first() {
        if other || gf.iter().any(|&m2| m2 != m) {
            return Err(Error::Unsupported(
                "mixing GF(2^m), m >= 2, with other scalar leaves is not supported".into(),
            ));
        }
        return Ok(Backend::Gf(m));
    }
    if !gf.is_empty() && !other {
        return Ok(Backend::Gf(1));
    }
    Ok(Backend::Lattice)
}

fn enumerate_slots(ring: &Ring, d: i64) -> Result<Vec<Slot>> {
    match ring {
        Ring::Int => Ok(vec![Slot { steps: vec![], modulus: 0, degree: 0 }]),
        Ring::ZMod(n) => Ok(vec![Slot { steps: vec![], modulus: *n as i128, degree: 0 }]),
        Ring::Gf(m) => {
            let modulus = if *m == 1 { 2 } else { 0 };
            Ok(vec![Slot { steps: vec![], modulus, degree: 0 }])
        }
        Ring::Poly { base, .. } | Ring::Laurent { base, .. } => {
            let bound = ring.layer_bound().expect("polynomial layer");
            let hi = d.min(bound);
            let lo = if matches!(ring, Ring::Poly { .. }) { 0 } else { -hi };
            let inner = enumerate_slots(base, d)?;
            let mut out = Vec::new();
            for e in lo..=hi {
                for s in &inner {
                    let mut steps = vec![Step::Exp(e)];
                    steps.extend(s.steps.clone());
                    out.push(Slot { steps, modulus: s.modulus, degree: s.degree + e });
                }
            }
            Ok(out)
        }
        Ring::Quot { base, .. } => {
            let Ring::Poly { base: inner_ring, .. } = &**base else {
                return Err(Error::Unsupported("quotient over non-polynomial".into()));
            };
            let inner = enumerate_slots(inner_ring, d)?;
            let mut out = Vec::new();
            match ring.quot_shape()? {
                crate::ring::QuotShape::Monic { k } => {
                    // complete representatives, no truncation
                    for e in 0..k {
                        for s in &inner {
                            let mut steps = vec![Step::Exp(e)];
                            steps.extend(s.steps.clone());
                            out.push(Slot { steps, modulus: s.modulus, degree: s.degree + e });
                        }
                    }
                }
                crate::ring::QuotShape::MonomialInt { k, c } => {
                    let bound = base.layer_bound().expect("polynomial layer");
                    let hi = d.min(bound);
                    for e in 0..=hi {
                        for s in &inner {
                            let mut steps = vec![Step::Exp(e)];
                            steps.extend(s.steps.clone());
                            let modulus = if e >= k { c } else { s.modulus };
                            out.push(Slot { steps, modulus, degree: s.degree + e });
                        }
                    }
                }
            }
            Ok(out)
        }
        Ring::Product(fs) => {
            let mut out = Vec::new();
            for (i, f) in fs.iter().enumerate() {
                for s in enumerate_slots(f, d)? {
                    let mut steps = vec![Step::Comp(i)];
                    steps.extend(s.steps);
                    out.push(Slot { steps, modulus: s.modulus, degree: s.degree });
                }
            }
            Ok(out)
        }
    }
}

impl FlatRing {
    pub fn new(ring: Arc<Ring>, degree: i64) -> Result<FlatRing> {
        let backend = backend_of(&ring)?;
        let slots = enumerate_slots(&ring, degree)?;
        let index = slots.iter().enumerate().map(|(i, s)| (s.steps.clone(), i)).collect();
        Ok(FlatRing { ring, degree, backend, slots, index })
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn moduli(&self) -> Vec<i128> {
        self.slots.iter().map(|s| s.modulus).collect()
    }

    pub fn flatten(&self, v: &Value) -> Result<FlatVec> {
        let mut fill: BTreeMap<Vec<Step>, i128> = BTreeMap::new();
        collect(&self.ring, v, &mut Vec::new(), &mut fill)?;
        // every filled monomial must be a known slot
        for steps in fill.keys() {
            if !self.index.contains_key(steps) {
                return Err(Error::DegreeOverflow {
                    degree: steps
                        .iter()
                        .map(|s| if let Step::Exp(e) = s { *e } else { 0 })
                        .sum(),
                    bound: self.degree,
                });
            }
        }
        match self.backend {
            Backend::Lattice => {
                let mut out = vec![0i128; self.slots.len()];
                for (steps, val) in fill {
                    out[self.index[&steps]] = val;
                }
                Ok(FlatVec::Lat(out))
            }
            Backend::Gf(_) => {
                let mut out = vec![0u16; self.slots.len()];
                for (steps, val) in fill {
                    out[self.index[&steps]] = val as u16;
                }
                Ok(FlatVec::Gf(out))
            }
        }
    }

    pub fn unflatten(&self, w: &FlatVec) -> Result<Value> {
        if w.len() != self.slots.len() {
            return Err(Error::Dimension("flat vector length".into()));
        }
        let mut acc = self.ring.zero();
        for (k, slot) in self.slots.iter().enumerate() {
            let scalar: i128 = match w {
                FlatVec::Lat(v) => v[k],
                FlatVec::Gf(v) => v[k] as i128,
            };
            if scalar == 0 {
                continue;
            }
            let unit = build_unit(&self.ring, &slot.steps, scalar, self.backend)?;
            acc = self.ring.add(&acc, &unit)?;
        }
        self.ring.canon(acc)
    }

    /// The value with a single slot set to 1.
    pub fn unit_value(&self, k: usize) -> Result<Value> {
        build_unit(&self.ring, &self.slots[k].steps, 1, self.backend)
    }
}

fn collect(
    ring: &Ring,
    v: &Value,
    prefix: &mut Vec<Step>,
    out: &mut BTreeMap<Vec<Step>, i128>,
) -> Result<()> {
    match ring {
        Ring::Int | Ring::ZMod(_) | Ring::Gf(_) => {
            let Value::Int(n) = v else {
                return Err(Error::Parse("scalar leaf expected".into()));
            };
            if *n != 0 {
                out.insert(prefix.clone(), *n);
            }
            Ok(())
        }
        Ring::Poly { base, .. } | Ring::Laurent { base, .. } => {
            let map = match v {
                Value::Poly(m) => m.clone(),
                Value::Int(0) => BTreeMap::new(),
                other => {
                    let mut m = BTreeMap::new();
                    m.insert(0i64, other.clone());
                    m
                }
            };
            for (e, c) in map {
                prefix.push(Step::Exp(e));
                collect(base, &c, prefix, out)?;
                prefix.pop();
            }
            Ok(())
        }
        Ring::Quot { base, .. } => collect(base, v, prefix, out),
        Ring::Product(fs) => {
            let Value::Tuple(t) = v else {
                return Err(Error::Parse("tuple expected".into()));
            };
            for (i, (c, f)) in t.iter().zip(fs).enumerate() {
                prefix.push(Step::Comp(i));
                collect(f, c, prefix, out)?;
                prefix.pop();
            }
            Ok(())
        }
    }
}

fn build_unit(ring: &Ring, steps: &[Step], scalar: i128, backend: Backend) -> Result<Value> {
    match ring {
        Ring::Int | Ring::ZMod(_) => Ok(ring.from_int(scalar)),
        Ring::Gf(_) => match backend {
            // field backend stores bit patterns directly
            Backend::Gf(_) => Ok(Value::Int(scalar)),
            Backend::Lattice => Ok(ring.from_int(scalar)),
        },
        Ring::Poly { base, .. } | Ring::Laurent { base, .. } => {
            let Some((Step::Exp(e), rest)) = steps.split_first() else {
                return Err(Error::Dimension("slot path mismatch".into()));
            };
            let inner = build_unit(base, rest, scalar, backend)?;
            if base.is_zero(&inner) {
                return Ok(Value::Int(0));
            }
            let mut m = BTreeMap::new();
            m.insert(*e, inner);
            Ok(Value::Poly(m))
        }
        Ring::Quot { base, .. } => build_unit(base, steps, scalar, backend),
        Ring::Product(fs) => {
            let Some((Step::Comp(i), rest)) = steps.split_first() else {
                return Err(Error::Dimension("slot path mismatch".into()));
            };
            let parts: Result<Vec<Value>> = fs
                .iter()
                .enumerate()
                .map(|(k, f)| {
                    if k == *i {
                        build_unit(f, rest, scalar, backend)
                    } else {
                        Ok(f.zero())
                    }
                })
                .collect();
            Ok(Value::Tuple(parts?))
        }
    }
}

/// The flattened space of `rows x cols` matrices over a ring window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatSpace {
    pub flat: FlatRing,
    pub rows: usize,
    pub cols: usize,
}

impl MatSpace {
    pub fn new(ring: Arc<Ring>, degree: i64, rows: usize, cols: usize) -> Result<MatSpace> {
        Ok(MatSpace { flat: FlatRing::new(ring, degree)?, rows, cols })
    }

    pub fn dim(&self) -> usize {
        self.rows * self.cols * self.flat.len()
    }

    pub fn backend(&self) -> Backend {
        self.flat.backend
    }

    pub fn moduli(&self) -> Vec<i128> {
        let per = self.flat.moduli();
        let mut out = Vec::with_capacity(self.dim());
        for _ in 0..self.rows * self.cols {
            out.extend(per.iter().copied());
        }
        out
    }

    /// Signed degree of a flat coordinate.
    pub fn coord_degree(&self, k: usize) -> i64 {
        self.flat.slots[k % self.flat.len()].degree
    }

    /// Entry position of a flat coordinate.
    pub fn coord_entry(&self, k: usize) -> (usize, usize) {
        let entry = k / self.flat.len();
        (entry / self.cols, entry % self.cols)
    }

    pub fn flatten_mat(&self, m: &Mat) -> Result<FlatVec> {
        if *m.ring != *self.flat.ring || m.rows != self.rows || m.cols != self.cols {
            return Err(Error::Dimension("matrix does not live in this space".into()));
        }
        let mut parts = Vec::with_capacity(self.rows * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                parts.push(self.flat.flatten(m.value_at(i, j))?);
            }
        }
        FlatVec::concat(&parts)
    }

    pub fn unflatten_mat(&self, w: &FlatVec) -> Result<Mat> {
        if w.len() != self.dim() {
            return Err(Error::Dimension("flat vector length".into()));
        }
        let per = self.flat.len();
        let mut out = Mat::zero(self.flat.ring.clone(), self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let k = (i * self.cols + j) * per;
                let v = self.flat.unflatten(&w.slice(k..k + per))?;
                out.set(
                    i,
                    j,
                    crate::ring::Element { ring: self.flat.ring.clone(), v },
                )?;
            }
        }
        Ok(out)
    }

    /// Matrix with the `k`-th flat coordinate set to 1.
    pub fn unit_mat(&self, k: usize) -> Result<Mat> {
        let per = self.flat.len();
        let entry = k / per;
        let (i, j) = (entry / self.cols, entry % self.cols);
        let v = self.flat.unit_value(k % per)?;
        let mut m = Mat::zero(self.flat.ring.clone(), self.rows, self.cols);
        m.set(i, j, crate::ring::Element { ring: self.flat.ring.clone(), v })?;
        Ok(m)
    }
}
