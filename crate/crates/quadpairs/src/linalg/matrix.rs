//! Dense matrices with entries in a grammar ring.

use crate::error::{Error, Result};
use crate::ring::{Element, Hom, Ring, Value};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    pub ring: Arc<Ring>,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Value>,
}

impl Mat {
    pub fn zero(ring: Arc<Ring>, rows: usize, cols: usize) -> Mat {
        let data = (0..rows * cols).map(|_| ring.zero()).collect();
        Mat { ring, rows, cols, data }
    }

    pub fn identity(ring: Arc<Ring>, n: usize) -> Mat {
        let mut m = Mat::zero(ring.clone(), n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn unit(ring: Arc<Ring>, n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zero(ring.clone(), n, n);
        m.data[i * n + j] = ring.one();
        m
    }

    pub fn from_values(ring: Arc<Ring>, rows: usize, cols: usize, data: Vec<Value>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::Dimension("matrix data length".into()));
        }
        let data: Result<Vec<Value>> = data.into_iter().map(|v| ring.canon(v)).collect();
        Ok(Mat { ring, rows, cols, data: data? })
    }

    /// Parse a matrix from rows of element text.
    pub fn parse(ring: &Arc<Ring>, rows: &[&[&str]]) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension("ragged matrix".into()));
            }
            for s in *row {
                data.push(ring.parse(s)?.v);
            }
        }
        Ok(Mat { ring: ring.clone(), rows: r, cols: c, data })
    }

    /// Integer matrix shorthand.
    pub fn from_ints(ring: &Arc<Ring>, rows: &[&[i128]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            for &n in *row {
                data.push(ring.from_int(n));
            }
        }
        Mat { ring: ring.clone(), rows: r, cols: c, data }
    }

    pub fn get(&self, i: usize, j: usize) -> Element {
        Element { ring: self.ring.clone(), v: self.data[i * self.cols + j].clone() }
    }

    pub fn value_at(&self, i: usize, j: usize) -> &Value {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Element) -> Result<()> {
        if e.ring != self.ring {
            return Err(Error::RingMismatch("matrix entry".into()));
        }
        self.data[i * self.cols + j] = e.v;
        Ok(())
    }

    fn zip(&self, other: &Mat, f: impl Fn(&Value, &Value) -> Result<Value>) -> Result<Mat> {
        if self.ring != other.ring || self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix shapes".into()));
        }
        let data: Result<Vec<Value>> =
            self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Mat { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data: data? })
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.zip(other, |a, b| self.ring.add(a, b))
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.zip(other, |a, b| {
            let nb = self.ring.neg(b)?;
            self.ring.add(a, &nb)
        })
    }

    pub fn neg(&self) -> Result<Mat> {
        let data: Result<Vec<Value>> = self.data.iter().map(|a| self.ring.neg(a)).collect();
        Ok(Mat { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data: data? })
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("matrix product".into()));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension("matrix product shapes".into()));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    let a = self.value_at(i, k);
                    if self.ring.is_zero(a) {
                        continue;
                    }
                    let b = other.value_at(k, j);
                    if self.ring.is_zero(b) {
                        continue;
                    }
                    let p = self.ring.mul(a, b)?;
                    acc = self.ring.add(&acc, &p)?;
                }
                data.push(acc);
            }
        }
        Ok(Mat { ring: self.ring.clone(), rows: self.rows, cols: other.cols, data })
    }

    pub fn scale(&self, e: &Element) -> Result<Mat> {
        if e.ring != self.ring {
            return Err(Error::RingMismatch("scalar".into()));
        }
        let data: Result<Vec<Value>> = self.data.iter().map(|a| self.ring.mul(a, &e.v)).collect();
        Ok(Mat { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data: data? })
    }

    pub fn transpose(&self) -> Mat {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.data[i * self.cols + j].clone());
            }
        }
        Mat { ring: self.ring.clone(), rows: self.cols, cols: self.rows, data }
    }

    pub fn trace(&self) -> Result<Element> {
        if self.rows != self.cols {
            return Err(Error::Dimension("trace of a non-square matrix".into()));
        }
        let mut acc = self.ring.zero();
        for i in 0..self.rows {
            acc = self.ring.add(&acc, self.value_at(i, i))?;
        }
        Ok(Element { ring: self.ring.clone(), v: acc })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.ring.is_zero(v))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.ring.clone(), self.rows)
    }

    /// Is this a scalar multiple of the identity? Returns the scalar.
    pub fn scalar_of_identity(&self) -> Option<Element> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let c = self.value_at(0, 0).clone();
        let zero = self.ring.zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { &c } else { &zero };
                if self.value_at(i, j) != want {
                    return None;
                }
            }
        }
        Some(Element { ring: self.ring.clone(), v: c })
    }

    /// Apply a ring homomorphism entrywise.
    pub fn map(&self, h: &Hom) -> Result<Mat> {
        if *h.source != *self.ring {
            return Err(Error::RingMismatch("hom source".into()));
        }
        let data: Result<Vec<Value>> = self
            .data
            .iter()
            .map(|v| {
                let e = Element { ring: self.ring.clone(), v: v.clone() };
                Ok(h.apply(&e)?.v)
            })
            .collect();
        Ok(Mat { ring: h.target.clone(), rows: self.rows, cols: self.cols, data: data? })
    }

    /// Split a matrix over a product ring into one matrix per component.
    pub fn split_components(&self) -> Option<Vec<Mat>> {
        let Ring::Product(fs) = &*self.ring else { return None };
        let mut out = Vec::with_capacity(fs.len());
        for (c, f) in fs.iter().enumerate() {
            let mut m = Mat::zero(f.clone(), self.rows, self.cols);
            for i in 0..self.rows {
                for j in 0..self.cols {
                    let Value::Tuple(t) = self.value_at(i, j) else { return None };
                    m.set(i, j, Element { ring: f.clone(), v: t[c].clone() }).ok()?;
                }
            }
            out.push(m);
        }
        Some(out)
    }

    /// Reassemble componentwise matrices over a product ring.
    pub fn assemble_components(ring: Arc<Ring>, comps: &[Mat]) -> Result<Mat> {
        let Ring::Product(fs) = &*ring else {
            return Err(Error::Unsupported("assemble needs a product ring".into()));
        };
        if fs.len() != comps.len() {
            return Err(Error::Dimension("component count".into()));
        }
        let (rows, cols) = (comps[0].rows, comps[0].cols);
        let mut out = Mat::zero(ring.clone(), rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let parts: Vec<Value> = comps.iter().map(|m| m.value_at(i, j).clone()).collect();
                out.set(i, j, Element { ring: ring.clone(), v: ring.canon(Value::Tuple(parts))? })?;
            }
        }
        Ok(out)
    }

    /// Kronecker product, blocks `a_ij * B` in row-major order.
    pub fn kron(&self, other: &Mat) -> Result<Mat> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("kronecker factors".into()));
        }
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Mat::zero(self.ring.clone(), rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = self.ring.mul(self.value_at(i, j), other.value_at(k, l))?;
                        out.data[(i * other.rows + k) * cols + (j * other.cols + l)] = v;
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_of_units() {
        let z = Ring::int();
        let a = Mat::from_ints(&z, &[&[1, 2], &[0, 1]]);
        let b = Mat::from_ints(&z, &[&[0, 1], &[1, 0]]);
        let k = a.kron(&b).unwrap();
        assert_eq!(k.get(0, 1).to_string(), "1");
        assert_eq!(k.get(0, 3).to_string(), "2");
        assert_eq!(k.get(2, 3).to_string(), "1");
        assert_eq!(k.get(3, 0).to_string(), "0");
    }

    #[test]
    fn unipotent_square_over_quotient() {
        // [[1, 2x], [0, 1]]^2 = 1 + [[0, 4x], [0, 0]] = identity in Z[x]/<4x>
        let r = Ring::quot(Ring::poly(Ring::int(), "x"), "4x").unwrap();
        let a = Mat::parse(&r, &[&["1", "2x"], &["0", "1"]]).unwrap();
        let sq = a.mul(&a).unwrap();
        assert!(sq.is_identity());
    }
}
