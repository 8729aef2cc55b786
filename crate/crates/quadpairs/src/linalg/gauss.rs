//! Gaussian elimination over GF(2^m), the backend for rings whose scalars
//! are a single binary field (GF(4) algebras and friends).

use crate::error::{Error, Result};
use crate::ring::{self};

fn fmul(m: u8, a: u16, b: u16) -> u16 {
    ring::gf_mul_pub(m, a, b)
}

fn finv(m: u8, a: u16) -> Option<u16> {
    ring::gf_inv_pub(m, a)
}

/// Functional certifying non-membership over GF(2^m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfFunctional {
    pub m: u8,
    pub u: Vec<u16>,
    pub value: u16,
}

impl GfFunctional {
    pub fn eval(&self, w: &[u16]) -> u16 {
        let mut acc = 0u16;
        for (a, b) in self.u.iter().zip(w) {
            acc ^= fmul(self.m, *a, *b);
        }
        acc
    }

    pub fn kills(&self, w: &[u16]) -> bool {
        self.eval(w) == 0
    }
}

/// Row echelon form with normalized pivots and zeros above, canonical for
/// the row space. Returns `(rref rows, transform)` with
/// `transform * input = rref` (transform rows padded square).
fn rref(rows_in: &[Vec<u16>], m: u8) -> (Vec<Vec<u16>>, Vec<Vec<u16>>) {
    let nrows = rows_in.len();
    let ncols = rows_in.first().map_or(0, |r| r.len());
    let mut a = rows_in.to_vec();
    let mut t: Vec<Vec<u16>> =
        (0..nrows).map(|i| (0..nrows).map(|j| u16::from(i == j)).collect()).collect();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| a[i][col] != 0) else { continue };
        a.swap(r, p);
        t.swap(r, p);
        let inv = finv(m, a[r][col]).expect("pivot nonzero");
        for j in 0..ncols {
            a[r][j] = fmul(m, a[r][j], inv);
        }
        for j in 0..nrows {
            t[r][j] = fmul(m, t[r][j], inv);
        }
        for i in 0..nrows {
            if i != r && a[i][col] != 0 {
                let f = a[i][col];
                for j in 0..ncols {
                    let x = fmul(m, f, a[r][j]);
                    a[i][j] ^= x;
                }
                for j in 0..nrows {
                    let x = fmul(m, f, t[r][j]);
                    t[i][j] ^= x;
                }
            }
        }
        r += 1;
        if r == nrows {
            break;
        }
    }
    (a, t)
}

/// Dense linear system over GF(2^m), columns indexed by unknowns.
#[derive(Debug, Clone)]
pub struct GfSystem {
    pub m: u8,
    /// row-major, rows x cols
    pub a: Vec<Vec<u16>>,
}

#[derive(Debug, Clone)]
pub enum GfOutcome {
    Solved { particular: Vec<u16>, kernel: GfSub },
    Unsolvable(GfFunctional),
}

impl GfSystem {
    pub fn solve(&self, b: &[u16]) -> Result<GfOutcome> {
        let rows = self.a.len();
        let cols = self.a.first().map_or(0, |r| r.len());
        if b.len() != rows {
            return Err(Error::Dimension("rhs length".into()));
        }
        let (r, t) = rref(&self.a, self.m);
        let tb: Vec<u16> = (0..rows)
            .map(|i| {
                let mut acc = 0u16;
                for j in 0..rows {
                    acc ^= fmul(self.m, t[i][j], b[j]);
                }
                acc
            })
            .collect();
        // inconsistent row: zero row of rref with nonzero transformed rhs
        for i in 0..rows {
            if r[i].iter().all(|&x| x == 0) && tb[i] != 0 {
                return Ok(GfOutcome::Unsolvable(GfFunctional {
                    m: self.m,
                    u: t[i].clone(),
                    value: tb[i],
                }));
            }
        }
        let mut particular = vec![0u16; cols];
        let mut pivots = Vec::new();
        for i in 0..rows {
            if let Some(p) = r[i].iter().position(|&x| x != 0) {
                particular[p] = tb[i];
                pivots.push(p);
            }
        }
        // kernel basis from free columns
        let mut gens = Vec::new();
        for free in 0..cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut g = vec![0u16; cols];
            g[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                g[p] = r[i][free];
            }
            gens.push(g);
        }
        let kernel = GfSub::from_gens(self.m, cols, gens);
        Ok(GfOutcome::Solved { particular, kernel })
    }

    pub fn verify_certificate(&self, cert: &GfFunctional, b: &[u16]) -> bool {
        let rows = self.a.len();
        let cols = self.a.first().map_or(0, |r| r.len());
        if cert.u.len() != rows {
            return false;
        }
        for j in 0..cols {
            let col: Vec<u16> = (0..rows).map(|i| self.a[i][j]).collect();
            if !cert.kills(&col) {
                return false;
            }
        }
        cert.eval(b) != 0 && cert.eval(b) == cert.value
    }
}

/// A linear subspace of GF(2^m)^n in canonical reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfSub {
    pub m: u8,
    pub ambient: usize,
    pub basis: Vec<Vec<u16>>,
    pub gens_raw: Vec<Vec<u16>>,
}

#[derive(Debug, Clone)]
pub enum GfMembership {
    Member { coefficients: Vec<u16> },
    NotMember(GfFunctional),
}

impl GfSub {
    pub fn from_gens(m: u8, ambient: usize, gens: Vec<Vec<u16>>) -> GfSub {
        let (r, _) = rref(&gens, m);
        let basis: Vec<Vec<u16>> = r.into_iter().filter(|row| row.iter().any(|&x| x != 0)).collect();
        GfSub { m, ambient, basis, gens_raw: gens }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn reduce(&self, v: &[u16]) -> Vec<u16> {
        let mut w = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|&x| x != 0).expect("basis rows nonzero");
            if w[p] != 0 {
                let f = w[p]; // pivot normalized to 1
                for j in 0..self.ambient {
                    let x = fmul(self.m, f, row[j]);
                    w[j] ^= x;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u16]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn membership(&self, v: &[u16]) -> Result<GfMembership> {
        let cols = self.gens_raw.len();
        let a: Vec<Vec<u16>> = (0..self.ambient)
            .map(|r| (0..cols).map(|c| self.gens_raw[c][r]).collect())
            .collect();
        let sys = GfSystem { m: self.m, a };
        match sys.solve(v)? {
            GfOutcome::Solved { particular, .. } => {
                Ok(GfMembership::Member { coefficients: particular })
            }
            GfOutcome::Unsolvable(f) => Ok(GfMembership::NotMember(f)),
        }
    }

    pub fn sum(&self, other: &GfSub) -> Result<GfSub> {
        if self.ambient != other.ambient || self.m != other.m {
            return Err(Error::Dimension("subspace sum".into()));
        }
        let mut gens = self.gens_raw.clone();
        gens.extend(other.gens_raw.clone());
        Ok(GfSub::from_gens(self.m, self.ambient, gens))
    }

    pub fn intersect(&self, other: &GfSub) -> Result<GfSub> {
        if self.ambient != other.ambient || self.m != other.m {
            return Err(Error::Dimension("subspace intersection".into()));
        }
        let (r1, r2) = (self.basis.len(), other.basis.len());
        let a: Vec<Vec<u16>> = (0..self.ambient)
            .map(|i| {
                let mut row = Vec::with_capacity(r1 + r2);
                for g in &self.basis {
                    row.push(g[i]);
                }
                for g in &other.basis {
                    row.push(g[i]);
                }
                row
            })
            .collect();
        let sys = GfSystem { m: self.m, a };
        let GfOutcome::Solved { kernel, .. } = sys.solve(&vec![0u16; self.ambient])? else {
            unreachable!("homogeneous")
        };
        let mut gens = Vec::new();
        for g in &kernel.basis {
            let mut x = vec![0u16; self.ambient];
            for (k, row) in self.basis.iter().enumerate() {
                for i in 0..self.ambient {
                    x[i] ^= fmul(self.m, g[k], row[i]);
                }
            }
            if x.iter().any(|&c| c != 0) {
                gens.push(x);
            }
        }
        Ok(GfSub::from_gens(self.m, self.ambient, gens))
    }

    pub fn equals(&self, other: &GfSub) -> bool {
        self.ambient == other.ambient && self.m == other.m && self.basis == other.basis
    }

    pub fn is_subset_of(&self, other: &GfSub) -> bool {
        self.basis.iter().all(|g| other.contains(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_kernel_gf4() {
        // x + w y = 1 over GF(4)
        let sys = GfSystem { m: 2, a: vec![vec![1, 2]] };
        match sys.solve(&[1]).unwrap() {
            GfOutcome::Solved { particular, kernel } => {
                assert_eq!(particular[0] ^ fmul(2, 2, particular[1]), 1);
                assert_eq!(kernel.dim(), 1);
                let g = &kernel.basis[0];
                assert_eq!(g[0] ^ fmul(2, 2, g[1]), 0);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn certificate_on_inconsistent_system() {
        // x + y = 1 and x + y = 0 over GF(2)
        let sys = GfSystem { m: 1, a: vec![vec![1, 1], vec![1, 1]] };
        match sys.solve(&[1, 0]).unwrap() {
            GfOutcome::Unsolvable(f) => assert!(sys.verify_certificate(&f, &[1, 0])),
            _ => panic!(),
        }
    }

    #[test]
    fn membership_certificates() {
        let s = GfSub::from_gens(2, 3, vec![vec![1, 1, 0], vec![0, 1, 1]]);
        assert!(s.contains(&[1, 0, 1]));
        match s.membership(&[1, 0, 0]).unwrap() {
            GfMembership::NotMember(f) => {
                for g in &s.gens_raw {
                    assert!(f.kills(g));
                }
                assert_ne!(f.eval(&[1, 0, 0]), 0);
            }
            _ => panic!(),
        }
    }
}
