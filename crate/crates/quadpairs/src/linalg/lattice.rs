//! Linear systems and submodules over the integers with congruence data.
//!
//! A coordinate with modulus `m > 0` lives in `Z/m`; modulus `0` means a
//! free integer coordinate. This covers the flattened form of every ring in
//! the grammar that is not a GF(2^m)-algebra, including mixed modules such
//! as `Z (+) (Z/4)^d` coming from `Z[x]/<4x>` degree windows.
//!
//! Solvability is decided by Smith normal form. Failures return a
//! [`NullFunctional`]: a row functional vanishing on every column of the
//! system but not on the right-hand side, which re-verifies independently.

use super::snf::{hnf_rows, identity, mat_vec, smith, smith_with_modulus, IMat};
use crate::error::{Error, Result};

/// A linear functional with a residue map, certifying unsolvability or
/// non-membership: `u . col = 0 (mod modulus)` for every admissible column
/// while `u . rhs = value != 0 (mod modulus)`. Modulus 0 means over `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullFunctional {
    pub u: Vec<i128>,
    pub modulus: i128,
    pub value: i128,
}

impl NullFunctional {
    pub fn eval(&self, w: &[i128]) -> i128 {
        let mut acc: i128 = 0;
        for (a, b) in self.u.iter().zip(w) {
            acc += a * b;
        }
        if self.modulus != 0 {
            acc = acc.rem_euclid(self.modulus);
        }
        acc
    }

    pub fn kills(&self, w: &[i128]) -> bool {
        self.eval(w) == 0
    }
}

/// `rows x cols` integer system with per-row congruences and per-column
/// coordinate moduli.
#[derive(Debug, Clone)]
pub struct LatSystem {
    pub a: IMat,
    pub row_moduli: Vec<i128>,
    pub col_moduli: Vec<i128>,
}

#[derive(Debug, Clone)]
pub enum LatOutcome {
    Solved { particular: Vec<i128>, kernel: LatSub },
    Unsolvable(NullFunctional),
}

impl LatSystem {
    pub fn new(a: IMat, row_moduli: Vec<i128>, col_moduli: Vec<i128>) -> Result<LatSystem> {
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        if row_moduli.len() != rows || col_moduli.len() != cols {
            return Err(Error::Dimension("moduli lengths".into()));
        }
        // a torsion variable must feed each row compatibly: m_c * a[r][c]
        // must vanish under the row modulus
        for (r, row) in a.iter().enumerate() {
            for (c, &coef) in row.iter().enumerate() {
                let mc = col_moduli[c];
                if mc == 0 || coef == 0 {
                    continue;
                }
                let prod = coef
                    .checked_mul(mc)
                    .ok_or_else(|| Error::Arithmetic("moduli check".into()))?;
                let ok = if row_moduli[r] == 0 { prod == 0 } else { prod % row_moduli[r] == 0 };
                if !ok {
                    return Err(Error::Precondition(format!(
                        "column {c} (mod {mc}) feeds row {r} (mod {}) incompatibly",
                        row_moduli[r]
                    )));
                }
            }
        }
        Ok(LatSystem { a, row_moduli, col_moduli })
    }

    fn augmented(&self) -> (IMat, Vec<usize>) {
        // slack columns absorb row congruences
        let rows = self.a.len();
        let slack: Vec<usize> = (0..rows).filter(|&r| self.row_moduli[r] != 0).collect();
        let mut aug: IMat = self.a.clone();
        for row in aug.iter_mut() {
            row.extend(std::iter::repeat(0).take(slack.len()));
        }
        let cols = self.col_moduli.len();
        for (k, &r) in slack.iter().enumerate() {
            aug[r][cols + k] = self.row_moduli[r];
        }
        (aug, slack)
    }

    /// A single modulus shared by every row and column, when one exists;
    /// such systems are solved entirely mod n so entries stay bounded.
    fn uniform_modulus(&self) -> Option<i128> {
        let n = *self.row_moduli.first().or_else(|| self.col_moduli.first())?;
        if n > 0
            && self.row_moduli.iter().all(|&m| m == n)
            && self.col_moduli.iter().all(|&m| m == n)
        {
            Some(n)
        } else {
            None
        }
    }

    fn solve_uniform(&self, b: &[i128], n: i128) -> Result<LatOutcome> {
        let rows = self.a.len();
        let cols = self.col_moduli.len();
        let s = smith_with_modulus(&self.a, Some(n))?;
        let c: Vec<i128> = mat_vec(&s.u, b)?.iter().map(|x| x.rem_euclid(n)).collect();
        // constraint per row: d_i z_i = c_i (mod n), solvable iff
        // gcd(d_i, n) divides c_i
        let mut z = vec![0i128; cols];
        for i in 0..rows {
            let d = if i < s.d.len() { s.d[i].rem_euclid(n) } else { 0 };
            let g = gcd(d, n); // gcd(0, n) = n
            if c[i].rem_euclid(g) != 0 {
                return Ok(LatOutcome::Unsolvable(NullFunctional {
                    u: s.u[i].clone(),
                    modulus: g,
                    value: c[i].rem_euclid(g),
                }));
            }
            if d != 0 && i < cols && c[i] != 0 {
                // z = (c/g) * (d/g)^-1 (mod n/g)
                let red_n = n / g;
                if red_n > 1 {
                    let (gg, inv, _) = ext_gcd(d / g, red_n);
                    debug_assert_eq!(gg, 1);
                    z[i] = ((c[i] / g).rem_euclid(red_n) * inv.rem_euclid(red_n)).rem_euclid(red_n);
                }
            }
        }
        let y = mat_vec(&s.v, &z)?;
        let particular: Vec<i128> = y[..cols].iter().map(|x| x.rem_euclid(n)).collect();
        // kernel: for each transformed coordinate, multiples of n/gcd(d, n)
        let mut gens: Vec<Vec<i128>> = Vec::new();
        for j in 0..cols {
            let d = if j < s.d.len().min(rows) { s.d[j].rem_euclid(n) } else { 0 };
            let g = gcd(d, n);
            if g == 1 {
                continue; // unit pivot: no freedom
            }
            let t = n / g; // t = 1 when the direction is fully free
            let col: Vec<i128> = (0..cols).map(|i| (s.v[i][j] * t).rem_euclid(n)).collect();
            if col.iter().any(|&x| x != 0) {
                gens.push(col);
            }
        }
        let kernel = LatSub::from_gens(cols, self.col_moduli.clone(), gens)?;
        Ok(LatOutcome::Solved { particular, kernel })
    }

    pub fn solve(&self, b: &[i128]) -> Result<LatOutcome> {
        let rows = self.a.len();
        if b.len() != rows {
            return Err(Error::Dimension("rhs length".into()));
        }
        let cols = self.col_moduli.len();
        if rows == 0 {
            return Ok(LatOutcome::Solved {
                particular: vec![0; cols],
                kernel: LatSub::full(self.col_moduli.clone())?,
            });
        }
        if let Some(n) = self.uniform_modulus() {
            return self.solve_uniform(b, n);
        }
        let (aug, _slack) = self.augmented();
        let s = smith(&aug)?;
        let c = mat_vec(&s.u, b)?;
        let acols = aug[0].len();
        let rank = s.d.iter().filter(|&&d| d != 0).count();
        for i in 0..rows {
            let d = if i < s.d.len() { s.d[i] } else { 0 };
            let bad = if d == 0 { c[i] != 0 } else { c[i].rem_euclid(d) != 0 };
            if bad {
                let value = if d == 0 { c[i] } else { c[i].rem_euclid(d) };
                return Ok(LatOutcome::Unsolvable(NullFunctional {
                    u: s.u[i].clone(),
                    modulus: d,
                    value,
                }));
            }
        }
        let mut z = vec![0i128; acols];
        for i in 0..rank {
            z[i] = c[i] / s.d[i];
        }
        let y = mat_vec(&s.v, &z)?;
        let mut particular: Vec<i128> = y[..cols].to_vec();
        for (x, &m) in particular.iter_mut().zip(&self.col_moduli) {
            if m != 0 {
                *x = x.rem_euclid(m);
            }
        }
        // kernel generators: columns of V past the rank, projected
        let mut gens: Vec<Vec<i128>> = Vec::new();
        for j in rank..acols {
            let g: Vec<i128> = (0..cols).map(|i| s.v[i][j]).collect();
            if g.iter().any(|&x| x != 0) {
                gens.push(g);
            }
        }
        let kernel = LatSub::from_gens(cols, self.col_moduli.clone(), gens)?;
        Ok(LatOutcome::Solved { particular, kernel })
    }

    pub fn kernel(&self) -> Result<LatSub> {
        let b = vec![0i128; self.a.len()];
        match self.solve(&b)? {
            LatOutcome::Solved { kernel, .. } => Ok(kernel),
            LatOutcome::Unsolvable(_) => unreachable!("homogeneous systems are solvable"),
        }
    }

    /// Verify an unsolvability certificate against this system and rhs.
    pub fn verify_certificate(&self, cert: &NullFunctional, b: &[i128]) -> bool {
        let rows = self.a.len();
        if cert.u.len() != rows {
            return false;
        }
        let (aug, _) = self.augmented();
        let acols = if rows == 0 { 0 } else { aug[0].len() };
        for j in 0..acols {
            let col: Vec<i128> = (0..rows).map(|i| aug[i][j]).collect();
            if !cert.kills(&col) {
                return false;
            }
        }
        cert.eval(b) != 0 && cert.eval(b) == cert.value
    }
}

/// A submodule of `prod_c Z/m_c` (with `m_c = 0` meaning `Z`), stored as the
/// Hermite basis of its preimage lattice in `Z^n`. The lattice always
/// contains the relation vectors `m_c e_c`, so lattice membership equals
/// membership in the quotient module and the representation is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatSub {
    pub ambient: usize,
    pub moduli: Vec<i128>,
    pub lattice: IMat,
    /// The generating vectors the module was built from, before
    /// canonicalization; membership certificates express coefficients over
    /// these.
    pub gens_raw: IMat,
}

#[derive(Debug, Clone)]
pub enum LatMembership {
    Member { coefficients: Vec<i128> },
    NotMember(NullFunctional),
}

impl LatSub {
    pub fn from_gens(ambient: usize, moduli: Vec<i128>, gens: IMat) -> Result<LatSub> {
        if moduli.len() != ambient || gens.iter().any(|g| g.len() != ambient) {
            return Err(Error::Dimension("submodule generators".into()));
        }
        let mut rows = gens.clone();
        for (c, &m) in moduli.iter().enumerate() {
            if m != 0 {
                let mut rel = vec![0i128; ambient];
                rel[c] = m;
                rows.push(rel);
            }
        }
        let lattice = hnf_rows(&rows)?;
        Ok(LatSub { ambient, moduli, lattice, gens_raw: gens })
    }

    pub fn zero(ambient: usize, moduli: Vec<i128>) -> Result<LatSub> {
        LatSub::from_gens(ambient, moduli, Vec::new())
    }

    pub fn full(moduli: Vec<i128>) -> Result<LatSub> {
        let n = moduli.len();
        LatSub::from_gens(n, moduli, identity(n))
    }

    fn pivot(row: &[i128]) -> Option<usize> {
        row.iter().position(|&x| x != 0)
    }

    /// Canonical representative of `v` modulo this submodule.
    pub fn reduce(&self, v: &[i128]) -> Vec<i128> {
        let mut w = v.to_vec();
        for row in &self.lattice {
            if let Some(p) = Self::pivot(row) {
                let q = w[p].div_euclid(row[p]);
                if q != 0 {
                    for (wj, rj) in w.iter_mut().zip(row) {
                        *wj -= q * rj;
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Membership with certificate: coefficients over `gens_raw`, or a
    /// functional separating `v` from the module.
    pub fn membership(&self, v: &[i128]) -> Result<LatMembership> {
        let cols = self.gens_raw.len();
        let a: IMat = (0..self.ambient)
            .map(|r| (0..cols).map(|c| self.gens_raw[c][r]).collect())
            .collect();
        let sys = LatSystem::new(a, self.moduli.clone(), vec![0; cols])?;
        match sys.solve(v)? {
            LatOutcome::Solved { particular, .. } => {
                Ok(LatMembership::Member { coefficients: particular })
            }
            LatOutcome::Unsolvable(f) => Ok(LatMembership::NotMember(f)),
        }
    }

    /// Express a lattice vector in the Hermite basis; exact coefficients.
    fn in_basis(&self, v: &[i128]) -> Result<Vec<i128>> {
        let mut w = v.to_vec();
        let mut coeffs = vec![0i128; self.lattice.len()];
        for (i, row) in self.lattice.iter().enumerate() {
            if let Some(p) = Self::pivot(row) {
                let q = w[p].div_euclid(row[p]);
                if q != 0 {
                    for (wj, rj) in w.iter_mut().zip(row) {
                        *wj -= q * rj;
                    }
                }
                coeffs[i] = q;
            }
        }
        if w.iter().any(|&x| x != 0) {
            return Err(Error::Precondition("vector not in the lattice".into()));
        }
        Ok(coeffs)
    }

    /// Canonical decomposition of the submodule: a minimal generating set
    /// with the annihilator of each generator (0 = free), from the Smith
    /// form of the relation presentation. Generators with annihilator 1
    /// (trivial summands) are dropped.
    pub fn decomposition(&self) -> Result<(IMat, Vec<i128>)> {
        let k = self.lattice.len();
        if k == 0 {
            return Ok((Vec::new(), Vec::new()));
        }
        let mut rel_rows: IMat = Vec::new();
        for (c, &m) in self.moduli.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let mut v = vec![0i128; self.ambient];
            v[c] = m;
            rel_rows.push(self.in_basis(&v)?);
        }
        if rel_rows.is_empty() {
            return Ok((self.lattice.clone(), vec![0; k]));
        }
        let s = smith(&rel_rows)?;
        let mut gens = Vec::new();
        let mut anns = Vec::new();
        for j in 0..k {
            let d = if j < s.d.len() { s.d[j] } else { 0 };
            if d == 1 {
                continue;
            }
            let mut g = vec![0i128; self.ambient];
            for i in 0..k {
                let c = s.v[i][j];
                if c != 0 {
                    for (gc, lc) in g.iter_mut().zip(&self.lattice[i]) {
                        *gc += c * lc;
                    }
                }
            }
            for (x, &m) in g.iter_mut().zip(&self.moduli) {
                if m != 0 {
                    *x = x.rem_euclid(m);
                }
            }
            if g.iter().any(|&x| x != 0) {
                gens.push(g);
                anns.push(d);
            }
        }
        Ok((gens, anns))
    }

    pub fn generator_count(&self) -> usize {
        self.decomposition().map(|(g, _)| g.len()).unwrap_or(0)
    }

    /// Additive order of `v` modulo this submodule: the smallest `t > 0`
    /// with `t * v` inside, or 0 when no multiple lands inside. The set of
    /// such `t` is an ideal of `Z`; its positive generator is the gcd of the
    /// `t`-coordinates of the kernel of `[lattice-basis | -v]`.
    pub fn annihilator(&self, v: &[i128]) -> Result<i128> {
        let r = self.lattice.len();
        let a: IMat = (0..self.ambient)
            .map(|i| {
                let mut row: Vec<i128> = self.lattice.iter().map(|g| g[i]).collect();
                row.push(-v[i]);
                row
            })
            .collect();
        let sys = LatSystem::new(a, vec![0; self.ambient], vec![0; r + 1])?;
        let ker = sys.kernel()?;
        let mut t0: i128 = 0;
        for g in &ker.lattice {
            t0 = gcd(t0, g[r]);
        }
        Ok(t0)
    }

    pub fn sum(&self, other: &LatSub) -> Result<LatSub> {
        if self.ambient != other.ambient || self.moduli != other.moduli {
            return Err(Error::Dimension("submodule sum".into()));
        }
        let mut gens = self.gens_raw.clone();
        gens.extend(other.gens_raw.clone());
        LatSub::from_gens(self.ambient, self.moduli.clone(), gens)
    }

    pub fn intersect(&self, other: &LatSub) -> Result<LatSub> {
        if self.ambient != other.ambient || self.moduli != other.moduli {
            return Err(Error::Dimension("submodule intersection".into()));
        }
        // x in L1 /\ L2 iff x = B1^T a = B2^T b; kernel of [B1^T | -B2^T]
        let (r1, r2) = (self.lattice.len(), other.lattice.len());
        let a: IMat = (0..self.ambient)
            .map(|i| {
                let mut row = Vec::with_capacity(r1 + r2);
                for g in &self.lattice {
                    row.push(g[i]);
                }
                for g in &other.lattice {
                    row.push(-g[i]);
                }
                row
            })
            .collect();
        let sys = LatSystem::new(a, vec![0; self.ambient], vec![0; r1 + r2])?;
        let ker = sys.kernel()?;
        let mut gens = Vec::new();
        for g in &ker.lattice {
            let mut x = vec![0i128; self.ambient];
            for (k, row) in self.lattice.iter().enumerate() {
                for i in 0..self.ambient {
                    x[i] += g[k] * row[i];
                }
            }
            if x.iter().any(|&c| c != 0) {
                gens.push(x);
            }
        }
        LatSub::from_gens(self.ambient, self.moduli.clone(), gens)
    }

    /// Equality of submodules; the Hermite basis is canonical.
    pub fn equals(&self, other: &LatSub) -> bool {
        self.ambient == other.ambient && self.moduli == other.moduli && self.lattice == other.lattice
    }

    pub fn is_subset_of(&self, other: &LatSub) -> bool {
        self.lattice.iter().all(|g| other.contains(g))
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a.rem_euclid(b))
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        let s = if a < 0 { -1 } else { 1 };
        (a.abs(), s, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unsolvable_2x_eq_1_mod_4() {
        // 2x = 1 over Z/4: parity obstruction with verified certificate
        let sys = LatSystem::new(vec![vec![2]], vec![4], vec![4]).unwrap();
        match sys.solve(&[1]).unwrap() {
            LatOutcome::Unsolvable(f) => {
                assert!(sys.verify_certificate(&f, &[1]));
            }
            LatOutcome::Solved { .. } => panic!("2x = 1 must be unsolvable over Z/4"),
        }
    }

    #[test]
    fn kernel_x_plus_y_mod_2() {
        // x + y = 0 over F2: particular (0,0), kernel spanned by (1,1)
        let sys = LatSystem::new(vec![vec![1, 1]], vec![2], vec![2, 2]).unwrap();
        match sys.solve(&[0]).unwrap() {
            LatOutcome::Solved { particular, kernel } => {
                assert_eq!(particular, vec![0, 0]);
                assert!(kernel.contains(&[1, 1]));
                assert!(!kernel.contains(&[1, 0]));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn membership_with_certificates() {
        // (2,0) in span{(1,0)} over Z with coefficient 2
        let s = LatSub::from_gens(2, vec![0, 0], vec![vec![1, 0]]).unwrap();
        match s.membership(&[2, 0]).unwrap() {
            LatMembership::Member { coefficients } => assert_eq!(coefficients, vec![2]),
            _ => panic!(),
        }
        // (1,0) not in span{(2,0)} over Z
        let s = LatSub::from_gens(2, vec![0, 0], vec![vec![2, 0]]).unwrap();
        match s.membership(&[1, 0]).unwrap() {
            LatMembership::NotMember(f) => {
                assert!(f.kills(&[2, 0]));
                assert_ne!(f.eval(&[1, 0]), 0);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn congruence_solution_set() {
        // a - b = 0 mod 4 over Z^2: generators (1,1) and (4,0)
        let sys = LatSystem::new(vec![vec![1, -1]], vec![4], vec![0, 0]).unwrap();
        let ker = sys.kernel().unwrap();
        assert!(ker.contains(&[1, 1]));
        assert!(ker.contains(&[4, 0]));
        assert!(!ker.contains(&[1, 0]));
        assert!(!ker.contains(&[2, 0]));
    }

    #[test]
    fn echelon_generators_over_z4() {
        let s =
            LatSub::from_gens(2, vec![4, 4], vec![vec![1, 3], vec![2, 2], vec![3, 1]]).unwrap();
        let (gens, anns) = s.decomposition().unwrap();
        assert!(!gens.is_empty());
        assert_eq!(gens.len(), anns.len());
        for g in &gens {
            assert!(s.contains(g));
        }
        // a redundant multiple of a generator never appears separately:
        // span{(1,0),(0,2),(2,1)} over Z/4 is free of rank 2
        let t = LatSub::from_gens(2, vec![4, 4], vec![vec![1, 0], vec![0, 2], vec![2, 1]])
            .unwrap();
        let (g2, a2) = t.decomposition().unwrap();
        assert_eq!(g2.len(), 2);
        assert!(a2.iter().all(|&a| a == 4));
    }

    #[test]
    fn snf_certificate_survives_unimodular_noise() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..50 {
            let a: IMat =
                (0..3).map(|_| (0..3).map(|_| rng.gen_range(-4i128..=4)).collect()).collect();
            let d1 = smith(&a).unwrap().d;
            // random elementary row/col noise keeps invariant factors
            let mut b = a.clone();
            let q = rng.gen_range(-3i128..=3);
            for j in 0..3 {
                let t = q * b[1][j];
                b[0][j] += t;
            }
            for i in 0..3 {
                let t = b[i][0];
                b[i][2] -= t;
            }
            let d2 = smith(&b).unwrap().d;
            assert_eq!(d1, d2);
        }
    }
}
