//! Backend-independent solving, kernels, images, and membership for
//! flattened linear maps, plus matrix inversion over grammar rings and the
//! public Smith-normal-form entry point.

use super::flat::{Backend, FlatVec, MatSpace};
use super::gauss::{GfFunctional, GfMembership, GfOutcome, GfSub, GfSystem};
use super::lattice::{LatMembership, LatOutcome, LatSub, LatSystem, NullFunctional};
use super::matrix::Mat;
use super::snf;
use crate::error::{Error, Result};
use crate::ring::{Element, Ring};

/// Certificate that a system has no solution / a vector is not a member:
/// a functional killing all admissible columns but not the target.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    Lat(NullFunctional),
    Gf(GfFunctional),
}

impl Certificate {
    pub fn eval(&self, w: &FlatVec) -> i128 {
        match (self, w) {
            (Certificate::Lat(f), FlatVec::Lat(v)) => f.eval(v),
            (Certificate::Gf(f), FlatVec::Gf(v)) => f.eval(v) as i128,
            _ => panic!("backend mismatch in certificate evaluation"),
        }
    }

    pub fn kills(&self, w: &FlatVec) -> bool {
        self.eval(w) == 0
    }

    pub fn modulus(&self) -> i128 {
        match self {
            Certificate::Lat(f) => f.modulus,
            Certificate::Gf(_) => 2,
        }
    }

    pub fn value(&self) -> i128 {
        match self {
            Certificate::Lat(f) => f.value,
            Certificate::Gf(f) => f.value as i128,
        }
    }
}

/// A submodule of a flattened coordinate module.
#[derive(Debug, Clone, PartialEq)]
pub enum Subspace {
    Lat(LatSub),
    Gf(GfSub),
}

#[derive(Debug, Clone)]
pub enum Membership {
    Member { coefficients: FlatVec },
    NotMember(Certificate),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

impl Subspace {
    pub fn from_gens(
        backend: Backend,
        ambient: usize,
        moduli: &[i128],
        gens: &[FlatVec],
    ) -> Result<Subspace> {
        match backend {
            Backend::Lattice => {
                let rows: Vec<Vec<i128>> = gens
                    .iter()
                    .map(|g| match g {
                        FlatVec::Lat(v) => Ok(v.clone()),
                        _ => Err(Error::Unsupported("backend mismatch".into())),
                    })
                    .collect::<Result<_>>()?;
                Ok(Subspace::Lat(LatSub::from_gens(ambient, moduli.to_vec(), rows)?))
            }
            Backend::Gf(m) => {
                let rows: Vec<Vec<u16>> = gens
                    .iter()
                    .map(|g| match g {
                        FlatVec::Gf(v) => Ok(v.clone()),
                        _ => Err(Error::Unsupported("backend mismatch".into())),
                    })
                    .collect::<Result<_>>()?;
                Ok(Subspace::Gf(GfSub::from_gens(m, ambient, rows)))
            }
        }
    }

    pub fn ambient(&self) -> usize {
        match self {
            Subspace::Lat(s) => s.ambient,
            Subspace::Gf(s) => s.ambient,
        }
    }

    pub fn contains(&self, v: &FlatVec) -> bool {
        match (self, v) {
            (Subspace::Lat(s), FlatVec::Lat(w)) => s.contains(w),
            (Subspace::Gf(s), FlatVec::Gf(w)) => s.contains(w),
            _ => false,
        }
    }

    pub fn reduce(&self, v: &FlatVec) -> FlatVec {
        match (self, v) {
            (Subspace::Lat(s), FlatVec::Lat(w)) => FlatVec::Lat(s.reduce(w)),
            (Subspace::Gf(s), FlatVec::Gf(w)) => FlatVec::Gf(s.reduce(w)),
            _ => panic!("backend mismatch"),
        }
    }

    pub fn membership(&self, v: &FlatVec) -> Result<Membership> {
        match (self, v) {
            (Subspace::Lat(s), FlatVec::Lat(w)) => Ok(match s.membership(w)? {
                LatMembership::Member { coefficients } => {
                    Membership::Member { coefficients: FlatVec::Lat(coefficients) }
                }
                LatMembership::NotMember(f) => Membership::NotMember(Certificate::Lat(f)),
            }),
            (Subspace::Gf(s), FlatVec::Gf(w)) => Ok(match s.membership(w)? {
                GfMembership::Member { coefficients } => {
                    Membership::Member { coefficients: FlatVec::Gf(coefficients) }
                }
                GfMembership::NotMember(f) => Membership::NotMember(Certificate::Gf(f)),
            }),
            _ => Err(Error::Unsupported("backend mismatch".into())),
        }
    }

    /// Canonical minimal generating vectors, paired with
    /// [`Subspace::generator_annihilators`].
    pub fn generators(&self) -> Vec<FlatVec> {
        match self {
            Subspace::Lat(s) => {
                let (gens, _) = s.decomposition().unwrap_or_default();
                gens.into_iter().map(FlatVec::Lat).collect()
            }
            Subspace::Gf(s) => s.basis.iter().cloned().map(FlatVec::Gf).collect(),
        }
    }

    /// Additive order of each canonical generator (0 = free; over a field
    /// backend generators are free module generators).
    pub fn generator_annihilators(&self) -> Vec<i128> {
        match self {
            Subspace::Lat(s) => s.decomposition().map(|(_, a)| a).unwrap_or_default(),
            Subspace::Gf(s) => vec![0; s.dim()],
        }
    }

    pub fn generator_count(&self) -> usize {
        match self {
            Subspace::Lat(s) => s.generator_count(),
            Subspace::Gf(s) => s.dim(),
        }
    }

    /// Additive order of `v` modulo this submodule (lattice backend;
    /// 0 = free). Field coordinates are vector spaces, reported as 0.
    pub fn annihilator(&self, v: &FlatVec) -> Result<i128> {
        match (self, v) {
            (Subspace::Lat(s), FlatVec::Lat(w)) => s.annihilator(w),
            (Subspace::Gf(_), FlatVec::Gf(_)) => Ok(0),
            _ => Err(Error::Unsupported("backend mismatch".into())),
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        match (self, other) {
            (Subspace::Lat(a), Subspace::Lat(b)) => Ok(Subspace::Lat(a.sum(b)?)),
            (Subspace::Gf(a), Subspace::Gf(b)) => Ok(Subspace::Gf(a.sum(b)?)),
            _ => Err(Error::Unsupported("backend mismatch".into())),
        }
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        match (self, other) {
            (Subspace::Lat(a), Subspace::Lat(b)) => Ok(Subspace::Lat(a.intersect(b)?)),
            (Subspace::Gf(a), Subspace::Gf(b)) => Ok(Subspace::Gf(a.intersect(b)?)),
            _ => Err(Error::Unsupported("backend mismatch".into())),
        }
    }

    pub fn equals(&self, other: &Subspace) -> bool {
        match (self, other) {
            (Subspace::Lat(a), Subspace::Lat(b)) => a.equals(b),
            (Subspace::Gf(a), Subspace::Gf(b)) => a.equals(b),
            _ => false,
        }
    }

    pub fn is_subset_of(&self, other: &Subspace) -> bool {
        match (self, other) {
            (Subspace::Lat(a), Subspace::Lat(b)) => a.is_subset_of(b),
            (Subspace::Gf(a), Subspace::Gf(b)) => a.is_subset_of(b),
            _ => false,
        }
    }
}

/// A linear map between flattened matrix spaces, stored column-wise.
#[derive(Debug, Clone)]
pub struct LinMap {
    pub dom: MatSpace,
    pub cod: MatSpace,
    pub cols: Vec<FlatVec>,
}

impl LinMap {
    /// Build a map by evaluating an additive matrix operation on every unit
    /// of the domain. The operation must be additive and compatible with
    /// the coordinate moduli; compatibility is verified.
    pub fn build(
        dom: MatSpace,
        cod: MatSpace,
        f: impl Fn(&Mat) -> Result<Mat>,
    ) -> Result<LinMap> {
        if dom.backend() != cod.backend() {
            return Err(Error::Unsupported("domain/codomain backend mismatch".into()));
        }
        let mut cols = Vec::with_capacity(dom.dim());
        let dom_moduli = dom.moduli();
        let cod_moduli = cod.moduli();
        for k in 0..dom.dim() {
            let unit = dom.unit_mat(k)?;
            let img = f(&unit)?;
            let col = cod.flatten_mat(&img)?;
            if let (FlatVec::Lat(v), Backend::Lattice) = (&col, dom.backend()) {
                let m = dom_moduli[k];
                if m != 0 {
                    for (c, (&x, &cm)) in v.iter().zip(&cod_moduli).enumerate() {
                        let prod = x
                            .checked_mul(m)
                            .ok_or_else(|| Error::Arithmetic("moduli check".into()))?;
                        let ok = if cm == 0 { prod == 0 } else { prod % cm == 0 };
                        if !ok {
                            return Err(Error::Precondition(format!(
                                "map is not defined on torsion coordinate {k} (codomain coord {c})"
                            )));
                        }
                    }
                }
            }
            cols.push(col);
        }
        Ok(LinMap { dom, cod, cols })
    }

    pub fn system(&self) -> Result<SysData> {
        match self.dom.backend() {
            Backend::Lattice => {
                let rows = self.cod.dim();
                let mut a = vec![vec![0i128; self.cols.len()]; rows];
                for (j, col) in self.cols.iter().enumerate() {
                    let FlatVec::Lat(v) = col else {
                        return Err(Error::Unsupported("backend mismatch".into()));
                    };
                    for (i, &x) in v.iter().enumerate() {
                        a[i][j] = x;
                    }
                }
                Ok(SysData::Lat(LatSystem::new(a, self.cod.moduli(), self.dom.moduli())?))
            }
            Backend::Gf(m) => {
                let rows = self.cod.dim();
                let mut a = vec![vec![0u16; self.cols.len()]; rows];
                for (j, col) in self.cols.iter().enumerate() {
                    let FlatVec::Gf(v) = col else {
                        return Err(Error::Unsupported("backend mismatch".into()));
                    };
                    for (i, &x) in v.iter().enumerate() {
                        a[i][j] = x;
                    }
                }
                Ok(SysData::Gf(GfSystem { m, a }))
            }
        }
    }

    pub fn apply_vec(&self, x: &FlatVec) -> Result<FlatVec> {
        match (x, self.dom.backend()) {
            (FlatVec::Lat(xs), Backend::Lattice) => {
                let mut out = vec![0i128; self.cod.dim()];
                for (j, col) in self.cols.iter().enumerate() {
                    if xs[j] == 0 {
                        continue;
                    }
                    let FlatVec::Lat(v) = col else { unreachable!() };
                    for (i, &c) in v.iter().enumerate() {
                        out[i] = out[i]
                            .checked_add(
                                c.checked_mul(xs[j])
                                    .ok_or_else(|| Error::Arithmetic("apply".into()))?,
                            )
                            .ok_or_else(|| Error::Arithmetic("apply".into()))?;
                    }
                }
                // reduce by codomain moduli
                let moduli = self.cod.moduli();
                for (o, &m) in out.iter_mut().zip(&moduli) {
                    if m != 0 {
                        *o = o.rem_euclid(m);
                    }
                }
                Ok(FlatVec::Lat(out))
            }
            (FlatVec::Gf(xs), Backend::Gf(m)) => {
                let mut out = vec![0u16; self.cod.dim()];
                for (j, col) in self.cols.iter().enumerate() {
                    if xs[j] == 0 {
                        continue;
                    }
                    let FlatVec::Gf(v) = col else { unreachable!() };
                    for (i, &c) in v.iter().enumerate() {
                        out[i] ^= crate::ring::gf_mul_pub(m, c, xs[j]);
                    }
                }
                Ok(FlatVec::Gf(out))
            }
            _ => Err(Error::Unsupported("backend mismatch".into())),
        }
    }
}

pub enum SysData {
    Lat(LatSystem),
    Gf(GfSystem),
}

impl SysData {
    /// Assemble a system from explicit columns over heterogeneous blocks;
    /// used when unknowns or equations span several matrix spaces.
    pub fn from_columns(
        backend: Backend,
        nrows: usize,
        cols: &[FlatVec],
        row_moduli: Vec<i128>,
        col_moduli: Vec<i128>,
    ) -> Result<SysData> {
        match backend {
            Backend::Lattice => {
                let mut a = vec![vec![0i128; cols.len()]; nrows];
                for (j, col) in cols.iter().enumerate() {
                    let FlatVec::Lat(v) = col else {
                        return Err(Error::Unsupported("backend mismatch".into()));
                    };
                    if v.len() != nrows {
                        return Err(Error::Dimension("column length".into()));
                    }
                    for (i, &x) in v.iter().enumerate() {
                        a[i][j] = x;
                    }
                }
                Ok(SysData::Lat(LatSystem::new(a, row_moduli, col_moduli)?))
            }
            Backend::Gf(m) => {
                let mut a = vec![vec![0u16; cols.len()]; nrows];
                for (j, col) in cols.iter().enumerate() {
                    let FlatVec::Gf(v) = col else {
                        return Err(Error::Unsupported("backend mismatch".into()));
                    };
                    if v.len() != nrows {
                        return Err(Error::Dimension("column length".into()));
                    }
                    for (i, &x) in v.iter().enumerate() {
                        a[i][j] = x;
                    }
                }
                Ok(SysData::Gf(GfSystem { m, a }))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Solved { particular: FlatVec, kernel: Subspace },
    Unsolvable(Certificate),
}

impl SysData {
    pub fn solve(&self, b: &FlatVec) -> Result<Outcome> {
        match (self, b) {
            (SysData::Lat(sys), FlatVec::Lat(v)) => Ok(match sys.solve(v)? {
                LatOutcome::Solved { particular, kernel } => Outcome::Solved {
                    particular: FlatVec::Lat(particular),
                    kernel: Subspace::Lat(kernel),
                },
                LatOutcome::Unsolvable(f) => Outcome::Unsolvable(Certificate::Lat(f)),
            }),
            (SysData::Gf(sys), FlatVec::Gf(v)) => Ok(match sys.solve(v)? {
                GfOutcome::Solved { particular, kernel } => Outcome::Solved {
                    particular: FlatVec::Gf(particular),
                    kernel: Subspace::Gf(kernel),
                },
                GfOutcome::Unsolvable(f) => Outcome::Unsolvable(Certificate::Gf(f)),
            }),
            _ => Err(Error::Unsupported("backend mismatch".into())),
        }
    }

    pub fn verify_certificate(&self, cert: &Certificate, b: &FlatVec) -> bool {
        match (self, cert, b) {
            (SysData::Lat(sys), Certificate::Lat(f), FlatVec::Lat(v)) => {
                sys.verify_certificate(f, v)
            }
            (SysData::Gf(sys), Certificate::Gf(f), FlatVec::Gf(v)) => {
                sys.verify_certificate(f, v)
            }
            _ => false,
        }
    }
}

/// Kernel of a map restricted to a subset of domain coordinates, returned
/// as full-width domain vectors (zero outside the subset). Used for graded
/// slices of canonical submodules.
pub fn kernel_on_columns(map: &LinMap, keep: &[usize]) -> Result<Vec<FlatVec>> {
    let cols: Vec<FlatVec> = keep.iter().map(|&k| map.cols[k].clone()).collect();
    let moduli = map.dom.moduli();
    let col_moduli: Vec<i128> = keep.iter().map(|&k| moduli[k]).collect();
    let sys = SysData::from_columns(
        map.dom.backend(),
        map.cod.dim(),
        &cols,
        map.cod.moduli(),
        col_moduli,
    )?;
    let zero = FlatVec::zeros(map.cod.backend(), map.cod.dim());
    let Outcome::Solved { kernel, .. } = sys.solve(&zero)? else {
        unreachable!("homogeneous system")
    };
    let mut out = Vec::new();
    for g in kernel.generators() {
        let mut full = match map.dom.backend() {
            Backend::Lattice => FlatVec::Lat(vec![0; map.dom.dim()]),
            Backend::Gf(_) => FlatVec::Gf(vec![0; map.dom.dim()]),
        };
        match (&mut full, &g) {
            (FlatVec::Lat(f), FlatVec::Lat(gv)) => {
                for (slot, &k) in keep.iter().enumerate() {
                    f[k] = gv[slot];
                }
            }
            (FlatVec::Gf(f), FlatVec::Gf(gv)) => {
                for (slot, &k) in keep.iter().enumerate() {
                    f[k] = gv[slot];
                }
            }
            _ => unreachable!(),
        }
        out.push(full);
    }
    Ok(out)
}

/// Kernel of a linear map, as a subspace of the domain.
pub fn kernel_of(map: &LinMap) -> Result<Subspace> {
    let sys = map.system()?;
    let zero = FlatVec::zeros(map.cod.backend(), map.cod.dim());
    match sys.solve(&zero)? {
        Outcome::Solved { kernel, .. } => Ok(kernel),
        Outcome::Unsolvable(_) => unreachable!("homogeneous systems are solvable"),
    }
}

/// Image of a linear map: the canonical subspace of the codomain together
/// with matrix generators and exact preimages for each generator.
pub struct ImageData {
    pub sub: Subspace,
    /// canonical generators as codomain matrices
    pub gens: Vec<Mat>,
    /// one exact preimage per generator
    pub preimages: Vec<Mat>,
    /// additive order of each generator modulo zero (0 = free)
    pub annihilators: Vec<i128>,
}

/// Image span without preimage or annihilator data; one elimination.
pub fn image_span(map: &LinMap) -> Result<Subspace> {
    let nonzero: Vec<FlatVec> =
        map.cols.iter().filter(|c| !c.is_zero()).cloned().collect();
    Subspace::from_gens(map.cod.backend(), map.cod.dim(), &map.cod.moduli(), &nonzero)
}

pub fn image_of(map: &LinMap) -> Result<ImageData> {
    let sub = Subspace::from_gens(
        map.cod.backend(),
        map.cod.dim(),
        &map.cod.moduli(),
        &map.cols,
    )?;
    let mut gens = Vec::new();
    let mut preimages = Vec::new();
    let annihilators = sub.generator_annihilators();
    for g in sub.generators() {
        let m = map.cod.unflatten_mat(&g)?;
        match sub.membership(&g)? {
            Membership::Member { coefficients } => {
                let pre = map.dom.unflatten_mat(&coefficients)?;
                gens.push(m);
                preimages.push(pre);
            }
            Membership::NotMember(_) => {
                return Err(Error::Verification(
                    "canonical image generator not in the span of the columns".into(),
                ))
            }
        }
    }
    Ok(ImageData { sub, gens, preimages, annihilators })
}

/// Largest absolute monomial degree appearing in a value, the window shift
/// caused by multiplying with it.
pub fn max_abs_degree(ring: &Ring, v: &crate::ring::Value) -> i64 {
    use crate::ring::Value;
    match (ring, v) {
        (Ring::Poly { base, .. } | Ring::Laurent { base, .. }, Value::Poly(map)) => map
            .iter()
            .map(|(e, c)| e.abs() + max_abs_degree(base, c))
            .max()
            .unwrap_or(0),
        (Ring::Quot { base, .. }, v) => max_abs_degree(base, v),
        (Ring::Product(fs), Value::Tuple(t)) => {
            t.iter().zip(fs).map(|(c, f)| max_abs_degree(f, c)).max().unwrap_or(0)
        }
        _ => 0,
    }
}

fn mat_max_degree(m: &Mat) -> i64 {
    let mut d = 0;
    for i in 0..m.rows {
        for j in 0..m.cols {
            d = d.max(max_abs_degree(&m.ring, m.value_at(i, j)));
        }
    }
    d
}

/// Invert a square matrix over its ring by solving `M X = 1`, with the
/// unknown in the degree-`degree` window (the equation window widens by the
/// degree of `M`'s entries); verifies `X M = 1` as well. Matrices over
/// product rings invert componentwise.
pub fn invert_mat(m: &Mat, degree: i64) -> Result<Mat> {
    if m.rows != m.cols {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    if let Some(comps) = m.split_components() {
        let inverses: Vec<Mat> =
            comps.iter().map(|c| invert_mat(c, degree)).collect::<Result<_>>()?;
        return Mat::assemble_components(m.ring.clone(), &inverses);
    }
    let dom = MatSpace::new(m.ring.clone(), degree, m.rows, m.cols)?;
    let cod = MatSpace::new(m.ring.clone(), degree + mat_max_degree(m), m.rows, m.cols)?;
    let map = LinMap::build(dom.clone(), cod.clone(), |x| m.mul(x))?;
    let sys = map.system()?;
    let id = Mat::identity(m.ring.clone(), m.rows);
    let target = cod.flatten_mat(&id)?;
    match sys.solve(&target)? {
        Outcome::Solved { particular, .. } => {
            let x = dom.unflatten_mat(&particular)?;
            if !x.mul(m)?.is_identity() {
                return Err(Error::NotInvertible("one-sided inverse only".into()));
            }
            Ok(x)
        }
        Outcome::Unsolvable(_) => Err(Error::NotInvertible(format!("matrix over {:?}", m.ring))),
    }
}

/// Invert a ring element through the flat window.
pub fn invert_element(e: &Element, degree: i64) -> Result<Element> {
    if let Ok(inv) = e.try_inv() {
        return Ok(inv);
    }
    let ring = e.ring.clone();
    let m = Mat::from_values(ring.clone(), 1, 1, vec![e.v.clone()])?;
    let inv = invert_mat(&m, degree)?;
    Ok(inv.get(0, 0))
}

/// Smith normal form of a matrix of constants over `Z` or `Z/n`:
/// `(d, u, v)` with `u * m * v = diag(d)` and each `d_i | d_(i+1)`.
/// Over `Z/n` the diagonal is normalized to the canonical ideal generators
/// `gcd(d_i, n)`.
pub fn smith_normal_form(m: &Mat) -> Result<(Mat, Mat, Mat)> {
    let modulus: Option<i128> = match &*m.ring {
        Ring::Int => None,
        Ring::ZMod(n) => Some(*n as i128),
        _ => {
            return Err(Error::Unsupported(
                "smith normal form needs entries over Z or Z/n".into(),
            ))
        }
    };
    let mut a = vec![vec![0i128; m.cols]; m.rows];
    for i in 0..m.rows {
        for j in 0..m.cols {
            match m.value_at(i, j) {
                crate::ring::Value::Int(x) => a[i][j] = *x,
                _ => return Err(Error::Parse("constant entries expected".into())),
            }
        }
    }
    let s = snf::smith(&a)?;
    let mut d = s.d.clone();
    let mut u = s.u.clone();
    if let Some(n) = modulus {
        for (i, di) in d.iter_mut().enumerate() {
            let r = di.rem_euclid(n);
            if r == 0 {
                *di = 0;
                continue;
            }
            let g = gcd_i(r, n);
            if r != g {
                // find a unit scaling r to its canonical associate g
                let unit = (1..n)
                    .find(|&u0| gcd_i(u0, n) == 1 && (u0 * r - g).rem_euclid(n) == 0)
                    .ok_or_else(|| Error::Arithmetic("associate search".into()))?;
                for x in u[i].iter_mut() {
                    *x = (*x * unit).rem_euclid(n);
                }
            }
            *di = g;
        }
    }
    let ring = m.ring.clone();
    let rows = m.rows;
    let cols = m.cols;
    let dm = {
        let mut out = Mat::zero(ring.clone(), rows, cols);
        for (i, &di) in d.iter().enumerate() {
            out.set(i, i, ring.int_elem(di))?;
        }
        out
    };
    let um = Mat::from_values(
        ring.clone(),
        rows,
        rows,
        u.iter().flat_map(|r| r.iter().map(|&x| ring.from_int(x))).collect(),
    )?;
    let vm = Mat::from_values(
        ring.clone(),
        cols,
        cols,
        s.v.iter().flat_map(|r| r.iter().map(|&x| ring.from_int(x))).collect(),
    )?;
    Ok((dm, um, vm))
}

fn gcd_i(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i(b, a.rem_euclid(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_over_z_and_z4() {
        let z = Ring::int();
        let m = Mat::from_ints(&z, &[&[2, 0], &[0, 3]]);
        let (d, u, v) = smith_normal_form(&m).unwrap();
        assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), d);
        assert_eq!(d.get(0, 0).to_string(), "1");
        assert_eq!(d.get(1, 1).to_string(), "6");

        let z4 = Ring::zmod(4);
        let m = Mat::from_ints(&z4, &[&[2]]);
        let (d, _, _) = smith_normal_form(&m).unwrap();
        assert_eq!(d.get(0, 0).to_string(), "2");

        let m = Mat::identity(z, 3);
        let (d, _, _) = smith_normal_form(&m).unwrap();
        assert!(d.is_identity());
    }

    #[test]
    fn invert_unipotent_over_quotient() {
        let r = Ring::quot(Ring::poly(Ring::int(), "x"), "4x").unwrap();
        let a = Mat::parse(&r, &[&["1", "2"], &["0", "1"]]).unwrap();
        let inv = invert_mat(&a, 2).unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        // 1 + 2x is a unit of Z[x]/<4x>, its own inverse
        let e = r.parse("1+2x").unwrap();
        let ei = invert_element(&e, 3).unwrap();
        assert!(e.mul(&ei).unwrap().is_one());
    }

    #[test]
    fn flat_solve_with_mixed_moduli() {
        // l + sigma(l) = 1 where sigma is the swap on M2: over Z[x]/<4x>
        // the off-diagonal entries must satisfy 2q = 0
        let r = Ring::quot(Ring::poly(Ring::int(), "x"), "4x").unwrap();
        let space = MatSpace::new(r.clone(), 2, 2, 2).unwrap();
        let u = Mat::from_ints(&r, &[&[0, 1], &[1, 0]]);
        let map = LinMap::build(space.clone(), space.clone(), |x| {
            let s = u.mul(&x.transpose()).unwrap().mul(&u).unwrap();
            x.add(&s)
        })
        .unwrap();
        let sys = map.system().unwrap();
        let id = Mat::identity(r.clone(), 2);
        let b = space.flatten_mat(&id).unwrap();
        match sys.solve(&b).unwrap() {
            Outcome::Solved { particular, kernel } => {
                let l = space.unflatten_mat(&particular).unwrap();
                let s = u.mul(&l.transpose()).unwrap().mul(&u).unwrap();
                assert!(l.add(&s).unwrap().is_identity());
                // 2x * E12 is in the kernel (skew), x * E12 is not
                let mut k1 = Mat::zero(r.clone(), 2, 2);
                k1.set(0, 1, r.parse("2x").unwrap()).unwrap();
                assert!(kernel.contains(&space.flatten_mat(&k1).unwrap()));
                let mut k2 = Mat::zero(r.clone(), 2, 2);
                k2.set(0, 1, r.parse("x").unwrap()).unwrap();
                assert!(!kernel.contains(&space.flatten_mat(&k2).unwrap()));
            }
            Outcome::Unsolvable(_) => panic!("solvable system"),
        }
    }
}
