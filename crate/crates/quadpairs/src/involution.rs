//! Matrix algebras with involution.
//!
//! An involution of the first kind on `M_n(R)` is stored through its datum
//! `u`: an invertible matrix with `u^T = eps * u` defining
//! `sigma(x) = u^-1 x^T u`, the adjoint of the bilinear form
//! `b(v, w) = v^T u w`. The four canonical submodules Sym, Alt, Skew, Symd
//! are kernels and images of `1 -+ sigma` computed exactly in a degree
//! window.

use crate::error::{Error, Result};
use crate::linalg::{
    image_of, invert_mat, kernel_of, solve::max_abs_degree, LinMap, Mat, MatSpace, Membership,
    Subspace,
};
use crate::ring::{Element, Ring};
use std::fmt;
use std::sync::Arc;

/// A bilinear form on a free module, given by its Gram matrix.
#[derive(Debug, Clone)]
pub struct BilinearForm {
    pub ring: Arc<Ring>,
    pub gram: Mat,
}

impl BilinearForm {
    pub fn new(gram: Mat) -> BilinearForm {
        BilinearForm { ring: gram.ring.clone(), gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows
    }

    /// Evaluate on column vectors.
    pub fn eval(&self, v: &Mat, w: &Mat) -> Result<Element> {
        let r = v.transpose().mul(&self.gram)?.mul(w)?;
        Ok(r.get(0, 0))
    }

    /// Regular iff the Gram matrix is invertible over the ring.
    pub fn regular(&self, window: i64) -> bool {
        invert_mat(&self.gram, window).is_ok()
    }
}

/// A quadratic form `q(v) = v^T Q v` with derived polar form `Q + Q^T`.
#[derive(Debug, Clone)]
pub struct QuadraticForm {
    pub ring: Arc<Ring>,
    pub coeffs: Mat,
}

impl QuadraticForm {
    pub fn new(coeffs: Mat) -> QuadraticForm {
        QuadraticForm { ring: coeffs.ring.clone(), coeffs }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.rows
    }

    pub fn eval(&self, v: &Mat) -> Result<Element> {
        let r = v.transpose().mul(&self.coeffs)?.mul(v)?;
        Ok(r.get(0, 0))
    }

    pub fn polar(&self) -> Result<BilinearForm> {
        Ok(BilinearForm::new(self.coeffs.add(&self.coeffs.transpose())?))
    }
}

/// Type flags of an involution. In residue characteristic 2 a datum can be
/// simultaneously symmetric and skew-symmetric, so the flags are not
/// exclusive; `symplectic` additionally requires the form to be alternating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvolutionType {
    pub orthogonal: bool,
    pub weakly_symplectic: bool,
    pub symplectic: bool,
}

impl fmt::Display for InvolutionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symplectic {
            write!(f, "symplectic")?;
            if self.orthogonal {
                write!(f, " (and orthogonal)")?;
            }
            Ok(())
        } else if self.weakly_symplectic && self.orthogonal {
            write!(f, "orthogonal and weakly symplectic")
        } else if self.weakly_symplectic {
            write!(f, "weakly symplectic")
        } else {
            write!(f, "orthogonal")
        }
    }
}

/// `M_n(R)` with involution `sigma(x) = u^-1 x^T u`.
#[derive(Debug, Clone)]
pub struct Involution {
    pub ring: Arc<Ring>,
    pub n: usize,
    pub u: Mat,
    pub u_inv: Mat,
    ty: InvolutionType,
}

/// Which canonical submodule of `(M_n(R), sigma)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    /// kernel of `1 - sigma`
    Sym,
    /// image of `1 - sigma`
    Alt,
    /// kernel of `1 + sigma`
    Skew,
    /// image of `1 + sigma`
    Symd,
}

/// A canonical submodule with echelon generators, annihilator data, and
/// (for the image parts) one exact preimage per generator.
#[derive(Debug, Clone)]
pub struct CanonicalBasis {
    pub part: Part,
    pub space: MatSpace,
    pub sub: Subspace,
    pub gens: Vec<Mat>,
    pub preimages: Option<Vec<Mat>>,
    pub annihilators: Vec<i128>,
}

impl CanonicalBasis {
    pub fn contains(&self, m: &Mat) -> Result<bool> {
        Ok(self.sub.contains(&self.space.flatten_mat(m)?))
    }

    pub fn membership(&self, m: &Mat) -> Result<Membership> {
        self.sub.membership(&self.space.flatten_mat(m)?)
    }

    /// Canonical representative of `m` modulo this submodule.
    pub fn reduce(&self, m: &Mat) -> Result<Mat> {
        let v = self.space.flatten_mat(m)?;
        self.space.unflatten_mat(&self.sub.reduce(&v))
    }
}

impl Involution {
    /// Build from the datum; checks invertibility, that `u` is symmetric or
    /// antisymmetric, and that `sigma` squares to the identity on the
    /// standard basis.
    pub fn new(ring: Arc<Ring>, u: Mat) -> Result<Involution> {
        Involution::with_window(ring, u, 2)
    }

    pub fn with_window(ring: Arc<Ring>, u: Mat, window: i64) -> Result<Involution> {
        if u.rows != u.cols {
            return Err(Error::Dimension("involution datum must be square".into()));
        }
        if *u.ring != *ring {
            return Err(Error::RingMismatch("datum ring".into()));
        }
        let n = u.rows;
        let u_inv = invert_mat(&u, window)
            .map_err(|_| Error::Precondition("involution datum is not invertible".into()))?;
        let ut = u.transpose();
        let sym = ut == u;
        let antisym = ut == u.neg()?;
        if !sym && !antisym {
            return Err(Error::Precondition(
                "datum is neither symmetric nor antisymmetric".into(),
            ));
        }
        let alternating = antisym && (0..n).all(|i| ring.is_zero(u.value_at(i, i)));
        let ty = InvolutionType {
            orthogonal: sym,
            weakly_symplectic: antisym,
            symplectic: alternating,
        };
        let a = Involution { ring, n, u, u_inv, ty };
        for i in 0..n {
            for j in 0..n {
                let e = Mat::unit(a.ring.clone(), n, i, j);
                if a.sigma(&a.sigma(&e)?)? != e {
                    return Err(Error::Verification("sigma^2 != id on the basis".into()));
                }
            }
        }
        Ok(a)
    }

    /// The adjoint involution of a regular (+-)-symmetric bilinear form.
    pub fn adjoint(b: &BilinearForm) -> Result<Involution> {
        Involution::new(b.ring.clone(), b.gram.clone())
    }

    /// Transpose involution (`u = 1`).
    pub fn transpose(ring: Arc<Ring>, n: usize) -> Result<Involution> {
        Involution::new(ring.clone(), Mat::identity(ring, n))
    }

    /// Hyperbolic involution in even degree `2 * half`: the adjoint of the
    /// split form `x1 x2 + x3 x4 + ...`, with antidiagonal swap blocks.
    pub fn hyperbolic(ring: Arc<Ring>, half: usize) -> Result<Involution> {
        let n = 2 * half;
        let mut u = Mat::zero(ring.clone(), n, n);
        for b in 0..half {
            u.set(2 * b, 2 * b + 1, ring.one_elem())?;
            u.set(2 * b + 1, 2 * b, ring.one_elem())?;
        }
        Involution::new(ring, u)
    }

    pub fn sigma(&self, x: &Mat) -> Result<Mat> {
        self.u_inv.mul(&x.transpose())?.mul(&self.u)
    }

    pub fn involution_type(&self) -> InvolutionType {
        self.ty
    }

    /// Full anti-automorphism check on all basis pairs; separate from
    /// construction since it is quartic in `n`.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            for j in 0..self.n {
                let eij = Mat::unit(self.ring.clone(), self.n, i, j);
                for k in 0..self.n {
                    for l in 0..self.n {
                        let ekl = Mat::unit(self.ring.clone(), self.n, k, l);
                        let lhs = self.sigma(&eij.mul(&ekl)?)?;
                        let rhs = self.sigma(&ekl)?.mul(&self.sigma(&eij)?)?;
                        if lhs != rhs {
                            return Err(Error::Verification(format!(
                                "sigma is not an anti-automorphism at E{i}{j}, E{k}{l}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Degree shift caused by conjugating with the datum.
    pub fn window_shift(&self) -> i64 {
        let mut d = 0;
        for m in [&self.u, &self.u_inv] {
            for i in 0..self.n {
                for j in 0..self.n {
                    d = d.max(max_abs_degree(&self.ring, m.value_at(i, j)));
                }
            }
        }
        2 * d
    }

    pub fn mat_space(&self, degree: i64) -> Result<MatSpace> {
        MatSpace::new(self.ring.clone(), degree, self.n, self.n)
    }

    fn part_map(&self, part: Part, degree: i64) -> Result<LinMap> {
        let dom = self.mat_space(degree)?;
        let cod = self.mat_space(degree + self.window_shift())?;
        let plus = matches!(part, Part::Skew | Part::Symd);
        LinMap::build(dom, cod, move |x| {
            let s = self.sigma(x)?;
            if plus {
                x.add(&s)
            } else {
                x.sub(&s)
            }
        })
    }

    /// Generating data for Sym, Alt, Skew, or Symd in the degree window.
    pub fn canonical_basis(&self, part: Part, degree: i64) -> Result<CanonicalBasis> {
        let map = self.part_map(part, degree)?;
        match part {
            Part::Sym | Part::Skew => {
                let sub = kernel_of(&map)?;
                let space = map.dom.clone();
                let annihilators = sub.generator_annihilators();
                let gens: Vec<Mat> = sub
                    .generators()
                    .iter()
                    .map(|g| space.unflatten_mat(g))
                    .collect::<Result<_>>()?;
                Ok(CanonicalBasis { part, space, sub, gens, preimages: None, annihilators })
            }
            Part::Alt | Part::Symd => {
                let img = image_of(&map)?;
                // re-express the generators in the domain window; for a
                // constant datum the images stay inside it
                let space = map.dom.clone();
                let mut gens = Vec::new();
                let mut vecs = Vec::new();
                for g in &img.gens {
                    let v = space.flatten_mat(g)?;
                    vecs.push(v);
                    gens.push(g.clone());
                }
                let sub = Subspace::from_gens(space.backend(), space.dim(), &space.moduli(), &vecs)?;
                Ok(CanonicalBasis {
                    part,
                    space,
                    sub,
                    gens,
                    preimages: Some(img.preimages),
                    annihilators: img.annihilators,
                })
            }
        }
    }

    /// Lightweight submodule span without preimages or annihilators, for
    /// membership tests and coset reductions on large windows.
    pub fn part_span(&self, part: Part, degree: i64) -> Result<(MatSpace, Subspace)> {
        let map = self.part_map(part, degree)?;
        let space = map.dom.clone();
        let sub = match part {
            Part::Sym | Part::Skew => kernel_of(&map)?,
            Part::Alt | Part::Symd => {
                let img = crate::linalg::solve::image_span(&map)?;
                // the span lives in the (possibly wider) codomain window;
                // re-express it in the domain window
                let gens: Vec<_> = img
                    .generators()
                    .iter()
                    .map(|g| {
                        let m = map.cod.unflatten_mat(g)?;
                        space.flatten_mat(&m)
                    })
                    .collect::<Result<_>>()?;
                Subspace::from_gens(space.backend(), space.dim(), &space.moduli(), &gens)?
            }
        };
        Ok((space, sub))
    }

    /// Trace pairings on Symd and Alt for an orthogonal involution:
    /// `b_+((x + sx), (y + sy)) = Trd((x + sx) y)` and the analogue with
    /// minus signs. Returns Gram matrices over the canonical generators and
    /// whether `b_-` is regular.
    pub fn trace_pairings(&self, degree: i64) -> Result<TracePairings> {
        if !self.ty.orthogonal {
            return Err(Error::Precondition("trace pairings need an orthogonal involution".into()));
        }
        let symd = self.canonical_basis(Part::Symd, degree)?;
        let alt = self.canonical_basis(Part::Alt, degree)?;
        let gram = |basis: &CanonicalBasis| -> Result<Mat> {
            let gens = &basis.gens;
            let pres = basis.preimages.as_ref().expect("image parts carry preimages");
            let g = gens.len();
            let mut out = Mat::zero(self.ring.clone(), g, g);
            for (k, gk) in gens.iter().enumerate() {
                for (l, pl) in pres.iter().enumerate() {
                    out.set(k, l, gk.mul(pl)?.trace()?)?;
                }
            }
            Ok(out)
        };
        let b_plus = gram(&symd)?;
        let b_minus = gram(&alt)?;
        let b_minus_regular = invert_mat(&b_minus, degree).is_ok();
        Ok(TracePairings { symd, alt, b_plus, b_minus, b_minus_regular })
    }

    /// `Inn(u') compose sigma` as a new algebra with involution, plus the
    /// orthogonality predicate `u' in Sym(A, sigma)`.
    pub fn conjugate(&self, u: &Mat, window: i64) -> Result<(Involution, bool)> {
        let u_inv = invert_mat(u, window)
            .map_err(|_| Error::Precondition("conjugating element must be invertible".into()))?;
        let datum = self.u.mul(&u_inv)?;
        let out = Involution::with_window(self.ring.clone(), datum, window)?;
        let orthogonal = self.sigma(u)? == *u;
        Ok((out, orthogonal))
    }
}

pub struct TracePairings {
    pub symd: CanonicalBasis,
    pub alt: CanonicalBasis,
    pub b_plus: Mat,
    pub b_minus: Mat,
    pub b_minus_regular: bool,
}

/// An algebra automorphism of `M_n(R)`, inner or given by basis images.
#[derive(Debug, Clone)]
pub enum Automorphism {
    Inner(Mat),
    /// images of the matrix units E_ij in row-major order
    Images { ring: Arc<Ring>, n: usize, images: Vec<Mat> },
}

impl Automorphism {
    pub fn ring(&self) -> Arc<Ring> {
        match self {
            Automorphism::Inner(v) => v.ring.clone(),
            Automorphism::Images { ring, .. } => ring.clone(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Automorphism::Inner(v) => v.rows,
            Automorphism::Images { n, .. } => *n,
        }
    }

    pub fn apply(&self, x: &Mat, window: i64) -> Result<Mat> {
        match self {
            Automorphism::Inner(v) => {
                let vi = invert_mat(v, window)?;
                v.mul(x)?.mul(&vi)
            }
            Automorphism::Images { ring, n, images } => {
                let mut acc = Mat::zero(ring.clone(), *n, *n);
                for i in 0..*n {
                    for j in 0..*n {
                        let c = x.get(i, j);
                        acc = acc.add(&images[i * n + j].scale(&c)?)?;
                    }
                }
                Ok(acc)
            }
        }
    }

    /// Check the automorphism axioms on basis products and bijectivity.
    pub fn check(&self, window: i64) -> Result<()> {
        let ring = self.ring();
        let n = self.degree();
        match self {
            Automorphism::Inner(v) => {
                invert_mat(v, window)
                    .map_err(|_| Error::Precondition("inner datum not invertible".into()))?;
                Ok(())
            }
            Automorphism::Images { images, .. } => {
                if images.len() != n * n {
                    return Err(Error::Dimension("need n^2 images".into()));
                }
                let mut one = Mat::zero(ring.clone(), n, n);
                for i in 0..n {
                    one = one.add(&images[i * n + i])?;
                }
                if !one.is_identity() {
                    return Err(Error::Precondition("phi(1) != 1".into()));
                }
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            for l in 0..n {
                                let lhs = images[i * n + j].mul(&images[k * n + l])?;
                                let rhs = if j == k {
                                    images[i * n + l].clone()
                                } else {
                                    Mat::zero(ring.clone(), n, n)
                                };
                                if lhs != rhs {
                                    return Err(Error::Precondition(
                                        "images do not satisfy the unit relations".into(),
                                    ));
                                }
                            }
                        }
                    }
                }
                // bijectivity: the images span the full flat window
                let space = MatSpace::new(ring.clone(), window, n, n)?;
                let map = LinMap::build(space.clone(), space.clone(), |x| self.apply(x, window))?;
                let img = image_of(&map)?;
                let full = Subspace::from_gens(
                    space.backend(),
                    space.dim(),
                    &space.moduli(),
                    &(0..space.dim())
                        .map(|k| space.flatten_mat(&space.unit_mat(k)?))
                        .collect::<Result<Vec<_>>>()?,
                )?;
                if !img.sub.equals(&full) {
                    return Err(Error::Precondition("images are not bijective".into()));
                }
                Ok(())
            }
        }
    }
}

/// The commutant module of an automorphism `phi`:
/// `{x : phi(a) x = x a for all a}`, with a freeness verdict. A free rank-1
/// commutant with invertible generator `g` certifies `phi = Inn(g)`.
pub struct CommutantModule {
    pub sub: Subspace,
    pub gens: Vec<Mat>,
    pub annihilators: Vec<i128>,
    pub free_rank_one: bool,
    /// invertible generator witnessing inner-ness, verified on the basis
    pub inner_witness: Option<Mat>,
}

pub fn commutant_module(phi: &Automorphism, window: i64) -> Result<CommutantModule> {
    phi.check(window)?;
    let ring = phi.ring();
    let n = phi.degree();
    let images: Vec<Mat> = (0..n * n)
        .map(|k| phi.apply(&Mat::unit(ring.clone(), n, k / n, k % n), window))
        .collect::<Result<_>>()?;
    let shift: i64 = images
        .iter()
        .map(|m| {
            (0..n * n)
                .map(|k| max_abs_degree(&ring, m.value_at(k / n, k % n)))
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    let dom = MatSpace::new(ring.clone(), window, n, n)?;
    // stack the n^2 equations phi(E_ij) x - x E_ij vertically
    let cod = MatSpace::new(ring.clone(), window + shift, n * n * n, n)?;
    let images_ref = &images;
    let ring_ref = &ring;
    let map = LinMap::build(dom.clone(), cod, move |x| {
        let mut rows = Mat::zero(ring_ref.clone(), n * n * n, n);
        for (idx, img) in images_ref.iter().enumerate() {
            let e = Mat::unit(ring_ref.clone(), n, idx / n, idx % n);
            let d = img.mul(x)?.sub(&x.mul(&e)?)?;
            for i in 0..n {
                for j in 0..n {
                    rows.set(idx * n + i, j, d.get(i, j))?;
                }
            }
        }
        Ok(rows)
    })?;
    let sub = kernel_of(&map)?;
    let zero = Subspace::from_gens(dom.backend(), dom.dim(), &dom.moduli(), &[])?;
    let mut gens = Vec::new();
    let mut annihilators = Vec::new();
    for g in sub.generators() {
        annihilators.push(zero.annihilator(&g)?);
        gens.push(dom.unflatten_mat(&g)?);
    }
    let free_rank_one = gens.len() == 1 && annihilators[0] == 0;
    let mut inner_witness = None;
    if free_rank_one {
        let g = &gens[0];
        if let Ok(gi) = invert_mat(g, window) {
            let mut ok = true;
            for k in 0..n * n {
                let e = Mat::unit(ring.clone(), n, k / n, k % n);
                if phi.apply(&e, window)? != g.mul(&e)?.mul(&gi)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                inner_witness = Some(g.clone());
            }
        }
    }
    Ok(CommutantModule { sub, gens, annihilators, free_rank_one, inner_witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2z_transpose() -> Involution {
        Involution::transpose(Ring::int(), 2).unwrap()
    }

    fn m2z_swap() -> Involution {
        Involution::hyperbolic(Ring::int(), 1).unwrap()
    }

    #[test]
    fn adjoint_of_hyperbolic_form_swaps_diagonal() {
        let a = m2z_swap();
        let z = Ring::int();
        // sigma([[a,b],[c,d]]) = [[d,b],[c,a]]
        let x = Mat::from_ints(&z, &[&[1, 2], &[3, 4]]);
        let s = a.sigma(&x).unwrap();
        assert_eq!(s, Mat::from_ints(&z, &[&[4, 2], &[3, 1]]));
        a.validate().unwrap();
    }

    #[test]
    fn adjoint_of_identity_is_transpose() {
        let a = m2z_transpose();
        let z = Ring::int();
        let x = Mat::from_ints(&z, &[&[1, 2], &[3, 4]]);
        assert_eq!(a.sigma(&x).unwrap(), x.transpose());
    }

    #[test]
    fn types_of_small_data() {
        // skew datum over Z: weakly symplectic and symplectic (alternating)
        let z = Ring::int();
        let j = Mat::from_ints(&z, &[&[0, 1], &[-1, 0]]);
        let a = Involution::new(z, j).unwrap();
        let t = a.involution_type();
        assert!(!t.orthogonal && t.weakly_symplectic && t.symplectic);

        // swap over GF(4): symplectic and orthogonal (characteristic 2)
        let a = Involution::hyperbolic(Ring::gf(2), 1).unwrap();
        let t = a.involution_type();
        assert!(t.orthogonal && t.weakly_symplectic && t.symplectic);

        // transpose over Z: orthogonal, not symplectic
        let t = m2z_transpose().involution_type();
        assert!(t.orthogonal && !t.weakly_symplectic && !t.symplectic);

        // [[1,1],[1,0]] over Z/2: weakly symplectic but not symplectic
        let z2 = Ring::zmod(2);
        let u = Mat::from_ints(&z2, &[&[1, 1], &[1, 0]]);
        let a = Involution::new(z2, u).unwrap();
        let t = a.involution_type();
        assert!(t.weakly_symplectic && !t.symplectic);
    }

    #[test]
    fn sym_and_alt_bases_for_transpose() {
        let a = m2z_transpose();
        let sym = a.canonical_basis(Part::Sym, 0).unwrap();
        assert_eq!(sym.gens.len(), 3);
        let alt = a.canonical_basis(Part::Alt, 0).unwrap();
        assert_eq!(alt.gens.len(), 1);
        let z = Ring::int();
        let g = Mat::from_ints(&z, &[&[0, 1], &[-1, 0]]);
        assert!(alt.contains(&g).unwrap());
        // diag(1,-1) lies in Alt of the swap involution
        let a = m2z_swap();
        let alt = a.canonical_basis(Part::Alt, 0).unwrap();
        let d = Mat::from_ints(&z, &[&[1, 0], &[0, -1]]);
        assert!(alt.contains(&d).unwrap());
    }

    #[test]
    fn skew_over_mixed_characteristic_chart() {
        // off-diagonal Skew entries over Z[x]/<4x> are 2 * (no constant term)
        let r = Ring::quot(Ring::poly(Ring::int(), "x"), "4x").unwrap();
        let a = Involution::hyperbolic(r.clone(), 1).unwrap();
        let skew = a.canonical_basis(Part::Skew, 2).unwrap();
        let mut good = Mat::zero(r.clone(), 2, 2);
        good.set(0, 1, r.parse("2x").unwrap()).unwrap();
        assert!(skew.contains(&good).unwrap());
        let mut bad = Mat::zero(r.clone(), 2, 2);
        bad.set(0, 1, r.parse("x").unwrap()).unwrap();
        assert!(!skew.contains(&bad).unwrap());
        let mut bad2 = Mat::zero(r.clone(), 2, 2);
        bad2.set(0, 1, r.parse("2").unwrap()).unwrap();
        assert!(!skew.contains(&bad2).unwrap());
    }

    #[test]
    fn trace_pairing_on_alt_of_transpose() {
        let a = m2z_transpose();
        let tp = a.trace_pairings(0).unwrap();
        assert_eq!(tp.alt.gens.len(), 1);
        // Gram of b_- on {E12 - E21}: Trd((E12 - E21) E12) = -1
        assert_eq!(tp.b_minus.get(0, 0).to_string(), "-1");
        assert!(tp.b_minus_regular);
    }

    #[test]
    fn conjugate_involution_examples() {
        let a = m2z_transpose();
        let z = Ring::int();
        // u = 1: unchanged
        let (b, orth) = a.conjugate(&Mat::identity(z.clone(), 2), 2).unwrap();
        assert!(orth);
        assert_eq!(b.u, a.u);
        // sigma-symmetric u gives an orthogonal result
        let u = Mat::from_ints(&z, &[&[0, 1], &[1, 0]]);
        let (b, orth) = a.conjugate(&u, 2).unwrap();
        assert!(orth);
        assert!(b.involution_type().orthogonal);
        // skew u gives a non-orthogonal result
        let u = Mat::from_ints(&z, &[&[0, 1], &[-1, 0]]);
        let (b, orth) = a.conjugate(&u, 2).unwrap();
        assert!(!orth);
        assert!(!b.involution_type().orthogonal);
        assert!(b.involution_type().weakly_symplectic);
    }

    #[test]
    fn commutant_of_inner_automorphism_is_free() {
        let z = Ring::int();
        let v = Mat::from_ints(&z, &[&[1, 2], &[0, 1]]);
        let c = commutant_module(&Automorphism::Inner(v.clone()), 2).unwrap();
        assert!(c.free_rank_one);
        let w = c.inner_witness.as_ref().unwrap();
        assert!(*w == v || *w == v.neg().unwrap());
    }

    #[test]
    fn commutant_of_identity_is_the_center() {
        let z = Ring::int();
        let images: Vec<Mat> = (0..4).map(|k| Mat::unit(z.clone(), 2, k / 2, k % 2)).collect();
        let c =
            commutant_module(&Automorphism::Images { ring: z.clone(), n: 2, images }, 2).unwrap();
        assert!(c.free_rank_one);
        let w = c.inner_witness.as_ref().unwrap();
        assert!(w.scalar_of_identity().is_some());
    }

    #[test]
    fn commutant_over_gf4_diagonal() {
        let k = Ring::gf(2);
        let v = Mat::parse(&k, &[&["1", "0"], &["0", "w"]]).unwrap();
        let c = commutant_module(&Automorphism::Inner(v.clone()), 1).unwrap();
        assert!(c.free_rank_one);
        let w = c.inner_witness.as_ref().unwrap();
        // generator is v up to a scalar
        let ratio = w.get(0, 0);
        assert!(!ratio.is_zero());
        assert_eq!(*w, v.scale(&ratio).unwrap());
    }
}
