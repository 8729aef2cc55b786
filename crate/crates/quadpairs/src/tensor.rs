//! Kronecker products of algebras with involution and the two canonical
//! quadratic-pair constructions on them: `f1*` from a triple on the first
//! orthogonal factor, and the vanishing pair on a product of two symplectic
//! factors.

use crate::error::{Error, Result};
use crate::involution::{Involution, Part};
use crate::linalg::Mat;
use crate::quadratic::{classify_semitraces, triple_from_ell, Classification, QuadraticTriple};
use std::sync::Arc;

/// A tensor product of algebras with involution over a common ring,
/// assembled as `(M_(n1 n2), u1 (x) u2)`.
pub struct TensorAlgebra {
    pub factors: Vec<Arc<Involution>>,
    pub assembled: Arc<Involution>,
}

pub fn tensor_product(a1: &Arc<Involution>, a2: &Arc<Involution>) -> Result<TensorAlgebra> {
    if a1.ring != a2.ring {
        return Err(Error::RingMismatch("tensor factors must share the base ring".into()));
    }
    let u = a1.u.kron(&a2.u)?;
    let assembled = Arc::new(Involution::new(a1.ring.clone(), u)?);
    // the type tag multiplies: eps = eps1 eps2
    let (t1, t2, t) = (a1.involution_type(), a2.involution_type(), assembled.involution_type());
    let expect_orth =
        (t1.orthogonal && t2.orthogonal) || (t1.weakly_symplectic && t2.weakly_symplectic);
    if expect_orth && !t.orthogonal {
        return Err(Error::Verification("type product rule violated".into()));
    }
    Ok(TensorAlgebra { factors: vec![a1.clone(), a2.clone()], assembled })
}

/// `sigma1 (x) sigma2` acts as the Kronecker of the factor involutions on
/// pure tensors; checked on basis pairs.
pub fn check_sigma_on_pure_tensors(t: &TensorAlgebra) -> Result<()> {
    let (a1, a2) = (&t.factors[0], &t.factors[1]);
    for i in 0..a1.n * a1.n {
        let x = Mat::unit(a1.ring.clone(), a1.n, i / a1.n, i % a1.n);
        for j in 0..a2.n * a2.n {
            let y = Mat::unit(a2.ring.clone(), a2.n, j / a2.n, j % a2.n);
            let lhs = t.assembled.sigma(&x.kron(&y)?)?;
            let rhs = a1.sigma(&x)?.kron(&a2.sigma(&y)?)?;
            if lhs != rhs {
                return Err(Error::Verification("sigma is not sigma1 (x) sigma2".into()));
            }
        }
    }
    Ok(())
}

/// The triple `f1*` on `A1 (x) A2` induced by a triple on the orthogonal
/// factor `A1` and an orthogonal `A2`: semitrace `l (x) 1`, satisfying
/// `f1*(s1 (x) s2) = f1(s1) Trd(s2)` (verified on all Sym-basis pairs).
pub fn f1_star(
    t1: &QuadraticTriple,
    a2: &Arc<Involution>,
    degree: i64,
) -> Result<(TensorAlgebra, QuadraticTriple)> {
    if !a2.involution_type().orthogonal {
        return Err(Error::Precondition("second factor must be orthogonal".into()));
    }
    let tensor = tensor_product(&t1.alg, a2)?;
    let ell = t1.semitrace.ell.kron(&Mat::identity(a2.ring.clone(), a2.n))?;
    let triple = triple_from_ell(tensor.assembled.clone(), ell, degree)?;
    let sym1 = t1.alg.canonical_basis(Part::Sym, degree)?;
    let sym2 = a2.canonical_basis(Part::Sym, degree)?;
    for s1 in &sym1.gens {
        let f1s1 = t1.semitrace.f(s1)?;
        for s2 in &sym2.gens {
            let lhs = triple.semitrace.f(&s1.kron(s2)?)?;
            let rhs = f1s1.mul(&s2.trace()?)?;
            if lhs != rhs {
                return Err(Error::Verification(format!(
                    "f1*(s1 (x) s2) = {lhs} differs from f1(s1) Trd(s2) = {rhs}"
                )));
            }
        }
    }
    Ok((tensor, triple))
}

/// The canonical triple on a product of two symplectic factors, vanishing
/// on `Skew (x) Skew`. Refuses factors that are only weakly symplectic: for
/// such factors the reduced trace does not vanish on Skew and the tensor
/// product need not carry any quadratic pair at all.
pub fn f_otimes_symplectic(
    a1: &Arc<Involution>,
    a2: &Arc<Involution>,
    degree: i64,
) -> Result<(TensorAlgebra, QuadraticTriple)> {
    for (k, a) in [a1, a2].iter().enumerate() {
        let t = a.involution_type();
        if !t.symplectic {
            if t.weakly_symplectic {
                return Err(Error::Precondition(format!(
                    "factor {} is weakly symplectic but not symplectic; refusing",
                    k + 1
                )));
            }
            return Err(Error::Precondition(format!("factor {} is not symplectic", k + 1)));
        }
    }
    // symplectic means 1 lies in Symd, so a semitrace datum exists
    let ell1 = match classify_semitraces(a1, degree)? {
        Classification::Classified { particular, .. } => particular.ell,
        Classification::Empty { .. } => {
            return Err(Error::Verification(
                "symplectic factor with 1 not in Symd contradicts the trace criterion".into(),
            ))
        }
    };
    let tensor = tensor_product(a1, a2)?;
    let ell = ell1.kron(&Mat::identity(a2.ring.clone(), a2.n))?;
    let triple = triple_from_ell(tensor.assembled.clone(), ell, degree)?;
    let skew1 = a1.canonical_basis(Part::Skew, degree)?;
    let skew2 = a2.canonical_basis(Part::Skew, degree)?;
    for s1 in &skew1.gens {
        for s2 in &skew2.gens {
            let v = triple.semitrace.f(&s1.kron(s2)?)?;
            if !v.is_zero() {
                return Err(Error::Verification(format!(
                    "f(x)(s1 (x) s2) = {v} != 0 on Skew (x) Skew"
                )));
            }
        }
    }
    Ok((tensor, triple))
}

/// Report of the Sym decomposition of a tensor algebra at a degree window.
pub struct SymDecompReport {
    /// Sym(A) equals Symd(A) + (P1 (x) P2) as submodules, where P is Sym
    /// for orthogonal factors and Skew for weakly symplectic factors.
    pub decomposition_holds: bool,
    /// generator counts (sym of tensor, symd of tensor, pure tensor part)
    pub counts: (usize, usize, usize),
}

/// Verify `Sym(A) = Symd(A) + (P (x) P)` as finite submodule identities,
/// with `P = Sym` for orthogonal factors and `P = Skew` for weakly
/// symplectic factors.
pub fn sym_decomposition_check(
    a1: &Arc<Involution>,
    a2: &Arc<Involution>,
    degree: i64,
) -> Result<SymDecompReport> {
    let tensor = tensor_product(a1, a2)?;
    let (t1, t2) = (a1.involution_type(), a2.involution_type());
    let part = if t1.orthogonal && t2.orthogonal {
        Part::Sym
    } else if t1.weakly_symplectic && t2.weakly_symplectic {
        Part::Skew
    } else {
        return Err(Error::Precondition("factor types must match".into()));
    };
    let sym_t = tensor.assembled.canonical_basis(Part::Sym, degree)?;
    let symd_t = tensor.assembled.canonical_basis(Part::Symd, degree)?;
    let p1 = a1.canonical_basis(part, degree)?;
    let p2 = a2.canonical_basis(part, degree)?;
    let space = &sym_t.space;
    let mut pure = Vec::new();
    for g1 in &p1.gens {
        for g2 in &p2.gens {
            pure.push(space.flatten_mat(&g1.kron(g2)?)?);
        }
    }
    let pure_sub =
        crate::linalg::Subspace::from_gens(space.backend(), space.dim(), &space.moduli(), &pure)?;
    let sum = symd_t.sub.sum(&pure_sub)?;
    let decomposition_holds = sum.equals(&sym_t.sub);
    Ok(SymDecompReport {
        decomposition_holds,
        counts: (sym_t.gens.len(), symd_t.gens.len(), pure_sub.generator_count()),
    })
}

/// The integral failure of the naive `Symd (x) Symd` identity: over the
/// integers, `Symd (x) Symd` is strictly smaller than
/// `(Symd (x) Sym) /\ (Sym (x) Symd)`; returns a witness of the gap.
pub struct SymdGapReport {
    pub strict: bool,
    pub witness: Option<Mat>,
}

pub fn symd_tensor_gap(
    a1: &Arc<Involution>,
    a2: &Arc<Involution>,
    degree: i64,
) -> Result<SymdGapReport> {
    let tensor = tensor_product(a1, a2)?;
    let space = tensor.assembled.mat_space(degree)?;
    let symd1 = a1.canonical_basis(Part::Symd, degree)?;
    let symd2 = a2.canonical_basis(Part::Symd, degree)?;
    let sym1 = a1.canonical_basis(Part::Sym, degree)?;
    let sym2 = a2.canonical_basis(Part::Sym, degree)?;
    let span = |left: &Vec<Mat>, right: &Vec<Mat>| -> Result<crate::linalg::Subspace> {
        let mut gens = Vec::new();
        for g1 in left {
            for g2 in right {
                gens.push(space.flatten_mat(&g1.kron(g2)?)?);
            }
        }
        crate::linalg::Subspace::from_gens(space.backend(), space.dim(), &space.moduli(), &gens)
    };
    let lhs = span(&symd1.gens, &symd2.gens)?;
    let rhs = span(&symd1.gens, &sym2.gens)?.intersect(&span(&sym1.gens, &symd2.gens)?)?;
    if !lhs.is_subset_of(&rhs) {
        return Err(Error::Verification("Symd (x) Symd must embed in the intersection".into()));
    }
    let mut witness = None;
    for g in rhs.generators() {
        if !lhs.contains(&g) {
            witness = Some(space.unflatten_mat(&g)?);
            break;
        }
    }
    Ok(SymdGapReport { strict: witness.is_some(), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn type_product_rule() {
        let z = Ring::int();
        // orthogonal (x) orthogonal: orthogonal of degree 4
        let a = Arc::new(Involution::hyperbolic(z.clone(), 1).unwrap());
        let t = tensor_product(&a, &a).unwrap();
        assert_eq!(t.assembled.n, 4);
        assert!(t.assembled.involution_type().orthogonal);
        check_sigma_on_pure_tensors(&t).unwrap();

        // symplectic (x) symplectic over GF(4): orthogonal
        let k = Ring::gf(2);
        let s = Arc::new(Involution::hyperbolic(k, 1).unwrap());
        assert!(s.involution_type().symplectic);
        let t = tensor_product(&s, &s).unwrap();
        assert!(t.assembled.involution_type().orthogonal);
    }

    #[test]
    fn kron_against_index_formula() {
        // independent Kronecker oracle: (A (x) B)[(i k), (j l)] = A[i][j] B[k][l]
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let z = Ring::int();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let a = Mat::from_ints(
                &z,
                &[
                    &[rng.gen_range(-3i128..=3), rng.gen_range(-3..=3)],
                    &[rng.gen_range(-3..=3), rng.gen_range(-3..=3)],
                ],
            );
            let b = Mat::from_ints(
                &z,
                &[
                    &[rng.gen_range(-3i128..=3), rng.gen_range(-3..=3)],
                    &[rng.gen_range(-3..=3), rng.gen_range(-3..=3)],
                ],
            );
            let k = a.kron(&b).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    for x in 0..2 {
                        for y in 0..2 {
                            let lhs = k.get(i * 2 + x, j * 2 + y);
                            let rhs = a.get(i, j).mul(&b.get(x, y)).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn f1_star_formula_and_identity_value() {
        let z = Ring::int();
        let t1 = crate::quadratic::split_triple(z.clone(), 1, 0).unwrap();
        let a2 = Arc::new(Involution::hyperbolic(z.clone(), 1).unwrap());
        let (_, triple) = f1_star(&t1, &a2, 0).unwrap();
        assert!(triple.record.passed);
        // f1*(1 (x) 1) = f1(1) Trd(1) = 1 * 2 = 2
        let id = Mat::identity(z.clone(), 4);
        assert_eq!(triple.semitrace.f(&id).unwrap(), z.int_elem(2));
    }

    #[test]
    fn symplectic_tensor_pair_exists() {
        // standard symplectic pair over Z
        let z = Ring::int();
        let j = Mat::from_ints(&z, &[&[0, 1], &[-1, 0]]);
        let a = Arc::new(Involution::new(z, j).unwrap());
        assert!(a.involution_type().symplectic);
        let (_, triple) = f_otimes_symplectic(&a, &a, 0).unwrap();
        assert!(triple.record.passed);

        // hyperbolic swap over GF(4) is symplectic in characteristic 2
        let k = Ring::gf(2);
        let s = Arc::new(Involution::hyperbolic(k, 1).unwrap());
        let (_, triple) = f_otimes_symplectic(&s, &s, 0).unwrap();
        assert!(triple.record.passed);
    }

    #[test]
    fn weakly_symplectic_factor_refused() {
        let z2 = Ring::zmod(2);
        let u = Mat::from_ints(&z2, &[&[1, 1], &[1, 0]]);
        let a = Arc::new(Involution::new(z2, u).unwrap());
        match f_otimes_symplectic(&a, &a, 0) {
            Err(Error::Precondition(_)) => {}
            _ => panic!("weakly symplectic factor must be refused"),
        }
        // independently, 1 is not in Symd of the tensor square
        let tensor = tensor_product(&a, &a).unwrap();
        let c = classify_semitraces(&tensor.assembled, 0).unwrap();
        assert!(c.is_empty());
        assert!(c.reverify_empty(&tensor.assembled).unwrap());
    }

    #[test]
    fn sym_decomposition_and_integral_gap() {
        let z = Ring::int();
        let f2 = Ring::zmod(2);
        // orthogonal case over F2
        let a = Arc::new(Involution::hyperbolic(f2, 1).unwrap());
        let rep = sym_decomposition_check(&a, &a, 0).unwrap();
        assert!(rep.decomposition_holds);
        // symplectic case over GF(4)
        let k = Ring::gf(2);
        let s = Arc::new(Involution::hyperbolic(k, 1).unwrap());
        let rep = sym_decomposition_check(&s, &s, 0).unwrap();
        assert!(rep.decomposition_holds);
        // the naive Symd (x) Symd identity fails over Z
        let az = Arc::new(Involution::hyperbolic(z, 1).unwrap());
        let gap = symd_tensor_gap(&az, &az, 0).unwrap();
        assert!(gap.strict);
        assert!(!gap.witness.unwrap().is_zero());
    }
}
