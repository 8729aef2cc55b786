//! Acceptance suite: one test per exit criterion, each printing a pass line
//! with the quantities it pinned down. All tolerances are exact equality.

use quadpairs::descent::{
    alt_membership_split, cohomologous_search, connecting_delta, descend_semitrace_check, Cochain,
    Gluing, ValueModule,
};
use quadpairs::involution::{BilinearForm, Involution, Part, QuadraticForm};
use quadpairs::linalg::{invert_mat, Mat};
use quadpairs::obstruction::{
    alternate_obstruction_cocycles, coinvariants_dimension, cup_formula_check,
    doubled_representative_is_coboundary, equivariant_form_space, obstruction_with_lifts,
    reverify_certificate, weak_obstruction, FunForm, NontrivCert, ObstructionKind, TensorGluing,
    Verdict,
};
use quadpairs::quadratic::{
    classify_semitraces, enumerate_semitraces, f_of_identity, split_triple, Classification,
    Semitrace,
};
use quadpairs::reproduce::{
    curve_data, galois_data, mixed_data, mixed_mod2_base_change, mixed_mod2_data,
    mixed_tensor_data, run_example, ExampleId,
};
use quadpairs::ring::{Element, Hom, HomSpec, Ring};
use quadpairs::tensor::{f1_star, f_otimes_symplectic, tensor_product};
use rand::{rngs::StdRng, Rng, SeedableRng};
use std::sync::Arc;

fn random_mat(ring: &Arc<Ring>, n: usize, rng: &mut StdRng, span: i64) -> Mat {
    let mut m = Mat::zero(ring.clone(), n, n);
    for i in 0..n {
        for j in 0..n {
            let v = ring.random(rng, span);
            m.set(i, j, Element { ring: ring.clone(), v }).unwrap();
        }
    }
    m
}

fn random_symmetric_unit(ring: &Arc<Ring>, n: usize, rng: &mut StdRng) -> Mat {
    if matches!(&**ring, Ring::Int) {
        // permutation conjugate of a random block-diagonal symmetric unit:
        // keeps entries (and the inverse) tiny for exact kernels
        let mut b = Mat::zero(ring.clone(), n, n);
        let mut i = 0;
        while i < n {
            if i + 1 < n && rng.gen_bool(0.5) {
                // [[a, 1], [1, 0]] is a symmetric unit for any a
                let a = rng.gen_range(-2i128..=2);
                b.set(i, i, ring.int_elem(a)).unwrap();
                b.set(i, i + 1, ring.int_elem(1)).unwrap();
                b.set(i + 1, i, ring.int_elem(1)).unwrap();
                i += 2;
            } else {
                b.set(i, i, ring.int_elem(if rng.gen_bool(0.5) { 1 } else { -1 })).unwrap();
                i += 1;
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        for k in (1..n).rev() {
            perm.swap(k, rng.gen_range(0..=k));
        }
        let mut q = Mat::zero(ring.clone(), n, n);
        for (r, &c) in perm.iter().enumerate() {
            q.set(r, c, ring.one_elem()).unwrap();
        }
        return q.transpose().mul(&b).unwrap().mul(&q).unwrap();
    }
    loop {
        let m = random_mat(ring, n, rng, 3);
        let sym = m.add(&m.transpose()).unwrap();
        // make the diagonal nonzero-ish by adding the identity sometimes
        let cand = if rng.gen_bool(0.5) {
            sym.add(&Mat::identity(ring.clone(), n)).unwrap()
        } else {
            sym
        };
        if cand == cand.transpose() && invert_mat(&cand, 0).is_ok() {
            return cand;
        }
    }
}

#[test]
fn criterion_01_rank_formulas() {
    let mut rng = StdRng::seed_from_u64(101);
    let rings = [Ring::int(), Ring::zmod(2), Ring::gf(2), Ring::zmod(4)];
    for ring in &rings {
        for n in 2..=6usize {
            for _ in 0..5 {
                let u = random_symmetric_unit(ring, n, &mut rng);
                let alg = Involution::new(ring.clone(), u).unwrap();
                let sym = alg.canonical_basis(Part::Sym, 0).unwrap();
                let alt = alg.canonical_basis(Part::Alt, 0).unwrap();
                assert_eq!(sym.gens.len(), n * (n + 1) / 2, "Sym rank over {ring:?}, n={n}");
                assert_eq!(alt.gens.len(), n * (n - 1) / 2, "Alt rank over {ring:?}, n={n}");
            }
        }
    }
    println!("criterion 01: PASS - Sym/Alt generator counts n(n+1)/2 and n(n-1)/2 for n = 2..6 over Z, F2, F4, Z/4");
}

#[test]
fn criterion_02_pair_form_round_trip() {
    let mut rng = StdRng::seed_from_u64(102);
    let rings = [Ring::zmod(2), Ring::gf(2), Ring::zmod(4), Ring::zmod(5)];
    let mut done = 0;
    'outer: for round in 0.. {
        for ring in &rings {
            let n = 2 + (round % 3) as usize; // ranks 2, 3, 4
            // upper-triangular coefficient matrix: the canonical form
            let mut q = Mat::zero(ring.clone(), n, n);
            for i in 0..n {
                for j in i..n {
                    let v = ring.random(&mut rng, 3);
                    q.set(i, j, Element { ring: ring.clone(), v }).unwrap();
                }
            }
            let qf = QuadraticForm::new(q.clone());
            let polar = qf.polar().unwrap();
            if !polar.regular(0) {
                continue;
            }
            let triple = match quadpairs::quadratic::pair_from_quadratic_form(&qf, 0) {
                Ok(t) => t,
                Err(_) => continue, // odd rank without invertible 2
            };
            let back = quadpairs::quadratic::form_from_pair(&triple, &polar).unwrap();
            assert_eq!(back.coeffs, q, "q_(f_q) = q over {ring:?}");
            assert_eq!(back.polar().unwrap().gram, polar.gram, "polar(q_f) = b");
            done += 1;
            if done >= 50 {
                break 'outer;
            }
        }
    }
    println!("criterion 02: PASS - 50 random regular forms of rank <= 4 round-trip exactly over F2, F4, Z/4, Z/5");
}

#[test]
fn criterion_03_split_semitrace_values() {
    let z = Ring::int();
    for half in [1usize, 2, 3] {
        let n = 2 * half;
        let t = split_triple(z.clone(), half, 0).unwrap();
        for b in 0..half {
            let mut s = Mat::zero(z.clone(), n, n);
            s.set(2 * b, 2 * b, z.one_elem()).unwrap();
            s.set(2 * b + 1, 2 * b + 1, z.one_elem()).unwrap();
            assert!(t.semitrace.f(&s).unwrap().is_one(), "f0(E_ii + E_(i+1,i+1)) = 1");
        }
        assert_eq!(f_of_identity(&t).unwrap(), z.int_elem(half as i128), "f(1) = n/2");
    }
    println!("criterion 03: PASS - split semitraces give f0(E_ii + E_(i+1,i+1)) = 1 and f(1) = n/2 for n = 2, 4, 6");
}

#[test]
fn criterion_04_no_pair_certificates() {
    for n in [2usize, 3] {
        let f2 = Ring::zmod(2);
        let alg = Arc::new(Involution::transpose(f2, n).unwrap());
        let c = classify_semitraces(&alg, 0).unwrap();
        assert!(c.is_empty(), "transpose over F2 has no semitrace, n={n}");
        assert!(c.reverify_empty(&alg).unwrap(), "1 not in Symd certificate re-verifies");
    }
    println!("criterion 04: PASS - transpose over F2 classifies EMPTY with verified 1-not-in-Symd certificates for n = 2, 3");
}

#[test]
fn criterion_05_tensor_constructions() {
    // f1* on degree-4 tensor algebras over Z and GF(4), formula on full bases
    let z = Ring::int();
    let t1 = split_triple(z.clone(), 1, 0).unwrap();
    let a2 = Arc::new(Involution::hyperbolic(z.clone(), 1).unwrap());
    let (_, tz) = f1_star(&t1, &a2, 0).unwrap();
    assert!(tz.record.passed);

    let k = Ring::gf(2);
    let sk = Arc::new(Involution::hyperbolic(k.clone(), 1).unwrap());
    let lk = Mat::parse(&k, &[&["1", "0"], &["0", "0"]]).unwrap();
    let tk1 = quadpairs::quadratic::triple_from_ell(sk.clone(), lk, 0).unwrap();
    let (_, tk) = f1_star(&tk1, &sk, 0).unwrap();
    assert!(tk.record.passed);

    // f(x) vanishing on Skew (x) Skew over GF(4) and over Z
    let (_, fsymp) = f_otimes_symplectic(&sk, &sk, 0).unwrap();
    assert!(fsymp.record.passed);
    let j = Mat::from_ints(&z, &[&[0, 1], &[-1, 0]]);
    let az = Arc::new(Involution::new(z.clone(), j).unwrap());
    let (_, fz) = f_otimes_symplectic(&az, &az, 0).unwrap();
    assert!(fz.record.passed);

    // the weakly-symplectic-but-not-symplectic input is refused, and
    // 1 not in Symd of its tensor square is certified
    let z2 = Ring::zmod(2);
    let u = Mat::from_ints(&z2, &[&[1, 1], &[1, 0]]);
    let aw = Arc::new(Involution::new(z2, u).unwrap());
    assert!(f_otimes_symplectic(&aw, &aw, 0).is_err());
    let tensor = tensor_product(&aw, &aw).unwrap();
    let c = classify_semitraces(&tensor.assembled, 0).unwrap();
    assert!(c.is_empty());
    assert!(c.reverify_empty(&tensor.assembled).unwrap());
    println!("criterion 05: PASS - induced and symplectic tensor pairs verified on full bases; the non-symplectic input is refused with a certified 1-not-in-Symd");
}

#[test]
fn criterion_06_mixed_characteristic_reproduction() {
    let t0 = std::time::Instant::now();
    // weak obstruction with the explicit degree-0 position-(1,2) value-2
    // certificate, re-verified against the complete degree-0 generators
    let data = mixed_data().unwrap();
    let weak = obstruction_with_lifts(
        &data.gluing,
        &data.sigmas,
        &data.lifts,
        3,
        ObstructionKind::Weak,
    )
    .unwrap();
    let Verdict::Nontrivial(NontrivCert::Functional(cert)) = &weak.verdict else {
        panic!("weak obstruction must be nontrivial with a functional certificate");
    };
    assert!(matches!(cert.form, FunForm::Coordinate { row: 0, col: 1 }));
    assert_eq!(cert.degree, 0);
    assert_eq!(cert.modulus, 4);
    assert_eq!(cert.value, 2);
    assert!(reverify_certificate(
        &data.gluing,
        &data.sigmas,
        &weak.representative,
        3,
        true,
        cert
    )
    .unwrap());

    // mod-2 base change: trivial with witness E11 on both charts
    let rep2 = run_example(ExampleId::Mixed73Mod2, 3).unwrap();
    assert!(rep2.passed, "{:?}", rep2.diffs);

    // tensor square: strong obstruction trivial with the explicit lifts
    let rep3 = run_example(ExampleId::Mixed73Tensor, 3).unwrap();
    assert!(rep3.passed, "{:?}", rep3.diffs);

    // base-change functoriality: reducing the representative mod 2 equals
    // the representative computed from the mod-2 data, entrywise
    let homs = mixed_mod2_base_change().unwrap();
    let d2 = mixed_mod2_data().unwrap();
    let plain: Vec<Involution> = data.sigmas.iter().map(|a| (**a).clone()).collect();
    let rep = connecting_delta(&data.gluing, &plain, &data.lifts).unwrap();
    let plain2: Vec<Involution> = d2.sigmas.iter().map(|a| (**a).clone()).collect();
    let rep_mod2 = connecting_delta(&d2.gluing, &plain2, &d2.lifts).unwrap();
    let reduced = rep.sections[0].map(&homs[2]).unwrap();
    assert_eq!(reduced, rep_mod2.sections[0], "base change commutes with the representative");

    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 5.0, "mixed reproduction must run in < 5 s, took {dt:?}");
    println!(
        "criterion 06: PASS - weak certificate (1,2)/deg 0/mod 4/value 2 re-verified, mod-2 trivial with E11 witness, tensor square trivial with the explicit lifts, base change functorial ({dt:?} at degree 3)"
    );
}

#[test]
fn criterion_07_galois_cover_reproduction() {
    let data = galois_data().unwrap();
    assert_eq!(data.group.len(), 60, "projective group order");
    let alg = &data.sigmas[0];
    // generator-based computation
    let eq = equivariant_form_space(&data.generators, alg, 1).unwrap();
    assert_eq!(eq.solutions.len(), 0, "invariant form space is zero");
    let coinv =
        coinvariants_dimension(&data.generators, 2, &data.gluing.cover.charts[0], 1).unwrap();
    assert_eq!(coinv, 1, "coinvariants dimension");
    // exhaustive confirmation over all 60 elements
    let eq_all = equivariant_form_space(&data.group, alg, 1).unwrap();
    assert_eq!(eq_all.solutions.len(), 0);
    let coinv_all =
        coinvariants_dimension(&data.group, 2, &data.gluing.cover.charts[0], 1).unwrap();
    assert_eq!(coinv_all, 1);
    // the reproduction verdict is NONTRIVIAL(weak) via the equivariant route
    let rep = run_example(ExampleId::Serre72, 1).unwrap();
    assert!(rep.passed, "{:?}", rep.diffs);
    // cross-check with the generic cocycle machinery
    let generic = weak_obstruction(&data.gluing, &data.sigmas, 0).unwrap();
    assert!(matches!(generic.verdict, Verdict::Nontrivial(_)));
    println!("criterion 07: PASS - invariant space 0 and coinvariants 1, confirmed exhaustively over all 60 elements; weak obstruction nontrivial on both routes");
}

#[test]
fn criterion_08_curve_cover_reproduction() {
    for n in 1..=3u8 {
        let rep = run_example(ExampleId::Curve71 { n }, 1).unwrap();
        assert!(rep.passed, "curve power {n}: {:?}", rep.diffs);
        let dim =
            rep.entries.iter().find(|(k, _)| k == "sections_dim").map(|(_, v)| v.clone());
        assert_eq!(dim.as_deref(), Some("1"));
        let strong = rep.entries.iter().find(|(k, _)| k == "strong").map(|(_, v)| v.clone());
        assert_eq!(strong.as_deref(), Some("NONTRIVIAL(scalar-sections)"));
    }
    println!("criterion 08: PASS - twisted sections have dimension 1 for n = 1, 2, 3, the form descends, strong obstruction nontrivial by the scalar-sections criterion");
}

#[test]
fn criterion_09_alternate_obstruction_comparison() {
    // the glued triple on the curve cover (n = 1): lifts E11
    let data = curve_data(1).unwrap();
    let rep =
        alternate_obstruction_cocycles(&data.gluing, &data.sigmas, &[data.lift.clone()], 1)
            .unwrap();
    assert!(rep.comparison_holds, "c'(x) = b_-(c, x) on every Alt basis element");
    assert!(rep.image_equals_strong_rep, "Skew image of c(f) equals the connecting representative");
    assert!(!rep.c_alt.sections[0].is_zero());
    println!("criterion 09: PASS - c' agrees with b_-(c, .) on the full Alt basis and the Skew image of c(f) is the connecting representative, exactly");
}

/// A random two-chart cover over a finite constant ring with the swap
/// involution on both charts, glued by a random cocycle that commutes with
/// the involution.
fn random_cover(ring: &Arc<Ring>, rng: &mut StdRng) -> (Gluing, Vec<Arc<Involution>>) {
    let id1 = Hom::new(ring.clone(), ring.clone(), HomSpec::Canonical);
    let cover = quadpairs::descent::Cover::new(
        vec![ring.clone(), ring.clone()],
        vec![quadpairs::descent::Overlap {
            i: 0,
            j: 1,
            ring: ring.clone(),
            res_i: id1.clone(),
            res_j: id1,
        }],
    )
    .unwrap();
    let sigma = Arc::new(Involution::hyperbolic(ring.clone(), 1).unwrap());
    loop {
        let v = random_mat(ring, 2, rng, 3);
        if invert_mat(&v, 0).is_err() {
            continue;
        }
        let g = Gluing::new(cover.clone(), 2, vec![v], 0).unwrap();
        let plain = vec![(*sigma).clone(), (*sigma).clone()];
        if quadpairs::descent::descend_involution_check(&g, &plain).unwrap() {
            return (g, vec![sigma.clone(), sigma.clone()]);
        }
    }
}

/// Enumerate the skew elements of `(M_2(R), swap)` over a small finite ring.
fn skew_elements(alg: &Involution) -> Vec<Mat> {
    let vals = alg.ring.enumerate().expect("finite ring");
    let mut out = Vec::new();
    let n = alg.n;
    let cells = n * n;
    let mut idx = vec![0usize; cells];
    loop {
        let data: Vec<quadpairs::ring::Value> = idx.iter().map(|&k| vals[k].clone()).collect();
        let m = Mat::from_values(alg.ring.clone(), n, n, data).unwrap();
        if m.add(&alg.sigma(&m).unwrap()).unwrap().is_zero() {
            out.push(m);
        }
        let mut c = 0;
        loop {
            idx[c] += 1;
            if idx[c] < vals.len() {
                break;
            }
            idx[c] = 0;
            c += 1;
            if c == cells {
                return out;
            }
        }
    }
}

#[test]
fn criterion_10_randomized_property_suite() {
    let mut rng = StdRng::seed_from_u64(110);
    let rings = [Ring::zmod(2), Ring::gf(2), Ring::zmod(4)];
    let mut contradictions = 0;
    for trial in 0..100 {
        let ring = &rings[trial % rings.len()];
        let (gluing, sigmas) = random_cover(ring, &mut rng);
        let plain: Vec<Involution> = sigmas.iter().map(|a| (**a).clone()).collect();
        // chart lifts: E11 works for the swap involution over any ring
        let lifts: Vec<Mat> =
            gluing.cover.charts.iter().map(|r| Mat::from_ints(r, &[&[1, 0], &[0, 0]])).collect();

        // 2 * representative is a coboundary with the explicit witness
        assert!(doubled_representative_is_coboundary(&gluing, &sigmas, &lifts).unwrap());

        // representatives from different lifts are cohomologous
        let skews = skew_elements(&plain[0]);
        let other_lifts: Vec<Mat> = lifts
            .iter()
            .map(|l| l.add(&skews[rng.gen_range(0..skews.len())]).unwrap())
            .collect();
        let rep_a = connecting_delta(&gluing, &plain, &lifts).unwrap();
        let rep_b = connecting_delta(&gluing, &plain, &other_lifts).unwrap();
        let diff = Cochain {
            sections: vec![rep_b.sections[0].sub(&rep_a.sections[0]).unwrap()],
            tag: ValueModule::Skew,
        };
        assert!(
            cohomologous_search(&gluing, &plain, &diff, 0, false).unwrap().is_some(),
            "different lifts give cohomologous representatives"
        );

        // verdicts vs exhaustive search
        let weak =
            obstruction_with_lifts(&gluing, &sigmas, &lifts, 0, ObstructionKind::Weak).unwrap();
        let strong =
            obstruction_with_lifts(&gluing, &sigmas, &lifts, 0, ObstructionKind::Strong).unwrap();
        let (alt_space, alt_sub) = plain[0].part_span(Part::Alt, 0).unwrap();
        let mut weak_brute = false;
        let mut strong_brute = false;
        for h0 in &skews {
            for h1 in &skews {
                let l0 = lifts[0].add(h0).unwrap();
                let l1 = lifts[1].add(h1).unwrap();
                let d = gluing
                    .restrict_j(0, &l1)
                    .unwrap()
                    .sub(&gluing.twist(0, &l0).unwrap())
                    .unwrap();
                if d.is_zero() {
                    strong_brute = true;
                }
                if alt_sub.contains(&alt_space.flatten_mat(&d).unwrap()) {
                    weak_brute = true;
                }
            }
        }
        let weak_trivial = matches!(weak.verdict, Verdict::Trivial(_));
        let strong_trivial = matches!(strong.verdict, Verdict::Trivial(_));
        assert!(!matches!(weak.verdict, Verdict::Unknown { .. }), "finite data decides");
        assert!(!matches!(strong.verdict, Verdict::Unknown { .. }));
        if weak_trivial != weak_brute || strong_trivial != strong_brute {
            contradictions += 1;
        }
    }
    assert_eq!(contradictions, 0, "verdicts agree with exhaustive search on 100 covers");
    println!("criterion 10: PASS - doubled representatives are coboundaries, lifts give cohomologous representatives, and verdicts match exhaustive search on 100 random covers");
}

#[test]
fn addendum_cup_formulas_at_cochain_level() {
    // tensor power of the curve cover: the representative with lifts
    // l (x) 1 is the embedded first-factor representative tensored with 1
    let first = curve_data(1).unwrap();
    let total = curve_data(2).unwrap();
    let k = Ring::gf(2);
    let chart_embed = vec![Hom::new(k.clone(), k.clone(), HomSpec::Canonical)];
    // overlap embedding: component (c1, c2) of the total overlap pulls from
    // component c1 of the first overlap, with x1 -> x1
    let ov1 = first.gluing.cover.overlaps[0].ring.clone();
    let ov2 = total.gluing.cover.overlaps[0].ring.clone();
    let Ring::Product(fs) = &*ov2 else { panic!() };
    let mut parts = Vec::new();
    for c in 0..fs.len() {
        let c1 = c >> 1; // leading bit: first factor component
        let mut vars = std::collections::BTreeMap::new();
        vars.insert(
            "x1".to_string(),
            fs[c].parse("x1").unwrap(),
        );
        parts.push(HomSpec::Project(c1, Box::new(HomSpec::Vars(vars))));
    }
    let overlap_embed = vec![Hom::new(ov1, ov2, HomSpec::Tuple(parts))];
    let tg = TensorGluing {
        total: total.gluing,
        first: first.gluing,
        chart_embed,
        overlap_embed,
        n2: 2,
    };
    assert!(cup_formula_check(&tg, &first.sigmas, &[first.lift.clone()], &total.sigmas).unwrap());

    // same-cover tensor square of the mixed construction
    let first = mixed_data().unwrap();
    let total = mixed_tensor_data().unwrap();
    let chart_embed = first
        .gluing
        .cover
        .charts
        .iter()
        .map(|r| Hom::identity(r.clone()))
        .collect();
    let overlap_embed = vec![Hom::identity(first.gluing.cover.overlaps[0].ring.clone())];
    let tg = TensorGluing {
        total: total.gluing,
        first: first.gluing,
        chart_embed,
        overlap_embed,
        n2: 2,
    };
    assert!(cup_formula_check(&tg, &first.sigmas, &first.lifts, &total.sigmas).unwrap());

    // trivial first factor: the tensor representative vanishes
    let data = mixed_mod2_data().unwrap();
    let plain: Vec<Involution> = data.sigmas.iter().map(|a| (**a).clone()).collect();
    let rep = connecting_delta(&data.gluing, &plain, &data.lifts).unwrap();
    assert!(rep.is_zero());
    println!("addendum: PASS - cup formulas hold entrywise on the curve tensor power and the mixed tensor square");
}

#[test]
fn addendum_curve_form_descends_all_powers() {
    for n in 1..=3u8 {
        let data = curve_data(n).unwrap();
        let plain: Vec<Involution> = data.sigmas.iter().map(|a| (**a).clone()).collect();
        let checks =
            descend_semitrace_check(&data.gluing, &plain, &[data.lift.clone()], 1).unwrap();
        assert!(checks[0].0, "difference is alternating for n = {n}");
        assert!(checks[0].1.is_zero(), "Alt reduction leaves zero residual");
    }
    println!("addendum: PASS - the block lift difference is alternating for all three tensor powers");
}

#[test]
fn addendum_symplectic_tensor_weak_trivial() {
    // a tensor product of two symplectic factors always has trivial weak
    // obstruction; witnessed here on the curve tensor square
    let total = curve_data(2).unwrap();
    let weak = obstruction_with_lifts(
        &total.gluing,
        &total.sigmas,
        &[total.lift.clone()],
        1,
        ObstructionKind::Weak,
    )
    .unwrap();
    assert!(matches!(weak.verdict, Verdict::Trivial(_)));
    println!("addendum: PASS - weak obstruction vanishes on the symplectic tensor square");
}

#[test]
fn addendum_epsilon_switch_and_pairings() {
    // eta_b(phi_b(m1 (x) m2)) = eps phi_b(m2 (x) m1) for random regular
    // eps-symmetric forms over F4, and Gram symmetry of the trace pairings
    let k = Ring::gf(2);
    let mut rng = StdRng::seed_from_u64(120);
    let mut tested = 0;
    while tested < 20 {
        let m = random_mat(&k, 3, &mut rng, 3);
        let cand = if tested % 2 == 0 {
            m.add(&m.transpose()).unwrap().add(&Mat::identity(k.clone(), 3)).unwrap()
        } else {
            m.add(&m.transpose()).unwrap()
        };
        if cand != cand.transpose() || invert_mat(&cand, 0).is_err() {
            continue;
        }
        let b = BilinearForm::new(cand.clone());
        let alg = Involution::adjoint(&b).unwrap();
        let n = 3;
        for i in 0..n {
            for j in 0..n {
                // phi_b(e_i (x) e_j) = E_ij * G
                let phi = Mat::unit(k.clone(), n, i, j).mul(&b.gram).unwrap();
                let lhs = alg.sigma(&phi).unwrap();
                let rhs = Mat::unit(k.clone(), n, j, i).mul(&b.gram).unwrap();
                assert_eq!(lhs, rhs, "eps-switch with eps = 1");
            }
        }
        let tp = alg.trace_pairings(0).unwrap();
        assert_eq!(tp.b_plus, tp.b_plus.transpose(), "b_+ symmetric");
        assert_eq!(tp.b_minus, tp.b_minus.transpose(), "b_- symmetric");
        // trace orthogonality of Sym against Alt
        let sym = alg.canonical_basis(Part::Sym, 0).unwrap();
        for s in &sym.gens {
            for a in &tp.alt.gens {
                assert!(s.mul(a).unwrap().trace().unwrap().is_zero(), "Trd(Sym Alt) = 0");
            }
        }
        tested += 1;
    }
    println!("addendum: PASS - eps-switch, Gram symmetry, and trace orthogonality on 20 random regular forms over GF(4)");
}

#[test]
fn addendum_inclusions_and_uniqueness() {
    // Alt inside Skew and Symd inside Sym, with equality over Z/5
    let z = Ring::int();
    let alg = Involution::transpose(z, 2).unwrap();
    let alt = alg.canonical_basis(Part::Alt, 0).unwrap();
    let skew = alg.canonical_basis(Part::Skew, 0).unwrap();
    for g in &alt.gens {
        assert!(skew.contains(g).unwrap());
    }
    let symd = alg.canonical_basis(Part::Symd, 0).unwrap();
    let sym = alg.canonical_basis(Part::Sym, 0).unwrap();
    for g in &symd.gens {
        assert!(sym.contains(g).unwrap());
    }
    let z5 = Ring::zmod(5);
    let a5 = Involution::transpose(z5.clone(), 2).unwrap();
    assert!(a5
        .canonical_basis(Part::Alt, 0)
        .unwrap()
        .sub
        .equals(&a5.canonical_basis(Part::Skew, 0).unwrap().sub));
    assert!(a5
        .canonical_basis(Part::Symd, 0)
        .unwrap()
        .sub
        .equals(&a5.canonical_basis(Part::Sym, 0).unwrap().sub));

    // classification over Z/5 and Z/9 returns a single coset for random
    // orthogonal involutions
    let mut rng = StdRng::seed_from_u64(121);
    for ring in [Ring::zmod(5), Ring::zmod(9)] {
        for _ in 0..10 {
            let u = random_symmetric_unit(&ring, 2, &mut rng);
            let alg = Arc::new(Involution::new(ring.clone(), u).unwrap());
            match classify_semitraces(&alg, 0).unwrap() {
                Classification::Classified { coset_generators, .. } => {
                    assert!(coset_generators.is_empty(), "unique semitrace when 2 is a unit");
                }
                _ => panic!("2 invertible forces existence"),
            }
        }
    }
    println!("addendum: PASS - canonical inclusions hold with equality over Z/5; classification is a single coset over Z/5 and Z/9");
}

#[test]
fn addendum_exhaustive_bijection_over_finite_rings() {
    // exhaustive semitrace enumeration matches the coset parametrization
    for ring in [Ring::zmod(2), Ring::gf(2), Ring::zmod(4)] {
        let alg = Arc::new(Involution::hyperbolic(ring.clone(), 1).unwrap());
        let all = enumerate_semitraces(&alg).unwrap().expect("finite ring");
        let mut classes: Vec<Mat> = Vec::new();
        for l in &all {
            let st = Semitrace::new(alg.clone(), l.clone(), 0).unwrap();
            if !classes.iter().any(|r| {
                Semitrace::new(alg.clone(), r.clone(), 0).unwrap().same_coset(&st).unwrap()
            }) {
                classes.push(l.clone());
            }
        }
        match classify_semitraces(&alg, 0).unwrap() {
            Classification::Classified { particular, coset_generators, alt, .. } => {
                // the parametrized set {particular + span(coset gens)} mod Alt
                // has exactly as many classes as the exhaustive enumeration
                let mut reach = 1usize;
                for g in &coset_generators {
                    let ann = alt.sub.annihilator(&alt.space.flatten_mat(g).unwrap()).unwrap();
                    reach *= ann.unsigned_abs() as usize;
                }
                assert_eq!(reach, classes.len(), "coset count over {ring:?}");
                // and every enumerated class is reachable: membership of the
                // difference in span(Alt + coset gens)
                let mut span = alt.sub.clone();
                for g in &coset_generators {
                    let single = quadpairs::linalg::Subspace::from_gens(
                        alt.space.backend(),
                        alt.space.dim(),
                        &alt.space.moduli(),
                        &[alt.space.flatten_mat(g).unwrap()],
                    )
                    .unwrap();
                    span = span.sum(&single).unwrap();
                }
                for l in &classes {
                    let d = l.sub(&particular.ell).unwrap();
                    assert!(span.contains(&alt.space.flatten_mat(&d).unwrap()));
                }
            }
            _ => panic!("hyperbolic involutions always classify"),
        }
    }
    println!("addendum: PASS - exhaustive semitrace enumeration equals the coset parametrization over F2, GF(4), Z/4");
}

#[test]
fn addendum_curve_sections_membership_split() {
    // sanity for the componentwise Alt membership used by the descent check
    let data = curve_data(2).unwrap();
    let plain: Vec<Involution> = data.sigmas.iter().map(|a| (**a).clone()).collect();
    let inv =
        quadpairs::descent::overlap_involution(&data.gluing, &plain, 0).unwrap();
    let zero = Mat::zero(data.gluing.cover.overlaps[0].ring.clone(), 4, 4);
    let (ok, residual) = alt_membership_split(&inv, &zero, 1).unwrap();
    assert!(ok);
    assert!(residual.is_zero());
    println!("addendum: PASS - componentwise membership agrees on the zero section");
}
