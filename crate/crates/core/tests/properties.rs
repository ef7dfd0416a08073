use hermlie::catalog::{kodaira_thurston, random_scramble_with, sample_solvable, SolvableFamily};
use hermlie::checks::{bianchi_defect, complex_jacobi_defect, jacobi_defect, series_report};
use hermlie::chern::{chern_curvature, constant_h_test, holomorphic_sectional, space_form_model, symmetrize};
use hermlie::forms::StructureEquations;
use hermlie::io::{emit_algebra, parse_algebra, AlgebraDocument};
use hermlie::linalg::random_unitary;
use hermlie::{change_frame, complexify, realify, ComplexPresentation, CurvatureTensor, Instance, Tensor3, Tensor4, C64};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64, family: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match SolvableFamily::ALL.get(family) {
        Some(f) => sample_solvable(&mut rng, *f).unwrap(),
        None => kodaira_thurston(),
    }
}

fn family() -> impl Strategy<Value = usize> {
    0..=SolvableFamily::ALL.len()
}

fn vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
}

fn apply(u: &DMatrix<C64>, v: &[C64]) -> Vec<C64> {
    (u * DMatrix::from_column_slice(v.len(), 1, v)).iter().copied().collect()
}

fn random_presentation(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> ComplexPresentation {
    let mut c = Tensor3::zeros(n);
    let mut d = Tensor3::zeros(n);
    for j in 0..n {
        for i in 0..n {
            for k in 0..n {
                let z = C64::new(rng.random_range(-scale..scale), rng.random_range(-scale..scale));
                d[[j, i, k]] = z;
                if i < k {
                    let w = C64::new(rng.random_range(-scale..scale), rng.random_range(-scale..scale));
                    c[[j, i, k]] = w;
                    c[[j, k, i]] = -w;
                }
            }
        }
    }
    ComplexPresentation::new(c, d).unwrap()
}

/// Random tensor with `R_{i j̄ k l̄} = conj(R_{j ī l k̄})`.
fn hermitian_tensor(rng: &mut ChaCha8Rng, n: usize) -> Tensor4 {
    let raw = Tensor4::from_fn(n, |_, _, _, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    Tensor4::from_fn(n, |i, j, k, l| (raw[[i, j, k, l]] + raw[[j, i, l, k]].conj()) * 0.5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frame_change_is_covariant(seed in any::<u64>(), fam in family()) {
        let inst = instance(seed, fam);
        let p = inst.presentation().unwrap();
        let u = random_unitary(p.n(), &mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
        let direct = change_frame(&p, &u).unwrap();
        let moved = complexify(&inst.algebra, &inst.structure, &inst.frame.transformed(&u)).unwrap();
        let scale = 1.0 + p.c_tensor().max_abs() + p.d_tensor().max_abs();
        prop_assert!(direct.c_tensor().max_abs_diff(moved.c_tensor()) < 1e-10 * scale);
        prop_assert!(direct.d_tensor().max_abs_diff(moved.d_tensor()) < 1e-10 * scale);
        let r = chern_curvature(&p);
        let r_moved = chern_curvature(&direct);
        prop_assert!(r.transform(&u).r.max_abs_diff(&r_moved.r) < 1e-9 * scale * scale);
    }

    #[test]
    fn realify_inverts_complexify(seed in any::<u64>(), fam in family()) {
        let p = instance(seed, fam).presentation().unwrap();
        let (alg, h, frame) = realify(&p);
        let back = complexify(&alg, &h, &frame).unwrap();
        prop_assert!(back.c_tensor().max_abs_diff(p.c_tensor()) < 1e-10);
        prop_assert!(back.d_tensor().max_abs_diff(p.d_tensor()) < 1e-10);
    }

    #[test]
    fn curvature_has_pair_symmetry(seed in any::<u64>(), fam in family()) {
        let r = chern_curvature(&instance(seed, fam).presentation().unwrap());
        prop_assert!(r.pair_symmetry_residual() < 1e-10);
    }

    #[test]
    fn holomorphic_sectional_is_frame_and_scale_invariant(seed in any::<u64>(), fam in family()) {
        let inst = instance(seed, fam);
        let p = inst.presentation().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
        let u = random_unitary(p.n(), &mut rng);
        let r0 = chern_curvature(&p);
        let r1 = chern_curvature(&change_frame(&p, &u).unwrap());
        let v_new = vector(&mut rng, p.n());
        let v_old = apply(&u.transpose(), &v_new);
        let h1 = holomorphic_sectional(&r1, &v_new).unwrap();
        prop_assert!((holomorphic_sectional(&r0, &v_old).unwrap() - h1).abs() < 1e-9);
        let t = C64::new(rng.random_range(0.1..3.0), rng.random_range(-3.0..3.0));
        let scaled: Vec<C64> = v_new.iter().map(|z| z * t).collect();
        prop_assert!((holomorphic_sectional(&r1, &scaled).unwrap() - h1).abs() < 1e-12);
    }

    #[test]
    fn sectional_curvature_sees_only_the_symmetrization(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = CurvatureTensor { r: hermitian_tensor(&mut rng, n) };
        let hat = symmetrize(&r);
        for _ in 0..4 {
            let v = vector(&mut rng, n);
            let a = holomorphic_sectional(&r, &v).unwrap();
            let b = holomorphic_sectional(&hat, &v).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_h_iff_space_form_symmetrization(seed in any::<u64>(), n in 1usize..4, c in -3.0f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Adding a tensor antisymmetric under i <-> k leaves R̂ and H unchanged.
        let a = hermitian_tensor(&mut rng, n);
        let model = space_form_model(n, c);
        let r = CurvatureTensor {
            r: Tensor4::from_fn(n, |i, j, k, l| model.r[[i, j, k, l]] + a[[i, j, k, l]] - a[[k, j, i, l]]),
        };
        let test = constant_h_test(&r, 1e-10);
        prop_assert!(test.is_constant);
        prop_assert!((test.c - c).abs() < 1e-12);
        for _ in 0..4 {
            let v = vector(&mut rng, n);
            prop_assert!((holomorphic_sectional(&r, &v).unwrap() - c).abs() < 1e-10);
        }
        // A non-model symmetric part makes H vary.
        let bumped = CurvatureTensor {
            r: Tensor4::from_fn(n, |i, j, k, l| {
                let bump = if (i, j, k, l) == (0, 0, 0, 0) { 0.5 } else { 0.0 };
                model.r[[i, j, k, l]] + C64::new(bump, 0.0)
            }),
        };
        let t2 = constant_h_test(&bumped, 1e-10);
        if n > 1 {
            prop_assert!(!t2.is_constant);
            let mut e1 = vec![C64::new(0.0, 0.0); n];
            e1[0] = C64::new(1.0, 0.0);
            let mut e2 = vec![C64::new(0.0, 0.0); n];
            e2[1] = C64::new(1.0, 0.0);
            let gap = holomorphic_sectional(&bumped, &e1).unwrap() - holomorphic_sectional(&bumped, &e2).unwrap();
            prop_assert!((gap - 0.5).abs() < 1e-12);
        } else {
            prop_assert!(t2.is_constant);
        }
    }

    #[test]
    fn d_squared_matches_bianchi(seed in any::<u64>(), n in 2usize..4, valid in any::<bool>(), fam in family()) {
        let p = if valid {
            instance(seed, fam).presentation().unwrap()
        } else {
            random_presentation(&mut ChaCha8Rng::seed_from_u64(seed), n, 1.0)
        };
        let d2 = StructureEquations::new(&p).d_squared_defect();
        let b = bianchi_defect(&p).max();
        let j = complex_jacobi_defect(&p);
        prop_assert_eq!(d2 < 1e-10, b < 1e-10);
        prop_assert_eq!(b < 1e-10, j < 1e-10);
        prop_assert_eq!(valid, b < 1e-10);
    }

    #[test]
    fn series_invariant_under_basis_change(seed in any::<u64>(), fam in family()) {
        let inst = instance(seed, fam);
        let (moved, _) = random_scramble_with(&inst, seed, true).unwrap();
        prop_assert!(jacobi_defect(&moved.algebra) < 1e-9);
        let a = series_report(&inst.algebra, 1e-9).unwrap();
        let b = series_report(&moved.algebra, 1e-9).unwrap();
        prop_assert_eq!(a.derived_series, b.derived_series);
        prop_assert_eq!(a.lower_central_series, b.lower_central_series);
    }

    #[test]
    fn algebra_documents_round_trip(seed in any::<u64>(), fam in family(), scramble in any::<bool>()) {
        let mut inst = instance(seed, fam);
        if scramble {
            inst = random_scramble_with(&inst, seed, true).unwrap().0;
        }
        let doc = AlgebraDocument::real(inst);
        let text = emit_algebra(&doc);
        let again = parse_algebra(&text).unwrap();
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(emit_algebra(&again), text);
    }
}
