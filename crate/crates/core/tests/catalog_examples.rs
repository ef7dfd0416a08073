use std::f64::consts::FRAC_1_SQRT_2;

use hermlie::admissible::{random_unit_vector, verify_theorem, VerifyOptions};
use hermlie::catalog::{
    apply_scramble, complex_lie_instance, heisenberg_example, kodaira_thurston, pure_type_ii_instance,
    random_scramble_with, sample_pure_type_ii, six_dim_constraints, six_dim_instance, CatalogParams, Scramble,
    SixDimParams, FAMILY_NAMES, SIX_DIM_NOTE,
};
use hermlie::checks::{classify_pure_type, jacobi_defect, series_report, PureType};
use hermlie::chern::{chern_curvature, holomorphic_sectional};
use hermlie::{Error, Tensor3, C64};
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn heisenberg_minus_one() {
    let inst = heisenberg_example(&[c(-1.0, 0.0)]).unwrap();
    assert_eq!(jacobi_defect(&inst.algebra), 0.0);
    let s = series_report(&inst.algebra, 1e-10).unwrap();
    assert_eq!(s.solv_steps, Some(2));
    let t = classify_pure_type(&inst.algebra, &inst.structure, 1e-10).unwrap();
    assert_eq!(t.types, vec![PureType::II]);
    assert!(chern_curvature(&inst.presentation().unwrap()).max_abs() < 1e-15);
}

#[test]
fn heisenberg_rejects_zero_parameter() {
    assert!(matches!(
        heisenberg_example(&[c(1.0, 0.0), c(0.0, 0.0)]),
        Err(Error::ZeroParameter { index: 1 })
    ));
}

#[test]
fn complex_jacobi_gate() {
    let mut ct = Tensor3::zeros(3);
    for (j, i, k) in [(1, 0, 1), (2, 0, 2), (0, 1, 2)] {
        ct[[j, i, k]] = c(1.0, 0.0);
        ct[[j, k, i]] = c(-1.0, 0.0);
    }
    match complex_lie_instance(ct, 1e-10) {
        Err(Error::JacobiViolation(report)) => {
            assert!((report.defect - 2.0).abs() < 1e-12);
            assert!(!report.violated.is_empty());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn pure_type_ii_single_entry() {
    let inst = pure_type_ii_instance(1, 2, &[vec![1.0]], &[vec![0.0]], &[vec![0.0]], &[vec![0.0]]).unwrap();
    let p = inst.presentation().unwrap();
    assert!((p.d(0, 0, 1) - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-14);
    assert!((p.c(0, 0, 1) - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-14);
    assert!(chern_curvature(&p).max_abs() < 1e-15);
    let t = classify_pure_type(&inst.algebra, &inst.structure, 1e-10).unwrap();
    assert_eq!(t.types, vec![PureType::II]);
}

#[test]
fn pure_type_ii_random_is_flat() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..5 {
        let inst = sample_pure_type_ii(&mut rng, 2, 4).unwrap();
        let v = verify_theorem(&inst.algebra, &inst.structure, &VerifyOptions::default()).unwrap();
        assert_eq!(v.status.tag(), "constant_H_chern_flat");
    }
}

#[test]
fn pure_type_ii_degenerate_row() {
    let z = vec![vec![0.0], vec![0.0]];
    let x = vec![vec![1.0], vec![0.0]];
    assert!(matches!(
        pure_type_ii_instance(2, 3, &x, &z, &z, &z),
        Err(Error::DegenerateRow { row: 1 })
    ));
}

fn six(y1: C64, z1: C64, y2: C64, z2: C64) -> SixDimParams {
    SixDimParams { y1, z1, y2, z2 }
}

#[test]
fn six_dim_consistent_corner() {
    let zero = c(0.0, 0.0);
    let p = six(c(0.0, 2.0), zero, zero, zero);
    let inst = six_dim_instance(&p, 1e-10).unwrap();
    assert!(jacobi_defect(&inst.algebra) < 1e-12);
}

fn residual_of(report: &hermlie::catalog::ConstraintReport, triple: [&str; 3]) -> Vec<(String, C64)> {
    report
        .violated
        .iter()
        .find(|t| t.triple.iter().map(String::as_str).eq(triple))
        .unwrap_or_else(|| panic!("triple {triple:?} missing from {:?}", report.violated))
        .residual
        .clone()
}

#[test]
fn six_dim_z2_forced_to_zero() {
    let zero = c(0.0, 0.0);
    let p = six(c(0.3, 0.1), c(0.2, -0.4), zero, c(1.0, 0.0));
    match six_dim_instance(&p, 1e-10) {
        Err(Error::JacobiViolation(report)) => {
            assert_eq!(report.constraints, vec!["Z2 = 0".to_string()]);
            let res = residual_of(&report, ["e1", "e2", "e3"]);
            assert_eq!(res.len(), 1);
            assert_eq!(res[0].0, "e1");
            assert!((res[0].1 - c(-1.0, 0.0)).norm() < 1e-12);
            assert_eq!(report.note.as_deref(), Some(SIX_DIM_NOTE));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn six_dim_y2_forced_to_zero() {
    let zero = c(0.0, 0.0);
    let y2 = c(1.0, 0.0);
    let p = six(c(0.3, 0.1), c(0.2, -0.4), y2, zero);
    let report = six_dim_constraints(&p, 1e-10);
    assert_eq!(report.constraints, vec!["Y2 = 0".to_string()]);
    let res = residual_of(&report, ["e1", "e2", "ebar3"]);
    assert_eq!(res.len(), 1);
    assert_eq!(res[0].0, "e1");
    assert!((res[0].1 + y2.conj()).norm() < 1e-12);
}

#[test]
fn kodaira_thurston_entry() {
    let kt = kodaira_thurston();
    let p = kt.presentation().unwrap();
    let d: Vec<_> = p.d_tensor().nonzero(1e-14).collect();
    assert_eq!(d.len(), 1);
    let r = chern_curvature(&p);
    assert!((r.r[[0, 0, 0, 0]] - c(-0.5, 0.0)).norm() < 1e-14);
    let t = classify_pure_type(&kt.algebra, &kt.structure, 1e-10).unwrap();
    assert!(!t.commutator_is_complex);
}

#[test]
fn identity_scramble_is_identity() {
    let inst = heisenberg_example(&[c(0.2, 0.9)]).unwrap();
    let out = apply_scramble(&inst, &Scramble::identity(inst.frame.n())).unwrap();
    assert_eq!(out, inst);
}

#[test]
fn scramble_preserves_heisenberg_verdict() {
    let inst = heisenberg_example(&[c(0.2, 0.9), c(-1.0, 0.4)]).unwrap();
    let opts = VerifyOptions::default();
    let v0 = verify_theorem(&inst.algebra, &inst.structure, &opts).unwrap();
    for seed in 0..4 {
        let (s, _) = random_scramble_with(&inst, seed, true).unwrap();
        let v = verify_theorem(&s.algebra, &s.structure, &opts).unwrap();
        assert_eq!(v.status.tag(), v0.status.tag());
    }
}

#[test]
fn scramble_preserves_kodaira_thurston_h() {
    let kt = kodaira_thurston();
    let r0 = chern_curvature(&kt.presentation().unwrap());
    let (s, scramble) = random_scramble_with(&kt, 42, true).unwrap();
    let r1 = chern_curvature(&s.presentation().unwrap());
    let ut = scramble.unitary.transpose();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut lo0, mut hi0, mut lo1, mut hi1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for _ in 0..200 {
        let v_new = random_unit_vector(2, &mut rng);
        let v_old: Vec<C64> = (&ut * DMatrix::from_column_slice(2, 1, &v_new)).iter().copied().collect();
        let h1 = holomorphic_sectional(&r1, &v_new).unwrap();
        let h0 = holomorphic_sectional(&r0, &v_old).unwrap();
        assert!((h0 - h1).abs() < 1e-9);
        lo0 = lo0.min(h0);
        hi0 = hi0.max(h0);
        lo1 = lo1.min(h1);
        hi1 = hi1.max(h1);
    }
    assert!((lo0 - lo1).abs() < 1e-9 && (hi0 - hi1).abs() < 1e-9);
}

#[test]
fn named_parameters_build() {
    for (seed, name) in FAMILY_NAMES.iter().enumerate() {
        let params = CatalogParams::sample(name, seed as u64).unwrap();
        let built = params.build(1e-10);
        if *name == "six_dim" {
            assert!(matches!(built, Err(Error::JacobiViolation(_))));
        } else {
            let inst = built.unwrap();
            assert!(jacobi_defect(&inst.algebra) < 1e-10, "{name}");
        }
        let text = serde_json::to_string(&params).unwrap();
        let back: CatalogParams = serde_json::from_str(&text).unwrap();
        assert_eq!(back, params);
    }
    assert!(matches!(CatalogParams::sample("nope", 0), Err(Error::Validation { .. })));
}
