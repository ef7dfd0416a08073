use hermlie::admissible::{
    adapted_commutator_frame, flat_structure_check, is_admissible, lemma_goal_check, salamon_normalize,
    verify_theorem, AdmissibleData, VerdictStatus, VerifyOptions,
};
use hermlie::catalog::{
    complex_diagonal, complex_lie_instance, heisenberg_example, kodaira_thurston, pure_type_ii_instance,
    sample_pure_type_ii,
};
use hermlie::checks::classify_pure_type;
use hermlie::{
    build_unitary_frame, ComplexPresentation, Error, HermitianStructure, Instance, Precondition, RealLieAlgebra,
    Tensor3, Tolerances, C64,
};
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn admissible_of(inst: &Instance) -> AdmissibleData {
    let (frame, r) = adapted_commutator_frame(&inst.algebra, &inst.structure, 1e-8).unwrap();
    let pres = Instance::new(inst.algebra.clone(), inst.structure.clone(), frame)
        .unwrap()
        .presentation()
        .unwrap();
    salamon_normalize(&pres, r, 1e-8).unwrap()
}

fn pure_type_ii(seed: u64, r: usize, n: usize) -> Instance {
    sample_pure_type_ii(&mut ChaCha8Rng::seed_from_u64(seed), r, n).unwrap()
}

#[test]
fn heisenberg_adapted_frame() {
    let inst = heisenberg_example(&[c(0.5, 1.0), c(-0.7, 0.2)]).unwrap();
    let (frame, r) = adapted_commutator_frame(&inst.algebra, &inst.structure, 1e-8).unwrap();
    assert_eq!(r, 2);
    let p = Instance::new(inst.algebra.clone(), inst.structure.clone(), frame)
        .unwrap()
        .presentation()
        .unwrap();
    let a = is_admissible(&p, r, 1e-8);
    assert!(a.res1 < 1e-12, "{a:?}");
    assert!(a.admissible);
}

#[test]
fn kodaira_thurston_commutator_not_complex() {
    let kt = kodaira_thurston();
    assert!(matches!(
        adapted_commutator_frame(&kt.algebra, &kt.structure, 1e-8),
        Err(Error::CommutatorNotComplex)
    ));
}

#[test]
fn abelian_rank_zero() {
    let alg = RealLieAlgebra::abelian(4).unwrap();
    let (_, r) = adapted_commutator_frame(&alg, &HermitianStructure::standard(2), 1e-8).unwrap();
    assert_eq!(r, 0);
}

#[test]
fn normalizer_keeps_admissible_examples() {
    let inst = heisenberg_example(&[c(1.0, 0.3)]).unwrap();
    let p = inst.presentation().unwrap();
    let ad = salamon_normalize(&p, 1, 1e-8).unwrap();
    assert!(ad.pres.c_tensor().max_abs_diff(p.c_tensor()) < 1e-14);
    assert!(ad.pres.d_tensor().max_abs_diff(p.d_tensor()) < 1e-14);
    let e3 = pure_type_ii(3, 2, 3);
    let p3 = e3.presentation().unwrap();
    let ad3 = salamon_normalize(&p3, 2, 1e-8).unwrap();
    assert!(ad3.pres.c_tensor().max_abs_diff(p3.c_tensor()) < 1e-14);
    let z = ComplexPresentation::new(Tensor3::zeros(2), Tensor3::zeros(2)).unwrap();
    assert_eq!(salamon_normalize(&z, 0, 1e-8).unwrap().pres, z);
}

fn single_bracket(n: usize) -> ComplexPresentation {
    let mut ct = Tensor3::zeros(n);
    ct[[0, 0, 1]] = c(1.0, 0.0);
    ct[[0, 1, 0]] = c(-1.0, 0.0);
    ComplexPresentation::new(ct, Tensor3::zeros(n)).unwrap()
}

#[test]
fn triangularity_predicate() {
    let p = single_bracket(3);
    let a = is_admissible(&p, 2, 1e-8);
    assert!(!a.admissible);
    assert!((a.res2 - 1.0).abs() < 1e-15);
    let z = is_admissible(&ComplexPresentation::new(Tensor3::zeros(2), Tensor3::zeros(2)).unwrap(), 0, 1e-8);
    assert!(z.admissible && z.residual() == 0.0);
    let e3 = pure_type_ii(9, 1, 2).presentation().unwrap();
    let a3 = is_admissible(&e3, 1, 1e-8);
    assert!(a3.admissible && a3.residual() < 1e-14);
}

#[test]
fn normalizer_swaps_single_bracket() {
    let ad = salamon_normalize(&single_bracket(2), 2, 1e-8).unwrap();
    let nz: Vec<_> = ad.pres.c_tensor().nonzero(1e-12).collect();
    assert_eq!(nz.len(), 2);
    assert!((ad.pres.c(1, 0, 1) - c(-1.0, 0.0)).norm() < 1e-14);
    assert!(is_admissible(&ad.pres, 2, 1e-8).admissible);
}

#[test]
fn goal_residuals_vanish_on_flat_examples() {
    let e1 = admissible_of(&heisenberg_example(&[c(0.4, -0.9), c(1.3, 0.2), c(-0.5, 0.6)]).unwrap());
    assert!(lemma_goal_check(&e1, &tol()).unwrap() < 1e-12);
    let e3 = admissible_of(&pure_type_ii(21, 2, 4));
    assert!(lemma_goal_check(&e3, &tol()).unwrap() < 1e-12);
    let kt = AdmissibleData {
        pres: kodaira_thurston().presentation().unwrap(),
        r: 1,
        block_partition: None,
    };
    assert!(matches!(
        lemma_goal_check(&kt, &tol()),
        Err(Error::PreconditionFailed(Precondition::CommutatorNotComplex))
    ));
}

#[test]
fn flat_structure_of_pure_type_ii() {
    let one = vec![vec![1.0, 0.5]];
    let zero = vec![vec![0.0, 0.0]];
    let inst = pure_type_ii_instance(1, 3, &one, &zero, &vec![vec![0.2, -0.4]], &zero).unwrap();
    let ad = admissible_of(&inst);
    let rep = flat_structure_check(&ad, &tol(), 0).unwrap();
    assert!(rep.diagonalization < 1e-12);
    assert!(rep.normality < 1e-12 && rep.commutation < 1e-12);
    assert!(rep.y_constraints.max() < 1e-12);
    assert_eq!(rep.y.len(), 1);
    for (p, z) in rep.y[0].iter().enumerate() {
        assert!((z - ad.pres.d(0, 0, 1 + p)).norm() < 1e-12);
    }
    assert_eq!(rep.block_partition, vec![vec![], vec![0]]);
}

#[test]
fn flat_structure_of_complex_lie_algebra() {
    let p = complex_lie_instance(complex_diagonal(&[c(1.0, 0.4), c(-0.3, 0.8)]), 1e-12).unwrap();
    let ad = salamon_normalize(&p, 2, 1e-8).unwrap();
    let rep = flat_structure_check(&ad, &tol(), 4).unwrap();
    assert!(rep.y.iter().flatten().all(|z| z.norm() < 1e-14));
    assert_eq!(rep.block_partition, vec![vec![0, 1]]);
    assert!(rep.blocks.max() < 1e-12);
}

#[test]
fn flat_structure_rejects_curved_input() {
    let kt = AdmissibleData {
        pres: kodaira_thurston().presentation().unwrap(),
        r: 1,
        block_partition: None,
    };
    assert!(matches!(
        flat_structure_check(&kt, &tol(), 0),
        Err(Error::PreconditionFailed(Precondition::NotChernFlat))
    ));
}

#[test]
fn verdicts_on_named_examples() {
    let opts = VerifyOptions::default();
    let e1 = heisenberg_example(&[c(0.3, 0.8)]).unwrap();
    let v = verify_theorem(&e1.algebra, &e1.structure, &opts).unwrap();
    match v.status {
        VerdictStatus::ConstantHChernFlat { c, max_curvature } => {
            assert!(c.abs() < 1e-9 && max_curvature < 1e-9);
        }
        other => panic!("{other:?}"),
    }
    let e3 = pure_type_ii(5, 2, 4);
    let pure = classify_pure_type(&e3.algebra, &e3.structure, 1e-8).unwrap();
    assert!(pure.commutator_is_complex);
    let v3 = verify_theorem(&e3.algebra, &e3.structure, &opts).unwrap();
    assert_eq!(v3.status.tag(), "constant_H_chern_flat");
    let kt = kodaira_thurston();
    let vk = verify_theorem(&kt.algebra, &kt.structure, &opts).unwrap();
    assert_eq!(
        vk.status,
        VerdictStatus::NotApplicable {
            reason: Precondition::CommutatorNotComplex
        }
    );
}

#[test]
fn stretched_heisenberg_metric_has_two_outcomes_only() {
    let e1 = heisenberg_example(&[c(0.6, -0.5), c(1.1, 0.9)]).unwrap();
    let d = e1.algebra.dim();
    let n = d / 2;
    // diag(2, 1, …) on U, kept J-compatible by stretching X_1 and Y_1 together.
    let mut g = DMatrix::identity(d, d);
    g[(0, 0)] = 2.0;
    g[(n, n)] = 2.0;
    let h = HermitianStructure::new(e1.structure.j().clone(), g).unwrap();
    let frame = build_unitary_frame(&h, &[]).unwrap();
    let inst = Instance::new(e1.algebra.clone(), h, frame).unwrap();
    let v = verify_theorem(&inst.algebra, &inst.structure, &VerifyOptions::default()).unwrap();
    match &v.status {
        VerdictStatus::ConstantHChernFlat { c, .. } => assert!(c.abs() < 1e-9),
        VerdictStatus::NonConstantH { witnesses, spread } => {
            assert!((witnesses[0].h - witnesses[1].h).abs() > 1e-9);
            assert!(*spread > 1e-9);
        }
        other => panic!("{other:?}"),
    }
}
