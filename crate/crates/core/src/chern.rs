//! Chern torsion and curvature of a Hermitian Lie algebra in a unitary
//! frame, holomorphic sectional curvature, and the constant-H criterion
//! through the symmetrized curvature.

use serde::Serialize;

use crate::algebra::{ComplexPresentation, CurvatureTensor, TorsionTensor};
use crate::error::{Error, Result};
use crate::forms::{LeftInvariantForm, StructureEquations};
use crate::tensor::{Tensor3, Tensor4, C64, ZERO};

/// `T^j_{ik} = -C^j_{ik} - D^j_{ik} + D^j_{ki}`.
pub fn chern_torsion(pres: &ComplexPresentation) -> TorsionTensor {
    let n = pres.n();
    TorsionTensor {
        t: Tensor3::from_fn(n, |j, i, k| -pres.c(j, i, k) - pres.d(j, i, k) + pres.d(j, k, i)),
    }
}

/// ```text
/// R_{i j̄ k l̄} = Σ_s D^s_{ki} conj(D^s_{lj}) - D^l_{si} conj(D^k_{sj})
///                   - D^j_{si} conj(D^k_{ls}) - conj(D^i_{sj}) D^l_{ks}
/// ```
pub fn chern_curvature(pres: &ComplexPresentation) -> CurvatureTensor {
    let n = pres.n();
    let d = |j, i, k| pres.d(j, i, k);
    CurvatureTensor {
        r: Tensor4::from_fn(n, |i, j, k, l| {
            let mut acc = ZERO;
            for s in 0..n {
                acc += d(s, k, i) * d(s, l, j).conj()
                    - d(l, s, i) * d(k, s, j).conj()
                    - d(j, s, i) * d(k, l, s).conj()
                    - d(i, s, j).conj() * d(l, k, s);
            }
            acc
        }),
    }
}

/// `H(v) = Σ R_{i j̄ k l̄} v_i conj(v_j) v_k conj(v_l) / |v|⁴`.
pub fn holomorphic_sectional(r: &CurvatureTensor, v: &[C64]) -> Result<f64> {
    let n = r.n();
    if v.len() != n {
        return Err(Error::TypeMismatch(format!("vector has length {}, expected {n}", v.len())));
    }
    let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if norm2 == 0.0 {
        return Err(Error::ZeroVector);
    }
    let mut acc = ZERO;
    for i in 0..n {
        for j in 0..n {
            let w_ij = v[i] * v[j].conj();
            if w_ij == ZERO {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    acc += r.r[[i, j, k, l]] * w_ij * v[k] * v[l].conj();
                }
            }
        }
    }
    Ok(acc.re / (norm2 * norm2))
}

/// `R̂_{i j̄ k l̄} = (R_{i j̄ k l̄} + R_{k j̄ i l̄} + R_{i l̄ k j̄} + R_{k l̄ i j̄}) / 4`.
pub fn symmetrize(r: &CurvatureTensor) -> CurvatureTensor {
    let n = r.n();
    let t = &r.r;
    CurvatureTensor {
        r: Tensor4::from_fn(n, |i, j, k, l| {
            (t[[i, j, k, l]] + t[[k, j, i, l]] + t[[i, l, k, j]] + t[[k, l, i, j]]) * 0.25
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConstantH {
    pub is_constant: bool,
    /// `Re R̂_{1 1̄ 1 1̄}`.
    pub c: f64,
    /// `max |R̂_{i j̄ k l̄} - (c/2)(δ_ij δ_kl + δ_il δ_kj)|`.
    pub deviation: f64,
}

/// Tests whether H is constant: in a unitary frame this holds iff the
/// symmetrized curvature equals `(c/2)(δ_ij δ_kl + δ_il δ_kj)`.
pub fn constant_h_test(r: &CurvatureTensor, tol: f64) -> ConstantH {
    let n = r.n();
    let hat = symmetrize(r);
    let c = hat.r[[0, 0, 0, 0]].re;
    let mut deviation: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
                    let model = 0.5 * c * (delta(i, j) * delta(k, l) + delta(i, l) * delta(k, j));
                    deviation = deviation.max((hat.r[[i, j, k, l]] - model).norm());
                }
            }
        }
    }
    ConstantH {
        is_constant: deviation <= tol,
        c,
        deviation,
    }
}

/// `θ_{ij} = Σ_k D^j_{ik} φ_k - conj(D^i_{jk}) φ̄_k`, with `∇e_i = Σ_j θ_{ij} e_j`.
#[derive(Clone, Debug)]
pub struct ConnectionMatrix {
    n: usize,
    theta: Vec<LeftInvariantForm>,
}

impl ConnectionMatrix {
    pub fn new(pres: &ComplexPresentation) -> Self {
        let n = pres.n();
        let mut theta = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut f = LeftInvariantForm::zero(n);
                for k in 0..n {
                    let a = pres.d(j, i, k);
                    if a != ZERO {
                        f = &f + &LeftInvariantForm::phi(n, k).scale(a);
                    }
                    let b = pres.d(i, j, k);
                    if b != ZERO {
                        f = &f - &LeftInvariantForm::phi_bar(n, k).scale(b.conj());
                    }
                }
                theta.push(f);
            }
        }
        Self { n, theta }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &LeftInvariantForm {
        &self.theta[i * self.n + j]
    }

    /// `Θ = dθ - θ∧θ`, row-major.
    pub fn curvature_forms(&self, eqs: &StructureEquations) -> Vec<LeftInvariantForm> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut f = eqs.d(self.entry(i, j));
                for m in 0..n {
                    f = &f - &self.entry(i, m).wedge(self.entry(m, j));
                }
                out.push(f);
            }
        }
        out
    }
}

/// Curvature through the connection and curvature matrices: `R_{a b̄ k l̄}` is
/// the coefficient of `φ_a ∧ φ̄_b` in `Θ_{kl}`.
pub fn curvature_via_forms(pres: &ComplexPresentation) -> CurvatureTensor {
    let n = pres.n();
    let eqs = StructureEquations::new(pres);
    let theta = ConnectionMatrix::new(pres);
    let big = theta.curvature_forms(&eqs);
    CurvatureTensor {
        r: Tensor4::from_fn(n, |a, b, k, l| big[k * n + l].coefficient(&[a, n + b])),
    }
}

/// Fully symmetric 4-slot model `(c/2)(δ_ij δ_kl + δ_il δ_kj)`, handy as a
/// reference when comparing curvature tensors.
pub fn space_form_model(n: usize, c: f64) -> CurvatureTensor {
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    CurvatureTensor {
        r: Tensor4::from_fn(n, |i, j, k, l| {
            C64::new(0.5 * c * (delta(i, j) * delta(k, l) + delta(i, l) * delta(k, j)), 0.0)
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn kt_presentation() -> ComplexPresentation {
        let mut d = Tensor3::zeros(2);
        d[[0, 1, 0]] = C64::new(0.0, -FRAC_1_SQRT_2);
        ComplexPresentation::new(Tensor3::zeros(2), d).unwrap()
    }

    #[test]
    fn kt_torsion_and_curvature_by_hand() {
        let p = kt_presentation();
        let t = chern_torsion(&p);
        assert!((t.t[[0, 1, 0]] - C64::new(0.0, FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((t.t[[0, 0, 1]] + C64::new(0.0, FRAC_1_SQRT_2)).norm() < 1e-15);
        let r = chern_curvature(&p);
        let nz: Vec<_> = r.r.nonzero(1e-14).collect();
        assert_eq!(nz.len(), 2);
        assert!((r.r[[0, 0, 0, 0]] - C64::new(-0.5, 0.0)).norm() < 1e-15);
        assert!((r.r[[0, 0, 1, 1]] - C64::new(0.5, 0.0)).norm() < 1e-15);
        // Vanishing Chern-Ricci trace.
        assert!((r.r[[0, 0, 0, 0]] + r.r[[0, 0, 1, 1]]).norm() < 1e-15);
    }

    #[test]
    fn kt_forms_path_agrees() {
        let p = kt_presentation();
        let a = chern_curvature(&p);
        let b = curvature_via_forms(&p);
        assert!(a.r.max_abs_diff(&b.r) < 1e-14);
    }

    #[test]
    fn kt_sectional_values() {
        let r = chern_curvature(&kt_presentation());
        let one = C64::new(1.0, 0.0);
        let z = ZERO;
        assert!((holomorphic_sectional(&r, &[one, z]).unwrap() + 0.5).abs() < 1e-15);
        assert!(holomorphic_sectional(&r, &[z, one]).unwrap().abs() < 1e-15);
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        assert!(holomorphic_sectional(&r, &[s, s]).unwrap().abs() < 1e-15);
        let v = [C64::new(0.3, -1.0), C64::new(2.0, 0.5)];
        let w = [v[0] * 2.0, v[1] * 2.0];
        let hv = holomorphic_sectional(&r, &v).unwrap();
        assert!((hv - holomorphic_sectional(&r, &w).unwrap()).abs() < 1e-15);
        assert!(matches!(holomorphic_sectional(&r, &[z, z]), Err(Error::ZeroVector)));
    }

    #[test]
    fn kt_symmetrization_and_constant_test() {
        let r = chern_curvature(&kt_presentation());
        let hat = symmetrize(&r);
        assert!((hat.r[[0, 0, 0, 0]] + C64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((hat.r[[0, 0, 1, 1]] - C64::new(0.125, 0.0)).norm() < 1e-15);
        assert!(symmetrize(&hat).r.max_abs_diff(&hat.r) < 1e-15);
        let t = constant_h_test(&r, 1e-9);
        assert!(!t.is_constant);
        assert!((t.c + 0.5).abs() < 1e-15);
    }

    #[test]
    fn zero_curvature_is_constant_zero() {
        let r = CurvatureTensor { r: Tensor4::zeros(3) };
        let t = constant_h_test(&r, 1e-9);
        assert!(t.is_constant);
        assert_eq!(t.c, 0.0);
    }

    #[test]
    fn space_form_model_is_fixed_by_symmetrization() {
        let m = space_form_model(3, -1.7);
        assert!(symmetrize(&m).r.max_abs_diff(&m.r) < 1e-15);
        let t = constant_h_test(&m, 1e-12);
        assert!(t.is_constant && (t.c + 1.7).abs() < 1e-15);
        let v = [C64::new(0.2, 0.1), C64::new(-1.0, 0.4), C64::new(0.0, 2.0)];
        assert!((holomorphic_sectional(&m, &v).unwrap() + 1.7).abs() < 1e-13);
    }
}
