//! Lie-algebraic and Hermitian axiom checks: Jacobi, integrability, the
//! complex Bianchi families, unimodularity, derived and lower central
//! series, and the pure-type decomposition of the commutator.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::algebra::{ComplexPresentation, Frame, HermitianStructure, RealLieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{hcat, real_column_space};
use crate::tensor::{C64, ZERO};

fn unit(d: usize, a: usize) -> Vec<f64> {
    let mut v = vec![0.0; d];
    v[a] = 1.0;
    v
}

fn sup(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

/// `max |[[x,y],z] + [[y,z],x] + [[z,x],y]|` over basis triples.
pub fn jacobi_defect(alg: &RealLieAlgebra) -> f64 {
    let d = alg.dim();
    let basis: Vec<Vec<f64>> = (0..d).map(|a| unit(d, a)).collect();
    let brackets: Vec<Vec<Vec<f64>>> = (0..d)
        .map(|a| (0..d).map(|b| alg.bracket(&basis[a], &basis[b])).collect())
        .collect();
    let mut worst: f64 = 0.0;
    for a in 0..d {
        for b in (a + 1)..d {
            for c in (b + 1)..d {
                let t1 = alg.bracket(&brackets[a][b], &basis[c]);
                let t2 = alg.bracket(&brackets[b][c], &basis[a]);
                let t3 = alg.bracket(&brackets[c][a], &basis[b]);
                let s: Vec<f64> = (0..d).map(|m| t1[m] + t2[m] + t3[m]).collect();
                worst = worst.max(sup(&s));
            }
        }
    }
    worst
}

/// `max |[x,y] - [Jx,Jy] + J[Jx,y] + J[x,Jy]|` over basis pairs.
pub fn nijenhuis_defect(alg: &RealLieAlgebra, h: &HermitianStructure) -> f64 {
    let d = alg.dim();
    let j = h.j();
    let apply = |v: &[f64]| -> Vec<f64> { (j * DVector::from_column_slice(v)).iter().copied().collect() };
    let mut worst: f64 = 0.0;
    for a in 0..d {
        let x = unit(d, a);
        let jx = apply(&x);
        for b in (a + 1)..d {
            let y = unit(d, b);
            let jy = apply(&y);
            let t1 = alg.bracket(&x, &y);
            let t2 = alg.bracket(&jx, &jy);
            let t3 = apply(&alg.bracket(&jx, &y));
            let t4 = apply(&alg.bracket(&x, &jy));
            let s: Vec<f64> = (0..d).map(|m| t1[m] - t2[m] + t3[m] + t4[m]).collect();
            worst = worst.max(sup(&s));
        }
    }
    worst
}

/// Residuals of the three Bianchi families, in display order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BianchiDefect {
    pub first: f64,
    pub second: f64,
    pub third: f64,
}

impl BianchiDefect {
    pub fn max(&self) -> f64 {
        self.first.max(self.second).max(self.third)
    }
}

/// Evaluates the first Bianchi identity written in `C` and `D`:
///
/// ```text
/// Σ_r C^r_{ij} C^l_{rk} + C^r_{jk} C^l_{ri} + C^r_{ki} C^l_{rj}
/// Σ_r C^r_{ik} D^l_{jr} + D^r_{ji} D^l_{rk} - D^r_{jk} D^l_{ri}
/// Σ_r C^r_{ik} conj(D^r_{jl}) - C^j_{rk} conj(D^i_{rl}) + C^j_{ri} conj(D^k_{rl})
///     - D^l_{ri} conj(D^k_{jr}) + D^l_{rk} conj(D^i_{jr})
/// ```
pub fn bianchi_defect(pres: &ComplexPresentation) -> BianchiDefect {
    let n = pres.n();
    let c = |j, i, k| pres.c(j, i, k);
    let d = |j, i, k| pres.d(j, i, k);
    let mut out = BianchiDefect {
        first: 0.0,
        second: 0.0,
        third: 0.0,
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut f1 = ZERO;
                    let mut f2 = ZERO;
                    let mut f3 = ZERO;
                    for r in 0..n {
                        f1 += c(r, i, j) * c(l, r, k) + c(r, j, k) * c(l, r, i) + c(r, k, i) * c(l, r, j);
                        f2 += c(r, i, k) * d(l, j, r) + d(r, j, i) * d(l, r, k) - d(r, j, k) * d(l, r, i);
                        f3 += c(r, i, k) * d(r, j, l).conj() - c(j, r, k) * d(i, r, l).conj()
                            + c(j, r, i) * d(k, r, l).conj()
                            - d(l, r, i) * d(k, j, r).conj()
                            + d(l, r, k) * d(i, j, r).conj();
                    }
                    out.first = out.first.max(f1.norm());
                    out.second = out.second.max(f2.norm());
                    out.third = out.third.max(f3.norm());
                }
            }
        }
    }
    out
}

/// Jacobi identity evaluated directly on the complex frame brackets
/// `{e_a, ē_a}` rebuilt from `C` and `D`.
pub fn complex_jacobi_defect(pres: &ComplexPresentation) -> f64 {
    complex_jacobi_residuals(pres)
        .into_iter()
        .map(|(_, v)| v.iter().map(|z| z.norm()).fold(0.0, f64::max))
        .fold(0.0, f64::max)
}

/// Every triple `(a, b, c)` (0-based over `e_1 … e_n, ē_1 … ē_n`) with its
/// cyclic Jacobi sum in the same basis.
pub fn complex_jacobi_residuals(pres: &ComplexPresentation) -> Vec<([usize; 3], Vec<C64>)> {
    let k = pres.bracket_table();
    let m = 2 * pres.n();
    let br = |x: &[C64], y: &[C64]| -> Vec<C64> {
        let mut out = vec![ZERO; m];
        for a in 0..m {
            if x[a] == ZERO {
                continue;
            }
            for b in 0..m {
                let w = x[a] * y[b];
                if w == ZERO {
                    continue;
                }
                for (c, o) in out.iter_mut().enumerate() {
                    *o += w * k[[c, a, b]];
                }
            }
        }
        out
    };
    let basis: Vec<Vec<C64>> = (0..m)
        .map(|a| {
            let mut v = vec![ZERO; m];
            v[a] = C64::new(1.0, 0.0);
            v
        })
        .collect();
    let mut out = Vec::new();
    for a in 0..m {
        for b in (a + 1)..m {
            for c in (b + 1)..m {
                let t1 = br(&br(&basis[a], &basis[b]), &basis[c]);
                let t2 = br(&br(&basis[b], &basis[c]), &basis[a]);
                let t3 = br(&br(&basis[c], &basis[a]), &basis[b]);
                let s: Vec<C64> = (0..m).map(|x| t1[x] + t2[x] + t3[x]).collect();
                out.push(([a, b, c], s));
            }
        }
    }
    out
}

/// `max_i |Σ_s (C^s_{si} + D^s_{si})|`.
pub fn unimodular_defect(pres: &ComplexPresentation) -> f64 {
    let n = pres.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|s| pres.c(s, s, i) + pres.d(s, s, i))
                .sum::<C64>()
                .norm()
        })
        .fold(0.0, f64::max)
}

/// `max_a |tr ad_{ε_a}|` over the real basis.
pub fn real_trace_defect(alg: &RealLieAlgebra) -> f64 {
    let d = alg.dim();
    (0..d)
        .map(|a| alg.ad(&unit(d, a)).trace().abs())
        .fold(0.0, f64::max)
}

/// `max_i |tr ad_{e_i}|` over the frame vectors; equals [`unimodular_defect`]
/// of the corresponding presentation.
pub fn frame_trace_defect(alg: &RealLieAlgebra, frame: &Frame) -> f64 {
    let d = alg.dim();
    let traces: Vec<f64> = (0..d).map(|a| alg.ad(&unit(d, a)).trace()).collect();
    (0..frame.n())
        .map(|i| {
            frame
                .column(i)
                .iter()
                .zip(&traces)
                .map(|(z, t)| z * *t)
                .sum::<C64>()
                .norm()
        })
        .fold(0.0, f64::max)
}

/// Orthonormal basis of `span{[a_i, b_j]}` for column bases `a`, `b`.
pub fn bracket_span(alg: &RealLieAlgebra, a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let d = alg.dim();
    let mut cols: Vec<DVector<f64>> = Vec::with_capacity(a.ncols() * b.ncols());
    for x in a.column_iter() {
        let x: Vec<f64> = x.iter().copied().collect();
        for y in b.column_iter() {
            let y: Vec<f64> = y.iter().copied().collect();
            cols.push(DVector::from_vec(alg.bracket(&x, &y)));
        }
    }
    if cols.is_empty() {
        return DMatrix::zeros(d, 0);
    }
    real_column_space(&DMatrix::from_columns(&cols))
}

/// Orthonormal basis of `𝔤' = [𝔤, 𝔤]`.
pub fn commutator(alg: &RealLieAlgebra) -> DMatrix<f64> {
    let d = alg.dim();
    let id = DMatrix::identity(d, d);
    bracket_span(alg, &id, &id)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesReport {
    /// `dim 𝔤, dim 𝔤', dim 𝔤'', …` until zero or stabilization.
    pub derived_series: Vec<usize>,
    /// `dim 𝔤, dim [𝔤,𝔤], dim [𝔤,[𝔤,𝔤]], …` until zero or stabilization.
    pub lower_central_series: Vec<usize>,
    pub is_solvable: bool,
    pub is_nilpotent: bool,
    /// Number of steps to reach zero; `None` when the series stabilizes above zero.
    pub solv_steps: Option<usize>,
    pub nilp_steps: Option<usize>,
    #[serde(skip)]
    pub commutator_basis: DMatrix<f64>,
}

fn run_series(
    d: usize,
    mut step: impl FnMut(&DMatrix<f64>) -> DMatrix<f64>,
) -> (Vec<usize>, Option<usize>, Option<DMatrix<f64>>) {
    let mut current = DMatrix::identity(d, d);
    let mut dims = vec![d];
    let mut first = None;
    for steps in 1..=d + 1 {
        let next = step(&current);
        let k = next.ncols();
        if first.is_none() {
            first = Some(next.clone());
        }
        if k == 0 {
            dims.push(0);
            return (dims, Some(steps), first);
        }
        if k == current.ncols() {
            return (dims, None, first);
        }
        dims.push(k);
        current = next;
    }
    (dims, None, first)
}

pub fn series_report(alg: &RealLieAlgebra, tol: f64) -> Result<SeriesReport> {
    let defect = jacobi_defect(alg);
    if defect > tol {
        return Err(Error::NotALieAlgebra { defect });
    }
    let d = alg.dim();
    let (derived, solv_steps, first) = run_series(d, |s| bracket_span(alg, s, s));
    let id = DMatrix::identity(d, d);
    let (lower, nilp_steps, _) = run_series(d, |s| bracket_span(alg, &id, s));
    Ok(SeriesReport {
        derived_series: derived,
        lower_central_series: lower,
        is_solvable: solv_steps.is_some(),
        is_nilpotent: nilp_steps.is_some(),
        solv_steps,
        nilp_steps,
        commutator_basis: first.unwrap_or_else(|| DMatrix::zeros(d, 0)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PureType {
    I,
    II,
    III,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PureTypeReport {
    pub dim_commutator: usize,
    pub dim_intersection: usize,
    pub dim_v: usize,
    pub dim_w: usize,
    pub types: Vec<PureType>,
    pub commutator_is_complex: bool,
    /// `𝔤' = 0`: every pure-type predicate is vacuous and `types` is empty.
    pub abelian: bool,
}

/// Dimensions of `𝔤 = (𝔤'∩J𝔤') ⊕ (V ⊕ JV) ⊕ W` and the pure types they imply.
pub fn classify_pure_type(alg: &RealLieAlgebra, h: &HermitianStructure, tol: f64) -> Result<PureTypeReport> {
    let defect = jacobi_defect(alg);
    if defect > tol {
        return Err(Error::NotALieAlgebra { defect });
    }
    let defect = nijenhuis_defect(alg, h);
    if defect > tol {
        return Err(Error::NotIntegrable { defect });
    }
    let d = alg.dim();
    let cm = commutator(alg);
    let p = cm.ncols();
    let sum = real_column_space(&hcat(&cm, &(h.j() * &cm))).ncols();
    let dim_intersection = 2 * p - sum;
    let dim_v = p - dim_intersection;
    let dim_w = d - sum;
    let abelian = p == 0;
    let mut types = Vec::new();
    if !abelian {
        if dim_intersection == 0 {
            types.push(PureType::I);
        }
        if dim_v == 0 {
            types.push(PureType::II);
        }
        if dim_w == 0 {
            types.push(PureType::III);
        }
    }
    Ok(PureTypeReport {
        dim_commutator: p,
        dim_intersection,
        dim_v,
        dim_w,
        types,
        commutator_is_complex: dim_v == 0,
        abelian,
    })
}
