//! Shared test helpers: an independent Chern connection computed from its
//! defining properties on the real algebra.

#![allow(dead_code)]

use hermlie::{Instance, Tensor3, Tensor4, C64};
use nalgebra::{DMatrix, DVector};

/// Connection matrices `Γ_a` with `∇_{ε_a} ε_b = Γ_a ε_b`, determined by
/// `Γ_a J = J Γ_a`, `Γ_aᵀ g + g Γ_a = 0` and `T(x, y) + T(Jx, Jy) = 0`.
pub fn chern_connection(inst: &Instance) -> (Vec<DMatrix<f64>>, f64) {
    let alg = &inst.algebra;
    let j = inst.structure.j();
    let g = inst.structure.g();
    let d = alg.dim();
    // Unknown Γ_a[(p, q)] sits at index (a * d + p) * d + q.
    let var = |a: usize, p: usize, q: usize| (a * d + p) * d + q;
    let unknowns = d * d * d;
    let mut rows: Vec<(Vec<(usize, f64)>, f64)> = Vec::new();
    for a in 0..d {
        for p in 0..d {
            for q in 0..d {
                // (Γ_a J - J Γ_a)[(p, q)]
                let mut row = Vec::new();
                for m in 0..d {
                    row.push((var(a, p, m), j[(m, q)]));
                    row.push((var(a, m, q), -j[(p, m)]));
                }
                rows.push((row, 0.0));
                // (Γ_aᵀ g + g Γ_a)[(p, q)]
                let mut row = Vec::new();
                for m in 0..d {
                    row.push((var(a, m, p), g[(m, q)]));
                    row.push((var(a, m, q), g[(p, m)]));
                }
                rows.push((row, 0.0));
            }
        }
    }
    let unit = |a: usize| {
        let mut v = vec![0.0; d];
        v[a] = 1.0;
        v
    };
    let jcol = |a: usize| -> Vec<f64> { (0..d).map(|p| j[(p, a)]).collect() };
    // ∇_x y - ∇_y x for coordinate vectors, as sparse rows per output index.
    let torsion_terms = |x: &[f64], y: &[f64], out: &mut Vec<Vec<(usize, f64)>>| {
        for (p, row) in out.iter_mut().enumerate() {
            for a in 0..d {
                for q in 0..d {
                    let w = x[a] * y[q] - y[a] * x[q];
                    if w != 0.0 {
                        row.push((var(a, p, q), w));
                    }
                }
            }
        }
    };
    for b in 0..d {
        for c in (b + 1)..d {
            let (x, y) = (unit(b), unit(c));
            let (jx, jy) = (jcol(b), jcol(c));
            let mut out = vec![Vec::new(); d];
            torsion_terms(&x, &y, &mut out);
            torsion_terms(&jx, &jy, &mut out);
            let br1 = alg.bracket(&x, &y);
            let br2 = alg.bracket(&jx, &jy);
            for (p, row) in out.into_iter().enumerate() {
                rows.push((row, br1[p] + br2[p]));
            }
        }
    }
    let mut ata = DMatrix::<f64>::zeros(unknowns, unknowns);
    let mut atb = DVector::<f64>::zeros(unknowns);
    for (row, rhs) in &rows {
        for &(u, a) in row {
            atb[u] += a * rhs;
            for &(v, b) in row {
                ata[(u, v)] += a * b;
            }
        }
    }
    let sol = ata.clone().cholesky().expect("connection is unique").solve(&atb);
    let mut residual: f64 = 0.0;
    for (row, rhs) in &rows {
        let lhs: f64 = row.iter().map(|&(u, a)| a * sol[u]).sum();
        residual = residual.max((lhs - rhs).abs());
    }
    let gammas = (0..d)
        .map(|a| DMatrix::from_fn(d, d, |p, q| sol[var(a, p, q)]))
        .collect();
    (gammas, residual)
}

fn gamma_of(gammas: &[DMatrix<f64>], x: &[C64]) -> DMatrix<C64> {
    let d = gammas.len();
    let mut out = DMatrix::<C64>::zeros(d, d);
    for (a, ga) in gammas.iter().enumerate() {
        out += ga.map(|v| C64::new(v, 0.0)) * x[a];
    }
    out
}

/// `R_{i j̄ k l̄} = ⟨R(e_i, ē_j) e_k, ē_l⟩` from `R(x, y) = [Γ_x, Γ_y] - Γ_{[x, y]}`.
pub fn axiomatic_curvature(inst: &Instance) -> Tensor4 {
    let (gammas, _) = chern_connection(inst);
    let n = inst.frame.n();
    let g = inst.structure.g().map(|v| C64::new(v, 0.0));
    let e: Vec<Vec<C64>> = (0..n).map(|i| inst.frame.column(i)).collect();
    let eb: Vec<Vec<C64>> = e.iter().map(|v| v.iter().map(|z| z.conj()).collect()).collect();
    let mut out = Tensor4::zeros(n);
    for i in 0..n {
        for jj in 0..n {
            let gx = gamma_of(&gammas, &e[i]);
            let gy = gamma_of(&gammas, &eb[jj]);
            let br = inst.algebra.bracket_c(&e[i], &eb[jj]);
            let curv = &gx * &gy - &gy * &gx - gamma_of(&gammas, &br);
            for k in 0..n {
                let rk = &curv * DVector::from_vec(e[k].clone());
                for l in 0..n {
                    let v = (rk.transpose() * &g * DVector::from_vec(eb[l].clone()))[(0, 0)];
                    out[[i, jj, k, l]] = v;
                }
            }
        }
    }
    out
}

/// `T^j_{ik} = φ_j(T(e_i, e_k))`.
pub fn axiomatic_torsion(inst: &Instance) -> Tensor3 {
    let (gammas, _) = chern_connection(inst);
    let n = inst.frame.n();
    let basis = inst.frame.full_basis();
    let inv = basis.clone().try_inverse().expect("frame basis invertible");
    let e: Vec<Vec<C64>> = (0..n).map(|i| inst.frame.column(i)).collect();
    let mut out = Tensor3::zeros(n);
    for i in 0..n {
        for k in 0..n {
            let xi = DVector::from_vec(e[i].clone());
            let xk = DVector::from_vec(e[k].clone());
            let t = gamma_of(&gammas, &e[i]) * &xk - gamma_of(&gammas, &e[k]) * &xi
                - DVector::from_vec(inst.algebra.bracket_c(&e[i], &e[k]));
            let coords = &inv * t;
            for jj in 0..n {
                out[[jj, i, k]] = coords[jj];
            }
        }
    }
    out
}
