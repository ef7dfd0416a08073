//! Dense linear algebra helpers on top of nalgebra: rank-revealing spans,
//! unitary checks and Haar-random unitaries.

use nalgebra::{ComplexField, DMatrix};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::tensor::C64;

/// Singular values below `RANK_RTOL * sigma_max` count as zero.
pub const RANK_RTOL: f64 = 1e-8;
/// A matrix whose largest singular value is below this is treated as zero.
pub const RANK_ATOL: f64 = 1e-12;

fn column_space<T>(m: &DMatrix<T>) -> DMatrix<T>
where
    T: ComplexField<RealField = f64> + Copy,
{
    let rows = m.nrows();
    if m.ncols() == 0 || rows == 0 {
        return DMatrix::zeros(rows, 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("svd requested u");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    if smax < RANK_ATOL {
        return DMatrix::zeros(rows, 0);
    }
    let keep: Vec<usize> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s > RANK_RTOL * smax)
        .map(|(i, _)| i)
        .collect();
    DMatrix::from_fn(rows, keep.len(), |r, c| u[(r, keep[c])])
}

/// Orthonormal (Euclidean) basis of the column space of a real matrix.
pub fn real_column_space(m: &DMatrix<f64>) -> DMatrix<f64> {
    column_space(m)
}

/// Orthonormal (Hermitian) basis of the column space of a complex matrix.
pub fn complex_column_space(m: &DMatrix<C64>) -> DMatrix<C64> {
    column_space(m)
}

pub fn real_rank(m: &DMatrix<f64>) -> usize {
    real_column_space(m).ncols()
}

/// Horizontal concatenation.
pub fn hcat<T: nalgebra::Scalar>(a: &DMatrix<T>, b: &DMatrix<T>) -> DMatrix<T> {
    assert_eq!(a.nrows(), b.nrows());
    let split = a.ncols();
    DMatrix::from_fn(a.nrows(), split + b.ncols(), |r, c| {
        if c < split {
            a[(r, c)].clone()
        } else {
            b[(r, c - split)].clone()
        }
    })
}

/// `max |U U^* - I|` entrywise.
pub fn unitarity_residual(u: &DMatrix<C64>) -> f64 {
    let n = u.nrows();
    if u.ncols() != n {
        return f64::INFINITY;
    }
    let prod = u * u.adjoint();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((prod[(i, j)] - C64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the
/// phases of `diag(R)` divided out.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<C64> {
    let g = DMatrix::from_fn(n, n, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Max entrywise modulus of a complex matrix.
pub fn max_abs_c(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_r(m: &DMatrix<f64>) -> f64 {
    m.iter().map(|z| z.abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rank_of_dependent_columns() {
        let m = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 0.0, 1.0, 1.0]);
        assert_eq!(real_rank(&m.transpose()), 2);
        assert_eq!(real_rank(&DMatrix::zeros(4, 2)), 0);
        assert_eq!(real_column_space(&DMatrix::<f64>::zeros(4, 0)).ncols(), 0);
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..6 {
            let u = random_unitary(n, &mut rng);
            assert!(unitarity_residual(&u) < 1e-12);
        }
    }
}
