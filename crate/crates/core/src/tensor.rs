//! Small dense complex tensors of rank 3 and 4 over an index range `0..n`.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);

/// Dense rank-3 tensor `t[a][b][c]`, each index in `0..n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tensor3 {
    n: usize,
    data: Vec<C64>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![ZERO; n * n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> C64) -> Self {
        let mut t = Self::zeros(n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    t[[a, b, c]] = f(a, b, c);
                }
            }
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "tensor size mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Iterates over `([a, b, c], value)` for entries with modulus above `eps`.
    pub fn nonzero(&self, eps: f64) -> impl Iterator<Item = ([usize; 3], C64)> + '_ {
        let n = self.n;
        self.data.iter().enumerate().filter_map(move |(idx, z)| {
            (z.norm() > eps).then(|| ([idx / (n * n), (idx / n) % n, idx % n], *z))
        })
    }

    #[inline]
    fn offset(&self, [a, b, c]: [usize; 3]) -> usize {
        debug_assert!(a < self.n && b < self.n && c < self.n);
        (a * self.n + b) * self.n + c
    }
}

impl Index<[usize; 3]> for Tensor3 {
    type Output = C64;
    fn index(&self, idx: [usize; 3]) -> &C64 {
        &self.data[self.offset(idx)]
    }
}

impl IndexMut<[usize; 3]> for Tensor3 {
    fn index_mut(&mut self, idx: [usize; 3]) -> &mut C64 {
        let o = self.offset(idx);
        &mut self.data[o]
    }
}

/// Dense rank-4 tensor `t[a][b][c][d]`, each index in `0..n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tensor4 {
    n: usize,
    data: Vec<C64>,
}

impl Tensor4 {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![ZERO; n * n * n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> C64) -> Self {
        let mut t = Self::zeros(n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        t[[a, b, c, d]] = f(a, b, c, d);
                    }
                }
            }
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "tensor size mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn nonzero(&self, eps: f64) -> impl Iterator<Item = ([usize; 4], C64)> + '_ {
        let n = self.n;
        self.data.iter().enumerate().filter_map(move |(idx, z)| {
            (z.norm() > eps).then(|| {
                (
                    [
                        idx / (n * n * n),
                        (idx / (n * n)) % n,
                        (idx / n) % n,
                        idx % n,
                    ],
                    *z,
                )
            })
        })
    }

    #[inline]
    fn offset(&self, [a, b, c, d]: [usize; 4]) -> usize {
        debug_assert!(a < self.n && b < self.n && c < self.n && d < self.n);
        ((a * self.n + b) * self.n + c) * self.n + d
    }
}

impl Index<[usize; 4]> for Tensor4 {
    type Output = C64;
    fn index(&self, idx: [usize; 4]) -> &C64 {
        &self.data[self.offset(idx)]
    }
}

impl IndexMut<[usize; 4]> for Tensor4 {
    fn index_mut(&mut self, idx: [usize; 4]) -> &mut C64 {
        let o = self.offset(idx);
        &mut self.data[o]
    }
}
