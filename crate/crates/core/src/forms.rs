//! Left-invariant complex forms on a Hermitian Lie algebra, stored sparsely
//! over the generators `φ_1 … φ_n, φ̄_1 … φ̄_n`.
//!
//! A monomial is a bitmask of generators in increasing order; generator `g`
//! is `φ_g` for `g < n` and `φ̄_{g-n}` otherwise. The wedge of 1-forms is
//! `(α∧β)(x,y) = α(x)β(y) - α(y)β(x)`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::ComplexPresentation;
use crate::tensor::{C64, ZERO};

/// Coefficients below this are dropped when forms are combined.
const PRUNE: f64 = 1e-300;

#[derive(Clone, Debug, PartialEq)]
pub struct LeftInvariantForm {
    n: usize,
    terms: BTreeMap<u32, C64>,
}

/// Sign of `A ∧ B` for disjoint sorted monomials, or `None` if they overlap.
fn wedge_sign(a: u32, b: u32) -> Option<f64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let g = rest.trailing_zeros();
        swaps += (a >> (g + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if swaps % 2 == 0 { 1.0 } else { -1.0 })
}

impl LeftInvariantForm {
    pub fn zero(n: usize) -> Self {
        assert!(2 * n <= 32, "at most 16 complex dimensions");
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        let mut f = Self::zero(n);
        f.terms.insert(0, C64::new(1.0, 0.0));
        f
    }

    /// `φ_i` (0-based).
    pub fn phi(n: usize, i: usize) -> Self {
        Self::generator(n, i)
    }

    /// `φ̄_i` (0-based).
    pub fn phi_bar(n: usize, i: usize) -> Self {
        Self::generator(n, n + i)
    }

    pub fn generator(n: usize, g: usize) -> Self {
        assert!(g < 2 * n);
        let mut f = Self::zero(n);
        f.terms.insert(1 << g, C64::new(1.0, 0.0));
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Degree of the form if it is homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.count_ones() as usize);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_zero(&self, eps: f64) -> bool {
        self.max_abs() <= eps
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, C64)> + '_ {
        self.terms.iter().map(|(m, z)| (*m, *z))
    }

    /// Coefficient of `g_1 ∧ … ∧ g_p` for generators listed in any order.
    pub fn coefficient(&self, gens: &[usize]) -> C64 {
        let mut mask = 0u32;
        let mut sign = 1.0;
        for &g in gens {
            match wedge_sign(mask, 1 << g) {
                Some(s) => {
                    sign *= s;
                    mask |= 1 << g;
                }
                None => return ZERO,
            }
        }
        self.terms.get(&mask).copied().unwrap_or(ZERO) * sign
    }

    fn add_term(&mut self, mask: u32, z: C64) {
        let entry = self.terms.entry(mask).or_insert(ZERO);
        *entry += z;
        if entry.norm() <= PRUNE {
            self.terms.remove(&mask);
        }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (&a, &za) in &self.terms {
            for (&b, &zb) in &other.terms {
                if let Some(s) = wedge_sign(a, b) {
                    out.add_term(a | b, za * zb * s);
                }
            }
        }
        out
    }

    /// Complex conjugate: `φ_i ↔ φ̄_i`, coefficients conjugated.
    pub fn conj(&self) -> Self {
        let n = self.n as u32;
        let mut out = Self::zero(self.n);
        for (&mask, &z) in &self.terms {
            let mut acc = 0u32;
            let mut sign = 1.0;
            let mut rest = mask;
            while rest != 0 {
                let g = rest.trailing_zeros();
                rest &= rest - 1;
                let h = if g < n { g + n } else { g - n };
                sign *= wedge_sign(acc, 1 << h).expect("conjugation is a bijection");
                acc |= 1 << h;
            }
            out.add_term(acc, z.conj() * sign);
        }
        out
    }

    pub fn scale(&self, z: C64) -> Self {
        let mut out = Self::zero(self.n);
        for (&m, &w) in &self.terms {
            out.add_term(m, w * z);
        }
        out
    }
}

impl Add for &LeftInvariantForm {
    type Output = LeftInvariantForm;
    fn add(self, rhs: Self) -> LeftInvariantForm {
        let mut out = self.clone();
        for (&m, &z) in &rhs.terms {
            out.add_term(m, z);
        }
        out
    }
}

impl Sub for &LeftInvariantForm {
    type Output = LeftInvariantForm;
    fn sub(self, rhs: Self) -> LeftInvariantForm {
        let mut out = self.clone();
        for (&m, &z) in &rhs.terms {
            out.add_term(m, -z);
        }
        out
    }
}

impl Neg for &LeftInvariantForm {
    type Output = LeftInvariantForm;
    fn neg(self) -> LeftInvariantForm {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul<C64> for &LeftInvariantForm {
    type Output = LeftInvariantForm;
    fn mul(self, z: C64) -> LeftInvariantForm {
        self.scale(z)
    }
}

/// Differentials of the generators from the structure equation
///
/// ```text
/// dφ_i = -1/2 Σ C^i_{jk} φ_j∧φ_k - Σ conj(D^j_{ik}) φ_j∧φ̄_k,
/// ```
///
/// with `dφ̄_i` its conjugate; `d` extends as an antiderivation.
#[derive(Clone, Debug)]
pub struct StructureEquations {
    n: usize,
    dgen: Vec<LeftInvariantForm>,
}

impl StructureEquations {
    pub fn new(pres: &ComplexPresentation) -> Self {
        let n = pres.n();
        let mut dgen = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut f = LeftInvariantForm::zero(n);
            for j in 0..n {
                for k in 0..n {
                    let c = pres.c(i, j, k);
                    if c != ZERO && j != k {
                        if let Some(s) = wedge_sign(1 << j, 1 << k) {
                            f.add_term((1 << j) | (1 << k), c * (-0.5 * s));
                        }
                    }
                    let d = pres.d(j, i, k);
                    if d != ZERO {
                        // j < n + k, so φ_j ∧ φ̄_k is already sorted.
                        f.add_term((1 << j) | (1 << (n + k)), -d.conj());
                    }
                }
            }
            dgen.push(f);
        }
        let conj: Vec<_> = dgen.iter().map(|f| f.conj()).collect();
        dgen.extend(conj);
        Self { n, dgen }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `d` of the generator `g` (see [`LeftInvariantForm::generator`]).
    pub fn d_generator(&self, g: usize) -> &LeftInvariantForm {
        &self.dgen[g]
    }

    pub fn d(&self, form: &LeftInvariantForm) -> LeftInvariantForm {
        assert_eq!(form.n, self.n);
        let mut out = LeftInvariantForm::zero(self.n);
        for (&mask, &z) in &form.terms {
            let mut left = 0u32;
            let mut rest = mask;
            let mut position = 0;
            while rest != 0 {
                let g = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let right = rest;
                let sign = if position % 2 == 0 { 1.0 } else { -1.0 };
                for (&dm, &dz) in &self.dgen[g].terms {
                    if let Some(s1) = wedge_sign(left, dm) {
                        if let Some(s2) = wedge_sign(left | dm, right) {
                            out.add_term(left | dm | right, z * dz * (sign * s1 * s2));
                        }
                    }
                }
                left |= 1 << g;
                position += 1;
            }
        }
        out
    }

    /// `max |d(dφ)|` over all generators.
    pub fn d_squared_defect(&self) -> f64 {
        self.dgen
            .iter()
            .map(|f| self.d(f).max_abs())
            .fold(0.0, f64::max)
    }
}

/// Exterior derivative of a left-invariant form.
pub fn exterior_d(pres: &ComplexPresentation, form: &LeftInvariantForm) -> LeftInvariantForm {
    StructureEquations::new(pres).d(form)
}
