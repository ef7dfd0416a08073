//! Adapted and admissible frames for solvable Hermitian Lie algebras whose
//! commutator is J-invariant, the vanishing checks that hold in such frames
//! once H is constant, and the end-to-end theorem verifier.
//!
//! Indices are 0-based: `i, j, k < r` label the commutator part of the frame
//! and `α, β, γ ≥ r` the rest.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{
    build_unitary_frame, change_frame, complexify, realify, ComplexPresentation, Frame,
    HermitianStructure, Instance, RealLieAlgebra,
};
use crate::checks::{commutator, jacobi_defect, nijenhuis_defect, series_report};
use crate::chern::{chern_curvature, constant_h_test, holomorphic_sectional};
use crate::error::{Error, Precondition, Result};
use crate::linalg::{complex_column_space, hcat, real_rank};
use crate::tensor::{C64, ZERO};
use crate::Tolerances;

/// Presentation in a frame whose first `r` vectors span `(𝔤')^{1,0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleData {
    pub pres: ComplexPresentation,
    pub r: usize,
    /// `I_0, I_1, …, I_ℓ` (0-based), filled in by [`flat_structure_check`].
    pub block_partition: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// Worst violation of the commutator restrictions.
    pub res1: f64,
    /// Worst violation of the triangularity restrictions.
    pub res2: f64,
}

impl Admissibility {
    pub fn residual(&self) -> f64 {
        self.res1.max(self.res2)
    }
}

fn res1_residual(pres: &ComplexPresentation, r: usize) -> f64 {
    let n = pres.n();
    let mut worst: f64 = 0.0;
    for alpha in r..n {
        for a in 0..n {
            for b in 0..n {
                worst = worst.max(pres.c(alpha, a, b).norm());
                worst = worst.max(pres.d(a, alpha, b).norm());
            }
        }
    }
    worst
}

fn res2_residual(pres: &ComplexPresentation, r: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..r {
        for i in 0..r {
            for k in 0..r {
                if !(j > i || j > k) {
                    worst = worst.max(pres.c(j, i, k).norm());
                }
                if i <= j {
                    worst = worst.max(pres.d(j, i, k).norm());
                }
            }
        }
    }
    worst
}

/// Evaluates
///
/// ```text
/// C^α_{ab} = D^a_{αb} = 0                 for α ≥ r and all a, b,
/// C^j_{ik} = 0 unless j > i or j > k      for i, j, k < r,
/// D^j_{ik} = 0 unless i > j               for i, j, k < r.
/// ```
pub fn is_admissible(pres: &ComplexPresentation, r: usize, tol: f64) -> Admissibility {
    let r = r.min(pres.n());
    let res1 = res1_residual(pres, r);
    let res2 = res2_residual(pres, r);
    Admissibility {
        admissible: res1 <= tol && res2 <= tol,
        res1,
        res2,
    }
}

fn commutator_checked(alg: &RealLieAlgebra, h: &HermitianStructure) -> Result<DMatrix<f64>> {
    let cm = commutator(alg);
    let with_j = hcat(&cm, &(h.j() * &cm));
    if real_rank(&with_j) != cm.ncols() {
        return Err(Error::CommutatorNotComplex);
    }
    Ok(cm)
}

/// Unitary frame whose first `r` vectors span `(𝔤')^{1,0}`.
pub fn adapted_commutator_frame(
    alg: &RealLieAlgebra,
    h: &HermitianStructure,
    tol: f64,
) -> Result<(Frame, usize)> {
    let defect = jacobi_defect(alg);
    if defect > tol {
        return Err(Error::NotALieAlgebra { defect });
    }
    let defect = nijenhuis_defect(alg, h);
    if defect > tol {
        return Err(Error::NotIntegrable { defect });
    }
    let cm = commutator_checked(alg, h)?;
    let r = cm.ncols() / 2;
    let frame = if r == 0 {
        build_unitary_frame(h, &[])?
    } else {
        build_unitary_frame(h, &[cm])?
    };
    Ok((frame, r))
}

fn embed(u_r: &DMatrix<C64>, n: usize) -> DMatrix<C64> {
    let r = u_r.nrows();
    DMatrix::from_fn(n, n, |i, j| {
        if i < r && j < r {
            u_r[(i, j)]
        } else if i == j {
            C64::new(1.0, 0.0)
        } else {
            ZERO
        }
    })
}

/// `(1,0)`-parts of `ad_{e_k}` and `ad_{ē_k}` on `(𝔤')^{1,0}`, `k < r`.
fn commutator_operators(pres: &ComplexPresentation, r: usize) -> Vec<DMatrix<C64>> {
    let mut ops = Vec::with_capacity(2 * r);
    for k in 0..r {
        ops.push(DMatrix::from_fn(r, r, |j, i| pres.c(j, k, i)));
        ops.push(DMatrix::from_fn(r, r, |i, j| -pres.d(j, i, k).conj()));
    }
    ops
}

/// Frame change whose rows run through the layers `W_t ⊖ W_{t+1}` of
/// `W_0 = C^r`, `W_{t+1} = Σ_T T W_t`. `None` if the chain stalls above 0.
fn flag_change(pres: &ComplexPresentation, r: usize) -> Option<DMatrix<C64>> {
    let ops = commutator_operators(pres, r);
    let mut current = DMatrix::<C64>::identity(r, r);
    let mut rows: Vec<Vec<C64>> = Vec::with_capacity(r);
    while current.ncols() > 0 {
        let images: Vec<DMatrix<C64>> = ops.iter().map(|t| t * &current).collect();
        let stacked = images
            .iter()
            .skip(1)
            .fold(images[0].clone(), |acc, m| hcat(&acc, m));
        let next = complex_column_space(&stacked);
        if next.ncols() >= current.ncols() {
            return None;
        }
        let proj = DMatrix::<C64>::identity(r, r) - &next * next.adjoint();
        let layer = complex_column_space(&(proj * &current));
        for col in layer.column_iter() {
            rows.push(col.iter().copied().collect());
        }
        current = next;
    }
    // e'_i = Σ_j v_j e_j, so the row of the change is vᵀ.
    Some(DMatrix::from_fn(r, r, |i, j| rows[i][j]))
}

fn permutation_matrix(perm: &[usize]) -> DMatrix<C64> {
    let r = perm.len();
    DMatrix::from_fn(r, r, |i, j| if perm[i] == j { C64::new(1.0, 0.0) } else { ZERO })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let len = p.len();
    if len < 2 {
        return false;
    }
    let mut i = len - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = len - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Largest `r` for which the permutation fallback is attempted.
pub const PERMUTATION_SEARCH_MAX_R: usize = 8;

/// Nilpotency of the complex Lie algebra spanned by `e_i, ē_i` (`i < r`).
fn commutator_is_nilpotent(pres: &ComplexPresentation, r: usize) -> bool {
    let n = pres.n();
    let k = pres.bracket_table();
    let idx: Vec<usize> = (0..r).chain(n..n + r).collect();
    let m = idx.len();
    let bracket_col = |a: usize, v: &[C64]| -> Vec<C64> {
        let mut out = vec![ZERO; m];
        for (b, &vb) in v.iter().enumerate() {
            if vb == ZERO {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o += vb * k[[idx[c], idx[a], idx[b]]];
            }
        }
        out
    };
    let mut current = DMatrix::<C64>::identity(m, m);
    for _ in 0..=m {
        if current.ncols() == 0 {
            return true;
        }
        let mut cols = Vec::with_capacity(m * current.ncols());
        for a in 0..m {
            for col in current.column_iter() {
                let v: Vec<C64> = col.iter().copied().collect();
                cols.push(nalgebra::DVector::from_vec(bracket_col(a, &v)));
            }
        }
        let next = complex_column_space(&DMatrix::from_columns(&cols));
        if next.ncols() >= current.ncols() {
            return false;
        }
        current = next;
    }
    current.ncols() == 0
}

/// Unitary change on `e_1 … e_r` after which the triangularity restrictions
/// hold. The operator flag of the commutator is tried first, then
/// permutations of `e_1 … e_r`. The result is always re-verified.
pub fn salamon_normalize(pres: &ComplexPresentation, r: usize, tol: f64) -> Result<AdmissibleData> {
    let n = pres.n();
    if r > n {
        return Err(Error::PreconditionFailed(Precondition::CommutatorDimension));
    }
    let res1 = res1_residual(pres, r);
    if res1 > tol {
        return Err(Error::PreconditionFailed(Precondition::NotAdmissible));
    }
    let accept = |p: ComplexPresentation| -> Option<AdmissibleData> {
        is_admissible(&p, r, tol).admissible.then_some(AdmissibleData {
            pres: p,
            r,
            block_partition: None,
        })
    };
    if let Some(done) = accept(pres.clone()) {
        return Ok(done);
    }
    let mut best = res2_residual(pres, r);
    if let Some(u_r) = flag_change(pres, r) {
        let p = change_frame(pres, &embed(&u_r, n))?;
        best = best.min(res2_residual(&p, r));
        if let Some(done) = accept(p) {
            return Ok(done);
        }
    }
    if r <= PERMUTATION_SEARCH_MAX_R {
        let mut perm: Vec<usize> = (0..r).collect();
        while next_permutation(&mut perm) {
            let p = change_frame(pres, &embed(&permutation_matrix(&perm), n))?;
            best = best.min(res2_residual(&p, r));
            if let Some(done) = accept(p) {
                return Ok(done);
            }
        }
    }
    if !commutator_is_nilpotent(pres, r) {
        return Err(Error::NotNilpotentCommutator { r });
    }
    Err(Error::AdmissibleFrameNotFound { residual: best })
}

/// Checks that `pres` describes a solvable algebra whose commutator is
/// complex of complex dimension `r`.
fn check_solvable_complex_commutator(pres: &ComplexPresentation, r: usize, tol: f64) -> Result<()> {
    let (alg, h, _) = realify(pres);
    if jacobi_defect(&alg) > tol {
        return Err(Error::PreconditionFailed(Precondition::NotALieAlgebra));
    }
    let cm = match commutator_checked(&alg, &h) {
        Ok(cm) => cm,
        Err(_) => return Err(Error::PreconditionFailed(Precondition::CommutatorNotComplex)),
    };
    if cm.ncols() != 2 * r {
        return Err(Error::PreconditionFailed(Precondition::CommutatorDimension));
    }
    let series = series_report(&alg, tol).map_err(|_| Error::PreconditionFailed(Precondition::NotALieAlgebra))?;
    if !series.is_solvable {
        return Err(Error::PreconditionFailed(Precondition::NotSolvable));
    }
    Ok(())
}

fn goal_residual(pres: &ComplexPresentation, r: usize) -> f64 {
    let n = pres.n();
    let mut worst: f64 = 0.0;
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                worst = worst.max(pres.d(j, i, k).norm());
            }
            for alpha in r..n {
                worst = worst.max(pres.d(alpha, i, j).norm());
                for beta in r..n {
                    worst = worst.max(pres.d(alpha, j, beta).norm());
                }
            }
        }
    }
    worst
}

/// `max |D^α_{jβ}|, |D^j_{ik}|, |D^α_{ij}|` over `i, j, k < r ≤ α, β`, which
/// must vanish in an admissible frame once H is constant.
pub fn lemma_goal_check(ad: &AdmissibleData, tol: &Tolerances) -> Result<f64> {
    check_solvable_complex_commutator(&ad.pres, ad.r, tol.structural)?;
    if !is_admissible(&ad.pres, ad.r, tol.structural).admissible {
        return Err(Error::PreconditionFailed(Precondition::NotAdmissible));
    }
    let test = constant_h_test(&chern_curvature(&ad.pres), tol.flat);
    if !test.is_constant {
        return Err(Error::PreconditionFailed(Precondition::NotConstantH));
    }
    if test.c.abs() > tol.flat {
        return Err(Error::PreconditionFailed(Precondition::NonzeroConstant));
    }
    Ok(goal_residual(&ad.pres, ad.r))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct YConstraintResiduals {
    /// `conj(Y_{iα}) C^i_{βγ}`.
    pub outer: f64,
    /// `(conj(Y_{iα}) - conj(Y_{jα})) C^j_{iβ}`.
    pub mixed: f64,
    /// `(conj(Y_{jα}) - conj(Y_{iα}) - conj(Y_{kα})) C^j_{ik}`.
    pub inner: f64,
}

impl YConstraintResiduals {
    pub fn max(&self) -> f64 {
        self.outer.max(self.mixed).max(self.inner)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlockResiduals {
    /// `C^i_{αβ}` for `i ∉ I_0`.
    pub outside_zero_block: f64,
    /// `C^j_{iα}` with `i`, `j` in different blocks.
    pub off_block: f64,
}

impl BlockResiduals {
    pub fn max(&self) -> f64 {
        self.outside_zero_block.max(self.off_block)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatStructureReport {
    pub r: usize,
    /// `max_α |[D_α, D_α*]|`.
    pub normality: f64,
    /// `max_{α,β} |[D_α, D_β]|, |[D_α, D_β*]|`.
    pub commutation: f64,
    /// Off-diagonal size of `D_α` after the unitary change.
    pub diagonalization: f64,
    /// `Y[i][α - r] = D^i_{iα}` in the diagonalizing frame.
    pub y: Vec<Vec<C64>>,
    pub y_constraints: YConstraintResiduals,
    /// `I_0, I_1, …` (0-based, `I_0` possibly empty).
    pub block_partition: Vec<Vec<usize>>,
    pub blocks: BlockResiduals,
    #[serde(skip)]
    pub diagonalized: AdmissibleData,
}

/// Bucket width used when grouping equal rows of `Y`.
pub const Y_BUCKET: f64 = 1e-7;

fn d_matrices(pres: &ComplexPresentation, r: usize) -> Vec<DMatrix<C64>> {
    (r..pres.n())
        .map(|alpha| DMatrix::from_fn(r, r, |i, j| pres.d(j, i, alpha)))
        .collect()
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    crate::linalg::max_abs_c(m)
}

fn partition_rows(y: &[Vec<C64>]) -> Vec<Vec<usize>> {
    let row_norm = |row: &Vec<C64>| row.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut zero = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, row) in y.iter().enumerate() {
        if row_norm(row) <= Y_BUCKET {
            zero.push(i);
            continue;
        }
        let hit = groups.iter_mut().find(|g| {
            y[g[0]]
                .iter()
                .zip(row)
                .all(|(a, b)| (a - b).norm() <= Y_BUCKET)
        });
        match hit {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    let key = |i: usize| -> Vec<(f64, f64)> { y[i].iter().map(|z| (z.re, z.im)).collect() };
    groups.sort_by(|a, b| {
        key(a[0])
            .partial_cmp(&key(b[0]))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut out = vec![zero];
    out.extend(groups);
    out
}

/// Simultaneous unitary diagonalization of the commuting normal family
/// `D_α = (D^j_{iα})` and the resulting constraints on `C`.
pub fn flat_structure_check(ad: &AdmissibleData, tol: &Tolerances, seed: u64) -> Result<FlatStructureReport> {
    let pres = &ad.pres;
    let (n, r) = (pres.n(), ad.r);
    if chern_curvature(pres).max_abs() > tol.flat {
        return Err(Error::PreconditionFailed(Precondition::NotChernFlat));
    }
    if !is_admissible(pres, r, tol.structural).admissible {
        return Err(Error::PreconditionFailed(Precondition::NotAdmissible));
    }
    if goal_residual(pres, r) > tol.flat {
        return Err(Error::PreconditionFailed(Precondition::GoalVanishing));
    }
    let ds = d_matrices(pres, r);
    let mut normality: f64 = 0.0;
    let mut commutation: f64 = 0.0;
    for a in &ds {
        normality = normality.max(max_abs(&(a * a.adjoint() - a.adjoint() * a)));
        for b in &ds {
            commutation = commutation.max(max_abs(&(a * b - b * a)));
            commutation = commutation.max(max_abs(&(a * b.adjoint() - b.adjoint() * a)));
        }
    }
    let family = normality.max(commutation);
    if family > tol.structural {
        return Err(Error::DiagonalizationFailed { residual: family });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = C64::new(0.5, 0.0);
    let half_i = C64::new(0.0, 0.5);
    let mut best: Option<(f64, ComplexPresentation)> = None;
    for _attempt in 0..8 {
        let mut h = DMatrix::<C64>::zeros(r, r);
        for a in &ds {
            let s: f64 = rng.random_range(-1.0..1.0);
            let t: f64 = rng.random_range(-1.0..1.0);
            let herm = (a + a.adjoint()) * half;
            let anti = (a - a.adjoint()) * (-half_i);
            h += herm * C64::new(s, 0.0) + anti * C64::new(t, 0.0);
        }
        let v = if r == 0 {
            DMatrix::<C64>::identity(0, 0)
        } else {
            nalgebra::SymmetricEigen::new(h).eigenvectors
        };
        let candidate = change_frame(pres, &embed(&v.adjoint(), n))?;
        let off = d_matrices(&candidate, r)
            .iter()
            .map(|m| {
                let mut worst: f64 = 0.0;
                for i in 0..r {
                    for j in 0..r {
                        if i != j {
                            worst = worst.max(m[(i, j)].norm());
                        }
                    }
                }
                worst
            })
            .fold(0.0, f64::max);
        let better = best.as_ref().is_none_or(|(b, _)| off < *b);
        if better {
            best = Some((off, candidate));
        }
        if off <= tol.structural {
            break;
        }
    }
    let (diagonalization, diag) = best.expect("at least one attempt");
    if diagonalization > tol.structural {
        return Err(Error::DiagonalizationFailed { residual: diagonalization });
    }

    let y: Vec<Vec<C64>> = (0..r)
        .map(|i| (r..n).map(|alpha| diag.d(i, i, alpha)).collect())
        .collect();
    let yb = |i: usize, alpha: usize| y[i][alpha - r].conj();
    let mut yc = YConstraintResiduals {
        outer: 0.0,
        mixed: 0.0,
        inner: 0.0,
    };
    for alpha in r..n {
        for i in 0..r {
            for beta in r..n {
                for gamma in r..n {
                    yc.outer = yc.outer.max((yb(i, alpha) * diag.c(i, beta, gamma)).norm());
                }
            }
            for j in 0..r {
                for beta in r..n {
                    let v = (yb(i, alpha) - yb(j, alpha)) * diag.c(j, i, beta);
                    yc.mixed = yc.mixed.max(v.norm());
                }
                for k in 0..r {
                    let v = (yb(j, alpha) - yb(i, alpha) - yb(k, alpha)) * diag.c(j, i, k);
                    yc.inner = yc.inner.max(v.norm());
                }
            }
        }
    }

    let partition = partition_rows(&y);
    let mut block_of = vec![0usize; r];
    for (b, members) in partition.iter().enumerate() {
        for &i in members {
            block_of[i] = b;
        }
    }
    let mut blocks = BlockResiduals {
        outside_zero_block: 0.0,
        off_block: 0.0,
    };
    for i in 0..r {
        for alpha in r..n {
            if block_of[i] != 0 {
                for beta in r..n {
                    blocks.outside_zero_block = blocks.outside_zero_block.max(diag.c(i, alpha, beta).norm());
                }
            }
            for j in 0..r {
                if block_of[i] != block_of[j] {
                    blocks.off_block = blocks.off_block.max(diag.c(j, i, alpha).norm());
                }
            }
        }
    }

    Ok(FlatStructureReport {
        r,
        normality,
        commutation,
        diagonalization,
        y,
        y_constraints: yc,
        block_partition: partition.clone(),
        blocks,
        diagonalized: AdmissibleData {
            pres: diag,
            r,
            block_partition: Some(partition),
        },
    })
}

/// A direction in frame coordinates with its holomorphic sectional curvature.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub vector: Vec<C64>,
    pub h: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum VerdictStatus {
    NotApplicable { reason: Precondition },
    ConstantHChernFlat { c: f64, max_curvature: f64 },
    NonConstantH { witnesses: [Witness; 2], spread: f64 },
}

impl VerdictStatus {
    pub fn tag(&self) -> &'static str {
        match self {
            VerdictStatus::NotApplicable { .. } => "not_applicable",
            VerdictStatus::ConstantHChernFlat { .. } => "constant_H_chern_flat",
            VerdictStatus::NonConstantH { .. } => "non_constant_H",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub status: VerdictStatus,
    /// Complex dimension of the commutator when it was computed.
    pub r: Option<usize>,
    pub residuals: BTreeMap<String, f64>,
    /// Admissible presentation used for the curvature computation.
    #[serde(skip)]
    pub admissible: Option<AdmissibleData>,
}

/// Everything known about a constant-H instance that is not Chern flat.
#[derive(Clone, Debug)]
pub struct ViolationDiagnostics {
    pub instance: Instance,
    pub r: usize,
    pub c: f64,
    pub deviation: f64,
    pub max_curvature: f64,
    pub residuals: BTreeMap<String, f64>,
}

impl fmt::Display for ViolationDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r = {}, c = {:e}, deviation = {:e}, max |R| = {:e}",
            self.r, self.c, self.deviation, self.max_curvature
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub tol: Tolerances,
    pub seed: u64,
    /// Random unit directions probed for the non-constant witness.
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tol: Tolerances::default(),
            seed: 0,
            samples: 256,
        }
    }
}

fn not_applicable(reason: Precondition, r: Option<usize>, residuals: BTreeMap<String, f64>) -> TheoremVerdict {
    TheoremVerdict {
        status: VerdictStatus::NotApplicable { reason },
        r,
        residuals,
        admissible: None,
    }
}

/// Random unit vector in `C^n`.
pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..n)
            .map(|_| {
                C64::new(
                    rng.sample(rand_distr::StandardNormal),
                    rng.sample(rand_distr::StandardNormal),
                )
            })
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Runs the full pipeline: axioms, solvability and complex commutator, then
/// an admissible frame, the Chern curvature and the constant-H test.
pub fn verify_theorem(
    alg: &RealLieAlgebra,
    h: &HermitianStructure,
    opts: &VerifyOptions,
) -> Result<TheoremVerdict> {
    let tol = &opts.tol;
    let mut residuals = BTreeMap::new();
    let jac = jacobi_defect(alg);
    residuals.insert("jacobi".to_string(), jac);
    if jac > tol.structural {
        return Ok(not_applicable(Precondition::NotALieAlgebra, None, residuals));
    }
    let nij = nijenhuis_defect(alg, h);
    residuals.insert("nijenhuis".to_string(), nij);
    if nij > tol.structural {
        return Ok(not_applicable(Precondition::NotIntegrable, None, residuals));
    }
    let series = series_report(alg, tol.structural)?;
    if !series.is_solvable {
        return Ok(not_applicable(Precondition::NotSolvable, None, residuals));
    }
    let (frame, r) = match adapted_commutator_frame(alg, h, tol.structural) {
        Ok(x) => x,
        Err(Error::CommutatorNotComplex) => {
            return Ok(not_applicable(Precondition::CommutatorNotComplex, None, residuals));
        }
        Err(e) => return Err(e),
    };
    residuals.insert("frame_unitarity".to_string(), frame.residual(h));
    let pres = complexify(alg, h, &frame)?;
    let ad = salamon_normalize(&pres, r, tol.structural)?;
    let adm = is_admissible(&ad.pres, r, tol.structural);
    residuals.insert("res1".to_string(), adm.res1);
    residuals.insert("res2".to_string(), adm.res2);

    let curv = chern_curvature(&ad.pres);
    let test = constant_h_test(&curv, tol.flat);
    let max_curvature = curv.max_abs();
    residuals.insert("constant_h_deviation".to_string(), test.deviation);
    residuals.insert("max_curvature".to_string(), max_curvature);
    residuals.insert("pair_symmetry".to_string(), curv.pair_symmetry_residual());

    if test.is_constant {
        residuals.insert("goal".to_string(), goal_residual(&ad.pres, r));
        if test.c.abs() > tol.flat || max_curvature > tol.flat {
            let frame = ad.pres.frame().cloned().unwrap_or(frame);
            return Err(Error::TheoremViolationCandidate(Box::new(ViolationDiagnostics {
                instance: Instance::new(alg.clone(), h.clone(), frame)?,
                r,
                c: test.c,
                deviation: test.deviation,
                max_curvature,
                residuals,
            })));
        }
        return Ok(TheoremVerdict {
            status: VerdictStatus::ConstantHChernFlat {
                c: test.c,
                max_curvature,
            },
            r: Some(r),
            residuals,
            admissible: Some(ad),
        });
    }

    let n = ad.pres.n();
    let mut first = vec![ZERO; n];
    first[0] = C64::new(1.0, 0.0);
    let h0 = holomorphic_sectional(&curv, &first)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut probes: Vec<Vec<C64>> = (1..n)
        .map(|i| {
            let mut v = vec![ZERO; n];
            v[i] = C64::new(1.0, 0.0);
            v
        })
        .collect();
    probes.extend((0..opts.samples).map(|_| random_unit_vector(n, &mut rng)));
    let mut second = Witness {
        vector: first.clone(),
        h: h0,
    };
    for v in probes {
        let hv = holomorphic_sectional(&curv, &v)?;
        if (hv - h0).abs() > (second.h - h0).abs() {
            second = Witness { vector: v, h: hv };
        }
    }
    let spread = (second.h - h0).abs();
    Ok(TheoremVerdict {
        status: VerdictStatus::NonConstantH {
            witnesses: [Witness { vector: first, h: h0 }, second],
            spread,
        },
        r: Some(r),
        residuals,
        admissible: Some(ad),
    })
}
