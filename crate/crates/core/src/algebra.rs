//! Real and complex presentations of Hermitian Lie algebras.
//!
//! A [`RealLieAlgebra`] stores structure constants `f[c][a][b]` with
//! `[ε_a, ε_b] = Σ_c f[c][a][b] ε_c`. Together with a [`HermitianStructure`]
//! `(J, g)` and a unitary [`Frame`] of `(1,0)`-vectors it determines the
//! complex structure constants
//!
//! ```text
//! C[j][i][k] = φ_j([e_i, e_k]),    D[j][i][k] = φ̄_i([ē_j, e_k]),
//! ```
//!
//! where `φ` is the coframe dual to `e`. Note the index placement of `D`: the
//! first (upper) index labels the conjugated slot of the bracket and the second
//! index labels the `ē`-component that is read off. With these conventions
//!
//! ```text
//! [e_i, e_j] = Σ_k C[k][i][j] e_k,
//! [e_i, ē_j] = Σ_k ( conj(D[i][k][j]) e_k - D[j][k][i] ē_k ).
//! ```
//!
//! Matrices act on coordinate columns: `J ε_a = Σ_b J[(b, a)] ε_b`, and
//! `⟨x, y⟩ = xᵀ g y`, extended complex-bilinearly.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{hcat, real_rank, unitarity_residual};
use crate::tensor::{Tensor3, Tensor4, C64, ZERO};

/// Default absolute tolerance for numerical comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

const I: C64 = C64::new(0.0, 1.0);

fn to_complex(m: &DMatrix<f64>) -> DMatrix<C64> {
    m.map(|x| C64::new(x, 0.0))
}

/// Structure constants of a real Lie algebra in a named basis.
#[derive(Clone, Debug, PartialEq)]
pub struct RealLieAlgebra {
    labels: Vec<String>,
    f: Vec<f64>,
}

impl RealLieAlgebra {
    /// `f` is laid out as `f[(c * dim + a) * dim + b]`.
    pub fn new(labels: Vec<String>, f: Vec<f64>) -> Result<Self> {
        let d = labels.len();
        if d == 0 || d % 2 != 0 {
            return Err(Error::TypeMismatch(format!(
                "dimension must be positive and even, got {d}"
            )));
        }
        if f.len() != d * d * d {
            return Err(Error::TypeMismatch(format!(
                "expected {} structure constants, got {}",
                d * d * d,
                f.len()
            )));
        }
        let alg = Self { labels, f };
        let residual = alg.antisymmetry_residual();
        let scale = 1.0 + alg.max_abs();
        if residual > 1e-12 * scale {
            return Err(Error::NotAntisymmetric { residual });
        }
        Ok(alg)
    }

    /// Builds the algebra from 0-based triples `(a, b, c, v)` meaning
    /// `[ε_a, ε_b] ∋ v ε_c`; the antisymmetric partner is implied.
    pub fn from_brackets(labels: Vec<String>, brackets: &[(usize, usize, usize, f64)]) -> Result<Self> {
        let d = labels.len();
        let mut f = vec![0.0; d * d * d];
        for &(a, b, c, v) in brackets {
            if a >= d || b >= d || c >= d {
                return Err(Error::TypeMismatch(format!(
                    "bracket index ({a}, {b}, {c}) out of range for dimension {d}"
                )));
            }
            if a == b {
                if v != 0.0 {
                    return Err(Error::NotAntisymmetric { residual: v.abs() });
                }
                continue;
            }
            f[(c * d + a) * d + b] += v;
            f[(c * d + b) * d + a] -= v;
        }
        Self::new(labels, f)
    }

    pub fn abelian(dim: usize) -> Result<Self> {
        Self::new(default_labels(dim), vec![0.0; dim * dim * dim])
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Complex dimension `n = dim / 2`.
    pub fn n(&self) -> usize {
        self.labels.len() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn coeff(&self, c: usize, a: usize, b: usize) -> f64 {
        let d = self.dim();
        self.f[(c * d + a) * d + b]
    }

    pub fn raw(&self) -> &[f64] {
        &self.f
    }

    pub fn max_abs(&self) -> f64 {
        self.f.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    fn antisymmetry_residual(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for c in 0..d {
            for a in 0..d {
                for b in a..d {
                    worst = worst.max((self.coeff(c, a, b) + self.coeff(c, b, a)).abs());
                }
            }
        }
        worst
    }

    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let d = self.dim();
        let mut out = vec![0.0; d];
        for a in 0..d {
            if x[a] == 0.0 {
                continue;
            }
            for b in 0..d {
                let w = x[a] * y[b];
                if w == 0.0 {
                    continue;
                }
                for (c, o) in out.iter_mut().enumerate() {
                    *o += self.coeff(c, a, b) * w;
                }
            }
        }
        out
    }

    /// Complex-bilinear extension of the bracket.
    pub fn bracket_c(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let d = self.dim();
        let mut out = vec![ZERO; d];
        for a in 0..d {
            if x[a] == ZERO {
                continue;
            }
            for b in 0..d {
                let w = x[a] * y[b];
                if w == ZERO {
                    continue;
                }
                for (c, o) in out.iter_mut().enumerate() {
                    *o += w * self.coeff(c, a, b);
                }
            }
        }
        out
    }

    /// Matrix of `ad_x` on coordinates.
    pub fn ad(&self, x: &[f64]) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for b in 0..d {
            let mut e = vec![0.0; d];
            e[b] = 1.0;
            let col = self.bracket(x, &e);
            for c in 0..d {
                m[(c, b)] = col[c];
            }
        }
        m
    }

    /// Structure constants in the basis `ε'_a = Σ_b p[(b, a)] ε_b`.
    pub fn change_basis(&self, p: &DMatrix<f64>) -> Result<Self> {
        let d = self.dim();
        if p.nrows() != d || p.ncols() != d {
            return Err(Error::TypeMismatch("basis change must be dim x dim".into()));
        }
        let pinv = p
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::TypeMismatch("basis change is singular".into()))?;
        let mut f = vec![0.0; d * d * d];
        for a in 0..d {
            let x: Vec<f64> = p.column(a).iter().copied().collect();
            for b in 0..d {
                let y: Vec<f64> = p.column(b).iter().copied().collect();
                let br = DVector::from_vec(self.bracket(&x, &y));
                let coords = &pinv * br;
                for c in 0..d {
                    f[(c * d + a) * d + b] = coords[c];
                }
            }
        }
        // Re-antisymmetrize to wash out rounding.
        for c in 0..d {
            for a in 0..d {
                for b in (a + 1)..d {
                    let v = 0.5 * (f[(c * d + a) * d + b] - f[(c * d + b) * d + a]);
                    f[(c * d + a) * d + b] = v;
                    f[(c * d + b) * d + a] = -v;
                }
                f[(c * d + a) * d + a] = 0.0;
            }
        }
        Self::new(self.labels.clone(), f)
    }
}

pub(crate) fn default_labels(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("v{i}")).collect()
}

/// An almost complex structure `J` with a compatible inner product `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianStructure {
    j: DMatrix<f64>,
    g: DMatrix<f64>,
}

impl HermitianStructure {
    pub fn new(j: DMatrix<f64>, g: DMatrix<f64>) -> Result<Self> {
        let d = j.nrows();
        if j.ncols() != d || g.nrows() != d || g.ncols() != d || d == 0 || d % 2 != 0 {
            return Err(Error::TypeMismatch(
                "J and g must be square matrices of the same even size".into(),
            ));
        }
        let jj = &j * &j + DMatrix::identity(d, d);
        let residual = crate::linalg::max_abs_r(&jj);
        if residual > DEFAULT_TOL {
            return Err(Error::NotAlmostComplex { residual });
        }
        let asym = crate::linalg::max_abs_r(&(&g - g.transpose()));
        if asym > DEFAULT_TOL || g.clone().cholesky().is_none() {
            return Err(Error::MetricNotSPD);
        }
        let compat = crate::linalg::max_abs_r(&(j.transpose() * &g * &j - &g));
        if compat > DEFAULT_TOL * (1.0 + crate::linalg::max_abs_r(&g)) {
            return Err(Error::MetricNotCompatible { residual: compat });
        }
        Ok(Self { j, g })
    }

    /// `J ε_i = ε_{n+i}`, `J ε_{n+i} = -ε_i`, identity metric.
    pub fn standard(n: usize) -> Self {
        let d = 2 * n;
        let mut j = DMatrix::zeros(d, d);
        for i in 0..n {
            j[(n + i, i)] = 1.0;
            j[(i, n + i)] = -1.0;
        }
        Self {
            j,
            g: DMatrix::identity(d, d),
        }
    }

    pub fn j(&self) -> &DMatrix<f64> {
        &self.j
    }

    pub fn g(&self) -> &DMatrix<f64> {
        &self.g
    }

    pub fn dim(&self) -> usize {
        self.j.nrows()
    }

    pub fn inner(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.g * y)[(0, 0)]
    }

    /// Structure expressed in the basis `ε'_a = Σ_b p[(b, a)] ε_b`.
    pub fn change_basis(&self, p: &DMatrix<f64>) -> Result<Self> {
        let pinv = p
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::TypeMismatch("basis change is singular".into()))?;
        let j = &pinv * &self.j * p;
        let g = p.transpose() * &self.g * p;
        let g = (&g + g.transpose()) * 0.5;
        Self::new(j, g)
    }

    /// Same J, metric replaced by `mᵀ g m`, where `m` must commute with J.
    pub fn deform_metric(&self, m: &DMatrix<f64>) -> Result<Self> {
        let g = m.transpose() * &self.g * m;
        let g = (&g + g.transpose()) * 0.5;
        Self::new(self.j.clone(), g)
    }
}

/// A frame of `(1,0)`-vectors: column `i` holds the real-coordinate expansion
/// of `e_i` in the complexified algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    e: DMatrix<C64>,
}

impl Frame {
    pub fn new(e: DMatrix<C64>) -> Result<Self> {
        if e.nrows() != 2 * e.ncols() || e.ncols() == 0 {
            return Err(Error::TypeMismatch(format!(
                "frame must be 2n x n, got {} x {}",
                e.nrows(),
                e.ncols()
            )));
        }
        Ok(Self { e })
    }

    /// `e_i = (ε_i - i ε_{n+i}) / √2`.
    pub fn standard(n: usize) -> Self {
        let mut e = DMatrix::from_element(2 * n, n, ZERO);
        for i in 0..n {
            e[(i, i)] = C64::new(FRAC_1_SQRT_2, 0.0);
            e[(n + i, i)] = C64::new(0.0, -FRAC_1_SQRT_2);
        }
        Self { e }
    }

    /// `e_i = (x_i - i J x_i) / √2` for each column `x_i` of `xs`.
    pub fn from_real_vectors(h: &HermitianStructure, xs: &DMatrix<f64>) -> Result<Self> {
        let jx = h.j() * xs;
        let e = DMatrix::from_fn(xs.nrows(), xs.ncols(), |r, c| {
            C64::new(xs[(r, c)], -jx[(r, c)]) * FRAC_1_SQRT_2
        });
        Self::new(e)
    }

    pub fn n(&self) -> usize {
        self.e.ncols()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.e
    }

    pub fn column(&self, i: usize) -> Vec<C64> {
        self.e.column(i).iter().copied().collect()
    }

    /// `[e_1 … e_n | ē_1 … ē_n]`.
    pub fn full_basis(&self) -> DMatrix<C64> {
        hcat(&self.e, &self.e.map(|z| z.conj()))
    }

    /// Largest violation of `J e_i = i e_i` and `⟨e_i, ē_j⟩ = δ_ij`.
    pub fn residual(&self, h: &HermitianStructure) -> f64 {
        if self.e.nrows() != h.dim() {
            return f64::INFINITY;
        }
        let jc = to_complex(h.j());
        let gc = to_complex(h.g());
        let type_res = crate::linalg::max_abs_c(&(&jc * &self.e - &self.e * I));
        let gram = self.e.transpose() * &gc * self.e.map(|z| z.conj());
        let n = self.n();
        let unit_res = crate::linalg::max_abs_c(&(gram - DMatrix::<C64>::identity(n, n)));
        type_res.max(unit_res)
    }

    /// The `n x n` unitary change `e'_i = Σ_j u[(i, j)] e_j`.
    pub fn transformed(&self, u: &DMatrix<C64>) -> Self {
        Self {
            e: &self.e * u.transpose(),
        }
    }

    /// The same vectors written in the real basis `ε'_a = Σ_b p[(b, a)] ε_b`.
    pub fn change_basis(&self, p: &DMatrix<f64>) -> Result<Self> {
        let pinv = p
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::TypeMismatch("basis change is singular".into()))?;
        Ok(Self {
            e: to_complex(&pinv) * &self.e,
        })
    }
}

/// Complex structure constants `C`, `D` relative to a unitary frame.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPresentation {
    c: Tensor3,
    d: Tensor3,
    frame: Option<Frame>,
    tol: f64,
}

impl ComplexPresentation {
    pub fn new(c: Tensor3, d: Tensor3) -> Result<Self> {
        if c.n() != d.n() || c.n() == 0 {
            return Err(Error::TypeMismatch(format!(
                "C has size {}, D has size {}",
                c.n(),
                d.n()
            )));
        }
        let n = c.n();
        let mut residual: f64 = 0.0;
        for j in 0..n {
            for i in 0..n {
                for k in 0..n {
                    residual = residual.max((c[[j, i, k]] + c[[j, k, i]]).norm());
                }
            }
        }
        if residual > 1e-12 * (1.0 + c.max_abs()) {
            return Err(Error::NotAntisymmetric { residual });
        }
        Ok(Self {
            c,
            d,
            frame: None,
            tol: DEFAULT_TOL,
        })
    }

    pub fn with_frame(mut self, frame: Frame) -> Self {
        self.frame = Some(frame);
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn n(&self) -> usize {
        self.c.n()
    }

    /// `C^j_{ik}` (0-based).
    #[inline]
    pub fn c(&self, j: usize, i: usize, k: usize) -> C64 {
        self.c[[j, i, k]]
    }

    /// `D^j_{ik}` (0-based).
    #[inline]
    pub fn d(&self, j: usize, i: usize, k: usize) -> C64 {
        self.d[[j, i, k]]
    }

    pub fn c_tensor(&self) -> &Tensor3 {
        &self.c
    }

    pub fn d_tensor(&self) -> &Tensor3 {
        &self.d
    }

    pub fn frame(&self) -> Option<&Frame> {
        self.frame.as_ref()
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// Copy with one `D` entry replaced. Used to build perturbed instances.
    pub fn with_d_entry(&self, j: usize, i: usize, k: usize, value: C64) -> Self {
        let mut out = self.clone();
        out.d[[j, i, k]] = value;
        out.frame = None;
        out
    }

    /// Brackets on the basis `{e_1 … e_n, ē_1 … ē_n}`: `K[c][a][b]` is the
    /// coefficient of basis vector `c` in the bracket of basis vectors `a`, `b`.
    pub fn bracket_table(&self) -> Tensor3 {
        let n = self.n();
        let mut k = Tensor3::zeros(2 * n);
        for a in 0..n {
            for b in 0..n {
                for m in 0..n {
                    // [e_a, e_b] and its conjugate.
                    k[[m, a, b]] = self.c[[m, a, b]];
                    k[[n + m, n + a, n + b]] = self.c[[m, a, b]].conj();
                    // [e_a, ē_b] = Σ_m conj(D^a_{mb}) e_m - D^b_{ma} ē_m.
                    let pos = self.d[[a, m, b]].conj();
                    let neg = -self.d[[b, m, a]];
                    k[[m, a, n + b]] = pos;
                    k[[n + m, a, n + b]] = neg;
                    k[[m, n + b, a]] = -pos;
                    k[[n + m, n + b, a]] = -neg;
                }
            }
        }
        k
    }
}

/// Chern torsion `T[j][i][k] = T^j_{ik}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionTensor {
    pub t: Tensor3,
}

/// Chern curvature `R[i][j][k][l] = R_{i j̄ k l̄}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor {
    pub r: Tensor4,
}

impl CurvatureTensor {
    pub fn n(&self) -> usize {
        self.r.n()
    }

    pub fn max_abs(&self) -> f64 {
        self.r.max_abs()
    }

    /// Components in the frame `e'_i = Σ_a u[(i, a)] e_a`.
    pub fn transform(&self, u: &DMatrix<C64>) -> Self {
        let n = self.n();
        let mut step = self.r.clone();
        // Contract one slot at a time; slots 1 and 3 are conjugate-linear.
        for slot in 0..4 {
            let conj = slot % 2 == 1;
            let mut next = Tensor4::zeros(n);
            for idx0 in 0..n {
                for idx1 in 0..n {
                    for idx2 in 0..n {
                        for idx3 in 0..n {
                            let out = [idx0, idx1, idx2, idx3];
                            let mut acc = ZERO;
                            for a in 0..n {
                                let mut src = out;
                                src[slot] = a;
                                let w = if conj { u[(out[slot], a)].conj() } else { u[(out[slot], a)] };
                                acc += w * step[src];
                            }
                            next[out] = acc;
                        }
                    }
                }
            }
            step = next;
        }
        Self { r: step }
    }

    /// `max |R_{i j̄ k l̄} - conj(R_{j ī l k̄})|`.
    pub fn pair_symmetry_residual(&self) -> f64 {
        let n = self.n();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        worst = worst.max((self.r[[i, j, k, l]] - self.r[[j, i, l, k]].conj()).norm());
                    }
                }
            }
        }
        worst
    }
}

/// A real Lie algebra with Hermitian structure and a chosen unitary frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub algebra: RealLieAlgebra,
    pub structure: HermitianStructure,
    pub frame: Frame,
}

impl Instance {
    pub fn new(algebra: RealLieAlgebra, structure: HermitianStructure, frame: Frame) -> Result<Self> {
        if algebra.dim() != structure.dim() || frame.matrix().nrows() != algebra.dim() {
            return Err(Error::TypeMismatch(
                "algebra, structure and frame dimensions differ".into(),
            ));
        }
        Ok(Self {
            algebra,
            structure,
            frame,
        })
    }

    pub fn presentation(&self) -> Result<ComplexPresentation> {
        complexify(&self.algebra, &self.structure, &self.frame)
    }

    /// Rewrites everything in the real basis `ε'_a = Σ_b p[(b, a)] ε_b`.
    pub fn change_basis(&self, p: &DMatrix<f64>) -> Result<Self> {
        Ok(Self {
            algebra: self.algebra.change_basis(p)?,
            structure: self.structure.change_basis(p)?,
            frame: self.frame.change_basis(p)?,
        })
    }
}

/// Reads off `C` and `D` from the brackets of the frame vectors.
pub fn complexify(
    alg: &RealLieAlgebra,
    h: &HermitianStructure,
    frame: &Frame,
) -> Result<ComplexPresentation> {
    let dim = alg.dim();
    if h.dim() != dim || frame.matrix().nrows() != dim {
        return Err(Error::TypeMismatch(format!(
            "algebra dimension {dim}, structure {}, frame rows {}",
            h.dim(),
            frame.matrix().nrows()
        )));
    }
    let residual = frame.residual(h);
    if residual > DEFAULT_TOL {
        return Err(Error::FrameNotUnitary { residual });
    }
    let n = frame.n();
    let basis = frame.full_basis();
    let inv = basis
        .clone()
        .try_inverse()
        .ok_or(Error::FrameNotUnitary { residual: f64::INFINITY })?;
    let cols: Vec<Vec<C64>> = (0..2 * n).map(|a| basis.column(a).iter().copied().collect()).collect();
    let coords = |x: &[C64], y: &[C64]| -> DVector<C64> { &inv * DVector::from_vec(alg.bracket_c(x, y)) };

    let scale = 1.0 + alg.max_abs();
    let mut c = Tensor3::zeros(n);
    let mut d = Tensor3::zeros(n);
    let mut leak: f64 = 0.0;
    for i in 0..n {
        for k in 0..n {
            let v = coords(&cols[i], &cols[k]);
            for j in 0..n {
                c[[j, i, k]] = v[j];
                leak = leak.max(v[n + j].norm());
            }
            // [ē_i, e_k]: read the ē-components.
            let w = coords(&cols[n + i], &cols[k]);
            for m in 0..n {
                d[[i, m, k]] = w[n + m];
            }
        }
    }
    if leak > 1e-8 * scale {
        return Err(Error::NotIntegrable { defect: leak });
    }
    // Exact antisymmetry in (i, k).
    for j in 0..n {
        for i in 0..n {
            for k in (i + 1)..n {
                let v = (c[[j, i, k]] - c[[j, k, i]]) * 0.5;
                c[[j, i, k]] = v;
                c[[j, k, i]] = -v;
            }
            c[[j, i, i]] = ZERO;
        }
    }
    Ok(ComplexPresentation::new(c, d)?.with_frame(frame.clone()))
}

/// Rebuilds a real algebra on the basis `x_i = √2 Re e_i`, `y_i = J x_i`
/// with the standard J and identity metric. The returned frame is the
/// standard one and `complexify` of the output reproduces `pres`.
pub fn realify(pres: &ComplexPresentation) -> (RealLieAlgebra, HermitianStructure, Frame) {
    let n = pres.n();
    let dim = 2 * n;
    let k = pres.bracket_table();
    let frame = Frame::standard(n);
    // p: complex coordinates -> real coordinates; q = p^{-1}.
    let p = frame.full_basis();
    let mut q = DMatrix::from_element(dim, dim, ZERO);
    for i in 0..n {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        q[(i, i)] = s;
        q[(n + i, i)] = s;
        q[(i, n + i)] = I * FRAC_1_SQRT_2;
        q[(n + i, n + i)] = -I * FRAC_1_SQRT_2;
    }
    let mut f = vec![0.0; dim * dim * dim];
    for a in 0..dim {
        for b in 0..dim {
            // Bracket of real basis vectors a, b in complex coordinates.
            let mut z = vec![ZERO; dim];
            for s in 0..dim {
                let qa = q[(s, a)];
                if qa == ZERO {
                    continue;
                }
                for t in 0..dim {
                    let w = qa * q[(t, b)];
                    if w == ZERO {
                        continue;
                    }
                    for (m, zm) in z.iter_mut().enumerate() {
                        *zm += w * k[[m, s, t]];
                    }
                }
            }
            for c in 0..dim {
                let mut acc = ZERO;
                for (m, zm) in z.iter().enumerate() {
                    acc += p[(c, m)] * zm;
                }
                f[(c * dim + a) * dim + b] = acc.re;
            }
        }
    }
    let mut labels: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    labels.extend((1..=n).map(|i| format!("y{i}")));
    let alg = RealLieAlgebra::new(labels, f).expect("realified constants are antisymmetric");
    (alg, HermitianStructure::standard(n), frame)
}

/// J-compatible Gram–Schmidt. Flag members are processed in order, then the
/// standard basis vectors `ε_1, ε_2, …` complete the frame.
pub fn build_unitary_frame(h: &HermitianStructure, flag: &[DMatrix<f64>]) -> Result<Frame> {
    let dim = h.dim();
    if h.g().clone().cholesky().is_none() {
        return Err(Error::MetricNotSPD);
    }
    let mut candidates: Vec<DVector<f64>> = Vec::new();
    for (index, member) in flag.iter().enumerate() {
        if member.nrows() != dim {
            return Err(Error::TypeMismatch(format!(
                "flag member {index} has {} rows, expected {dim}",
                member.nrows()
            )));
        }
        let rank = real_rank(member);
        let with_j = hcat(member, &(h.j() * member));
        if real_rank(&with_j) != rank {
            return Err(Error::FlagNotJInvariant { index });
        }
        candidates.extend(member.column_iter().map(|c| c.into_owned()));
    }
    candidates.extend((0..dim).map(|a| {
        let mut v = DVector::zeros(dim);
        v[a] = 1.0;
        v
    }));

    let mut span: Vec<DVector<f64>> = Vec::with_capacity(dim);
    let mut xs: Vec<DVector<f64>> = Vec::with_capacity(dim / 2);
    for cand in candidates {
        if span.len() == dim {
            break;
        }
        let norm0 = h.inner(&cand, &cand).sqrt();
        if norm0 == 0.0 {
            continue;
        }
        let mut v = cand.clone();
        for _ in 0..2 {
            for s in &span {
                let coef = h.inner(&v, s);
                v -= s * coef;
            }
        }
        let norm = h.inner(&v, &v).sqrt();
        if norm <= 1e-8 * norm0 {
            continue;
        }
        let x = v / norm;
        let mut y = h.j() * &x;
        // Jx is g-orthogonal to x and to the J-invariant span already; one
        // re-projection for rounding.
        for s in span.iter().chain(std::iter::once(&x)) {
            let coef = h.inner(&y, s);
            y -= s * coef;
        }
        let ny = h.inner(&y, &y).sqrt();
        let y = y / ny;
        span.push(x.clone());
        span.push(y);
        xs.push(x);
    }
    let xs = DMatrix::from_columns(&xs);
    Frame::from_real_vectors(h, &xs)
}

/// Presentation in the frame `e'_i = Σ_j u[(i, j)] e_j`.
pub fn change_frame(pres: &ComplexPresentation, u: &DMatrix<C64>) -> Result<ComplexPresentation> {
    let n = pres.n();
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::TypeMismatch(format!("unitary must be {n} x {n}")));
    }
    let residual = unitarity_residual(u);
    if residual > pres.tolerance().max(1e-12) {
        return Err(Error::NotUnitary { residual });
    }
    // C'^j_{ik} = Σ conj(U_jc) U_ia U_kb C^c_{ab}
    // D'^j_{ik} = Σ U_ic conj(U_ja) U_kb D^a_{cb}
    let transform3 = |t: &Tensor3, w0: &dyn Fn(usize, usize) -> C64, w1: &dyn Fn(usize, usize) -> C64| {
        let mut s1 = Tensor3::zeros(n);
        let mut s2 = Tensor3::zeros(n);
        let mut s3 = Tensor3::zeros(n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut acc = ZERO;
                    for a in 0..n {
                        acc += w0(x, a) * t[[a, y, z]];
                    }
                    s1[[x, y, z]] = acc;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut acc = ZERO;
                    for a in 0..n {
                        acc += w1(y, a) * s1[[x, a, z]];
                    }
                    s2[[x, y, z]] = acc;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut acc = ZERO;
                    for a in 0..n {
                        acc += u[(z, a)] * s2[[x, y, a]];
                    }
                    s3[[x, y, z]] = acc;
                }
            }
        }
        s3
    };
    let uc = |p: usize, q: usize| u[(p, q)].conj();
    let up = |p: usize, q: usize| u[(p, q)];
    let mut c = transform3(&pres.c, &uc, &up);
    let d = transform3(&pres.d, &uc, &up);
    for j in 0..n {
        for i in 0..n {
            for k in (i + 1)..n {
                let v = (c[[j, i, k]] - c[[j, k, i]]) * 0.5;
                c[[j, i, k]] = v;
                c[[j, k, i]] = -v;
            }
            c[[j, i, i]] = ZERO;
        }
    }
    let mut out = ComplexPresentation::new(c, d)?.with_tolerance(pres.tolerance());
    if let Some(frame) = pres.frame() {
        out = out.with_frame(frame.transformed(u));
    }
    Ok(out)
}
