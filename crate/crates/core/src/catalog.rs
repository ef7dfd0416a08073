//! Explicit Hermitian Lie algebras: the solvable families with J-invariant
//! commutator, complex Lie algebras, the Kodaira–Thurston algebra, seeded
//! samplers and random frame scrambles.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{realify, ComplexPresentation, Frame, HermitianStructure, Instance, RealLieAlgebra};
use crate::checks::{bianchi_defect, complex_jacobi_residuals, jacobi_defect};
use crate::error::{Error, Result};
use crate::linalg::random_unitary;
use crate::tensor::{Tensor3, C64, ZERO};

/// Parameters below this modulus count as zero.
const PARAM_EPS: f64 = 1e-12;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Heisenberg-type family as a Hermitian algebra of real dimension `2r + 2` on the basis
/// `X_1 … X_r, W, Y_1 … Y_r, Z`, with `λ_i = -(b_i + √-1 a_i)` and the
/// brackets
///
/// ```text
/// [X_i, Z] = √2 (a_i X_i + b_i Y_i),   [Y_i, Z] = √2 (-b_i X_i + a_i Y_i).
/// ```
///
/// `J X_i = Y_i`, `J W = Z`, the basis is orthonormal and the frame is
/// `e_i = (X_i - √-1 Y_i)/√2`, `e_{r+1} = (W - √-1 Z)/√2` (the index `0` of the
/// family is placed last). The factor `√2` makes `complexify` return exactly
/// `C^i_{i,r+1} = -conj(λ_i)` and `D^i_{i,r+1} = λ_i`.
pub fn heisenberg_example(lambda: &[C64]) -> Result<Instance> {
    let r = lambda.len();
    if r == 0 {
        return Err(Error::TypeMismatch("λ must have at least one entry".into()));
    }
    if let Some(index) = lambda.iter().position(|l| l.norm() <= PARAM_EPS) {
        return Err(Error::ZeroParameter { index });
    }
    let n = r + 1;
    let z = n + r;
    let mut names: Vec<String> = (1..=r).map(|i| format!("X{i}")).collect();
    names.push("W".into());
    names.extend((1..=r).map(|i| format!("Y{i}")));
    names.push("Z".into());
    let mut brackets = Vec::with_capacity(4 * r);
    for (i, l) in lambda.iter().enumerate() {
        let (a, b) = (-l.im, -l.re);
        let (x, y) = (i, n + i);
        brackets.push((x, z, x, SQRT_2 * a));
        brackets.push((x, z, y, SQRT_2 * b));
        brackets.push((y, z, x, -SQRT_2 * b));
        brackets.push((y, z, y, SQRT_2 * a));
    }
    let alg = RealLieAlgebra::from_brackets(names, &brackets)?;
    Instance::new(alg, HermitianStructure::standard(n), Frame::standard(n))
}

/// Presentation with `D = 0`, i.e. a complex Lie algebra with any compatible
/// metric written in a unitary frame.
pub fn complex_lie_instance(c: Tensor3, tol: f64) -> Result<ComplexPresentation> {
    let n = c.n();
    let pres = ComplexPresentation::new(c, Tensor3::zeros(n))?;
    let defect = bianchi_defect(&pres).first;
    if defect > tol {
        return Err(Error::JacobiViolation(Box::new(ConstraintReport::from_presentation(
            &pres, defect, tol,
        ))));
    }
    Ok(pres)
}

/// Real instance of a complex Lie algebra via `realify`.
pub fn complex_lie_real(c: Tensor3, tol: f64) -> Result<Instance> {
    let pres = complex_lie_instance(c, tol)?;
    let (alg, h, frame) = realify(&pres);
    Instance::new(alg, h, frame)
}

fn set_bracket(c: &mut Tensor3, j: usize, i: usize, k: usize, v: C64) {
    c[[j, i, k]] += v;
    c[[j, k, i]] -= v;
}

/// `[e_n, e_i] = λ_i e_i` for `i < n`, complex dimension `len(λ) + 1`.
pub fn complex_diagonal(lambda: &[C64]) -> Tensor3 {
    let n = lambda.len() + 1;
    let mut c = Tensor3::zeros(n);
    for (i, l) in lambda.iter().enumerate() {
        set_bracket(&mut c, i, n - 1, i, *l);
    }
    c
}

/// Complex Heisenberg algebra `[e_1, e_2] = w e_3`.
pub fn complex_heisenberg(w: C64) -> Tensor3 {
    let mut c = Tensor3::zeros(3);
    set_bracket(&mut c, 2, 0, 1, w);
    c
}

/// `[e_1, e_2] = w e_3` extended by `[e_4, e_i] = λ_i e_i` with
/// `λ_3 = λ_1 + λ_2`, so that the commutator is the Heisenberg algebra.
pub fn complex_heisenberg_extension(w: C64, l1: C64, l2: C64) -> Tensor3 {
    let mut c = Tensor3::zeros(4);
    set_bracket(&mut c, 2, 0, 1, w);
    for (i, l) in [l1, l2, l1 + l2].into_iter().enumerate() {
        set_bracket(&mut c, i, 3, i, l);
    }
    c
}

/// Pure type II family on `ε_1 … ε_{2n}` with `J ε_i = ε_{n+i}`, orthonormal basis and
/// standard frame. For `i < r ≤ α < n` (0-based; `x[i][α - r]` etc.):
///
/// ```text
/// [ε_i,  ε_α ] =  x ε_i + y ε_i*,    [ε_i*, ε_α ] = -y ε_i + x ε_i*,
/// [ε_i,  ε_α*] =  v ε_i - u ε_i*,    [ε_i*, ε_α*] =  u ε_i + v ε_i*.
/// ```
///
/// In the frame `[e_i, e_α] = Z e_i` and `[ē_i, e_α] = Y ē_i` with
/// `Y = ((x+u) - √-1 (y+v))/√2`, `Z = ((x-u) + √-1 (y-v))/√2`.
pub fn pure_type_ii_instance(
    r: usize,
    n: usize,
    x: &[Vec<f64>],
    y: &[Vec<f64>],
    u: &[Vec<f64>],
    v: &[Vec<f64>],
) -> Result<Instance> {
    if r == 0 || r >= n {
        return Err(Error::TypeMismatch(format!("need 1 <= r < n, got r = {r}, n = {n}")));
    }
    let shape_ok = |m: &[Vec<f64>]| m.len() == r && m.iter().all(|row| row.len() == n - r);
    if !(shape_ok(x) && shape_ok(y) && shape_ok(u) && shape_ok(v)) {
        return Err(Error::TypeMismatch(format!("parameter arrays must be {r} x {}", n - r)));
    }
    for i in 0..r {
        let live = (0..n - r).any(|p| {
            let (yy, zz) = pure_type_ii_yz(x[i][p], y[i][p], u[i][p], v[i][p]);
            yy.norm() > PARAM_EPS || zz.norm() > PARAM_EPS
        });
        if !live {
            return Err(Error::DegenerateRow { row: i });
        }
    }
    let mut brackets = Vec::new();
    for i in 0..r {
        let is = n + i;
        for alpha in r..n {
            let p = alpha - r;
            let als = n + alpha;
            let (xx, yy, uu, vv) = (x[i][p], y[i][p], u[i][p], v[i][p]);
            brackets.extend([
                (i, alpha, i, xx),
                (i, alpha, is, yy),
                (is, alpha, i, -yy),
                (is, alpha, is, xx),
                (i, als, i, vv),
                (i, als, is, -uu),
                (is, als, i, uu),
                (is, als, is, vv),
            ]);
        }
    }
    let names = crate::algebra::default_labels(2 * n);
    let alg = RealLieAlgebra::from_brackets(names, &brackets)?;
    Instance::new(alg, HermitianStructure::standard(n), Frame::standard(n))
}

/// `(Y, Z)` of the pure type II family for one parameter quadruple.
pub fn pure_type_ii_yz(x: f64, y: f64, u: f64, v: f64) -> (C64, C64) {
    (
        C64::new(x + u, -(y + v)) * FRAC_1_SQRT_2,
        C64::new(x - u, y - v) * FRAC_1_SQRT_2,
    )
}

/// Label of a vector of `{e_1 … e_n, ē_1 … ē_n}` (0-based input).
pub fn complex_label(n: usize, a: usize) -> String {
    if a < n {
        format!("e{}", a + 1)
    } else {
        format!("ebar{}", a - n + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ViolatedTriple {
    pub triple: [String; 3],
    /// Nonzero components of the cyclic sum, by basis label.
    pub residual: Vec<(String, C64)>,
}

/// Outcome of the Jacobi gate on a presentation given by parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstraintReport {
    pub defect: f64,
    pub violated: Vec<ViolatedTriple>,
    /// Parameter equations, each of which removes at least one violation.
    pub constraints: Vec<String>,
    pub note: Option<String>,
}

impl ConstraintReport {
    fn triples(pres: &ComplexPresentation, tol: f64) -> Vec<([usize; 3], Vec<C64>)> {
        complex_jacobi_residuals(pres)
            .into_iter()
            .filter(|(_, v)| v.iter().any(|z| z.norm() > tol))
            .collect()
    }

    fn from_presentation(pres: &ComplexPresentation, defect: f64, tol: f64) -> Self {
        let n = pres.n();
        let violated = Self::triples(pres, tol)
            .into_iter()
            .map(|(t, v)| ViolatedTriple {
                triple: t.map(|a| complex_label(n, a)),
                residual: v
                    .iter()
                    .enumerate()
                    .filter(|(_, z)| z.norm() > tol)
                    .map(|(a, z)| (complex_label(n, a), *z))
                    .collect(),
            })
            .collect();
        Self {
            defect,
            violated,
            constraints: Vec::new(),
            note: None,
        }
    }
}

/// Parameters `(Y_1, Z_1, Y_2, Z_2)` of the six-dimensional family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SixDimParams {
    pub y1: C64,
    pub z1: C64,
    pub y2: C64,
    pub z2: C64,
}

impl SixDimParams {
    fn names() -> [&'static str; 4] {
        ["Y1", "Z1", "Y2", "Z2"]
    }

    fn values(&self) -> [C64; 4] {
        [self.y1, self.z1, self.y2, self.z2]
    }

    fn with(&self, index: usize, value: C64) -> Self {
        let mut v = self.values();
        v[index] = value;
        Self {
            y1: v[0],
            z1: v[1],
            y2: v[2],
            z2: v[3],
        }
    }

    /// `[e_1, e_2] = e_1`, `[e_i, e_3] = Z_i e_i`, `[ē_i, e_3] = Y_i ē_i`.
    pub fn presentation(&self) -> ComplexPresentation {
        let mut c = Tensor3::zeros(3);
        let mut d = Tensor3::zeros(3);
        set_bracket(&mut c, 0, 0, 1, C64::new(1.0, 0.0));
        for (i, (y, z)) in [(self.y1, self.z1), (self.y2, self.z2)].into_iter().enumerate() {
            set_bracket(&mut c, i, i, 2, z);
            d[[i, i, 2]] = y;
        }
        ComplexPresentation::new(c, d).expect("antisymmetric by construction")
    }
}

/// Explanation attached to every six-dimensional constraint report.
pub const SIX_DIM_NOTE: &str = "The family is stated with (Y2, Z2) != (0, 0) and as not 2-step solvable. \
The Jacobi identity on (e1, e2, e3) and (e1, e2, ebar3) forces Z2 = 0 and Y2 = 0; with these zeros the \
commutator is span{e1, ebar1}, which is abelian, so the algebra is 2-step solvable. The family is reported \
as stated and not repaired.";

/// Runs the Jacobi gate on the six-dimensional family. For each violated
/// triple, every parameter whose vanishing removes that violation is listed.
pub fn six_dim_constraints(p: &SixDimParams, tol: f64) -> ConstraintReport {
    let pres = p.presentation();
    let (alg, _, _) = realify(&pres);
    let defect = jacobi_defect(&alg);
    let mut report = ConstraintReport::from_presentation(&pres, defect, tol);
    let bad = ConstraintReport::triples(&pres, tol);
    let mut constraints = Vec::new();
    for (index, name) in SixDimParams::names().iter().enumerate() {
        if p.values()[index].norm() <= PARAM_EPS {
            continue;
        }
        let zeroed = ConstraintReport::triples(&p.with(index, ZERO).presentation(), tol);
        let fixes = bad.iter().any(|(t, _)| zeroed.iter().all(|(u, _)| u != t));
        if fixes {
            constraints.push(format!("{name} = 0"));
        }
    }
    report.constraints = constraints;
    report.note = Some(SIX_DIM_NOTE.to_string());
    report
}

/// The six-dimensional family, gated by the Jacobi identity.
pub fn six_dim_instance(p: &SixDimParams, tol: f64) -> Result<Instance> {
    let report = six_dim_constraints(p, tol);
    if report.defect > tol || !report.violated.is_empty() {
        return Err(Error::JacobiViolation(Box::new(report)));
    }
    let (alg, h, frame) = realify(&p.presentation());
    Instance::new(alg, h, frame)
}

/// Basis `X, Y, Z, W` with `[X, Y] = Z`, `J X = Y`, `J Z = W`, identity
/// metric and frame `e_1 = (X - √-1 Y)/√2`, `e_2 = (Z - √-1 W)/√2`.
pub fn kodaira_thurston() -> Instance {
    let alg = RealLieAlgebra::from_brackets(labels(&["X", "Y", "Z", "W"]), &[(0, 1, 2, 1.0)])
        .expect("valid brackets");
    let mut j = DMatrix::zeros(4, 4);
    j[(1, 0)] = 1.0;
    j[(0, 1)] = -1.0;
    j[(3, 2)] = 1.0;
    j[(2, 3)] = -1.0;
    let h = HermitianStructure::new(j, DMatrix::identity(4, 4)).expect("standard structure");
    let s = FRAC_1_SQRT_2;
    let mut e = DMatrix::from_element(4, 2, ZERO);
    e[(0, 0)] = C64::new(s, 0.0);
    e[(1, 0)] = C64::new(0.0, -s);
    e[(2, 1)] = C64::new(s, 0.0);
    e[(3, 1)] = C64::new(0.0, -s);
    Instance::new(alg, h, Frame::new(e).expect("shape")).expect("dimensions agree")
}

/// A unitary frame change together with an optional real basis change.
#[derive(Clone, Debug, PartialEq)]
pub struct Scramble {
    pub unitary: DMatrix<C64>,
    /// Columns are the new basis vectors in old coordinates.
    pub basis: Option<DMatrix<f64>>,
}

impl Scramble {
    pub fn identity(n: usize) -> Self {
        Self {
            unitary: DMatrix::identity(n, n),
            basis: None,
        }
    }
}

/// Frame `e'_i = Σ_j U_ij e_j`, then the real basis change if present.
/// A vector with frame coordinates `v'` in the new frame has coordinates
/// `Uᵀ v'` in the old one.
pub fn apply_scramble(inst: &Instance, s: &Scramble) -> Result<Instance> {
    let frame = inst.frame.transformed(&s.unitary);
    let out = Instance::new(inst.algebra.clone(), inst.structure.clone(), frame)?;
    match &s.basis {
        Some(p) => out.change_basis(p),
        None => Ok(out),
    }
}

/// Haar unitary frame change, and when `basis_change` is set a random real
/// basis change `I + A` with entries of `A` in `[-0.3, 0.3]`.
pub fn random_scramble_with(inst: &Instance, seed: u64, basis_change: bool) -> Result<(Instance, Scramble)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = inst.frame.n();
    let unitary = random_unitary(n, &mut rng);
    let basis = basis_change.then(|| {
        let d = 2 * n;
        DMatrix::from_fn(d, d, |i, j| {
            let a: f64 = rng.random_range(-0.3..0.3);
            if i == j {
                1.0 + a
            } else {
                a / d as f64
            }
        })
    });
    let s = Scramble { unitary, basis };
    Ok((apply_scramble(inst, &s)?, s))
}

pub fn random_scramble(inst: &Instance, seed: u64) -> Result<Instance> {
    random_scramble_with(inst, seed, true).map(|x| x.0)
}

/// Uniform in `[-2, 2] + √-1 [-2, 2]`.
pub fn uniform_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))
}

/// Draws are rejected below this modulus so that samples stay well
/// conditioned.
pub const SAMPLE_MIN_MODULUS: f64 = 0.1;

pub fn sample_nonzero_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    loop {
        let z = uniform_complex(rng);
        if z.norm() >= SAMPLE_MIN_MODULUS {
            return z;
        }
    }
}

pub fn sample_heisenberg<R: Rng + ?Sized>(rng: &mut R, r: usize) -> Result<Instance> {
    let lambda: Vec<C64> = (0..r).map(|_| sample_nonzero_complex(rng)).collect();
    heisenberg_example(&lambda)
}

pub fn sample_pure_type_ii<R: Rng + ?Sized>(rng: &mut R, r: usize, n: usize) -> Result<Instance> {
    loop {
        let mut draw = || -> Vec<Vec<f64>> {
            (0..r)
                .map(|_| (0..n - r).map(|_| rng.random_range(-2.0..2.0)).collect())
                .collect()
        };
        let (x, y, u, v) = (draw(), draw(), draw(), draw());
        let ok = (0..r).all(|i| {
            (0..n - r).any(|p| {
                let (yy, zz) = pure_type_ii_yz(x[i][p], y[i][p], u[i][p], v[i][p]);
                yy.norm().max(zz.norm()) >= SAMPLE_MIN_MODULUS
            })
        });
        if ok {
            return pure_type_ii_instance(r, n, &x, &y, &u, &v);
        }
    }
}

/// Metric `Mᵀ g M` with `M = I + ε (A - J A J)/2`; `M` commutes with `J`, so
/// the new metric is again compatible.
pub fn deform_metric<R: Rng + ?Sized>(rng: &mut R, h: &HermitianStructure, eps: f64) -> Result<HermitianStructure> {
    let d = h.dim();
    let a = DMatrix::from_fn(d, d, |_, _| rng.random_range(-1.0..1.0));
    let j = h.j();
    let m = DMatrix::identity(d, d) + (&a - j * &a * j) * (0.5 * eps);
    h.deform_metric(&m)
}

/// Named solvable families with J-invariant commutator used by the samplers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolvableFamily {
    Heisenberg,
    HeisenbergDeformed,
    PureTypeII,
    ComplexDiagonal,
    ComplexHeisenbergExtension,
    ComplexDeformed,
}

impl SolvableFamily {
    pub const ALL: [SolvableFamily; 6] = [
        SolvableFamily::Heisenberg,
        SolvableFamily::HeisenbergDeformed,
        SolvableFamily::PureTypeII,
        SolvableFamily::ComplexDiagonal,
        SolvableFamily::ComplexHeisenbergExtension,
        SolvableFamily::ComplexDeformed,
    ];
}

/// One seeded draw from a solvable family with J-invariant commutator.
pub fn sample_solvable<R: Rng + ?Sized>(rng: &mut R, family: SolvableFamily) -> Result<Instance> {
    match family {
        SolvableFamily::Heisenberg => {
            let r = rng.random_range(1..=3);
            sample_heisenberg(rng, r)
        }
        SolvableFamily::HeisenbergDeformed => {
            let r = rng.random_range(1..=3);
            let inst = sample_heisenberg(rng, r)?;
            let eps = rng.random_range(0.2..0.8);
            let h = deform_metric(rng, &inst.structure, eps)?;
            let frame = crate::algebra::build_unitary_frame(&h, &[])?;
            Instance::new(inst.algebra, h, frame)
        }
        SolvableFamily::PureTypeII => {
            let (r, n) = [(1, 2), (2, 3), (2, 4)][rng.random_range(0..3)];
            sample_pure_type_ii(rng, r, n)
        }
        SolvableFamily::ComplexDiagonal => {
            let k = rng.random_range(1..=3);
            let lambda: Vec<C64> = (0..k).map(|_| sample_nonzero_complex(rng)).collect();
            complex_lie_real(complex_diagonal(&lambda), 1e-10)
        }
        SolvableFamily::ComplexHeisenbergExtension => {
            let (w, l1, l2) = (
                sample_nonzero_complex(rng),
                sample_nonzero_complex(rng),
                sample_nonzero_complex(rng),
            );
            complex_lie_real(complex_heisenberg_extension(w, l1, l2), 1e-10)
        }
        SolvableFamily::ComplexDeformed => {
            let lambda = [sample_nonzero_complex(rng), sample_nonzero_complex(rng)];
            let inst = complex_lie_real(complex_diagonal(&lambda), 1e-10)?;
            let eps = rng.random_range(0.2..0.8);
            let h = deform_metric(rng, &inst.structure, eps)?;
            let frame = crate::algebra::build_unitary_frame(&h, &[])?;
            Instance::new(inst.algebra, h, frame)
        }
    }
}

/// Catalog entry by family with explicit parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CatalogParams {
    Heisenberg {
        lambda: Vec<C64>,
    },
    PureTypeIi {
        r: usize,
        n: usize,
        x: Vec<Vec<f64>>,
        y: Vec<Vec<f64>>,
        u: Vec<Vec<f64>>,
        v: Vec<Vec<f64>>,
    },
    SixDim(SixDimParams),
    KodairaThurston,
    ComplexDiagonal {
        lambda: Vec<C64>,
    },
    ComplexHeisenberg {
        w: C64,
    },
    ComplexHeisenbergExtension {
        w: C64,
        lambda1: C64,
        lambda2: C64,
    },
    Abelian {
        n: usize,
    },
}

impl CatalogParams {
    pub fn build(&self, tol: f64) -> Result<Instance> {
        match self {
            CatalogParams::Heisenberg { lambda } => heisenberg_example(lambda),
            CatalogParams::PureTypeIi { r, n, x, y, u, v } => pure_type_ii_instance(*r, *n, x, y, u, v),
            CatalogParams::SixDim(p) => six_dim_instance(p, tol),
            CatalogParams::KodairaThurston => Ok(kodaira_thurston()),
            CatalogParams::ComplexDiagonal { lambda } => complex_lie_real(complex_diagonal(lambda), tol),
            CatalogParams::ComplexHeisenberg { w } => complex_lie_real(complex_heisenberg(*w), tol),
            CatalogParams::ComplexHeisenbergExtension { w, lambda1, lambda2 } => {
                complex_lie_real(complex_heisenberg_extension(*w, *lambda1, *lambda2), tol)
            }
            CatalogParams::Abelian { n } => {
                let alg = RealLieAlgebra::abelian(2 * n)?;
                Instance::new(alg, HermitianStructure::standard(*n), Frame::standard(*n))
            }
        }
    }

    /// Seeded random parameters for a family name as used by the CLI.
    pub fn sample(family: &str, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw = |rng: &mut ChaCha8Rng, k: usize| (0..k).map(|_| sample_nonzero_complex(rng)).collect::<Vec<_>>();
        Ok(match family {
            "heisenberg" => CatalogParams::Heisenberg { lambda: draw(&mut rng, 2) },
            "pure_type_ii" => {
                let mut m = || vec![(0..2).map(|_| rng.random_range(-2.0..2.0)).collect::<Vec<f64>>(); 2];
                let (x, y, u, v) = (m(), m(), m(), m());
                CatalogParams::PureTypeIi { r: 2, n: 4, x, y, u, v }
            }
            "six_dim" => {
                let p = draw(&mut rng, 4);
                CatalogParams::SixDim(SixDimParams {
                    y1: p[0],
                    z1: p[1],
                    y2: p[2],
                    z2: p[3],
                })
            }
            "kodaira_thurston" => CatalogParams::KodairaThurston,
            "complex_diagonal" => CatalogParams::ComplexDiagonal { lambda: draw(&mut rng, 2) },
            "complex_heisenberg" => CatalogParams::ComplexHeisenberg { w: draw(&mut rng, 1)[0] },
            "complex_heisenberg_extension" => {
                let p = draw(&mut rng, 3);
                CatalogParams::ComplexHeisenbergExtension {
                    w: p[0],
                    lambda1: p[1],
                    lambda2: p[2],
                }
            }
            "abelian" => CatalogParams::Abelian { n: 2 },
            other => {
                return Err(Error::Validation {
                    field: "family".into(),
                    invariant: format!("unknown catalog family `{other}`"),
                })
            }
        })
    }
}

/// Family names accepted by [`CatalogParams::sample`].
pub const FAMILY_NAMES: [&str; 8] = [
    "heisenberg",
    "pure_type_ii",
    "six_dim",
    "kodaira_thurston",
    "complex_diagonal",
    "complex_heisenberg",
    "complex_heisenberg_extension",
    "abelian",
];
