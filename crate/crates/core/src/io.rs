//! JSON file format for Hermitian Lie algebras and machine-readable reports.
//!
//! An algebra document carries either a real presentation
//!
//! ```json
//! { "dim": 4, "basis_labels": ["X","Y","Z","W"], "brackets": [[1,2,3,1.0]],
//!   "J": [[0,-1,0,0],[1,0,0,0],[0,0,0,-1],[0,0,1,0]], "metric": [[1,0,0,0], …] }
//! ```
//!
//! where `[a, b, c, v]` means `[ε_a, ε_b]` has `ε_c`-coefficient `v` (the
//! entry `[b, a, c, -v]` is implied), `J` and `metric` are dense row-major and
//! an optional `frame` lists the columns `e_i` as `[re, im]` pairs; or a
//! complex presentation `{ "n": 2, "C": [[j,i,k,re,im]], "D": [[j,i,k,re,im]] }`.
//! Indices are 1-based. `metadata` may hold `name` and `tolerance`
//! (`structural`, `flat`). Documents are emitted with sorted keys.

use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::DMatrix;
use serde::Deserialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::admissible::{TheoremVerdict, VerdictStatus};
use crate::algebra::{
    build_unitary_frame, realify, ComplexPresentation, Frame, HermitianStructure, Instance, RealLieAlgebra,
};
use crate::catalog::ConstraintReport;
use crate::error::{Error, Result};
use crate::tensor::{Tensor3, Tensor4, C64};
use crate::Tolerances;

pub const ALGEBRA_SCHEMA: &str = "hermlie.algebra/1";
pub const REPORT_SCHEMA: &str = "hermlie.report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    schema: Option<String>,
    metadata: Option<RawMetadata>,
    dim: Option<usize>,
    basis_labels: Option<Vec<String>>,
    brackets: Option<Vec<(usize, usize, usize, f64)>>,
    #[serde(rename = "J")]
    j: Option<Vec<Vec<f64>>>,
    metric: Option<Vec<Vec<f64>>>,
    frame: Option<Vec<Vec<(f64, f64)>>>,
    n: Option<usize>,
    #[serde(rename = "C")]
    c: Option<Vec<(usize, usize, usize, f64, f64)>>,
    #[serde(rename = "D")]
    d: Option<Vec<(usize, usize, usize, f64, f64)>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMetadata {
    name: Option<String>,
    tolerance: Option<RawTolerance>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTolerance {
    structural: Option<f64>,
    flat: Option<f64>,
}

/// The algebra payload of a document.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraBody {
    Real(Instance),
    Complex(ComplexPresentation),
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraDocument {
    pub name: Option<String>,
    /// Overrides from `metadata.tolerance`.
    pub structural_tol: Option<f64>,
    pub flat_tol: Option<f64>,
    pub body: AlgebraBody,
}

impl AlgebraDocument {
    pub fn real(instance: Instance) -> Self {
        Self {
            name: None,
            structural_tol: None,
            flat_tol: None,
            body: AlgebraBody::Real(instance),
        }
    }

    pub fn complex(pres: ComplexPresentation) -> Self {
        Self {
            name: None,
            structural_tol: None,
            flat_tol: None,
            body: AlgebraBody::Complex(pres),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Real instance; complex presentations go through `realify`.
    pub fn instance(&self) -> Result<Instance> {
        match &self.body {
            AlgebraBody::Real(inst) => Ok(inst.clone()),
            AlgebraBody::Complex(p) => {
                let (alg, h, frame) = realify(p);
                Instance::new(alg, h, frame)
            }
        }
    }

    /// Document overrides applied on top of `base`.
    pub fn tolerances(&self, base: Tolerances) -> Tolerances {
        Tolerances {
            structural: self.structural_tol.unwrap_or(base.structural),
            flat: self.flat_tol.unwrap_or(base.flat),
        }
    }
}

fn invalid(field: impl Into<String>, invariant: impl Into<String>) -> Error {
    Error::Validation {
        field: field.into(),
        invariant: invariant.into(),
    }
}

fn dense(field: &str, rows: &[Vec<f64>], d: usize) -> Result<DMatrix<f64>> {
    if rows.len() != d {
        return Err(invalid(field, format!("expected {d} rows, found {}", rows.len())));
    }
    for (r, row) in rows.iter().enumerate() {
        if row.len() != d {
            return Err(invalid(format!("{field}[{}]", r + 1), format!("expected {d} entries, found {}", row.len())));
        }
        if let Some(c) = row.iter().position(|x| !x.is_finite()) {
            return Err(invalid(format!("{field}[{}][{}]", r + 1, c + 1), "entries must be finite"));
        }
    }
    Ok(DMatrix::from_fn(d, d, |r, c| rows[r][c]))
}

/// Antisymmetric sparse assembly with explicit partner checks.
fn assemble_antisymmetric<V: Copy + PartialEq + std::ops::Neg<Output = V>>(
    field: &str,
    entries: &[([usize; 3], V)],
    range: usize,
    swap: (usize, usize),
    zero: V,
    close: impl Fn(V, V) -> bool,
) -> Result<BTreeMap<[usize; 3], V>> {
    let mut out: BTreeMap<[usize; 3], V> = BTreeMap::new();
    let mut explicit: BTreeMap<[usize; 3], usize> = BTreeMap::new();
    for (pos, (idx, v)) in entries.iter().enumerate() {
        let at = format!("{field}[{}]", pos + 1);
        if idx.iter().any(|&i| i == 0 || i > range) {
            return Err(invalid(at, format!("indices must lie in 1..={range}")));
        }
        let zi = idx.map(|i| i - 1);
        if let Some(prev) = explicit.insert(zi, pos) {
            return Err(invalid(at, format!("duplicate of entry {}", prev + 1)));
        }
        let mut partner = zi;
        partner.swap(swap.0, swap.1);
        if partner == zi {
            if *v != zero {
                return Err(invalid(at, "antisymmetry: a bracket of a vector with itself must vanish"));
            }
            continue;
        }
        if explicit.contains_key(&partner) {
            let other = out.get(&partner).copied().unwrap_or(zero);
            if !close(other, -*v) {
                return Err(invalid(at, "antisymmetry: entry and its swapped partner must be negatives"));
            }
            continue;
        }
        out.insert(zi, *v);
        out.insert(partner, -*v);
    }
    Ok(out)
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses and validates an algebra document.
pub fn parse_algebra(text: &str) -> Result<AlgebraDocument> {
    let mut raw: RawDocument = serde_json::from_str(text).map_err(parse_error)?;
    if let Some(s) = &raw.schema {
        if s != ALGEBRA_SCHEMA {
            return Err(invalid("schema", format!("expected `{ALGEBRA_SCHEMA}`")));
        }
    }
    let meta = raw.metadata.take().unwrap_or_default();
    let tol = meta.tolerance.unwrap_or_default();
    for (field, v) in [("metadata.tolerance.structural", tol.structural), ("metadata.tolerance.flat", tol.flat)] {
        if let Some(v) = v {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(field, "tolerance must be positive and finite"));
            }
        }
    }
    let is_real = raw.dim.is_some();
    let is_complex = raw.n.is_some();
    let body = match (is_real, is_complex) {
        (true, true) => return Err(invalid("dim/n", "exactly one presentation form may be present")),
        (false, false) => return Err(invalid("dim/n", "a real (`dim`) or complex (`n`) presentation is required")),
        (true, false) => {
            if raw.c.is_some() || raw.d.is_some() {
                return Err(invalid("C/D", "complex tensors are not allowed in a real presentation"));
            }
            AlgebraBody::Real(parse_real(&raw)?)
        }
        (false, true) => {
            if raw.brackets.is_some() || raw.j.is_some() || raw.metric.is_some() || raw.frame.is_some() || raw.basis_labels.is_some() {
                return Err(invalid("brackets/J/metric", "real data is not allowed in a complex presentation"));
            }
            AlgebraBody::Complex(parse_complex(&raw)?)
        }
    };
    Ok(AlgebraDocument {
        name: meta.name,
        structural_tol: tol.structural,
        flat_tol: tol.flat,
        body,
    })
}

fn parse_real(raw: &RawDocument) -> Result<Instance> {
    let d = raw.dim.expect("checked by caller");
    if d == 0 || d % 2 != 0 {
        return Err(invalid("dim", "dimension must be positive and even"));
    }
    let labels = match &raw.basis_labels {
        Some(l) => {
            if l.len() != d {
                return Err(invalid("basis_labels", format!("expected {d} labels, found {}", l.len())));
            }
            let mut seen = std::collections::BTreeSet::new();
            for (i, s) in l.iter().enumerate() {
                if !seen.insert(s) {
                    return Err(invalid(format!("basis_labels[{}]", i + 1), "labels must be distinct"));
                }
            }
            l.clone()
        }
        None => crate::algebra::default_labels(d),
    };
    let entries: Vec<([usize; 3], f64)> = raw
        .brackets
        .as_deref()
        .unwrap_or(&[])
        .iter()
        .map(|&(a, b, c, v)| ([a, b, c], v))
        .collect();
    if let Some(pos) = entries.iter().position(|(_, v)| !v.is_finite()) {
        return Err(invalid(format!("brackets[{}]", pos + 1), "coefficients must be finite"));
    }
    let map = assemble_antisymmetric("brackets", &entries, d, (0, 1), 0.0, |a, b| (a - b).abs() <= 1e-12 * (1.0 + a.abs()))?;
    let mut f = vec![0.0; d * d * d];
    for ([a, b, c], v) in map {
        f[(c * d + a) * d + b] = v;
    }
    let alg = RealLieAlgebra::new(labels, f)?;
    let j = dense("J", raw.j.as_deref().ok_or_else(|| invalid("J", "missing"))?, d)?;
    let g = dense("metric", raw.metric.as_deref().ok_or_else(|| invalid("metric", "missing"))?, d)?;
    let h = HermitianStructure::new(j, g).map_err(|e| match e {
        Error::NotAlmostComplex { .. } => invalid("J", "J^2 = -I"),
        Error::MetricNotSPD => invalid("metric", "symmetric positive definite"),
        Error::MetricNotCompatible { .. } => invalid("metric", "J^T g J = g"),
        other => other,
    })?;
    let frame = match &raw.frame {
        Some(cols) => {
            let n = d / 2;
            if cols.len() != n || cols.iter().any(|c| c.len() != d) {
                return Err(invalid("frame", format!("expected {n} columns of {d} complex entries")));
            }
            let frame = Frame::new(DMatrix::from_fn(d, n, |r, c| C64::new(cols[c][r].0, cols[c][r].1)))?;
            let residual = frame.residual(&h);
            if residual > crate::algebra::DEFAULT_TOL {
                return Err(invalid("frame", format!("unitary (1,0)-frame (residual {residual:e})")));
            }
            frame
        }
        None => build_unitary_frame(&h, &[])?,
    };
    Instance::new(alg, h, frame)
}

fn parse_complex(raw: &RawDocument) -> Result<ComplexPresentation> {
    let n = raw.n.expect("checked by caller");
    if n == 0 {
        return Err(invalid("n", "complex dimension must be positive"));
    }
    let to_entries = |field: &str, v: &Option<Vec<(usize, usize, usize, f64, f64)>>| -> Result<Vec<([usize; 3], C64)>> {
        let list = v.as_deref().unwrap_or(&[]);
        if let Some(pos) = list.iter().position(|e| !(e.3.is_finite() && e.4.is_finite())) {
            return Err(invalid(format!("{field}[{}]", pos + 1), "coefficients must be finite"));
        }
        Ok(list.iter().map(|&(j, i, k, re, im)| ([j, i, k], C64::new(re, im))).collect())
    };
    let c_entries = to_entries("C", &raw.c)?;
    let d_entries = to_entries("D", &raw.d)?;
    let zero = C64::new(0.0, 0.0);
    let cmap = assemble_antisymmetric("C", &c_entries, n, (1, 2), zero, |a, b| (a - b).norm() <= 1e-12 * (1.0 + a.norm()))?;
    let mut c = Tensor3::zeros(n);
    for (idx, v) in cmap {
        c[idx] = v;
    }
    let mut d = Tensor3::zeros(n);
    let mut seen = std::collections::BTreeSet::new();
    for (pos, (idx, v)) in d_entries.iter().enumerate() {
        let at = format!("D[{}]", pos + 1);
        if idx.iter().any(|&i| i == 0 || i > n) {
            return Err(invalid(at, format!("indices must lie in 1..={n}")));
        }
        let zi = idx.map(|i| i - 1);
        if !seen.insert(zi) {
            return Err(invalid(at, "duplicate entry"));
        }
        d[zi] = *v;
    }
    ComplexPresentation::new(c, d)
}

pub fn parse_algebra_file(path: &Path) -> Result<(AlgebraDocument, String)> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid(path.display().to_string(), format!("readable file: {e}")))?;
    Ok((parse_algebra(&text)?, text))
}

fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}

/// Nonzero entries as `[j, i, k, re, im]` with 1-based indices.
pub fn sparse3(t: &Tensor3, eps: f64) -> Value {
    Value::Array(
        t.nonzero(eps)
            .map(|([a, b, c], z)| json!([a + 1, b + 1, c + 1, z.re, z.im]))
            .collect(),
    )
}

/// Nonzero entries as `[i, j, k, l, re, im]` with 1-based indices.
pub fn sparse4(t: &Tensor4, eps: f64) -> Value {
    Value::Array(
        t.nonzero(eps)
            .map(|([a, b, c, d], z)| json!([a + 1, b + 1, c + 1, d + 1, z.re, z.im]))
            .collect(),
    )
}

fn rows(m: &DMatrix<f64>) -> Value {
    Value::Array((0..m.nrows()).map(|r| json!((0..m.ncols()).map(|c| m[(r, c)]).collect::<Vec<_>>())).collect())
}

/// Algebra payload as a JSON value.
pub fn algebra_value(doc: &AlgebraDocument) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), json!(ALGEBRA_SCHEMA));
    let mut meta = Map::new();
    if let Some(name) = &doc.name {
        meta.insert("name".into(), json!(name));
    }
    let mut tol = Map::new();
    if let Some(v) = doc.structural_tol {
        tol.insert("structural".into(), json!(v));
    }
    if let Some(v) = doc.flat_tol {
        tol.insert("flat".into(), json!(v));
    }
    if !tol.is_empty() {
        meta.insert("tolerance".into(), Value::Object(tol));
    }
    if !meta.is_empty() {
        out.insert("metadata".into(), Value::Object(meta));
    }
    match &doc.body {
        AlgebraBody::Real(inst) => {
            let alg = &inst.algebra;
            let d = alg.dim();
            let mut brackets = Vec::new();
            for a in 0..d {
                for b in (a + 1)..d {
                    for c in 0..d {
                        let v = alg.coeff(c, a, b);
                        if v != 0.0 {
                            brackets.push(json!([a + 1, b + 1, c + 1, v]));
                        }
                    }
                }
            }
            out.insert("dim".into(), json!(d));
            out.insert("basis_labels".into(), json!(alg.labels()));
            out.insert("brackets".into(), Value::Array(brackets));
            out.insert("J".into(), rows(inst.structure.j()));
            out.insert("metric".into(), rows(inst.structure.g()));
            let e = inst.frame.matrix();
            let frame: Vec<Value> = (0..e.ncols())
                .map(|c| Value::Array((0..e.nrows()).map(|r| complex_json(e[(r, c)])).collect()))
                .collect();
            out.insert("frame".into(), Value::Array(frame));
        }
        AlgebraBody::Complex(p) => {
            out.insert("n".into(), json!(p.n()));
            let mut c_entries = Vec::new();
            for ([j, i, k], z) in p.c_tensor().nonzero(0.0) {
                if i < k {
                    c_entries.push(json!([j + 1, i + 1, k + 1, z.re, z.im]));
                }
            }
            out.insert("C".into(), Value::Array(c_entries));
            out.insert("D".into(), sparse3(p.d_tensor(), 0.0));
        }
    }
    Value::Object(out)
}

/// Sorted-key, pretty-printed algebra document.
pub fn emit_algebra(doc: &AlgebraDocument) -> String {
    let mut s = serde_json::to_string_pretty(&algebra_value(doc)).expect("values serialize");
    s.push('\n');
    s
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Where a report came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub input_sha256: String,
    pub seed: u64,
    pub tol: Tolerances,
}

impl Provenance {
    pub fn new(input: &[u8], seed: u64, tol: Tolerances) -> Self {
        Self {
            input_sha256: sha256_hex(input),
            seed,
            tol,
        }
    }
}

/// A machine-readable report: per-check residuals, an optional verdict and
/// free-form data, stamped with provenance and the tool version.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub provenance: Provenance,
    pub residuals: BTreeMap<String, f64>,
    pub verdict: Option<Value>,
    pub data: Map<String, Value>,
}

impl Report {
    pub fn new(command: impl Into<String>, provenance: Provenance) -> Self {
        Self {
            command: command.into(),
            provenance,
            residuals: BTreeMap::new(),
            verdict: None,
            data: Map::new(),
        }
    }

    /// Records a residual; non-finite or negative inputs are stored as `null`
    /// by [`Report::to_value`] and flagged in the `invalid_residuals` list.
    pub fn residual(&mut self, name: impl Into<String>, value: f64) -> &mut Self {
        self.residuals.insert(name.into(), value);
        self
    }

    pub fn insert(&mut self, key: impl Into<String>, value: Value) -> &mut Self {
        self.data.insert(key.into(), value);
        self
    }

    pub fn to_value(&self) -> Value {
        let mut residuals = Map::new();
        let mut bad = Vec::new();
        for (k, v) in &self.residuals {
            if v.is_finite() && *v >= 0.0 {
                residuals.insert(k.clone(), json!(v));
            } else {
                residuals.insert(k.clone(), Value::Null);
                bad.push(json!(k));
            }
        }
        let mut out = Map::new();
        out.insert("schema".into(), json!(REPORT_SCHEMA));
        out.insert("command".into(), json!(self.command));
        out.insert("tool_version".into(), json!(TOOL_VERSION));
        out.insert(
            "provenance".into(),
            json!({
                "input_sha256": self.provenance.input_sha256,
                "seed": self.provenance.seed,
                "tolerance": {
                    "structural": self.provenance.tol.structural,
                    "flat": self.provenance.tol.flat,
                },
            }),
        );
        out.insert("residuals".into(), Value::Object(residuals));
        if !bad.is_empty() {
            out.insert("invalid_residuals".into(), Value::Array(bad));
        }
        if let Some(v) = &self.verdict {
            out.insert("verdict".into(), v.clone());
        }
        for (k, v) in &self.data {
            out.entry(k.clone()).or_insert_with(|| v.clone());
        }
        Value::Object(out)
    }

    /// Deterministic, sorted-key rendering.
    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }
}

/// Verdict as a JSON value with 1-based witness coordinates in the
/// admissible frame.
pub fn verdict_value(v: &TheoremVerdict) -> Value {
    let mut out = Map::new();
    out.insert("verdict".into(), json!(v.status.tag()));
    if let Some(r) = v.r {
        out.insert("r".into(), json!(r));
    }
    match &v.status {
        VerdictStatus::NotApplicable { reason } => {
            out.insert("reason".into(), serde_json::to_value(reason).expect("serializes"));
            out.insert("reason_text".into(), json!(reason.to_string()));
        }
        VerdictStatus::ConstantHChernFlat { c, max_curvature } => {
            out.insert("c".into(), json!(c));
            out.insert("max_curvature".into(), json!(max_curvature));
        }
        VerdictStatus::NonConstantH { witnesses, spread } => {
            let ws: Vec<Value> = witnesses
                .iter()
                .map(|w| {
                    json!({
                        "vector": w.vector.iter().map(|z| complex_json(*z)).collect::<Vec<_>>(),
                        "H": w.h,
                    })
                })
                .collect();
            out.insert("witnesses".into(), Value::Array(ws));
            out.insert("spread".into(), json!(spread));
        }
    }
    Value::Object(out)
}

/// Constraint report of the Jacobi gate as a JSON value.
pub fn constraint_value(r: &ConstraintReport) -> Value {
    json!({
        "defect": r.defect,
        "violated": r.violated.iter().map(|t| json!({
            "triple": t.triple,
            "residual": t.residual.iter().map(|(k, z)| json!([k, z.re, z.im])).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "constraints": r.constraints,
        "note": r.note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_abelian() {
        let doc = parse_algebra(r#"{"dim": 2, "brackets": [], "J": [[0,-1],[1,0]], "metric": [[1,0],[0,1]]}"#).unwrap();
        let inst = doc.instance().unwrap();
        assert_eq!(inst.algebra.max_abs(), 0.0);
    }

    #[test]
    fn antisymmetry_violation() {
        let text = r#"{"dim": 2, "brackets": [[1,2,1,1.0],[2,1,1,1.0]], "J": [[0,-1],[1,0]], "metric": [[1,0],[0,1]]}"#;
        match parse_algebra(text) {
            Err(Error::Validation { field, invariant }) => {
                assert_eq!(field, "brackets[2]");
                assert!(invariant.starts_with("antisymmetry"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_error_location() {
        match parse_algebra("{\n  \"dim\": 2,\n  \"brackets\": [[1, 2, 1]]\n}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exactly_one_form() {
        assert!(matches!(parse_algebra(r#"{"dim": 2, "n": 1}"#), Err(Error::Validation { .. })));
        assert!(matches!(parse_algebra(r#"{}"#), Err(Error::Validation { .. })));
    }

    #[test]
    fn complex_round_trip() {
        let doc = parse_algebra(r#"{"n": 2, "C": [[1,1,2,0.5,0.0]], "D": [[1,2,1,0.0,-0.7]]}"#).unwrap();
        let again = parse_algebra(&emit_algebra(&doc)).unwrap();
        assert_eq!(doc, again);
        match &again.body {
            AlgebraBody::Complex(p) => assert_eq!(p.c(0, 1, 0), C64::new(-0.5, 0.0)),
            _ => panic!("complex body expected"),
        }
    }
}
