use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use hermlie::admissible::{random_unit_vector, verify_theorem, VerifyOptions};
use hermlie::catalog::{random_scramble_with, CatalogParams, FAMILY_NAMES};
use hermlie::checks::{
    bianchi_defect, classify_pure_type, frame_trace_defect, jacobi_defect, nijenhuis_defect, real_trace_defect,
    series_report, unimodular_defect,
};
use hermlie::chern::{chern_curvature, chern_torsion, constant_h_test, holomorphic_sectional};
use hermlie::forms::StructureEquations;
use hermlie::io::{
    algebra_value, constraint_value, emit_algebra, parse_algebra_file, sparse3, sparse4, verdict_value,
    AlgebraDocument, Provenance, Report,
};
use hermlie::{Error, Instance, Tolerances, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const EXIT_VALIDATION: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(name = "hermlie", version, about = "Chern-connection invariants of Hermitian Lie algebras")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Tolerance for structural and flatness predicates.
    #[arg(long, global = true, env = "HERMLIE_TOL")]
    tol: Option<f64>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Jacobi, integrability, Bianchi, unimodularity, series and pure types.
    Check { file: PathBuf },
    /// Torsion, curvature, holomorphic sectional curvature and the constant-H test.
    Curvature {
        file: PathBuf,
        /// Random directions sampled for the H summary.
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Full theorem pipeline.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Emit a catalog example as an algebra document.
    Catalog {
        /// Family name; `--list` prints the accepted names.
        family: Option<String>,
        /// Parameters as a JSON object; sampled from the seed when omitted.
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Seeded unitary frame change, optionally with a real basis change.
    Scramble {
        file: PathBuf,
        /// Also apply a random real basis change; J, metric and frame are carried along.
        #[arg(long)]
        basis: bool,
    },
}

struct Outcome {
    report: Report,
    text: Vec<String>,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.common.json;
    match run(&cli) {
        Ok(out) => {
            if json {
                print!("{}", out.report.emit());
            } else {
                for line in &out.text {
                    println!("{line}");
                }
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            let validation = e.downcast_ref::<Error>().is_some();
            if json {
                if let Some(err) = e.downcast_ref::<Error>() {
                    println!("{}", serde_json::to_string_pretty(&error_value(err)).expect("serializes"));
                }
            }
            eprintln!("error: {e:#}");
            ExitCode::from(if validation { EXIT_VALIDATION } else { 1 })
        }
    }
}

fn error_value(e: &Error) -> Value {
    let mut v = json!({ "error": e.to_string() });
    match e {
        Error::Parse { line, column, .. } => {
            v["kind"] = json!("parse");
            v["line"] = json!(line);
            v["column"] = json!(column);
        }
        Error::Validation { field, invariant } => {
            v["kind"] = json!("validation");
            v["field"] = json!(field);
            v["invariant"] = json!(invariant);
        }
        _ => v["kind"] = json!("invalid_instance"),
    }
    v
}

fn tolerances(common: &Common, doc: Option<&AlgebraDocument>) -> Tolerances {
    let base = match common.tol {
        Some(t) => Tolerances::uniform(t),
        None => Tolerances::default(),
    };
    match (doc, common.tol) {
        (Some(d), None) => d.tolerances(base),
        _ => base,
    }
}

fn load(path: &Path) -> anyhow::Result<(AlgebraDocument, String)> {
    parse_algebra_file(path).with_context(|| format!("reading {}", path.display()))
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let c = &cli.common;
    match &cli.command {
        Command::Check { file } => {
            let (doc, text) = load(file)?;
            let tol = tolerances(c, Some(&doc));
            check(&doc.instance()?, Provenance::new(text.as_bytes(), c.seed, tol))
        }
        Command::Curvature { file, samples } => {
            let (doc, text) = load(file)?;
            let tol = tolerances(c, Some(&doc));
            curvature(&doc.instance()?, Provenance::new(text.as_bytes(), c.seed, tol), *samples)
        }
        Command::Verify { file, samples } => {
            let (doc, text) = load(file)?;
            let tol = tolerances(c, Some(&doc));
            verify(&doc.instance()?, Provenance::new(text.as_bytes(), c.seed, tol), *samples)
        }
        Command::Catalog { family, params, list } => {
            if *list {
                let mut report = Report::new("catalog", Provenance::new(b"", c.seed, tolerances(c, None)));
                report.insert("families", json!(FAMILY_NAMES));
                return Ok(Outcome {
                    report,
                    text: FAMILY_NAMES.iter().map(|s| s.to_string()).collect(),
                    code: 0,
                });
            }
            let family = family.as_deref().context("a family name is required (see --list)")?;
            catalog(family, params.as_deref(), c)
        }
        Command::Scramble { file, basis } => {
            let (doc, text) = load(file)?;
            let tol = tolerances(c, Some(&doc));
            let (inst, _) = random_scramble_with(&doc.instance()?, c.seed, *basis)?;
            let mut out = AlgebraDocument::real(inst);
            out.name = doc.name.map(|n| format!("{n} (scrambled, seed {})", c.seed));
            let mut report = Report::new("scramble", Provenance::new(text.as_bytes(), c.seed, tol));
            report.insert("algebra", algebra_value(&out));
            Ok(Outcome {
                report,
                text: vec![emit_algebra(&out).trim_end().to_string()],
                code: 0,
            })
        }
    }
}

fn text_lines(report: &Report) -> Vec<String> {
    report.residuals.iter().map(|(k, v)| format!("{k:<22} {v:.3e}")).collect()
}

fn check(inst: &Instance, prov: Provenance) -> anyhow::Result<Outcome> {
    let tol = prov.tol;
    let mut report = Report::new("check", prov);
    let alg = &inst.algebra;
    let jac = jacobi_defect(alg);
    let nij = nijenhuis_defect(alg, &inst.structure);
    report.residual("jacobi", jac);
    report.residual("nijenhuis", nij);
    report.residual("frame_unitarity", inst.frame.residual(&inst.structure));
    report.residual("real_trace", real_trace_defect(alg));
    report.residual("frame_trace", frame_trace_defect(alg, &inst.frame));
    let pres = inst.presentation()?;
    report.residual("unimodular", unimodular_defect(&pres));
    report.residual("bianchi", bianchi_defect(&pres).max());
    report.residual("d_squared", StructureEquations::new(&pres).d_squared_defect());
    let mut failures = Vec::new();
    if jac > tol.structural {
        failures.push("jacobi");
    }
    if nij > tol.structural {
        failures.push("nijenhuis");
    }
    let mut text = text_lines(&report);
    if failures.is_empty() {
        let series = series_report(alg, tol.structural)?;
        let pure = classify_pure_type(alg, &inst.structure, tol.structural)?;
        text.push(format!("derived series         {:?}", series.derived_series));
        text.push(format!("lower central series   {:?}", series.lower_central_series));
        text.push(format!("solvable {} nilpotent {}", series.is_solvable, series.is_nilpotent));
        text.push(format!(
            "commutator dim {} complex {} pure types {:?}",
            pure.dim_commutator, pure.commutator_is_complex, pure.types
        ));
        report.insert("series", serde_json::to_value(&series)?);
        report.insert("pure_type", serde_json::to_value(&pure)?);
        report.insert("unimodular", json!(unimodular_defect(&pres) <= tol.structural));
    }
    report.insert("passed", json!(failures.is_empty()));
    report.insert("failures", json!(failures));
    text.push(format!("passed {}", failures.is_empty()));
    Ok(Outcome {
        report,
        text,
        code: if failures.is_empty() { 0 } else { EXIT_VALIDATION },
    })
}

fn curvature(inst: &Instance, prov: Provenance, samples: usize) -> anyhow::Result<Outcome> {
    let tol = prov.tol;
    let mut rng = ChaCha8Rng::seed_from_u64(prov.seed);
    let mut report = Report::new("curvature", prov);
    let pres = inst.presentation()?;
    let n = pres.n();
    let t = chern_torsion(&pres);
    let r = chern_curvature(&pres);
    let constant = constant_h_test(&r, tol.flat);
    let basis: Vec<f64> = (0..n)
        .map(|i| {
            let mut v = vec![C64::new(0.0, 0.0); n];
            v[i] = C64::new(1.0, 0.0);
            holomorphic_sectional(&r, &v)
        })
        .collect::<Result<_, _>>()?;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..samples {
        let h = holomorphic_sectional(&r, &random_unit_vector(n, &mut rng))?;
        lo = lo.min(h);
        hi = hi.max(h);
    }
    for &h in &basis {
        lo = lo.min(h);
        hi = hi.max(h);
    }
    report.residual("max_curvature", r.max_abs());
    report.residual("constant_h_deviation", constant.deviation);
    report.residual("pair_symmetry", r.pair_symmetry_residual());
    report.residual("jacobi", jacobi_defect(&inst.algebra));
    report.residual("nijenhuis", nijenhuis_defect(&inst.algebra, &inst.structure));
    report.insert("torsion", sparse3(&t.t, 1e-14));
    report.insert("curvature", sparse4(&r.r, 1e-14));
    report.insert("constant_h", serde_json::to_value(constant)?);
    report.insert(
        "holomorphic_sectional",
        json!({ "basis": basis, "sample_min": lo, "sample_max": hi, "samples": samples }),
    );
    let mut text = text_lines(&report);
    text.push(format!("H(e_i)                 {basis:?}"));
    text.push(format!("H range                [{lo:.6}, {hi:.6}]"));
    text.push(format!("constant H {} (c = {:.6})", constant.is_constant, constant.c));
    Ok(Outcome { report, text, code: 0 })
}

fn verify(inst: &Instance, prov: Provenance, samples: usize) -> anyhow::Result<Outcome> {
    let opts = VerifyOptions {
        tol: prov.tol,
        seed: prov.seed,
        samples,
    };
    let mut report = Report::new("verify", prov);
    match verify_theorem(&inst.algebra, &inst.structure, &opts) {
        Ok(v) => {
            for (k, x) in &v.residuals {
                report.residual(k.clone(), *x);
            }
            let value = verdict_value(&v);
            let mut text = text_lines(&report);
            text.push(format!("verdict {}", v.status.tag()));
            if let Some(reason) = value.get("reason_text") {
                text.push(format!("reason {}", reason.as_str().unwrap_or_default()));
            }
            if let Some(c) = value.get("c") {
                text.push(format!("c {c}"));
            }
            report.verdict = Some(value);
            Ok(Outcome { report, text, code: 0 })
        }
        Err(Error::TheoremViolationCandidate(diag)) => {
            for (k, x) in &diag.residuals {
                report.residual(k.clone(), *x);
            }
            let dump = AlgebraDocument::real(diag.instance.clone()).with_name("theorem violation candidate");
            eprint!("{}", emit_algebra(&dump));
            report.verdict = Some(json!({
                "verdict": "theorem_violation_candidate",
                "r": diag.r,
                "c": diag.c,
                "deviation": diag.deviation,
                "max_curvature": diag.max_curvature,
            }));
            report.insert("instance", algebra_value(&dump));
            let mut text = text_lines(&report);
            text.push(format!("verdict theorem_violation_candidate ({diag})"));
            Ok(Outcome {
                report,
                text,
                code: EXIT_VIOLATION,
            })
        }
        Err(e) => Err(e.into()),
    }
}

fn catalog(family: &str, params: Option<&str>, c: &Common) -> anyhow::Result<Outcome> {
    let params = match params {
        Some(text) => {
            let mut obj: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
            let map = obj.as_object_mut().ok_or_else(|| Error::Validation {
                field: "params".into(),
                invariant: "parameters must be a JSON object".into(),
            })?;
            map.insert("family".into(), json!(family));
            serde_json::from_value::<CatalogParams>(obj).map_err(|e| Error::Validation {
                field: "params".into(),
                invariant: e.to_string(),
            })?
        }
        None => CatalogParams::sample(family, c.seed)?,
    };
    let tol = tolerances(c, None);
    let input = serde_json::to_string(&params)?;
    let mut report = Report::new("catalog", Provenance::new(input.as_bytes(), c.seed, tol));
    report.insert("params", serde_json::to_value(&params)?);
    match params.build(tol.structural) {
        Ok(inst) => {
            let doc = AlgebraDocument::real(inst).with_name(family);
            report.insert("algebra", algebra_value(&doc));
            Ok(Outcome {
                report,
                text: vec![emit_algebra(&doc).trim_end().to_string()],
                code: 0,
            })
        }
        Err(Error::JacobiViolation(cr)) => {
            report.residual("jacobi", cr.defect);
            report.insert("constraint_report", constraint_value(&cr));
            let mut text = vec![format!("Jacobi identity fails (defect {:.3e})", cr.defect)];
            for t in &cr.violated {
                text.push(format!("  triple ({})", t.triple.join(", ")));
            }
            text.push(format!("constraints {}", cr.constraints.join(", ")));
            if let Some(note) = &cr.note {
                text.push(format!("note {note}"));
            }
            Ok(Outcome {
                report,
                text,
                code: EXIT_VALIDATION,
            })
        }
        Err(e) => Err(e.into()),
    }
}
