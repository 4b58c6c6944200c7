//! The `tannaka` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use tannaka_core::aqg::{reconstruct, Aqg};
use tannaka_core::braid::{braiding_to_r, verify_quasitriangular};
use tannaka_core::bundle::{validate_bundle, CategoryBundle};
use tannaka_core::dual::{dual_hopf, pontryagin_check, universal_corep};
use tannaka_core::examples::{gen_finite_group, gen_graded, gen_pointed, gen_suq2, GroupPresentation};
use tannaka_core::group::{cocommutative_check, grouplikes};
use tannaka_core::{Error, Report, Tolerance};

use crate::export;
use crate::format::{parse_bundle, serialize_bundle};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "tannaka", version, about = "Reconstruct and audit discrete quantum groups from tensor category data")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub abs_tol: f64,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub rel_tol: f64,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Random elements per sampled check.
    #[arg(long, global = true, default_value_t = 3)]
    pub samples: usize,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub text: bool,
    /// Write the report or export here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a bundle file.
    Validate { bundle: PathBuf },
    /// Reconstruct the quantum group and export its structure.
    Reconstruct { bundle: PathBuf },
    /// Reconstruct and run the full axiom audit.
    Check { bundle: PathBuf },
    /// Dual Hopf algebra, Pontryagin and universal corepresentation checks (finite bundles).
    Dual { bundle: PathBuf },
    /// R-matrix from the braiding, with the quasitriangularity audit.
    Rmatrix { bundle: PathBuf },
    /// Intrinsic group and cocommutativity.
    Group { bundle: PathBuf },
    /// Hilbert and quantum dimensions per label.
    Dims { bundle: PathBuf },
    /// Generate a bundle: z<n>, s3, d4, q8, pointed, graded or suq2.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    pub family: String,
    /// Order for `pointed`.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Bicharacter exponent for `pointed`.
    #[arg(long, default_value_t = 1)]
    pub t: i64,
    /// Deformation parameter for `suq2`.
    #[arg(long, default_value_t = 0.5)]
    pub q: f64,
    /// Highest doubled spin loaded by `suq2`.
    #[arg(long, default_value_t = 4)]
    pub levels: usize,
    /// Group for `graded`.
    #[arg(long, default_value = "s3")]
    pub group: String,
    /// Include the symmetric flip braiding for group families.
    #[arg(long)]
    pub braided: bool,
}

/// A failure, mapped to an exit code by its variant.
enum Failure {
    Input(String),
    Check(String),
    Internal(String),
}

fn classify(e: Error) -> Failure {
    let msg = e.to_string();
    match e {
        Error::InvalidBundle(r) => {
            let first = r.failures().next().map(|c| format!(": first failing check {} at {}", c.check, c.location));
            Failure::Check(format!("{msg}{}", first.unwrap_or_default()))
        }
        Error::ConjInconsistent { .. } => Failure::Check(msg),
        Error::Shape(_)
        | Error::NotFinite
        | Error::NoBraiding
        | Error::BadPresentation(_)
        | Error::InvalidParameter(_)
        | Error::MissingDual(_)
        | Error::WindowEscape { .. }
        | Error::DegenerateProjector { .. } => Failure::Input(msg),
        Error::NotHermitian { .. }
        | Error::SingularToTolerance { .. }
        | Error::InconsistentSolve(_)
        | Error::DefiningSystemInconsistent(_)
        | Error::MissingBlock(_) => Failure::Internal(msg),
    }
}

struct Ctx<'a> {
    opts: &'a Options,
    tol: Tolerance,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, text: &str) -> Result<(), Failure> {
        match &self.opts.output {
            Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
            None => self.out.write_all(text.as_bytes()).map_err(|e| Failure::Internal(e.to_string())),
        }
    }

    fn emit_json(&mut self, v: &Value) -> Result<(), Failure> {
        let mut s = serde_json::to_string_pretty(v).map_err(|e| Failure::Internal(e.to_string()))?;
        s.push('\n');
        self.emit(&s)
    }

    /// JSON `v`, or the text summary of `reports` under `--text`.
    fn emit_reports(&mut self, v: &Value, reports: &[(&str, &Report)], extra: &str) -> Result<(), Failure> {
        if self.opts.text {
            let mut s: String = reports.iter().map(|(t, r)| export::report_text(t, r)).collect();
            s.push_str(extra);
            self.emit(&s)
        } else {
            self.emit_json(v)
        }
    }

    fn verdict(reports: &[&Report]) -> i32 {
        if reports.iter().all(|r| r.pass()) {
            EXIT_PASS
        } else {
            EXIT_CHECK_FAILED
        }
    }
}

fn load(path: &Path) -> Result<CategoryBundle, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_bundle(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn build(path: &Path, tol: Tolerance) -> Result<Aqg, Failure> {
    reconstruct(&load(path)?, tol).map_err(classify)
}

fn generate(g: &GenArgs) -> tannaka_core::Result<CategoryBundle> {
    match g.family.to_ascii_lowercase().as_str() {
        "pointed" => gen_pointed(g.n, g.t),
        "graded" => gen_graded(&GroupPresentation::builtin(&g.group)?),
        "suq2" => gen_suq2(g.q, g.levels),
        name => gen_finite_group(&GroupPresentation::builtin(name)?, g.braided),
    }
}

fn dispatch(cmd: &Command, cx: &mut Ctx) -> Result<i32, Failure> {
    let tol = cx.tol;
    let o = cx.opts.clone();
    match cmd {
        Command::Validate { bundle } => {
            let b = load(bundle)?;
            let r = validate_bundle(&b, tol);
            cx.emit_reports(&json!({ "validation": export::report_json(&r) }), &[("validation", &r)], "")?;
            Ok(Ctx::verdict(&[&r]))
        }
        Command::Reconstruct { bundle } => {
            let q = build(bundle, tol)?;
            if o.text {
                let s = export::dims_text(&q) + &export::report_text("construction", &q.construction_report);
                cx.emit(&s)?;
            } else {
                cx.emit_json(&export::aqg_json(&q))?;
            }
            Ok(Ctx::verdict(&[&q.construction_report]))
        }
        Command::Check { bundle } => {
            let b = load(bundle)?;
            let validation = validate_bundle(&b, tol);
            if !validation.pass() {
                cx.emit_reports(&json!({ "validation": export::report_json(&validation) }), &[("validation", &validation)], "")?;
                let c = validation.failures().next().expect("failing report");
                return Err(Failure::Check(format!("validation failed: {} at {}", c.check, c.location)));
            }
            let q = reconstruct(&b, tol).map_err(classify)?;
            let axioms = q.verify_axioms(tol, o.samples, o.seed);
            let modular = q.modular_data(o.samples, o.seed).map_err(classify)?;
            let v = json!({
                "validation": export::report_json(&validation),
                "construction": export::report_json(&q.construction_report),
                "axioms": export::report_json(&axioms),
                "modular": export::report_json(&modular.report),
                "mu": [modular.mu.re, modular.mu.im],
            });
            let reports = [
                ("validation", &validation),
                ("construction", &q.construction_report),
                ("axioms", &axioms),
                ("modular", &modular.report),
            ];
            cx.emit_reports(&v, &reports, "")?;
            if let Some(c) = reports.iter().flat_map(|r| r.1.failures()).next() {
                return Err(Failure::Check(format!("failed {} at {}", c.check, c.location)));
            }
            Ok(EXIT_PASS)
        }
        Command::Dual { bundle } => {
            let q = build(bundle, tol)?;
            let ds = dual_hopf(&q, tol).map_err(classify)?;
            let pont = pontryagin_check(&q, tol).map_err(classify)?;
            let u = universal_corep(&q, &ds, tol).map_err(classify)?;
            let mut v = export::dual_json(&ds);
            v["pontryagin"] = export::report_json(&pont);
            v["universal_corep"] = export::report_json(&u.report);
            cx.emit_reports(&v, &[("pontryagin", &pont), ("universal corepresentation", &u.report)], "")?;
            Ok(Ctx::verdict(&[&pont, &u.report]))
        }
        Command::Rmatrix { bundle } => {
            let q = build(bundle, tol)?;
            let r = braiding_to_r(&q).map_err(classify)?;
            let v = verify_quasitriangular(&q, &r, tol, o.samples, o.seed);
            let extra = format!("unitary: {}\ntriangular: {}\n", v.unitary, v.triangular);
            cx.emit_reports(&export::rmatrix_json(&q, &r, &v), &[("quasitriangularity", &v.report)], &extra)?;
            Ok(Ctx::verdict(&[&v.report]))
        }
        Command::Group { bundle } => {
            let q = build(bundle, tol)?;
            let g = grouplikes(&q, tol).map_err(classify)?;
            let c = cocommutative_check(&q, tol).map_err(classify)?;
            let extra = format!(
                "order: {}\ncocommutative: {}\nspan ranks: {:?}\n",
                g.order(),
                c.cocommutative,
                c.span_ranks
            );
            cx.emit_reports(&export::group_json(&q, &g, &c), &[("grouplikes", &g.report)], &extra)?;
            Ok(Ctx::verdict(&[&g.report]))
        }
        Command::Dims { bundle } => {
            let q = build(bundle, tol)?;
            if o.text {
                cx.emit(&export::dims_text(&q))?;
            } else {
                cx.emit_json(&export::dims_json(&q))?;
            }
            Ok(EXIT_PASS)
        }
        Command::Gen(g) => {
            let b = generate(g).map_err(classify)?;
            cx.emit(&serialize_bundle(&b))?;
            Ok(EXIT_PASS)
        }
    }
}

/// Run with explicit streams; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let o = &cli.opts;
    if !(o.abs_tol >= 0.0 && o.rel_tol >= 0.0) {
        let _ = writeln!(err, "error: tolerances must be non-negative");
        return EXIT_INPUT;
    }
    let mut cx = Ctx { opts: o, tol: Tolerance::new(o.abs_tol, o.rel_tol), out };
    match dispatch(&cli.command, &mut cx) {
        Ok(code) => code,
        Err(f) => {
            let (code, tag, msg) = match f {
                Failure::Input(m) => (EXIT_INPUT, "input error", m),
                Failure::Check(m) => (EXIT_CHECK_FAILED, "check failed", m),
                Failure::Internal(m) => (EXIT_INTERNAL, "internal inconsistency", m),
            };
            let _ = writeln!(err, "{tag}: {msg}");
            code
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
