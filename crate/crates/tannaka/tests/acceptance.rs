//! Acceptance run: one PASS/FAIL line per criterion, against the shipped bundles in `bundles/`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use tannaka::parse_bundle;
use tannaka_core::aqg::{reconstruct, Aqg, Side};
use tannaka_core::braid::{braiding_to_r, r_to_braiding, verify_quasitriangular};
use tannaka_core::bundle::{validate_bundle, CategoryBundle};
use tannaka_core::category::ObjectDecomp;
use tannaka_core::dual::{corep_to_rep, dual_hopf, pontryagin_check, regular_dual_rep, rep_to_corep, universal_corep};
use tannaka_core::examples::GroupPresentation;
use tannaka_core::group::{cocommutative_check, find_isomorphism, grouplikes};
use tannaka_core::rep::{dimension, fusion_mismatches, irrep, tensor_rep, Representation};
use tannaka_core::sample::Sampler;
use tannaka_core::{CMatrix, Tolerance, C64};

const AXIOM_RESIDUAL: f64 = 1e-8;
const F_TRACE: f64 = 1e-8;
const F_GROUP: f64 = 1e-10;
const DIM_TOL: f64 = 1e-8;
const PARSEVAL_TOL: f64 = 1e-10;
const COREP_TOL: f64 = 1e-8;
const YBE_TOL: f64 = 1e-10;
const ROUNDTRIP_TOL: f64 = 1e-12;
const CORRUPTION: f64 = 1e-3;
const CORRUPTIONS_PER_BUNDLE: usize = 100;
const SEED: u64 = 42;
const SAMPLES: usize = 3;

const GROUPS: [&str; 5] = ["z2", "z5", "s3", "d4", "q8"];
const POINTED: [&str; 3] = ["pointed_z2", "pointed_z3", "pointed_z5"];
const SUQ2: [&str; 2] = ["suq2_q1_L4", "suq2_q0.5_L4"];

fn bundles_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../bundles")
}

fn path(name: &str) -> PathBuf {
    bundles_dir().join(format!("{name}.json"))
}

fn load(name: &str) -> CategoryBundle {
    let text = std::fs::read_to_string(path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    parse_bundle(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn tol() -> Tolerance {
    Tolerance::default()
}

fn aqg(name: &str) -> Aqg {
    reconstruct(&load(name), tol()).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn golden() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(bundles_dir())
        .expect("bundles directory")
        .filter_map(|e| e.ok()?.path().file_stem()?.to_str().map(str::to_string))
        .collect();
    names.sort();
    names
}

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn group_recovery() -> Verdict {
    let mut slowest = Duration::ZERO;
    for name in GROUPS {
        let p = GroupPresentation::builtin(name).map_err(|e| e.to_string())?;
        let t = Instant::now();
        let q = aqg(name);
        let g = grouplikes(&q, tol()).map_err(|e| format!("{name}: {e}"))?;
        ensure(g.report.pass(), format!("{name}: grouplike checks fail"))?;
        ensure(g.order() == p.order, format!("{name}: |G| = {} expected {}", g.order(), p.order))?;
        ensure(find_isomorphism(&g.table, &p.table).is_some(), format!("{name}: tables not isomorphic"))?;
        let dt = t.elapsed();
        ensure(dt < Duration::from_secs(10), format!("{name}: {dt:?}"))?;
        slowest = slowest.max(dt);
    }
    Ok(format!("5 groups recovered, slowest {:.2}s", slowest.as_secs_f64()))
}

/// Prefixes of the eight axiom groups in the report.
const AXIOM_GROUPS: [(&str, &[&str]); 8] = [
    ("coassociativity", &["coassociativity"]),
    ("counit", &["counit-"]),
    ("antipode", &["antipode-left", "antipode-right"]),
    ("T bijectivity", &["t1-", "t2-"]),
    ("f-element", &["f-"]),
    ("Haar invariance", &["haar-left", "haar-right"]),
    ("Haar faithfulness", &["haar-faithful", "haar-positive"]),
    ("*-compatibility", &["delta-star"]),
];

fn axiom_suite() -> Verdict {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    let names: Vec<&str> = GROUPS.iter().chain(&POINTED).chain(&SUQ2).copied().collect();
    for name in &names {
        let q = aqg(name);
        let r = q.verify_axioms(tol(), SAMPLES, SEED);
        for (group, prefixes) in AXIOM_GROUPS {
            for p in prefixes {
                ensure(r.has(p), format!("{name}: no {group} checks ({p})"))?;
                ensure(r.passed(p), format!("{name}: {group} fails"))?;
            }
        }
        ensure(r.pass(), format!("{name}: {:?}", r.failures().next()))?;
        worst = worst.max(r.max_residual());
    }
    ensure(worst < AXIOM_RESIDUAL, format!("max residual {worst:.3e}"))?;
    let dt = t.elapsed();
    ensure(dt < Duration::from_secs(60), format!("{dt:?}"))?;
    Ok(format!("{} bundles, max residual {worst:.2e}, {:.2}s", names.len(), dt.as_secs_f64()))
}

fn f_element() -> Verdict {
    let q = aqg("suq2_q0.5_L4");
    let half = q.bundle.index_of("1/2").ok_or("no spin 1/2 label")?;
    let tf = q.f.block(half).trace().re;
    let tfi = q.f_inv.block(half).trace().re;
    ensure((tf - 2.5).abs() < F_TRACE && (tfi - 2.5).abs() < F_TRACE, format!("Tr F = {tf}, Tr F^-1 = {tfi}"))?;
    let mut s = Sampler::new(SEED);
    let mut s2_res: f64 = 0.0;
    let all: Vec<usize> = q.labels().collect();
    for _ in 0..20 {
        let a = q.random_element(&mut s, &all);
        let s2 = q.antipode(&q.antipode(&a));
        for (i, x) in &a.blocks {
            let rhs = &(q.f.block(*i) * x) * q.f_inv.block(*i);
            s2_res = s2_res.max(s2.get(*i).unwrap().dist(&rhs));
        }
    }
    ensure(s2_res < F_TRACE, format!("S^2 = Ad f residual {s2_res:.3e}"))?;
    let sf = q.antipode_multiplier(&q.f).dist(&q.f_inv);
    ensure(sf < F_TRACE, format!("S(f) = f^-1 residual {sf:.3e}"))?;
    let mut group_res: f64 = 0.0;
    for name in GROUPS {
        let g = aqg(name);
        for i in g.labels() {
            group_res = group_res.max(g.f.block(i).dist(&CMatrix::identity(g.dim(i))));
        }
    }
    ensure(group_res < F_GROUP, format!("group F deviates from I by {group_res:.3e}"))?;
    Ok(format!("Tr F = {tf:.12}, S^2 residual {s2_res:.1e}, S(f) residual {sf:.1e}, groups {group_res:.1e}"))
}

/// `[n+1]_q` as the sum `q^n + q^{n-2} + ... + q^{-n}`.
fn q_dim(q: f64, n: i32) -> f64 {
    (0..=n).map(|k| q.powi(n - 2 * k)).sum()
}

fn random_sum(q: &Aqg, s: &mut Sampler) -> Representation {
    let parts: Vec<ObjectDecomp> = (0..1 + s.below(2))
        .map(|_| ObjectDecomp::irreducible(&q.bundle, q.core[s.below(q.core.len())]))
        .collect();
    Representation::new(q, ObjectDecomp::direct_sum(&parts)).expect("orthonormal parts")
}

fn quantum_dimensions() -> Verdict {
    let q = aqg("suq2_q0.5_L4");
    let want = [1.0, 2.5, 5.25, 10.625];
    let mut got = Vec::new();
    for (n, w) in want.iter().enumerate() {
        let i = q.bundle.index_of(&tannaka_core::examples::spin_label(n)).ok_or("missing spin label")?;
        let d = dimension(&q, &irrep(&q, i));
        ensure((d - w).abs() < DIM_TOL && (d - q_dim(0.5, n as i32)).abs() < DIM_TOL, format!("d(spin {n}/2) = {d}"))?;
        got.push(d);
    }
    let mut s = Sampler::new(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let (p, pp) = (random_sum(&q, &mut s), random_sum(&q, &mut s));
        let t = tensor_rep(&q, &p, &pp).map_err(|e| e.to_string())?;
        worst = worst.max((dimension(&q, &t) - dimension(&q, &p) * dimension(&q, &pp)).abs());
    }
    ensure(worst < DIM_TOL, format!("multiplicativity residual {worst:.3e}"))?;
    Ok(format!("dims {got:?}, multiplicativity residual {worst:.1e}"))
}

fn fusion_equivalence() -> Verdict {
    let mut triples_checked = 0;
    for name in golden() {
        let q = aqg(&name);
        let b = &q.bundle;
        let mut triples = Vec::new();
        for i in q.labels() {
            for j in q.labels() {
                if b.admissible(i, j) {
                    triples.extend(q.labels().map(|k| (i, j, k)));
                }
            }
        }
        let bad = fusion_mismatches(&q, &triples).map_err(|e| format!("{name}: {e}"))?;
        ensure(bad.is_empty(), format!("{name}: {:?}", bad.first()))?;
        triples_checked += triples.len();
    }
    Ok(format!("{triples_checked} triples match N_ij^k"))
}

fn finite_names() -> Vec<String> {
    golden().into_iter().filter(|n| load(n).closed).collect()
}

fn duality() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut pars: f64 = 0.0;
    let names = finite_names();
    for name in &names {
        let q = aqg(name);
        let r = pontryagin_check(&q, tol()).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.pass(), format!("{name}: {:?}", r.failures().next()))?;
        worst = worst.max(r.max_residual());
        let ds = dual_hopf(&q, tol()).map_err(|e| e.to_string())?;
        let mut s = Sampler::new(SEED);
        let all: Vec<usize> = q.labels().collect();
        for _ in 0..20 {
            let a = q.random_element(&mut s, &all);
            let x = ds.coords(&ds.fourier(&a));
            let lhs = ds.dual.h(&ds.dual.mul(&ds.dual.st(&x), &x));
            let rhs = q.haar(&a.adjoint().mul(&a), Side::Left);
            pars = pars.max((lhs - rhs).norm());
        }
    }
    ensure(worst < AXIOM_RESIDUAL, format!("Pontryagin residual {worst:.3e}"))?;
    ensure(pars < PARSEVAL_TOL, format!("Parseval residual {pars:.3e}"))?;
    Ok(format!("{} finite bundles, Pontryagin {worst:.1e}, Parseval {pars:.1e}", names.len()))
}

fn universal_corepresentation() -> Verdict {
    let mut worst: f64 = 0.0;
    let names = finite_names();
    for name in &names {
        let q = aqg(name);
        let ds = dual_hopf(&q, tol()).map_err(|e| e.to_string())?;
        let u = universal_corep(&q, &ds, tol()).map_err(|e| format!("{name}: {e}"))?;
        for p in ["U-unitary", "U-delta-first", "U-delta-second", "U-slice-dual", "U-slice-algebra"] {
            ensure(u.report.has(p) && u.report.passed(p), format!("{name}: {p}"))?;
        }
        worst = worst.max(u.report.max_residual());
        let reg = regular_dual_rep(&ds, tol()).map_err(|e| e.to_string())?;
        let v = rep_to_corep(&q, &ds, &u, &reg);
        let pi = corep_to_rep(&q, &ds, &v);
        let back = rep_to_corep(&q, &ds, &u, &pi);
        worst = worst.max(back.dist(&v));
        let lhs = corep_to_rep(&q, &ds, &v.tensor(&v, &q));
        let rhs = pi.tensor(&pi, &ds);
        let t = lhs.images.iter().zip(&rhs.images).map(|(x, y)| x.dist(y)).fold(0.0, f64::max);
        worst = worst.max(t);
    }
    ensure(worst < COREP_TOL, format!("residual {worst:.3e}"))?;
    Ok(format!("{} finite bundles, max residual {worst:.1e}", names.len()))
}

fn r_matrices() -> Verdict {
    let mut ybe: f64 = 0.0;
    let mut rt: f64 = 0.0;
    for (name, n) in POINTED.iter().zip([2, 3, 5]) {
        let q = aqg(name);
        let r = braiding_to_r(&q).map_err(|e| e.to_string())?;
        let v = verify_quasitriangular(&q, &r, tol(), SAMPLES, SEED);
        ensure(v.report.pass(), format!("{name}: {:?}", v.report.failures().next()))?;
        ensure(v.report.max_residual() < YBE_TOL, format!("{name}: residual {:.3e}", v.report.max_residual()))?;
        ybe = ybe.max(v.report.max_residual_of("r-yang-baxter"));
        ensure(v.triangular == (n == 2), format!("{name}: triangular = {}", v.triangular))?;
        for i in q.labels() {
            for j in q.labels() {
                let c = r_to_braiding(&q, &r, &irrep(&q, i), &irrep(&q, j)).map_err(|e| e.to_string())?;
                rt = rt.max(c.dist(q.bundle.braiding_block(i, j).unwrap()));
            }
        }
    }
    ensure(rt < ROUNDTRIP_TOL, format!("roundtrip residual {rt:.3e}"))?;
    let q = aqg("s3");
    let r = braiding_to_r(&q).map_err(|e| e.to_string())?;
    let trivial = r.value.blocks.iter().all(|(&(i, j), m)| m.dist(&CMatrix::identity(q.dim(i) * q.dim(j))) < ROUNDTRIP_TOL);
    ensure(trivial, "S3 flip braiding does not give R = 1")?;
    let c = cocommutative_check(&q, tol()).map_err(|e| e.to_string())?;
    ensure(c.cocommutative, "S3 not cocommutative")?;
    Ok(format!("YBE {ybe:.1e}, roundtrip {rt:.1e}, triangular only for n = 2, S3 R = 1"))
}

/// Validation, reconstruction or the axiom audit rejects the bundle.
fn rejected(b: &CategoryBundle) -> bool {
    if b.check_structure().is_err() || !validate_bundle(b, tol()).pass() {
        return true;
    }
    match reconstruct(b, tol()) {
        Err(_) => true,
        Ok(q) => !q.verify_axioms(tol(), SAMPLES, SEED).pass(),
    }
}

fn negative_controls() -> Verdict {
    let mut total = 0;
    for (k, name) in golden().iter().enumerate() {
        let b = load(name);
        let mut s = Sampler::new(SEED + k as u64);
        for t in 0..CORRUPTIONS_PER_BUNDLE {
            let idx = s.below(b.n_scalars());
            let phase = s.angle();
            let mut c = b.clone();
            c.perturb_scalar(idx, C64::new(phase.cos(), phase.sin()) * CORRUPTION);
            ensure(rejected(&c), format!("{name}: corruption #{t} of scalar {idx} undetected"))?;
            total += 1;
        }
    }
    Ok(format!("{total} corruptions all rejected"))
}

fn determinism() -> Verdict {
    let exe = env!("CARGO_BIN_EXE_tannaka");
    let run = |name: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(exe).args(["check", "--seed", "7"]).arg(path(name)).output().map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(0), format!("{name}: exit {:?}", out.status.code()))?;
        Ok(out.stdout)
    };
    let names = golden();
    for name in &names {
        let (a, b) = (run(name)?, run(name)?);
        ensure(!a.is_empty() && a == b, format!("{name}: reports differ"))?;
    }
    Ok(format!("{} bundles, byte-identical reports", names.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("group recovery", group_recovery),
        ("Hopf axiom suite", axiom_suite),
        ("f-element", f_element),
        ("quantum dimensions", quantum_dimensions),
        ("fusion equivalence", fusion_equivalence),
        ("duality", duality),
        ("universal corepresentation", universal_corepresentation),
        ("R-matrices", r_matrices),
        ("negative controls", negative_controls),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (n, (title, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match verdict {
            Ok(d) => println!("criterion {:>2} PASS {title}: {d} ({secs:.2}s)", n + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {:>2} FAIL {title}: {d} ({secs:.2}s)", n + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
