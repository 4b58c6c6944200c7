use tannaka_core::aqg::{reconstruct, Aqg};
use tannaka_core::bundle::CategoryBundle;
use tannaka_core::examples::{gen_finite_group, gen_graded, gen_pointed, gen_suq2, GroupPresentation};
use tannaka_core::Tolerance;

fn group(name: &str) -> CategoryBundle {
    gen_finite_group(&GroupPresentation::builtin(name).unwrap(), false).unwrap()
}

fn audit(name: &str, b: &CategoryBundle) -> Aqg {
    let tol = Tolerance::default();
    let q = reconstruct(b, tol).unwrap();
    let rep = q.verify_axioms(tol, 2, 7);
    let fails: Vec<_> = rep.failures().take(6).collect();
    assert!(rep.pass(), "{name}: {fails:#?}");
    assert!(rep.max_residual() < 1e-8, "{name}: residual {}", rep.max_residual());
    q
}

#[test]
fn finite_groups_satisfy_every_axiom() {
    for g in ["Z2", "Z3", "S3", "Q8"] {
        let q = audit(g, &group(g));
        assert!(!q.haar_fallback);
    }
}

#[test]
fn pointed_and_graded_satisfy_every_axiom() {
    audit("pointed 5", &gen_pointed(5, 1).unwrap());
    audit("graded S3", &gen_graded(&GroupPresentation::s3().unwrap()).unwrap());
}

#[test]
fn suq2_window_satisfies_checked_axioms() {
    let q = audit("suq2", &gen_suq2(0.5, 4).unwrap());
    assert_eq!(q.core, vec![0, 1, 2]);
}

#[test]
fn suq2_modular_element_is_f_inverse_squared() {
    let q = reconstruct(&gen_suq2(0.5, 4).unwrap(), Tolerance::default()).unwrap();
    let m = q.modular_data(3, 1).unwrap();
    assert!(m.report.pass(), "{:?}", m.report.failures().collect::<Vec<_>>());
    for i in q.labels() {
        let want = q.f_inv.block(i) * q.f_inv.block(i);
        assert!(m.delta.block(i).dist(&want) < 1e-9, "label {i}");
    }
    assert!((m.mu - 1.0).norm() < 1e-9);
}

#[test]
fn group_modular_element_is_trivial() {
    let q = reconstruct(&group("S3"), Tolerance::default()).unwrap();
    let m = q.modular_data(3, 1).unwrap();
    assert!(m.report.pass());
    assert!(m.delta.dist(&tannaka_core::Multiplier::identity(&q.bundle)) < 1e-10);
}

#[test]
fn right_haar_is_left_haar_after_antipode() {
    use tannaka_core::sample::Sampler;
    use tannaka_core::Side;
    let q = reconstruct(&gen_suq2(0.7, 3).unwrap(), Tolerance::default()).unwrap();
    let mut s = Sampler::new(3);
    let all: Vec<usize> = q.labels().collect();
    let a = q.random_element(&mut s, &all);
    let lhs = q.haar(&q.antipode(&a), Side::Left);
    let rhs = q.haar(&a, Side::Right);
    assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0), "{lhs} vs {rhs}");
}
