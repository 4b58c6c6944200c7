use tannaka_core::bundle::validate_bundle;
use tannaka_core::examples::{gen_finite_group, gen_graded, gen_pointed, gen_suq2, GroupPresentation};
use tannaka_core::Tolerance;

fn assert_valid(name: &str, b: &tannaka_core::bundle::CategoryBundle) {
    b.check_structure().unwrap();
    let rep = validate_bundle(b, Tolerance::default());
    let fails: Vec<_> = rep.failures().take(5).collect();
    assert!(rep.pass(), "{name}: {fails:?}");
    assert!(rep.max_residual() < 1e-10, "{name}: residual {}", rep.max_residual());
}

#[test]
fn every_generator_validates() {
    for g in ["Z2", "Z3", "Z5", "S3", "D4", "Q8"] {
        let p = GroupPresentation::builtin(g).unwrap();
        assert_valid(g, &gen_finite_group(&p, true).unwrap());
    }
    for n in [1, 2, 3, 5] {
        assert_valid("pointed", &gen_pointed(n, 1).unwrap());
    }
    assert_valid("graded S3", &gen_graded(&GroupPresentation::s3().unwrap()).unwrap());
    for q in [1.0, 0.5, 0.8] {
        for l in 1..=5 {
            assert_valid("suq2", &gen_suq2(q, l).unwrap());
        }
    }
}
