use tannaka_core::aqg::{reconstruct, PairElement};
use tannaka_core::braid::*;
use tannaka_core::examples::{gen_finite_group, gen_pointed, GroupPresentation};
use tannaka_core::group::cocommutative_check;
use tannaka_core::linalg::{flip, CMatrix, C64};
use tannaka_core::rep::{irrep, tensor_rep};
use tannaka_core::sample::Sampler;
use tannaka_core::{Error, Tolerance};

fn tol() -> Tolerance {
    Tolerance::default()
}

fn omega(n: usize, k: usize) -> C64 {
    let t = std::f64::consts::TAU * (k % n) as f64 / n as f64;
    C64::new(t.cos(), t.sin())
}

#[test]
fn pointed_r_matrices() {
    for n in [2, 3, 5] {
        let q = reconstruct(&gen_pointed(n, 1).unwrap(), tol()).unwrap();
        let r = braiding_to_r(&q).unwrap();
        // Scalar blocks: R_jk = ω^{jk}.
        for j in 0..n {
            for k in 0..n {
                assert!((r.block(j, k)[(0, 0)] - omega(n, j * k)).norm() < 1e-12);
            }
        }
        let v = verify_quasitriangular(&q, &r, tol(), 3, 42);
        assert!(v.report.pass(), "n={n}: {:#?}", v.report.failures().take(3).collect::<Vec<_>>());
        assert!(v.report.max_residual_of("r-yang-baxter") < 1e-10);
        assert!(v.unitary);
        assert_eq!(v.triangular, n == 2, "n={n}");
        assert!(check_induced_braiding(&q, &r, tol()).pass());
        for j in q.labels() {
            for k in q.labels() {
                let c = r_to_braiding(&q, &r, &irrep(&q, j), &irrep(&q, k)).unwrap();
                assert!(c.dist(q.bundle.braiding_block(j, k).unwrap()) < 1e-12);
            }
        }
    }
    let q = reconstruct(&gen_pointed(3, 1).unwrap(), tol()).unwrap();
    let r = braiding_to_r(&q).unwrap();
    let c = r_to_braiding(&q, &r, &irrep(&q, 1), &irrep(&q, 1)).unwrap();
    assert!((c[(0, 0)] - omega(3, 1)).norm() < 1e-12);
}

#[test]
fn symmetric_flip_gives_trivial_r() {
    let b = gen_finite_group(&GroupPresentation::s3().unwrap(), true).unwrap();
    let q = reconstruct(&b, tol()).unwrap();
    let r = braiding_to_r(&q).unwrap();
    for (&(i, j), m) in &r.value.blocks {
        assert!(m.dist(&CMatrix::identity(q.dim(i) * q.dim(j))) < 1e-12);
    }
    let v = verify_quasitriangular(&q, &r, tol(), 3, 42);
    assert!(v.report.pass() && v.triangular && v.unitary);
    assert!(cocommutative_check(&q, tol()).unwrap().cocommutative);
    // On a reducible pair the induced braiding is the plain flip.
    let std = irrep(&q, 2);
    let t = tensor_rep(&q, &std, &irrep(&q, 1)).unwrap();
    let c = r_to_braiding(&q, &r, &t, &std).unwrap();
    assert!(c.dist(&flip(t.space_dim(), std.space_dim())) < 1e-12);
    for i in q.labels() {
        for j in q.labels() {
            let c = r_to_braiding(&q, &r, &irrep(&q, i), &irrep(&q, j)).unwrap();
            assert!(c.dist(q.bundle.braiding_block(i, j).unwrap()) < 1e-12);
        }
    }
}

#[test]
fn random_r_is_rejected() {
    let b = gen_finite_group(&GroupPresentation::s3().unwrap(), true).unwrap();
    let q = reconstruct(&b, tol()).unwrap();
    let mut s = Sampler::new(5);
    let mut blocks = std::collections::BTreeMap::new();
    for i in q.labels() {
        for j in q.labels() {
            let d = q.dim(i) * q.dim(j);
            blocks.insert((i, j), &CMatrix::identity(d) + &s.matrix(d, d).scale(C64::new(0.3, 0.0)));
        }
    }
    let r = RMatrix::new(PairElement { blocks }).unwrap();
    let v = verify_quasitriangular(&q, &r, tol(), 3, 42);
    assert!(!v.report.passed("r-delta-op"));
    assert!(r_to_braiding(&q, &r, &irrep(&q, 2), &irrep(&q, 2)).is_err());
}

#[test]
fn missing_braiding() {
    let q = reconstruct(&gen_finite_group(&GroupPresentation::s3().unwrap(), false).unwrap(), tol()).unwrap();
    assert!(matches!(braiding_to_r(&q), Err(Error::NoBraiding)));
}
