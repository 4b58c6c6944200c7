use std::sync::OnceLock;

use proptest::prelude::*;
use tannaka_core::aqg::{reconstruct, Aqg, AqgElement, Side};
use tannaka_core::bundle::validate_bundle;
use tannaka_core::category::{nat_component, tensor_decomp, ObjectDecomp};
use tannaka_core::examples::{gen_finite_group, gen_pointed, gen_suq2, GroupPresentation};
use tannaka_core::linalg::*;
use tannaka_core::rep::irrep;
use tannaka_core::sample::Sampler;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn s3() -> &'static Aqg {
    static Q: OnceLock<Aqg> = OnceLock::new();
    Q.get_or_init(|| reconstruct(&gen_finite_group(&GroupPresentation::s3().unwrap(), true).unwrap(), tol()).unwrap())
}

fn suq2() -> &'static Aqg {
    static Q: OnceLock<Aqg> = OnceLock::new();
    Q.get_or_init(|| reconstruct(&gen_suq2(0.5, 4).unwrap(), tol()).unwrap())
}

fn unitary(s: &mut Sampler, n: usize) -> CMatrix {
    let cols: Vec<CMatrix> = (0..n).map(|_| CMatrix::column(s.vector(n))).collect();
    CMatrix::hstack(&orthonormalize(&cols, tol()))
}

/// Random object: a sum of irreducibles from `labels`, in a rotated basis.
fn object(q: &Aqg, s: &mut Sampler, labels: &[usize], n: usize) -> ObjectDecomp {
    let parts: Vec<ObjectDecomp> =
        (0..n).map(|_| ObjectDecomp::irreducible(&q.bundle, labels[s.below(labels.len())])).collect();
    let x = ObjectDecomp::direct_sum(&parts);
    let u = unitary(s, x.total_dim);
    x.conjugate_by(&u)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kron_associative_and_mixed_product(seed in any::<u64>(), d in prop::array::uniform3(1usize..4)) {
        let mut s = Sampler::new(seed);
        let (a, b, c) = (s.matrix(d[0], d[0]), s.matrix(d[1], d[1]), s.matrix(d[2], d[2]));
        let l = kron(&kron(&a, &b), &c);
        prop_assert!(l.dist(&kron(&a, &kron(&b, &c))) <= 1e-12 * l.norm());
        let (a2, b2) = (s.matrix(d[0], d[0]), s.matrix(d[1], d[1]));
        let lhs = &kron(&a, &b) * &kron(&a2, &b2);
        prop_assert!(lhs.dist(&kron(&(&a * &a2), &(&b * &b2))) <= 1e-12 * (1.0 + lhs.norm()));
    }

    #[test]
    fn flip_is_an_exact_permutation(d1 in 1usize..6, d2 in 1usize..6) {
        let f = flip(d1, d2);
        prop_assert!(f.data().iter().all(|z| z.im == 0.0 && (z.re == 0.0 || z.re == 1.0)));
        prop_assert_eq!(&f.adjoint() * &f, CMatrix::identity(d1 * d2));
    }

    #[test]
    fn intertwiners_meet_their_bound(seed in any::<u64>(), n in 1usize..4) {
        let mut s = Sampler::new(seed);
        let u = unitary(&mut s, n);
        let a: Vec<CMatrix> = (0..3).map(|_| s.matrix(n, n)).collect();
        let b: Vec<CMatrix> = a.iter().map(|x| &(&u * x) * &u.adjoint()).collect();
        let ts = solve_intertwiners(&a, &b, tol());
        prop_assert!(!ts.is_empty());
        for t in &ts {
            for (x, y) in a.iter().zip(&b) {
                let res = (&(t * x) - &(y * t)).max_abs();
                prop_assert!(res <= 1e-9 * (1.0 + x.norm() * y.norm()));
            }
        }
    }

    #[test]
    fn psd_square_root_squares_back(seed in any::<u64>(), n in 1usize..6) {
        let mut s = Sampler::new(seed);
        let x = s.matrix(n, n);
        let m = &x * &x.adjoint();
        let r = hermitian_calc(&m, Spectral::Sqrt, tol()).unwrap();
        prop_assert!((&r * &r).dist(&m) <= 1e-10 * (1.0 + m.norm()));
    }

    #[test]
    fn delta_is_a_star_homomorphism(seed in any::<u64>(), window in any::<bool>()) {
        let q = if window { suq2() } else { s3() };
        let mut s = Sampler::new(seed);
        let a = q.random_element(&mut s, &q.core);
        let b = q.random_element(&mut s, &q.core);
        let ab = a.mul(&b);
        for i in q.labels() {
            for j in q.labels() {
                let d = q.delta_block(&ab, i, j);
                let scale = 1.0 + d.norm();
                prop_assert!(d.dist(&(&q.delta_block(&a, i, j) * &q.delta_block(&b, i, j))) <= 1e-10 * scale);
                prop_assert!(q.delta_block(&a.adjoint(), i, j).dist(&q.delta_block(&a, i, j).adjoint()) <= 1e-10 * scale);
            }
        }
    }

    #[test]
    fn antipode_is_antimultiplicative(seed in any::<u64>(), window in any::<bool>()) {
        let q = if window { suq2() } else { s3() };
        let mut s = Sampler::new(seed);
        let a = q.random_element(&mut s, &q.core);
        let b = q.random_element(&mut s, &q.core);
        let lhs = q.antipode(&a.mul(&b));
        prop_assert!(lhs.dist(&q.antipode(&b).mul(&q.antipode(&a))) <= 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn delta_mult_support_is_bounded(seed in any::<u64>(), side in any::<bool>()) {
        let q = suq2();
        let mut s = Sampler::new(seed);
        let la = [q.core[s.below(q.core.len())]];
        let lb = [q.core[s.below(q.core.len())]];
        let a = q.random_element(&mut s, &la);
        let b = q.random_element(&mut s, &lb);
        let side = if side { Side::Left } else { Side::Right };
        if let Ok(x) = q.delta_mult(&a, &b, side) {
            let bd = &q.bundle;
            for (n, j) in x.support() {
                let ok = b.get(n).is_some()
                    && a.support().iter().any(|&m| bd.multiplicity(bd.dual[n], m, j) > 0);
                prop_assert!(ok, "({n},{j})");
            }
        }
    }

    #[test]
    fn counit_is_the_trivial_representation(seed in any::<u64>()) {
        let q = s3();
        let mut s = Sampler::new(seed);
        let all: Vec<usize> = q.labels().collect();
        let a = q.random_element(&mut s, &all);
        let t = irrep(q, q.bundle.unit).act(q, &a);
        prop_assert!((t[(0, 0)] - q.counit(&a)).norm() <= 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn tensor_products_are_associative_on_components(seed in any::<u64>()) {
        let q = s3();
        let b = &q.bundle;
        let mut s = Sampler::new(seed);
        let all: Vec<usize> = q.labels().collect();
        let (x, y, z) = (object(q, &mut s, &all, 2), object(q, &mut s, &all, 1), object(q, &mut s, &all, 2));
        let left = tensor_decomp(b, &tensor_decomp(b, &x, &y).unwrap(), &z).unwrap();
        let right = tensor_decomp(b, &x, &tensor_decomp(b, &y, &z).unwrap()).unwrap();
        let a = q.random_element(&mut s, &all);
        let blocks = |i: usize| Some(a.block_or_zero(b, i));
        let l = nat_component(b, &blocks, &left).unwrap();
        let r = nat_component(b, &blocks, &right).unwrap();
        prop_assert!(l.dist(&r) <= 1e-10 * (1.0 + l.norm()));
    }

    #[test]
    fn components_are_natural(seed in any::<u64>()) {
        let q = s3();
        let b = &q.bundle;
        let mut s = Sampler::new(seed);
        let all: Vec<usize> = q.labels().collect();
        let (x, y) = (object(q, &mut s, &all, 3), object(q, &mut s, &all, 3));
        // A morphism X → Y assembled from matching parts.
        let mut u = CMatrix::zeros(y.total_dim, x.total_dim);
        for (i, sx) in &x.parts {
            for (j, ty) in &y.parts {
                if i == j {
                    u += &(ty * &sx.adjoint()).scale(s.complex());
                }
            }
        }
        let a = q.random_element(&mut s, &all);
        let blocks = |i: usize| Some(a.block_or_zero(b, i));
        let ax = nat_component(b, &blocks, &x).unwrap();
        let ay = nat_component(b, &blocks, &y).unwrap();
        let lhs = &u * &ax;
        prop_assert!(lhs.dist(&(&ay * &u)) <= 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn corruptions_are_detected(seed in any::<u64>(), which in 0usize..3) {
        let b = match which {
            0 => gen_pointed(3, 1).unwrap(),
            1 => gen_finite_group(&GroupPresentation::s3().unwrap(), true).unwrap(),
            _ => gen_suq2(0.5, 3).unwrap(),
        };
        let mut s = Sampler::new(seed);
        let mut c = b.clone();
        let idx = s.below(c.n_scalars());
        let phase = s.angle();
        c.perturb_scalar(idx, C64::new(phase.cos(), phase.sin()) * 1e-3);
        prop_assert!(!validate_bundle(&c, tol()).pass(), "scalar {idx} undetected");
    }
}

#[test]
fn reconstructed_trivial_element_matches_counit() {
    let q = reconstruct(&gen_pointed(4, 1).unwrap(), tol()).unwrap();
    let e = AqgElement::block_unit(&q.bundle, q.bundle.unit);
    assert_eq!(q.counit(&e), ONE);
}
