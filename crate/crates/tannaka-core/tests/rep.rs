use tannaka_core::aqg::{reconstruct, Aqg};
use tannaka_core::category::ObjectDecomp;
use tannaka_core::examples::{gen_finite_group, gen_pointed, gen_suq2, GroupPresentation};
use tannaka_core::linalg::{orthonormalize, CMatrix, C64};
use tannaka_core::rep::*;
use tannaka_core::sample::Sampler;
use tannaka_core::Tolerance;

fn aqg(b: &tannaka_core::CategoryBundle) -> Aqg {
    reconstruct(b, Tolerance::default()).unwrap()
}

fn s3() -> (GroupPresentation, Aqg) {
    let p = GroupPresentation::s3().unwrap();
    let q = aqg(&gen_finite_group(&p, false).unwrap());
    (p, q)
}

fn random_unitary(s: &mut Sampler, n: usize) -> CMatrix {
    let cols: Vec<CMatrix> = (0..n).map(|_| CMatrix::column(s.vector(n))).collect();
    CMatrix::hstack(&orthonormalize(&cols, Tolerance::default()))
}

/// A direct sum of 1–3 irreducibles drawn from `labels`, in a random orthonormal basis.
fn random_rep(q: &Aqg, s: &mut Sampler, labels: &[usize]) -> Representation {
    let parts: Vec<Representation> = (0..1 + s.below(3)).map(|_| irrep(q, labels[s.below(labels.len())])).collect();
    let sum = Representation::direct_sum(&parts);
    let u = random_unitary(s, sum.space_dim());
    Representation::new(q, sum.decomp.conjugate_by(&u)).unwrap()
}

#[test]
fn s3_std_squared_matches_character_inner_products() {
    let (p, q) = s3();
    let std = q.bundle.index_of("std").unwrap();
    let t = tensor_rep(&q, &irrep(&q, std), &irrep(&q, std)).unwrap();
    let chi_std = p.character(std);
    for k in 0..p.irreps.len() {
        let chi_k = p.character(k);
        let m: C64 = chi_std.iter().zip(&chi_k).map(|(a, b)| a * a * b.conj()).sum::<C64>() / p.order as f64;
        let got = t.multiset().get(&k).copied().unwrap_or(0);
        assert!((m.re - got as f64).abs() < 1e-10, "label {k}");
    }
    let (ms, _) = decompose_rep(&q, &t).unwrap();
    assert_eq!(ms.values().sum::<usize>(), 3);
}

#[test]
fn schur_and_multiplicity_counts() {
    let (_, q) = s3();
    assert_eq!(hom_reps(&q, &irrep(&q, 2), &irrep(&q, 2)).len(), 1);
    assert!(hom_reps(&q, &irrep(&q, 1), &irrep(&q, 2)).is_empty());
    let double = Representation::direct_sum(&[irrep(&q, 2), irrep(&q, 2)]);
    assert_eq!(hom_reps(&q, &double, &double).len(), 4);
}

#[test]
fn tensor_action_is_delta_then_tensor() {
    let (_, q) = s3();
    let mut s = Sampler::new(5);
    for _ in 0..3 {
        let a = random_rep(&q, &mut s, &[0, 1, 2]);
        let b = random_rep(&q, &mut s, &[0, 1, 2]);
        assert!(tensor_action_residual(&q, &a, &b).unwrap() < 1e-10);
    }
    let q = aqg(&gen_suq2(0.5, 4).unwrap());
    assert!(tensor_action_residual(&q, &irrep(&q, 1), &irrep(&q, 2)).unwrap() < 1e-10);
}

#[test]
fn tensor_product_is_associative_on_multisets() {
    let q = aqg(&gen_suq2(0.6, 5).unwrap());
    let h = irrep(&q, 1);
    let left = tensor_rep(&q, &tensor_rep(&q, &h, &h).unwrap(), &h).unwrap();
    let right = tensor_rep(&q, &h, &tensor_rep(&q, &h, &h).unwrap()).unwrap();
    assert_eq!(left.multiset(), right.multiset());
    assert!(left.decomp.is_valid(Tolerance::default()));
}

#[test]
fn pointed_z3_triple_product_is_unit() {
    let q = aqg(&gen_pointed(3, 1).unwrap());
    let one = irrep(&q, 1);
    let t = tensor_rep(&q, &tensor_rep(&q, &one, &one).unwrap(), &one).unwrap();
    assert_eq!(t.labels(), vec![0]);
}

#[test]
fn quantum_dimensions_are_q_integers() {
    let qv: f64 = 0.5;
    let q = aqg(&gen_suq2(qv, 4).unwrap());
    // [n]_q = (q^n − q^{−n}) / (q − q^{−1}).
    let qint = |n: i32| (qv.powi(n) - qv.powi(-n)) / (qv - 1.0 / qv);
    for (n, want) in [1.0, 2.5, 5.25, 10.625].into_iter().enumerate() {
        let d = dimension(&q, &irrep(&q, n));
        assert!((d - want).abs() < 1e-8, "spin {n}: {d}");
        assert!((d - qint(n as i32 + 1)).abs() < 1e-8);
        assert!(dimension_residual(&q, &irrep(&q, n)).unwrap() < 1e-8);
    }
    assert!(dimension(&q, &irrep(&q, 1)) > 2.0 + 1e-3);
}

#[test]
fn dimension_is_additive_and_multiplicative() {
    let mut s = Sampler::new(11);
    for b in [gen_suq2(0.5, 4).unwrap(), gen_finite_group(&GroupPresentation::d4().unwrap(), false).unwrap()] {
        let q = aqg(&b);
        let labels: Vec<usize> = if b.closed { q.labels().collect() } else { vec![0, 1] };
        for _ in 0..20 {
            let x = random_rep(&q, &mut s, &labels);
            let y = random_rep(&q, &mut s, &labels);
            let (dx, dy) = (dimension(&q, &x), dimension(&q, &y));
            let dxy = dimension(&q, &tensor_rep(&q, &x, &y).unwrap());
            assert!((dxy - dx * dy).abs() < 1e-8 * dxy.max(1.0));
            let sum = Representation::direct_sum(&[x, y]);
            assert!((dimension(&q, &sum) - dx - dy).abs() < 1e-9 * (dx + dy));
        }
    }
}

#[test]
fn group_dimensions_are_hilbert_dimensions() {
    for g in ["S3", "Q8", "Z5"] {
        let q = aqg(&gen_finite_group(&GroupPresentation::builtin(g).unwrap(), false).unwrap());
        for i in q.labels() {
            let p = irrep(&q, i);
            assert!((dimension(&q, &p) - q.dim(i) as f64).abs() < 1e-10);
            let c = conjugate_rep(&q, &p).unwrap();
            assert!((norm_sq(&c.r).re - q.dim(i) as f64).abs() < 1e-10);
        }
    }
}

#[test]
fn conjugates_of_random_sums_solve_the_conjugate_equations() {
    let mut s = Sampler::new(3);
    for b in [gen_suq2(0.5, 4).unwrap(), gen_finite_group(&GroupPresentation::q8().unwrap(), false).unwrap()] {
        let q = aqg(&b);
        let labels: Vec<usize> = if b.closed { q.labels().collect() } else { vec![0, 1] };
        for _ in 0..5 {
            let p = random_rep(&q, &mut s, &labels);
            let c = conjugate_rep(&q, &p).unwrap();
            assert!(conjugate_residual(&q, &p, &c) < 1e-10);
            let (rr, rbrb) = (norm_sq(&c.r).re, norm_sq(&c.rbar).re);
            let want: f64 = p.labels().iter().map(|&i| q.f.block(i).trace().re).sum();
            assert!((rr - want).abs() < 1e-9 && (rbrb - want).abs() < 1e-9);
            assert!((dimension(&q, &c.rep) - dimension(&q, &p)).abs() < 1e-9);
        }
    }
}

#[test]
fn hom_dimensions_match_fusion_rules_and_reciprocity() {
    let q = aqg(&gen_suq2(0.5, 4).unwrap());
    let b = &q.bundle;
    let mut triples = Vec::new();
    for i in q.labels() {
        for j in q.labels() {
            if b.admissible(i, j) {
                for k in q.labels() {
                    triples.push((i, j, k));
                }
            }
        }
    }
    assert!(fusion_mismatches(&q, &triples).unwrap().is_empty());
    for &(i, j, k) in &triples {
        let (ib, jb) = (b.dual[i], b.dual[j]);
        if !b.admissible(ib, k) {
            continue;
        }
        let lhs = hom_reps(&q, &irrep(&q, k), &tensor_rep(&q, &irrep(&q, i), &irrep(&q, j)).unwrap()).len();
        let rhs = hom_reps(&q, &irrep(&q, jb), &tensor_rep(&q, &irrep(&q, ib), &irrep(&q, k)).unwrap()).len();
        assert_eq!(lhs, rhs, "{i} {j} {k}");
    }
}

#[test]
fn representation_rejects_bad_isometries() {
    let (_, q) = s3();
    let d = ObjectDecomp { total_dim: 2, parts: vec![(2, CMatrix::identity(2).scale_real(2.0))] };
    assert!(Representation::new(&q, d).is_err());
}
