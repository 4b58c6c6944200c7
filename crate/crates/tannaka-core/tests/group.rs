use tannaka_core::aqg::{reconstruct, Aqg};
use tannaka_core::examples::{gen_finite_group, gen_graded, gen_pointed, gen_suq2, GroupPresentation};
use tannaka_core::group::*;
use tannaka_core::rep::{irrep, tensor_rep};
use tannaka_core::{Error, Tolerance};

fn tol() -> Tolerance {
    Tolerance::default()
}

fn group(name: &str) -> (GroupPresentation, Aqg) {
    let p = GroupPresentation::builtin(name).unwrap();
    let q = reconstruct(&gen_finite_group(&p, false).unwrap(), tol()).unwrap();
    (p, q)
}

#[test]
fn intrinsic_group_recovers_the_input_group() {
    for name in ["Z2", "Z5", "S3", "D4", "Q8"] {
        let (p, q) = group(name);
        let g = grouplikes(&q, tol()).unwrap();
        assert!(g.report.pass(), "{name}: {:#?}", g.report.failures().take(3).collect::<Vec<_>>());
        assert_eq!(g.order(), p.order, "{name}");
        assert!(is_group_table(&g.table, g.identity));
        assert!(find_isomorphism(&g.table, &p.table).is_some(), "{name}");
        // Independent oracle: every grouplike acts in each irrep as the matrix of one group
        // element, and distinct grouplikes hit distinct elements.
        let mut hit = vec![false; p.order];
        for x in &g.elements {
            let h = (0..p.order)
                .find(|&h| p.irreps.iter().enumerate().all(|(i, ir)| x.block(i).dist(&ir.matrices[h]) < 1e-9))
                .expect(name);
            assert!(!hit[h], "{name}");
            hit[h] = true;
        }
    }
}

#[test]
fn s3_span_ranks_and_irreps() {
    let (_, q) = group("S3");
    let c = cocommutative_check(&q, tol()).unwrap();
    assert!(c.cocommutative && c.residual < 1e-10);
    assert_eq!(c.span_ranks, Some(vec![1, 1, 4]));
    assert!(c.span_full);
    let g = grouplikes(&q, tol()).unwrap();
    let rep = irreps_bijection_check(&q, &g, tol()).unwrap();
    assert!(rep.pass(), "{:#?}", rep.failures().collect::<Vec<_>>());
    let std = irrep(&q, 2);
    let (u, rep) = rep_to_group_rep(&q, &std, &g, tol()).unwrap();
    assert!(rep.pass(), "{:#?}", rep.failures().collect::<Vec<_>>());
    assert_eq!(u.len(), 6);
    let pp = tensor_rep(&q, &std, &irrep(&q, 1)).unwrap();
    assert!(group_rep_monoidal_residual(&q, &std, &pp, &g).unwrap() < 1e-10);
}

#[test]
fn commutative_examples() {
    for n in [2, 3, 5] {
        let q = reconstruct(&gen_pointed(n, 1).unwrap(), tol()).unwrap();
        let g = grouplikes(&q, tol()).unwrap();
        assert!(g.report.pass());
        assert_eq!(g.order(), n);
        let zn = GroupPresentation::cyclic(n).unwrap();
        assert!(find_isomorphism(&g.table, &zn.table).is_some());
    }
    // Functions on S3: grouplikes are the one-dimensional representations.
    let q = reconstruct(&gen_graded(&GroupPresentation::s3().unwrap()).unwrap(), tol()).unwrap();
    let c = cocommutative_check(&q, tol()).unwrap();
    assert!(!c.cocommutative && c.span_ranks.is_none());
    let g = grouplikes(&q, tol()).unwrap();
    assert_eq!(g.order(), 2);
}

#[test]
fn isomorphism_search() {
    let d4 = GroupPresentation::d4().unwrap();
    let q8 = GroupPresentation::q8().unwrap();
    let z8 = GroupPresentation::cyclic(8).unwrap();
    assert!(find_isomorphism(&d4.table, &q8.table).is_none());
    assert!(find_isomorphism(&d4.table, &z8.table).is_none());
    assert!(find_isomorphism(&q8.table, &q8.table).is_some());
    assert_eq!(order_statistics(&q8.table).get(&4), Some(&6));
    assert_eq!(order_statistics(&d4.table).get(&2), Some(&5));
    let mut bad = d4.table.clone();
    bad[1][1] = bad[1][2];
    assert!(!is_group_table(&bad, 0));
}

#[test]
fn windows_are_rejected() {
    let q = reconstruct(&gen_suq2(0.5, 4).unwrap(), tol()).unwrap();
    assert!(matches!(grouplikes(&q, tol()), Err(Error::NotFinite)));
}
