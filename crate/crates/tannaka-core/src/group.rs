//! Grouplike elements, the intrinsic group and cocommutativity.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::aqg::{Aqg, Multiplier};
use crate::bundle::compare;
use crate::dual::{dual_hopf, universal_corep, DualStructure, UniversalCorep};
use crate::error::{Error, Result};
use crate::hopf::basis_vec;
use crate::linalg::{eigh, hermitian_calc, kron, nullspace, orthonormalize, solve_intertwiners, span_rank, CMatrix, Spectral, Tolerance, C64, ONE};
use crate::rep::{hom_reps, irrep, tensor_rep, Representation};
use crate::report::Report;
use crate::sample::Sampler;

#[derive(Debug, Clone, PartialEq)]
pub struct IntrinsicGroup {
    pub elements: Vec<Multiplier>,
    /// `table[a][b]` is the index of `g_a g_b`.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    /// Character values `χ(ê_p)` of `Â` behind each element.
    pub characters: Vec<Vec<C64>>,
    pub report: Report,
}

impl IntrinsicGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Characters of a finite-dimensional C*-algebra given as a table: the one-dimensional blocks
/// of `Â`, found on the orthogonal complement of the commutator ideal.
fn characters(ds: &DualStructure, tol: Tolerance, seed: u64) -> Result<Vec<Vec<C64>>> {
    let d = &ds.dual;
    let n = d.dim;
    let e = |i: usize| basis_vec(n, i);
    let col = |v: Vec<C64>| CMatrix::column(v);
    // Commutator ideal, closed under multiplication on both sides.
    let mut gens = Vec::new();
    for p in 0..n {
        for r in 0..n {
            let (a, b) = (d.mul(&e(p), &e(r)), d.mul(&e(r), &e(p)));
            gens.push(col(a.iter().zip(&b).map(|(x, y)| x - y).collect()));
        }
    }
    let mut ideal = orthonormalize(&gens, tol);
    loop {
        let mut more = ideal.clone();
        for c in &ideal {
            for p in 0..n {
                more.push(col(d.mul(&e(p), c.data())));
                more.push(col(d.mul(c.data(), &e(p))));
            }
        }
        let next = orthonormalize(&more, tol);
        if next.len() == ideal.len() {
            break;
        }
        ideal = next;
    }
    // GNS coordinates: ⟨x, y⟩ = x^H G y.
    let g = CMatrix::from_fn(n, n, |x, y| d.h(&d.mul(&d.st(&e(x)), &e(y))));
    let gh = hermitian_calc(&g, Spectral::Sqrt, tol)?;
    let gih = hermitian_calc(&g, Spectral::InvSqrt, tol)?;
    let ideal_g: Vec<Vec<C64>> = ideal.iter().map(|c| (&gh * c).into_data()).collect();
    let mut rows = ideal_g.iter().map(|v| v.iter().map(|z| z.conj()).collect::<Vec<_>>());
    let comp = nullspace(n, &mut rows, tol);
    let m = comp.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let qb = CMatrix::hstack(&comp.into_iter().map(CMatrix::column).collect::<Vec<_>>());
    let mut s = Sampler::new(seed);
    for _attempt in 0..8 {
        let w = s.vector(n);
        let z: Vec<C64> = w.iter().zip(d.st(&w)).map(|(a, b)| a + b).collect();
        let lz = &(&gh * &d.left_mult(&z)) * &gih;
        let mz = &(&qb.adjoint() * &lz) * &qb;
        let (vals, vecs) = eigh(&mz, tol)?;
        let spread = vals.iter().map(|v| v.abs()).fold(1.0, f64::max);
        let distinct = vals.windows(2).all(|p| (p[1] - p[0]).abs() > 1e-6 * spread);
        if !distinct {
            continue;
        }
        let mut out = Vec::new();
        for k in 0..m {
            // Minimal idempotent direction in Â coordinates.
            let ek = (&gih * &(&qb * &vecs.col(k))).into_data();
            let ip = |x: &[C64], y: &[C64]| -> C64 {
                let gy = (&g * &CMatrix::column(y.to_vec())).into_data();
                x.iter().zip(gy).map(|(a, b)| a.conj() * b).sum()
            };
            let nrm = ip(&ek, &ek);
            let chi: Vec<C64> = (0..n).map(|p| ip(&ek, &d.mul(&e(p), &ek)) / nrm).collect();
            out.push(chi);
        }
        return Ok(out);
    }
    Err(Error::InconsistentSolve("could not separate characters".into()))
}

/// `g = (ι⊗χ)U` as a multiplier.
fn grouplike_from_character(q: &Aqg, ds: &DualStructure, u: &UniversalCorep, chi: &[C64]) -> Multiplier {
    let n = ds.n();
    let coords: Vec<C64> = (0..n).map(|p| (0..n).map(|r| u.coeffs[p * n + r] * chi[r]).sum()).collect();
    Multiplier::from_element(&q.bundle, &ds.units.to_element(q, &coords))
}

/// Grouplike axioms for one multiplier.
pub fn check_grouplike(q: &Aqg, g: &Multiplier, tol: Tolerance, loc: &str, rep: &mut Report) {
    let b = &q.bundle;
    for i in q.labels() {
        let id = CMatrix::identity(q.dim(i));
        compare(rep, tol, "grouplike-unitary", format!("{loc} {}", b.labels[i]), &(&g.block(i).adjoint() * g.block(i)), &id);
        for j in q.labels() {
            match q.delta_multiplier_block(g, i, j) {
                Ok(dg) => {
                    compare(rep, tol, "grouplike-delta", format!("{loc} {}", b.loc2(i, j)), &dg, &kron(g.block(i), g.block(j)));
                }
                Err(_) => rep.skip("grouplike-delta", format!("{loc} {}", b.loc2(i, j)), "summands leave the window"),
            }
        }
    }
    let e = g.block(b.unit)[(0, 0)];
    rep.push("grouplike-counit", loc, (e - ONE).norm(), tol.close_scalar(e, ONE));
    let sg = q.antipode_multiplier(g);
    let gs = g.adjoint();
    for i in q.labels() {
        compare(rep, tol, "grouplike-antipode", format!("{loc} {}", b.labels[i]), sg.block(i), gs.block(i));
    }
}

/// Sort key that does not depend on eigenvector order: rounded block entries.
fn sort_key(g: &Multiplier) -> Vec<(i64, i64)> {
    g.blocks
        .iter()
        .flat_map(|m| m.data().iter().map(|z| (libm::round(z.re * 1e6) as i64, libm::round(z.im * 1e6) as i64)))
        .collect()
}

/// All unitary grouplikes, via the characters of the dual.
pub fn grouplikes(q: &Aqg, tol: Tolerance) -> Result<IntrinsicGroup> {
    q.require_finite()?;
    let ds = dual_hopf(q, tol)?;
    let u = universal_corep(q, &ds, tol)?;
    let chars = characters(&ds, tol, 0x6a09)?;
    let mut rep = Report::new();
    let d = &ds.dual;
    let n = d.dim;
    let mut items: Vec<(Multiplier, Vec<C64>)> = Vec::new();
    for (k, chi) in chars.into_iter().enumerate() {
        let loc = format!("χ{k}");
        let one = crate::hopf::vec_dist(&[chi.iter().zip(&d.unit).map(|(a, b)| a * b).sum()], &[ONE]);
        rep.push("character-unital", loc.as_str(), one, tol.accepts(one, 1.0));
        for p in 0..n {
            let sp: C64 = d.st(&basis_vec(n, p)).iter().zip(&chi).map(|(a, b)| a * b).sum();
            rep.push("character-star", loc.as_str(), (sp - chi[p].conj()).norm(), tol.close_scalar(sp, chi[p].conj()));
            for r in 0..n {
                let pr: C64 = d.mul(&basis_vec(n, p), &basis_vec(n, r)).iter().zip(&chi).map(|(a, b)| a * b).sum();
                let want = chi[p] * chi[r];
                rep.push("character-multiplicative", loc.as_str(), (pr - want).norm(), tol.close_scalar(pr, want));
            }
        }
        let g = grouplike_from_character(q, &ds, &u, &chi);
        check_grouplike(q, &g, tol, &loc, &mut rep);
        items.push((g, chi));
    }
    let id = Multiplier::identity(&q.bundle);
    items.sort_by(|x, y| {
        let (ix, iy) = (x.0.dist(&id) < 1e-6, y.0.dist(&id) < 1e-6);
        iy.cmp(&ix).then_with(|| sort_key(&x.0).cmp(&sort_key(&y.0)))
    });
    let (elements, characters): (Vec<_>, Vec<_>) = items.into_iter().unzip();
    if elements.is_empty() || elements[0].dist(&id) > 1e-6 {
        return Err(Error::InconsistentSolve("no identity among grouplikes".into()));
    }
    let m = elements.len();
    let mut table = vec![vec![0; m]; m];
    for a in 0..m {
        for b in 0..m {
            let p = elements[a].mul(&elements[b]);
            let (best, dist) = (0..m)
                .map(|c| (c, elements[c].dist(&p)))
                .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
            if !tol.accepts(dist, p.norm()) {
                return Err(Error::InconsistentSolve(format!("product g{a}·g{b} is not a grouplike")));
            }
            table[a][b] = best;
        }
    }
    let res = if is_group_table(&table, 0) { 0.0 } else { 1.0 };
    rep.push("group-table", "G", res, res == 0.0);
    Ok(IntrinsicGroup { elements, table, identity: 0, characters, report: rep })
}

/// Associativity, identity and inverses, checked exhaustively.
pub fn is_group_table(t: &[Vec<usize>], e: usize) -> bool {
    let n = t.len();
    if t.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return false;
    }
    for a in 0..n {
        if t[e][a] != a || t[a][e] != a || !(0..n).any(|b| t[a][b] == e && t[b][a] == e) {
            return false;
        }
        for b in 0..n {
            for c in 0..n {
                if t[t[a][b]][c] != t[a][t[b][c]] {
                    return false;
                }
            }
        }
    }
    true
}

fn identity_of(t: &[Vec<usize>]) -> usize {
    (0..t.len()).find(|&e| (0..t.len()).all(|a| t[e][a] == a)).unwrap_or(0)
}

pub fn element_order(t: &[Vec<usize>], g: usize) -> usize {
    let e = identity_of(t);
    let (mut x, mut k) = (g, 1);
    while x != e {
        x = t[x][g];
        k += 1;
    }
    k
}

/// How many elements have each order.
pub fn order_statistics(t: &[Vec<usize>]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for g in 0..t.len() {
        *m.entry(element_order(t, g)).or_insert(0) += 1;
    }
    m
}

pub fn is_abelian(t: &[Vec<usize>]) -> bool {
    (0..t.len()).all(|a| (0..t.len()).all(|b| t[a][b] == t[b][a]))
}

/// An isomorphism `φ` with `φ(t_a[x][y]) = t_b[φ(x)][φ(y)]`, if one exists. Backtracks over the
/// images of a greedy generating set.
pub fn find_isomorphism(ta: &[Vec<usize>], tb: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = ta.len();
    if tb.len() != n || order_statistics(ta) != order_statistics(tb) || is_abelian(ta) != is_abelian(tb) {
        return None;
    }
    let (ea, eb) = (identity_of(ta), identity_of(tb));
    let closure = |gens: &[usize]| -> Vec<bool> {
        let mut seen = vec![false; n];
        seen[ea] = true;
        let mut stack = vec![ea];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = ta[x][g];
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    };
    let mut gens = Vec::new();
    while let Some(g) = closure(&gens).iter().position(|s| !s) {
        gens.push(g);
    }
    let extend = |imgs: &[usize]| -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; n];
        map[ea] = eb;
        let mut stack = vec![ea];
        while let Some(x) = stack.pop() {
            for (g, &h) in gens.iter().zip(imgs) {
                let y = ta[x][*g];
                let img = tb[map[x]][h];
                if map[y] == usize::MAX {
                    map[y] = img;
                    stack.push(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        let mut hit = vec![false; n];
        for &v in &map {
            if hit[v] {
                return None;
            }
            hit[v] = true;
        }
        let hom = (0..n).all(|x| (0..n).all(|y| map[ta[x][y]] == tb[map[x]][map[y]]));
        hom.then_some(map)
    };
    fn search(
        k: usize,
        gens: &[usize],
        imgs: &mut Vec<usize>,
        ta: &[Vec<usize>],
        tb: &[Vec<usize>],
        extend: &dyn Fn(&[usize]) -> Option<Vec<usize>>,
    ) -> Option<Vec<usize>> {
        if k == gens.len() {
            return extend(imgs);
        }
        let order = element_order(ta, gens[k]);
        for h in 0..tb.len() {
            if element_order(tb, h) == order {
                imgs.push(h);
                if let Some(m) = search(k + 1, gens, imgs, ta, tb, extend) {
                    return Some(m);
                }
                imgs.pop();
            }
        }
        None
    }
    search(0, &gens, &mut Vec::new(), ta, tb, &extend)
}

/// Outcome of [`cocommutative_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct Cocommutativity {
    pub cocommutative: bool,
    pub residual: f64,
    /// `dim span{p_i(g)}` per label; computed only when cocommutative.
    pub span_ranks: Option<Vec<usize>>,
    pub span_full: bool,
}

/// Test `Δ = Δᵒᵖ` on matrix units; when it holds, also check that the grouplikes span every
/// block.
pub fn cocommutative_check(q: &Aqg, tol: Tolerance) -> Result<Cocommutativity> {
    q.require_finite()?;
    let mut worst: f64 = 0.0;
    for k in q.labels() {
        for x in 0..q.dim(k) {
            for y in 0..q.dim(k) {
                let a = crate::aqg::AqgElement::matrix_unit(&q.bundle, k, x, y);
                for i in q.labels() {
                    for j in q.labels() {
                        let d = q.delta_block(&a, i, j);
                        let op = q.flip_block(&q.delta_block(&a, j, i), i, j);
                        worst = worst.max(d.dist(&op));
                    }
                }
            }
        }
    }
    let cocommutative = tol.accepts(worst, 1.0);
    if !cocommutative {
        return Ok(Cocommutativity { cocommutative, residual: worst, span_ranks: None, span_full: false });
    }
    let g = grouplikes(q, tol)?;
    let ranks: Vec<usize> = q
        .labels()
        .map(|i| span_rank(&g.elements.iter().map(|e| e.block(i).clone()).collect::<Vec<_>>(), tol))
        .collect();
    let span_full = ranks.iter().zip(q.labels()).all(|(r, i)| *r == q.dim(i) * q.dim(i));
    Ok(Cocommutativity { cocommutative, residual: worst, span_ranks: Some(ranks), span_full })
}

/// `u_π(g) = π(g)` for every element of `G`, with homomorphism, unitarity and fullness checks.
pub fn rep_to_group_rep(q: &Aqg, p: &Representation, g: &IntrinsicGroup, tol: Tolerance) -> Result<(Vec<CMatrix>, Report)> {
    q.require_finite()?;
    let u: Vec<CMatrix> = g.elements.iter().map(|x| p.act_multiplier(q, x)).collect();
    let mut rep = Report::new();
    let n = p.space_dim();
    let id = CMatrix::identity(n);
    compare(&mut rep, tol, "group-rep-identity", "e", &u[g.identity], &id);
    for (a, ua) in u.iter().enumerate() {
        compare(&mut rep, tol, "group-rep-unitary", format!("g{a}"), &(&ua.adjoint() * ua), &id);
        for (b, ub) in u.iter().enumerate() {
            compare(&mut rep, tol, "group-rep-homomorphism", format!("g{a},g{b}"), &u[g.table[a][b]], &(ua * ub));
        }
    }
    let commutant = solve_intertwiners(&u, &u, tol).len();
    let endo = hom_reps(q, p, p).len();
    rep.push("group-rep-full", "commutant", (commutant as f64 - endo as f64).abs(), commutant == endo);
    Ok((u, rep))
}

/// `u_{π×π′}(g) = u_π(g) ⊗ u_π′(g)`.
pub fn group_rep_monoidal_residual(q: &Aqg, p: &Representation, pp: &Representation, g: &IntrinsicGroup) -> Result<f64> {
    let t = tensor_rep(q, p, pp)?;
    Ok(g
        .elements
        .iter()
        .map(|x| t.act_multiplier(q, x).dist(&kron(&p.act_multiplier(q, x), &pp.act_multiplier(q, x))))
        .fold(0.0, f64::max))
}

/// For cocommutative `q`: the `u_{p_i}` are pairwise inequivalent irreducibles and
/// `Σ (dim u_{p_i})² = |G|`.
pub fn irreps_bijection_check(q: &Aqg, g: &IntrinsicGroup, tol: Tolerance) -> Result<Report> {
    let mut rep = Report::new();
    let us: Vec<Vec<CMatrix>> = q
        .labels()
        .map(|i| rep_to_group_rep(q, &irrep(q, i), g, tol).map(|x| x.0))
        .collect::<Result<_>>()?;
    for i in q.labels() {
        for j in q.labels() {
            let h = solve_intertwiners(&us[i], &us[j], tol).len();
            let want = usize::from(i == j);
            rep.push("group-irreps-inequivalent", q.bundle.loc2(i, j), (h as f64 - want as f64).abs(), h == want);
        }
    }
    let sum: usize = q.labels().map(|i| q.dim(i) * q.dim(i)).sum();
    rep.push("group-irreps-exhaust", "Σ d²", (sum as f64 - g.order() as f64).abs(), sum == g.order());
    Ok(rep)
}
