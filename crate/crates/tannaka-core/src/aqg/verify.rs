//! Numerical audit of the quantum group axioms.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Aqg, AqgElement, PairElement, Side};
use crate::bundle::compare;
use crate::legs;
use crate::linalg::{eigh, kron, span_rank, CMatrix, Tolerance};
use crate::report::Report;
use crate::sample::Sampler;

/// Sampling parameters for [`Aqg::verify_axioms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub n_samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { n_samples: 3, seed: 42 }
    }
}

impl Aqg {
    /// `(Δ⊗ι)(X)` at `(i, j, l)`; needs `(i, j)` admissible unless `X` is finitely supported.
    pub fn delta_leg1(&self, x: &PairElement, i: usize, j: usize, l: usize) -> CMatrix {
        let (di, dj, dl) = (self.dim(i), self.dim(j), self.dim(l));
        let id = CMatrix::identity(dl);
        let mut out = CMatrix::zeros(di * dj * dl, di * dj * dl);
        for (k, vs) in self.bundle.channels(i, j) {
            if let Some(xk) = x.get(k, l) {
                for v in vs {
                    let w = kron(v, &id);
                    out += &(&(&w * xk) * &w.adjoint());
                }
            }
        }
        out
    }

    /// `(ι⊗Δ)(X)` at `(i, j, l)`.
    pub fn delta_leg2(&self, x: &PairElement, i: usize, j: usize, l: usize) -> CMatrix {
        let (di, dj, dl) = (self.dim(i), self.dim(j), self.dim(l));
        let id = CMatrix::identity(di);
        let mut out = CMatrix::zeros(di * dj * dl, di * dj * dl);
        for (k, vs) in self.bundle.channels(j, l) {
            if let Some(xk) = x.get(i, k) {
                for v in vs {
                    let w = kron(&id, v);
                    out += &(&(&w * xk) * &w.adjoint());
                }
            }
        }
        out
    }

    /// `T₁(X)`, extending `a ⊗ b ↦ Δ(a)(b⊗1)`, on every loaded pair.
    pub fn t1(&self, x: &PairElement) -> PairElement {
        let mut blocks = BTreeMap::new();
        for i in self.labels() {
            for j in self.labels() {
                let y = legs::contract_13(&self.delta_leg1(x, i, j, i), self.dim(i), self.dim(j));
                blocks.insert((i, j), y);
            }
        }
        PairElement { blocks }.prune(0.0)
    }

    /// `T₂(X)`, extending `a ⊗ b ↦ Δ(a)(1⊗b)`, on every loaded pair.
    pub fn t2(&self, x: &PairElement) -> PairElement {
        let mut blocks = BTreeMap::new();
        for i in self.labels() {
            for j in self.labels() {
                let y = legs::contract_23(&self.delta_leg1(x, i, j, j), self.dim(i), self.dim(j));
                blocks.insert((i, j), y);
            }
        }
        PairElement { blocks }.prune(0.0)
    }

    /// `T₁⁻¹(a⊗b) = ((ι⊗S⁻¹)Δ^op(b))(1⊗a)`.
    pub fn t1_inverse(&self, a: &AqgElement, b: &AqgElement) -> PairElement {
        let bd = &self.bundle;
        let mut blocks = BTreeMap::new();
        for (&q, aq) in &a.blocks {
            let qb = bd.dual[q];
            for p in self.labels() {
                let d_op = self.flip_block(&self.delta_block(b, qb, p), p, qb);
                let s = |m: &CMatrix| self.antipode_inv_block(m, q);
                let y = legs::map_second(&d_op, self.dim(p), self.dim(qb), self.dim(q), &s);
                blocks.insert((p, q), &y * &kron(&CMatrix::identity(self.dim(p)), aq));
            }
        }
        PairElement { blocks }.prune(0.0)
    }

    /// `T₂⁻¹(a⊗b) = ((ι⊗S)Δ(a))(1⊗b)`.
    pub fn t2_inverse(&self, a: &AqgElement, b: &AqgElement) -> PairElement {
        let bd = &self.bundle;
        let mut blocks = BTreeMap::new();
        for (&q, bq) in &b.blocks {
            let qb = bd.dual[q];
            for p in self.labels() {
                let s = |m: &CMatrix| self.antipode_block(m, q);
                let y = legs::map_second(&self.delta_block(a, p, qb), self.dim(p), self.dim(qb), self.dim(q), &s);
                blocks.insert((p, q), &y * &kron(&CMatrix::identity(self.dim(p)), bq));
            }
        }
        PairElement { blocks }.prune(0.0)
    }

    /// Coordinates of a pair element, block by block over all loaded pairs.
    fn pair_coords(&self, x: &PairElement) -> CMatrix {
        let mut v = Vec::new();
        for i in self.labels() {
            for j in self.labels() {
                v.extend_from_slice(x.block_or_zero(&self.bundle, i, j).data());
            }
        }
        CMatrix::column(v)
    }

    /// Run every axiom check with tolerances `tol` on `n_samples` seeded samples.
    pub fn verify_axioms(&self, tol: Tolerance, n_samples: usize, seed: u64) -> Report {
        let mut rep = Report::new();
        let mut s = Sampler::new(seed);
        let b = &self.bundle;
        let all: Vec<usize> = self.labels().collect();
        let core = self.core.clone();

        // Coassociativity on every triple where both sides have all their channels loaded.
        for _ in 0..n_samples {
            let a = self.random_element(&mut s, &all);
            let da = self.delta(&a);
            for i in self.labels() {
                for j in self.labels() {
                    for l in self.labels() {
                        if !(b.admissible(i, j) && b.admissible(j, l)) {
                            rep.skip("coassociativity", b.loc3(i, j, l), "summands leave the window");
                            continue;
                        }
                        let lhs = self.delta_leg1(&da, i, j, l);
                        let rhs = self.delta_leg2(&da, i, j, l);
                        compare(&mut rep, tol, "coassociativity", b.loc3(i, j, l), &lhs, &rhs);
                    }
                }
            }
        }

        for _ in 0..n_samples {
            let a = self.random_element(&mut s, &all);
            let c = self.random_element(&mut s, &all);
            let eps = self.counit(&a);
            let ac = a.mul(&c);
            for n in self.labels() {
                let loc = b.labels[n].clone();
                let cn = c.block_or_zero(b, n);
                let acn = ac.block_or_zero(b, n);
                // (ε⊗ι)(Δ(a)(1⊗c)) = ac and (ι⊗ε)(Δ(a)(c⊗1)) = ac.
                let lhs = &self.delta_block(&a, b.unit, n) * &cn;
                compare(&mut rep, tol, "counit-left", loc.clone(), &lhs, &acn);
                let lhs = &self.delta_block(&a, n, b.unit) * &cn;
                compare(&mut rep, tol, "counit-right", loc.clone(), &lhs, &acn);

                // m(S⊗ι)(Δ(a)(1⊗c)) = ε(a)c and m(ι⊗S)((c⊗1)Δ(a)) = ε(a)c.
                let nb = b.dual[n];
                let (dn, dnb) = (self.dim(n), self.dim(nb));
                let x = &self.delta_block(&a, nb, n) * &kron(&CMatrix::identity(dnb), &cn);
                let sx = legs::map_first(&x, dnb, dn, dn, &|m: &CMatrix| self.antipode_block(m, n));
                compare(&mut rep, tol, "antipode-left", loc.clone(), &legs::multiply(&sx, dn), &cn.scale(eps));
                let x = &kron(&cn, &CMatrix::identity(dnb)) * &self.delta_block(&a, n, nb);
                let sx = legs::map_second(&x, dn, dnb, dn, &|m: &CMatrix| self.antipode_block(m, n));
                compare(&mut rep, tol, "antipode-right", loc.clone(), &legs::multiply(&sx, dn), &cn.scale(eps));
            }
            let lhs = self.antipode(&a.mul(&c));
            let rhs = self.antipode(&c).mul(&self.antipode(&a));
            let scale = lhs.norm().max(rhs.norm());
            let res = lhs.dist(&rhs);
            rep.push("antipode-antimultiplicative", "sample", res, tol.accepts(res, scale));
            let back = self.antipode(&self.antipode(&a.adjoint()).adjoint());
            let res = back.dist(&a);
            rep.push("antipode-star", "sample", res, tol.accepts(res, a.norm()));
        }

        self.check_t_maps(&mut rep, tol, &mut s);
        self.check_f(&mut rep, tol, &mut s, n_samples);
        self.check_haar(&mut rep, tol, &mut s, n_samples, &core);

        // *-compatibility and multiplicativity of Δ.
        for _ in 0..n_samples {
            let a = self.random_element(&mut s, &all);
            let c = self.random_element(&mut s, &all);
            let ac = a.mul(&c);
            let astar = a.adjoint();
            for i in self.labels() {
                for j in self.labels() {
                    let da = self.delta_block(&a, i, j);
                    compare(&mut rep, tol, "delta-star", b.loc2(i, j), &self.delta_block(&astar, i, j), &da.adjoint());
                    let prod = &da * &self.delta_block(&c, i, j);
                    compare(&mut rep, tol, "delta-multiplicative", b.loc2(i, j), &self.delta_block(&ac, i, j), &prod);
                }
            }
        }
        rep
    }

    fn check_t_maps(&self, rep: &mut Report, tol: Tolerance, s: &mut Sampler) {
        let core = self.core.clone();
        let a = self.random_element(s, &core);
        let c = self.random_element(s, &core);
        let ac = PairElement::tensor(&a, &c);
        let scale = ac.norm();
        let x = self.t1(&self.t1_inverse(&a, &c));
        let res = x.dist(&ac);
        rep.push("t1-inverse-formula", "core sample", res, tol.accepts(res, scale));
        let x = self.t2(&self.t2_inverse(&a, &c));
        let res = x.dist(&ac);
        rep.push("t2-inverse-formula", "core sample", res, tol.accepts(res, scale));

        if !self.is_finite() {
            rep.skip("t-bijective", "A ⊗ A", "full matrices need a finite bundle");
            return;
        }
        let n = self.bundle.algebra_dim();
        let mut cols = [Vec::new(), Vec::new(), Vec::new(), Vec::new()];
        // Columns follow the coordinate order of `pair_coords`.
        for i in self.labels() {
            for j in self.labels() {
                let (di, dj) = (self.dim(i), self.dim(j));
                for r in 0..di * dj {
                    for c in 0..di * dj {
                        let x = AqgElement::matrix_unit(&self.bundle, i, r / dj, c / dj);
                        let y = AqgElement::matrix_unit(&self.bundle, j, r % dj, c % dj);
                        let xy = PairElement::tensor(&x, &y);
                        cols[0].push(self.pair_coords(&self.t1(&xy)));
                        cols[1].push(self.pair_coords(&self.t1_inverse(&x, &y)));
                        cols[2].push(self.pair_coords(&self.t2(&xy)));
                        cols[3].push(self.pair_coords(&self.t2_inverse(&x, &y)));
                    }
                }
            }
        }
        let id = CMatrix::identity(n * n);
        for (name, t, ti) in [("t1", 0, 1), ("t2", 2, 3)] {
            let mt = CMatrix::hstack(&cols[t]);
            let mti = CMatrix::hstack(&cols[ti]);
            let deficiency = (n * n - span_rank(&cols[t], tol)) as f64;
            rep.push(&alloc::format!("{name}-bijective"), "rank deficiency", deficiency, deficiency == 0.0);
            compare(rep, tol, &alloc::format!("{name}-inverse-matrix"), "T T⁻¹", &(&mt * &mti), &id);
            compare(rep, tol, &alloc::format!("{name}-inverse-matrix"), "T⁻¹ T", &(&mti * &mt), &id);
        }
    }

    fn check_f(&self, rep: &mut Report, tol: Tolerance, s: &mut Sampler, n_samples: usize) {
        let b = &self.bundle;
        for i in self.labels() {
            let loc = b.labels[i].clone();
            let (fi, fii) = (self.f.block(i), self.f_inv.block(i));
            let (t, ti) = (fi.trace(), fii.trace());
            rep.push("f-trace", loc.clone(), (t - ti).norm(), tol.close_scalar(t, ti));
            match eigh(fi, tol) {
                Ok((ev, _)) => {
                    let m = ev.iter().copied().fold(f64::INFINITY, f64::min);
                    rep.push("f-positive", loc.clone(), (-m).max(0.0), m > tol.absolute);
                }
                Err(_) => rep.push("f-positive", loc.clone(), fi.hermitian_residual(), false),
            }
        }
        let sf = self.antipode_multiplier(&self.f);
        for i in self.labels() {
            compare(rep, tol, "f-antipode", b.labels[i].clone(), sf.block(i), self.f_inv.block(i));
        }
        for i in self.labels() {
            for j in self.labels() {
                if let Ok(d) = self.delta_multiplier_block(&self.f, i, j) {
                    compare(rep, tol, "f-grouplike", b.loc2(i, j), &d, &kron(self.f.block(i), self.f.block(j)));
                }
            }
        }
        let all: Vec<usize> = self.labels().collect();
        for _ in 0..n_samples {
            let a = self.random_element(s, &all);
            let s2 = self.antipode(&self.antipode(&a));
            for (i, x) in &a.blocks {
                let rhs = &(self.f.block(*i) * x) * self.f_inv.block(*i);
                compare(rep, tol, "f-antipode-square", b.labels[*i].clone(), s2.get(*i).unwrap(), &rhs);
            }
        }
    }

    fn check_haar(&self, rep: &mut Report, tol: Tolerance, s: &mut Sampler, n_samples: usize, core: &[usize]) {
        let b = &self.bundle;
        for _ in 0..n_samples {
            let a = self.random_element(s, core);
            let c = self.random_element(s, core);
            let phi = self.haar(&a, Side::Left);
            let psi = self.haar(&a, Side::Right);
            // (ι⊗φ)(Δ(a)(c⊗1)) = φ(a)c.
            let Ok(x) = self.delta_mult(&a, &c, Side::Right) else {
                rep.skip("haar-left", "core sample", "summands leave the window");
                continue;
            };
            for (&n, cn) in &c.blocks {
                let mut lhs = CMatrix::zeros(self.dim(n), self.dim(n));
                for ((m, j), blk) in &x.blocks {
                    if *m == n {
                        lhs += &legs::slice_second(blk, self.dim(n), self.dim(*j), &self.left_density[*j]);
                    }
                }
                compare(rep, tol, "haar-left", b.labels[n].clone(), &lhs, &cn.scale(phi));
            }
            // (ψ⊗ι)((1⊗c)Δ(a)) = ψ(a)c.
            for (&n, cn) in &c.blocks {
                let mut lhs = CMatrix::zeros(self.dim(n), self.dim(n));
                for i in self.labels() {
                    if !b.channels(i, n).any(|(k, _)| a.get(k).is_some()) {
                        continue;
                    }
                    let y = &kron(&CMatrix::identity(self.dim(i)), cn) * &self.delta_block(&a, i, n);
                    lhs += &legs::slice_first(&y, self.dim(i), self.dim(n), &self.right_density[i]);
                }
                compare(rep, tol, "haar-right", b.labels[n].clone(), &lhs, &cn.scale(psi));
            }
            // Positivity on a*a.
            let p = self.haar(&a.adjoint().mul(&a), Side::Left);
            rep.push("haar-positive", "sample", p.im.abs() + (-p.re).max(0.0), p.re > 0.0 && tol.accepts(p.im.abs(), p.re));
        }

        // Faithfulness: the Gram matrix φ(e_x* e_y) on the core is positive definite.
        let mut basis = Vec::new();
        for &i in core {
            for x in 0..self.dim(i) {
                for y in 0..self.dim(i) {
                    basis.push(AqgElement::matrix_unit(b, i, x, y));
                }
            }
        }
        let g = CMatrix::from_fn(basis.len(), basis.len(), |x, y| self.haar(&basis[x].adjoint().mul(&basis[y]), Side::Left));
        match eigh(&g, tol) {
            Ok((ev, _)) => {
                let m = ev.iter().copied().fold(f64::INFINITY, f64::min);
                rep.push("haar-faithful", "core Gram", (-m).max(0.0), m > tol.absolute);
            }
            Err(_) => rep.push("haar-faithful", "core Gram", g.hermitian_residual(), false),
        }

        if self.is_finite() {
            for (side, name) in [(Side::Left, "haar-unique-left"), (Side::Right, "haar-unique-right")] {
                match self.invariant_functionals(side) {
                    Ok(v) => rep.push(name, "invariant functionals", (v.len() as f64 - 1.0).abs(), v.len() == 1),
                    Err(_) => rep.push(name, "invariant functionals", f64::NAN, false),
                }
            }
        } else {
            rep.skip("haar-unique", "A", "uniqueness needs a finite bundle");
        }
    }
}
