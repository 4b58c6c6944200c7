//! Finite-dimensional Hopf *-algebras as dense structure-constant tables, plus multi-leg
//! tensor arithmetic over several such tables.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{eigh, span_rank, CMatrix, Tolerance, C64, ONE, ZERO};
use crate::report::Report;

/// A Hopf *-algebra on `ℂᴺ` with a distinguished positive functional.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfTable {
    pub dim: usize,
    /// `mult[(a·N + b)·N + c]`: coefficient of `e_c` in `e_a e_b`.
    pub mult: Vec<C64>,
    pub unit: Vec<C64>,
    /// `comult[(a·N + b)·N + c]`: coefficient of `e_b ⊗ e_c` in `Δ(e_a)`.
    pub comult: Vec<C64>,
    pub counit: Vec<C64>,
    /// Column `a` is `S(e_a)`.
    pub antipode: CMatrix,
    /// Column `a` is `e_a*`; extended conjugate-linearly.
    pub star: CMatrix,
    /// Values of the invariant functional on the basis.
    pub haar: Vec<C64>,
}

fn dot(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn vdist(x: &[C64], y: &[C64]) -> f64 {
    libm::sqrt(x.iter().zip(y).map(|(a, b)| (a - b).norm_sqr()).sum())
}

fn vnorm(x: &[C64]) -> f64 {
    libm::sqrt(x.iter().map(|a| a.norm_sqr()).sum())
}

pub fn basis_vec(n: usize, i: usize) -> Vec<C64> {
    let mut v = vec![ZERO; n];
    v[i] = ONE;
    v
}

impl HopfTable {
    pub fn mul(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let n = self.dim;
        let mut out = vec![ZERO; n];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| **v != ZERO) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| **v != ZERO) {
                let row = &self.mult[(a * n + b) * n..(a * n + b + 1) * n];
                let c = xa * yb;
                for (o, m) in out.iter_mut().zip(row) {
                    *o += c * m;
                }
            }
        }
        out
    }

    pub fn comul(&self, x: &[C64]) -> Vec<C64> {
        let n2 = self.dim * self.dim;
        let mut out = vec![ZERO; n2];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| **v != ZERO) {
            for (o, m) in out.iter_mut().zip(&self.comult[a * n2..(a + 1) * n2]) {
                *o += xa * m;
            }
        }
        out
    }

    pub fn eps(&self, x: &[C64]) -> C64 {
        dot(&self.counit, x)
    }

    pub fn h(&self, x: &[C64]) -> C64 {
        dot(&self.haar, x)
    }

    pub fn s(&self, x: &[C64]) -> Vec<C64> {
        (&self.antipode * &CMatrix::column(x.to_vec())).into_data()
    }

    pub fn st(&self, x: &[C64]) -> Vec<C64> {
        let xc: Vec<C64> = x.iter().map(|v| v.conj()).collect();
        (&self.star * &CMatrix::column(xc)).into_data()
    }

    fn basis(&self, i: usize) -> Vec<C64> {
        basis_vec(self.dim, i)
    }

    /// Matrix of left multiplication by `x`.
    pub fn left_mult(&self, x: &[C64]) -> CMatrix {
        let cols: Vec<CMatrix> = (0..self.dim).map(|b| CMatrix::column(self.mul(x, &self.basis(b)))).collect();
        CMatrix::hstack(&cols)
    }

    /// `Θ[b][p] = h(e_b e_p)`.
    pub fn pairing(&self) -> CMatrix {
        let n = self.dim;
        CMatrix::from_fn(n, n, |b, p| self.h(&self.mul(&self.basis(b), &self.basis(p))))
    }

    /// Check every Hopf *-algebra axiom on basis elements. Check names carry `prefix`.
    pub fn verify(&self, tol: Tolerance, prefix: &str) -> Report {
        let mut rep = Report::new();
        let n = self.dim;
        let name = |s: &str| -> String { format!("{prefix}{s}") };
        let tt = [self, self];
        let push = |rep: &mut Report, check: &str, loc: String, x: &[C64], y: &[C64]| {
            let r = vdist(x, y);
            rep.push(&name(check), loc, r, tol.accepts(r, vnorm(x).max(vnorm(y))));
        };
        let unit = self.unit.clone();
        for a in 0..n {
            let ea = self.basis(a);
            let loc = format!("e{a}");
            push(&mut rep, "unit", loc.clone(), &self.mul(&unit, &ea), &ea);
            push(&mut rep, "unit", loc.clone(), &self.mul(&ea, &unit), &ea);
            let d = self.comul(&ea);
            // Coassociativity.
            let l = map_leg(&tt, &d, 0, &|x| self.comul(x), n * n);
            let r = map_leg(&tt, &d, 1, &|x| self.comul(x), n * n);
            push(&mut rep, "coassociativity", loc.clone(), &l, &r);
            // Counit.
            let l = contract_leg(&tt, &d, 0, &|x| self.eps(x));
            let r = contract_leg(&tt, &d, 1, &|x| self.eps(x));
            push(&mut rep, "counit", loc.clone(), &l, &ea);
            push(&mut rep, "counit", loc.clone(), &r, &ea);
            // Antipode: m(S⊗ι)Δ = ε1 = m(ι⊗S)Δ.
            let want: Vec<C64> = unit.iter().map(|u| u * self.eps(&ea)).collect();
            let l = self.multiply_legs(&map_leg(&tt, &d, 0, &|x| self.s(x), n));
            let r = self.multiply_legs(&map_leg(&tt, &d, 1, &|x| self.s(x), n));
            push(&mut rep, "antipode", loc.clone(), &l, &want);
            push(&mut rep, "antipode", loc.clone(), &r, &want);
            // *-structure.
            push(&mut rep, "star-involutive", loc.clone(), &self.st(&self.st(&ea)), &ea);
            let ds = self.comul(&self.st(&ea));
            push(&mut rep, "comult-star", loc.clone(), &ds, &star_legs(&tt, &d));
            push(&mut rep, "antipode-star", loc.clone(), &self.s(&self.st(&self.s(&self.st(&ea)))), &ea);
            for b in 0..n {
                let eb = self.basis(b);
                let loc = format!("e{a},e{b}");
                let ab = self.mul(&ea, &eb);
                push(&mut rep, "comult-multiplicative", loc.clone(), &self.comul(&ab), &mul_legs(&tt, &d, &self.comul(&eb)));
                push(&mut rep, "star-antimultiplicative", loc.clone(), &self.st(&ab), &self.mul(&self.st(&eb), &self.st(&ea)));
                for c in 0..n {
                    let ec = self.basis(c);
                    push(&mut rep, "associativity", format!("e{a},e{b},e{c}"), &self.mul(&ab, &ec), &self.mul(&ea, &self.mul(&eb, &ec)));
                }
            }
        }
        let one = [ONE];
        push(&mut rep, "counit-unit", "1".into(), &[self.eps(&unit)], &one);
        let uu = tensor(&unit, &unit);
        push(&mut rep, "comult-unit", "1".into(), &self.comul(&unit), &uu);
        // Invariance of h on both sides: (ι⊗h)Δ(x) = h(x)1 and (h⊗ι)Δ(x) = h(x)1.
        for a in 0..n {
            let ea = self.basis(a);
            let d = self.comul(&ea);
            let want: Vec<C64> = unit.iter().map(|u| u * self.h(&ea)).collect();
            push(&mut rep, "haar-left-invariant", format!("e{a}"), &contract_leg(&tt, &d, 1, &|x| self.h(x)), &want);
            push(&mut rep, "haar-right-invariant", format!("e{a}"), &contract_leg(&tt, &d, 0, &|x| self.h(x)), &want);
        }
        // Faithful and positive: the Gram matrix h(e_a* e_b) is positive definite.
        let g = CMatrix::from_fn(n, n, |a, b| self.h(&self.mul(&self.st(&self.basis(a)), &self.basis(b))));
        match eigh(&g, tol) {
            Ok((ev, _)) => {
                let m = ev.iter().copied().fold(f64::INFINITY, f64::min);
                rep.push(&name("haar-faithful"), "Gram", (-m).max(0.0), m > tol.absolute);
            }
            Err(_) => rep.push(&name("haar-faithful"), "Gram", g.hermitian_residual(), false),
        }
        rep
    }

    /// `m(x ⊗ y)` on a two-leg element.
    pub fn multiply_legs(&self, x: &[C64]) -> Vec<C64> {
        let n = self.dim;
        let mut out = vec![ZERO; n];
        for (idx, v) in x.iter().enumerate().filter(|(_, v)| **v != ZERO) {
            let p = self.mul(&self.basis(idx / n), &self.basis(idx % n));
            for (o, m) in out.iter_mut().zip(p) {
                *o += v * m;
            }
        }
        out
    }

    pub fn is_commutative(&self, tol: Tolerance) -> (bool, f64) {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let (ea, eb) = (self.basis(a), self.basis(b));
                worst = worst.max(vdist(&self.mul(&ea, &eb), &self.mul(&eb, &ea)));
            }
        }
        (tol.accepts(worst, 1.0), worst)
    }

    pub fn is_cocommutative(&self, tol: Tolerance) -> (bool, f64) {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            let d = self.comul(&self.basis(a));
            let flipped: Vec<C64> = (0..n * n).map(|k| d[(k % n) * n + k / n]).collect();
            worst = worst.max(vdist(&d, &flipped));
        }
        (tol.accepts(worst, 1.0), worst)
    }

    /// The dual Hopf *-algebra in the Fourier basis `ê_p = e_p h`, i.e. `ê_p(x) = h(x e_p)`,
    /// with invariant functional `ĥ(ê_p) = ε(e_p)`. Also returns the pairing `Θ[b][p] = ê_p(e_b)`.
    pub fn dual(&self, tol: Tolerance) -> Result<(HopfTable, CMatrix)> {
        let n = self.dim;
        let theta = self.pairing();
        let inv = theta.inverse().ok_or(Error::SingularToTolerance { min_abs_eig: 0.0 })?;
        if !inv.is_finite() || !tol.accepts((&theta * &inv).dist(&CMatrix::identity(n)), 1.0) {
            return Err(Error::SingularToTolerance { min_abs_eig: 0.0 });
        }
        // A functional with values v on the basis has Fourier coordinates Θ⁻¹v.
        let coords = |v: Vec<C64>| (&inv * &CMatrix::column(v)).into_data();
        let col = |p: usize| theta.col_vec(p);
        let mut mult = vec![ZERO; n * n * n];
        for p in 0..n {
            for r in 0..n {
                // (ω₁ω₂)(e_b) = (ω₁⊗ω₂)Δ(e_b).
                let (wp, wr) = (col(p), col(r));
                let v: Vec<C64> = (0..n)
                    .map(|b| {
                        let d = self.comul(&self.basis(b));
                        let mut s = ZERO;
                        for c in 0..n {
                            for e in 0..n {
                                s += d[c * n + e] * wp[c] * wr[e];
                            }
                        }
                        s
                    })
                    .collect();
                mult[(p * n + r) * n..(p * n + r + 1) * n].copy_from_slice(&coords(v));
            }
        }
        // Δ̂(ω)(e_c ⊗ e_d) = ω(e_c e_d), then Θ⁻¹ on each leg.
        let mut comult = vec![ZERO; n * n * n];
        for p in 0..n {
            let wp = col(p);
            let vals = CMatrix::from_fn(n, n, |c, d| dot(&self.mul(&self.basis(c), &self.basis(d)), &wp));
            let co = &(&inv * &vals) * &inv.transpose();
            comult[p * n * n..(p + 1) * n * n].copy_from_slice(co.data());
        }
        let unit = coords(self.counit.clone());
        let counit: Vec<C64> = (0..n).map(|p| dot(&self.unit, &col(p))).collect();
        // Ŝ(ω) = ω∘S.
        let s_vals = &self.antipode.transpose() * &theta;
        let antipode = &inv * &s_vals;
        // ω*(x) = conj ω(S(x)*).
        let star_vals = CMatrix::from_fn(n, n, |b, p| {
            let z = self.st(&self.s(&self.basis(b)));
            dot(&z, &col(p)).conj()
        });
        let star = &inv * &star_vals;
        let haar = self.counit.clone();
        Ok((HopfTable { dim: n, mult, unit, comult, counit, antipode, star, haar }, theta))
    }
}

// Multi-leg arithmetic: an element of T₁ ⊗ … ⊗ T_k is a flat vector in row-major leg order.

fn dims_of(tables: &[&HopfTable]) -> Vec<usize> {
    tables.iter().map(|t| t.dim).collect()
}

fn decode(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for l in (0..dims.len()).rev() {
        out[l] = idx % dims[l];
        idx /= dims[l];
    }
    out
}

fn encode(ix: &[usize], dims: &[usize]) -> usize {
    ix.iter().zip(dims).fold(0, |acc, (i, d)| acc * d + i)
}

pub fn tensor(x: &[C64], y: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push(a * b);
        }
    }
    out
}

/// Product in `T₁ ⊗ … ⊗ T_k`.
pub fn mul_legs(tables: &[&HopfTable], x: &[C64], y: &[C64]) -> Vec<C64> {
    let dims = dims_of(tables);
    let total: usize = dims.iter().product();
    let mut out = vec![ZERO; total];
    let nz = |v: &[C64]| -> Vec<(Vec<usize>, C64)> {
        v.iter().enumerate().filter(|(_, c)| **c != ZERO).map(|(i, c)| (decode(i, &dims), *c)).collect()
    };
    let (xs, ys) = (nz(x), nz(y));
    for (ix, cx) in &xs {
        for (iy, cy) in &ys {
            let mut acc: Vec<(usize, C64)> = vec![(0, cx * cy)];
            for (l, t) in tables.iter().enumerate() {
                let n = t.dim;
                let row = &t.mult[(ix[l] * n + iy[l]) * n..(ix[l] * n + iy[l] + 1) * n];
                let mut next = Vec::new();
                for (pos, c) in &acc {
                    for (k, m) in row.iter().enumerate().filter(|(_, m)| **m != ZERO) {
                        next.push((pos * n + k, c * m));
                    }
                }
                acc = next;
            }
            for (pos, c) in acc {
                out[pos] += c;
            }
        }
    }
    out
}

/// Conjugate-linear `*` applied on every leg.
pub fn star_legs(tables: &[&HopfTable], x: &[C64]) -> Vec<C64> {
    let mut cur = x.iter().map(|v| v.conj()).collect::<Vec<_>>();
    for (l, t) in tables.iter().enumerate() {
        cur = map_leg(tables, &cur, l, &|v| (&t.star * &CMatrix::column(v.to_vec())).into_data(), t.dim);
    }
    cur
}

/// Apply a linear map `f : ℂ^{d_l} → ℂ^{out}` on leg `l`.
pub fn map_leg(tables: &[&HopfTable], x: &[C64], l: usize, f: &dyn Fn(&[C64]) -> Vec<C64>, out: usize) -> Vec<C64> {
    let dims = dims_of(tables);
    let pre: usize = dims[..l].iter().product();
    let post: usize = dims[l + 1..].iter().product();
    let d = dims[l];
    let mut res = vec![ZERO; pre * out * post];
    for a in 0..pre {
        for c in 0..post {
            let slice: Vec<C64> = (0..d).map(|b| x[(a * d + b) * post + c]).collect();
            if slice.iter().all(|v| *v == ZERO) {
                continue;
            }
            for (k, v) in f(&slice).into_iter().enumerate() {
                res[(a * out + k) * post + c] = v;
            }
        }
    }
    res
}

/// Apply a functional on leg `l`, removing it.
pub fn contract_leg(tables: &[&HopfTable], x: &[C64], l: usize, f: &dyn Fn(&[C64]) -> C64) -> Vec<C64> {
    map_leg(tables, x, l, &|v| vec![f(v)], 1)
}

/// Insert `v` as a new leg at position `pos` (`x ↦ x` with `v` tensored in).
pub fn insert_leg(dims: &[usize], x: &[C64], pos: usize, v: &[C64]) -> Vec<C64> {
    let pre: usize = dims[..pos].iter().product();
    let post: usize = dims[pos..].iter().product();
    let d = v.len();
    let mut out = vec![ZERO; pre * d * post];
    for a in 0..pre {
        for c in 0..post {
            let xv = x[a * post + c];
            if xv == ZERO {
                continue;
            }
            for (b, vb) in v.iter().enumerate() {
                out[(a * d + b) * post + c] = xv * vb;
            }
        }
    }
    out
}

/// Swap two adjacent legs `l` and `l+1`.
pub fn swap_legs(dims: &[usize], x: &[C64], l: usize) -> Vec<C64> {
    let mut nd = dims.to_vec();
    nd.swap(l, l + 1);
    let mut out = vec![ZERO; x.len()];
    for (i, v) in x.iter().enumerate() {
        let mut ix = decode(i, dims);
        ix.swap(l, l + 1);
        out[encode(&ix, &nd)] = *v;
    }
    out
}

/// Rank of a set of coordinate vectors.
pub fn vec_rank(vs: &[Vec<C64>], tol: Tolerance) -> usize {
    let cols: Vec<CMatrix> = vs.iter().map(|v| CMatrix::column(v.clone())).collect();
    span_rank(&cols, tol)
}

pub fn vec_dist(x: &[C64], y: &[C64]) -> f64 {
    vdist(x, y)
}

pub fn vec_norm(x: &[C64]) -> f64 {
    vnorm(x)
}
