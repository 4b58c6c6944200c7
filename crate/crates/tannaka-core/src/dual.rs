//! The compact dual `Â` of a finite discrete quantum group, the universal corepresentation and
//! the correspondence between corepresentations of `A` and representations of `Â`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::aqg::{Aqg, AqgElement};
use crate::bundle::compare;
use crate::error::{Error, Result};
use crate::hopf::{basis_vec, insert_leg, map_leg, mul_legs, star_legs, vec_dist, vec_norm, vec_rank, HopfTable};
use crate::legs;
use crate::linalg::{flip, hermitian_calc, kron, lstsq, nullspace, CMatrix, Spectral, Tolerance, C64, ONE, ZERO};
use crate::report::Report;
use crate::sample::Sampler;

/// Position of each matrix unit `e_{ac}` of block `i` in the flat basis of `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixUnits {
    pub units: Vec<(usize, usize, usize)>,
}

impl MatrixUnits {
    pub fn new(q: &Aqg) -> Self {
        let mut units = Vec::new();
        for i in q.labels() {
            for a in 0..q.dim(i) {
                for c in 0..q.dim(i) {
                    units.push((i, a, c));
                }
            }
        }
        Self { units }
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn element(&self, q: &Aqg, p: usize) -> AqgElement {
        let (i, a, c) = self.units[p];
        AqgElement::matrix_unit(&q.bundle, i, a, c)
    }

    pub fn to_vec(&self, a: &AqgElement) -> Vec<C64> {
        self.units.iter().map(|&(i, r, c)| a.get(i).map_or(ZERO, |m| m[(r, c)])).collect()
    }

    pub fn to_element(&self, q: &Aqg, v: &[C64]) -> AqgElement {
        let mut blocks = alloc::collections::BTreeMap::new();
        for (&(i, r, c), x) in self.units.iter().zip(v) {
            blocks.entry(i).or_insert_with(|| CMatrix::zeros(q.dim(i), q.dim(i)))[(r, c)] = *x;
        }
        AqgElement { blocks }
    }
}

/// `A` and `Â` as structure-constant tables.
#[derive(Debug, Clone)]
pub struct DualStructure {
    pub units: MatrixUnits,
    pub a: HopfTable,
    /// `Â` in the Fourier basis `ê_p = e_p φ`.
    pub dual: HopfTable,
    /// `Θ[b][p] = ê_p(e_b) = φ(e_b e_p)`.
    pub pairing: CMatrix,
    pub report: Report,
}

/// An element `ω = aφ` of `Â`, i.e. `ω(x) = φ(xa)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualElement {
    pub carrier: AqgElement,
}

/// `A` as a structure-constant table over its matrix units.
pub fn hopf_table(q: &Aqg) -> Result<(MatrixUnits, HopfTable)> {
    q.require_finite()?;
    let units = MatrixUnits::new(q);
    let n = units.len();
    let basis: Vec<AqgElement> = (0..n).map(|p| units.element(q, p)).collect();
    let mut mult = vec![ZERO; n * n * n];
    for a in 0..n {
        for b in 0..n {
            let v = units.to_vec(&basis[a].mul(&basis[b]));
            mult[(a * n + b) * n..(a * n + b + 1) * n].copy_from_slice(&v);
        }
    }
    let mut comult = vec![ZERO; n * n * n];
    for a in 0..n {
        for (x, &(i, r, c)) in units.units.iter().enumerate() {
            for (y, &(j, s, t)) in units.units.iter().enumerate() {
                let d = q.delta_block(&basis[a], i, j);
                let dj = q.dim(j);
                comult[(a * n + x) * n + y] = d[(r * dj + s, c * dj + t)];
            }
        }
    }
    let unit = units.to_vec(&AqgElement::local_unit(&q.bundle, &q.labels().collect::<Vec<_>>()));
    let counit = basis.iter().map(|e| q.counit(e)).collect();
    let cols = |f: &dyn Fn(&AqgElement) -> AqgElement| {
        CMatrix::hstack(&basis.iter().map(|e| CMatrix::column(units.to_vec(&f(e)))).collect::<Vec<_>>())
    };
    let antipode = cols(&|e| q.antipode(e));
    let star = cols(&|e| e.adjoint());
    let haar = basis.iter().map(|e| q.haar(e, crate::aqg::Side::Left)).collect();
    Ok((units, HopfTable { dim: n, mult, unit, comult, counit, antipode, star, haar }))
}

/// Build `Â` and verify it is a unital Hopf *-algebra whose functional `ψ̂(â) = ε(a)` is
/// invariant and positive.
pub fn dual_hopf(q: &Aqg, tol: Tolerance) -> Result<DualStructure> {
    let (units, a) = hopf_table(q)?;
    let (dual, pairing) = a.dual(tol)?;
    let mut report = a.verify(tol, "A/");
    report.extend(dual.verify(tol, "dual/"));
    let mut s = Sampler::new(0x5eed);
    let n = a.dim;
    for _ in 0..3 {
        let x = s.vector(n);
        let lhs = dual.h(&dual.mul(&dual.st(&x), &x));
        let rhs = a.h(&a.mul(&a.st(&x), &x));
        report.push("parseval", "sample", (lhs - rhs).norm(), tol.close_scalar(lhs, rhs));
    }
    for (name, x, y) in [
        ("commutative-iff-dual-cocommutative", a.is_commutative(tol).0, dual.is_cocommutative(tol).0),
        ("cocommutative-iff-dual-commutative", a.is_cocommutative(tol).0, dual.is_commutative(tol).0),
    ] {
        report.push(name, "A", if x == y { 0.0 } else { 1.0 }, x == y);
    }
    Ok(DualStructure { units, a, dual, pairing, report })
}

impl DualStructure {
    pub fn fourier(&self, a: &AqgElement) -> DualElement {
        DualElement { carrier: a.clone() }
    }

    /// Values `ω(e_b)` of a dual element on the matrix units.
    pub fn values(&self, w: &DualElement) -> Vec<C64> {
        let c = CMatrix::column(self.units.to_vec(&w.carrier));
        (&self.pairing * &c).into_data()
    }

    /// The dual element with the given values, by solving `Θ c = v`.
    pub fn from_values(&self, q: &Aqg, v: &[C64]) -> Result<DualElement> {
        let c = self
            .pairing
            .solve(&CMatrix::column(v.to_vec()))
            .ok_or(Error::SingularToTolerance { min_abs_eig: 0.0 })?;
        Ok(DualElement { carrier: self.units.to_element(q, c.data()) })
    }

    /// `a` recovered from `â` through its values.
    pub fn fourier_inverse(&self, q: &Aqg, w: &DualElement) -> Result<AqgElement> {
        Ok(self.from_values(q, &self.values(w))?.carrier)
    }

    /// Coordinates of `â` in the basis of `Â`.
    pub fn coords(&self, w: &DualElement) -> Vec<C64> {
        self.units.to_vec(&w.carrier)
    }

    pub fn n(&self) -> usize {
        self.a.dim
    }
}

/// `U ∈ A ⊗ Â` with coefficients `coeffs[p·N + r]` on `e_p ⊗ ê_r`.
#[derive(Debug, Clone)]
pub struct UniversalCorep {
    pub coeffs: Vec<C64>,
    pub report: Report,
}

/// Solve `[U(x⊗ω)](y) = (ι⊗ω)(Δ(y)(x⊗1))` over basis `x`, `ω`, `y`, confirm the solution is
/// unique, and verify the five characterising properties.
pub fn universal_corep(q: &Aqg, ds: &DualStructure, tol: Tolerance) -> Result<UniversalCorep> {
    q.require_finite()?;
    let n = ds.n();
    let (a, d, th) = (&ds.a, &ds.dual, &ds.pairing);
    // E[r][c][b] = (ê_r ê_c)(e_b).
    let mut e = vec![ZERO; n * n * n];
    for r in 0..n {
        for c in 0..n {
            let prod = d.mul(&basis_vec(n, r), &basis_vec(n, c));
            for b in 0..n {
                e[(r * n + c) * n + b] = (0..n).map(|s| prod[s] * th[(b, s)]).sum();
            }
        }
    }
    let mrow = |p: usize, x: usize| &a.mult[(p * n + x) * n..(p * n + x + 1) * n];
    let n_rows = n * n * n * n;
    let mut m = CMatrix::zeros(n_rows, n * n);
    let mut rhs = CMatrix::zeros(n_rows, 1);
    for x in 0..n {
        for c in 0..n {
            for b in 0..n {
                let dy = a.comul(&basis_vec(n, b));
                let base = ((x * n + c) * n + b) * n;
                for p in 0..n {
                    let px = mrow(p, x);
                    for r in 0..n {
                        let coef = e[(r * n + c) * n + b];
                        if coef == ZERO {
                            continue;
                        }
                        for k in 0..n {
                            m[(base + k, p * n + r)] += coef * px[k];
                        }
                    }
                }
                for s in 0..n {
                    let w: C64 = (0..n).map(|t| dy[s * n + t] * th[(t, c)]).sum();
                    if w == ZERO {
                        continue;
                    }
                    let sx = mrow(s, x);
                    for k in 0..n {
                        rhs[(base + k, 0)] += w * sx[k];
                    }
                }
            }
        }
    }
    let sol = lstsq(&m, &rhs, tol).ok_or_else(|| Error::DefiningSystemInconsistent("least squares failed".into()))?;
    let res = (&(&m * &sol) - &rhs).norm();
    if !tol.accepts(res, rhs.norm()) {
        return Err(Error::DefiningSystemInconsistent(format!("residual {res:.3e}")));
    }
    let mut rows = (0..n_rows).map(|i| (0..n * n).map(|j| m[(i, j)]).collect::<Vec<_>>());
    let null = nullspace(n * n, &mut rows, tol);
    if !null.is_empty() {
        return Err(Error::DefiningSystemInconsistent(format!("{} free directions", null.len())));
    }
    let coeffs = sol.into_data();
    let report = verify_universal(ds, &coeffs, tol);
    Ok(UniversalCorep { coeffs, report })
}

fn push_vec(rep: &mut Report, tol: Tolerance, check: &str, loc: &str, x: &[C64], y: &[C64]) {
    let r = vec_dist(x, y);
    rep.push(check, loc, r, tol.accepts(r, vec_norm(x).max(vec_norm(y))));
}

fn verify_universal(ds: &DualStructure, u: &[C64], tol: Tolerance) -> Report {
    let mut rep = Report::new();
    let (a, d, th) = (&ds.a, &ds.dual, &ds.pairing);
    let n = a.dim;
    let ad = [a, d];
    let one = crate::hopf::tensor(&a.unit, &d.unit);
    let us = star_legs(&ad, u);
    push_vec(&mut rep, tol, "U-unitary", "U*U", &mul_legs(&ad, &us, u), &one);
    push_vec(&mut rep, tol, "U-unitary", "UU*", &mul_legs(&ad, u, &us), &one);
    // (Δ⊗ι)U = U₁₃U₂₃.
    let dims = [n, n];
    let lhs = map_leg(&ad, u, 0, &|x| a.comul(x), n * n);
    let u13 = insert_leg(&dims, u, 1, &a.unit);
    let u23 = insert_leg(&dims, u, 0, &a.unit);
    push_vec(&mut rep, tol, "U-delta-first", "A⊗A⊗Â", &lhs, &mul_legs(&[a, a, d], &u13, &u23));
    // (ι⊗Δ̂)U = U₁₂U₁₃.
    let lhs = map_leg(&ad, u, 1, &|x| d.comul(x), n * n);
    let u12 = insert_leg(&dims, u, 2, &d.unit);
    let u13 = insert_leg(&dims, u, 1, &d.unit);
    push_vec(&mut rep, tol, "U-delta-second", "A⊗Â⊗Â", &lhs, &mul_legs(&[a, d, d], &u12, &u13));
    // (ω⊗ι)U = ω and (ι⊗a)U = a on basis elements.
    for c in 0..n {
        let got: Vec<C64> = (0..n).map(|r| (0..n).map(|p| u[p * n + r] * th[(p, c)]).sum()).collect();
        push_vec(&mut rep, tol, "U-slice-dual", &format!("ê{c}"), &got, &basis_vec(n, c));
        let got: Vec<C64> = (0..n).map(|p| (0..n).map(|r| u[p * n + r] * th[(c, r)]).sum()).collect();
        push_vec(&mut rep, tol, "U-slice-algebra", &format!("e{c}"), &got, &basis_vec(n, c));
    }
    rep
}

/// A corepresentation `V ∈ A ⊗ B(ℂⁿ)` of `A`, one `d_i n × d_i n` block per label.
#[derive(Debug, Clone, PartialEq)]
pub struct Corep {
    pub space_dim: usize,
    pub blocks: Vec<CMatrix>,
}

/// A representation of `Â` on `ℂⁿ`, given by the images of the basis `ê_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualRep {
    pub space_dim: usize,
    pub images: Vec<CMatrix>,
}

impl DualRep {
    pub fn apply(&self, coords: &[C64]) -> CMatrix {
        let mut out = CMatrix::zeros(self.space_dim, self.space_dim);
        for (c, m) in coords.iter().zip(&self.images) {
            if *c != ZERO {
                out += &m.scale(*c);
            }
        }
        out
    }

    /// `(ρ ⊗ ρ′) ∘ Δ̂`.
    pub fn tensor(&self, other: &DualRep, ds: &DualStructure) -> DualRep {
        let n = ds.n();
        let images = (0..n)
            .map(|p| {
                let dd = ds.dual.comul(&basis_vec(n, p));
                let mut out = CMatrix::zeros(self.space_dim * other.space_dim, self.space_dim * other.space_dim);
                for c in 0..n {
                    for e in 0..n {
                        let w = dd[c * n + e];
                        if w != ZERO {
                            out += &kron(&self.images[c], &other.images[e]).scale(w);
                        }
                    }
                }
                out
            })
            .collect();
        DualRep { space_dim: self.space_dim * other.space_dim, images }
    }

    /// Multiplicativity, unitality and `ρ(ω*) = ρ(ω)*`.
    pub fn check(&self, ds: &DualStructure, tol: Tolerance) -> Report {
        let mut rep = Report::new();
        let d = &ds.dual;
        let n = d.dim;
        compare(&mut rep, tol, "dual-rep-unit", "1", &self.apply(&d.unit), &CMatrix::identity(self.space_dim));
        for p in 0..n {
            let ep = basis_vec(n, p);
            compare(&mut rep, tol, "dual-rep-star", format!("ê{p}"), &self.apply(&d.st(&ep)), &self.images[p].adjoint());
            for r in 0..n {
                let pr = d.mul(&ep, &basis_vec(n, r));
                let lhs = self.apply(&pr);
                compare(&mut rep, tol, "dual-rep-multiplicative", format!("ê{p},ê{r}"), &lhs, &(&self.images[p] * &self.images[r]));
            }
        }
        rep
    }
}

/// The left regular representation of `Â`, made unitary through the inner product `ψ̂(x*y)`.
pub fn regular_dual_rep(ds: &DualStructure, tol: Tolerance) -> Result<DualRep> {
    let d = &ds.dual;
    let n = d.dim;
    let g = CMatrix::from_fn(n, n, |x, y| d.h(&d.mul(&d.st(&basis_vec(n, x)), &basis_vec(n, y))));
    let g_half = hermitian_calc(&g, Spectral::Sqrt, tol)?;
    let g_inv_half = hermitian_calc(&g, Spectral::InvSqrt, tol)?;
    // In coordinates ψ̂(x*y) = x^H G y.
    let images = (0..n).map(|p| &(&g_half * &d.left_mult(&basis_vec(n, p))) * &g_inv_half).collect();
    Ok(DualRep { space_dim: n, images })
}

/// The one-dimensional representation of `Â` given by a character's values on the basis.
pub fn character_rep(values: &[C64]) -> DualRep {
    DualRep { space_dim: 1, images: values.iter().map(|v| CMatrix::scalar(*v)).collect() }
}

/// `V = (ι⊗ρ)U`.
pub fn rep_to_corep(q: &Aqg, ds: &DualStructure, u: &UniversalCorep, rho: &DualRep) -> Corep {
    let n = ds.n();
    let k = rho.space_dim;
    let mut blocks: Vec<CMatrix> = q.labels().map(|i| CMatrix::zeros(q.dim(i) * k, q.dim(i) * k)).collect();
    for (p, &(i, a, c)) in ds.units.units.iter().enumerate() {
        let e = CMatrix::unit(q.dim(i), a, c);
        let mut img = CMatrix::zeros(k, k);
        for r in 0..n {
            let w = u.coeffs[p * n + r];
            if w != ZERO {
                img += &rho.images[r].scale(w);
            }
        }
        blocks[i] += &kron(&e, &img);
    }
    Corep { space_dim: k, blocks }
}

/// `π_V(ω) = (ω⊗ι)V`.
pub fn corep_to_rep(q: &Aqg, ds: &DualStructure, v: &Corep) -> DualRep {
    let dens = q.density(crate::aqg::Side::Left);
    let images = ds
        .units
        .units
        .iter()
        .map(|&(i, a, c)| {
            // ê_p(x) = φ(x e_p) = Tr(e_p D_i x_i) on block i.
            let w = &CMatrix::unit(q.dim(i), a, c) * &dens[i];
            legs::slice_first(&v.blocks[i], q.dim(i), v.space_dim, &w)
        })
        .collect();
    DualRep { space_dim: v.space_dim, images }
}

impl Corep {
    /// The operator `V₁₃` on `H_i ⊗ H_j ⊗ K`.
    fn leg13(&self, q: &Aqg, i: usize, j: usize) -> CMatrix {
        let (di, dj, n) = (q.dim(i), q.dim(j), self.space_dim);
        let p = kron(&CMatrix::identity(di), &flip(dj, n));
        &(&p.adjoint() * &kron(&self.blocks[i], &CMatrix::identity(dj))) * &p
    }

    /// Unitarity and `(Δ⊗ι)V = V₁₃V₂₃` on every pair of labels.
    pub fn check(&self, q: &Aqg, tol: Tolerance, prefix: &str) -> Report {
        let mut rep = Report::new();
        let n = self.space_dim;
        let b = &q.bundle;
        for i in q.labels() {
            let v = &self.blocks[i];
            let id = CMatrix::identity(v.rows());
            compare(&mut rep, tol, &format!("{prefix}unitary"), b.labels[i].clone(), &(&v.adjoint() * v), &id);
            compare(&mut rep, tol, &format!("{prefix}unitary"), b.labels[i].clone(), &(v * &v.adjoint()), &id);
        }
        for i in q.labels() {
            for j in q.labels() {
                let (di, dj) = (q.dim(i), q.dim(j));
                let mut lhs = CMatrix::zeros(di * dj * n, di * dj * n);
                for (k, vs) in b.channels(i, j) {
                    for w in vs {
                        let big = kron(w, &CMatrix::identity(n));
                        lhs += &(&(&big * &self.blocks[k]) * &big.adjoint());
                    }
                }
                let rhs = &self.leg13(q, i, j) * &kron(&CMatrix::identity(di), &self.blocks[j]);
                compare(&mut rep, tol, &format!("{prefix}multiplicative"), b.loc2(i, j), &lhs, &rhs);
            }
        }
        rep
    }

    /// `V × V′ = V₁₂V′₁₃` on `K ⊗ K′`.
    pub fn tensor(&self, other: &Corep, q: &Aqg) -> Corep {
        let (n, m) = (self.space_dim, other.space_dim);
        let blocks = q
            .labels()
            .map(|i| {
                let di = q.dim(i);
                let v12 = kron(&self.blocks[i], &CMatrix::identity(m));
                let p = kron(&CMatrix::identity(di), &flip(n, m));
                let v13 = &(&p.adjoint() * &kron(&other.blocks[i], &CMatrix::identity(n))) * &p;
                &v12 * &v13
            })
            .collect();
        Corep { space_dim: n * m, blocks }
    }

    pub fn dist(&self, other: &Corep) -> f64 {
        libm::sqrt(self.blocks.iter().zip(&other.blocks).map(|(x, y)| x.dist(y) * x.dist(y)).sum())
    }
}

/// Conjugate corepresentation `V̄ = (S⁻¹⊗j)V` with `j(x) = J x* J⁻¹`. Finite bundles are Kac, so
/// `Ŝ² = id`, `f̂ = 1` and `J` is plain complex conjugation, making `j` the transpose. Both facts
/// are checked and reported.
pub fn corep_conjugate(q: &Aqg, ds: &DualStructure, v: &Corep, tol: Tolerance) -> Result<(Corep, Report)> {
    q.require_finite()?;
    let mut rep = Report::new();
    let b = &q.bundle;
    let n = v.space_dim;
    let d = &ds.dual;
    let sd2 = &d.antipode * &d.antipode;
    compare(&mut rep, tol, "dual-kac", "Ŝ²", &sd2, &CMatrix::identity(d.dim));
    let blocks: Vec<CMatrix> = q
        .labels()
        .map(|i| {
            let ib = b.dual[i];
            let s_inv = |x: &CMatrix| q.antipode_inv_block(x, i);
            let x = legs::map_first(&v.blocks[ib], q.dim(ib), n, q.dim(i), &s_inv);
            legs::map_second(&x, q.dim(i), n, n, &|y: &CMatrix| y.transpose())
        })
        .collect();
    let vbar = Corep { space_dim: n, blocks };
    rep.extend(vbar.check(q, tol, "conjugate-"));
    // V(1⊗J*J) = (1⊗J*J)(S²⊗ι)V with J*J = 1.
    for i in q.labels() {
        let s2 = legs::map_first(&v.blocks[i], q.dim(i), n, q.dim(i), &|x: &CMatrix| {
            let ib = b.dual[i];
            q.antipode_block(&q.antipode_block(x, ib), i)
        });
        compare(&mut rep, tol, "conjugate-commutation", b.labels[i].clone(), &v.blocks[i], &s2);
    }
    // r = Σ ē_m ⊗ e_m is invariant for V̄ × V.
    let r = CMatrix::column((0..n * n).map(|k| if k / n == k % n { ONE } else { ZERO }).collect());
    let t = vbar.tensor(v, q);
    for i in q.labels() {
        let one_r = kron(&CMatrix::identity(q.dim(i)), &r);
        compare(&mut rep, tol, "conjugate-invariant-vector", b.labels[i].clone(), &(&t.blocks[i] * &one_r), &one_r);
    }
    Ok((vbar, rep))
}

/// Build `Â̂`, the map `θ(a)(ω) = ω(a)`, and check it is a Hopf *-isomorphism `A → Â̂`.
pub fn pontryagin_check(q: &Aqg, tol: Tolerance) -> Result<Report> {
    let ds = dual_hopf(q, tol)?;
    let mut rep = ds.report.clone();
    let (dd, theta_hat) = ds.dual.dual(tol)?;
    rep.extend(dd.verify(tol, "bidual/"));
    let a = &ds.a;
    let n = a.dim;
    // θ(e_b) has values Θ[b][p] on ê_p; its coordinates solve Θ̂ c = Θ[b, :].
    let t = theta_hat
        .solve(&ds.pairing.transpose())
        .ok_or(Error::SingularToTolerance { min_abs_eig: 0.0 })?;
    let tcols: Vec<Vec<C64>> = (0..n).map(|b| t.col_vec(b)).collect();
    let rank = vec_rank(&tcols, tol);
    rep.push("theta-bijective", "A → Â̂", (n - rank) as f64, rank == n);
    let th = |x: &[C64]| (&t * &CMatrix::column(x.to_vec())).into_data();
    push_vec(&mut rep, tol, "theta-unit", "1", &th(&a.unit), &dd.unit);
    for x in 0..n {
        let ex = basis_vec(n, x);
        let tx = th(&ex);
        let e1 = dd.eps(&tx);
        let e2 = a.eps(&ex);
        rep.push("theta-counit", format!("e{x}"), (e1 - e2).norm(), tol.close_scalar(e1, e2));
        push_vec(&mut rep, tol, "theta-star", &format!("e{x}"), &th(&a.st(&ex)), &dd.st(&tx));
        push_vec(&mut rep, tol, "theta-antipode", &format!("e{x}"), &th(&a.s(&ex)), &dd.s(&tx));
        let lhs = map_leg(&[a, a], &map_leg(&[a, a], &a.comul(&ex), 0, &th, n), 1, &th, n);
        push_vec(&mut rep, tol, "theta-comult", &format!("e{x}"), &lhs, &dd.comul(&tx));
        for y in 0..n {
            let ey = basis_vec(n, y);
            push_vec(&mut rep, tol, "theta-multiplicative", &format!("e{x},e{y}"), &th(&a.mul(&ex, &ey)), &dd.mul(&tx, &th(&ey)));
        }
    }
    Ok(rep)
}
