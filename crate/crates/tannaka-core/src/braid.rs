//! R-matrices from braidings and back.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::aqg::{Aqg, AqgElement, PairElement};
use crate::bundle::{compare, validate_bundle};
use crate::error::{Error, Result};
use crate::legs;
use crate::linalg::{flip, kron, CMatrix, Tolerance};
use crate::rep::{tensor_rep, Representation};
use crate::report::Report;
use crate::sample::Sampler;

/// An invertible `R ∈ M(A⊗A)`, stored on every loaded pair together with its inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix {
    pub value: PairElement,
    pub inverse: PairElement,
}

impl RMatrix {
    pub fn new(value: PairElement) -> Result<Self> {
        let mut inv = BTreeMap::new();
        for (&(i, j), m) in &value.blocks {
            let x = m.inverse().ok_or(Error::SingularToTolerance { min_abs_eig: 0.0 })?;
            inv.insert((i, j), x);
        }
        Ok(Self { value, inverse: PairElement { blocks: inv } })
    }

    pub fn block(&self, i: usize, j: usize) -> &CMatrix {
        self.value.get(i, j).expect("R is stored on every loaded pair")
    }

    pub fn inverse_block(&self, i: usize, j: usize) -> &CMatrix {
        self.inverse.get(i, j).expect("R is stored on every loaded pair")
    }

    pub fn is_unitary(&self, tol: Tolerance) -> bool {
        self.value.blocks.values().all(|m| tol.close(&(&m.adjoint() * m), &CMatrix::identity(m.rows())))
    }

    /// `σ(R) = R⁻¹`.
    pub fn is_triangular(&self, q: &Aqg, tol: Tolerance) -> bool {
        self.value.blocks.keys().all(|&(i, j)| {
            let s = q.flip_block(self.block(j, i), i, j);
            tol.close(&(&s * self.block(i, j)), &CMatrix::identity(q.dim(i) * q.dim(j)))
        })
    }
}

/// `R_{ij} = Σ_{E(X_j),E(X_i)} c_{ij}`.
pub fn braiding_to_r(q: &Aqg) -> Result<RMatrix> {
    let b = &q.bundle;
    if b.braiding.is_none() {
        return Err(Error::NoBraiding);
    }
    let mut blocks = BTreeMap::new();
    for i in q.labels() {
        for j in q.labels() {
            let c = b.braiding_block(i, j).ok_or(Error::NoBraiding)?;
            blocks.insert((i, j), &flip(q.dim(j), q.dim(i)) * c);
        }
    }
    RMatrix::new(PairElement { blocks })
}

/// Braiding blocks `c_{ij} = Σ R_{ij}` induced by `R` on irreducibles.
pub fn induced_braiding(q: &Aqg, r: &RMatrix) -> BTreeMap<(usize, usize), CMatrix> {
    r.value.blocks.iter().map(|(&(i, j), m)| ((i, j), &flip(q.dim(i), q.dim(j)) * m)).collect()
}

/// Re-run the bundle validator with the braiding induced by `R` in place of the stored one.
pub fn check_induced_braiding(q: &Aqg, r: &RMatrix, tol: Tolerance) -> Report {
    let mut b = q.bundle.clone();
    b.braiding = Some(induced_braiding(q, r));
    validate_bundle(&b, tol)
}

/// `c_{π,π′} = Σ_{H,H′} (π⊗π′)(R)`, checked to intertwine `π×π′` and `π′×π`.
pub fn r_to_braiding(q: &Aqg, r: &RMatrix, p: &Representation, pp: &Representation) -> Result<CMatrix> {
    let (n, m) = (p.space_dim(), pp.space_dim());
    let mut x = CMatrix::zeros(n * m, n * m);
    for (i, s) in &p.decomp.parts {
        for (j, t) in &pp.decomp.parts {
            let w = kron(s, t);
            x += &(&(&w * r.block(*i, *j)) * &w.adjoint());
        }
    }
    let c = &flip(n, m) * &x;
    let a = tensor_rep(q, p, pp)?;
    let bb = tensor_rep(q, pp, p)?;
    let mut worst: f64 = 0.0;
    for k in a.multiset().into_keys().chain(bb.multiset().into_keys()) {
        for u in 0..q.dim(k) {
            for v in 0..q.dim(k) {
                let e = AqgElement::matrix_unit(&q.bundle, k, u, v);
                worst = worst.max((&c * &a.act(q, &e)).dist(&(&bb.act(q, &e) * &c)));
            }
        }
    }
    if !q.tol.accepts(worst, c.norm()) {
        return Err(Error::InconsistentSolve(format!("R does not induce an intertwiner (residual {worst:.3e})")));
    }
    Ok(c)
}

fn prod(ms: &[&CMatrix]) -> CMatrix {
    ms[1..].iter().fold(ms[0].clone(), |acc, m| &acc * *m)
}

/// Leg embeddings on `H_i ⊗ H_j ⊗ H_k`.
struct Legs<'a> {
    q: &'a Aqg,
    r: &'a RMatrix,
}

impl Legs<'_> {
    fn r12(&self, i: usize, j: usize, k: usize) -> CMatrix {
        kron(self.r.block(i, j), &CMatrix::identity(self.q.dim(k)))
    }

    fn r23(&self, i: usize, j: usize, k: usize) -> CMatrix {
        kron(&CMatrix::identity(self.q.dim(i)), self.r.block(j, k))
    }

    fn r13(&self, i: usize, j: usize, k: usize) -> CMatrix {
        let (di, dj, dk) = (self.q.dim(i), self.q.dim(j), self.q.dim(k));
        let id = CMatrix::identity(di);
        let p = kron(&id, &flip(dk, dj));
        let pinv = kron(&id, &flip(dj, dk));
        prod(&[&p, &kron(self.r.block(i, k), &CMatrix::identity(dj)), &pinv])
    }
}

/// Outcome of [`verify_quasitriangular`]. The flags are informational and do not affect
/// `report.pass()`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quasitriangularity {
    pub report: Report,
    pub unitary: bool,
    pub triangular: bool,
}

/// Audit of the R-matrix identities on every loaded block triple.
pub fn verify_quasitriangular(q: &Aqg, r: &RMatrix, tol: Tolerance, n_samples: usize, seed: u64) -> Quasitriangularity {
    let b = &q.bundle;
    let mut rep = Report::new();
    let legs = Legs { q, r };
    for i in q.labels() {
        for j in q.labels() {
            for k in q.labels() {
                let loc = b.loc3(i, j, k);
                if b.admissible(i, j) {
                    let lhs = q.delta_leg1(&r.value, i, j, k);
                    compare(&mut rep, tol, "r-delta-first", loc.clone(), &lhs, &(&legs.r13(i, j, k) * &legs.r23(i, j, k)));
                } else {
                    rep.skip("r-delta-first", loc.clone(), "summands leave the window");
                }
                if b.admissible(j, k) {
                    let lhs = q.delta_leg2(&r.value, i, j, k);
                    compare(&mut rep, tol, "r-delta-second", loc.clone(), &lhs, &(&legs.r13(i, j, k) * &legs.r12(i, j, k)));
                } else {
                    rep.skip("r-delta-second", loc.clone(), "summands leave the window");
                }
                let lhs = prod(&[&legs.r12(i, j, k), &legs.r13(i, j, k), &legs.r23(i, j, k)]);
                let rhs = prod(&[&legs.r23(i, j, k), &legs.r13(i, j, k), &legs.r12(i, j, k)]);
                compare(&mut rep, tol, "r-yang-baxter", loc, &lhs, &rhs);
            }
        }
    }

    // Δᵒᵖ(a) R = R Δ(a): on all matrix units when finite, else on random core elements.
    let samples: Vec<AqgElement> = if q.is_finite() {
        q.labels()
            .flat_map(|k| {
                let n = q.dim(k);
                (0..n * n).map(move |x| AqgElement::matrix_unit(b, k, x / n, x % n))
            })
            .collect()
    } else {
        let mut s = Sampler::new(seed);
        (0..n_samples).map(|_| q.random_element(&mut s, &q.core)).collect()
    };
    for (t, a) in samples.iter().enumerate() {
        for i in q.labels() {
            for j in q.labels() {
                let d = q.delta_block(a, i, j);
                let op = q.flip_block(&q.delta_block(a, j, i), i, j);
                let rij = r.block(i, j);
                compare(&mut rep, tol, "r-delta-op", format!("#{t} {}", b.loc2(i, j)), &(&op * rij), &(rij * &d));
            }
        }
    }

    let u = b.unit;
    for j in q.labels() {
        let id = CMatrix::identity(q.dim(j));
        compare(&mut rep, tol, "r-counit", b.loc2(u, j), r.block(u, j), &id);
        compare(&mut rep, tol, "r-counit", b.loc2(j, u), r.block(j, u), &id);
    }

    for i in q.labels() {
        for j in q.labels() {
            let loc = b.loc2(i, j);
            let (di, dj) = (q.dim(i), q.dim(j));
            let (ib, jb) = (b.dual[i], b.dual[j]);
            let s1 = legs::map_first(r.block(ib, j), di, dj, di, &|x| q.antipode_block(x, i));
            compare(&mut rep, tol, "r-antipode-first", loc.clone(), &s1, r.inverse_block(i, j));
            let s2 = legs::map_second(r.block(i, jb), di, dj, dj, &|x| q.antipode_inv_block(x, j));
            compare(&mut rep, tol, "r-antipode-inverse-second", loc.clone(), &s2, r.inverse_block(i, j));
            let ss = legs::map_first(
                &legs::map_second(r.block(ib, jb), di, dj, dj, &|x| q.antipode_block(x, j)),
                di,
                dj,
                di,
                &|x| q.antipode_block(x, i),
            );
            compare(&mut rep, tol, "r-antipode-both", loc, &ss, r.block(i, j));
        }
    }

    Quasitriangularity { unitary: r.is_unitary(tol), triangular: r.is_triangular(q, tol), report: rep }
}
