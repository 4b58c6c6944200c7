//! Finite-dimensional *-representations of a discrete quantum group.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::aqg::{Aqg, AqgElement, Multiplier};
use crate::category::{nat_component, tensor_decomp, ObjectDecomp};
use crate::error::{Error, Result};
use crate::linalg::{kron, solve_intertwiners, CMatrix, C64};

/// `π(a) = Σ s a_i s*` over the parts `(i, s)` of `decomp`.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub decomp: ObjectDecomp,
}

/// A conjugate representation together with its standard solution.
#[derive(Debug, Clone, PartialEq)]
pub struct Conjugate {
    pub rep: Representation,
    /// `r ∈ Hom(ε, π̄ × π)` as a column in `ℂⁿ ⊗ ℂⁿ`.
    pub r: CMatrix,
    /// `r̄ ∈ Hom(ε, π × π̄)`.
    pub rbar: CMatrix,
}

impl Representation {
    /// Wrap a decomposition after checking it is complete and orthonormal.
    pub fn new(q: &Aqg, decomp: ObjectDecomp) -> Result<Self> {
        for (i, s) in &decomp.parts {
            if *i >= q.n_labels() || s.shape() != (decomp.total_dim, q.dim(*i)) {
                return Err(Error::Shape(alloc::format!("representation part for label {i}")));
            }
        }
        let res = decomp.residual();
        if !q.tol.accepts(res, 1.0) {
            return Err(Error::Shape(alloc::format!("representation isometries off by {res:.3e}")));
        }
        Ok(Self { decomp })
    }

    pub fn space_dim(&self) -> usize {
        self.decomp.total_dim
    }

    pub fn act(&self, q: &Aqg, a: &AqgElement) -> CMatrix {
        let blocks = |i: usize| Some(a.block_or_zero(&q.bundle, i));
        nat_component(&q.bundle, &blocks, &self.decomp).expect("every block is defined")
    }

    pub fn act_multiplier(&self, q: &Aqg, x: &Multiplier) -> CMatrix {
        let blocks = |i: usize| Some(x.block(i).clone());
        nat_component(&q.bundle, &blocks, &self.decomp).expect("every block is defined")
    }

    /// Labels of the parts, in order.
    pub fn labels(&self) -> Vec<usize> {
        self.decomp.labels()
    }

    /// Labels appearing in `self` with their multiplicities.
    pub fn multiset(&self) -> BTreeMap<usize, usize> {
        self.decomp.multiset()
    }

    pub fn direct_sum(reps: &[Representation]) -> Self {
        let parts: Vec<ObjectDecomp> = reps.iter().map(|r| r.decomp.clone()).collect();
        Self { decomp: ObjectDecomp::direct_sum(&parts) }
    }
}

pub fn irrep(q: &Aqg, i: usize) -> Representation {
    Representation { decomp: ObjectDecomp::irreducible(&q.bundle, i) }
}

/// `π × π′ = (π ⊗ π′) ∘ Δ`.
pub fn tensor_rep(q: &Aqg, p: &Representation, pp: &Representation) -> Result<Representation> {
    Ok(Representation { decomp: tensor_decomp(&q.bundle, &p.decomp, &pp.decomp)? })
}

/// Largest deviation between `(π×π′)(a)` and `(π⊗π′)(Δ(a))` over the matrix units of every
/// label occurring in the tensor product.
pub fn tensor_action_residual(q: &Aqg, p: &Representation, pp: &Representation) -> Result<f64> {
    let t = tensor_rep(q, p, pp)?;
    let mut worst: f64 = 0.0;
    for k in t.multiset().into_keys() {
        for x in 0..q.dim(k) {
            for y in 0..q.dim(k) {
                let a = AqgElement::matrix_unit(&q.bundle, k, x, y);
                let lhs = t.act(q, &a);
                let nn = p.space_dim() * pp.space_dim();
                let mut rhs = CMatrix::zeros(nn, nn);
                for (i, s) in &p.decomp.parts {
                    for (j, u) in &pp.decomp.parts {
                        let w = kron(s, u);
                        rhs += &(&(&w * &q.delta_block(&a, *i, *j)) * &w.adjoint());
                    }
                }
                worst = worst.max(lhs.dist(&rhs));
            }
        }
    }
    Ok(worst)
}

/// Conjugate built from the conjugates of the irreducible parts. Each part `(i, s)` becomes
/// `(ī, s̄)` on the same space, and `r = Σ (s̄ ⊗ s) r_i`, `r̄ = Σ (s ⊗ s̄) r̄_i`.
pub fn conjugate_rep(q: &Aqg, p: &Representation) -> Result<Conjugate> {
    let b = &q.bundle;
    let n = p.space_dim();
    let mut parts = Vec::new();
    let mut r = CMatrix::zeros(n * n, 1);
    let mut rbar = CMatrix::zeros(n * n, 1);
    for (i, s) in &p.decomp.parts {
        let ib = *b.dual.get(*i).ok_or_else(|| Error::MissingDual(b.labels[*i].clone()))?;
        let sb = s.conj();
        r += &(&kron(&sb, s) * &CMatrix::column(b.conj[*i].r.clone()));
        rbar += &(&kron(s, &sb) * &CMatrix::column(b.conj[*i].rbar.clone()));
        parts.push((ib, sb));
    }
    Ok(Conjugate { rep: Representation { decomp: ObjectDecomp { total_dim: n, parts } }, r, rbar })
}

/// Orthonormal basis of `{T : T π(a) = π′(a) T}`, solved over the matrix units of every label
/// occurring in either representation.
pub fn hom_reps(q: &Aqg, p: &Representation, pp: &Representation) -> Vec<CMatrix> {
    let mut labels: Vec<usize> = p.labels().into_iter().chain(pp.labels()).collect();
    labels.sort_unstable();
    labels.dedup();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for k in labels {
        for x in 0..q.dim(k) {
            for y in 0..q.dim(k) {
                let a = AqgElement::matrix_unit(&q.bundle, k, x, y);
                xs.push(p.act(q, &a));
                ys.push(pp.act(q, &a));
            }
        }
    }
    if xs.is_empty() {
        // Zero representation on one side.
        return Vec::new();
    }
    solve_intertwiners(&xs, &ys, q.tol)
}

/// `d(π) = Tr π(f)`.
pub fn dimension(q: &Aqg, p: &Representation) -> f64 {
    p.act_multiplier(q, &q.f).trace().re
}

/// Largest disagreement among `Tr π(f)`, `Tr π(f⁻¹)`, `r*r` and `r̄*r̄`.
pub fn dimension_residual(q: &Aqg, p: &Representation) -> Result<f64> {
    let d = dimension(q, p);
    let di = p.act_multiplier(q, &q.f_inv).trace().re;
    let c = conjugate_rep(q, p)?;
    let rr = norm_sq(&c.r).re;
    let rbrb = norm_sq(&c.rbar).re;
    Ok([di, rr, rbrb].iter().map(|x| (x - d).abs()).fold(0.0, f64::max))
}

/// Stored decomposition, re-validated.
pub fn decompose_rep(q: &Aqg, p: &Representation) -> Result<(BTreeMap<usize, usize>, Vec<(usize, CMatrix)>)> {
    let p = Representation::new(q, p.decomp.clone())?;
    Ok((p.multiset(), p.decomp.parts))
}

/// Residuals of the conjugate equations and intertwiner conditions for `c` against `p`.
pub fn conjugate_residual(q: &Aqg, p: &Representation, c: &Conjugate) -> f64 {
    let n = p.space_dim();
    let id = CMatrix::identity(n);
    // (r̄* ⊗ 1)(1 ⊗ r) = 1 and (r* ⊗ 1)(1 ⊗ r̄) = 1 on ℂⁿ.
    let z1 = &kron(&c.rbar.adjoint(), &id) * &kron(&id, &c.r);
    let z2 = &kron(&c.r.adjoint(), &id) * &kron(&id, &c.rbar);
    let mut worst = z1.dist(&id).max(z2.dist(&id));
    let pb = &c.rep;
    for rep_pair in [(pb, p, &c.r), (p, pb, &c.rbar)] {
        let t = tensor_rep(q, rep_pair.0, rep_pair.1);
        let Ok(t) = t else { return f64::INFINITY };
        for k in t.multiset().into_keys() {
            for x in 0..q.dim(k) {
                for y in 0..q.dim(k) {
                    let a = AqgElement::matrix_unit(&q.bundle, k, x, y);
                    let lhs = &t.act(q, &a) * rep_pair.2;
                    let rhs = rep_pair.2.scale(q.counit(&a));
                    worst = worst.max(lhs.dist(&rhs));
                }
            }
        }
    }
    worst
}

/// `Σ_k dim hom(π_k, π_i × π_j)` compared with `N_ij^k`, over the supplied triples. Returns the
/// triples that disagree.
pub fn fusion_mismatches(q: &Aqg, triples: &[(usize, usize, usize)]) -> Result<Vec<((usize, usize, usize), usize, usize)>> {
    let mut bad = Vec::new();
    for &(i, j, k) in triples {
        let t = tensor_rep(q, &irrep(q, i), &irrep(q, j))?;
        let h = hom_reps(q, &irrep(q, k), &t).len();
        let n = q.bundle.multiplicity(i, j, k);
        if h != n {
            bad.push(((i, j, k), h, n));
        }
    }
    Ok(bad)
}

/// `v*v` for a column `v`.
pub fn norm_sq(v: &CMatrix) -> C64 {
    (&v.adjoint() * v)[(0, 0)]
}
