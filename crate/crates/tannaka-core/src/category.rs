//! Objects carried together with a decomposition into irreducibles.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::bundle::CategoryBundle;
use crate::error::{Error, Result};
use crate::linalg::{kron, CMatrix, Tolerance};

/// An object `X ≅ ⊕ X_i` with isometries `s : H_i → ℂⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectDecomp {
    pub total_dim: usize,
    pub parts: Vec<(usize, CMatrix)>,
}

impl ObjectDecomp {
    pub fn irreducible(b: &CategoryBundle, i: usize) -> Self {
        let d = b.dims[i];
        Self { total_dim: d, parts: alloc::vec![(i, CMatrix::identity(d))] }
    }

    /// Orthogonal direct sum, blocks stacked in order.
    pub fn direct_sum(objects: &[ObjectDecomp]) -> Self {
        let total_dim = objects.iter().map(|o| o.total_dim).sum();
        let mut parts = Vec::new();
        let mut off = 0;
        for o in objects {
            for (i, s) in &o.parts {
                let mut big = CMatrix::zeros(total_dim, s.cols());
                big.set_block(off, 0, s);
                parts.push((*i, big));
            }
            off += o.total_dim;
        }
        Self { total_dim, parts }
    }

    /// Change of orthonormal basis `u` on the total space.
    pub fn conjugate_by(&self, u: &CMatrix) -> Self {
        Self { total_dim: self.total_dim, parts: self.parts.iter().map(|(i, s)| (*i, u * s)).collect() }
    }

    pub fn labels(&self) -> Vec<usize> {
        self.parts.iter().map(|(i, _)| *i).collect()
    }

    /// Multiplicity of each label.
    pub fn multiset(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for (i, _) in &self.parts {
            *m.entry(*i).or_insert(0) += 1;
        }
        m
    }

    /// Largest deviation from `s* s' = δ I` and `Σ s s* = I`.
    pub fn residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let mut sum = CMatrix::zeros(self.total_dim, self.total_dim);
        for (a, (_, s)) in self.parts.iter().enumerate() {
            sum += &(s * &s.adjoint());
            for (b, (_, t)) in self.parts.iter().enumerate() {
                let g = &s.adjoint() * t;
                let want = if a == b { CMatrix::identity(s.cols()) } else { CMatrix::zeros(s.cols(), t.cols()) };
                worst = worst.max(g.dist(&want));
            }
        }
        worst.max(sum.dist(&CMatrix::identity(self.total_dim)))
    }

    pub fn is_valid(&self, tol: Tolerance) -> bool {
        tol.accepts(self.residual(), 1.0)
    }
}

/// A family of blocks `i ↦ a_i`, possibly partial.
pub trait Blocks {
    fn block(&self, i: usize) -> Option<CMatrix>;
}

impl Blocks for BTreeMap<usize, CMatrix> {
    fn block(&self, i: usize) -> Option<CMatrix> {
        self.get(&i).cloned()
    }
}

impl<F: Fn(usize) -> Option<CMatrix>> Blocks for F {
    fn block(&self, i: usize) -> Option<CMatrix> {
        self(i)
    }
}

/// `X ⊗ Y` with parts `(s ⊗ t) ∘ v` over all channels of the part labels.
pub fn tensor_decomp(b: &CategoryBundle, x: &ObjectDecomp, y: &ObjectDecomp) -> Result<ObjectDecomp> {
    let mut parts = Vec::new();
    for (i, s) in &x.parts {
        for (j, t) in &y.parts {
            b.require_admissible(*i, *j)?;
            let st = kron(s, t);
            for (k, vs) in b.channels(*i, *j) {
                for v in vs {
                    parts.push((k, &st * v));
                }
            }
        }
    }
    Ok(ObjectDecomp { total_dim: x.total_dim * y.total_dim, parts })
}

/// `a_X = Σ s a_i s*`.
pub fn nat_component(b: &CategoryBundle, a: &dyn Blocks, x: &ObjectDecomp) -> Result<CMatrix> {
    let mut out = CMatrix::zeros(x.total_dim, x.total_dim);
    for (i, s) in &x.parts {
        let ai = a.block(*i).ok_or_else(|| Error::MissingBlock(b.labels[*i].clone()))?;
        out += &(&(s * &ai) * &s.adjoint());
    }
    Ok(out)
}
