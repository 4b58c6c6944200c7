//! Index gymnastics on operators over `H₁ ⊗ H₂` and `H₁ ⊗ H₂ ⊗ H₃`.
//!
//! An operator `X` on `H₁ ⊗ H₂` is a `(d₁d₂)²` matrix with `X[(a,b),(c,d)]` at row `a·d₂+b`,
//! column `c·d₂+d`; for an elementary tensor `x ⊗ y` that entry is `x[a][c]·y[b][d]`.

use crate::linalg::{CMatrix, ZERO};

fn at(x: &CMatrix, r: usize, c: usize) -> crate::linalg::C64 {
    x[(r, c)]
}

/// `(ι ⊗ ω)(X)` for `ω(y) = Tr(w·y)`.
pub fn slice_second(x: &CMatrix, d1: usize, d2: usize, w: &CMatrix) -> CMatrix {
    CMatrix::from_fn(d1, d1, |a, c| {
        let mut s = ZERO;
        for b in 0..d2 {
            for d in 0..d2 {
                s += at(x, a * d2 + b, c * d2 + d) * w[(d, b)];
            }
        }
        s
    })
}

/// `(ω ⊗ ι)(X)` for `ω(y) = Tr(w·y)`.
pub fn slice_first(x: &CMatrix, d1: usize, d2: usize, w: &CMatrix) -> CMatrix {
    CMatrix::from_fn(d2, d2, |b, d| {
        let mut s = ZERO;
        for a in 0..d1 {
            for c in 0..d1 {
                s += at(x, a * d2 + b, c * d2 + d) * w[(c, a)];
            }
        }
        s
    })
}

/// `(f ⊗ ι)(X)` for a linear map `f : B(ℂ^{d1}) → B(ℂ^{e1})`.
pub fn map_first(x: &CMatrix, d1: usize, d2: usize, e1: usize, f: &dyn Fn(&CMatrix) -> CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(e1 * d2, e1 * d2);
    for b in 0..d2 {
        for d in 0..d2 {
            let slice = CMatrix::from_fn(d1, d1, |a, c| at(x, a * d2 + b, c * d2 + d));
            let y = f(&slice);
            for a in 0..e1 {
                for c in 0..e1 {
                    out[(a * d2 + b, c * d2 + d)] = y[(a, c)];
                }
            }
        }
    }
    out
}

/// `(ι ⊗ f)(X)` for a linear map `f : B(ℂ^{d2}) → B(ℂ^{e2})`.
pub fn map_second(x: &CMatrix, d1: usize, d2: usize, e2: usize, f: &dyn Fn(&CMatrix) -> CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(d1 * e2, d1 * e2);
    for a in 0..d1 {
        for c in 0..d1 {
            let slice = CMatrix::from_fn(d2, d2, |b, d| at(x, a * d2 + b, c * d2 + d));
            let y = f(&slice);
            for b in 0..e2 {
                for d in 0..e2 {
                    out[(a * e2 + b, c * e2 + d)] = y[(b, d)];
                }
            }
        }
    }
    out
}

/// Multiplication `m(x ⊗ y) = xy` on `B(ℂ^d ⊗ ℂ^d)`.
pub fn multiply(x: &CMatrix, d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |a, e| {
        let mut s = ZERO;
        for c in 0..d {
            s += at(x, a * d + c, c * d + e);
        }
        s
    })
}

/// On `H₁ ⊗ H₂ ⊗ H₂`: `x ⊗ y ⊗ z ↦ x ⊗ yz`.
pub fn contract_23(y: &CMatrix, d1: usize, d2: usize) -> CMatrix {
    let idx = |a: usize, b: usize, c: usize| (a * d2 + b) * d2 + c;
    CMatrix::from_fn(d1 * d2, d1 * d2, |r, col| {
        let (r1, r2) = (r / d2, r % d2);
        let (c1, c3) = (col / d2, col % d2);
        let mut s = ZERO;
        for k in 0..d2 {
            s += at(y, idx(r1, r2, k), idx(c1, k, c3));
        }
        s
    })
}

/// On `H₁ ⊗ H₂ ⊗ H₁`: `x ⊗ y ⊗ z ↦ xz ⊗ y`.
pub fn contract_13(y: &CMatrix, d1: usize, d2: usize) -> CMatrix {
    let idx = |a: usize, b: usize, c: usize| (a * d2 + b) * d1 + c;
    CMatrix::from_fn(d1 * d2, d1 * d2, |r, col| {
        let (r1, r2) = (r / d2, r % d2);
        let (c1, c2) = (col / d2, col % d2);
        let mut s = ZERO;
        for k in 0..d1 {
            s += at(y, idx(r1, r2, k), idx(k, c2, c1));
        }
        s
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kron;
    use crate::sample::Sampler;

    #[test]
    fn elementary_tensor_oracles() {
        let mut s = Sampler::new(1);
        let (x, y, z) = (s.matrix(2, 2), s.matrix(3, 3), s.matrix(3, 3));
        let w = s.matrix(3, 3);
        let xy = kron(&x, &y);
        assert!(slice_second(&xy, 2, 3, &w).dist(&x.scale((&w * &y).trace())) < 1e-12);
        let w1 = s.matrix(2, 2);
        assert!(slice_first(&xy, 2, 3, &w1).dist(&y.scale((&w1 * &x).trace())) < 1e-12);
        let t = |m: &CMatrix| m.transpose();
        assert!(map_first(&xy, 2, 3, 2, &t).dist(&kron(&x.transpose(), &y)) < 1e-12);
        assert!(map_second(&xy, 2, 3, 3, &t).dist(&kron(&x, &y.transpose())) < 1e-12);
        let yz = kron(&y, &z);
        assert!(multiply(&yz, 3).dist(&(&y * &z)) < 1e-12);
        let xyz = kron(&kron(&x, &y), &z);
        assert!(contract_23(&xyz, 2, 3).dist(&kron(&x, &(&y * &z))) < 1e-12);
        let x2 = s.matrix(2, 2);
        let xyx = kron(&kron(&x, &y), &x2);
        assert!(contract_13(&xyx, 2, 3).dist(&kron(&(&x * &x2), &y)) < 1e-12);
    }
}
