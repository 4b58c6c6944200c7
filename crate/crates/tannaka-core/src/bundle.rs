//! Finite presentations of concrete semisimple tensor *-categories, and their validation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{kron, kron_all, CMatrix, Tolerance, C64};
use crate::report::Report;

/// Solution of the conjugate equations for one label: `r ∈ H_ī ⊗ H_i`, `r̄ ∈ H_i ⊗ H_ī`.
#[derive(Debug, Clone, PartialEq)]
pub struct Conj {
    pub r: Vec<C64>,
    pub rbar: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CategoryBundle {
    pub labels: Vec<String>,
    pub unit: usize,
    pub dims: Vec<usize>,
    pub dual: Vec<usize>,
    /// `(i, j, k)` ↦ orthonormal basis of `Mor(X_k, X_i ⊗ X_j)`, each `(d_i d_j) × d_k`.
    pub fusion: BTreeMap<(usize, usize, usize), Vec<CMatrix>>,
    pub conj: Vec<Conj>,
    /// `(i, j)` ↦ `c_{ij} : H_i ⊗ H_j → H_j ⊗ H_i`.
    pub braiding: Option<BTreeMap<(usize, usize), CMatrix>>,
    pub closed: bool,
}

impl CategoryBundle {
    pub fn n_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    /// Total dimension of the loaded part of `A = ⊕ B(H_i)`.
    pub fn algebra_dim(&self) -> usize {
        self.dims.iter().map(|d| d * d).sum()
    }

    pub fn multiplicity(&self, i: usize, j: usize, k: usize) -> usize {
        self.fusion.get(&(i, j, k)).map_or(0, Vec::len)
    }

    pub fn isometries(&self, i: usize, j: usize, k: usize) -> &[CMatrix] {
        self.fusion.get(&(i, j, k)).map_or(&[], Vec::as_slice)
    }

    /// Channels `(k, isometries)` of `i ⊗ j` in label order.
    pub fn channels(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, &[CMatrix])> {
        self.fusion
            .range((i, j, 0)..=(i, j, usize::MAX))
            .filter(|(_, v)| !v.is_empty())
            .map(|(&(_, _, k), v)| (k, v.as_slice()))
    }

    /// `(k, N_{ij}^k)` for every loaded `k` with a fusion entry.
    pub fn fusion_support(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        self.channels(i, j).map(|(k, v)| (k, v.len())).collect()
    }

    /// All summands of `i ⊗ j` are loaded (the dimension count is exhausted).
    pub fn admissible(&self, i: usize, j: usize) -> bool {
        let covered: usize = self.channels(i, j).map(|(k, v)| v.len() * self.dims[k]).sum();
        covered == self.dims[i] * self.dims[j]
    }

    pub fn require_admissible(&self, i: usize, j: usize) -> Result<()> {
        if self.admissible(i, j) {
            Ok(())
        } else {
            Err(Error::WindowEscape { i: self.labels[i].clone(), j: self.labels[j].clone() })
        }
    }

    /// `r_i` reshaped to the `d_ī × d_i` matrix `R[a][m] = r[a·d_i + m]`.
    pub fn r_matrix(&self, i: usize) -> CMatrix {
        CMatrix::from_vec(self.dims[self.dual[i]], self.dims[i], self.conj[i].r.clone())
    }

    pub fn rbar_matrix(&self, i: usize) -> CMatrix {
        CMatrix::from_vec(self.dims[i], self.dims[self.dual[i]], self.conj[i].rbar.clone())
    }

    pub fn braiding_block(&self, i: usize, j: usize) -> Option<&CMatrix> {
        self.braiding.as_ref()?.get(&(i, j))
    }

    /// Structural sanity: indices in range, shapes consistent, dual an involution.
    pub fn check_structure(&self) -> Result<()> {
        let n = self.labels.len();
        let shape = |m: String| Err(Error::Shape(m));
        if n == 0 {
            return shape("bundle has no labels".into());
        }
        for (a, l) in self.labels.iter().enumerate() {
            if self.labels[..a].contains(l) {
                return shape(format!("duplicate label {l}"));
            }
        }
        if self.dims.len() != n || self.dual.len() != n || self.conj.len() != n {
            return shape("dims, dual and conj must cover every label".into());
        }
        if self.unit >= n || self.dims[self.unit] != 1 {
            return shape("unit label must be loaded with dim 1".into());
        }
        for i in 0..n {
            let d = self.dual[i];
            if self.dims[i] == 0 {
                return shape(format!("label {} has dim 0", self.labels[i]));
            }
            if d >= n || self.dual[d] != i || self.dims[d] != self.dims[i] {
                return shape(format!("dual of {} is not an involution preserving dims", self.labels[i]));
            }
        }
        if self.dual[self.unit] != self.unit {
            return shape("unit must be self-dual".into());
        }
        for (&(i, j, k), isos) in &self.fusion {
            if i >= n || j >= n || k >= n {
                return shape(format!("fusion entry ({i},{j},{k}) out of range"));
            }
            for v in isos {
                if v.shape() != (self.dims[i] * self.dims[j], self.dims[k]) {
                    return shape(format!(
                        "fusion ({},{},{}): isometry is {}x{}, expected {}x{}",
                        self.labels[i],
                        self.labels[j],
                        self.labels[k],
                        v.rows(),
                        v.cols(),
                        self.dims[i] * self.dims[j],
                        self.dims[k]
                    ));
                }
            }
        }
        for i in 0..n {
            let want = self.dims[i] * self.dims[self.dual[i]];
            if self.conj[i].r.len() != want || self.conj[i].rbar.len() != want {
                return shape(format!("conj {}: r and rbar need length {want}", self.labels[i]));
            }
        }
        if let Some(br) = &self.braiding {
            for (&(i, j), c) in br {
                if i >= n || j >= n {
                    return shape(format!("braiding entry ({i},{j}) out of range"));
                }
                let d = self.dims[i] * self.dims[j];
                if c.shape() != (d, d) {
                    return shape(format!(
                        "braiding ({},{}): expected {d}x{d}",
                        self.labels[i], self.labels[j]
                    ));
                }
            }
            for i in 0..n {
                for j in 0..n {
                    if !br.contains_key(&(i, j)) {
                        return shape(format!(
                            "braiding ({},{}) missing",
                            self.labels[i], self.labels[j]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of complex scalars in the fusion, conjugate and braiding data.
    pub fn n_scalars(&self) -> usize {
        let f: usize = self.fusion.values().flatten().map(|m| m.data().len()).sum();
        let c: usize = self.conj.iter().map(|c| c.r.len() + c.rbar.len()).sum();
        let br: usize = self.braiding.iter().flat_map(|b| b.values()).map(|m| m.data().len()).sum();
        f + c + br
    }

    /// Add `delta` to the scalar at position `idx` in the order fusion, conjugates, braiding.
    /// Used for robustness tests of the validator.
    pub fn perturb_scalar(&mut self, idx: usize, delta: C64) {
        let mut idx = idx;
        for m in self.fusion.values_mut().flatten() {
            let d = m.data_mut();
            if idx < d.len() {
                d[idx] += delta;
                return;
            }
            idx -= d.len();
        }
        for c in &mut self.conj {
            for v in [&mut c.r, &mut c.rbar] {
                if idx < v.len() {
                    v[idx] += delta;
                    return;
                }
                idx -= v.len();
            }
        }
        for m in self.braiding.iter_mut().flat_map(|b| b.values_mut()) {
            let d = m.data_mut();
            if idx < d.len() {
                d[idx] += delta;
                return;
            }
            idx -= d.len();
        }
        panic!("scalar index out of range");
    }

    pub fn loc2(&self, i: usize, j: usize) -> String {
        format!("{},{}", self.labels[i], self.labels[j])
    }

    pub fn loc3(&self, i: usize, j: usize, k: usize) -> String {
        format!("{},{},{}", self.labels[i], self.labels[j], self.labels[k])
    }
}

/// Push a matrix comparison into `report`.
pub(crate) fn compare(
    report: &mut Report,
    tol: Tolerance,
    check: &str,
    loc: impl Into<String>,
    x: &CMatrix,
    y: &CMatrix,
) -> f64 {
    let res = x.dist(y);
    let scale = x.norm().max(y.norm());
    report.push(check, loc, res, tol.accepts(res, scale));
    res
}

fn count_check(report: &mut Report, check: &str, loc: String, got: usize, want: usize) {
    report.push(check, loc, (got as f64 - want as f64).abs(), got == want);
}

/// Run every validation check in order and collect the results.
pub fn validate_bundle(b: &CategoryBundle, tol: Tolerance) -> Report {
    let mut rep = Report::new();
    let n = b.n_labels();
    let labels = 0..n;

    // Orthonormality of each channel against every channel of the same pair.
    for i in labels.clone() {
        for j in labels.clone() {
            let chans: Vec<(usize, &[CMatrix])> = b.channels(i, j).collect();
            for &(k, vk) in &chans {
                let mut res = 0.0;
                let mut scale: f64 = 1.0;
                for (a, v) in vk.iter().enumerate() {
                    for &(k2, vk2) in &chans {
                        for (a2, w) in vk2.iter().enumerate() {
                            let g = &v.adjoint() * w;
                            let want = if k == k2 && a == a2 {
                                CMatrix::identity(b.dims[k])
                            } else {
                                CMatrix::zeros(b.dims[k], b.dims[k2])
                            };
                            let d = g.dist(&want);
                            res += d * d;
                            scale = scale.max(g.norm());
                        }
                    }
                }
                let res = libm::sqrt(res);
                rep.push("orthonormality", b.loc3(i, j, k), res, tol.accepts(res, scale));
            }
        }
    }

    // Completeness.
    for i in labels.clone() {
        for j in labels.clone() {
            let d = b.dims[i] * b.dims[j];
            if !b.admissible(i, j) && !b.closed {
                rep.skip("completeness", b.loc2(i, j), "summands leave the window");
                continue;
            }
            let mut sum = CMatrix::zeros(d, d);
            for (_, vs) in b.channels(i, j) {
                for v in vs {
                    sum += &(v * &v.adjoint());
                }
            }
            compare(&mut rep, tol, "completeness", b.loc2(i, j), &sum, &CMatrix::identity(d));
        }
    }

    // Unit and dual fusion constraints, fusion symmetries.
    let u = b.unit;
    for i in labels.clone() {
        for k in labels.clone() {
            let want = usize::from(i == k);
            count_check(&mut rep, "unit-fusion", b.loc3(u, i, k), b.multiplicity(u, i, k), want);
            count_check(&mut rep, "unit-fusion", b.loc3(i, u, k), b.multiplicity(i, u, k), want);
        }
        for j in labels.clone() {
            let want = usize::from(j == b.dual[i]);
            count_check(&mut rep, "dual-fusion", b.loc3(i, j, u), b.multiplicity(i, j, u), want);
        }
    }
    for i in labels.clone() {
        for j in labels.clone() {
            for k in labels.clone() {
                let nk = b.multiplicity(i, j, k);
                let a = b.multiplicity(k, b.dual[j], i);
                let c = b.multiplicity(b.dual[i], k, j);
                let bad = nk.abs_diff(a).max(nk.abs_diff(c));
                rep.push("fusion-symmetry", b.loc3(i, j, k), bad as f64, bad == 0);
            }
        }
    }

    // Conjugate equations, normalization, and the channel-0 condition.
    for i in labels.clone() {
        let ib = b.dual[i];
        let (di, dib) = (b.dims[i], b.dims[ib]);
        let r = CMatrix::column(b.conj[i].r.clone());
        let rb = CMatrix::column(b.conj[i].rbar.clone());
        let zig = &kron(&rb.adjoint(), &CMatrix::identity(di)) * &kron(&CMatrix::identity(di), &r);
        let zag = &kron(&r.adjoint(), &CMatrix::identity(dib)) * &kron(&CMatrix::identity(dib), &rb);
        compare(&mut rep, tol, "conjugate-equations", b.labels[i].clone(), &zig, &CMatrix::identity(di));
        compare(&mut rep, tol, "conjugate-equations", b.labels[i].clone(), &zag, &CMatrix::identity(dib));
        let (nr, nrb) = (r.norm() * r.norm(), rb.norm() * rb.norm());
        let res = (nr - nrb).abs();
        rep.push("normalization", b.labels[i].clone(), res, tol.accepts(res, nr.max(nrb)));
        for (check, vec, a, c) in [("r-channel0", &r, ib, i), ("rbar-channel0", &rb, i, ib)] {
            let isos = b.isometries(a, c, u);
            let mut proj = CMatrix::zeros(vec.rows(), 1);
            for v in isos {
                proj += &(v * &(&v.adjoint() * vec));
            }
            let res = proj.dist(vec) / vec.norm().max(f64::MIN_POSITIVE);
            let ok = !isos.is_empty() && tol.accepts(res, 1.0);
            rep.push(check, b.labels[i].clone(), res, ok);
        }
    }

    // Recoupling: the m-isotypic projection of i ⊗ j ⊗ k built both ways.
    for i in labels.clone() {
        for j in labels.clone() {
            for k in labels.clone() {
                if !b.admissible(i, j) || !b.admissible(j, k) {
                    rep.skip("recoupling", b.loc3(i, j, k), "intermediate fusion leaves the window");
                    continue;
                }
                let (di, dj, dk) = (b.dims[i], b.dims[j], b.dims[k]);
                let dim = di * dj * dk;
                let mut left: BTreeMap<usize, CMatrix> = BTreeMap::new();
                let mut right: BTreeMap<usize, CMatrix> = BTreeMap::new();
                for (l, vs) in b.channels(i, j) {
                    for v in vs {
                        let outer = kron(v, &CMatrix::identity(dk));
                        for (m, ws) in b.channels(l, k) {
                            for w in ws {
                                let x = &outer * w;
                                let p = left.entry(m).or_insert_with(|| CMatrix::zeros(dim, dim));
                                *p += &(&x * &x.adjoint());
                            }
                        }
                    }
                }
                for (l, vs) in b.channels(j, k) {
                    for v in vs {
                        let outer = kron(&CMatrix::identity(di), v);
                        for (m, ws) in b.channels(i, l) {
                            for w in ws {
                                let x = &outer * w;
                                let p = right.entry(m).or_insert_with(|| CMatrix::zeros(dim, dim));
                                *p += &(&x * &x.adjoint());
                            }
                        }
                    }
                }
                let ms: alloc::collections::BTreeSet<usize> =
                    left.keys().chain(right.keys()).copied().collect();
                for m in ms {
                    let z = CMatrix::zeros(dim, dim);
                    let lp = left.get(&m).unwrap_or(&z);
                    let rp = right.get(&m).unwrap_or(&z);
                    let loc = format!("{}->{}", b.loc3(i, j, k), b.labels[m]);
                    compare(&mut rep, tol, "recoupling", loc, lp, rp);
                }
            }
        }
    }

    if b.braiding.is_some() {
        validate_braiding(b, tol, &mut rep);
    }
    rep
}

fn validate_braiding(b: &CategoryBundle, tol: Tolerance, rep: &mut Report) {
    let n = b.n_labels();
    let c = |i: usize, j: usize| b.braiding_block(i, j).expect("structure check covers all pairs");
    let id = CMatrix::identity;
    for j in 0..n {
        compare(rep, tol, "braiding-unit", b.loc2(b.unit, j), c(b.unit, j), &id(b.dims[j]));
        compare(rep, tol, "braiding-unit", b.loc2(j, b.unit), c(j, b.unit), &id(b.dims[j]));
    }
    for i in 0..n {
        for j in 0..n {
            let (di, dj) = (b.dims[i], b.dims[j]);
            for (k, vs) in b.channels(i, j) {
                for (alpha, v) in vs.iter().enumerate() {
                    for m in 0..n {
                        let dm = b.dims[m];
                        let loc = format!("{}->{}#{alpha},{}", b.loc2(i, j), b.labels[k], b.labels[m]);
                        // Naturality of c_{-,m} against v.
                        let lhs = kron_all(&[c(i, m), &id(dj)])
                            * kron_all(&[&id(di), c(j, m)])
                            * kron(v, &id(dm));
                        let rhs = &kron(&id(dm), v) * c(k, m);
                        compare(rep, tol, "braiding-hexagon", loc.clone(), &lhs, &rhs);
                        // Mirror: naturality of c_{m,-}.
                        let lhs = kron_all(&[&id(di), c(m, j)])
                            * kron_all(&[c(m, i), &id(dj)])
                            * kron(&id(dm), v);
                        let rhs = &kron(v, &id(dm)) * c(m, k);
                        compare(rep, tol, "braiding-hexagon-mirror", loc, &lhs, &rhs);
                    }
                }
            }
        }
    }
}

/// Whether every braiding block is unitary. Not part of validity: braidings need not be unitary.
pub fn braiding_is_unitary(b: &CategoryBundle, tol: Tolerance) -> Option<bool> {
    let br = b.braiding.as_ref()?;
    Some(br.values().all(|c| tol.close(&(&c.adjoint() * c), &CMatrix::identity(c.rows()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ONE;

    pub(crate) fn trivial() -> CategoryBundle {
        let mut fusion = BTreeMap::new();
        fusion.insert((0, 0, 0), alloc::vec![CMatrix::identity(1)]);
        CategoryBundle {
            labels: alloc::vec!["0".into()],
            unit: 0,
            dims: alloc::vec![1],
            dual: alloc::vec![0],
            fusion,
            conj: alloc::vec![Conj { r: alloc::vec![ONE], rbar: alloc::vec![ONE] }],
            braiding: None,
            closed: true,
        }
    }

    #[test]
    fn trivial_bundle_validates() {
        let b = trivial();
        b.check_structure().unwrap();
        let rep = validate_bundle(&b, Tolerance::default());
        assert!(rep.pass(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert!(rep.skipped.is_empty());
    }

    #[test]
    fn shape_errors_are_named() {
        let mut b = trivial();
        b.fusion.insert((0, 0, 0), alloc::vec![CMatrix::identity(2)]);
        match b.check_structure() {
            Err(Error::Shape(msg)) => assert!(msg.contains("fusion (0,0,0)")),
            other => panic!("expected shape error, got {other:?}"),
        }
        let mut b = trivial();
        b.conj[0].r.push(ONE);
        assert!(matches!(b.check_structure(), Err(Error::Shape(m)) if m.contains("conj 0")));
    }
}
