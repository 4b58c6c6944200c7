//! The discrete quantum group `A = ⊕ B(H_i)` reconstructed from a bundle.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::bundle::{validate_bundle, CategoryBundle};
use crate::error::{Error, Result};
use crate::legs;
use crate::linalg::{flip, hermitian_calc, kron, nullspace, CMatrix, Spectral, Tolerance, C64, ZERO};
use crate::report::Report;
use crate::sample::Sampler;

mod verify;

fn sq(x: f64) -> f64 {
    x * x
}

pub use verify::VerifyOptions;

/// A finitely supported element of `A`. Absent blocks are zero.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AqgElement {
    pub blocks: BTreeMap<usize, CMatrix>,
}

impl AqgElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_blocks(blocks: BTreeMap<usize, CMatrix>) -> Self {
        Self { blocks }
    }

    pub fn single(i: usize, m: CMatrix) -> Self {
        let mut blocks = BTreeMap::new();
        blocks.insert(i, m);
        Self { blocks }
    }

    /// Central projection `p_i` onto block `i`.
    pub fn block_unit(b: &CategoryBundle, i: usize) -> Self {
        Self::single(i, CMatrix::identity(b.dims[i]))
    }

    /// Matrix unit `e_{ac}` inside block `i`.
    pub fn matrix_unit(b: &CategoryBundle, i: usize, a: usize, c: usize) -> Self {
        Self::single(i, CMatrix::unit(b.dims[i], a, c))
    }

    /// Identity on every loaded block; a genuine element only for finite bundles.
    pub fn local_unit(b: &CategoryBundle, labels: &[usize]) -> Self {
        Self { blocks: labels.iter().map(|&i| (i, CMatrix::identity(b.dims[i]))).collect() }
    }

    pub fn support(&self) -> Vec<usize> {
        self.blocks.keys().copied().collect()
    }

    pub fn get(&self, i: usize) -> Option<&CMatrix> {
        self.blocks.get(&i)
    }

    pub fn block_or_zero(&self, b: &CategoryBundle, i: usize) -> CMatrix {
        self.blocks.get(&i).cloned().unwrap_or_else(|| CMatrix::zeros(b.dims[i], b.dims[i]))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .filter_map(|(i, x)| other.blocks.get(i).map(|y| (*i, x * y)))
            .collect();
        Self { blocks }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut blocks = self.blocks.clone();
        for (i, y) in &other.blocks {
            match blocks.get_mut(i) {
                Some(x) => *x += y,
                None => {
                    blocks.insert(*i, y.clone());
                }
            }
        }
        Self { blocks }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { blocks: self.blocks.iter().map(|(i, x)| (*i, x.scale(c))).collect() }
    }

    pub fn adjoint(&self) -> Self {
        Self { blocks: self.blocks.iter().map(|(i, x)| (*i, x.adjoint())).collect() }
    }

    /// Drop blocks whose entries are all below `eps` in modulus.
    pub fn prune(mut self, eps: f64) -> Self {
        self.blocks.retain(|_, x| x.max_abs() > eps);
        self
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.blocks.values().map(|x| x.norm() * x.norm()).sum())
    }

    /// Frobenius distance, treating missing blocks as zero.
    pub fn dist(&self, other: &Self) -> f64 {
        let mut s = 0.0;
        for (i, x) in &self.blocks {
            let d = match other.blocks.get(i) {
                Some(y) => x.dist(y),
                None => x.norm(),
            };
            s += d * d;
        }
        for (i, y) in &other.blocks {
            if !self.blocks.contains_key(i) {
                s += y.norm() * y.norm();
            }
        }
        libm::sqrt(s)
    }
}

/// An element of `M(A) = ∏ B(H_i)`, stored on every loaded label.
#[derive(Debug, Clone, PartialEq)]
pub struct Multiplier {
    pub blocks: Vec<CMatrix>,
}

impl Multiplier {
    pub fn identity(b: &CategoryBundle) -> Self {
        Self { blocks: b.dims.iter().map(|&d| CMatrix::identity(d)).collect() }
    }

    pub fn from_element(b: &CategoryBundle, a: &AqgElement) -> Self {
        Self { blocks: (0..b.n_labels()).map(|i| a.block_or_zero(b, i)).collect() }
    }

    /// The same blocks viewed as a finitely supported element (exact on finite bundles).
    pub fn to_element(&self) -> AqgElement {
        AqgElement { blocks: self.blocks.iter().cloned().enumerate().collect() }
    }

    pub fn block(&self, i: usize) -> &CMatrix {
        &self.blocks[i]
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { blocks: self.blocks.iter().zip(&other.blocks).map(|(x, y)| x * y).collect() }
    }

    pub fn adjoint(&self) -> Self {
        Self { blocks: self.blocks.iter().map(CMatrix::adjoint).collect() }
    }

    pub fn inverse(&self) -> Option<Self> {
        let blocks = self.blocks.iter().map(CMatrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(Self { blocks })
    }

    pub fn dist(&self, other: &Self) -> f64 {
        libm::sqrt(self.blocks.iter().zip(&other.blocks).map(|(x, y)| sq(x.dist(y))).sum())
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.blocks.iter().map(|x| sq(x.norm())).sum())
    }
}

/// Blocks `(i, j) ↦ B(H_i ⊗ H_j)`. As an element of `A ⊗ A`, absent blocks are zero; as a
/// multiplier (e.g. `Δ(x)` or an R-matrix) the map holds every loaded pair where it is known.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PairElement {
    pub blocks: BTreeMap<(usize, usize), CMatrix>,
}

pub type PairMultiplier = PairElement;

impl PairElement {
    pub fn get(&self, i: usize, j: usize) -> Option<&CMatrix> {
        self.blocks.get(&(i, j))
    }

    pub fn block_or_zero(&self, b: &CategoryBundle, i: usize, j: usize) -> CMatrix {
        self.blocks.get(&(i, j)).cloned().unwrap_or_else(|| {
            let d = b.dims[i] * b.dims[j];
            CMatrix::zeros(d, d)
        })
    }

    pub fn support(&self) -> Vec<(usize, usize)> {
        self.blocks.keys().copied().collect()
    }

    pub fn tensor(a: &AqgElement, c: &AqgElement) -> Self {
        let mut blocks = BTreeMap::new();
        for (i, x) in &a.blocks {
            for (j, y) in &c.blocks {
                blocks.insert((*i, *j), kron(x, y));
            }
        }
        Self { blocks }
    }

    pub fn prune(mut self, eps: f64) -> Self {
        self.blocks.retain(|_, x| x.max_abs() > eps);
        self
    }

    pub fn dist(&self, other: &Self) -> f64 {
        let mut s = 0.0;
        for (k, x) in &self.blocks {
            s += match other.blocks.get(k) {
                Some(y) => sq(x.dist(y)),
                None => sq(x.norm()),
            };
        }
        for (k, y) in &other.blocks {
            if !self.blocks.contains_key(k) {
                s += sq(y.norm());
            }
        }
        libm::sqrt(s)
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.blocks.values().map(|x| sq(x.norm())).sum())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Modular data of the left Haar functional.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularData {
    /// `δ` with `(φ⊗ι)Δ(a) = φ(a)δ`.
    pub delta: Multiplier,
    /// `ρ(a) = F a F⁻¹`; stored as `F` per block.
    pub rho_conjugator: Multiplier,
    /// `φ∘S² = μφ`.
    pub mu: C64,
    pub report: Report,
}

#[derive(Debug, Clone)]
pub struct Aqg {
    pub bundle: CategoryBundle,
    pub tol: Tolerance,
    /// `F_i = (J_i* J_i)⁻¹`.
    pub f: Multiplier,
    pub f_inv: Multiplier,
    /// `w_i = Tr F_i`, the quantum dimensions.
    pub haar_weights: Vec<f64>,
    /// `φ(a) = Σ Tr(left_density_i · a_i)`.
    pub left_density: Vec<CMatrix>,
    /// `ψ(a) = Σ Tr(right_density_i · a_i)`.
    pub right_density: Vec<CMatrix>,
    /// True when the weighted-trace ansatz was rejected and the invariance system was solved.
    pub haar_fallback: bool,
    /// Haar invariance checks run while reconstructing.
    pub construction_report: Report,
    /// Labels whose pairwise fusion stays inside the window; sampled checks live here.
    pub core: Vec<usize>,
}

/// Largest label set `S` (greedy in label order, closed under duals) with every pair in `S × S`
/// admissible. All labels for finite bundles.
fn admissible_core(b: &CategoryBundle) -> Vec<usize> {
    let mut core: Vec<usize> = Vec::new();
    for i in 0..b.n_labels() {
        let ok = core.iter().chain(core::iter::once(&i)).all(|&j| b.admissible(i, j) && b.admissible(j, i));
        if ok {
            core.push(i);
        }
    }
    let closed: Vec<usize> = core.iter().copied().filter(|&i| core.contains(&b.dual[i])).collect();
    closed
}

/// Per-label `F_i` from the conjugate data, cross-checking `r̄` against `r`.
pub fn f_from_conj(b: &CategoryBundle, tol: Tolerance) -> Result<(Multiplier, Multiplier)> {
    let mut f = Vec::new();
    let mut f_inv = Vec::new();
    for i in 0..b.n_labels() {
        let m = b.r_matrix(i).conj();
        let inconsistent = |residual| Error::ConjInconsistent { label: b.labels[i].clone(), residual };
        let m_inv = m.inverse().ok_or_else(|| inconsistent(f64::INFINITY))?;
        let res = b.rbar_matrix(i).dist(&m_inv);
        if !tol.accepts(res, m_inv.norm()) {
            return Err(inconsistent(res));
        }
        let jj = &m.adjoint() * &m;
        f.push(hermitian_calc(&jj, Spectral::Inverse, tol)?);
        f_inv.push(jj);
    }
    Ok((Multiplier { blocks: f }, Multiplier { blocks: f_inv }))
}

/// Validate `b` and build its quantum group.
pub fn reconstruct(b: &CategoryBundle, tol: Tolerance) -> Result<Aqg> {
    b.check_structure()?;
    let report = validate_bundle(b, tol);
    if !report.pass() {
        return Err(Error::InvalidBundle(report));
    }
    let (f, f_inv) = f_from_conj(b, tol)?;
    let haar_weights: Vec<f64> = f.blocks.iter().map(|x| x.trace().re).collect();
    let left_density = f.blocks.iter().zip(&haar_weights).map(|(x, w)| x.scale_real(*w)).collect();
    let right_density = f_inv.blocks.iter().zip(&haar_weights).map(|(x, w)| x.scale_real(*w)).collect();
    let mut q = Aqg {
        bundle: b.clone(),
        tol,
        f,
        f_inv,
        haar_weights,
        left_density,
        right_density,
        haar_fallback: false,
        construction_report: Report::new(),
        core: admissible_core(b),
    };
    let rep = q.haar_basis_check();
    if !rep.pass() {
        if !b.closed {
            return Err(Error::InconsistentSolve(format!(
                "Haar ansatz fails invariance (residual {:.3e}) on a window",
                rep.max_residual()
            )));
        }
        let left = q.invariant_functionals(Side::Left)?;
        let right = q.invariant_functionals(Side::Right)?;
        if left.len() != 1 || right.len() != 1 {
            return Err(Error::InconsistentSolve("invariant functional is not unique".into()));
        }
        q.left_density = normalize_density(&left[0], b.unit);
        q.right_density = normalize_density(&right[0], b.unit);
        q.haar_fallback = true;
    }
    q.construction_report = rep;
    Ok(q)
}

fn normalize_density(w: &[CMatrix], unit: usize) -> Vec<CMatrix> {
    let c = w[unit][(0, 0)];
    w.iter().map(|x| x.scale(c.inv())).collect()
}

impl Aqg {
    pub fn n_labels(&self) -> usize {
        self.bundle.n_labels()
    }

    pub fn dim(&self, i: usize) -> usize {
        self.bundle.dims[i]
    }

    pub fn labels(&self) -> core::ops::Range<usize> {
        0..self.bundle.n_labels()
    }

    pub fn is_finite(&self) -> bool {
        self.bundle.closed
    }

    pub fn require_finite(&self) -> Result<()> {
        if self.bundle.closed {
            Ok(())
        } else {
            Err(Error::NotFinite)
        }
    }

    /// `Δ(a)_{ij} = Σ_{k,α} v a_k v*`. Exact at every loaded pair, because `a` vanishes on
    /// unloaded labels.
    pub fn delta_block(&self, a: &AqgElement, i: usize, j: usize) -> CMatrix {
        let d = self.dim(i) * self.dim(j);
        let mut out = CMatrix::zeros(d, d);
        for (k, vs) in self.bundle.channels(i, j) {
            if let Some(ak) = a.get(k) {
                for v in vs {
                    out += &(&(v * ak) * &v.adjoint());
                }
            }
        }
        out
    }

    /// `Δ(x)_{ij}` for a multiplier; needs every summand of `i ⊗ j` loaded.
    pub fn delta_multiplier_block(&self, x: &Multiplier, i: usize, j: usize) -> Result<CMatrix> {
        self.bundle.require_admissible(i, j)?;
        let d = self.dim(i) * self.dim(j);
        let mut out = CMatrix::zeros(d, d);
        for (k, vs) in self.bundle.channels(i, j) {
            for v in vs {
                out += &(&(v * x.block(k)) * &v.adjoint());
            }
        }
        Ok(out)
    }

    /// `Δ(a)` on every loaded pair where it is nonzero.
    pub fn delta(&self, a: &AqgElement) -> PairMultiplier {
        let mut blocks = BTreeMap::new();
        for i in self.labels() {
            for j in self.labels() {
                if self.bundle.channels(i, j).any(|(k, _)| a.get(k).is_some()) {
                    blocks.insert((i, j), self.delta_block(a, i, j));
                }
            }
        }
        PairElement { blocks }
    }

    /// `Δ(a)(b⊗1)` (`Side::Right`) or `(b⊗1)Δ(a)` (`Side::Left`). The pair `(n, j)` can only
    /// contribute when `n ∈ supp b` and `j ⊂ n̄ ⊗ m` for some `m ∈ supp a`.
    pub fn delta_mult(&self, a: &AqgElement, b: &AqgElement, side: Side) -> Result<PairElement> {
        let bd = &self.bundle;
        let mut blocks = BTreeMap::new();
        for (&n, bn) in &b.blocks {
            let mut js = alloc::collections::BTreeSet::new();
            for &m in a.blocks.keys() {
                bd.require_admissible(bd.dual[n], m)?;
                for (j, _) in bd.channels(bd.dual[n], m) {
                    js.insert(j);
                }
            }
            for j in js {
                let dl = self.delta_block(a, n, j);
                let bb = kron(bn, &CMatrix::identity(self.dim(j)));
                let x = match side {
                    Side::Right => &dl * &bb,
                    Side::Left => &bb * &dl,
                };
                blocks.insert((n, j), x);
            }
        }
        Ok(PairElement { blocks })
    }

    pub fn counit(&self, a: &AqgElement) -> C64 {
        a.get(self.bundle.unit).map_or(ZERO, |x| x[(0, 0)])
    }

    /// `S` applied to a block of label `ī`, landing in label `i`: `R̄_i x^T conj(R_i)`.
    pub fn antipode_block(&self, x: &CMatrix, i: usize) -> CMatrix {
        let b = &self.bundle;
        &(&b.rbar_matrix(i) * &x.transpose()) * &b.r_matrix(i).conj()
    }

    /// `S⁻¹(a) = S(a*)*` on a block of label `ī`, landing in label `i`.
    pub fn antipode_inv_block(&self, x: &CMatrix, i: usize) -> CMatrix {
        self.antipode_block(&x.adjoint(), i).adjoint()
    }

    pub fn antipode(&self, a: &AqgElement) -> AqgElement {
        let blocks = a
            .blocks
            .iter()
            .map(|(&k, x)| {
                let i = self.bundle.dual[k];
                (i, self.antipode_block(x, i))
            })
            .collect();
        AqgElement { blocks }
    }

    pub fn antipode_inv(&self, a: &AqgElement) -> AqgElement {
        self.antipode(&a.adjoint()).adjoint()
    }

    pub fn antipode_multiplier(&self, x: &Multiplier) -> Multiplier {
        let blocks = self.labels().map(|i| self.antipode_block(x.block(self.bundle.dual[i]), i)).collect();
        Multiplier { blocks }
    }

    pub fn f_element(&self) -> Multiplier {
        self.f.clone()
    }

    pub fn haar(&self, a: &AqgElement, side: Side) -> C64 {
        let dens = match side {
            Side::Left => &self.left_density,
            Side::Right => &self.right_density,
        };
        a.blocks.iter().map(|(i, x)| (&dens[*i] * x).trace()).sum()
    }

    pub fn density(&self, side: Side) -> &[CMatrix] {
        match side {
            Side::Left => &self.left_density,
            Side::Right => &self.right_density,
        }
    }

    pub fn random_element(&self, s: &mut Sampler, labels: &[usize]) -> AqgElement {
        AqgElement { blocks: labels.iter().map(|&i| (i, s.matrix(self.dim(i), self.dim(i)))).collect() }
    }

    /// Labels `j` such that `(n̄, m)` is admissible for every `m` in `support`; at those blocks
    /// the infinite sums defining `(ι⊗φ)Δ(a)` have all their terms loaded.
    fn haar_blocks(&self, support: &[usize], n: usize) -> bool {
        let b = &self.bundle;
        support.iter().all(|&m| b.admissible(b.dual[n], m) && b.admissible(m, b.dual[n]))
    }

    /// `(ι⊗ω)Δ(a)` at block `n`, with `ω` given by per-label densities.
    pub fn slice_delta_second(&self, a: &AqgElement, n: usize, dens: &[CMatrix]) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim(n), self.dim(n));
        for j in self.labels() {
            if self.bundle.channels(n, j).any(|(k, _)| a.get(k).is_some()) {
                let x = self.delta_block(a, n, j);
                out += &legs::slice_second(&x, self.dim(n), self.dim(j), &dens[j]);
            }
        }
        out
    }

    /// `(ω⊗ι)Δ(a)` at block `n`.
    pub fn slice_delta_first(&self, a: &AqgElement, n: usize, dens: &[CMatrix]) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim(n), self.dim(n));
        for i in self.labels() {
            if self.bundle.channels(i, n).any(|(k, _)| a.get(k).is_some()) {
                let x = self.delta_block(a, i, n);
                out += &legs::slice_first(&x, self.dim(i), self.dim(n), &dens[i]);
            }
        }
        out
    }

    /// Left invariance `(ι⊗φ)Δ(a) = φ(a)1` and right invariance `(ψ⊗ι)Δ(a) = ψ(a)1` on the
    /// matrix units of the core.
    fn haar_basis_check(&self) -> Report {
        let mut rep = Report::new();
        for &m in &self.core {
            for x in 0..self.dim(m) {
                for y in 0..self.dim(m) {
                    let a = AqgElement::matrix_unit(&self.bundle, m, x, y);
                    for n in self.labels() {
                        if !self.haar_blocks(&[m], n) {
                            continue;
                        }
                        let id = CMatrix::identity(self.dim(n));
                        let loc = self.bundle.loc2(m, n);
                        let lhs = self.slice_delta_second(&a, n, &self.left_density);
                        let rhs = id.scale(self.haar(&a, Side::Left));
                        crate::bundle::compare(&mut rep, self.tol, "haar-left-ansatz", loc.clone(), &lhs, &rhs);
                        let lhs = self.slice_delta_first(&a, n, &self.right_density);
                        let rhs = id.scale(self.haar(&a, Side::Right));
                        crate::bundle::compare(&mut rep, self.tol, "haar-right-ansatz", loc, &lhs, &rhs);
                    }
                }
            }
        }
        rep
    }

    /// Basis of all left (or right) invariant functionals, as per-label densities. Finite only.
    pub fn invariant_functionals(&self, side: Side) -> Result<Vec<Vec<CMatrix>>> {
        self.require_finite()?;
        let b = &self.bundle;
        let labels: Vec<usize> = self.labels().collect();
        // Unknown (j, d, c): entry W_j[d][c] of the density.
        let mut unknowns = Vec::new();
        for &j in &labels {
            for d in 0..self.dim(j) {
                for c in 0..self.dim(j) {
                    unknowns.push((j, d, c));
                }
            }
        }
        let nu = unknowns.len();
        let mut columns: Vec<Vec<C64>> = Vec::with_capacity(nu);
        for &(j, d, c) in &unknowns {
            let mut dens: Vec<CMatrix> = labels.iter().map(|&l| CMatrix::zeros(self.dim(l), self.dim(l))).collect();
            dens[j][(d, c)] = C64::new(1.0, 0.0);
            let mut col = Vec::new();
            for &m in &labels {
                for x in 0..self.dim(m) {
                    for y in 0..self.dim(m) {
                        let a = AqgElement::matrix_unit(b, m, x, y);
                        let val: C64 = (&dens[m] * a.get(m).unwrap()).trace();
                        for &n in &labels {
                            let s = match side {
                                Side::Left => self.slice_delta_second(&a, n, &dens),
                                Side::Right => self.slice_delta_first(&a, n, &dens),
                            };
                            let r = &s - &CMatrix::identity(self.dim(n)).scale(val);
                            col.extend_from_slice(r.data());
                        }
                    }
                }
            }
            columns.push(col);
        }
        let n_rows = columns[0].len();
        let mut rows = (0..n_rows).map(|r| columns.iter().map(|c| c[r]).collect::<Vec<_>>());
        let null = nullspace(nu, &mut rows, self.tol);
        Ok(null
            .into_iter()
            .map(|v| {
                let mut dens: Vec<CMatrix> = labels.iter().map(|&l| CMatrix::zeros(self.dim(l), self.dim(l))).collect();
                for (&(j, d, c), z) in unknowns.iter().zip(v) {
                    dens[j][(d, c)] = z;
                }
                dens
            })
            .collect())
    }

    /// `δ`, `ρ` and `μ` of the left Haar functional, verified on seeded samples.
    pub fn modular_data(&self, n_samples: usize, seed: u64) -> Result<ModularData> {
        let b = &self.bundle;
        let tol = self.tol;
        let mut rep = Report::new();
        let p0 = AqgElement::block_unit(b, b.unit);
        let phi0 = self.haar(&p0, Side::Left);
        let delta = Multiplier {
            blocks: self.labels().map(|n| self.slice_delta_first(&p0, n, &self.left_density).scale(phi0.inv())).collect(),
        };
        let mut s = Sampler::new(seed);
        for _ in 0..n_samples {
            let a = self.random_element(&mut s, &self.core);
            let phi = self.haar(&a, Side::Left);
            for n in self.labels() {
                if !self.haar_blocks(&self.core, n) {
                    continue;
                }
                let lhs = self.slice_delta_first(&a, n, &self.left_density);
                let rhs = delta.block(n).scale(phi);
                let res = lhs.dist(&rhs);
                if !tol.accepts(res, lhs.norm().max(rhs.norm())) {
                    return Err(Error::InconsistentSolve(format!(
                        "modular element at {} (residual {res:.3e})",
                        b.labels[n]
                    )));
                }
                rep.push("modular-solve", b.labels[n].clone(), res, true);
            }
        }
        // Δ(δ) = δ ⊗ δ where defined, ε(δ) = 1, S(δ) = δ⁻¹.
        for i in self.labels() {
            for j in self.labels() {
                match self.delta_multiplier_block(&delta, i, j) {
                    Ok(d) => {
                        crate::bundle::compare(&mut rep, tol, "modular-grouplike", b.loc2(i, j), &d, &kron(delta.block(i), delta.block(j)));
                    }
                    Err(_) => rep.skip("modular-grouplike", b.loc2(i, j), "summands leave the window"),
                }
            }
        }
        let e = delta.block(b.unit)[(0, 0)];
        rep.push("modular-counit", b.labels[b.unit].clone(), (e - 1.0).norm(), tol.close_scalar(e, C64::new(1.0, 0.0)));
        let inv = delta.inverse().ok_or_else(|| Error::InconsistentSolve("modular element is singular".into()))?;
        let sd = self.antipode_multiplier(&delta);
        for i in self.labels() {
            crate::bundle::compare(&mut rep, tol, "modular-antipode", b.labels[i].clone(), sd.block(i), inv.block(i));
        }
        // ρ(a) = F a F⁻¹ satisfies φ(ab) = φ(bρ(a)); μ from φ(S²a) = μφ(a).
        let mut mu = None;
        for _ in 0..n_samples {
            let a = self.random_element(&mut s, &self.core);
            let c = self.random_element(&mut s, &self.core);
            let rho_a = AqgElement {
                blocks: a.blocks.iter().map(|(i, x)| (*i, &(self.f.block(*i) * x) * self.f_inv.block(*i))).collect(),
            };
            let lhs = self.haar(&a.mul(&c), Side::Left);
            let rhs = self.haar(&c.mul(&rho_a), Side::Left);
            rep.push("modular-kms", "sample", (lhs - rhs).norm(), tol.close_scalar(lhs, rhs));
            let phi = self.haar(&a, Side::Left);
            let phi_s2 = self.haar(&self.antipode(&self.antipode(&a)), Side::Left);
            let m = phi_s2 / phi;
            match mu {
                None => mu = Some(m),
                Some(m0) => rep.push("modular-mu", "sample", (m - m0).norm(), tol.close_scalar(m, m0)),
            }
        }
        let mu = mu.unwrap_or(C64::new(1.0, 0.0));
        Ok(ModularData { delta, rho_conjugator: self.f.clone(), mu, report: rep })
    }

    /// `σ` on a pair block: `flip · X_{ji} · flip`, giving the `(i, j)` block of `σ(X)`.
    pub fn flip_block(&self, x_ji: &CMatrix, i: usize, j: usize) -> CMatrix {
        let (di, dj) = (self.dim(i), self.dim(j));
        &(&flip(dj, di) * x_ji) * &flip(di, dj)
    }
}
