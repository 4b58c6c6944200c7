//! Generators for the shipped bundles.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::bundle::{CategoryBundle, Conj};
use crate::error::{Error, Result};
use crate::linalg::{
    flip, hermitian_calc, kron, kron_all, orthonormalize, solve_intertwiners, CMatrix, Spectral,
    Tolerance, C64, ONE, ZERO,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Irrep {
    pub name: String,
    pub dim: usize,
    /// One unitary matrix per group element, in table order.
    pub matrices: Vec<CMatrix>,
}

/// A finite group with its complete list of unitary irreducible representations.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPresentation {
    pub name: String,
    pub order: usize,
    /// `table[g][h]` is the index of `gh`; element 0 is the identity.
    pub table: Vec<Vec<usize>>,
    pub irreps: Vec<Irrep>,
}

fn cis(theta: f64) -> C64 {
    C64::new(libm::cos(theta), libm::sin(theta))
}

fn root_of_unity(n: usize, k: usize) -> C64 {
    cis(TAU * (k % n) as f64 / n as f64)
}

impl GroupPresentation {
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadPresentation("Z/0".into()));
        }
        let gen = CMatrix::scalar(root_of_unity(n, 1));
        Self::from_generators(&format!("Z{n}"), &[gen], false, &[])
    }

    pub fn s3() -> Result<Self> {
        let r = rotation(TAU / 3.0);
        let s = CMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        Self::from_generators("S3", &[r, s], true, &["triv", "sgn", "std"])
    }

    pub fn d4() -> Result<Self> {
        let r = rotation(TAU / 4.0);
        let s = CMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        Self::from_generators("D4", &[r, s], true, &[])
    }

    pub fn q8() -> Result<Self> {
        let i = CMatrix::diag(&[C64::new(0.0, 1.0), C64::new(0.0, -1.0)]);
        let j = CMatrix::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        Self::from_generators("Q8", &[i, j], true, &[])
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        match lower.as_str() {
            "s3" => Self::s3(),
            "d4" => Self::d4(),
            "q8" => Self::q8(),
            _ => {
                let n = lower
                    .strip_prefix('z')
                    .and_then(|s| s.trim_start_matches('/').parse::<usize>().ok())
                    .ok_or_else(|| Error::BadPresentation(format!("unknown group {name}")))?;
                Self::cyclic(n)
            }
        }
    }

    /// Close the matrix group generated by `gens` (a faithful unitary representation), read off
    /// the multiplication table, and list its irreducibles: every 1-dim character, plus the
    /// generating representation itself when `include_faithful` and it is not 1-dim.
    fn from_generators(name: &str, gens: &[CMatrix], include_faithful: bool, names: &[&str]) -> Result<Self> {
        let d = gens[0].rows();
        let same = |a: &CMatrix, b: &CMatrix| a.dist(b) < 1e-9;
        let mut elems = vec![CMatrix::identity(d)];
        // For each element, (parent, generator) with elems[g] = elems[parent] · gens[gen].
        let mut word: Vec<Option<(usize, usize)>> = vec![None];
        let mut frontier = 0;
        while frontier < elems.len() {
            for (k, g) in gens.iter().enumerate() {
                let x = &elems[frontier] * g;
                if !elems.iter().any(|e| same(e, &x)) {
                    elems.push(x);
                    word.push(Some((frontier, k)));
                    if elems.len() > 1024 {
                        return Err(Error::BadPresentation("group too large".into()));
                    }
                }
            }
            frontier += 1;
        }
        let order = elems.len();
        let find = |x: &CMatrix| elems.iter().position(|e| same(e, x));
        let mut table = vec![vec![0; order]; order];
        for g in 0..order {
            for h in 0..order {
                table[g][h] = find(&(&elems[g] * &elems[h]))
                    .ok_or_else(|| Error::BadPresentation("generators do not close".into()))?;
            }
        }
        let gen_orders: Vec<usize> = gens
            .iter()
            .map(|g| {
                let mut x = g.clone();
                let mut k = 1;
                while !same(&x, &CMatrix::identity(d)) {
                    x = &x * g;
                    k += 1;
                }
                k
            })
            .collect();

        // Characters: assign roots of unity to generators, extend along words, keep homomorphisms.
        let mut chars: Vec<Vec<C64>> = Vec::new();
        let mut exps = vec![0usize; gens.len()];
        loop {
            let mut chi = vec![ONE; order];
            for g in 1..order {
                let (p, k) = word[g].expect("non-identity elements have words");
                chi[g] = chi[p] * root_of_unity(gen_orders[k], exps[k]);
            }
            let hom = (0..order)
                .all(|g| (0..order).all(|h| (chi[table[g][h]] - chi[g] * chi[h]).norm() < 1e-9));
            if hom {
                chars.push(chi);
            }
            let mut pos = 0;
            loop {
                if pos == gens.len() {
                    break;
                }
                exps[pos] += 1;
                if exps[pos] < gen_orders[pos] {
                    break;
                }
                exps[pos] = 0;
                pos += 1;
            }
            if pos == gens.len() {
                break;
            }
        }
        let mut irreps: Vec<Irrep> = chars
            .into_iter()
            .enumerate()
            .map(|(a, chi)| Irrep {
                name: if a == 0 { "triv".to_string() } else { format!("chi{a}") },
                dim: 1,
                matrices: chi.into_iter().map(CMatrix::scalar).collect(),
            })
            .collect();
        if include_faithful && d > 1 {
            irreps.push(Irrep { name: "std".into(), dim: d, matrices: elems });
        }
        if !names.is_empty() {
            if names.len() != irreps.len() {
                return Err(Error::BadPresentation("irrep name list does not match".into()));
            }
            for (ir, n) in irreps.iter_mut().zip(names) {
                ir.name = (*n).to_string();
            }
        }
        let p = Self { name: name.into(), order, table, irreps };
        p.validate()?;
        Ok(p)
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order).find(|&h| self.table[g][h] == 0).expect("validated group")
    }

    pub fn character(&self, irrep: usize) -> Vec<C64> {
        self.irreps[irrep].matrices.iter().map(CMatrix::trace).collect()
    }

    /// Check group axioms, unitarity and homomorphy of the irreps, irreducibility,
    /// pairwise inequivalence, and `Σ d² = |G|`.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::BadPresentation(m));
        let n = self.order;
        if self.table.len() != n || self.table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("table shape".into());
        }
        for g in 0..n {
            if self.table[0][g] != g || self.table[g][0] != g {
                return bad("element 0 is not the identity".into());
            }
            if !(0..n).any(|h| self.table[g][h] == 0 && self.table[h][g] == 0) {
                return bad(format!("element {g} has no inverse"));
            }
            for h in 0..n {
                for k in 0..n {
                    if self.table[self.table[g][h]][k] != self.table[g][self.table[h][k]] {
                        return bad("table is not associative".into());
                    }
                }
            }
        }
        let tol = 1e-9;
        for ir in &self.irreps {
            if ir.matrices.len() != n {
                return bad(format!("irrep {} has wrong matrix count", ir.name));
            }
            for (g, m) in ir.matrices.iter().enumerate() {
                if m.shape() != (ir.dim, ir.dim) {
                    return bad(format!("irrep {} has wrong shape", ir.name));
                }
                if (&m.adjoint() * m).dist(&CMatrix::identity(ir.dim)) > tol {
                    return bad(format!("irrep {} is not unitary", ir.name));
                }
                for h in 0..n {
                    if (m * &ir.matrices[h]).dist(&ir.matrices[self.table[g][h]]) > tol {
                        return bad(format!("irrep {} is not a homomorphism", ir.name));
                    }
                }
            }
        }
        for a in 0..self.irreps.len() {
            for b in 0..self.irreps.len() {
                let (ca, cb) = (self.character(a), self.character(b));
                let ip: C64 = ca.iter().zip(&cb).map(|(x, y)| x.conj() * y).sum::<C64>() / n as f64;
                let want = if a == b { 1.0 } else { 0.0 };
                if (ip - want).norm() > 1e-8 {
                    return bad(format!(
                        "irreps {} and {} fail orthogonality",
                        self.irreps[a].name, self.irreps[b].name
                    ));
                }
            }
        }
        let total: usize = self.irreps.iter().map(|r| r.dim * r.dim).sum();
        if total != n {
            return bad(format!("sum of squared dims {total} != order {n}"));
        }
        if self.irreps.first().map(|r| r.dim) != Some(1)
            || self.irreps[0].matrices.iter().any(|m| (m[(0, 0)] - ONE).norm() > tol)
        {
            return bad("first irrep must be trivial".into());
        }
        Ok(())
    }
}

fn rotation(theta: f64) -> CMatrix {
    let (c, s) = (libm::cos(theta), libm::sin(theta));
    CMatrix::from_real(2, 2, &[c, -s, s, c])
}

/// The category of finite-dimensional unitary representations of a finite group.
pub fn gen_finite_group(p: &GroupPresentation, with_braiding: bool) -> Result<CategoryBundle> {
    p.validate()?;
    let tol = Tolerance::default();
    let n = p.irreps.len();
    let order = p.order as f64;
    let labels: Vec<String> = p.irreps.iter().map(|r| r.name.clone()).collect();
    let dims: Vec<usize> = p.irreps.iter().map(|r| r.dim).collect();

    let chars: Vec<Vec<C64>> = (0..n).map(|i| p.character(i)).collect();
    let dual: Vec<usize> = (0..n)
        .map(|i| {
            (0..n)
                .find(|&j| chars[j].iter().zip(&chars[i]).all(|(a, b)| (a - b.conj()).norm() < 1e-9))
                .ok_or_else(|| Error::BadPresentation(format!("no conjugate of {}", labels[i])))
        })
        .collect::<Result<_>>()?;

    let mut fusion = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let rho: Vec<CMatrix> = (0..p.order)
                .map(|g| kron(&p.irreps[i].matrices[g], &p.irreps[j].matrices[g]))
                .collect();
            let dij = dims[i] * dims[j];
            for k in 0..n {
                let dk = dims[k];
                // P_{m0} = (d_k/|G|) Σ_g conj(ρ_k(g)_{m0}) (ρ_i ⊗ ρ_j)(g)
                let proj = |m: usize| {
                    let mut acc = CMatrix::zeros(dij, dij);
                    for (g, r) in rho.iter().enumerate() {
                        acc += &r.scale(p.irreps[k].matrices[g][(m, 0)].conj());
                    }
                    acc.scale_real(dk as f64 / order)
                };
                let projs: Vec<CMatrix> = (0..dk).map(proj).collect();
                let cols: Vec<CMatrix> = (0..dij).map(|c| projs[0].col(c)).collect();
                let basis = orthonormalize(&cols, tol);
                if basis.is_empty() {
                    continue;
                }
                let isos = basis
                    .iter()
                    .map(|x| CMatrix::hstack(&projs.iter().map(|pm| pm * x).collect::<Vec<_>>()))
                    .collect();
                fusion.insert((i, j, k), isos);
            }
        }
    }

    // r_i = Σ_m U e_m ⊗ e_m with ρ_ī(g) = U conj(ρ_i(g)) U*, and then r̄ reads U^T.
    let mut conj = Vec::with_capacity(n);
    for i in 0..n {
        let ib = dual[i];
        let a: Vec<CMatrix> = p.irreps[i].matrices.iter().map(CMatrix::conj).collect();
        let sol = solve_intertwiners(&a, &p.irreps[ib].matrices, tol);
        if sol.len() != 1 {
            return Err(Error::BadPresentation(format!("conjugate of {} not unique", labels[i])));
        }
        let u = sol[0].scale_real(libm::sqrt(dims[i] as f64));
        let r = u.data().to_vec();
        let rbar = u.transpose().into_data();
        conj.push(Conj { r, rbar });
    }

    let braiding = with_braiding.then(|| {
        let mut br = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                br.insert((i, j), flip(dims[i], dims[j]));
            }
        }
        br
    });
    Ok(CategoryBundle { labels, unit: 0, dims, dual, fusion, conj, braiding, closed: true })
}

/// `Z/n`-graded vector spaces with braiding `c_{jk} = ω^{t·j·k}`, `ω = e^{2πi/n}`.
pub fn gen_pointed(n: usize, t: i64) -> Result<CategoryBundle> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let labels = (0..n).map(|j| j.to_string()).collect();
    let mut fusion = BTreeMap::new();
    let mut braiding = BTreeMap::new();
    let tn = t.rem_euclid(n as i64) as usize;
    for j in 0..n {
        for k in 0..n {
            fusion.insert((j, k, (j + k) % n), vec![CMatrix::identity(1)]);
            braiding.insert((j, k), CMatrix::scalar(root_of_unity(n, tn * j * k % n)));
        }
    }
    Ok(CategoryBundle {
        labels,
        unit: 0,
        dims: vec![1; n],
        dual: (0..n).map(|j| (n - j) % n).collect(),
        fusion,
        conj: (0..n).map(|_| Conj { r: vec![ONE], rbar: vec![ONE] }).collect(),
        braiding: Some(braiding),
        closed: true,
    })
}

/// `G`-graded vector spaces: simple objects are group elements, `g ⊗ h = gh`.
/// Its quantum group is the function algebra of `G`, cocommutative only for abelian `G`.
pub fn gen_graded(p: &GroupPresentation) -> Result<CategoryBundle> {
    p.validate()?;
    let n = p.order;
    let mut fusion = BTreeMap::new();
    for g in 0..n {
        for h in 0..n {
            fusion.insert((g, h, p.table[g][h]), vec![CMatrix::identity(1)]);
        }
    }
    Ok(CategoryBundle {
        labels: (0..n).map(|g| format!("g{g}")).collect(),
        unit: 0,
        dims: vec![1; n],
        dual: (0..n).map(|g| p.inverse(g)).collect(),
        fusion,
        conj: (0..n).map(|_| Conj { r: vec![ONE], rbar: vec![ONE] }).collect(),
        braiding: None,
        closed: true,
    })
}

/// q-integer `[m]_q = (q^m − q^{−m}) / (q − q^{−1})`, equal to `m` at `q = 1`.
pub fn q_integer(q: f64, m: usize) -> f64 {
    if (q - 1.0).abs() < 1e-12 {
        return m as f64;
    }
    (libm::pow(q, m as f64) - libm::pow(q, -(m as f64))) / (q - 1.0 / q)
}

pub fn spin_label(n: usize) -> String {
    if n % 2 == 0 {
        (n / 2).to_string()
    } else {
        format!("{n}/2")
    }
}

/// Truncation of the representation category of `SU_q(2)` to spins `0, ½, …, L/2`.
///
/// The fundamental cup is `u = q^{½} e₁⊗e₂ − q^{−½} e₂⊗e₁`, real, so that `J*J` for the
/// spin-½ conjugate has spectrum `{q, q⁻¹}`. Spin `n/2` is the range of the Jones-Wenzl
/// projector `p_n` on `(ℂ²)^{⊗n}`.
pub fn gen_suq2(q: f64, l: usize) -> Result<CategoryBundle> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::InvalidParameter(format!("q must lie in (0, 1], got {q}")));
    }
    if l == 0 || l > 6 {
        return Err(Error::InvalidParameter(format!("L must lie in 1..=6, got {l}")));
    }
    let tol = Tolerance::default();
    for m in 1..=l + 1 {
        let v = q_integer(q, m);
        if v.abs() < 1e-9 {
            return Err(Error::DegenerateProjector { m, value: v });
        }
    }
    let (sq, isq) = (libm::sqrt(q), 1.0 / libm::sqrt(q));
    let u = CMatrix::column(vec![ZERO, C64::new(sq, 0.0), C64::new(-isq, 0.0), ZERO]);
    let e = &u * &u.adjoint();

    // Jones-Wenzl: p_{n+1} = p_n⊗I − ([n]/[n+1]) (p_n⊗I) e_n (p_n⊗I).
    let id = CMatrix::identity;
    let mut proj = vec![id(1), id(2)];
    for n in 1..l {
        let pn = kron(&proj[n], &id(2));
        let en = kron(&id(1 << (n - 1)), &e);
        let coef = q_integer(q, n) / q_integer(q, n + 1);
        let next = &pn - &(&(&pn * &en) * &pn).scale_real(coef);
        proj.push(next);
    }
    let mut w = Vec::with_capacity(l + 1);
    for (n, p) in proj.iter().enumerate() {
        let cols: Vec<CMatrix> = (0..p.cols()).map(|c| p.col(c)).collect();
        let basis = orthonormalize(&cols, Tolerance::new(1e-6, 0.0));
        if basis.len() != n + 1 {
            return Err(Error::DegenerateProjector { m: n + 1, value: q_integer(q, n + 1) });
        }
        w.push(CMatrix::hstack(&basis));
    }

    // Nested cups: u_0 = (1), u_c = (I ⊗ u_{c−1} ⊗ I) u.
    let mut cups = vec![CMatrix::identity(1)];
    for c in 1..=l {
        let next = &kron_all(&[&id(2), &cups[c - 1], &id(2)]) * &u;
        cups.push(next);
    }

    let mut fusion = BTreeMap::new();
    for i in 0..=l {
        for j in 0..=l {
            for c in 0..=i.min(j) {
                let k = i + j - 2 * c;
                if k > l {
                    continue;
                }
                let emb = kron_all(&[&id(1 << (i - c)), &cups[c], &id(1 << (j - c))]);
                let t = &(&kron(&w[i].adjoint(), &w[j].adjoint()) * &emb) * &w[k];
                let gram = &t.adjoint() * &t;
                let v = &t * &hermitian_calc(&gram, Spectral::InvSqrt, tol)?;
                fusion.insert((i, j, k), vec![v]);
            }
        }
    }

    let conj = (0..=l)
        .map(|n| {
            let r = (&kron(&w[n].adjoint(), &w[n].adjoint()) * &cups[n]).into_data();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let rbar = r.iter().map(|z| z * sign).collect();
            Conj { r, rbar }
        })
        .collect();

    Ok(CategoryBundle {
        labels: (0..=l).map(spin_label).collect(),
        unit: 0,
        dims: (0..=l).map(|n| n + 1).collect(),
        dual: (0..=l).collect(),
        fusion,
        conj,
        braiding: None,
        closed: false,
    })
}
