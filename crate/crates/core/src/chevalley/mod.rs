//! Chevalley basis structure constants.
//!
//! The table is read off an explicit realization of the adjoint module:
//! the irreducible module with highest weight equal to the highest root is
//! built from its raising profiles, root vectors are formed by normalized
//! commutators along the first simple descent, and each `N_{a,b}` is the
//! scalar relating `[X_a, X_b]` to `X_{a+b}`.

pub mod irrep;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::rootsys::{format_root, AlgebraType, RootSystem};
use irrep::{sparse_comm, sparse_scale, SparseMatrix};

/// A root `±μ` where `μ` is the positive root with the given index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRoot {
    pub idx: usize,
    pub positive: bool,
}

impl SignedRoot {
    pub fn pos(idx: usize) -> Self {
        SignedRoot { idx, positive: true }
    }

    pub fn neg(idx: usize) -> Self {
        SignedRoot { idx, positive: false }
    }

    pub fn negate(self) -> Self {
        SignedRoot { idx: self.idx, positive: !self.positive }
    }
}

/// `[e_ν, f_γ]` in the basis used by the Verma module code.
#[derive(Clone, Debug, PartialEq)]
pub enum EfBracket {
    /// `ν = γ`: the Cartan element acting on weight `w` by `(w, ν)`.
    Cartan,
    /// `C f_{γ-ν}`.
    Lower { root: usize, coeff: Rational },
    /// `C' e_{ν-γ}`.
    Raise { root: usize, coeff: Rational },
    Zero,
}

#[derive(Debug)]
pub struct StructureConstants {
    rs: RootSystem,
    table: HashMap<(SignedRoot, SignedRoot), i64>,
    sum: Vec<Vec<Option<usize>>>,
    diff: Vec<Vec<Option<usize>>>,
    kappa: Vec<Rational>,
}

impl StructureConstants {
    /// Cached constants for an algebra type.
    pub fn for_algebra(t: AlgebraType) -> Arc<StructureConstants> {
        static CACHE: OnceLock<Mutex<HashMap<AlgebraType, Arc<StructureConstants>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(sc) = cache.lock().unwrap().get(&t) {
            return sc.clone();
        }
        let sc = Arc::new(StructureConstants::new(RootSystem::new(t)));
        cache.lock().unwrap().entry(t).or_insert(sc).clone()
    }

    pub fn new(rs: RootSystem) -> Self {
        let n = rs.num_positive();
        let r = rs.rank();
        let mut sum = vec![vec![None; n]; n];
        let mut diff = vec![vec![None; n]; n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<i32> = rs.root(a).iter().zip(rs.root(b)).map(|(x, y)| x + y).collect();
                sum[a][b] = rs.index_of(&s);
                let d: Vec<i32> = rs.root(a).iter().zip(rs.root(b)).map(|(x, y)| x - y).collect();
                diff[a][b] = rs.index_of(&d);
            }
        }
        let kappa = (0..n)
            .map(|m| {
                let mut d = Rational::one();
                for i in 0..r {
                    for _ in 0..rs.root(m)[i] {
                        d *= rs.simple_half_norm(i);
                    }
                }
                d / rs.half_norm(m)
            })
            .collect();
        let table = build_table(&rs, &sum);
        StructureConstants { rs, table, sum, diff, kappa }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// Index of `μ_a + μ_b` when it is a positive root.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        self.sum[a][b]
    }

    /// Index of `μ_a - μ_b` when it is a positive root.
    pub fn diff_index(&self, a: usize, b: usize) -> Option<usize> {
        self.diff[a][b]
    }

    /// `N_{a,b}` with `[X_a, X_b] = N_{a,b} X_{a+b}`; `None` when `a + b` is
    /// not a root.
    pub fn n(&self, a: SignedRoot, b: SignedRoot) -> Option<i64> {
        self.table.get(&(a, b)).copied()
    }

    /// `[f_μ, f_ν] = c f_{μ+ν}`.
    pub fn bracket_ff(&self, mu: usize, nu: usize) -> Option<(usize, i64)> {
        let s = self.sum[mu][nu]?;
        Some((s, self.table[&(SignedRoot::neg(mu), SignedRoot::neg(nu))]))
    }

    /// `[e_ν, f_γ]` restricted to the cases that occur inside `n^-`; a
    /// raising result is reported as an error.
    pub fn bracket_ef(&self, nu: usize, gamma: usize) -> Result<EfBracket> {
        match self.ef_full(nu, gamma) {
            EfBracket::Raise { .. } => Err(Error::RaisingBracket {
                nu: format_root(self.rs.root(nu)),
                gamma: format_root(self.rs.root(gamma)),
            }),
            other => Ok(other),
        }
    }

    /// `[e_ν, f_γ]` in all cases, with `e_ν = d_ν X_ν` and `f_γ = X_{-γ}`.
    pub fn ef_full(&self, nu: usize, gamma: usize) -> EfBracket {
        if nu == gamma {
            return EfBracket::Cartan;
        }
        let dn = self.rs.half_norm(nu);
        let nab = || int(self.table[&(SignedRoot::pos(nu), SignedRoot::neg(gamma))]);
        if let Some(root) = self.diff[gamma][nu] {
            return EfBracket::Lower { root, coeff: dn * nab() };
        }
        if let Some(root) = self.diff[nu][gamma] {
            let coeff = dn * nab() / self.rs.half_norm(root);
            return EfBracket::Raise { root, coeff };
        }
        EfBracket::Zero
    }

    /// `κ_μ = D_μ / d_μ`, the scalar with `ω(f_μ) = κ_μ e_μ`.
    pub fn kappa(&self, mu: usize) -> &Rational {
        &self.kappa[mu]
    }

    /// One line per signed pair with a root sum, `"(1,0),(0,1) -> 1"`.
    pub fn dump(&self) -> String {
        let coords = |s: SignedRoot| -> Vec<i32> {
            let c = self.rs.root(s.idx);
            if s.positive {
                c.to_vec()
            } else {
                c.iter().map(|x| -x).collect()
            }
        };
        let fmt = |c: &[i32]| format!("({})", format_root(c));
        let mut keys: Vec<_> = self.table.keys().copied().collect();
        keys.sort_by_key(|&(a, b)| (!a.positive, a.idx, !b.positive, b.idx));
        let mut out = String::new();
        for (a, b) in keys {
            let _ = writeln!(out, "{},{} -> {}", fmt(&coords(a)), fmt(&coords(b)), self.table[&(a, b)]);
        }
        out
    }
}

fn build_table(rs: &RootSystem, sum: &[Vec<Option<usize>>]) -> HashMap<(SignedRoot, SignedRoot), i64> {
    let r = rs.rank();
    let n = rs.num_positive();
    let theta = rs.to_fundamental(rs.root(rs.highest_root()));
    let module = irrep::build(rs, &theta);
    assert_eq!(module.dim(), 2 * n + r, "adjoint module has the wrong dimension");
    let mut x: HashMap<SignedRoot, SparseMatrix> = HashMap::new();
    for i in 0..r {
        let s = rs.simple_index(i);
        x.insert(SignedRoot::pos(s), module.e[i].clone());
        x.insert(SignedRoot::neg(s), module.f[i].clone());
    }
    for mu in 0..n {
        if rs.is_simple(mu) {
            continue;
        }
        let c = rs.root(mu);
        let (i, nu) = (0..r)
            .find_map(|i| {
                let mut d = c.to_vec();
                d[i] -= 1;
                rs.index_of(&d).map(|nu| (i, nu))
            })
            .expect("non-simple positive root has a simple descent");
        let mut p = 0i64;
        let mut d = rs.root(nu).to_vec();
        loop {
            d[i] -= 1;
            if !rs.is_root(&d) {
                break;
            }
            p += 1;
        }
        let s = rs.simple_index(i);
        let inv = Rational::one() / int(p + 1);
        let xp = sparse_scale(&sparse_comm(&x[&SignedRoot::pos(s)], &x[&SignedRoot::pos(nu)]), &inv);
        let xn = sparse_scale(&sparse_comm(&x[&SignedRoot::neg(nu)], &x[&SignedRoot::neg(s)]), &inv);
        x.insert(SignedRoot::pos(mu), xp);
        x.insert(SignedRoot::neg(mu), xn);
    }
    for mu in 0..n {
        let h = sparse_comm(&x[&SignedRoot::pos(mu)], &x[&SignedRoot::neg(mu)]);
        for k in 0..module.dim() {
            let want = module.coroot_value(rs, k, rs.root(mu));
            let got = h.get(&(k, k)).cloned().unwrap_or_else(Rational::zero);
            assert_eq!(got, want, "[X_μ, X_-μ] is not the coroot");
        }
        assert_eq!(h.len(), h.keys().filter(|(a, b)| a == b).count());
    }
    let signed: Vec<SignedRoot> = (0..n).flat_map(|m| [SignedRoot::pos(m), SignedRoot::neg(m)]).collect();
    let mut table = HashMap::new();
    for &a in &signed {
        for &b in &signed {
            let target = match (a.positive, b.positive) {
                (true, true) => sum[a.idx][b.idx].map(SignedRoot::pos),
                (false, false) => sum[a.idx][b.idx].map(SignedRoot::neg),
                _ => {
                    let (p, q) = if a.positive { (a.idx, b.idx) } else { (b.idx, a.idx) };
                    let d: Vec<i32> = rs.root(p).iter().zip(rs.root(q)).map(|(u, v)| u - v).collect();
                    if let Some(i) = rs.index_of(&d) {
                        Some(SignedRoot::pos(i))
                    } else {
                        let nd: Vec<i32> = d.iter().map(|v| -v).collect();
                        rs.index_of(&nd).map(SignedRoot::neg)
                    }
                }
            };
            let Some(t) = target else { continue };
            let c = sparse_comm(&x[&a], &x[&b]);
            let xt = &x[&t];
            let (key, val) = xt.iter().next().expect("root vector is nonzero");
            let ratio = c.get(key).cloned().unwrap_or_else(Rational::zero) / val;
            assert_eq!(c, sparse_scale(xt, &ratio), "commutator is not proportional to a root vector");
            assert!(ratio.is_integer() && !ratio.is_zero());
            table.insert((a, b), ratio.to_integer().to_i64().expect("small constant"));
        }
    }
    table
}
