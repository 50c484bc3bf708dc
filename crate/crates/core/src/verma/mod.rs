//! PBW computations in `U(n^-)` and the Verma module action.
//!
//! PBW monomials are written with root indices descending from left to
//! right. Products are straightened with memoized left multiplication, and
//! `e_ν` acts on `m v_λ` through a memoized recursion whose results are
//! affine in the highest-weight coordinates `l_i = (λ, α_i^∨)`.

mod element;
mod form;

pub use element::{Context, ContextKind, UEAElement};
pub use form::{gram_determinant, symbolic_gram, NumericForm};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use dashmap::DashMap;
use num_traits::Zero;
use smallvec::SmallVec;

use crate::chevalley::{EfBracket, StructureConstants};
use crate::exact::{int, Rational};
use crate::rootsys::{format_root, AlgebraType, RootSystem};

/// Exponent vector indexed by positive-root index, with its cached height.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    height: u32,
    exps: SmallVec<[u8; 16]>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { height: 0, exps: SmallVec::from_elem(0, n) }
    }

    pub fn from_exponents(rs: &RootSystem, exps: &[u8]) -> Self {
        let height = exps.iter().enumerate().map(|(k, &e)| e as u32 * rs.height(k) as u32).sum();
        Monomial { height, exps: SmallVec::from_slice(exps) }
    }

    pub fn power(rs: &RootSystem, root: usize, k: u8) -> Self {
        let mut m = Self::one(rs.num_positive());
        m.exps[root] = k;
        m.height = k as u32 * rs.height(root) as u32;
        m
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exps
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn is_one(&self) -> bool {
        self.height == 0
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Index of the leftmost factor.
    pub fn leftmost(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    fn with_delta(&self, root: usize, root_height: i32, delta: i8) -> Self {
        let mut m = self.clone();
        m.exps[root] = (m.exps[root] as i8 + delta) as u8;
        m.height = (m.height as i32 + delta as i32 * root_height) as u32;
        m
    }

    /// Sum of the roots of the factors, in simple-root coordinates.
    pub fn root_sum(&self, rs: &RootSystem) -> Vec<i32> {
        let mut s = vec![0; rs.rank()];
        for (k, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                for (t, c) in s.iter_mut().zip(rs.root(k)) {
                    *t += e as i32 * c;
                }
            }
        }
        s
    }

    /// Factors from left to right as `(root index, exponent)`.
    pub fn factors(&self) -> Vec<(usize, u8)> {
        (0..self.exps.len()).rev().filter(|&k| self.exps[k] > 0).map(|k| (k, self.exps[k])).collect()
    }

    pub fn render(&self, rs: &RootSystem) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .factors()
            .into_iter()
            .map(|(k, e)| {
                let f = format!("f[{}]", format_root(rs.root(k)));
                if e > 1 {
                    format!("{f}^{e}")
                } else {
                    f
                }
            })
            .collect();
        parts.join("*")
    }
}

/// Affine form `Σ a_i l_i + a_r` in the highest-weight coordinates.
pub type Affine = Vec<Rational>;

type Linear = Arc<Vec<(Monomial, Rational)>>;
type Raised = Arc<Vec<(Monomial, Affine)>>;

/// Straightening and Verma-action engine for one algebra.
pub struct Pbw {
    sc: Arc<StructureConstants>,
    left: DashMap<(usize, Monomial), Linear>,
    raised: DashMap<(usize, Monomial), Raised>,
}

impl fmt::Debug for Pbw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pbw({})", self.sc.root_system().algebra())
    }
}

impl Pbw {
    /// Shared engine with warm caches.
    pub fn for_algebra(t: AlgebraType) -> Arc<Pbw> {
        static CACHE: OnceLock<Mutex<HashMap<AlgebraType, Arc<Pbw>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(p) = cache.lock().unwrap().get(&t) {
            return p.clone();
        }
        let p = Arc::new(Pbw::new(StructureConstants::for_algebra(t)));
        cache.lock().unwrap().entry(t).or_insert(p).clone()
    }

    pub fn new(sc: Arc<StructureConstants>) -> Self {
        Pbw { sc, left: DashMap::new(), raised: DashMap::new() }
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn root_system(&self) -> &RootSystem {
        self.sc.root_system()
    }

    pub fn rank(&self) -> usize {
        self.root_system().rank()
    }

    fn root_height(&self, k: usize) -> i32 {
        self.root_system().height(k)
    }

    /// `f_γ · m` in PBW form.
    pub fn left_mul(&self, gamma: usize, m: &Monomial) -> Linear {
        let key = (gamma, m.clone());
        if let Some(v) = self.left.get(&key) {
            return v.clone();
        }
        let out = match m.leftmost() {
            Some(j) if gamma < j => {
                let rest = m.with_delta(j, self.root_height(j), -1);
                let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
                for (mon, c) in self.left_mul(gamma, &rest).iter() {
                    for (mon2, c2) in self.left_mul(j, mon).iter() {
                        *acc.entry(mon2.clone()).or_insert_with(Rational::zero) += c * c2;
                    }
                }
                if let Some((s, n)) = self.sc.bracket_ff(gamma, j) {
                    for (mon, c) in self.left_mul(s, &rest).iter() {
                        *acc.entry(mon.clone()).or_insert_with(Rational::zero) += c * int(n);
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            }
            _ => vec![(m.with_delta(gamma, self.root_height(gamma), 1), int(1))],
        };
        let out = Arc::new(out);
        self.left.insert(key, out.clone());
        out
    }

    /// Straightened product `x · y` of two PBW monomials.
    pub fn mul_monomials(&self, x: &Monomial, y: &Monomial) -> Vec<(Monomial, Rational)> {
        let mut cur: BTreeMap<Monomial, Rational> = BTreeMap::from([(y.clone(), int(1))]);
        for (k, e) in x.factors().into_iter().rev() {
            for _ in 0..e {
                let mut next: BTreeMap<Monomial, Rational> = BTreeMap::new();
                for (mon, c) in &cur {
                    for (mon2, c2) in self.left_mul(k, mon).iter() {
                        *next.entry(mon2.clone()).or_insert_with(Rational::zero) += c * c2;
                    }
                }
                next.retain(|_, c| !c.is_zero());
                cur = next;
            }
        }
        cur.into_iter().collect()
    }

    /// Straightens a word given as `(root index, power)` factors from left
    /// to right.
    pub fn straighten(&self, word: &[(usize, u8)]) -> Vec<(Monomial, Rational)> {
        let n = self.root_system().num_positive();
        let mut cur: BTreeMap<Monomial, Rational> = BTreeMap::from([(Monomial::one(n), int(1))]);
        for &(k, e) in word.iter().rev() {
            for _ in 0..e {
                let mut next: BTreeMap<Monomial, Rational> = BTreeMap::new();
                for (mon, c) in &cur {
                    for (mon2, c2) in self.left_mul(k, mon).iter() {
                        *next.entry(mon2.clone()).or_insert_with(Rational::zero) += c * c2;
                    }
                }
                next.retain(|_, c| !c.is_zero());
                cur = next;
            }
        }
        cur.into_iter().collect()
    }

    /// `(λ - μ, ν)` as an affine form, `μ` a root sum.
    fn cartan_affine(&self, nu: usize, mu: &[i32]) -> Affine {
        let rs = self.root_system();
        let r = rs.rank();
        let mut a: Affine = (0..r).map(|i| int(rs.root(nu)[i] as i64) * rs.simple_half_norm(i)).collect();
        a.push(-rs.inner_ints(mu, rs.root(nu)));
        a
    }

    /// `e_ν · m v_λ` with `e_ν = d_ν X_ν`.
    pub fn raise(&self, nu: usize, m: &Monomial) -> Raised {
        let Some(j) = m.leftmost() else {
            return Arc::new(Vec::new());
        };
        let key = (nu, m.clone());
        if let Some(v) = self.raised.get(&key) {
            return v.clone();
        }
        let r = self.rank();
        let rest = m.with_delta(j, self.root_height(j), -1);
        let mut acc: BTreeMap<Monomial, Affine> = BTreeMap::new();
        let mut add = |mon: &Monomial, c: &Rational, aff: &[Rational]| {
            let e = acc.entry(mon.clone()).or_insert_with(|| vec![Rational::zero(); r + 1]);
            for (t, a) in e.iter_mut().zip(aff) {
                if !a.is_zero() {
                    *t += c * a;
                }
            }
        };
        for (mon, aff) in self.raise(nu, &rest).iter() {
            for (mon2, c) in self.left_mul(j, mon).iter() {
                add(mon2, c, aff);
            }
        }
        let mut unit = vec![Rational::zero(); r + 1];
        unit[r] = int(1);
        match self.sc.ef_full(nu, j) {
            EfBracket::Cartan => {
                let aff = self.cartan_affine(nu, &rest.root_sum(self.root_system()));
                add(&rest, &int(1), &aff);
            }
            EfBracket::Lower { root, coeff } => {
                for (mon, c) in self.left_mul(root, &rest).iter() {
                    add(mon, &(c * &coeff), &unit);
                }
            }
            EfBracket::Raise { root, coeff } => {
                for (mon, aff) in self.raise(root, &rest).iter() {
                    add(mon, &coeff, aff);
                }
            }
            EfBracket::Zero => {}
        }
        let out: Vec<(Monomial, Affine)> = acc.into_iter().filter(|(_, a)| a.iter().any(|c| !c.is_zero())).collect();
        let out = Arc::new(out);
        self.raised.insert(key, out.clone());
        out
    }

    /// All PBW monomials of weight `-μ`, in monomial order.
    pub fn weight_space_basis(&self, mu: &[i32]) -> Vec<Monomial> {
        let rs = self.root_system();
        let n = rs.num_positive();
        let mut out = Vec::new();
        let mut exps = vec![0u8; n];
        fn rec(rs: &RootSystem, k: usize, left: &mut Vec<i32>, exps: &mut Vec<u8>, out: &mut Vec<Monomial>) {
            if left.iter().all(|&c| c == 0) {
                out.push(Monomial::from_exponents(rs, exps));
                return;
            }
            if k == 0 {
                return;
            }
            let k = k - 1;
            let root = rs.root(k);
            let mut e = 0u8;
            loop {
                rec(rs, k, left, exps, out);
                if !left.iter().zip(root).all(|(l, c)| l >= c) {
                    break;
                }
                for (l, c) in left.iter_mut().zip(root) {
                    *l -= c;
                }
                e += 1;
                exps[k] = e;
            }
            for (l, c) in left.iter_mut().zip(root) {
                *l += c * e as i32;
            }
            exps[k] = 0;
        }
        if mu.iter().any(|&c| c < 0) {
            return out;
        }
        rec(rs, n, &mut mu.to_vec(), &mut exps, &mut out);
        out.sort();
        out
    }
}
