use std::collections::HashMap;
use std::sync::Arc;

use dashmap::DashMap;
use num_traits::Zero;
use rayon::prelude::*;

use super::{Monomial, Pbw, UEAElement};
use crate::error::{Error, Result};
use crate::exact::{int, MultiPoly, RatFun, Rational};

impl Pbw {
    /// `⟨x v_λ, y v_λ⟩` for monomials, as a polynomial in `l`.
    ///
    /// Peels the leftmost factor of `x` with `⟨f_γ x', y⟩ = κ_γ ⟨x', e_γ y⟩`.
    pub fn form_monomials(&self, x: &Monomial, y: &Monomial, memo: &DashMap<(Monomial, Monomial), Arc<MultiPoly>>) -> Arc<MultiPoly> {
        let r = self.rank();
        let rs = self.root_system();
        if x.height() != y.height() || x.root_sum(rs) != y.root_sum(rs) {
            return Arc::new(MultiPoly::zero(r));
        }
        let Some(g) = x.leftmost() else {
            return Arc::new(MultiPoly::one(r));
        };
        let key = (x.clone(), y.clone());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let xp = x.with_delta(g, rs.height(g), -1);
        let lambda = super::Context::lambda(r);
        let mut acc = MultiPoly::zero(r);
        for (m, aff) in self.raise(g, y).iter() {
            let sub = self.form_monomials(&xp, m, memo);
            if !sub.is_zero() {
                acc = &acc + &(&lambda.affine(aff) * &*sub);
            }
        }
        let out = Arc::new(acc.scale(self.constants().kappa(g)));
        memo.insert(key, out.clone());
        out
    }
}

impl UEAElement {
    /// Contravariant form `⟨x v_λ, y v_λ⟩` in the common context.
    pub fn contravariant_form(&self, other: &UEAElement) -> Result<RatFun> {
        if self.context() != other.context() {
            return Err(Error::Argument("elements live in different contexts".into()));
        }
        let (Some(wx), Some(wy)) = (self.weight(), other.weight()) else {
            return Err(Error::Argument("contravariant form needs homogeneous elements".into()));
        };
        let ctx = self.context();
        if wx != wy {
            return Ok(RatFun::zero(ctx.nvars()));
        }
        let memo = DashMap::new();
        let pbw = self.pbw();
        let mut parts = Vec::new();
        for (xm, xc) in self.terms() {
            for (ym, yc) in other.terms() {
                let v = pbw.form_monomials(xm, ym, &memo);
                if v.is_zero() {
                    continue;
                }
                let v = if ctx.is_lambda() { (*v).clone() } else { v.compose(ctx.images()) };
                parts.push((xc * yc).mul_poly(&v));
            }
        }
        Ok(RatFun::sum(ctx.nvars(), parts.iter()))
    }
}

/// Symbolic Gram matrix on the weight space `λ - μ`.
pub fn symbolic_gram(pbw: &Pbw, mu: &[i32]) -> (Vec<Monomial>, Vec<Vec<MultiPoly>>) {
    let basis = pbw.weight_space_basis(mu);
    let memo = DashMap::new();
    let g = basis
        .iter()
        .map(|x| basis.iter().map(|y| (*pbw.form_monomials(x, y, &memo)).clone()).collect())
        .collect();
    (basis, g)
}

/// Fraction-free (Bareiss) determinant over polynomials.
pub fn gram_determinant(m: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(nvars);
    }
    let mut a: Vec<Vec<MultiPoly>> = m.to_vec();
    let mut sign = int(1);
    let mut prev = MultiPoly::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return MultiPoly::zero(nvars);
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].scale(&sign)
}

/// Contravariant form at a numeric highest weight, one Gram row per
/// monomial, built from rows of shorter monomials.
pub struct NumericForm {
    pbw: Arc<Pbw>,
    point: Vec<Rational>,
    bases: DashMap<Vec<i32>, Arc<(Vec<Monomial>, HashMap<Monomial, usize>)>>,
    rows: DashMap<Monomial, Arc<Vec<Rational>>>,
    lowered: DashMap<(usize, Monomial), Arc<Vec<(usize, Rational)>>>,
}

impl NumericForm {
    pub fn new(pbw: Arc<Pbw>, point: &[Rational]) -> Self {
        NumericForm { pbw, point: point.to_vec(), bases: DashMap::new(), rows: DashMap::new(), lowered: DashMap::new() }
    }

    pub fn basis(&self, mu: &[i32]) -> Arc<(Vec<Monomial>, HashMap<Monomial, usize>)> {
        if let Some(b) = self.bases.get(mu) {
            return b.clone();
        }
        let list = self.pbw.weight_space_basis(mu);
        let idx = list.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let b = Arc::new((list, idx));
        self.bases.insert(mu.to_vec(), b.clone());
        b
    }

    fn eval_affine(&self, a: &[Rational]) -> Rational {
        let r = self.point.len();
        let mut s = a[r].clone();
        for (c, v) in a.iter().zip(&self.point) {
            if !c.is_zero() {
                s += c * v;
            }
        }
        s
    }

    /// `e_γ y v_λ` at the point, in basis indices of its weight space.
    pub fn raise_numeric(&self, gamma: usize, y: &Monomial) -> Arc<Vec<(usize, Rational)>> {
        let key = (gamma, y.clone());
        if let Some(v) = self.lowered.get(&key) {
            return v.clone();
        }
        let rs = self.pbw.root_system();
        let mut mu = y.root_sum(rs);
        for (t, c) in mu.iter_mut().zip(rs.root(gamma)) {
            *t -= c;
        }
        let basis = self.basis(&mu);
        let out: Vec<(usize, Rational)> = self
            .pbw
            .raise(gamma, y)
            .iter()
            .map(|(m, a)| (basis.1[m], self.eval_affine(a)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        let out = Arc::new(out);
        self.lowered.insert(key, out.clone());
        out
    }

    /// Gram row of `x` against the basis of its weight space.
    pub fn row(&self, x: &Monomial) -> Arc<Vec<Rational>> {
        if let Some(r) = self.rows.get(x) {
            return r.clone();
        }
        let rs = self.pbw.root_system();
        let out = match x.leftmost() {
            None => vec![int(1)],
            Some(g) => {
                let xp = x.with_delta(g, rs.height(g), -1);
                let sub = self.row(&xp);
                let basis = self.basis(&x.root_sum(rs));
                let kappa = self.pbw.constants().kappa(g);
                basis
                    .0
                    .iter()
                    .map(|y| {
                        let mut s = Rational::zero();
                        for (k, c) in self.raise_numeric(g, y).iter() {
                            if !sub[*k].is_zero() {
                                s += c * &sub[*k];
                            }
                        }
                        s * kappa
                    })
                    .collect()
            }
        };
        let out = Arc::new(out);
        self.rows.insert(x.clone(), out.clone());
        out
    }

    /// Gram matrix on the weight space `λ - μ`.
    pub fn gram(&self, mu: &[i32]) -> (Vec<Monomial>, Vec<Vec<Rational>>) {
        let basis = self.basis(mu);
        let rows: Vec<Vec<Rational>> = basis.0.par_iter().map(|x| (*self.row(x)).clone()).collect();
        (basis.0.clone(), rows)
    }
}
