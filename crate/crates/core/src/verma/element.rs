use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;

use super::{Affine, Monomial, Pbw};
use crate::error::{Error, Result};
use crate::exact::{AffineMap, MultiPoly, RatFun, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum ContextKind {
    /// Coefficients are functions of `l_1..l_r`.
    Lambda,
    /// Coefficients live on `H_{β,m}`, parameterized by `t_1..t_{r-1}`;
    /// `solved` is the coordinate expressed through the others.
    Hyperplane { beta: Vec<i32>, m: u32, solved: usize },
    /// Numeric highest weight.
    Point(Vec<Rational>),
}

/// Variables of the coefficient field together with the images of the
/// highest-weight coordinates `l_i` in them.
#[derive(Clone, Debug, PartialEq)]
pub struct Context {
    kind: ContextKind,
    nvars: usize,
    prefix: String,
    images: Vec<MultiPoly>,
}

impl Context {
    pub fn lambda(rank: usize) -> Arc<Context> {
        Arc::new(Context {
            kind: ContextKind::Lambda,
            nvars: rank,
            prefix: "l".into(),
            images: (0..rank).map(|i| MultiPoly::var(rank, i)).collect(),
        })
    }

    pub fn point(values: &[Rational]) -> Arc<Context> {
        Arc::new(Context {
            kind: ContextKind::Point(values.to_vec()),
            nvars: 0,
            prefix: "l".into(),
            images: values.iter().map(|v| MultiPoly::constant(0, v.clone())).collect(),
        })
    }

    /// `images[i]` is `l_i` as an affine polynomial in `t_1..t_{r-1}`.
    pub fn hyperplane(beta: Vec<i32>, m: u32, solved: usize, images: Vec<MultiPoly>) -> Arc<Context> {
        let nvars = images.first().map_or(0, |p| p.nvars());
        Arc::new(Context { kind: ContextKind::Hyperplane { beta, m, solved }, nvars, prefix: "t".into(), images })
    }

    pub fn kind(&self) -> &ContextKind {
        &self.kind
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn prefix(&self) -> &str {
        &self.prefix
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }

    pub fn is_lambda(&self) -> bool {
        self.kind == ContextKind::Lambda
    }

    /// Evaluates an affine form in `l` inside this context.
    pub fn affine(&self, a: &Affine) -> MultiPoly {
        let r = self.images.len();
        let mut p = MultiPoly::constant(self.nvars, a[r].clone());
        for (c, img) in a.iter().zip(&self.images) {
            if !c.is_zero() {
                p = &p + &img.scale(c);
            }
        }
        p
    }

    /// Substitution taking `λ`-context coefficients into this context.
    pub fn from_lambda(&self) -> AffineMap {
        AffineMap::new(self.images.clone(), self.nvars, "l").expect("context images are affine")
    }
}

/// Element of `U(n^-)` (or of the Verma module) with rational-function
/// coefficients in a context.
#[derive(Clone, Debug)]
pub struct UEAElement {
    pbw: Arc<Pbw>,
    ctx: Arc<Context>,
    terms: BTreeMap<Monomial, RatFun>,
}

impl PartialEq for UEAElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}

impl UEAElement {
    pub fn zero(pbw: Arc<Pbw>, ctx: Arc<Context>) -> Self {
        UEAElement { pbw, ctx, terms: BTreeMap::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, RatFun)>>(pbw: Arc<Pbw>, ctx: Arc<Context>, it: I) -> Self {
        let mut grouped: BTreeMap<Monomial, Vec<RatFun>> = BTreeMap::new();
        for (m, c) in it {
            grouped.entry(m).or_default().push(c);
        }
        let n = ctx.nvars();
        let terms = grouped
            .into_iter()
            .map(|(m, cs)| (m, RatFun::sum(n, cs.iter())))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        UEAElement { pbw, ctx, terms }
    }

    pub fn monomial(pbw: Arc<Pbw>, ctx: Arc<Context>, m: Monomial) -> Self {
        let c = RatFun::one(ctx.nvars());
        UEAElement { pbw, ctx, terms: BTreeMap::from([(m, c)]) }
    }

    /// `f_root^k`.
    pub fn f_power(pbw: Arc<Pbw>, ctx: Arc<Context>, root: usize, k: u8) -> Self {
        let m = Monomial::power(pbw.root_system(), root, k);
        Self::monomial(pbw, ctx, m)
    }

    pub fn pbw(&self) -> &Arc<Pbw> {
        &self.pbw
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, RatFun> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> RatFun {
        self.terms.get(m).cloned().unwrap_or_else(|| RatFun::zero(self.ctx.nvars()))
    }

    /// Common root sum `μ` of all terms (weight `-μ`), if homogeneous.
    pub fn weight(&self) -> Option<Vec<i32>> {
        let rs = self.pbw.root_system();
        let mut it = self.terms.keys().map(|m| m.root_sum(rs));
        let first = it.next().unwrap_or_else(|| vec![0; rs.rank()]);
        it.all(|w| w == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weight().is_some()
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).filter(|(_, x)| !x.is_zero()).collect();
        UEAElement { pbw: self.pbw.clone(), ctx: self.ctx.clone(), terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(|| RatFun::zero(self.ctx.nvars()));
            *e = &*e + c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        UEAElement { pbw: self.pbw.clone(), ctx: self.ctx.clone(), terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RatFun::constant(self.ctx.nvars(), Rational::from_integer((-1).into()))))
    }

    /// Replaces one coefficient; used by checker soundness tests.
    pub fn with_coeff(&self, m: &Monomial, c: RatFun) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.terms.remove(m);
        } else {
            out.terms.insert(m.clone(), c);
        }
        out
    }

    /// Moves a `λ`-context element into another context.
    pub fn specialize(&self, target: &Arc<Context>) -> Result<Self> {
        if !self.ctx.is_lambda() {
            return Err(Error::Argument("only λ-context elements can be specialized".into()));
        }
        let map = target.from_lambda();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let s = c.specialize(&map)?;
            if !s.is_zero() {
                terms.insert(m.clone(), s);
            }
        }
        Ok(UEAElement { pbw: self.pbw.clone(), ctx: target.clone(), terms })
    }

    /// `τ_ν`: every coefficient `φ(λ)` becomes `φ(λ + ν)`, where `delta`
    /// holds `(ν, α_i^∨)`.
    pub fn shift(&self, delta: &[Rational]) -> Result<Self> {
        if !self.ctx.is_lambda() {
            return Err(Error::Argument("shifts apply to λ-context elements".into()));
        }
        let map = AffineMap::translation(delta, "l");
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.clone(), c.specialize(&map)?);
        }
        Ok(UEAElement { pbw: self.pbw.clone(), ctx: self.ctx.clone(), terms })
    }

    /// Product in `U(n^-) ⊗ Û(h)`: a left coefficient moved past a right
    /// monomial of root sum `μ` is evaluated at `λ - μ`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !self.ctx.is_lambda() || !other.ctx.is_lambda() {
            return Err(Error::Argument("products are formed in the λ-context".into()));
        }
        let rs = self.pbw.root_system();
        let mut shifted: HashMap<Vec<i32>, Vec<(Monomial, RatFun)>> = HashMap::new();
        for ym in other.terms.keys() {
            let mu = ym.root_sum(rs);
            if shifted.contains_key(&mu) {
                continue;
            }
            let delta: Vec<Rational> = rs.to_fundamental(&mu).into_iter().map(|c| Rational::from_integer((-c).into())).collect();
            let map = AffineMap::translation(&delta, "l");
            let xs = self
                .terms
                .iter()
                .map(|(m, c)| Ok((m.clone(), c.specialize(&map)?)))
                .collect::<Result<Vec<_>>>()?;
            shifted.insert(mu, xs);
        }
        let parts: Vec<(Monomial, RatFun)> = other
            .terms
            .par_iter()
            .flat_map_iter(|(ym, yc)| {
                let xs = &shifted[&ym.root_sum(rs)];
                xs.iter()
                    .flat_map(|(xm, xc)| {
                        let c = xc * yc;
                        self.pbw.mul_monomials(xm, ym).into_iter().map(move |(m, k)| (m, c.scale(&k)))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        Ok(Self::from_terms(self.pbw.clone(), self.ctx.clone(), parts))
    }

    /// `e_ν · x v_λ` for any positive root index `ν`.
    pub fn act_e_root(&self, nu: usize) -> Self {
        let parts: Vec<(Monomial, RatFun)> = self
            .terms
            .par_iter()
            .flat_map_iter(|(m, c)| {
                self.pbw
                    .raise(nu, m)
                    .iter()
                    .map(|(m2, aff)| (m2.clone(), c.mul_poly(&self.ctx.affine(aff))))
                    .collect::<Vec<_>>()
            })
            .collect();
        Self::from_terms(self.pbw.clone(), self.ctx.clone(), parts)
    }

    /// `e_{α_i} · x v_λ` for the simple root `α_i` (zero-based).
    pub fn act_e(&self, i: usize) -> Self {
        self.act_e_root(self.pbw.root_system().simple_index(i))
    }

    /// One line per term in monomial order: `coefficient * monomial`.
    pub fn render(&self) -> String {
        let rs = self.pbw.root_system();
        if self.terms.is_empty() {
            return "0\n".into();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            out.push_str(&format!("({}) * {}\n", c.to_string_with(self.ctx.prefix()), m.render(rs)));
        }
        out
    }
}
