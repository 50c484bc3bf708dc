//! Shapovalov elements: degree one by route summation over the root-poset
//! interval `[α, β]`, higher degree by the shifted factorization.
//!
//! The factorization is only valid when the auxiliary module of highest
//! weight `φ` is finite dimensional, i.e. when `(β,β)/(ℓ(α,α))` is an
//! integer. Otherwise `φ - 2β` is a weight of the (parabolic Verma) module
//! and the product of shifted factors is not extremal; see
//! [`direct::kernel_on_hyperplane`] for what is used instead.

mod direct;

use std::sync::Arc;

use num_traits::One;
use rayon::prelude::*;

use crate::chevalley::EfBracket;
use crate::error::{Error, Result};
use crate::exact::{int, MultiPoly, RatFun, Rational};
use crate::rootsys::{format_root, RootSystem, Weight};
use crate::verma::{Context, Monomial, Pbw, UEAElement};

/// A simple root `α ∈ Π_β` with the highest weight `φ = ν_b` of the
/// auxiliary module and the start weight `ν_a = φ - β`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleChoice {
    pub beta: usize,
    /// Zero-based simple-root index.
    pub alpha: usize,
    pub ell: u32,
    pub phi: Weight,
    pub nu_a: Weight,
}

impl AdmissibleChoice {
    /// `(φ, α_i^∨)`: the shift `τ_φ` in highest-weight coordinates.
    pub fn shift_coords(&self, rs: &RootSystem) -> Vec<Rational> {
        (0..rs.rank()).map(|i| rs.coroot_pairing(&self.phi, &unit(rs.rank(), i)).expect("rank matches")).collect()
    }

    /// Whether `φ` is integral, so that the auxiliary module is finite
    /// dimensional and the factorization applies.
    pub fn has_finite_module(&self, rs: &RootSystem) -> bool {
        self.shift_coords(rs)[self.alpha].is_integer()
    }
}

fn unit(r: usize, i: usize) -> Vec<i32> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

/// One choice per `α ∈ Π_β`, in simple-root order.
pub fn admissible_choices(rs: &RootSystem, beta: usize) -> Vec<AdmissibleChoice> {
    let b = rs.root(beta);
    let bb = rs.inner_ints(b, b);
    (0..rs.rank())
        .filter(|&i| b[i] > 0)
        .map(|i| {
            let ell = b[i] as u32;
            let aa = rs.inner_ints(&unit(rs.rank(), i), &unit(rs.rank(), i));
            let phi = rs.fundamental_weights()[i].scale(&(&bb / (int(ell as i64) * aa)));
            let nu_a = phi.sub(&rs.root_weight(beta));
            AdmissibleChoice { beta, alpha: i, ell, phi, nu_a }
        })
        .collect()
}

/// Choices with a finite-dimensional auxiliary module first, then the
/// smallest interval `[α, β]`, ties by index.
pub fn default_choice(rs: &RootSystem, beta: usize) -> AdmissibleChoice {
    admissible_choices(rs, beta)
        .into_iter()
        .min_by_key(|c| {
            let size = rs.root_poset_interval(rs.simple_index(c.alpha), rs.root(beta)).map_or(usize::MAX, |iv| iv.nodes.len());
            (!c.has_finite_module(rs), size, c.alpha)
        })
        .expect("every positive root has a simple constituent")
}

/// Choice for a given simple index, or an error when `α ∉ Π_β`.
pub fn choice_for(rs: &RootSystem, beta: usize, alpha: Option<usize>) -> Result<AdmissibleChoice> {
    match alpha {
        None => Ok(default_choice(rs, beta)),
        Some(a) => admissible_choices(rs, beta).into_iter().find(|c| c.alpha == a).ok_or_else(|| {
            Error::Argument(format!("α{} does not occur in β = ({})", a + 1, format_root(rs.root(beta))))
        }),
    }
}

/// `η_μ(λ) = (μ, λ + ρ) - (μ, μ)/2` as an affine polynomial in `l`.
pub fn eta(rs: &RootSystem, mu: &[i32]) -> MultiPoly {
    let r = rs.rank();
    let mut lin = Vec::with_capacity(r);
    let mut c = -rs.inner_ints(mu, mu) / int(2);
    for (i, &m) in mu.iter().enumerate() {
        let w = int(m as i64) * rs.simple_half_norm(i);
        c += &w;
        lin.push(w);
    }
    MultiPoly::affine(c, &lin)
}

/// A term of the degree-one route formula.
#[derive(Clone, Debug, PartialEq)]
pub struct Route {
    /// `ν_1, ..., ν_{k+1}` as root indices.
    pub nus: Vec<usize>,
    /// `(-1)^k` times the product of the `C` entries.
    pub coeff: Rational,
    /// `μ_1, ..., μ_k`.
    pub mus: Vec<Vec<i32>>,
}

impl Route {
    /// Factors of the word `f_{ν_{k+1}} ... f_{ν_1}` from left to right.
    pub fn word(&self) -> Vec<(usize, u8)> {
        self.nus.iter().rev().map(|&k| (k, 1)).collect()
    }
}

/// Diagonal entry `C_{γ,γ} = (β,β)/2 · ℓ_{α,γ}/ℓ_{α,β}`.
fn diagonal(rs: &RootSystem, choice: &AdmissibleChoice, gamma: usize) -> Rational {
    let b = rs.root(choice.beta);
    rs.inner_ints(b, b) / int(2) * int(rs.root(gamma)[choice.alpha] as i64) / int(choice.ell as i64)
}

/// All routes from `β` down to roots containing `α`, depth first with
/// `ν` in root-index order.
pub fn routes(pbw: &Pbw, choice: &AdmissibleChoice) -> Result<Vec<Route>> {
    let rs = pbw.root_system();
    let n = rs.num_positive();
    let beta = rs.root(choice.beta).to_vec();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        pbw: &Pbw,
        choice: &AdmissibleChoice,
        gamma: usize,
        coeff: Rational,
        stack: &mut Vec<usize>,
        out: &mut Vec<Route>,
        n: usize,
    ) -> Result<()> {
        let rs = pbw.root_system();
        let k = stack.len();
        let mut nus = stack.clone();
        nus.push(gamma);
        let mut mus = Vec::with_capacity(k);
        let mut acc = vec![0; rs.rank()];
        for &nu in stack.iter() {
            for (t, c) in acc.iter_mut().zip(rs.root(nu)) {
                *t += c;
            }
            mus.push(acc.clone());
        }
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        out.push(Route { nus, coeff: &coeff * diagonal(rs, choice, gamma) * sign, mus });
        for nu in 0..n {
            let Some(next) = pbw.constants().diff_index(gamma, nu) else { continue };
            if rs.root(next)[choice.alpha] == 0 {
                continue;
            }
            let c = match pbw.constants().bracket_ef(nu, gamma)? {
                EfBracket::Lower { root, coeff } if root == next => coeff,
                other => return Err(Error::Verification(format!("unexpected bracket {other:?} on a route"))),
            };
            stack.push(nu);
            rec(pbw, choice, next, &coeff * c, stack, out, n)?;
            stack.pop();
        }
        Ok(())
    }
    rec(pbw, choice, choice.beta, Rational::one(), &mut stack, &mut out, n)?;
    for route in &out {
        for mu in &route.mus {
            let proportional = (0..rs.rank()).all(|i| mu[i] * beta.iter().sum::<i32>() == beta[i] * mu.iter().sum::<i32>());
            assert!(!proportional, "route denominator proportional to β");
        }
    }
    Ok(out)
}

/// How a degree-`m` element was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Route sum (`m = 1`) or a power of a simple root vector.
    Routes,
    /// Product of shifted degree-one factors.
    Factorized,
    /// Exact kernel on `H_{β,m}`; the choice has no finite auxiliary module.
    Kernel,
}

impl Construction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Construction::Routes => "routes",
            Construction::Factorized => "factorized",
            Construction::Kernel => "kernel",
        }
    }
}

/// Shapovalov element in the `λ`-context with its metadata.
#[derive(Clone, Debug)]
pub struct ShapovalovElement {
    pub element: UEAElement,
    pub beta: usize,
    pub m: u32,
    pub choice: AdmissibleChoice,
    pub construction: Construction,
}

impl ShapovalovElement {
    pub fn root_system(&self) -> &RootSystem {
        self.element.pbw().root_system()
    }

    pub fn leading_monomial(&self) -> Monomial {
        Monomial::power(self.root_system(), self.beta, self.m as u8)
    }
}

/// Route sum before normalization.
pub fn theta_one_raw(pbw: &Arc<Pbw>, choice: &AdmissibleChoice) -> Result<UEAElement> {
    let rs = pbw.root_system();
    let r = rs.rank();
    let ctx = Context::lambda(r);
    let rts = routes(pbw, choice)?;
    let parts: Vec<(Monomial, RatFun)> = rts
        .par_iter()
        .map(|route| {
            let dens: Vec<MultiPoly> = route.mus.iter().map(|mu| eta(rs, mu)).collect();
            let c = RatFun::with_linear_den(MultiPoly::constant(r, route.coeff.clone()), &dens)?;
            Ok(pbw.straighten(&route.word()).into_iter().map(|(m, k)| (m, c.scale(&k))).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(UEAElement::from_terms(pbw.clone(), ctx, parts))
}

/// Divides by the coefficient of `f_β^m`.
pub fn normalize_monic(x: &UEAElement, beta: usize, m: u32) -> Result<UEAElement> {
    let lead = Monomial::power(x.pbw().root_system(), beta, m as u8);
    let c = x.coeff(&lead);
    if c.is_one() {
        return Ok(x.clone());
    }
    if c.is_zero() {
        return Err(Error::Verification(format!("coefficient of f_β^{m} vanishes")));
    }
    Ok(x.scale(&c.inv()?))
}

/// `θ_β = θ_{β,1}`, monic in `f_β`.
pub fn theta_one(pbw: &Arc<Pbw>, choice: &AdmissibleChoice) -> Result<ShapovalovElement> {
    let raw = theta_one_raw(pbw, choice)?;
    let element = normalize_monic(&raw, choice.beta, 1)?;
    Ok(ShapovalovElement { element, beta: choice.beta, m: 1, choice: choice.clone(), construction: Construction::Routes })
}

/// `τ_ν`: coefficients `φ(λ)` become `φ(λ + ν)`.
pub fn shift_tau(x: &UEAElement, nu: &Weight) -> Result<UEAElement> {
    let rs = x.pbw().root_system();
    let delta: Vec<Rational> =
        (0..rs.rank()).map(|i| rs.coroot_pairing(nu, &unit(rs.rank(), i))).collect::<Result<_>>()?;
    x.shift(&delta)
}

/// The literal product `(τ_φ^{m-1} θ_β) ··· (τ_φ θ_β) θ_β` of raw factors,
/// for any choice. Extremal on `H_{β,m}` only for finite auxiliary modules.
pub fn factorized_product(pbw: &Arc<Pbw>, choice: &AdmissibleChoice, m: u32) -> Result<UEAElement> {
    let raw = theta_one_raw(pbw, choice)?;
    let mut prod = raw.clone();
    let mut shifted = raw;
    for _ in 1..m {
        shifted = shift_tau(&shifted, &choice.phi)?;
        prod = shifted.mul(&prod)?;
    }
    Ok(prod)
}

/// `θ_{β,m}`, monic in `f_β^m`: the shifted factorization when the choice
/// has a finite auxiliary module, the hyperplane kernel otherwise.
pub fn theta_m(pbw: &Arc<Pbw>, choice: &AdmissibleChoice, m: u32) -> Result<ShapovalovElement> {
    if m == 0 {
        return Err(Error::Argument("degree m must be positive".into()));
    }
    let rs = pbw.root_system();
    let done = |element, construction| Ok(ShapovalovElement { element, beta: choice.beta, m, choice: choice.clone(), construction });
    if rs.is_simple(choice.beta) {
        return done(UEAElement::f_power(pbw.clone(), Context::lambda(rs.rank()), choice.beta, m as u8), Construction::Routes);
    }
    if m == 1 {
        return theta_one(pbw, choice);
    }
    if choice.has_finite_module(rs) {
        let prod = factorized_product(pbw, choice, m)?;
        done(normalize_monic(&prod, choice.beta, m)?, Construction::Factorized)
    } else {
        done(direct::kernel_on_hyperplane(pbw, choice, m)?, Construction::Kernel)
    }
}

/// `H_{β,m} = {(λ + ρ, β) = m(β,β)/2}` solved for `l_{α*}`, `α*` the default
/// admissible root; the remaining coordinates become `t_1..t_{r-1}`.
pub fn hyperplane(rs: &RootSystem, beta: usize, m: u32) -> Result<Arc<Context>> {
    hyperplane_solving(rs, beta, m, default_choice(rs, beta).alpha)
}

pub fn hyperplane_solving(rs: &RootSystem, beta: usize, m: u32, solved: usize) -> Result<Arc<Context>> {
    if m == 0 {
        return Err(Error::Argument("degree m must be positive".into()));
    }
    let b = rs.root(beta);
    if b[solved] == 0 {
        return Err(Error::Argument(format!("l{} does not occur in the hyperplane equation", solved + 1)));
    }
    let r = rs.rank();
    let nv = r - 1;
    let param = |i: usize| if i < solved { i } else { i - 1 };
    let weight = |i: usize| int(b[i] as i64) * rs.simple_half_norm(i);
    // Σ w_i (l_i + 1) = m (β,β)/2
    let mut rhs = MultiPoly::constant(nv, int(m as i64) * rs.inner_ints(b, b) / int(2));
    for i in 0..r {
        if i != solved && b[i] != 0 {
            let li = &MultiPoly::var(nv, param(i)) + &MultiPoly::one(nv);
            rhs = &rhs - &li.scale(&weight(i));
        }
    }
    let ls = &rhs.scale(&(Rational::one() / weight(solved))) - &MultiPoly::one(nv);
    let images = (0..r).map(|i| if i == solved { ls.clone() } else { MultiPoly::var(nv, param(i)) }).collect();
    Ok(Context::hyperplane(b.to_vec(), m, solved, images))
}

#[cfg(test)]
mod tests;
