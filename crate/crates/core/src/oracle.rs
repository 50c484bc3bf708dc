//! Brute-force checks that share nothing with the route construction:
//! singular vectors as the kernel of the raising system, kernels of the
//! numeric Gram matrix, and the symbolic extremality test on `H_{β,m}`.

use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat, MultiPoly, RatFun, Rational};
use crate::linalg::{self, BasisBuilder, Vector};
use crate::rootsys::{format_root, RootSystem};
use crate::shapelem::{eta, hyperplane, ShapovalovElement};
use crate::verma::{Context, Monomial, NumericForm, Pbw, UEAElement};

/// Extremal vectors of weight `λ - μ` at a numeric `λ`.
#[derive(Clone, Debug)]
pub struct SingularSpace {
    pub point: Vec<Rational>,
    pub mu: Vec<i32>,
    pub basis: Vec<UEAElement>,
}

impl SingularSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn numeric_element(pbw: &Arc<Pbw>, point: &[Rational], monomials: &[Monomial], v: &[Rational]) -> UEAElement {
    let terms = monomials.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), RatFun::constant(0, c.clone())));
    UEAElement::from_terms(pbw.clone(), Context::point(point), terms)
}

fn check_point(pbw: &Pbw, point: &[Rational]) -> Result<()> {
    if point.len() != pbw.rank() {
        return Err(Error::Dimension { expected: pbw.rank(), found: point.len() });
    }
    Ok(())
}

/// Solves `e_i x v_λ = 0` for all simple `α_i` over the PBW basis of
/// weight `λ - μ`.
pub fn bruteforce_singular(pbw: &Arc<Pbw>, point: &[Rational], mu: &[i32]) -> Result<SingularSpace> {
    check_point(pbw, point)?;
    let form = NumericForm::new(pbw.clone(), point);
    let rs = pbw.root_system();
    let basis = form.basis(mu);
    let n = basis.0.len();
    let mut rows: Vec<Vector> = Vec::new();
    for i in 0..rs.rank() {
        let a = rs.simple_index(i);
        let mut target = mu.to_vec();
        target[i] -= 1;
        if target.iter().any(|&c| c < 0) {
            continue;
        }
        let m = form.basis(&target).0.len();
        let mut block = vec![vec![Rational::zero(); n]; m];
        for (j, y) in basis.0.iter().enumerate() {
            for (k, c) in form.raise_numeric(a, y).iter() {
                block[*k][j] = c.clone();
            }
        }
        rows.extend(block);
    }
    let kernel = linalg::kernel(&rows, n)?;
    let basis = kernel.iter().map(|v| numeric_element(pbw, point, &basis.0, v)).collect();
    Ok(SingularSpace { point: point.to_vec(), mu: mu.to_vec(), basis })
}

/// Gram matrix of the contravariant form on weight `λ - μ` and its kernel.
#[derive(Clone, Debug)]
pub struct GramKernel {
    pub monomials: Vec<Monomial>,
    pub matrix: Vec<Vector>,
    pub kernel: Vec<UEAElement>,
}

pub fn gram_kernel(pbw: &Arc<Pbw>, point: &[Rational], mu: &[i32]) -> Result<GramKernel> {
    check_point(pbw, point)?;
    let form = NumericForm::new(pbw.clone(), point);
    let (monomials, matrix) = form.gram(mu);
    let kernel = linalg::kernel(&matrix, monomials.len())?.iter().map(|v| numeric_element(pbw, point, &monomials, v)).collect();
    Ok(GramKernel { monomials, matrix, kernel })
}

/// Coefficient vector of a numeric element over the weight-space basis.
fn coords(x: &UEAElement, basis: &[Monomial]) -> Result<Vector> {
    let mut v = vec![Rational::zero(); basis.len()];
    for (m, c) in x.terms() {
        let i = basis.iter().position(|b| b == m).ok_or_else(|| Error::Argument(format!("monomial {} outside the weight space", m.render(x.pbw().root_system()))))?;
        v[i] = c.constant_value().ok_or_else(|| Error::Argument("element is not numeric".into()))?;
    }
    Ok(v)
}

/// Whether two families of numeric elements of the same weight span the
/// same subspace.
pub fn same_span(a: &[UEAElement], b: &[UEAElement], basis: &[Monomial]) -> Result<bool> {
    let rank = |xs: &[&UEAElement]| -> Result<usize> {
        let mut bb = BasisBuilder::new();
        for x in xs {
            let _ = bb.insert(&coords(x, basis)?);
        }
        Ok(bb.len())
    };
    let ra = rank(&a.iter().collect::<Vec<_>>())?;
    let rb = rank(&b.iter().collect::<Vec<_>>())?;
    let rab = rank(&a.iter().chain(b).collect::<Vec<_>>())?;
    Ok(ra == rb && ra == rab)
}

/// Outcome of [`compare_up_to_scalar`].
#[derive(Clone, Debug, PartialEq)]
pub enum Comparison {
    /// `x = c · y`.
    Scalar(Rational),
    /// First monomial, in PBW order, where no common scalar fits.
    Mismatch { monomial: String, left: Rational, right: Rational },
}

/// Finds `c` with `x = c·y` for numeric elements.
pub fn compare_up_to_scalar(x: &UEAElement, y: &UEAElement) -> Result<Comparison> {
    if x.is_zero() || y.is_zero() {
        return Err(Error::Argument("cannot compare a zero element".into()));
    }
    let value = |e: &UEAElement, m: &Monomial| -> Result<Rational> {
        e.coeff(m).constant_value().ok_or_else(|| Error::Argument("element is not numeric".into()))
    };
    let rs = x.pbw().root_system();
    let mut keys: Vec<&Monomial> = x.terms().keys().chain(y.terms().keys()).collect();
    keys.sort();
    keys.dedup();
    let mut scalar: Option<Rational> = None;
    for m in keys {
        let (a, b) = (value(x, m)?, value(y, m)?);
        let ok = match (&scalar, b.is_zero()) {
            (_, true) => a.is_zero(),
            (None, false) => {
                scalar = Some(&a / &b);
                !a.is_zero()
            }
            (Some(c), false) => a == c * &b,
        };
        if !ok {
            return Ok(Comparison::Mismatch { monomial: m.render(rs), left: a, right: b });
        }
    }
    Ok(Comparison::Scalar(scalar.expect("nonzero elements share a monomial")))
}

/// Pass/fail with residuals for the symbolic check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail { residuals: Vec<Residual> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residual {
    /// One-based simple root index.
    pub simple_root: usize,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub algebra: String,
    pub beta: String,
    pub m: u32,
    pub alpha: usize,
    pub construction: String,
    #[serde(flatten)]
    pub status: Status,
    pub millis: u64,
}

impl ExtremalReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn render_text(&self) -> String {
        let head = format!(
            "{} {} beta=({}) m={} alpha={} [{}] {} ms",
            if self.passed() { "PASS" } else { "FAIL" },
            self.algebra,
            self.beta,
            self.m,
            self.alpha,
            self.construction,
            self.millis
        );
        match &self.status {
            Status::Pass => head + "\n",
            Status::Fail { residuals } => {
                let mut s = head + "\n";
                for r in residuals {
                    s.push_str(&format!("  e{} residual:\n", r.simple_root));
                    for line in r.element.lines() {
                        s.push_str(&format!("    {line}\n"));
                    }
                }
                s
            }
        }
    }
}

/// Substitutes `H_{β,m}` into `θ` and applies every simple raising
/// operator; PASS iff all results vanish identically.
///
/// A denominator vanishing on the hyperplane surfaces as
/// [`Error::IdenticallySingular`].
pub fn verify_extremal_symbolic(theta: &ShapovalovElement) -> Result<ExtremalReport> {
    let start = Instant::now();
    let rs = theta.root_system();
    let ctx = hyperplane(rs, theta.beta, theta.m)?;
    let s = theta.element.specialize(&ctx)?;
    let residuals: Vec<Residual> = (0..rs.rank())
        .into_par_iter()
        .filter_map(|i| {
            let r = s.act_e(i);
            (!r.is_zero()).then(|| Residual { simple_root: i + 1, element: r.render() })
        })
        .collect();
    let status = if residuals.is_empty() { Status::Pass } else { Status::Fail { residuals } };
    Ok(ExtremalReport {
        algebra: rs.algebra().to_string(),
        beta: format_root(rs.root(theta.beta)),
        m: theta.m,
        alpha: theta.choice.alpha + 1,
        construction: theta.construction.as_str().into(),
        status,
        millis: start.elapsed().as_millis() as u64,
    })
}

/// Free-parameter values: `p/q` with `1 ≤ q ≤ 7`, `|p| ≤ 3q`, reduced.
fn parameter_pool() -> Vec<Rational> {
    let mut pool: Vec<Rational> = (1..=7i64).flat_map(|q| (-3 * q..=3 * q).map(move |p| rat(p, q))).collect();
    pool.sort();
    pool.dedup();
    pool
}

/// `η_{kγ}` for every positive root `γ` and `k ≥ 1` with `kγ ≤ mβ`
/// componentwise, except `(β, m)` itself: the factors of the Shapovalov
/// determinant in weight `λ - mβ` other than the one defining `H_{β,m}`.
fn other_hyperplanes(rs: &RootSystem, beta: usize, m: u32) -> Vec<MultiPoly> {
    let top: Vec<i32> = rs.root(beta).iter().map(|c| c * m as i32).collect();
    let mut out = Vec::new();
    for g in 0..rs.num_positive() {
        for k in 1.. {
            let kg: Vec<i32> = rs.root(g).iter().map(|c| c * k).collect();
            if kg.iter().zip(&top).any(|(a, b)| a > b) {
                break;
            }
            if kg != top {
                out.push(eta(rs, &kg));
            }
        }
    }
    out
}

/// Seeded rejection sampler for generic points of `H_{β,m}`.
pub struct Sampler {
    rng: ChaCha8Rng,
    pool: Vec<Rational>,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), pool: parameter_pool() }
    }

    /// A point of `H_{β,m}` in fundamental coordinates where no coefficient
    /// denominator of `θ` vanishes and which lies on no other degeneracy
    /// hyperplane `H_{γ,k}` with `kγ ≤ mβ`.
    pub fn hyperplane_point(&mut self, theta: &ShapovalovElement) -> Result<Vec<Rational>> {
        let rs = theta.root_system();
        let ctx = hyperplane(rs, theta.beta, theta.m)?;
        let others = other_hyperplanes(rs, theta.beta, theta.m);
        for _ in 0..1000 {
            let t: Vec<Rational> = (0..ctx.nvars()).map(|_| self.pool[self.rng.gen_range(0..self.pool.len())].clone()).collect();
            let point: Vec<Rational> = ctx.images().iter().map(|p| p.eval(&t)).collect();
            let dens_ok = theta.element.terms().values().all(|c| c.eval(&point).is_ok());
            if dens_ok && others.iter().all(|e| !e.eval(&point).is_zero()) {
                return Ok(point);
            }
        }
        Err(Error::Verification("no generic hyperplane point found".into()))
    }

    /// A point off every `H_{γ,k}` with `γ` a positive root, `k ≤ bound`.
    pub fn generic_point(&mut self, pbw: &Pbw, bound: u32) -> Vec<Rational> {
        let rs = pbw.root_system();
        loop {
            let point: Vec<Rational> = (0..rs.rank()).map(|_| self.pool[self.rng.gen_range(0..self.pool.len())].clone()).collect();
            let clear = (0..rs.num_positive()).all(|g| {
                let gamma = rs.root(g);
                (1..=bound as i32).all(|k| {
                    let kg: Vec<i32> = gamma.iter().map(|c| c * k).collect();
                    !eta(rs, &kg).eval(&point).is_zero()
                })
            });
            if clear {
                return point;
            }
        }
    }
}

/// Oracle outcome at one sampled point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCheck {
    pub point: Vec<String>,
    pub gram_dim: usize,
    pub singular_dim: usize,
    pub spans_agree: bool,
    /// `θ(λ) = scalar · (kernel vector)` when the comparison succeeds.
    pub scalar: Option<String>,
    pub mismatch: Option<String>,
}

impl PointCheck {
    pub fn passed(&self) -> bool {
        self.gram_dim == 1 && self.singular_dim == 1 && self.spans_agree && self.scalar.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub algebra: String,
    pub beta: String,
    pub m: u32,
    pub alpha: usize,
    pub points: Vec<PointCheck>,
    /// Sampled points discarded because the singular space or the Gram
    /// kernel there had dimension above one.
    pub non_generic: Vec<Vec<String>>,
    pub millis: u64,
}

impl EquivalenceReport {
    pub fn passed(&self, wanted: usize) -> bool {
        self.points.len() >= wanted && self.points.iter().all(PointCheck::passed)
    }

    pub fn render_text(&self, wanted: usize) -> String {
        let mut s = format!(
            "{} {} beta=({}) m={} alpha={} oracle points={} non-generic={} {} ms\n",
            if self.passed(wanted) { "PASS" } else { "FAIL" },
            self.algebra,
            self.beta,
            self.m,
            self.alpha,
            self.points.len(),
            self.non_generic.len(),
            self.millis
        );
        for p in &self.points {
            s.push_str(&format!(
                "  l=({}) gram_dim={} singular_dim={} spans_agree={} {}\n",
                p.point.join(", "),
                p.gram_dim,
                p.singular_dim,
                p.spans_agree,
                match (&p.scalar, &p.mismatch) {
                    (Some(c), _) => format!("scalar={c}"),
                    (None, Some(m)) => format!("mismatch={m}"),
                    (None, None) => "mismatch=-".into(),
                }
            ));
        }
        s
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Runs the three oracles at one point of `H_{β,m}`; `None` marks a
/// non-generic point (singular space or Gram kernel of dimension above one).
pub fn check_point_on_hyperplane(theta: &ShapovalovElement, point: &[Rational]) -> Result<Option<PointCheck>> {
    let pbw = theta.element.pbw();
    let rs = pbw.root_system();
    let mu: Vec<i32> = rs.root(theta.beta).iter().map(|c| c * theta.m as i32).collect();
    let singular = bruteforce_singular(pbw, point, &mu)?;
    if singular.dim() > 1 {
        return Ok(None);
    }
    let gram = gram_kernel(pbw, point, &mu)?;
    if gram.kernel.len() > 1 {
        return Ok(None);
    }
    let spans_agree = same_span(&singular.basis, &gram.kernel, &gram.monomials)?;
    let specialized = theta.element.specialize(&Context::point(point))?;
    let (scalar, mismatch) = match singular.basis.first() {
        Some(v) if !specialized.is_zero() => match compare_up_to_scalar(&specialized, v)? {
            Comparison::Scalar(c) if !c.is_zero() => (Some(c.to_string()), None),
            Comparison::Scalar(_) => (None, Some("zero scalar".to_string())),
            Comparison::Mismatch { monomial, left, right } => (None, Some(format!("{monomial}: {left} vs {right}"))),
        },
        _ => (None, Some("empty singular space or zero element".into())),
    };
    Ok(Some(PointCheck {
        point: strings(point),
        gram_dim: gram.kernel.len(),
        singular_dim: singular.dim(),
        spans_agree,
        scalar,
        mismatch,
    }))
}

/// Samples points of `H_{β,m}` until `wanted` generic ones are checked.
pub fn oracle_equivalence(theta: &ShapovalovElement, wanted: usize, seed: u64) -> Result<EquivalenceReport> {
    let start = Instant::now();
    let rs = theta.root_system();
    let mut sampler = Sampler::new(seed);
    let mut points = Vec::new();
    let mut non_generic = Vec::new();
    for _ in 0..8 {
        let need = wanted - points.len();
        let batch: Vec<Vec<Rational>> = (0..need).map(|_| sampler.hyperplane_point(theta)).collect::<Result<_>>()?;
        let checks: Vec<Option<PointCheck>> =
            batch.par_iter().map(|p| check_point_on_hyperplane(theta, p)).collect::<Result<_>>()?;
        for (p, c) in batch.iter().zip(checks) {
            match c {
                Some(c) => points.push(c),
                None => non_generic.push(strings(p)),
            }
        }
        if points.len() >= wanted {
            break;
        }
    }
    Ok(EquivalenceReport {
        algebra: rs.algebra().to_string(),
        beta: format_root(rs.root(theta.beta)),
        m: theta.m,
        alpha: theta.choice.alpha + 1,
        points,
        non_generic,
        millis: start.elapsed().as_millis() as u64,
    })
}

/// Dimension of the singular space at a point off all small hyperplanes.
pub fn off_hyperplane_dim(pbw: &Arc<Pbw>, mu: &[i32], seed: u64) -> Result<(Vec<Rational>, usize)> {
    let bound = mu.iter().map(|&c| c.max(0) as u32).max().unwrap_or(1).max(1) + 1;
    let point = Sampler::new(seed).generic_point(pbw, bound);
    let dim = bruteforce_singular(pbw, &point, mu)?.dim();
    Ok((point, dim))
}

/// `x` with the coefficient of its first monomial increased by one; used to
/// confirm that the checkers reject a wrong element.
pub fn corrupt(theta: &ShapovalovElement) -> ShapovalovElement {
    let mut out = theta.clone();
    let n = theta.element.context().nvars();
    let (m, c) = theta.element.terms().iter().next().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero element");
    out.element = theta.element.with_coeff(&m, &c + &RatFun::one(n));
    out
}
