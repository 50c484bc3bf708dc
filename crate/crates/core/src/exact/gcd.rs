//! Multivariate gcd over Q by recursive primitive polynomial remainder
//! sequences, with an evaluation shortcut that certifies coprimality in the
//! main variable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{int, Exponent, MultiPoly, Rational};

/// Monic gcd of `a` and `b`; `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    gcd_rec(a, b).monic()
}

fn first_var(a: &MultiPoly, b: &MultiPoly) -> Option<usize> {
    (0..a.nvars()).find(|&v| a.uses_var(v) || b.uses_var(v))
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.nvars());
    }
    if a == b {
        return a.primitive();
    }
    if (0..a.nvars()).all(|v| !a.uses_var(v) || !b.uses_var(v) || coprime_in(a, b, v)) {
        return MultiPoly::one(a.nvars());
    }
    if let Some(g) = heuristic(&a.primitive(), &b.primitive(), 0) {
        return g;
    }
    let v = first_var(a, b).expect("non-constant input has a variable");
    if !a.uses_var(v) {
        return gcd_rec(a, &content_in(b, v));
    }
    if !b.uses_var(v) {
        return gcd_rec(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_rec(&ca, &cb);
    if coprime_in(a, b, v) {
        return c;
    }
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = prs(pa, pb, v);
    (&c * &g).primitive()
}

/// Univariate image of `p` in `v` with every other variable set to `point`.
fn image_in(p: &MultiPoly, v: usize, point: &[Rational]) -> Vec<Rational> {
    p.coeffs_in(v).iter().map(|c| c.eval(point)).collect()
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree of the gcd of two dense univariate polynomials over Q.
fn univariate_gcd_degree(mut a: Vec<Rational>, mut b: Vec<Rational>) -> usize {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let lb = b.last().unwrap().clone();
        while a.len() >= b.len() {
            let q = a.last().unwrap() / &lb;
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[shift + i] -= &q * c;
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// True when `gcd(a, b)` is free of `v`. A common factor of positive degree
/// in `v` keeps its degree under any specialization of the other variables
/// that leaves the leading coefficients of `a` and `b` nonzero, so a
/// constant gcd of the images is a proof.
fn coprime_in(a: &MultiPoly, b: &MultiPoly, v: usize) -> bool {
    let (la, lb) = (a.lead_in(v), b.lead_in(v));
    for k in 0..3i64 {
        let point: Vec<Rational> = (0..a.nvars()).map(|i| int(3 + 7 * k + 5 * i as i64) / int(2 + i as i64 + k)).collect();
        if la.eval(&point).is_zero() || lb.eval(&point).is_zero() {
            continue;
        }
        if univariate_gcd_degree(image_in(a, v, &point), image_in(b, v, &point)) == 0 {
            return true;
        }
    }
    false
}

fn max_norm(p: &MultiPoly) -> BigInt {
    p.terms().iter().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

fn int_content(p: &MultiPoly) -> BigInt {
    p.terms().iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c.numer()))
}

/// `p` with variable `v` replaced by the integer `xi`.
fn eval_at(p: &MultiPoly, v: usize, xi: &BigInt) -> MultiPoly {
    let mut pows: Vec<BigInt> = vec![BigInt::one()];
    let terms = p.terms().iter().map(|(e, c)| {
        let k = e.get(v) as usize;
        while pows.len() <= k {
            let next = pows.last().unwrap() * xi;
            pows.push(next);
        }
        let mut ex = e.as_slice().to_vec();
        ex[v] = 0;
        (Exponent::from_slice(&ex), c * Rational::from_integer(pows[k].clone()))
    });
    MultiPoly::from_terms(p.nvars(), terms.collect::<Vec<_>>())
}

fn symmetric_mod(c: &BigInt, xi: &BigInt) -> BigInt {
    let r = c.mod_floor(xi);
    if &r * 2 > *xi {
        r - xi
    } else {
        r
    }
}

/// Recovers a polynomial in `v` from its image at `v = xi` through the
/// symmetric `xi`-adic expansion of the coefficients.
fn interpolate(g: &MultiPoly, v: usize, xi: &BigInt) -> MultiPoly {
    let mut rest = g.clone();
    let mut out = Vec::new();
    let mut k = 0u16;
    while !rest.is_zero() {
        let digit: Vec<(Exponent, Rational)> = rest
            .terms()
            .iter()
            .map(|(e, c)| (e.clone(), Rational::from_integer(symmetric_mod(c.numer(), xi))))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (e, c) in &digit {
            let mut ex = e.as_slice().to_vec();
            ex[v] = k;
            out.push((Exponent::from_slice(&ex), c.clone()));
        }
        let digit = MultiPoly::from_terms(g.nvars(), digit);
        rest = (&rest - &digit).scale(&Rational::from_integer(xi.clone()).recip());
        k += 1;
    }
    MultiPoly::from_terms(g.nvars(), out)
}

/// Heuristic gcd of primitive integer polynomials by evaluation at large
/// integers. Every candidate is confirmed by exact division, which for
/// `xi > 2 min(|a|, |b|) + 1` proves it is the gcd. `None` asks the caller
/// to fall back to remainder sequences.
fn heuristic(a: &MultiPoly, b: &MultiPoly, depth: usize) -> Option<MultiPoly> {
    const MAX_BITS: u64 = 4000;
    let n = a.nvars();
    if a.is_constant() || b.is_constant() {
        let g = int_content(a).gcd(&int_content(b));
        return Some(MultiPoly::constant(n, Rational::from_integer(g)));
    }
    let c = Rational::from_integer(int_content(a).gcd(&int_content(b)));
    let (a, b) = (&a.primitive(), &b.primitive());
    let v = (0..n).rev().find(|&v| a.uses_var(v) || b.uses_var(v))?;
    let mut xi: BigInt = max_norm(a).min(max_norm(b)) * 2 + 29;
    for _ in 0..6 {
        let deg = a.degree_in(v).max(b.degree_in(v)) as u64 + 1;
        if xi.bits() * deg > MAX_BITS || depth > 8 {
            return None;
        }
        let (ea, eb) = (eval_at(a, v, &xi), eval_at(b, v, &xi));
        if !ea.is_zero() && !eb.is_zero() {
            let g = heuristic(&ea, &eb, depth + 1)?;
            let cand = interpolate(&g, v, &xi);
            if !cand.is_zero() {
                let cand = cand.primitive();
                if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                    return Some(cand.scale(&c));
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// Gcd of the coefficients of `p` with respect to `v`.
pub fn content_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let mut coeffs: Vec<MultiPoly> = p.coeffs_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| (c.total_degree(), c.len()));
    let mut g = MultiPoly::zero(p.nvars());
    for c in coeffs {
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            return MultiPoly::one(p.nvars());
        }
    }
    g
}

fn primitive_part_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").primitive()
}

/// Sparse pseudo-remainder of `a` by `b` in `v`.
fn prem(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let db = b.degree_in(v);
    let lb = b.lead_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let k = r.degree_in(v) - db;
        let lr = r.lead_in(v);
        r = &(&lb * &r) - &(&lr * &b.shift_var(v, k));
        r = r.primitive();
    }
    r
}

fn prs(a: MultiPoly, b: MultiPoly, v: usize) -> MultiPoly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return primitive_part_in(&b, v);
        }
        if !r.uses_var(v) {
            return MultiPoly::one(a.nvars());
        }
        a = b;
        b = primitive_part_in(&r, v);
    }
}
