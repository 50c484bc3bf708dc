use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent vector ordered by total degree, then lexicographically with the
/// first variable largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    deg: u32,
    pow: SmallVec<[u16; 4]>,
}

impl Exponent {
    pub fn zero(nvars: usize) -> Self {
        Exponent { deg: 0, pow: SmallVec::from_elem(0, nvars) }
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = Self::zero(nvars);
        e.pow[var] = 1;
        e.deg = 1;
        e
    }

    pub fn from_slice(pow: &[u16]) -> Self {
        Exponent { deg: pow.iter().map(|&p| p as u32).sum(), pow: SmallVec::from_slice(pow) }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn get(&self, var: usize) -> u16 {
        self.pow[var]
    }

    pub fn as_slice(&self) -> &[u16] {
        &self.pow
    }

    pub fn mul(&self, other: &Exponent) -> Exponent {
        Exponent {
            deg: self.deg + other.deg,
            pow: self.pow.iter().zip(&other.pow).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.pow.iter().zip(&other.pow).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    fn quotient_of(&self, other: &Exponent) -> Exponent {
        Exponent {
            deg: other.deg - self.deg,
            pow: other.pow.iter().zip(&self.pow).map(|(a, b)| a - b).collect(),
        }
    }

    fn with_var(&self, var: usize, p: u16) -> Exponent {
        let mut e = self.clone();
        e.deg = e.deg - e.pow[var] as u32 + p as u32;
        e.pow[var] = p;
        e
    }
}

/// Sparse multivariate polynomial over Q in a fixed number of variables.
/// Terms are kept sorted in descending monomial order with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<(Exponent, Rational)>,
}

impl PartialOrd for MultiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiPoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.nvars.cmp(&other.nvars).then_with(|| self.terms.cmp(&other.terms))
    }
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        MultiPoly { nvars, terms: vec![(Exponent::zero(nvars), c)] }
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index out of range");
        MultiPoly { nvars, terms: vec![(Exponent::unit(nvars, var), Rational::one())] }
    }

    /// Affine polynomial `c + sum_i a_i x_i`.
    pub fn affine(c: Rational, lin: &[Rational]) -> Self {
        let n = lin.len();
        let mut terms: Vec<(Exponent, Rational)> = lin
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (Exponent::unit(n, i), a.clone()))
            .collect();
        if !c.is_zero() {
            terms.push((Exponent::zero(n), c));
        }
        MultiPoly { nvars: n, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(nvars: usize, it: I) -> Self {
        let mut acc: HashMap<Exponent, Rational> = HashMap::new();
        for (e, c) in it {
            debug_assert_eq!(e.pow.len(), nvars);
            *acc.entry(e).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Exponent, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exponent, Rational)] {
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

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.deg == 0)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.deg == 0 && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(e, c)] if e.deg == 0 => Some(c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.0.deg)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|t| t.0.pow[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.0.pow[var] > 0)
    }

    pub fn leading(&self) -> Option<&(Exponent, Rational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms.first().map_or_else(Rational::zero, |t| t.1.clone())
    }

    pub fn coeff(&self, e: &Exponent) -> Rational {
        self.terms
            .binary_search_by(|t| e.cmp(&t.0))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    /// Scales so that the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Scales to integer coefficients with unit content and positive leading
    /// coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            l = l.lcm(c.denom());
            g = g.gcd(c.numer());
        }
        let mut f = Rational::new(l, g);
        if self.terms[0].1.is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    fn add_scaled(&self, other: &Self, neg: bool) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different rings");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                std::cmp::Ordering::Greater => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((eb.clone(), if neg { -cb } else { cb.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if neg { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ea.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(e, c)| (e.clone(), if neg { -c } else { c.clone() })));
        MultiPoly { nvars: self.nvars, terms: out }
    }

    fn mul_poly(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different rings");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        let mut acc: HashMap<Exponent, Rational> = HashMap::with_capacity(self.len() * other.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                *acc.entry(ea.mul(eb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Self::from_map(self.nvars, acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (de, dc) = d.leading()?;
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.total_degree() < d.total_degree() {
            return None;
        }
        let mut rem: BTreeMap<Exponent, Rational> = self.terms.iter().cloned().collect();
        let mut q = Vec::new();
        while let Some((e, c)) = rem.pop_last() {
            if !de.divides(&e) {
                return None;
            }
            let qe = de.quotient_of(&e);
            let qc = &c / dc;
            for (te, tc) in &d.terms[1..] {
                let key = te.mul(&qe);
                let v = rem.entry(key.clone()).or_insert_with(Rational::zero);
                *v -= &qc * tc;
                if v.is_zero() {
                    rem.remove(&key);
                }
            }
            q.push((qe, qc));
        }
        Some(MultiPoly { nvars: self.nvars, terms: q })
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong dimension");
        let maxdeg: Vec<u16> = (0..self.nvars).map(|v| self.degree_in(v)).collect();
        let powers: Vec<Vec<Rational>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut p = vec![Rational::one()];
                for k in 1..=d as usize {
                    let next = &p[k - 1] * x;
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &p) in e.pow.iter().enumerate() {
                if p > 0 {
                    t *= &powers[v][p as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `images[i]` for the i-th variable.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars, "substitution has wrong arity");
        let target = images.first().map_or(0, |p| p.nvars);
        let mut cache: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(p.nvars), p.clone()]).collect();
        let mut acc: HashMap<Exponent, Rational> = HashMap::new();
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (v, &p) in e.pow.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                while cache[v].len() <= p as usize {
                    let next = &cache[v][cache[v].len() - 1] * &images[v];
                    cache[v].push(next);
                }
                t = &t * &cache[v][p as usize];
            }
            for (te, tc) in t.terms {
                *acc.entry(te).or_insert_with(Rational::zero) += tc;
            }
        }
        Self::from_map(target, acc)
    }

    /// Coefficients of `self` viewed as a polynomial in `var`; entry k is the
    /// coefficient of `var^k`, itself free of `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Exponent, Rational)>> = vec![Vec::new(); d + 1];
        for (e, c) in &self.terms {
            buckets[e.pow[var] as usize].push((e.with_var(var, 0), c.clone()));
        }
        buckets.into_iter().map(|b| MultiPoly::from_terms(self.nvars, b)).collect()
    }

    /// Leading coefficient with respect to `var`, as a polynomial free of it.
    pub fn lead_in(&self, var: usize) -> MultiPoly {
        let d = self.degree_in(var);
        MultiPoly::from_terms(
            self.nvars,
            self.terms.iter().filter(|t| t.0.pow[var] == d).map(|(e, c)| (e.with_var(var, 0), c.clone())),
        )
    }

    /// Multiplies by `var^k`.
    pub fn shift_var(&self, var: usize, k: u16) -> MultiPoly {
        if k == 0 {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.with_var(var, e.pow[var] + k), c.clone()))
            .collect::<Vec<_>>();
        MultiPoly::from_terms(self.nvars, terms)
    }

    /// Splits a polynomial of degree at most one into constant and linear part.
    pub fn affine_parts(&self) -> Option<(Rational, Vec<Rational>)> {
        if self.total_degree() > 1 {
            return None;
        }
        let mut lin = vec![Rational::zero(); self.nvars];
        let mut c = Rational::zero();
        for (e, a) in &self.terms {
            match e.pow.iter().position(|&p| p == 1) {
                Some(v) => lin[v] = a.clone(),
                None => c = a.clone(),
            }
        }
        Some((c, lin))
    }

    /// Renders with variables named `{prefix}1, {prefix}2, ...`.
    pub fn to_string_with(&self, prefix: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .pow
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(v, &p)| if p == 1 { format!("{prefix}{}", v + 1) } else { format!("{prefix}{}^{p}", v + 1) })
                .collect();
            let neg = c.is_negative();
            let a = c.abs();
            let body = if mono.is_empty() {
                a.to_string()
            } else if a.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", a, mono.join("*"))
            };
            match (k, neg) {
                (0, false) => s.push_str(&body),
                (0, true) => {
                    s.push('-');
                    s.push_str(&body)
                }
                (_, false) => {
                    s.push_str(" + ");
                    s.push_str(&body)
                }
                (_, true) => {
                    s.push_str(" - ");
                    s.push_str(&body)
                }
            }
        }
        s
    }

    /// Parses the text form produced by [`MultiPoly::to_string_with`];
    /// parentheses and integer powers of subexpressions are accepted too.
    pub fn parse(src: &str, prefix: &str, nvars: usize) -> Result<MultiPoly> {
        let mut p = Parser { s: src.as_bytes(), i: 0, prefix: prefix.as_bytes(), nvars };
        let out = p.expr()?;
        p.skip_ws();
        if p.i != p.s.len() {
            return Err(Error::Parse(format!("trailing input at byte {} in {src:?}", p.i)));
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with("x"))
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    prefix: &'a [u8],
    nvars: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.i))
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.nvars);
        let mut sign = false;
        if self.peek() == Some(b'-') {
            self.i += 1;
            sign = true;
        } else if self.peek() == Some(b'+') {
            self.i += 1;
        }
        loop {
            let t = self.term()?;
            acc = if sign { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => sign = false,
                Some(b'-') => sign = true,
                _ => return Ok(acc),
            }
            self.i += 1;
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.i += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.s[start..self.i])
            .ok()
            .and_then(|t| t.parse::<BigInt>().ok())
            .ok_or_else(|| self.err("bad integer"))
    }

    fn power(&mut self, base: MultiPoly) -> Result<MultiPoly> {
        if self.peek() == Some(b'^') {
            self.i += 1;
            let k = self.integer()?;
            let k: u32 = k.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                self.power(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut q = Rational::from_integer(n);
                if self.peek() == Some(b'/') {
                    self.i += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    q /= Rational::from_integer(d);
                }
                Ok(MultiPoly::constant(self.nvars, q))
            }
            Some(_) if self.s[self.i..].starts_with(self.prefix) => {
                self.i += self.prefix.len();
                let k = self.integer()?;
                let k: usize = k.try_into().map_err(|_| self.err("bad variable index"))?;
                if k == 0 || k > self.nvars {
                    return Err(self.err("variable index out of range"));
                }
                self.power(MultiPoly::var(self.nvars, k - 1))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.add_scaled(o, false)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.add_scaled(o, true)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.mul_poly(o)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: MultiPoly) -> MultiPoly {
        &self + &o
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: MultiPoly) -> MultiPoly {
        &self - &o
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: MultiPoly) -> MultiPoly {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    #[test]
    fn arithmetic_basics() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        let q = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        assert_eq!(p, q);
        assert_eq!(p.total_degree(), 2);
        assert_eq!(p.div_exact(&(&x(0) - &x(1))).unwrap(), &x(0) + &x(1));
        assert!(p.div_exact(&(&x(0) + &x(2))).is_none());
    }

    #[test]
    fn render_and_order() {
        let p = MultiPoly::parse("l2 - 1 + 3/2*l1^2*l2", "l", 2).unwrap();
        assert_eq!(p.to_string_with("l"), "3/2*l1^2*l2 + l2 - 1");
        assert_eq!(MultiPoly::zero(2).to_string_with("l"), "0");
        let q = MultiPoly::parse("-l1 - 2", "l", 2).unwrap();
        assert_eq!(q.to_string_with("l"), "-l1 - 2");
        assert_eq!(MultiPoly::parse("(l1+1)^2", "l", 2).unwrap().to_string_with("l"), "l1^2 + 2*l1 + 1");
    }

    #[test]
    fn compose_and_eval() {
        let p = MultiPoly::parse("x1^2*x2 + x3", "x", 3).unwrap();
        let t = MultiPoly::var(1, 0);
        let one = MultiPoly::one(1);
        let img = vec![&t + &one, t.clone(), one.clone()];
        let c = p.compose(&img);
        // (t+1)^2 t + 1
        assert_eq!(c, MultiPoly::parse("t1^3 + 2*t1^2 + t1 + 1", "t", 1).unwrap());
        assert_eq!(c.eval(&[int(2)]), int(19));
        assert_eq!(p.eval(&[int(3), int(2), int(2)]), int(20));
    }

    #[test]
    fn parse_errors() {
        assert!(MultiPoly::parse("l3", "l", 2).is_err());
        assert!(MultiPoly::parse("1/0", "l", 2).is_err());
        assert!(MultiPoly::parse("l1 +", "l", 2).is_err());
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u16..3, nvars), -5i64..6, 1i64..4), 0..5).prop_map(
            move |ts| {
                MultiPoly::from_terms(nvars, ts.into_iter().map(|(e, n, d)| (Exponent::from_slice(&e), rat(n, d))))
            },
        )
    }

    proptest! {
        #[test]
        fn text_roundtrip(p in arb_poly(3)) {
            let s = p.to_string_with("l");
            prop_assert_eq!(MultiPoly::parse(&s, "l", 3).unwrap(), p);
        }

        #[test]
        fn ring_laws(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
            }
        }

        #[test]
        fn eval_is_homomorphism(a in arb_poly(2), b in arb_poly(2), u in -4i64..5, v in -4i64..5) {
            let pt = [int(u), int(v)];
            prop_assert_eq!((&a * &b).eval(&pt), a.eval(&pt) * b.eval(&pt));
            prop_assert_eq!((&a + &b).eval(&pt), a.eval(&pt) + b.eval(&pt));
        }
    }
}
