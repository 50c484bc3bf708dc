use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{MultiPoly, Rational};
use crate::error::{Error, Result};

/// Reduced quotient of polynomials over Q.
///
/// The denominator is stored factored: a sorted list of distinct monic
/// affine factors with multiplicities times a monic residual `rest`. The
/// numerator is reduced against both, which makes the pair
/// (numerator, expanded denominator) canonical.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: MultiPoly,
    lin: Vec<(MultiPoly, u32)>,
    rest: MultiPoly,
}

/// Affine change of variables `x_i -> images[i]`.
#[derive(Clone, Debug)]
pub struct AffineMap {
    images: Vec<MultiPoly>,
    target_nvars: usize,
    source_prefix: String,
}

impl AffineMap {
    pub fn new(images: Vec<MultiPoly>, target_nvars: usize, source_prefix: &str) -> Result<Self> {
        for p in &images {
            if p.nvars() != target_nvars {
                return Err(Error::Dimension { expected: target_nvars, found: p.nvars() });
            }
            if p.total_degree() > 1 {
                return Err(Error::Argument(format!("substitution {p} is not affine")));
            }
        }
        Ok(AffineMap { images, target_nvars, source_prefix: source_prefix.to_string() })
    }

    /// Translation `x_i -> x_i + shift[i]`.
    pub fn translation(shift: &[Rational], prefix: &str) -> Self {
        let n = shift.len();
        let images = shift.iter().enumerate().map(|(i, s)| &MultiPoly::var(n, i) + &MultiPoly::constant(n, s.clone())).collect();
        AffineMap { images, target_nvars: n, source_prefix: prefix.to_string() }
    }

    /// Evaluation at a point.
    pub fn point(values: &[Rational], prefix: &str) -> Self {
        let images = values.iter().map(|v| MultiPoly::constant(0, v.clone())).collect();
        AffineMap { images, target_nvars: 0, source_prefix: prefix.to_string() }
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }

    pub fn source_nvars(&self) -> usize {
        self.images.len()
    }

    pub fn target_nvars(&self) -> usize {
        self.target_nvars
    }
}

impl RatFun {
    pub fn zero(nvars: usize) -> Self {
        RatFun { num: MultiPoly::zero(nvars), lin: Vec::new(), rest: MultiPoly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        RatFun { num: p, lin: Vec::new(), rest: MultiPoly::one(n) }
    }

    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.nvars() != den.nvars() {
            return Err(Error::Dimension { expected: num.nvars(), found: den.nvars() });
        }
        Ok(Self::build(num, Vec::new(), den, true))
    }

    /// `num / prod(factors)` where every factor has degree at most one.
    pub fn with_linear_den(num: MultiPoly, factors: &[MultiPoly]) -> Result<Self> {
        let n = num.nvars();
        let mut c = Rational::one();
        let mut lins = Vec::new();
        for f in factors {
            match f.total_degree() {
                0 => {
                    let v = f.constant_value().unwrap();
                    if v.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    c *= v;
                }
                1 => {
                    c *= f.leading_coeff();
                    lins.push((f.monic(), 1));
                }
                _ => return Err(Error::Argument(format!("factor {f} is not affine"))),
            }
        }
        Ok(Self::build(num.scale(&c.recip()), lins, MultiPoly::one(n), true))
    }

    fn build(num: MultiPoly, lins: Vec<(MultiPoly, u32)>, rest: MultiPoly, cancel_lin: bool) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        let lc = rest.leading_coeff();
        let (mut num, mut rest) = if lc.is_one() { (num, rest) } else { (num.scale(&lc.recip()), rest.scale(&lc.recip())) };
        let mut map: BTreeMap<MultiPoly, u32> = BTreeMap::new();
        for (f, k) in lins {
            *map.entry(f).or_insert(0) += k;
        }
        if rest.total_degree() == 1 {
            *map.entry(std::mem::replace(&mut rest, MultiPoly::one(n))).or_insert(0) += 1;
        }
        if !rest.is_constant() {
            for (f, k) in map.iter_mut() {
                while let Some(q) = rest.div_exact(f) {
                    rest = q;
                    *k += 1;
                }
            }
        }
        let mut lin = Vec::with_capacity(map.len());
        for (f, mut k) in map {
            if cancel_lin {
                while k > 0 {
                    match num.div_exact(&f) {
                        Some(q) => {
                            num = q;
                            k -= 1;
                        }
                        None => break,
                    }
                }
            }
            if k > 0 {
                lin.push((f, k));
            }
        }
        if !rest.is_constant() {
            let g = gcd(&num, &rest);
            if !g.is_constant() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                rest = rest.div_exact(&g).expect("gcd divides denominator");
            }
            if rest.total_degree() == 1 {
                let f = std::mem::replace(&mut rest, MultiPoly::one(n));
                match lin.binary_search_by(|(g, _)| g.cmp(&f)) {
                    Ok(i) => lin[i].1 += 1,
                    Err(i) => lin.insert(i, (f, 1)),
                }
            }
        }
        RatFun { num, lin, rest }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn linear_factors(&self) -> &[(MultiPoly, u32)] {
        &self.lin
    }

    pub fn residual_den(&self) -> &MultiPoly {
        &self.rest
    }

    /// Expanded monic denominator.
    pub fn den(&self) -> MultiPoly {
        let mut d = self.rest.clone();
        for (f, k) in &self.lin {
            d = &d * &f.pow(*k);
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.is_polynomial() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.lin.is_empty() && self.rest.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RatFun { num: self.num.scale(c), lin: self.lin.clone(), rest: self.rest.clone() }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        Self::build(&self.num * p, self.lin.clone(), self.rest.clone(), true)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::build(self.den(), Vec::new(), self.num.clone(), true))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.inv()?)
    }

    fn cancel_against(num: &MultiPoly, lin: &[(MultiPoly, u32)]) -> (MultiPoly, Vec<(MultiPoly, u32)>) {
        let mut num = num.clone();
        let mut left = Vec::with_capacity(lin.len());
        for (f, k) in lin {
            let mut k = *k;
            while k > 0 {
                match num.div_exact(f) {
                    Some(q) => {
                        num = q;
                        k -= 1;
                    }
                    None => break,
                }
            }
            if k > 0 {
                left.push((f.clone(), k));
            }
        }
        (num, left)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars());
        }
        let (na, lb) = Self::cancel_against(&self.num, &other.lin);
        let (nb, la) = Self::cancel_against(&other.num, &self.lin);
        let mut lins = la;
        lins.extend(lb);
        let rest_trivial = self.rest.is_one() && other.rest.is_one();
        let r = Self::build(&na * &nb, lins, &self.rest * &other.rest, !rest_trivial);
        debug_assert!(rest_trivial || !r.is_zero());
        r
    }

    /// Sum with a single common denominator and one cancellation pass.
    pub fn sum<'a, I: IntoIterator<Item = &'a RatFun>>(nvars: usize, items: I) -> Self {
        let items: Vec<&RatFun> = items.into_iter().filter(|r| !r.is_zero()).collect();
        match items.len() {
            0 => return Self::zero(nvars),
            1 => return items[0].clone(),
            _ => {}
        }
        let mut maxk: BTreeMap<&MultiPoly, u32> = BTreeMap::new();
        let mut l = MultiPoly::one(nvars);
        for r in &items {
            for (f, k) in &r.lin {
                let e = maxk.entry(f).or_insert(0);
                *e = (*e).max(*k);
            }
            if !r.rest.is_one() && r.rest != l {
                let g = gcd(&l, &r.rest);
                l = &l * &r.rest.div_exact(&g).expect("gcd divides");
            }
        }
        let mut powers: BTreeMap<(&MultiPoly, u32), MultiPoly> = BTreeMap::new();
        let mut num = MultiPoly::zero(nvars);
        for r in &items {
            let mut term = r.num.clone();
            let mut have: BTreeMap<&MultiPoly, u32> = r.lin.iter().map(|(f, k)| (f, *k)).collect();
            for (f, &k) in &maxk {
                let missing = k - have.remove(f).unwrap_or(0);
                if missing > 0 {
                    let p = powers.entry((f, missing)).or_insert_with(|| f.pow(missing));
                    term = &term * p;
                }
            }
            if !l.is_one() {
                let cof = if r.rest == l { MultiPoly::one(nvars) } else { l.div_exact(&r.rest).expect("lcm divides") };
                term = &term * &cof;
            }
            num = &num + &term;
        }
        let lins = maxk.into_iter().map(|(f, k)| (f.clone(), k)).collect();
        Self::build(num, lins, l, true)
    }

    /// Applies an affine substitution; fails when a denominator factor
    /// vanishes identically.
    pub fn specialize(&self, map: &AffineMap) -> Result<Self> {
        let n = map.target_nvars();
        if self.nvars() != map.source_nvars() {
            return Err(Error::Dimension { expected: map.source_nvars(), found: self.nvars() });
        }
        let mut lins = Vec::with_capacity(self.lin.len());
        let mut c = Rational::one();
        for (f, k) in &self.lin {
            let g = f.compose(map.images());
            if g.is_zero() {
                return Err(Error::IdenticallySingular { factor: f.to_string_with(&map.source_prefix) });
            }
            let lc = g.leading_coeff();
            c *= num_traits::pow(lc.clone(), *k as usize);
            if g.total_degree() == 1 {
                lins.push((g.monic(), *k));
            }
        }
        let rest = if self.rest.is_one() { MultiPoly::one(n) } else { self.rest.compose(map.images()) };
        if rest.is_zero() {
            return Err(Error::IdenticallySingular { factor: self.rest.to_string_with(&map.source_prefix) });
        }
        let num = self.num.compose(map.images()).scale(&c.recip());
        Ok(Self::build(num, lins, rest, true))
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let mut d = self.rest.eval(point);
        for (f, k) in &self.lin {
            d *= num_traits::pow(f.eval(point), *k as usize);
        }
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Numerator and expanded denominator as text.
    pub fn parts_with(&self, prefix: &str) -> (String, String) {
        (self.num.to_string_with(prefix), self.den().to_string_with(prefix))
    }

    /// Denominator as a product of its stored factors.
    pub fn den_factored_with(&self, prefix: &str) -> String {
        let mut parts: Vec<String> = self
            .lin
            .iter()
            .map(|(f, k)| if *k == 1 { format!("({})", f.to_string_with(prefix)) } else { format!("({})^{k}", f.to_string_with(prefix)) })
            .collect();
        if !self.rest.is_one() {
            parts.push(format!("({})", self.rest.to_string_with(prefix)));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn to_string_with(&self, prefix: &str) -> String {
        if self.is_polynomial() {
            return self.num.to_string_with(prefix);
        }
        format!("({})/({})", self.num.to_string_with(prefix), self.den().to_string_with(prefix))
    }

    pub fn parse(num: &str, den: &str, prefix: &str, nvars: usize) -> Result<Self> {
        Self::new(MultiPoly::parse(num, prefix, nvars)?, MultiPoly::parse(den, prefix, nvars)?)
    }
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        if self.num != other.num {
            return false;
        }
        if self.rest.is_one() && other.rest.is_one() {
            return self.lin == other.lin;
        }
        self.den() == other.den()
    }
}

impl Eq for RatFun {}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with("x"))
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        RatFun::sum(self.nvars(), [self, o])
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        let n = -o;
        RatFun::sum(self.nvars(), [self, &n])
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        self.mul_impl(o)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, lin: self.lin.clone(), rest: self.rest.clone() }
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun::zero(0)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, o: RatFun) -> RatFun {
        &self + &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::{int, rat, Exponent};
    use proptest::prelude::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, "l", 2).unwrap()
    }

    fn r(n: &str, d: &str) -> RatFun {
        RatFun::parse(n, d, "l", 2).unwrap()
    }

    #[test]
    fn cancellation_and_canonical_form() {
        let a = r("l1^2 - l2^2", "2*l1 + 2*l2");
        assert!(a.is_polynomial());
        assert_eq!(a.num(), &p("1/2*l1 - 1/2*l2"));
        let b = r("l1", "l1*l2 + l2");
        assert!(b.linear_factors().is_empty());
        assert_eq!(b.residual_den(), &p("l1*l2 + l2"));
        let c = r("l1", "l1 + 1");
        assert_eq!((&c * &r("1", "l2")).linear_factors().len(), 2);
        assert_eq!(b.den(), p("l1*l2 + l2"));
        assert_eq!(r("2*l1", "2*l1*l2 + 2*l2"), b);
        assert!(RatFun::new(p("1"), p("0")).is_err());
    }

    #[test]
    fn field_operations() {
        let a = r("1", "l1");
        let b = r("1", "l2");
        let s = &a + &b;
        assert_eq!(s, r("l1 + l2", "l1*l2"));
        assert!((&s - &s).is_zero());
        assert_eq!(&s * &r("l1*l2", "l1 + l2"), RatFun::one(2));
        assert_eq!(s.div(&s).unwrap(), RatFun::one(2));
        let nonlin = r("1", "l1^2 + l2^2 + 1");
        let t = &nonlin + &a;
        assert_eq!(&t - &a, nonlin);
    }

    #[test]
    fn specialization() {
        let a = r("l1", "l1 + l2 + 1");
        let t = MultiPoly::var(1, 0);
        let map = AffineMap::new(vec![t.clone(), &(-&t) - &MultiPoly::one(1)], 1, "l").unwrap();
        let err = a.specialize(&map).unwrap_err();
        assert_eq!(err, Error::IdenticallySingular { factor: "l1 + l2 + 1".into() });
        let ok = AffineMap::new(vec![t.clone(), t.clone()], 1, "l").unwrap();
        let s = a.specialize(&ok).unwrap();
        assert_eq!(s.eval(&[int(2)]).unwrap(), rat(2, 5));
        let pt = AffineMap::point(&[int(1), int(-2)], "l");
        assert!(a.specialize(&pt).is_err());
        assert!(a.eval(&[int(1), int(-2)]).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u16..2, 2), -3i64..4, 1i64..3), 1..4).prop_map(|ts| {
            MultiPoly::from_terms(2, ts.into_iter().map(|(e, n, d)| (Exponent::from_slice(&e), rat(n, d))))
        })
    }

    fn arb_ratfun() -> impl Strategy<Value = RatFun> {
        (arb_poly(), arb_poly()).prop_filter_map("nonzero den", |(n, d)| RatFun::new(n, d).ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn field_laws(a in arb_ratfun(), b in arb_ratfun(), c in arb_ratfun()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).div(&b).unwrap(), a.clone());
            }
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn eval_commutes(a in arb_ratfun(), b in arb_ratfun(), u in -5i64..6, v in -5i64..6) {
            let pt = [rat(u, 7), rat(v, 3)];
            if let (Ok(x), Ok(y)) = (a.eval(&pt), b.eval(&pt)) {
                if let Ok(s) = (&a + &b).eval(&pt) {
                    prop_assert_eq!(s, &x + &y);
                }
                if let Ok(m) = (&a * &b).eval(&pt) {
                    prop_assert_eq!(m, x * y);
                }
            }
        }
    }
}
