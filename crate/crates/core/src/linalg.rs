//! Exact linear algebra over Q.
//!
//! Small systems use fraction-free integer elimination. Large systems are
//! reduced modulo a 62-bit prime to find rank and pivots, and their kernel
//! vectors are lifted p-adically and reconstructed as rationals. Every
//! reconstructed vector is checked exactly against the input, and the rank
//! modulo p is a lower bound for the rank over Q, so the returned kernel is
//! always certified.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Above this many columns the modular path is used.
pub const EXACT_LIMIT: usize = 48;

/// A vector over Q.
pub type Vector = Vec<Rational>;

fn lcm_of_denominators<'a>(it: impl Iterator<Item = &'a Rational>) -> BigInt {
    it.fold(BigInt::one(), |l, c| l.lcm(c.denom()))
}

/// Incremental independence test: feeds vectors one by one and either
/// records them as new basis vectors or expresses them in the basis.
#[derive(Default)]
pub struct BasisBuilder {
    /// Echelon rows: (pivot column, row, combination over basis vectors).
    rows: Vec<(usize, Vector, Vector)>,
    size: usize,
}

impl BasisBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Returns `Ok(index)` if `v` was added as basis vector `index`, or
    /// `Err(coords)` with its coordinates in the current basis.
    pub fn insert(&mut self, v: &[Rational]) -> std::result::Result<usize, Vector> {
        let mut r: Vector = v.to_vec();
        let mut comb = vec![Rational::zero(); self.size + 1];
        for (p, row, c) in &self.rows {
            if r[*p].is_zero() {
                continue;
            }
            let f = &r[*p] / &row[*p];
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in comb.iter_mut().zip(c) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        match r.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                comb[self.size] = Rational::one();
                for (_, _, c) in self.rows.iter_mut() {
                    c.push(Rational::zero());
                }
                self.rows.push((p, r, comb));
                self.size += 1;
                Ok(self.size - 1)
            }
            None => {
                comb.pop();
                Err(comb.into_iter().map(|x| -x).collect())
            }
        }
    }
}

/// Kernel basis of the matrix with the given rows, normalized so that the
/// free variables form an identity block.
pub fn kernel(rows: &[Vector], ncols: usize) -> Result<Vec<Vector>> {
    for r in rows {
        if r.len() != ncols {
            return Err(Error::Dimension { expected: ncols, found: r.len() });
        }
    }
    if ncols <= EXACT_LIMIT {
        Ok(kernel_fraction_free(rows, ncols))
    } else {
        kernel_modular(&IntMatrix::from_rational_rows(rows, ncols), 0x5eed)
    }
}

/// Fraction-free elimination over Z with content removal, followed by
/// back substitution over Q.
pub fn kernel_fraction_free(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = lcm_of_denominators(r.iter());
            r.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).filter(|&i| !m[i][col].is_zero()).min_by_key(|&i| m[i][col].abs()) else {
            continue;
        };
        m.swap(row, p);
        for i in 0..m.len() {
            if i == row || m[i][col].is_zero() {
                continue;
            }
            let a = m[row][col].clone();
            let b = m[i][col].clone();
            let g = a.gcd(&b);
            let (fa, fb) = (&a / &g, &b / &g);
            let pivot = m[row].clone();
            let target = &mut m[i];
            let mut content = BigInt::zero();
            for (x, y) in target.iter_mut().zip(&pivot) {
                *x = &*x * &fa - y * &fb;
                content = content.gcd(x);
            }
            if !content.is_zero() && !content.is_one() {
                for x in target.iter_mut() {
                    *x /= &content;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); ncols];
            v[fc] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -Rational::new(m[r][fc].clone(), m[r][pc].clone());
            }
            v
        })
        .collect()
}

/// Integer matrix with sparse rows.
#[derive(Clone, Debug)]
pub struct IntMatrix {
    pub ncols: usize,
    pub rows: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    /// Scales every row to integers; the kernel is unchanged.
    pub fn from_rational_rows(rows: &[Vector], ncols: usize) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                let l = Rational::from_integer(lcm_of_denominators(r.iter()));
                r.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (j, (c * &l).to_integer()))
                    .collect()
            })
            .filter(|r: &Vec<(usize, BigInt)>| !r.is_empty())
            .collect();
        IntMatrix { ncols, rows }
    }

    pub fn from_sparse_rational(rows: &[Vec<(usize, Rational)>], ncols: usize) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                let l = Rational::from_integer(lcm_of_denominators(r.iter().map(|(_, c)| c)));
                r.iter().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (*j, (c * &l).to_integer())).collect()
            })
            .filter(|r: &Vec<(usize, BigInt)>| !r.is_empty())
            .collect();
        IntMatrix { ncols, rows }
    }

    fn annihilates(&self, v: &[Rational]) -> bool {
        let l = Rational::from_integer(lcm_of_denominators(v.iter()));
        let iv: Vec<BigInt> = v.iter().map(|c| (c * &l).to_integer()).collect();
        self.rows.iter().all(|r| r.iter().map(|(j, a)| a * &iv[*j]).sum::<BigInt>().is_zero())
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `k`-th prime below `2^62`.
pub fn prime(k: usize) -> u64 {
    let mut n = (1u64 << 62) - 1;
    let mut found = 0;
    loop {
        if is_prime(n) {
            if found == k {
                return n;
            }
            found += 1;
        }
        n -= 2;
    }
}

fn reduce(a: &BigInt, p: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

/// Row echelon form modulo p; returns `(pivot rows, pivot columns)` in the
/// original indexing.
pub fn echelon_mod(dense: &[Vec<u64>], ncols: usize, p: u64) -> (Vec<usize>, Vec<usize>) {
    let mut m: Vec<Vec<u64>> = dense.to_vec();
    let mut order: Vec<usize> = (0..m.len()).collect();
    let mut pc = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(piv) = (row..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(row, piv);
        order.swap(row, piv);
        let inv = invmod(m[row][col], p);
        for x in m[row][col..].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let pivot = m[row].clone();
        for i in row + 1..m.len() {
            let f = m[i][col];
            if f == 0 {
                continue;
            }
            let target = &mut m[i];
            for j in col..ncols {
                if pivot[j] != 0 {
                    let t = mulmod(f, pivot[j], p);
                    target[j] = if target[j] >= t { target[j] - t } else { target[j] + p - t };
                }
            }
        }
        pc.push(col);
        row += 1;
    }
    (order[..row].to_vec(), pc)
}

/// Rank of the matrix modulo the `k`-th prime; a lower bound for the rank
/// over Q.
pub fn rank_mod(m: &IntMatrix, k: usize) -> usize {
    let p = prime(k);
    let dense: Vec<Vec<u64>> = m.rows.iter().map(|r| to_dense_mod(r, m.ncols, p)).collect();
    echelon_mod(&dense, m.ncols, p).1.len()
}

fn to_dense_mod(r: &[(usize, BigInt)], ncols: usize, p: u64) -> Vec<u64> {
    let mut v = vec![0u64; ncols];
    for (j, a) in r {
        v[*j] = reduce(a, p);
    }
    v
}

/// Inverse of a square matrix modulo p, or `None` if singular.
fn inverse_mod(b: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let k = b.len();
    let mut a: Vec<Vec<u64>> = b
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..k).map(|j| (i == j) as u64));
            row
        })
        .collect();
    for c in 0..k {
        let piv = (c..k).find(|&i| a[i][c] != 0)?;
        a.swap(c, piv);
        let inv = invmod(a[c][c], p);
        for x in a[c].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let pivot = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == c || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                if *y != 0 {
                    let t = mulmod(f, *y, p);
                    *x = if *x >= t { *x - t } else { *x + p - t };
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[k..].to_vec()).collect())
}

/// Rational number `n/d` with `n ≡ a d (mod m)` and `|n|, d ≤ sqrt(m/2)`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !(&r1 - a * &t1).mod_floor(m).is_zero() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Solves `B x = b` over Q by p-adic lifting, with `B` square and
/// invertible modulo p.
fn dixon_solve(b_mat: &[Vec<BigInt>], binv: &[Vec<u64>], rhs: &[BigInt], p: u64) -> Option<Vector> {
    let k = rhs.len();
    let pb = BigInt::from(p);
    let mut r: Vec<BigInt> = rhs.to_vec();
    let mut acc = vec![BigInt::zero(); k];
    let mut modulus = BigInt::one();
    let mut last: Option<Vector> = None;
    let max_iter = 4096;
    for it in 0..max_iter {
        let rm: Vec<u64> = r.iter().map(|x| reduce(x, p)).collect();
        let y: Vec<u64> = binv
            .iter()
            .map(|row| {
                let mut s: u128 = 0;
                for (a, b) in row.iter().zip(&rm) {
                    s = (s + (*a as u128) * (*b as u128)) % p as u128;
                }
                s as u64
            })
            .collect();
        for i in 0..k {
            let mut s = std::mem::take(&mut r[i]);
            for (j, yj) in y.iter().enumerate() {
                if *yj != 0 && !b_mat[i][j].is_zero() {
                    s -= &b_mat[i][j] * BigInt::from(*yj);
                }
            }
            debug_assert!((&s % &pb).is_zero());
            r[i] = s / &pb;
        }
        for (a, yj) in acc.iter_mut().zip(&y) {
            *a += &modulus * BigInt::from(*yj);
        }
        modulus *= &pb;
        if r.iter().all(|x| x.is_zero()) {
            // Exact integer solution.
            return Some(acc.into_iter().map(Rational::from_integer).collect());
        }
        if it % 4 == 3 {
            let cand: Option<Vector> = reconstruct_vector(&acc, &modulus);
            if let Some(c) = cand {
                if last.as_ref() == Some(&c) && verify_square(b_mat, &c, rhs) {
                    return Some(c);
                }
                last = Some(c);
            }
        }
    }
    None
}

fn reconstruct_vector(acc: &[BigInt], modulus: &BigInt) -> Option<Vector> {
    let mut den = BigInt::one();
    let mut out = Vec::with_capacity(acc.len());
    for a in acc {
        let scaled = (a * &den).mod_floor(modulus);
        let q = rational_reconstruct(&scaled, modulus)?;
        let val = q / Rational::from_integer(den.clone());
        den = den.lcm(val.denom());
        out.push(val);
    }
    Some(out)
}

fn verify_square(b_mat: &[Vec<BigInt>], x: &[Rational], rhs: &[BigInt]) -> bool {
    let l = lcm_of_denominators(x.iter());
    let lr = Rational::from_integer(l.clone());
    let ix: Vec<BigInt> = x.iter().map(|c| (c * &lr).to_integer()).collect();
    b_mat.iter().zip(rhs).all(|(row, b)| {
        let s: BigInt = row.iter().zip(&ix).filter(|(a, _)| !a.is_zero()).map(|(a, v)| a * v).sum();
        s == b * &l
    })
}

/// Certified kernel via reduction modulo a prime and p-adic lifting.
pub fn kernel_modular(m: &IntMatrix, seed: u64) -> Result<Vec<Vector>> {
    let n = m.ncols;
    if m.rows.is_empty() {
        return Ok((0..n).map(|j| unit(n, j)).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..6 {
        let p = prime(attempt);
        // Compress tall systems by random integer combinations of rows.
        let compressed: Option<Vec<Vec<BigInt>>> = if m.rows.len() > n + 8 {
            let k = n + 8;
            let mut out = vec![vec![BigInt::zero(); n]; k];
            for r in &m.rows {
                for o in out.iter_mut() {
                    let c: i64 = rng.gen_range(-8..=8);
                    if c != 0 {
                        let cb = BigInt::from(c);
                        for (j, a) in r {
                            o[*j] += a * &cb;
                        }
                    }
                }
            }
            Some(out)
        } else {
            None
        };
        let dense_int: Vec<Vec<BigInt>> = match compressed {
            Some(c) => c,
            None => m
                .rows
                .iter()
                .map(|r| {
                    let mut v = vec![BigInt::zero(); n];
                    for (j, a) in r {
                        v[*j] = a.clone();
                    }
                    v
                })
                .collect(),
        };
        let dense_mod: Vec<Vec<u64>> = dense_int.iter().map(|r| r.iter().map(|a| reduce(a, p)).collect()).collect();
        let (prow, pcol) = echelon_mod(&dense_mod, n, p);
        let free: Vec<usize> = (0..n).filter(|c| !pcol.contains(c)).collect();
        if free.is_empty() {
            return Ok(Vec::new());
        }
        let b_mat: Vec<Vec<BigInt>> = prow.iter().map(|&i| pcol.iter().map(|&j| dense_int[i][j].clone()).collect()).collect();
        let b_mod: Vec<Vec<u64>> = prow.iter().map(|&i| pcol.iter().map(|&j| dense_mod[i][j]).collect()).collect();
        let Some(binv) = inverse_mod(&b_mod, p) else { continue };
        let mut basis = Vec::with_capacity(free.len());
        let mut ok = true;
        for &fc in &free {
            let rhs: Vec<BigInt> = prow.iter().map(|&i| -dense_int[i][fc].clone()).collect();
            let Some(x) = dixon_solve(&b_mat, &binv, &rhs, p) else {
                ok = false;
                break;
            };
            let mut v = vec![Rational::zero(); n];
            v[fc] = Rational::one();
            for (val, &pc) in x.into_iter().zip(&pcol) {
                v[pc] = val;
            }
            if !m.annihilates(&v) {
                ok = false;
                break;
            }
            basis.push(v);
        }
        if ok {
            return Ok(basis);
        }
    }
    Err(Error::Verification("modular kernel computation did not certify".into()))
}

fn unit(n: usize, j: usize) -> Vector {
    let mut v = vec![Rational::zero(); n];
    v[j] = Rational::one();
    v
}

/// `M v` for a dense rational matrix.
pub fn mat_vec(m: &[Vector], v: &[Rational]) -> Vector {
    m.iter()
        .map(|row| {
            let mut s = Rational::zero();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    s += a * b;
                }
            }
            s
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vector]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let l: Vec<BigInt> = m.iter().map(|r| lcm_of_denominators(r.iter())).collect();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .zip(&l)
        .map(|(r, l)| r.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let scale: BigInt = l.iter().product();
    Rational::new(sign * &a[n - 1][n - 1], scale)
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}
