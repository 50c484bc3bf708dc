//! Irreducible highest-weight modules, built level by level.
//!
//! A vector of depth `μ` (weight `Λ - μ`) is identified by its raising
//! profile: the coordinates of `E_j v` in the chosen bases of the levels
//! `μ - α_j`. In an irreducible module a nonzero vector below the top has a
//! nonzero profile, so linear algebra on profiles selects bases and expresses
//! every `F_i b` in them.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::exact::{int, Rational};
use crate::linalg::BasisBuilder;
use crate::rootsys::RootSystem;

/// Sparse matrix keyed by `(row, col)`.
pub type SparseMatrix = BTreeMap<(usize, usize), Rational>;

pub fn sparse_mul(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    let mut by_row: HashMap<usize, Vec<(usize, &Rational)>> = HashMap::new();
    for ((k, j), v) in b {
        by_row.entry(*k).or_default().push((*j, v));
    }
    let mut out = SparseMatrix::new();
    for ((i, k), x) in a {
        if let Some(row) = by_row.get(k) {
            for (j, y) in row {
                *out.entry((*i, *j)).or_insert_with(Rational::zero) += x * *y;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn sparse_comm(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    let mut out = sparse_mul(a, b);
    for (k, v) in sparse_mul(b, a) {
        *out.entry(k).or_insert_with(Rational::zero) -= v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn sparse_scale(a: &SparseMatrix, c: &Rational) -> SparseMatrix {
    a.iter().map(|(k, v)| (*k, v * c)).filter(|(_, v)| !v.is_zero()).collect()
}

#[derive(Clone, Debug)]
pub struct HighestWeightModule {
    /// Depth of each basis vector in simple-root coordinates.
    pub depths: Vec<Vec<i32>>,
    pub e: Vec<SparseMatrix>,
    pub f: Vec<SparseMatrix>,
    /// Highest weight in simple-root coordinates.
    pub top: Vec<Rational>,
}

impl HighestWeightModule {
    pub fn dim(&self) -> usize {
        self.depths.len()
    }

    /// `(weight of basis vector k, γ^∨)` for an integral root `γ`.
    pub fn coroot_value(&self, rs: &RootSystem, k: usize, gamma: &[i32]) -> Rational {
        let r = rs.rank();
        let mut s = Rational::zero();
        for i in 0..r {
            let w = &self.top[i] - int(self.depths[k][i] as i64);
            for j in 0..r {
                s += &w * int(gamma[j] as i64) * &rs.gram()[i][j];
            }
        }
        s * int(2) / rs.inner_ints(gamma, gamma)
    }
}

struct Level {
    offset: usize,
    /// Per basis vector, per simple index j: coordinates of `E_j b`.
    profiles: Vec<Vec<Vec<Rational>>>,
}

/// Builds the irreducible module with dominant highest weight given in
/// fundamental coordinates.
pub fn build(rs: &RootSystem, top_fund: &[i32]) -> HighestWeightModule {
    let r = rs.rank();
    // Highest weight in simple-root coordinates.
    let top: Vec<Rational> = (0..r)
        .map(|k| (0..r).map(|i| &rs.fundamental_weights()[i].0[k] * int(top_fund[i] as i64)).sum())
        .collect();
    let pair_simple = |depth: &[i32], i: usize| -> i64 {
        // (Λ - depth, α_i^∨)
        top_fund[i] as i64 - (0..r).map(|j| depth[j] as i64 * rs.cartan()[i][j] as i64).sum::<i64>()
    };
    let mut levels: HashMap<Vec<i32>, Level> = HashMap::new();
    // f_maps[(i, source depth)][k] = coordinates of F_i b_k in level source + α_i.
    let mut f_maps: HashMap<(usize, Vec<i32>), Vec<Vec<Rational>>> = HashMap::new();
    let mut depths: Vec<Vec<i32>> = Vec::new();
    let zero = vec![0i32; r];
    levels.insert(zero.clone(), Level { offset: 0, profiles: vec![vec![Vec::new(); r]] });
    depths.push(zero.clone());
    let mut frontier = vec![zero];
    while !frontier.is_empty() {
        let mut next: Vec<Vec<i32>> = Vec::new();
        for mu in &frontier {
            for i in 0..r {
                let mut up = mu.clone();
                up[i] += 1;
                if !next.contains(&up) {
                    next.push(up);
                }
            }
        }
        next.sort();
        let mut built = Vec::new();
        for mu in next {
            let below = |j: usize| -> Option<Vec<i32>> {
                if mu[j] == 0 {
                    return None;
                }
                let mut d = mu.clone();
                d[j] -= 1;
                Some(d)
            };
            let block_sizes: Vec<usize> = (0..r)
                .map(|j| below(j).and_then(|d| levels.get(&d)).map_or(0, |l| l.profiles.len()))
                .collect();
            let mut builder = BasisBuilder::new();
            let mut basis_profiles: Vec<Vec<Vec<Rational>>> = Vec::new();
            let mut columns: Vec<(usize, Vec<i32>, usize, std::result::Result<usize, Vec<Rational>>)> = Vec::new();
            for i in 0..r {
                let Some(prev) = below(i) else { continue };
                let Some(prev_level) = levels.get(&prev) else { continue };
                for (k, prof) in prev_level.profiles.iter().enumerate() {
                    let mut blocks: Vec<Vec<Rational>> = Vec::with_capacity(r);
                    for j in 0..r {
                        let mut block = vec![Rational::zero(); block_sizes[j]];
                        if block_sizes[j] == 0 {
                            blocks.push(block);
                            continue;
                        }
                        // F_i (E_j b): E_j b lives at prev - α_j.
                        if prev[j] > 0 && !prof[j].is_empty() {
                            let mut src = prev.clone();
                            src[j] -= 1;
                            if let Some(map) = f_maps.get(&(i, src)) {
                                for (c, col) in prof[j].iter().zip(map) {
                                    if c.is_zero() {
                                        continue;
                                    }
                                    for (t, x) in block.iter_mut().zip(col) {
                                        *t += c * x;
                                    }
                                }
                            }
                        }
                        if i == j {
                            block[k] += int(pair_simple(&prev, i));
                        }
                        blocks.push(block);
                    }
                    let flat: Vec<Rational> = blocks.iter().flatten().cloned().collect();
                    let res = builder.insert(&flat);
                    if res.is_ok() {
                        basis_profiles.push(blocks);
                    }
                    columns.push((i, prev.clone(), k, res));
                }
            }
            let size = builder.len();
            if size == 0 {
                continue;
            }
            for (i, prev, k, res) in columns {
                let col = match res {
                    Ok(idx) => {
                        let mut v = vec![Rational::zero(); size];
                        v[idx] = int(1);
                        v
                    }
                    Err(mut coords) => {
                        coords.resize(size, Rational::zero());
                        coords
                    }
                };
                let entry = f_maps.entry((i, prev.clone())).or_insert_with(|| {
                    vec![Vec::new(); levels.get(&prev).map_or(0, |l| l.profiles.len())]
                });
                entry[k] = col;
            }
            let offset = depths.len();
            depths.extend(std::iter::repeat(mu.clone()).take(size));
            levels.insert(mu.clone(), Level { offset, profiles: basis_profiles });
            built.push(mu);
        }
        frontier = built;
    }
    let mut e = vec![SparseMatrix::new(); r];
    let mut f = vec![SparseMatrix::new(); r];
    for (mu, level) in &levels {
        for (k, prof) in level.profiles.iter().enumerate() {
            for j in 0..r {
                if prof[j].is_empty() {
                    continue;
                }
                let mut d = mu.clone();
                d[j] -= 1;
                let target = &levels[&d];
                for (t, c) in prof[j].iter().enumerate() {
                    if !c.is_zero() {
                        e[j].insert((target.offset + t, level.offset + k), c.clone());
                    }
                }
            }
        }
    }
    for ((i, src), cols) in &f_maps {
        let Some(sl) = levels.get(src) else { continue };
        let mut d = src.clone();
        d[*i] += 1;
        let Some(tl) = levels.get(&d) else { continue };
        for (k, col) in cols.iter().enumerate() {
            for (t, c) in col.iter().enumerate() {
                if !c.is_zero() {
                    f[*i].insert((tl.offset + t, sl.offset + k), c.clone());
                }
            }
        }
    }
    HighestWeightModule { depths, e, f, top }
}
