//! Root systems of the simple Lie algebras of types A, B, C, D and G2.
//!
//! Roots are stored by their integer coordinates in the simple-root basis.
//! Positive roots are indexed by height, ties broken by decreasing
//! coordinates, so the simple root `α_i` always has index `i - 1`.
//! The invariant form is normalized so that long roots have squared length 2.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AlgebraType {
    pub family: Family,
    pub rank: usize,
}

impl AlgebraType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::G => rank == 2,
        };
        if !ok {
            let need = match family {
                Family::A => "rank >= 1",
                Family::B | Family::C => "rank >= 2",
                Family::D => "rank >= 4",
                Family::G => "rank = 2",
            };
            return Err(Error::UnknownAlgebra(format!("{family:?}{rank}: family {family:?} requires {need}")));
        }
        Ok(AlgebraType { family, rank })
    }
}

impl FromStr for AlgebraType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('G') => Family::G,
            _ => return Err(Error::UnknownAlgebra(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::UnknownAlgebra(s.to_string()))?;
        AlgebraType::new(family, rank)
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// Element of h* in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Rational>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Rational::zero(); rank])
    }

    pub fn from_ints(c: &[i32]) -> Self {
        Weight(c.iter().map(|&x| int(x as i64)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    /// Integer coordinates, if all coordinates are integers.
    pub fn to_ints(&self) -> Option<Vec<i32>> {
        self.0.iter().map(|c| if c.is_integer() { i32::try_from(c.to_integer()).ok() } else { None }).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Comma-separated integer coordinates, e.g. `2,3`.
pub fn format_root(c: &[i32]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_root(s: &str) -> Result<Vec<i32>> {
    s.split(',')
        .map(|t| t.trim().parse::<i32>().map_err(|_| Error::Argument(format!("bad root coordinates {s:?}"))))
        .collect()
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    algebra: AlgebraType,
    gram: Vec<Vec<Rational>>,
    cartan: Vec<Vec<i32>>,
    roots: Vec<Vec<i32>>,
    index: HashMap<Vec<i32>, usize>,
    half_norm: Vec<Rational>,
    rho: Weight,
    fundamental: Vec<Weight>,
}

/// Covering-relation picture of an interval `[α, β]` of the root poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub nodes: Vec<usize>,
    /// `(upper, lower, simple index)` with `upper - lower = α_{simple}`.
    pub edges: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HasseNode {
    Cartan(usize),
    Root(usize),
}

/// Diagram of the negative Borel subalgebra: Cartan nodes `h_i` and root
/// nodes `f_γ`, with an edge labelled `α_i` for each action of `e_{α_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseDiagram {
    pub nodes: Vec<HasseNode>,
    /// `(source, target, simple index)`.
    pub edges: Vec<(HasseNode, HasseNode, usize)>,
}

fn gram_for(t: AlgebraType) -> Vec<Vec<Rational>> {
    let n = t.rank;
    let mut g = vec![vec![Rational::zero(); n]; n];
    let chain = |g: &mut Vec<Vec<Rational>>, len: &[Rational]| {
        for i in 0..n {
            g[i][i] = len[i].clone();
        }
    };
    match t.family {
        Family::A => {
            chain(&mut g, &vec![int(2); n]);
            for i in 0..n - 1 {
                g[i][i + 1] = int(-1);
                g[i + 1][i] = int(-1);
            }
        }
        Family::B => {
            let mut len = vec![int(2); n];
            len[n - 1] = int(1);
            chain(&mut g, &len);
            for i in 0..n - 1 {
                g[i][i + 1] = int(-1);
                g[i + 1][i] = int(-1);
            }
        }
        Family::C => {
            let mut len = vec![int(1); n];
            len[n - 1] = int(2);
            chain(&mut g, &len);
            for i in 0..n - 2 {
                g[i][i + 1] = rat(-1, 2);
                g[i + 1][i] = rat(-1, 2);
            }
            g[n - 2][n - 1] = int(-1);
            g[n - 1][n - 2] = int(-1);
        }
        Family::D => {
            chain(&mut g, &vec![int(2); n]);
            for i in 0..n - 2 {
                g[i][i + 1] = int(-1);
                g[i + 1][i] = int(-1);
            }
            g[n - 3][n - 1] = int(-1);
            g[n - 1][n - 3] = int(-1);
        }
        Family::G => {
            g[0][0] = int(2);
            g[1][1] = rat(2, 3);
            g[0][1] = int(-1);
            g[1][0] = int(-1);
        }
    }
    g
}

fn invert(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("matrix is invertible");
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

impl RootSystem {
    pub fn new(algebra: AlgebraType) -> Self {
        let n = algebra.rank;
        let gram = gram_for(algebra);
        let cartan: Vec<Vec<i32>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = int(2) * &gram[i][j] / &gram[i][i];
                        assert!(c.is_integer());
                        i32::try_from(c.to_integer()).unwrap()
                    })
                    .collect()
            })
            .collect();

        // Closure: grow root strings through the simple roots layer by layer.
        let simple: Vec<Vec<i32>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i32).collect()).collect();
        let mut found: HashMap<Vec<i32>, ()> = simple.iter().map(|r| (r.clone(), ())).collect();
        let mut all = simple.clone();
        let mut layer = simple;
        while !layer.is_empty() {
            let mut next = Vec::new();
            for r in &layer {
                for i in 0..n {
                    let mut p = 0;
                    let mut down = r.clone();
                    loop {
                        down[i] -= 1;
                        if found.contains_key(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i32 = (0..n).map(|j| r[j] * cartan[i][j]).sum();
                    if p - pairing > 0 {
                        let mut up = r.clone();
                        up[i] += 1;
                        if !found.contains_key(&up) {
                            found.insert(up.clone(), ());
                            next.push(up.clone());
                            all.push(up);
                        }
                    }
                }
            }
            layer = next;
        }
        all.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let index = all.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let inner_int = |a: &[i32], b: &[i32]| -> Rational {
            let mut s = Rational::zero();
            for i in 0..n {
                for j in 0..n {
                    if a[i] != 0 && b[j] != 0 {
                        s += &gram[i][j] * int((a[i] * b[j]) as i64);
                    }
                }
            }
            s
        };
        let half_norm = all.iter().map(|r| inner_int(r, r) / int(2)).collect();
        let mut rho = Weight::zero(n);
        for r in &all {
            rho = rho.add(&Weight::from_ints(r));
        }
        rho = rho.scale(&rat(1, 2));
        // M[k][j] = (α_k, α_j^∨) = cartan[j][k]; rows of M^{-1} are the ω_i.
        let m: Vec<Vec<Rational>> = (0..n).map(|k| (0..n).map(|j| int(cartan[j][k] as i64)).collect()).collect();
        let minv = invert(&m);
        let fundamental = minv.into_iter().map(Weight).collect();
        RootSystem { algebra, gram, cartan, roots: all, index, half_norm, rho, fundamental }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::new(s.parse()?))
    }

    pub fn algebra(&self) -> AlgebraType {
        self.algebra
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    /// `cartan[i][j] = (α_j, α_i^∨)`.
    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i32>] {
        &self.roots
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, idx: usize) -> &[i32] {
        &self.roots[idx]
    }

    pub fn root_weight(&self, idx: usize) -> Weight {
        Weight::from_ints(&self.roots[idx])
    }

    pub fn index_of(&self, coords: &[i32]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Index of `coords`, or an error naming them.
    pub fn require_root(&self, coords: &[i32]) -> Result<usize> {
        if coords.len() != self.rank() {
            return Err(Error::Dimension { expected: self.rank(), found: coords.len() });
        }
        self.index_of(coords).ok_or_else(|| Error::NotARoot(format_root(coords)))
    }

    pub fn simple_index(&self, i: usize) -> usize {
        i
    }

    pub fn is_simple(&self, idx: usize) -> bool {
        idx < self.rank()
    }

    pub fn height(&self, idx: usize) -> i32 {
        self.roots[idx].iter().sum()
    }

    pub fn highest_root(&self) -> usize {
        self.roots.len() - 1
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental
    }

    /// `(γ, γ)/2` for the positive root with index `idx`.
    pub fn half_norm(&self, idx: usize) -> &Rational {
        &self.half_norm[idx]
    }

    /// `(α_i, α_i)/2`.
    pub fn simple_half_norm(&self, i: usize) -> &Rational {
        &self.half_norm[i]
    }

    pub fn inner(&self, a: &Weight, b: &Weight) -> Result<Rational> {
        let n = self.rank();
        for w in [a, b] {
            if w.len() != n {
                return Err(Error::Dimension { expected: n, found: w.len() });
            }
        }
        let mut s = Rational::zero();
        for i in 0..n {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b.0[j].is_zero() && !self.gram[i][j].is_zero() {
                    s += &a.0[i] * &b.0[j] * &self.gram[i][j];
                }
            }
        }
        Ok(s)
    }

    pub fn inner_ints(&self, a: &[i32], b: &[i32]) -> Rational {
        let mut s = Rational::zero();
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                if x != 0 && y != 0 {
                    s += &self.gram[i][j] * int((x * y) as i64);
                }
            }
        }
        s
    }

    /// `(w, γ^∨) = 2 (w, γ) / (γ, γ)` for the root `γ` given by coordinates.
    pub fn coroot_pairing(&self, w: &Weight, gamma: &[i32]) -> Result<Rational> {
        let g = Weight::from_ints(gamma);
        Ok(self.inner(w, &g)? * int(2) / self.inner(&g, &g)?)
    }

    /// Fundamental coordinates `(w, α_i^∨)` of an integral weight.
    pub fn to_fundamental(&self, c: &[i32]) -> Vec<i32> {
        (0..self.rank()).map(|i| (0..self.rank()).map(|j| c[j] * self.cartan[i][j]).sum()).collect()
    }

    /// `ℓ_{α_i, β}`: the coefficient of `α_i` in the positive root `β`.
    pub fn multiplicity(&self, i: usize, beta: &[i32]) -> Result<u32> {
        self.require_root(beta)?;
        if i >= self.rank() {
            return Err(Error::Argument(format!("simple root index {} out of range", i + 1)));
        }
        Ok(beta[i] as u32)
    }

    /// Whether `±coords` is a root.
    pub fn is_root(&self, coords: &[i32]) -> bool {
        if coords.iter().all(|&c| c >= 0) {
            self.index.contains_key(coords)
        } else if coords.iter().all(|&c| c <= 0) {
            let neg: Vec<i32> = coords.iter().map(|c| -c).collect();
            self.index.contains_key(&neg)
        } else {
            false
        }
    }

    /// `α ⪯ γ ⪯ β` in the root poset, read off coordinates.
    pub fn in_interval(&self, alpha: usize, gamma: usize, beta: usize) -> bool {
        let (a, g, b) = (&self.roots[alpha], &self.roots[gamma], &self.roots[beta]);
        (0..self.rank()).all(|i| a[i] <= g[i] && g[i] <= b[i])
    }

    /// Roots covering `γ`: pairs `(γ + α_i, i)`.
    pub fn covers_of(&self, gamma: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rank() {
            let mut up = self.roots[gamma].clone();
            up[i] += 1;
            if let Some(j) = self.index_of(&up) {
                out.push((j, i));
            }
        }
        out
    }

    /// Nodes and covering edges of the interval `[α_i, β]`, found by a
    /// breadth-first search upward from `α_i` pruned by `β`.
    pub fn root_poset_interval(&self, alpha: usize, beta: &[i32]) -> Result<Interval> {
        let b = self.require_root(beta)?;
        if alpha >= self.rank() {
            return Err(Error::Argument(format!("simple root index {} out of range", alpha + 1)));
        }
        if beta[alpha] == 0 {
            return Err(Error::Argument(format!("α{} not in support of β = {}", alpha + 1, format_root(beta))));
        }
        let below = |g: usize| (0..self.rank()).all(|i| self.roots[g][i] <= self.roots[b][i]);
        let mut seen = vec![false; self.num_positive()];
        let mut queue = VecDeque::from([alpha]);
        seen[alpha] = true;
        let mut edges = Vec::new();
        while let Some(g) = queue.pop_front() {
            for (up, i) in self.covers_of(g) {
                if below(up) {
                    edges.push((up, g, i));
                    if !seen[up] {
                        seen[up] = true;
                        queue.push_back(up);
                    }
                }
            }
        }
        let nodes: Vec<usize> = (0..self.num_positive()).filter(|&g| seen[g]).collect();
        edges.sort();
        Ok(Interval { nodes, edges })
    }

    pub fn hasse_b_minus(&self) -> HasseDiagram {
        let n = self.rank();
        let mut nodes: Vec<HasseNode> = (0..n).map(HasseNode::Cartan).collect();
        nodes.extend((0..self.num_positive()).map(HasseNode::Root));
        let mut edges = Vec::new();
        for i in 0..n {
            edges.push((HasseNode::Root(i), HasseNode::Cartan(i), i));
        }
        for g in 0..self.num_positive() {
            for i in 0..n {
                let mut down = self.roots[g].clone();
                down[i] -= 1;
                if let Some(d) = self.index_of(&down) {
                    edges.push((HasseNode::Root(g), HasseNode::Root(d), i));
                }
            }
        }
        HasseDiagram { nodes, edges }
    }

    /// The diagram restricted to `{f_γ : α ⪯ γ ⪯ β}`.
    pub fn hasse_interval(&self, alpha: usize, beta: &[i32]) -> Result<HasseDiagram> {
        let iv = self.root_poset_interval(alpha, beta)?;
        let nodes = iv.nodes.iter().map(|&g| HasseNode::Root(g)).collect();
        let edges = iv.edges.iter().map(|&(u, l, i)| (HasseNode::Root(u), HasseNode::Root(l), i)).collect();
        Ok(HasseDiagram { nodes, edges })
    }

    /// Number of ways to write `w` as a sum of positive roots.
    pub fn kostant_partition(&self, w: &[i32]) -> u64 {
        let mut memo = HashMap::new();
        self.kostant_rec(w, self.num_positive(), &mut memo)
    }

    fn kostant_rec(&self, w: &[i32], upto: usize, memo: &mut HashMap<(Vec<i32>, usize), u64>) -> u64 {
        if w.iter().all(|&c| c == 0) {
            return 1;
        }
        if upto == 0 || w.iter().any(|&c| c < 0) {
            return 0;
        }
        if let Some(&v) = memo.get(&(w.to_vec(), upto)) {
            return v;
        }
        let r = &self.roots[upto - 1];
        let mut total = 0;
        let mut rest = w.to_vec();
        loop {
            total += self.kostant_rec(&rest, upto - 1, memo);
            for (x, y) in rest.iter_mut().zip(r) {
                *x -= y;
            }
            if rest.iter().any(|&c| c < 0) {
                break;
            }
        }
        memo.insert((w.to_vec(), upto), total);
        total
    }
}

impl HasseDiagram {
    pub fn node_label(&self, rs: &RootSystem, n: HasseNode) -> String {
        match n {
            HasseNode::Cartan(i) => format!("h{}", i + 1),
            HasseNode::Root(g) => format!("f[{}]", format_root(rs.root(g))),
        }
    }

    pub fn render_text(&self, rs: &RootSystem) -> String {
        let mut s = format!("nodes {}\n", self.nodes.len());
        for n in &self.nodes {
            s.push_str(&format!("  {}\n", self.node_label(rs, *n)));
        }
        s.push_str(&format!("edges {}\n", self.edges.len()));
        for (a, b, i) in &self.edges {
            s.push_str(&format!("  {} -> {} [e{}]\n", self.node_label(rs, *a), self.node_label(rs, *b), i + 1));
        }
        s
    }

    pub fn render_dot(&self, rs: &RootSystem) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=RL;\n");
        for n in &self.nodes {
            s.push_str(&format!("  \"{}\";\n", self.node_label(rs, *n)));
        }
        for (a, b, i) in &self.edges {
            s.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                self.node_label(rs, *a),
                self.node_label(rs, *b),
                i + 1
            ));
        }
        s.push_str("}\n");
        s
    }
}

pub fn is_negative_weight(w: &Weight) -> bool {
    w.0.iter().all(|c| !c.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    const ALL: [&str; 9] = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"];

    #[test]
    fn algebra_type_validation() {
        assert!("A0".parse::<AlgebraType>().is_err());
        assert!("B1".parse::<AlgebraType>().is_err());
        assert!("D3".parse::<AlgebraType>().is_err());
        assert!("G3".parse::<AlgebraType>().is_err());
        assert!("E6".parse::<AlgebraType>().is_err());
        assert_eq!("C3".parse::<AlgebraType>().unwrap().to_string(), "C3");
    }

    #[test]
    fn root_counts() {
        for (s, n) in [("A1", 1), ("A2", 3), ("A3", 6), ("B2", 4), ("B3", 9), ("C3", 9), ("D4", 12), ("G2", 6)] {
            assert_eq!(RootSystem::parse(s).unwrap().num_positive(), n, "{s}");
        }
    }

    #[test]
    fn g2_roots_and_lengths() {
        let rs = RootSystem::parse("G2").unwrap();
        let want = [[1, 0], [0, 1], [1, 1], [1, 2], [1, 3], [2, 3]];
        let got: HashSet<Vec<i32>> = rs.positive_roots().iter().cloned().collect();
        assert_eq!(got, want.iter().map(|r| r.to_vec()).collect());
        assert_eq!(rs.root(rs.highest_root()), &[2, 3]);
        assert_eq!(rs.inner_ints(&[0, 1], &[0, 1]), rat(2, 3));
        assert_eq!(rs.inner_ints(&[2, 3], &[2, 3]), int(2));
        assert_eq!(rs.multiplicity(1, &[2, 3]).unwrap(), 3);
        assert!(rs.multiplicity(0, &[2, 2]).is_err());
    }

    #[test]
    fn a2_basics() {
        let rs = RootSystem::parse("A2").unwrap();
        assert_eq!(rs.positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(rs.inner_ints(&[1, 0], &[0, 1]), int(-1));
        assert!(rs.inner(&Weight::from_ints(&[1]), &Weight::from_ints(&[1, 0])).is_err());
    }

    #[test]
    fn simple_roots_first_and_long_roots_normalized() {
        for s in ALL {
            let rs = RootSystem::parse(s).unwrap();
            for i in 0..rs.rank() {
                let mut e = vec![0; rs.rank()];
                e[i] = 1;
                assert_eq!(rs.root(i), e.as_slice());
            }
            let maxlen = (0..rs.num_positive()).map(|g| rs.half_norm(g).clone()).max().unwrap();
            assert_eq!(maxlen, int(1), "{s}");
        }
    }

    #[test]
    fn rho_and_fundamental_weights() {
        for s in ALL {
            let rs = RootSystem::parse(s).unwrap();
            for i in 0..rs.rank() {
                let mut a = vec![0; rs.rank()];
                a[i] = 1;
                assert_eq!(rs.coroot_pairing(rs.rho(), &a).unwrap(), int(1));
                for (j, w) in rs.fundamental_weights().iter().enumerate() {
                    let want = if i == j { int(1) } else { int(0) };
                    assert_eq!(rs.coroot_pairing(w, &a).unwrap(), want);
                }
            }
        }
    }

    #[test]
    fn closure_and_descent() {
        for s in ALL {
            let rs = RootSystem::parse(s).unwrap();
            for g in 0..rs.num_positive() {
                for h in 0..rs.num_positive() {
                    let sum: Vec<i32> = rs.root(g).iter().zip(rs.root(h)).map(|(a, b)| a + b).collect();
                    if rs.is_root(&sum) {
                        assert!(rs.index_of(&sum).is_some());
                    }
                }
                if rs.height(g) > 1 {
                    assert!((0..rs.rank()).any(|i| {
                        let mut d = rs.root(g).to_vec();
                        d[i] -= 1;
                        rs.index_of(&d).is_some()
                    }));
                }
            }
        }
    }

    #[test]
    fn root_string_property() {
        for s in ALL {
            let rs = RootSystem::parse(s).unwrap();
            let mut all: Vec<Vec<i32>> = rs.positive_roots().to_vec();
            all.extend(rs.positive_roots().iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
            for mu in &all {
                for nu in &all {
                    let neg: Vec<i32> = mu.iter().map(|c| -c).collect();
                    if nu == mu || *nu == neg {
                        continue;
                    }
                    let step = |k: i32| -> Vec<i32> { nu.iter().zip(mu).map(|(a, b)| a + k * b).collect() };
                    let p = (1..).take_while(|&k| rs.is_root(&step(-k))).count() as i64;
                    let q = (1..).take_while(|&k| rs.is_root(&step(k))).count() as i64;
                    let pairing = int(2) * rs.inner_ints(nu, mu) / rs.inner_ints(mu, mu);
                    assert_eq!(int(p - q), pairing, "{s} {mu:?} {nu:?}");
                }
            }
        }
    }

    #[test]
    fn intervals_match_coordinate_definition() {
        for s in ALL {
            let rs = RootSystem::parse(s).unwrap();
            for b in 0..rs.num_positive() {
                for a in 0..rs.rank() {
                    let beta = rs.root(b).to_vec();
                    if beta[a] == 0 {
                        assert!(rs.root_poset_interval(a, &beta).is_err());
                        continue;
                    }
                    let iv = rs.root_poset_interval(a, &beta).unwrap();
                    let want: Vec<usize> = (0..rs.num_positive()).filter(|&g| rs.in_interval(a, g, b)).collect();
                    assert_eq!(iv.nodes, want, "{s} α{} β={beta:?}", a + 1);
                    for &(u, l, i) in &iv.edges {
                        let mut d = rs.root(u).to_vec();
                        d[i] -= 1;
                        assert_eq!(d, rs.root(l));
                    }
                }
            }
        }
    }

    #[test]
    fn interval_examples() {
        let a2 = RootSystem::parse("A2").unwrap();
        let iv = a2.root_poset_interval(0, &[1, 1]).unwrap();
        assert_eq!(iv.nodes, vec![0, 2]);
        assert_eq!(iv.edges, vec![(2, 0, 1)]);
        let single = a2.root_poset_interval(1, &[0, 1]).unwrap();
        assert_eq!(single.nodes, vec![1]);
        assert!(single.edges.is_empty());
        let g2 = RootSystem::parse("G2").unwrap();
        let iv = g2.root_poset_interval(0, &[2, 3]).unwrap();
        let coords: Vec<&[i32]> = iv.nodes.iter().map(|&g| g2.root(g)).collect();
        assert_eq!(coords, vec![&[1, 0][..], &[1, 1], &[1, 2], &[1, 3], &[2, 3]]);
    }

    #[test]
    fn hasse_diagrams() {
        let a1 = RootSystem::parse("A1").unwrap().hasse_b_minus();
        assert_eq!((a1.nodes.len(), a1.edges.len()), (2, 1));
        let a2 = RootSystem::parse("A2").unwrap().hasse_b_minus();
        assert_eq!((a2.nodes.len(), a2.edges.len()), (5, 4));
        let rs = RootSystem::parse("G2").unwrap();
        let g2 = rs.hasse_b_minus();
        assert_eq!((g2.nodes.len(), g2.edges.len()), (8, 7));
        let text = g2.render_text(&rs);
        for line in [
            "f[1,0] -> h1 [e1]",
            "f[0,1] -> h2 [e2]",
            "f[1,1] -> f[1,0] [e2]",
            "f[1,1] -> f[0,1] [e1]",
            "f[1,2] -> f[1,1] [e2]",
            "f[1,3] -> f[1,2] [e2]",
            "f[2,3] -> f[1,3] [e1]",
        ] {
            assert!(text.contains(line), "missing {line}");
        }
    }

    #[test]
    fn restricted_hasse_matches_interval() {
        for s in ALL {
            let rs = RootSystem::parse(s).unwrap();
            let full = rs.hasse_b_minus();
            for b in 0..rs.num_positive() {
                for a in 0..rs.rank() {
                    let beta = rs.root(b).to_vec();
                    let Ok(sub) = rs.hasse_interval(a, &beta) else { continue };
                    let keep: HashSet<HasseNode> = sub.nodes.iter().copied().collect();
                    let mut restricted: Vec<_> =
                        full.edges.iter().filter(|(x, y, _)| keep.contains(x) && keep.contains(y)).cloned().collect();
                    let mut got = sub.edges.clone();
                    restricted.sort();
                    got.sort();
                    assert_eq!(restricted, got);
                }
            }
        }
    }

    #[test]
    fn kostant_partitions() {
        let a2 = RootSystem::parse("A2").unwrap();
        assert_eq!(a2.kostant_partition(&[1, 1]), 2);
        assert_eq!(a2.kostant_partition(&[2, 2]), 3);
        let d4 = RootSystem::parse("D4").unwrap();
        assert_eq!(d4.kostant_partition(&[1, 2, 1, 1]), 15);
        let g2 = RootSystem::parse("G2").unwrap();
        assert_eq!(g2.kostant_partition(&[2, 3]), 7);
    }
}
