//! Degree-`m` elements for choices whose auxiliary module is infinite
//! dimensional: the singular vector at weight `λ - mβ` is solved for exactly
//! on `H_{β,m}` and extended to all of `h*` independently of `l_α`.

use std::collections::BTreeMap;
use std::sync::Arc;


use super::{hyperplane_solving, AdmissibleChoice};
use crate::error::{Error, Result};
use crate::exact::{AffineMap, MultiPoly, RatFun};
use crate::verma::{Context, Monomial, Pbw, UEAElement};

fn cost(x: &RatFun) -> (u32, usize) {
    let deg = x.num().total_degree() + x.den().total_degree();
    (deg, x.num().len())
}

/// Reduced row echelon form in place; returns the pivot column of each
/// pivot row.
fn rref(rows: &mut Vec<Vec<RatFun>>, ncols: usize) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let best = (top..rows.len()).filter(|&i| !rows[i][col].is_zero()).min_by_key(|&i| cost(&rows[i][col]));
        let Some(p) = best else { continue };
        rows.swap(top, p);
        let inv = rows[top][col].inv()?;
        rows[top] = rows[top].iter().map(|x| x * &inv).collect();
        let pivot_row = rows[top].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == top || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(col);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    Ok(pivots)
}

/// The unique extremal vector of weight `λ - mβ` on `H_{β,m}`, monic in
/// `f_β^m`, as an element of the `λ`-context.
pub fn kernel_on_hyperplane(pbw: &Arc<Pbw>, choice: &AdmissibleChoice, m: u32) -> Result<UEAElement> {
    let rs = pbw.root_system();
    let r = rs.rank();
    let beta = choice.beta;
    let ctx = hyperplane_solving(rs, beta, m, choice.alpha)?;
    let nv = ctx.nvars();
    let mu: Vec<i32> = rs.root(beta).iter().map(|c| c * m as i32).collect();
    let basis = pbw.weight_space_basis(&mu);
    let lead = Monomial::power(rs, beta, m as u8);
    let mut row_of: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, RatFun)> = Vec::new();
    for (j, y) in basis.iter().enumerate() {
        let v = UEAElement::monomial(pbw.clone(), ctx.clone(), y.clone());
        for a in 0..r {
            for (z, c) in v.act_e(a).terms() {
                let next = row_of.len();
                let i = *row_of.entry((a, z.clone())).or_insert(next);
                entries.push((i, j, c.clone()));
            }
        }
    }
    let n = basis.len();
    let mut rows = vec![vec![RatFun::zero(nv); n]; row_of.len()];
    for (i, j, c) in entries {
        rows[i][j] = &rows[i][j] + &c;
    }
    let pivots = rref(&mut rows, n)?;
    if n - pivots.len() != 1 {
        return Err(Error::Verification(format!("singular space at λ - {m}β has dimension {}", n - pivots.len())));
    }
    let free = (0..n).find(|c| !pivots.contains(c)).expect("one free column");
    let mut sol = vec![RatFun::zero(nv); n];
    sol[free] = RatFun::one(nv);
    for (row, &pc) in pivots.iter().enumerate() {
        sol[pc] = -&rows[row][free];
    }
    let k = basis.iter().position(|y| *y == lead).expect("f_β^m spans part of the weight space");
    if sol[k].is_zero() {
        return Err(Error::Verification(format!("coefficient of f_β^{m} vanishes on the hyperplane")));
    }
    let inv = sol[k].inv()?;
    let solved = choice.alpha;
    let images: Vec<MultiPoly> = (0..nv).map(|j| MultiPoly::var(r, if j < solved { j } else { j + 1 })).collect();
    let lift = AffineMap::new(images, r, ctx.prefix())?;
    let terms = basis
        .iter()
        .zip(&sol)
        .filter(|(_, c)| !c.is_zero())
        .map(|(y, c)| Ok((y.clone(), (c * &inv).specialize(&lift)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(UEAElement::from_terms(pbw.clone(), Context::lambda(r), terms))
}
