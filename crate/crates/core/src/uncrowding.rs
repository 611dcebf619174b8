//! Uncrowding of set-valued skew tableaux and the modified ⋆-insertion.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::DecreasingFactorization;
use crate::hecke::Letter;
use crate::insertion::star_insert;
use crate::partition::{Partition, SkewShape};
use crate::residue::res_inv;
use crate::tableau::{SetValuedTableau, Tableau};

/// `(P̃, Q̃)`: a semistandard tableau of shape ν/μ and a flagged increasing tableau of shape ν/λ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Uncrowding {
    pub p: Tableau,
    pub q: Tableau,
}

/// One uncrowding step. Returns the new tableau, the row the letter left and
/// the added cell, or `None` when there is no multicell.
pub fn uncrowd_step(t: &SetValuedTableau) -> Option<(SetValuedTableau, usize, (usize, usize))> {
    let shape = t.shape();
    let mut rows = t.rows().to_vec();
    let r = (0..rows.len()).rev().find(|&r| rows[r].iter().any(|c| c.len() > 1))?;
    let (at, x) = rows[r]
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .map(|(k, c)| (k, *c.last().expect("nonempty")))
        .max_by_key(|&(k, x)| (x, k))?;
    rows[r][at].pop();
    let mut inner: Vec<usize> = (1..=rows.len()).map(|i| shape.inner().part(i)).collect();
    let mut x = x;
    let mut row = r + 1;
    loop {
        if row == rows.len() {
            rows.push(Vec::new());
            inner.push(0);
        }
        let cur = &mut rows[row];
        match cur.iter().position(|c| c[0] > x) {
            Some(k) => {
                x = std::mem::replace(&mut cur[k][0], x);
                row += 1;
            }
            None => {
                cur.push(vec![x]);
                let col = inner[row] + cur.len();
                let outer = (0..rows.len()).map(|i| inner[i] + rows[i].len()).collect();
                let shape = SkewShape::new(Partition::new(outer).expect("bumping adds a corner"), shape.inner().clone())
                    .expect("inner shape unchanged");
                let t = SetValuedTableau::new(shape, rows).expect("bumping keeps the tableau semistandard");
                return Some((t, r + 1, (row + 1, col)));
            }
        }
    }
}

/// Uncrowds every multicell of `t`, which must be semistandard.
pub fn uncrowd(t: &SetValuedTableau) -> Result<Uncrowding> {
    if let Err(v) = t.validate() {
        return Err(Error::Validation(format!("not a semistandard set-valued tableau: {v}")));
    }
    let lambda = t.shape().outer().clone();
    let mut cur = t.clone();
    let mut added = Vec::new();
    while let Some((next, from, (row, col))) = uncrowd_step(&cur) {
        added.push((row, col, (row - from) as Letter));
        cur = next;
    }
    let p = cur.to_tableau().expect("no multicells remain");
    let nu = p.shape().outer().clone();
    let mut q_rows = vec![Vec::new(); nu.len()];
    added.sort();
    for (row, _, k) in added {
        q_rows[row - 1].push(k);
    }
    let q = Tableau::skew(SkewShape::new(nu, lambda).expect("ν contains λ"), q_rows).expect("added cells form ν/λ");
    Ok(Uncrowding { p, q })
}

/// Modified ⋆-insertion, with λ/μ taken from the canonical preimage under the residue map.
pub fn star_tilde(f: &DecreasingFactorization) -> Result<(Tableau, Tableau)> {
    let shape = res_inv(f)?.shape().clone();
    star_tilde_with_inner(f, &shape)
}

/// Modified ⋆-insertion for a factorization read as the residue of a tableau of shape `shape`.
pub fn star_tilde_with_inner(f: &DecreasingFactorization, shape: &SkewShape) -> Result<(Tableau, Tableau)> {
    let mu = shape.inner();
    let shift = mu.len();
    // residue of T_μ, in the content frame of λ
    let mut lower: Vec<Vec<Letter>> = (1..=shift)
        .map(|i| (1..=mu.part(i)).rev().map(|j| shape.content(i, j) as Letter).collect())
        .collect();
    lower.reverse();
    let mut factors = f.factors().to_vec();
    factors.extend(lower);
    let n = factors.iter().flatten().copied().max().map_or(0, |x| x as usize + 1).max(f.n());
    let whole = DecreasingFactorization::new(n, factors)?;
    let r = star_insert(&whole.to_biword())?;
    let shift_l = shift as Letter;
    let mut p_rows = Vec::new();
    let mut q_rows = Vec::new();
    for (i, (prow, qrow)) in r.p.rows().iter().zip(r.q.rows()).enumerate() {
        let skip = mu.part(i + 1);
        if qrow.len() < skip || qrow[..skip].iter().any(|&k| k != i as Letter + 1) || qrow[skip..].iter().any(|&k| k <= shift_l) {
            return Err(Error::Domain(format!("recording tableau does not contain T_μ for μ = {mu}")));
        }
        p_rows.push(prow[skip..].to_vec());
        q_rows.push(qrow[skip..].iter().map(|&k| k - shift_l).collect());
    }
    let outer = r.p.shape().outer().clone();
    if !outer.contains(mu) {
        return Err(Error::Domain(format!("insertion shape {outer} does not contain μ = {mu}")));
    }
    let out_shape = SkewShape::new(outer, mu.clone())?;
    Ok((Tableau::skew(out_shape.clone(), p_rows)?, Tableau::skew(out_shape, q_rows)?))
}
