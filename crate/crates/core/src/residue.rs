//! The residue map from set-valued tableaux to decreasing factorizations and
//! its inverse.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::factorization::DecreasingFactorization;
use crate::hecke::Letter;
use crate::partition::{Partition, SkewShape};
use crate::tableau::SetValuedTableau;

/// `h^k` lists the contents `ℓ(λ) + j − i` of the cells containing `k`.
/// The alphabet bound is one more than the largest content present.
pub fn res(t: &SetValuedTableau, m: usize) -> Result<DecreasingFactorization> {
    if t.max_entry() as usize > m {
        return Err(Error::Argument(format!("entry {} exceeds m = {m}", t.max_entry())));
    }
    let mut factors = vec![Vec::new(); m];
    for ((r, c), cell) in t.cells() {
        let content = t.shape().content(r, c) as Letter;
        for &k in cell {
            factors[m - k as usize].push(content);
        }
    }
    for h in &mut factors {
        h.sort_unstable_by(|a, b| b.cmp(a));
    }
    DecreasingFactorization::inferred(factors)
}

/// Cells of each diagonal, as groups of factor indices. Occurrences of a
/// content belong to one cell exactly when no neighbouring content occurs
/// between them in the reading `h^1` ascending, ..., `h^m` ascending.
struct Diagonals {
    // content -> blocks of entries, in order along the diagonal
    blocks: BTreeMap<Letter, Vec<Vec<Letter>>>,
    // content -> reading position of its first occurrence
    first: BTreeMap<Letter, usize>,
}

fn diagonals(f: &DecreasingFactorization) -> Diagonals {
    let mut reading = Vec::new();
    for k in 1..=f.m() {
        for &c in f.factor(k).iter().rev() {
            reading.push((k as Letter, c));
        }
    }
    let mut blocks: BTreeMap<Letter, Vec<Vec<Letter>>> = BTreeMap::new();
    let mut first = BTreeMap::new();
    // whether a neighbouring content was read since the last occurrence of c
    let mut broken: BTreeMap<Letter, bool> = BTreeMap::new();
    for (pos, &(k, c)) in reading.iter().enumerate() {
        first.entry(c).or_insert(pos);
        let list = blocks.entry(c).or_default();
        if list.is_empty() || broken.get(&c).copied().unwrap_or(true) {
            list.push(vec![k]);
        } else {
            let cell = list.last_mut().expect("nonempty");
            if cell.last() != Some(&k) {
                cell.push(k);
            }
        }
        broken.insert(c, false);
        broken.insert(c + 1, true);
        if c > 1 {
            broken.insert(c - 1, true);
        }
    }
    Diagonals { blocks, first }
}

fn assemble(cells: Vec<((usize, usize), Vec<Letter>)>, f: &DecreasingFactorization) -> Result<SetValuedTableau> {
    let rows = cells.iter().map(|((r, _), _)| *r).max().unwrap_or(0);
    let mut by_row: Vec<Vec<(usize, Vec<Letter>)>> = vec![Vec::new(); rows];
    for ((r, c), cell) in cells {
        by_row[r - 1].push((c, cell));
    }
    let mut outer = Vec::with_capacity(rows);
    let mut inner = Vec::with_capacity(rows);
    let mut body = Vec::with_capacity(rows);
    for (r, row) in by_row.iter_mut().enumerate() {
        row.sort_by_key(|(c, _)| *c);
        if row.is_empty() {
            return Err(Error::Reconstruction(format!("row {} of the reconstruction is empty", r + 1)));
        }
        let lo = row[0].0;
        if row.iter().enumerate().any(|(k, (c, _))| *c != lo + k) {
            return Err(Error::Reconstruction(format!("row {} of the reconstruction has a gap", r + 1)));
        }
        inner.push(lo - 1);
        outer.push(lo - 1 + row.len());
        body.push(row.iter().map(|(_, cell)| cell.clone()).collect());
    }
    let shape = SkewShape::new(Partition::new(outer)?, Partition::new(inner)?)
        .map_err(|e| Error::Reconstruction(format!("cells do not form a skew shape: {e}")))?;
    let t = SetValuedTableau::new(shape, body).map_err(|e| Error::Reconstruction(e.to_string()))?;
    if res(&t, f.m())?.factors() != f.factors() {
        return Err(Error::Reconstruction(format!("no tableau has residue {f}")));
    }
    Ok(t)
}

/// Canonical preimage: fewest rows, then lexicographically smallest inner shape.
/// Components separated by missing contents are stacked as tightly as the
/// skew condition allows.
pub fn res_inv(f: &DecreasingFactorization) -> Result<SetValuedTableau> {
    if !f.is_fully_commutative() {
        return Err(Error::Domain(format!("{f} is not fully commutative; it has no residue preimage")));
    }
    let d = diagonals(f);
    if d.blocks.is_empty() {
        return SetValuedTableau::new(SkewShape::straight(Partition::empty()), Vec::new());
    }
    // relative row of the first cell on each diagonal; components of consecutive
    // contents, processed from the largest content (bottom right) upwards
    let contents: Vec<Letter> = d.blocks.keys().rev().copied().collect();
    let mut base: BTreeMap<Letter, i64> = BTreeMap::new();
    let mut floor = 0i64;
    let mut start = 0;
    while start < contents.len() {
        let mut end = start + 1;
        while end < contents.len() && contents[end] + 1 == contents[end - 1] {
            end += 1;
        }
        let comp = &contents[start..end];
        let mut local = BTreeMap::new();
        local.insert(comp[0], 0i64);
        for w in comp.windows(2) {
            let (hi, lo) = (w[0], w[1]);
            // lo's first cell sits in the row of hi's first cell when it is read
            // first, otherwise one row higher
            let b = local[&hi] + if d.first[&lo] < d.first[&hi] { 0 } else { 1 };
            local.insert(lo, b);
        }
        let low = local.values().copied().min().expect("nonempty");
        let mut top = i64::MIN;
        for (&c, &b) in &local {
            let b = b - low + floor;
            base.insert(c, b);
            top = top.max(b + d.blocks[&c].len() as i64 - 1);
        }
        floor = top + 1;
        start = end;
    }
    let rows = floor;
    let mut cells = Vec::new();
    for (&c, list) in &d.blocks {
        for (t, cell) in list.iter().enumerate() {
            let row = base[&c] + t as i64 + 1;
            let col = c as i64 - rows + row;
            if col < 1 {
                return Err(Error::Reconstruction(format!("content {c} falls left of column 1")));
            }
            cells.push(((row as usize, col as usize), cell.clone()));
        }
    }
    assemble(cells, f)
}

/// The unique tableau of the given shape with residue `f`.
pub fn res_inv_shaped(f: &DecreasingFactorization, shape: &SkewShape) -> Result<SetValuedTableau> {
    let d = diagonals(f);
    let mut slots: BTreeMap<Letter, Vec<(usize, usize)>> = BTreeMap::new();
    for (r, c) in shape.cells() {
        slots.entry(shape.content(r, c) as Letter).or_default().push((r, c));
    }
    let mut cells = Vec::new();
    for (&c, list) in &d.blocks {
        let places = slots.remove(&c).unwrap_or_default();
        if places.len() != list.len() {
            let k = list.get(places.len()).or(list.last()).and_then(|b| b.first()).copied().unwrap_or(0);
            return Err(Error::Reconstruction(format!(
                "entry {k} on content {c}: shape has {} cells on that diagonal, residue needs {}",
                places.len(),
                list.len()
            )));
        }
        for (pos, cell) in places.into_iter().zip(list) {
            cells.push((pos, cell.clone()));
        }
    }
    if let Some((c, _)) = slots.into_iter().next() {
        return Err(Error::Reconstruction(format!("no entry for the cells of content {c}")));
    }
    let mut rows: Vec<Vec<Vec<Letter>>> = (1..=shape.rows())
        .map(|r| vec![Vec::new(); shape.outer().part(r) - shape.inner().part(r)])
        .collect();
    for ((r, c), cell) in cells {
        rows[r - 1][c - shape.inner().part(r) - 1] = cell;
    }
    let t = SetValuedTableau::new(shape.clone(), rows).map_err(|e| Error::Reconstruction(e.to_string()))?;
    if res(&t, f.m())?.factors() != f.factors() {
        return Err(Error::Reconstruction(format!("shape {shape} does not carry residue {f}")));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> SetValuedTableau {
        let shape = SkewShape::parse("2,2/1").unwrap();
        SetValuedTableau::new(shape, vec![vec![vec![1, 2]], vec![vec![2, 3], vec![3]]]).unwrap()
    }

    #[test]
    fn residue_example() {
        assert_eq!(res(&example(), 3).unwrap().to_string(), "(21)(31)(3)");
        assert!(res(&example(), 2).is_err());
    }

    #[test]
    fn residue_round_trip_example() {
        let f = res(&example(), 3).unwrap();
        assert_eq!(res_inv(&f).unwrap(), example());
    }

    #[test]
    fn empty() {
        let f = DecreasingFactorization::empty(1, 3);
        assert_eq!(res_inv(&f).unwrap().shape().size(), 0);
    }
}
