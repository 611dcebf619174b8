use serde::Serialize;

use super::Path;
use crate::error::{Error, Result};
use crate::factorization::HeckeBiword;
use crate::hecke::{eval_letters, HeckeWord, Letter};
use crate::mutation::Mutation;
use crate::tableau::{Tableau, TableauKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarInsertion {
    pub p: Tableau,
    pub q: Tableau,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<Path>>,
}

/// Inserts `x` into rows (bottom first); returns the path, ending at the new cell.
pub(crate) fn insert_rows(rows: &mut Vec<Vec<Letter>>, mut x: Letter, mutation: Option<Mutation>) -> Path {
    let mut path = Vec::new();
    let mut r = 0;
    loop {
        if rows.len() == r {
            rows.push(Vec::new());
        }
        let row = &mut rows[r];
        if row.last().is_none_or(|&z| x > z) {
            row.push(x);
            path.push((r + 1, row.len()));
            return path;
        }
        let at = row.partition_point(|&z| z < x);
        if row[at] != x || mutation == Some(Mutation::InsertCase3) {
            // Case 2: bump the smallest entry larger than x
            let at = row.partition_point(|&z| z <= x);
            if at == row.len() {
                // only reachable when Case 3 is disabled
                row.push(x);
                path.push((r + 1, row.len()));
                return path;
            }
            let y = row[at];
            row[at] = x;
            path.push((r + 1, at + 1));
            x = y;
        } else {
            // Case 3: row unchanged, bump the left end of the run of consecutive entries ending at x
            let mut s = at;
            while s > 0 && row[s - 1] + 1 == row[s] {
                s -= 1;
            }
            path.push((r + 1, at + 1));
            x = row[s];
        }
        r += 1;
    }
}

fn max_letter(rows: &[Vec<Letter>]) -> Letter {
    rows.iter().flatten().copied().max().unwrap_or(0)
}

fn require_fc(n: usize, letters: &[Letter]) -> Result<()> {
    if !eval_letters(n, letters).is_fully_commutative() {
        return Err(Error::Domain(format!("word {letters:?} is not fully commutative")));
    }
    Ok(())
}

/// `P ← x`. The row word of `p` followed by `x` must be fully commutative.
pub fn star_insert_one(p: &Tableau, x: Letter) -> Result<(Tableau, Path)> {
    if !p.shape().is_straight() {
        return Err(Error::Argument("insertion tableau must have straight shape".into()));
    }
    if x == 0 {
        return Err(Error::Argument("letters are positive".into()));
    }
    let mut rows = p.rows().to_vec();
    let n = max_letter(&rows).max(x) as usize + 1;
    let mut word: Vec<Letter> = rows.iter().rev().flatten().copied().collect();
    word.push(x);
    require_fc(n, &word)?;
    let path = insert_rows(&mut rows, x, None);
    Ok((Tableau::from_rows(rows).expect("shape grows by a corner"), path))
}

fn run(b: &HeckeBiword, mutation: Option<Mutation>, traced: bool) -> Result<StarInsertion> {
    require_fc(b.n(), b.bottom())?;
    let mut p: Vec<Vec<Letter>> = Vec::new();
    let mut q: Vec<Vec<Letter>> = Vec::new();
    let mut trace = Vec::new();
    for (&k, &x) in b.top().iter().zip(b.bottom()).rev() {
        let path = insert_rows(&mut p, x, mutation);
        let (r, _) = *path.last().expect("nonempty path");
        if q.len() < r {
            q.push(Vec::new());
        }
        q[r - 1].push(k as Letter);
        if traced {
            trace.push(path);
        }
    }
    Ok(StarInsertion {
        p: Tableau::from_rows(p).expect("partition shape"),
        q: Tableau::from_rows(q).expect("partition shape"),
        trace: traced.then_some(trace),
    })
}

/// ⋆-insertion of a fully-commutative decreasing biword, read right to left.
pub fn star_insert(b: &HeckeBiword) -> Result<StarInsertion> {
    run(b, None, false)
}

pub fn star_insert_traced(b: &HeckeBiword) -> Result<StarInsertion> {
    run(b, None, true)
}

/// ⋆-insertion with one case disabled; only for mutation testing.
pub fn star_insert_mutated(b: &HeckeBiword, mutation: Option<Mutation>) -> Result<StarInsertion> {
    run(b, mutation, false)
}

/// Insertion tableau of a word taken in insertion order (left to right).
pub fn star_insert_word(w: &HeckeWord) -> Result<Tableau> {
    require_fc(w.n(), w.letters())?;
    let mut rows = Vec::new();
    for &x in w.letters() {
        insert_rows(&mut rows, x, None);
    }
    Ok(Tableau::from_rows(rows).expect("partition shape"))
}

fn reverse_rows(rows: &mut Vec<Vec<Letter>>, row: usize) -> Result<Letter> {
    if row == 0 || row > rows.len() {
        return Err(Error::Argument(format!("row {row} has no cells")));
    }
    if rows.get(row).is_some_and(|above| above.len() == rows[row - 1].len()) {
        return Err(Error::Argument(format!("the last cell of row {row} is not a corner")));
    }
    let mut y = rows[row - 1].pop().expect("nonempty row");
    if rows[row - 1].is_empty() {
        rows.truncate(row - 1);
    }
    for r in (0..row - 1).rev() {
        let bad = || Error::Reconstruction(format!("nothing to bump out of row {} for {y}", r + 1));
        let cur = &mut rows[r];
        match cur.binary_search(&y) {
            Ok(mut s) => {
                while s + 1 < cur.len() && cur[s] + 1 == cur[s + 1] {
                    s += 1;
                }
                y = cur[s];
            }
            Err(at) => {
                if at == 0 {
                    return Err(bad());
                }
                std::mem::swap(&mut cur[at - 1], &mut y);
            }
        }
    }
    Ok(y)
}

/// Removes the last cell of `row` (1-based; must be a corner) and bumps its
/// entry back down; returns the smaller tableau and the emitted letter.
pub fn reverse_bump(p: &Tableau, row: usize) -> Result<(Tableau, Letter)> {
    if !p.shape().is_straight() {
        return Err(Error::Argument("reverse bumping needs a straight shape".into()));
    }
    let mut rows = p.rows().to_vec();
    let y = reverse_rows(&mut rows, row)?;
    Ok((Tableau::from_rows(rows).expect("corner removed"), y))
}

/// Inverse of [`star_insert`]: peels the largest entries of `q` from right to left.
pub fn star_inverse(p: &Tableau, q: &Tableau) -> Result<HeckeBiword> {
    if p.shape() != q.shape() || !p.shape().is_straight() {
        return Err(Error::Reconstruction("P and Q need the same straight shape".into()));
    }
    if let Err(v) = p.validate(TableauKind::RowIncreasing) {
        return Err(Error::Reconstruction(format!("P is not row increasing: {v}")));
    }
    if let Err(v) = q.validate(TableauKind::Semistandard) {
        return Err(Error::Reconstruction(format!("Q is not semistandard: {v}")));
    }
    let n = max_letter(p.rows()) as usize + 1;
    let mut prow = p.rows().to_vec();
    let mut qrow = q.rows().to_vec();
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    while !qrow.is_empty() {
        let k = max_letter(&qrow);
        // rightmost cell holding k: the one in the lowest row among maximal columns
        let (r, _) = qrow
            .iter()
            .enumerate()
            .filter(|(_, row)| row.last() == Some(&k))
            .map(|(r, row)| (r, row.len()))
            .max_by_key(|&(r, len)| (len, std::cmp::Reverse(r)))
            .expect("max entry ends some row");
        qrow[r].pop();
        if qrow[r].is_empty() {
            qrow.truncate(r);
        }
        let x = reverse_rows(&mut prow, r + 1)?;
        top.push(k as usize);
        bottom.push(x);
    }
    let b = HeckeBiword::new(n, top, bottom).map_err(|e| Error::Reconstruction(e.to_string()))?;
    let back = star_insert(&b).map_err(|e| Error::Reconstruction(e.to_string()))?;
    if &back.p != p || &back.q != q {
        return Err(Error::Reconstruction("(P, Q) is not in the image of the ⋆-insertion".into()));
    }
    Ok(b)
}
