//! Crystal operators on semistandard set-valued tableaux of skew shape.

use crate::crystal::{Crystal, CrystalGraph};
use crate::hecke::Letter;
use crate::mutation::Mutation;
use crate::tableau::{SetValuedTableau, Tableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Minus,
    Plus,
}

/// Column signs for letter `i`, left to right, with their bracketing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    /// `(column, sign, paired)`; columns with neither or both letters are omitted.
    pub entries: Vec<(usize, Sign, bool)>,
}

impl Signature {
    pub fn unpaired_minus(&self) -> usize {
        self.entries.iter().filter(|e| e.1 == Sign::Minus && !e.2).count()
    }

    pub fn unpaired_plus(&self) -> usize {
        self.entries.iter().filter(|e| e.1 == Sign::Plus && !e.2).count()
    }

    fn rightmost_unpaired_minus(&self) -> Option<usize> {
        self.entries.iter().rev().find(|e| e.1 == Sign::Minus && !e.2).map(|e| e.0)
    }

    fn leftmost_unpaired_plus(&self) -> Option<usize> {
        self.entries.iter().find(|e| e.1 == Sign::Plus && !e.2).map(|e| e.0)
    }
}

/// Per column: row of the cell holding `i`, row of the cell holding `i + 1`.
fn column_rows(t: &SetValuedTableau, i: Letter) -> Vec<(Option<usize>, Option<usize>)> {
    let width = t.shape().outer().part(1);
    let mut cols = vec![(None, None); width + 1];
    for ((r, c), cell) in t.cells() {
        if cell.binary_search(&i).is_ok() {
            cols[c].0 = Some(r);
        }
        if cell.binary_search(&(i + 1)).is_ok() {
            cols[c].1 = Some(r);
        }
    }
    cols
}

pub fn signature(t: &SetValuedTableau, i: Letter) -> Signature {
    let mut entries = Vec::new();
    for (c, (a, b)) in column_rows(t, i).into_iter().enumerate() {
        match (a.is_some(), b.is_some()) {
            (true, false) => entries.push((c, Sign::Minus, false)),
            (false, true) => entries.push((c, Sign::Plus, false)),
            _ => {}
        }
    }
    // cancel + immediately followed by − among the still unpaired signs
    let mut stack: Vec<usize> = Vec::new();
    for k in 0..entries.len() {
        match entries[k].1 {
            Sign::Plus => stack.push(k),
            Sign::Minus => {
                if let Some(p) = stack.pop() {
                    entries[p].2 = true;
                    entries[k].2 = true;
                }
            }
        }
    }
    Signature { entries }
}

pub fn phi(t: &SetValuedTableau, i: Letter) -> usize {
    signature(t, i).unpaired_minus()
}

pub fn epsilon(t: &SetValuedTableau, i: Letter) -> usize {
    signature(t, i).unpaired_plus()
}

fn add(cell: &mut Vec<Letter>, x: Letter) {
    let at = cell.partition_point(|&y| y < x);
    cell.insert(at, x);
}

fn del(cell: &mut Vec<Letter>, x: Letter) {
    let at = cell.binary_search(&x).expect("letter present");
    cell.remove(at);
}

pub(crate) fn f_svt_raw(t: &SetValuedTableau, i: Letter, mutation: Option<Mutation>) -> Option<SetValuedTableau> {
    let sig = signature(t, i);
    let c = sig.rightmost_unpaired_minus()?;
    let r = column_rows(t, i)[c].0.expect("column holds i");
    let mut u = t.clone();
    let right = t.cell(r, c + 1);
    let exception = right.is_some_and(|b| b.binary_search(&i).is_ok() && b.binary_search(&(i + 1)).is_ok());
    if exception && mutation != Some(Mutation::SvtException) {
        del(u.cell_mut(r, c + 1), i);
        add(u.cell_mut(r, c), i + 1);
    } else {
        if mutation == Some(Mutation::SvtPlain) {
            return None;
        }
        let cell = u.cell_mut(r, c);
        del(cell, i);
        add(cell, i + 1);
    }
    Some(u)
}

pub(crate) fn e_svt_raw(t: &SetValuedTableau, i: Letter) -> Option<SetValuedTableau> {
    let sig = signature(t, i);
    let c = sig.leftmost_unpaired_plus()?;
    let r = column_rows(t, i)[c].1.expect("column holds i+1");
    let mut u = t.clone();
    let left = if c > 1 { t.cell(r, c - 1) } else { None };
    if left.is_some_and(|b| b.binary_search(&i).is_ok() && b.binary_search(&(i + 1)).is_ok()) {
        del(u.cell_mut(r, c - 1), i + 1);
        add(u.cell_mut(r, c), i);
    } else {
        let cell = u.cell_mut(r, c);
        del(cell, i + 1);
        add(cell, i);
    }
    Some(u)
}

pub fn f_svt(t: &SetValuedTableau, i: Letter) -> Option<SetValuedTableau> {
    f_svt_raw(t, i, None)
}

pub fn e_svt(t: &SetValuedTableau, i: Letter) -> Option<SetValuedTableau> {
    e_svt_raw(t, i)
}

/// `f_i` with one case disabled; only for mutation testing.
pub fn f_svt_mutated(t: &SetValuedTableau, i: Letter, mutation: Option<Mutation>) -> Option<SetValuedTableau> {
    f_svt_raw(t, i, mutation)
}

/// Classical lowering operator on a single-valued semistandard tableau; the
/// restriction of [`f_svt`] to singleton cells.
pub fn f_ssyt(t: &Tableau, i: Letter) -> Option<Tableau> {
    let s = SetValuedTableau::from_tableau(t).ok()?;
    f_svt(&s, i).and_then(|u| u.to_tableau())
}

pub fn e_ssyt(t: &Tableau, i: Letter) -> Option<Tableau> {
    let s = SetValuedTableau::from_tableau(t).ok()?;
    e_svt(&s, i).and_then(|u| u.to_tableau())
}

/// The crystal on `SVT^m(λ/μ)`, rank `m − 1`.
#[derive(Clone, Copy, Debug)]
pub struct SvtCrystal {
    pub m: usize,
    pub mutation: Option<Mutation>,
}

impl SvtCrystal {
    pub fn new(m: usize) -> Self {
        SvtCrystal { m, mutation: None }
    }
}

impl Crystal for SvtCrystal {
    type Node = SetValuedTableau;

    fn rank(&self) -> usize {
        self.m.saturating_sub(1)
    }

    fn f(&self, x: &SetValuedTableau, i: usize) -> Option<SetValuedTableau> {
        f_svt_raw(x, i as Letter, self.mutation)
    }

    fn e(&self, x: &SetValuedTableau, i: usize) -> Option<SetValuedTableau> {
        e_svt_raw(x, i as Letter)
    }

    fn weight(&self, x: &SetValuedTableau) -> Vec<i64> {
        x.weight(self.m).into_iter().map(|w| w as i64).collect()
    }
}

pub fn crystal_graph(seed: &SetValuedTableau, m: usize) -> CrystalGraph<SetValuedTableau> {
    CrystalGraph::component(&SvtCrystal::new(m), seed)
}
