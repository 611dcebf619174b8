//! Partitions, skew shapes and their bounded generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing positive parts; trailing zeros are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Validation(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts arbitrary nonnegative parts into a partition.
    pub fn sorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Part `i` (1-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Parses "2,2,1", "2 2 1" or "221"; "" and "0" give the empty partition.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = crate::hecke::parse_letters(s.trim())?;
        Partition::new(parts.into_iter().map(|p| p as usize).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `λ/μ` with `μ ⊆ λ`. Rows are counted from the bottom (French notation).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::Validation(format!("{inner} is not contained in {outer}")));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape { outer, inner: Partition::empty() }
    }

    /// Parses "5,5,4,2,1/4,4,1,1" or a straight "3,2".
    pub fn parse(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((a, b)) => SkewShape::new(Partition::parse(a)?, Partition::parse(b)?),
            None => Ok(SkewShape::straight(Partition::parse(s)?)),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    /// ℓ(λ).
    pub fn rows(&self) -> usize {
        self.outer.len()
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    pub fn is_straight(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        row >= 1 && col > self.inner.part(row) && col <= self.outer.part(row)
    }

    /// Cells `(row, col)`, 1-based, row by row from the bottom, left to right.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for r in 1..=self.rows() {
            for c in self.inner.part(r) + 1..=self.outer.part(r) {
                out.push((r, c));
            }
        }
        out
    }

    /// ℓ(λ) + j − i.
    pub fn content(&self, row: usize, col: usize) -> usize {
        self.rows() + col - row
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}/{}", self.outer, self.inner)
        }
    }
}

/// Partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions fitting in a `rows × cols` box.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Partition> {
    fn go(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        out.push(Partition(cur.clone()));
        if rows == 0 {
            return;
        }
        for p in 1..=max {
            cur.push(p);
            go(rows - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, cols, &mut Vec::new(), &mut out);
    out
}

/// Skew shapes with between 1 and `max_cells` cells and no empty row or
/// column. Up to translation this covers every skew diagram of that size
/// whose rows and columns are all occupied.
pub fn skew_shapes(max_cells: usize) -> Vec<SkewShape> {
    let mut out = Vec::new();
    for outer in partitions_in_box(max_cells, max_cells) {
        if outer.is_empty() {
            continue;
        }
        for inner in partitions_in_box(outer.len(), outer.part(1)) {
            if !outer.contains(&inner) {
                continue;
            }
            let shape = SkewShape { outer: outer.clone(), inner };
            let size = shape.size();
            if size == 0 || size > max_cells {
                continue;
            }
            let rows_ok = (1..=shape.rows()).all(|r| shape.outer.part(r) > shape.inner.part(r));
            let cols_ok = (1..=outer.part(1)).all(|c| (1..=shape.rows()).any(|r| shape.contains_cell(r, c)));
            if rows_ok && cols_ok {
                out.push(shape);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn shape_cells_and_contents() {
        let s = SkewShape::parse("2,2/1").unwrap();
        assert_eq!(s.cells(), vec![(1, 2), (2, 1), (2, 2)]);
        assert_eq!(s.content(1, 2), 3);
        assert_eq!(s.content(2, 1), 1);
        assert!(SkewShape::parse("2/3").is_err());
    }

    #[test]
    fn skew_shape_generator() {
        // one cell, two cells (row, column, and the disconnected diagonal pair)
        assert_eq!(skew_shapes(1).len(), 1);
        assert_eq!(skew_shapes(2).len(), 4);
        for s in skew_shapes(4) {
            assert!(s.size() <= 4);
        }
    }
}
