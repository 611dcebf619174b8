//! Tableaux in French notation: set-valued, single-valued, and the multiset
//! recording tableaux produced by Hecke insertion.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hecke::{HeckeWord, Letter};
use crate::partition::{Partition, SkewShape};

/// Wire format shared by every tableau type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauJson {
    pub notation: String,
    pub outer: Vec<usize>,
    pub inner: Vec<usize>,
    pub rows: Vec<Vec<Vec<Letter>>>,
}

impl TableauJson {
    fn check_notation(&self) -> Result<()> {
        if self.notation != "french" {
            return Err(Error::Validation(format!("unsupported notation {:?}", self.notation)));
        }
        Ok(())
    }

    fn shape(&self) -> Result<SkewShape> {
        let shape = SkewShape::new(Partition::new(self.outer.clone())?, Partition::new(self.inner.clone())?)?;
        if self.rows.len() != shape.rows() {
            return Err(Error::Validation(format!(
                "{} rows given for a shape with {} rows",
                self.rows.len(),
                shape.rows()
            )));
        }
        for (r, row) in self.rows.iter().enumerate() {
            let want = shape.outer().part(r + 1) - shape.inner().part(r + 1);
            if row.len() != want {
                return Err(Error::Validation(format!("row {} has {} cells, shape needs {want}", r + 1, row.len())));
            }
        }
        Ok(shape)
    }
}

fn rows_of<T: Clone>(shape: &SkewShape, cell: impl Fn(usize, usize) -> T) -> Vec<Vec<T>> {
    (1..=shape.rows())
        .map(|r| (shape.inner().part(r) + 1..=shape.outer().part(r)).map(|c| cell(r, c)).collect())
        .collect()
}

/// The first pair of cells breaking an invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub first: (usize, usize),
    pub second: (usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated between cells {:?} and {:?}", self.rule, self.first, self.second)
    }
}

/// Semistandard set-valued tableau of skew shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetValuedTableau {
    shape: SkewShape,
    // rows[r - 1][c - inner_r - 1], each cell ascending and nonempty
    rows: Vec<Vec<Vec<Letter>>>,
}

impl SetValuedTableau {
    /// `rows[r]` lists the cells of row `r + 1` from left to right.
    pub fn new(shape: SkewShape, rows: Vec<Vec<Vec<Letter>>>) -> Result<Self> {
        let t = TableauJson {
            notation: "french".into(),
            outer: shape.outer().parts().to_vec(),
            inner: shape.inner().parts().to_vec(),
            rows,
        };
        SetValuedTableau::from_json(t)
    }

    pub fn from_json(j: TableauJson) -> Result<Self> {
        j.check_notation()?;
        let shape = j.shape()?;
        for (r, row) in j.rows.iter().enumerate() {
            for (k, cell) in row.iter().enumerate() {
                let pos = (r + 1, shape.inner().part(r + 1) + k + 1);
                if cell.is_empty() {
                    return Err(Error::Validation(format!("cell {pos:?} is empty")));
                }
                if cell.contains(&0) {
                    return Err(Error::Validation(format!("cell {pos:?} holds 0")));
                }
                if cell.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Validation(format!("cell {pos:?} is not an ascending set")));
                }
            }
        }
        let t = SetValuedTableau { shape, rows: j.rows };
        if let Err(v) = t.validate() {
            return Err(Error::Validation(v.to_string()));
        }
        Ok(t)
    }


    pub fn to_json(&self) -> TableauJson {
        TableauJson {
            notation: "french".into(),
            outer: self.shape.outer().parts().to_vec(),
            inner: self.shape.inner().parts().to_vec(),
            rows: self.rows.clone(),
        }
    }

    /// Singleton cells from a single-valued tableau.
    pub fn from_tableau(t: &Tableau) -> Result<Self> {
        let rows = t.rows.iter().map(|row| row.iter().map(|&x| vec![x]).collect()).collect();
        SetValuedTableau::new(t.shape.clone(), rows)
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<Vec<Letter>>] {
        &self.rows
    }

    pub fn cell(&self, row: usize, col: usize) -> Option<&[Letter]> {
        if !self.shape.contains_cell(row, col) {
            return None;
        }
        Some(&self.rows[row - 1][col - self.shape.inner().part(row) - 1])
    }

    pub(crate) fn cell_mut(&mut self, row: usize, col: usize) -> &mut Vec<Letter> {
        let off = self.shape.inner().part(row);
        &mut self.rows[row - 1][col - off - 1]
    }

    /// Cells with their positions, bottom row first.
    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), &[Letter])> + '_ {
        self.rows.iter().enumerate().flat_map(move |(r, row)| {
            let off = self.shape.inner().part(r + 1);
            row.iter().enumerate().map(move |(k, cell)| ((r + 1, off + k + 1), cell.as_slice()))
        })
    }

    pub fn max_entry(&self) -> Letter {
        self.cells().filter_map(|(_, c)| c.last().copied()).max().unwrap_or(0)
    }

    /// Multiplicity of each letter `1..=len`, where `len` is at least the largest entry.
    pub fn weight(&self, len: usize) -> Vec<usize> {
        let mut w = vec![0; len.max(self.max_entry() as usize)];
        for (_, cell) in self.cells() {
            for &x in cell {
                w[x as usize - 1] += 1;
            }
        }
        w
    }

    /// Total entries minus number of cells.
    pub fn excess(&self) -> usize {
        self.cells().map(|(_, c)| c.len() - 1).sum()
    }

    pub fn is_single_valued(&self) -> bool {
        self.cells().all(|(_, c)| c.len() == 1)
    }

    pub fn to_tableau(&self) -> Option<Tableau> {
        if !self.is_single_valued() {
            return None;
        }
        let rows = self.rows.iter().map(|row| row.iter().map(|c| c[0]).collect()).collect();
        Some(Tableau { shape: self.shape.clone(), rows })
    }

    /// Row condition `max(A) <= min(B)`, column condition `max(A) < min(C)`.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for ((r, c), cell) in self.cells() {
            if let Some(right) = self.cell(r, c + 1) {
                if cell.last() > right.first() {
                    return Err(Violation { rule: "row max <= min", first: (r, c), second: (r, c + 1) });
                }
            }
            if let Some(above) = self.cell(r + 1, c) {
                if cell.last() >= above.first() {
                    return Err(Violation { rule: "column max < min", first: (r, c), second: (r + 1, c) });
                }
            }
        }
        Ok(())
    }
}

impl Serialize for SetValuedTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetValuedTableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        SetValuedTableau::from_json(TableauJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

fn render(shape: &SkewShape, cell: impl Fn(usize, usize) -> String) -> String {
    // top row first, as drawn in French notation; inner cells shown as '.'
    let mut width = 1;
    for (r, c) in shape.cells() {
        width = width.max(cell(r, c).len());
    }
    let mut lines = Vec::new();
    for r in (1..=shape.rows()).rev() {
        let mut parts = Vec::new();
        for c in 1..=shape.outer().part(r) {
            let s = if c <= shape.inner().part(r) { ".".to_string() } else { cell(r, c) };
            parts.push(format!("{s:<width$}"));
        }
        lines.push(parts.join(" ").trim_end().to_string());
    }
    lines.join("\n")
}

impl fmt::Display for SetValuedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = render(&self.shape, |r, c| {
            let cell = self.cell(r, c).unwrap_or(&[]);
            let body: Vec<String> = cell.iter().map(|x| x.to_string()).collect();
            if cell.iter().all(|&x| x < 10) {
                body.concat()
            } else {
                format!("{{{}}}", body.join(","))
            }
        });
        f.write_str(&text)
    }
}

/// Which ordering conditions a single-valued tableau must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableauKind {
    /// Rows strict, columns weak: the transpose is semistandard.
    RowIncreasing,
    /// Rows weak, columns strict.
    Semistandard,
    /// Rows and columns strict.
    Increasing,
    /// Increasing, with entries in row i at most i − 1.
    FlaggedIncreasing,
}

/// A single-valued filling of a skew shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    shape: SkewShape,
    rows: Vec<Vec<Letter>>,
}

impl Tableau {
    /// Straight shape from rows listed bottom-up.
    pub fn from_rows(rows: Vec<Vec<Letter>>) -> Result<Self> {
        let outer = Partition::new(rows.iter().map(Vec::len).collect())?;
        if rows.iter().flatten().any(|&x| x == 0) {
            return Err(Error::Validation("entries must be positive".into()));
        }
        let mut rows = rows;
        while rows.last().is_some_and(Vec::is_empty) {
            rows.pop();
        }
        Ok(Tableau { shape: SkewShape::straight(outer), rows })
    }

    pub fn skew(shape: SkewShape, rows: Vec<Vec<Letter>>) -> Result<Self> {
        let j = TableauJson {
            notation: "french".into(),
            outer: shape.outer().parts().to_vec(),
            inner: shape.inner().parts().to_vec(),
            rows: rows.iter().map(|r| r.iter().map(|&x| vec![x]).collect()).collect(),
        };
        Tableau::from_json(j)
    }

    pub fn from_json(j: TableauJson) -> Result<Self> {
        j.check_notation()?;
        let shape = j.shape()?;
        let mut rows = Vec::with_capacity(j.rows.len());
        for row in &j.rows {
            let mut out = Vec::with_capacity(row.len());
            for cell in row {
                match cell.as_slice() {
                    [x] if *x > 0 => out.push(*x),
                    _ => return Err(Error::Validation("expected one positive entry per cell".into())),
                }
            }
            rows.push(out);
        }
        Ok(Tableau { shape, rows })
    }

    pub fn to_json(&self) -> TableauJson {
        TableauJson {
            notation: "french".into(),
            outer: self.shape.outer().parts().to_vec(),
            inner: self.shape.inner().parts().to_vec(),
            rows: self.rows.iter().map(|r| r.iter().map(|&x| vec![x]).collect()).collect(),
        }
    }

    pub fn empty() -> Self {
        Tableau { shape: SkewShape::straight(Partition::empty()), rows: Vec::new() }
    }


    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    /// Rows bottom-up, each restricted to the skew cells.
    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    pub fn cell(&self, row: usize, col: usize) -> Option<Letter> {
        if !self.shape.contains_cell(row, col) {
            return None;
        }
        Some(self.rows[row - 1][col - self.shape.inner().part(row) - 1])
    }

    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), Letter)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(r, row)| {
            let off = self.shape.inner().part(r + 1);
            row.iter().enumerate().map(move |(k, &x)| ((r + 1, off + k + 1), x))
        })
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn weight(&self, len: usize) -> Vec<usize> {
        let max = self.cells().map(|(_, x)| x as usize).max().unwrap_or(0);
        let mut w = vec![0; len.max(max)];
        for (_, x) in self.cells() {
            w[x as usize - 1] += 1;
        }
        w
    }

    pub fn validate(&self, kind: TableauKind) -> std::result::Result<(), Violation> {
        let (row_strict, col_strict) = match kind {
            TableauKind::RowIncreasing => (true, false),
            TableauKind::Semistandard => (false, true),
            TableauKind::Increasing | TableauKind::FlaggedIncreasing => (true, true),
        };
        for ((r, c), x) in self.cells() {
            if kind == TableauKind::FlaggedIncreasing && x as usize > r - 1 {
                return Err(Violation { rule: "flag bound", first: (r, c), second: (r, c) });
            }
            if let Some(y) = self.cell(r, c + 1) {
                if x > y || (row_strict && x == y) {
                    return Err(Violation { rule: "row order", first: (r, c), second: (r, c + 1) });
                }
            }
            if let Some(y) = self.cell(r + 1, c) {
                if x > y || (col_strict && x == y) {
                    return Err(Violation { rule: "column order", first: (r, c), second: (r + 1, c) });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, kind: TableauKind) -> bool {
        self.validate(kind).is_ok()
    }

    /// Rows read top to bottom, each left to right.
    pub fn row_word(&self, n: usize) -> Result<HeckeWord> {
        let letters = self.rows.iter().rev().flatten().copied().collect();
        HeckeWord::new(n, letters)
    }

    /// Transpose of a straight-shape tableau.
    pub fn transpose(&self) -> Tableau {
        assert!(self.shape.is_straight(), "transpose of a skew tableau");
        let cols = self.rows.first().map_or(0, Vec::len);
        let rows = (0..cols)
            .map(|c| self.rows.iter().take_while(|r| r.len() > c).map(|r| r[c]).collect())
            .collect();
        Tableau::from_rows(rows).expect("transpose of a partition shape")
    }
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Tableau::from_json(TableauJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.shape, |r, c| self.cell(r, c).map_or(String::new(), |x| x.to_string())))
    }
}

/// Straight-shape tableau whose cells are multisets. Hecke insertion records
/// into these; a cell may receive the same label twice.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultisetTableau {
    rows: Vec<Vec<Vec<Letter>>>,
}

impl MultisetTableau {
    pub fn from_rows(rows: Vec<Vec<Vec<Letter>>>) -> Result<Self> {
        Partition::new(rows.iter().map(Vec::len).collect())?;
        let mut rows = rows;
        for cell in rows.iter_mut().flatten() {
            if cell.is_empty() {
                return Err(Error::Validation("empty cell".into()));
            }
            cell.sort_unstable();
        }
        Ok(MultisetTableau { rows })
    }

    pub fn rows(&self) -> &[Vec<Vec<Letter>>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("kept a partition")
    }

    pub(crate) fn push_cell(&mut self, row: usize, label: Letter) {
        if self.rows.len() < row {
            self.rows.resize(row, Vec::new());
        }
        self.rows[row - 1].push(vec![label]);
    }

    pub(crate) fn add_label(&mut self, row: usize, col: usize, label: Letter) {
        let cell = &mut self.rows[row - 1][col - 1];
        let at = cell.partition_point(|&x| x <= label);
        cell.insert(at, label);
    }

    /// Fails when some cell repeats a label.
    pub fn to_set_valued(&self) -> Result<SetValuedTableau> {
        SetValuedTableau::new(SkewShape::straight(self.shape()), self.rows.clone())
    }

    pub fn to_json(&self) -> TableauJson {
        TableauJson {
            notation: "french".into(),
            outer: self.rows.iter().map(Vec::len).collect(),
            inner: Vec::new(),
            rows: self.rows.clone(),
        }
    }
}

impl Serialize for MultisetTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultisetTableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TableauJson::deserialize(d)?;
        if !j.inner.is_empty() {
            return Err(serde::de::Error::custom("recording tableaux have straight shape"));
        }
        MultisetTableau::from_rows(j.rows).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for MultisetTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shape = SkewShape::straight(self.shape());
        let text = render(&shape, |r, c| {
            let cell = &self.rows[r - 1][c - 1];
            cell.iter().map(|x| x.to_string()).collect::<Vec<_>>().concat()
        });
        f.write_str(&text)
    }
}

/// Row i of μ filled with the letter i.
pub fn t_mu(mu: &Partition) -> Tableau {
    let rows = mu.parts().iter().enumerate().map(|(i, &len)| vec![i as Letter + 1; len]).collect();
    Tableau::from_rows(rows).expect("partition shape")
}

/// All semistandard set-valued fillings of `shape` with entries in `1..=m`.
pub fn set_valued_tableaux(shape: &SkewShape, m: usize) -> Vec<SetValuedTableau> {
    let cells = shape.cells();
    let subsets: Vec<Vec<Letter>> = (1u32..1 << m)
        .map(|mask| (1..=m as Letter).filter(|&x| mask >> (x - 1) & 1 == 1).collect())
        .collect();
    let mut out = Vec::new();
    let mut t = SetValuedTableau {
        shape: shape.clone(),
        rows: rows_of(shape, |_, _| Vec::new()),
    };
    fill(&cells, 0, &subsets, &mut t, &mut out);
    out
}

fn fill(
    cells: &[(usize, usize)],
    k: usize,
    subsets: &[Vec<Letter>],
    t: &mut SetValuedTableau,
    out: &mut Vec<SetValuedTableau>,
) {
    if k == cells.len() {
        out.push(t.clone());
        return;
    }
    // cells go row by row from the bottom, so left and lower neighbours are filled
    let (r, c) = cells[k];
    let left = t.cell(r, c - 1).and_then(|x| x.last().copied()).unwrap_or(0);
    let below = if r > 1 { t.cell(r - 1, c).and_then(|x| x.last().copied()).unwrap_or(0) } else { 0 };
    for s in subsets {
        if s[0] < left || s[0] <= below {
            continue;
        }
        *t.cell_mut(r, c) = s.clone();
        fill(cells, k + 1, subsets, t, out);
    }
    t.cell_mut(r, c).clear();
}

/// All semistandard tableaux of `shape` with entries in `1..=m`.
pub fn semistandard_tableaux(shape: &SkewShape, m: usize) -> Vec<Tableau> {
    let cells = shape.cells();
    let mut out = Vec::new();
    let mut t = Tableau { shape: shape.clone(), rows: rows_of(shape, |_, _| 0) };
    fn go(cells: &[(usize, usize)], k: usize, m: usize, t: &mut Tableau, out: &mut Vec<Tableau>) {
        if k == cells.len() {
            out.push(t.clone());
            return;
        }
        let (r, c) = cells[k];
        let left = t.cell(r, c - 1).unwrap_or(1).max(1);
        let below = if r > 1 { t.cell(r - 1, c).map_or(1, |x| x + 1) } else { 1 };
        let off = t.shape.inner().part(r);
        for x in left.max(below)..=m as Letter {
            t.rows[r - 1][c - off - 1] = x;
            go(cells, k + 1, m, t, out);
        }
    }
    go(&cells, 0, m, &mut t, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> SetValuedTableau {
        let shape = SkewShape::parse("2,2/1").unwrap();
        SetValuedTableau::new(shape, vec![vec![vec![1, 2]], vec![vec![2, 3], vec![3]]]).unwrap()
    }

    #[test]
    fn example_is_valid() {
        let t = example();
        assert_eq!(t.weight(0), vec![1, 2, 2]);
        assert_eq!(t.excess(), 2);
        assert_eq!(t.cell(1, 2), Some(&[1, 2][..]));
        assert_eq!(t.cell(1, 1), None);
    }

    #[test]
    fn rejects_bad_sets_and_order() {
        let shape = SkewShape::parse("2").unwrap();
        assert!(SetValuedTableau::new(shape.clone(), vec![vec![vec![2, 2], vec![3]]]).is_err());
        assert!(SetValuedTableau::new(shape.clone(), vec![vec![vec![2, 3], vec![2]]]).is_err());
        assert!(SetValuedTableau::new(shape, vec![vec![vec![2, 3], vec![3]]]).is_ok());
        let col = SkewShape::parse("1,1").unwrap();
        assert!(SetValuedTableau::new(col, vec![vec![vec![1, 2]], vec![vec![2]]]).is_err());
    }

    #[test]
    fn kinds() {
        let q = Tableau::from_rows(vec![vec![1, 1], vec![2, 2]]).unwrap();
        assert!(q.is_valid(TableauKind::Semistandard));
        assert!(!q.is_valid(TableauKind::RowIncreasing));
        assert!(q.transpose().is_valid(TableauKind::RowIncreasing));
        let p = Tableau::from_rows(vec![vec![1, 2, 4], vec![1], vec![3]]).unwrap();
        assert!(p.is_valid(TableauKind::RowIncreasing));
        assert_eq!(p.row_word(5).unwrap().letters(), &[3, 1, 1, 2, 4]);
    }

    #[test]
    fn t_mu_rows() {
        let t = t_mu(&Partition::new(vec![2, 1]).unwrap());
        assert_eq!(t.rows(), &[vec![1, 1], vec![2]]);
        assert_eq!(t.weight(0), vec![2, 1]);
        assert_eq!(t_mu(&Partition::empty()).size(), 0);
    }

    #[test]
    fn enumerators() {
        let shape = SkewShape::parse("2,1").unwrap();
        assert_eq!(semistandard_tableaux(&shape, 2).len(), 2);
        assert_eq!(semistandard_tableaux(&shape, 3).len(), 8);
        for t in set_valued_tableaux(&shape, 3) {
            assert!(t.validate().is_ok());
        }
        // single cell, entries <= 2: {1}, {2}, {1,2}
        assert_eq!(set_valued_tableaux(&SkewShape::parse("1").unwrap(), 2).len(), 3);
    }

    #[test]
    fn json_round_trip() {
        let t = example();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.contains("\"notation\":\"french\""));
        let back: SetValuedTableau = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
