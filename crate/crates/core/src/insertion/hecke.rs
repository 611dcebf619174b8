use serde::Serialize;

use super::Path;
use crate::factorization::HeckeBiword;
use crate::hecke::Letter;
use crate::tableau::{MultisetTableau, Tableau};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeInsertion {
    pub p: Tableau,
    pub q: MultisetTableau,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<Path>>,
}

fn fits(rows: &[Vec<Letter>], r: usize, col: usize, x: Letter) -> bool {
    // placing x at (r, col) keeps rows and columns strictly increasing
    let row = &rows[r];
    if col > 0 && row[col - 1] >= x {
        return false;
    }
    if col + 1 < row.len() && row[col + 1] <= x {
        return false;
    }
    if r > 0 {
        match rows[r - 1].get(col) {
            Some(&below) if below < x => {}
            _ => return false,
        }
    }
    if let Some(&above) = rows.get(r + 1).and_then(|a| a.get(col)) {
        if above <= x {
            return false;
        }
    }
    true
}

/// Row insertion of the biword read right to left.
pub fn hecke_insert(b: &HeckeBiword) -> HeckeInsertion {
    run(b, false)
}

pub fn hecke_insert_traced(b: &HeckeBiword) -> HeckeInsertion {
    run(b, true)
}

fn run(b: &HeckeBiword, traced: bool) -> HeckeInsertion {
    let mut rows: Vec<Vec<Letter>> = Vec::new();
    let mut q = MultisetTableau::default();
    let mut trace = Vec::new();
    for (&k, &letter) in b.top().iter().zip(b.bottom()).rev() {
        let label = k as Letter;
        let mut x = letter;
        let mut r = 0;
        let mut path = Vec::new();
        loop {
            if rows.len() == r {
                rows.push(Vec::new());
            }
            let row = &rows[r];
            match row.iter().position(|&z| z > x) {
                None => {
                    let col = row.len();
                    let can_append = row.last().is_none_or(|&z| z < x) && fits(&rows, r, col, x);
                    if can_append {
                        rows[r].push(x);
                        path.push((r + 1, col + 1));
                        q.push_cell(r + 1, label);
                    } else {
                        // the corner of the column holding the rightmost box of this row
                        let col = rows[r].len().max(1);
                        let height = rows.iter().take_while(|row| row.len() >= col).count();
                        path.push((height, col));
                        q.add_label(height, col, label);
                    }
                    break;
                }
                Some(col) => {
                    let z = row[col];
                    let mut trial = rows.clone();
                    trial[r][col] = x;
                    if fits(&trial, r, col, x) {
                        rows[r][col] = x;
                    }
                    path.push((r + 1, col + 1));
                    x = z;
                    r += 1;
                }
            }
        }
        while rows.last().is_some_and(Vec::is_empty) {
            rows.pop();
        }
        if traced {
            trace.push(path);
        }
    }
    HeckeInsertion {
        p: Tableau::from_rows(rows).expect("insertion keeps a partition shape"),
        q,
        trace: traced.then_some(trace),
    }
}
