//! A crystal on all decreasing factorizations in the 0-Hecke monoid on three strands,
//! fully commutative or not.

use serde::Serialize;

use crate::crystal::{Crystal, CrystalGraph};
use crate::error::{Error, Result};
use crate::factorization::DecreasingFactorization;
use crate::hecke::Letter;

/// Outcome of the pairing process: `counts[k]` is the number of pairs in
/// h^k ... h^1 and `pairs` lists `((k, a), (j, b))` with letter a of h^k paired to letter b of h^j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCounter {
    pub counts: Vec<usize>,
    pub pairs: Vec<((usize, Letter), (usize, Letter))>,
}

impl PairCounter {
    /// p([j, k]) for 1 ≤ j ≤ k + 1.
    pub fn between(&self, j: usize, k: usize) -> usize {
        self.counts[k] - self.counts[j - 1]
    }
}

fn check(h: &DecreasingFactorization) -> Result<()> {
    if h.n() > 3 {
        return Err(Error::Domain(format!("this crystal is defined for n = 3, got n = {}", h.n())));
    }
    Ok(())
}

pub fn pairing3(h: &DecreasingFactorization) -> Result<PairCounter> {
    check(h)?;
    let m = h.m();
    let mut counts = vec![0; m + 1];
    // unpaired[j] holds the still unpaired letters of h^j
    let mut unpaired: Vec<Vec<Letter>> = vec![Vec::new(); m + 1];
    let mut pairs = Vec::new();
    for k in 1..=m {
        let prev = counts[k - 1];
        counts[k] = prev;
        match h.factor(k) {
            [] => {}
            [2, 1] => {
                pairs.push(((k, 2), (k, 1)));
                counts[k] = prev + 1;
            }
            &[me] => {
                unpaired[k].push(me);
                let gate = if me == 2 { prev % 2 == 0 } else { prev % 2 == 1 };
                if !gate {
                    continue;
                }
                // leftmost unpaired letter in h^{k-1} ... h^1
                let Some(j) = (1..k).rev().find(|&j| !unpaired[j].is_empty()) else { continue };
                let other = unpaired[j][0];
                let inner = counts[k - 1] - counts[j];
                let ok = if other != me { inner % 2 == 0 } else { inner % 2 == 1 };
                if ok {
                    unpaired[j].remove(0);
                    unpaired[k].clear();
                    pairs.push(((k, me), (j, other)));
                    counts[k] = prev + 1;
                }
            }
            other => unreachable!("factor {other:?} on three strands"),
        }
    }
    Ok(PairCounter { counts, pairs })
}

/// The table for f_i on (h^{i+1}, h^i) given the parity of p([1, i−1]).
fn f_table(upper: &[Letter], lower: &[Letter], odd: bool) -> Option<(Vec<Letter>, Vec<Letter>)> {
    let out = |a: &[Letter], b: &[Letter]| Some((a.to_vec(), b.to_vec()));
    match (upper, lower) {
        ([2, 1], _) | (_, []) => None,
        (a, b) if a == b => None,
        ([1], [2, 1]) => out(&[2, 1], &[2]),
        ([2], [2, 1]) => out(&[2, 1], &[1]),
        ([], [x]) => out(&[*x], &[]),
        ([], [2, 1]) if odd => out(&[1], &[2]),
        ([], [2, 1]) => out(&[2], &[1]),
        ([1], [2]) if odd => out(&[2, 1], &[]),
        ([2], [1]) if !odd => out(&[2, 1], &[]),
        _ => None,
    }
}

fn e_table(upper: &[Letter], lower: &[Letter], odd: bool) -> Option<(Vec<Letter>, Vec<Letter>)> {
    const FACTORS: [&[Letter]; 4] = [&[], &[1], &[2], &[2, 1]];
    FACTORS.iter().flat_map(|a| FACTORS.iter().map(move |b| (*a, *b))).find_map(|(a, b)| {
        let (x, y) = f_table(a, b, odd)?;
        (x == upper && y == lower).then(|| (a.to_vec(), b.to_vec()))
    })
}

fn apply(
    h: &DecreasingFactorization,
    i: usize,
    table: fn(&[Letter], &[Letter], bool) -> Option<(Vec<Letter>, Vec<Letter>)>,
) -> Result<Option<DecreasingFactorization>> {
    if i == 0 || i >= h.m() {
        return Err(Error::Argument(format!("operator index {i} outside 1..{}", h.m())));
    }
    let odd = pairing3(h)?.counts[i - 1] % 2 == 1;
    let Some((upper, lower)) = table(h.factor(i + 1), h.factor(i), odd) else { return Ok(None) };
    let mut g = h.clone();
    *g.factor_mut(i + 1) = upper;
    *g.factor_mut(i) = lower;
    Ok(Some(g))
}

pub fn f3(h: &DecreasingFactorization, i: usize) -> Result<Option<DecreasingFactorization>> {
    apply(h, i, f_table)
}

pub fn e3(h: &DecreasingFactorization, i: usize) -> Result<Option<DecreasingFactorization>> {
    apply(h, i, e_table)
}

#[derive(Clone, Copy, Debug)]
pub struct N3Crystal {
    pub m: usize,
}

impl Crystal for N3Crystal {
    type Node = DecreasingFactorization;

    fn rank(&self) -> usize {
        self.m.saturating_sub(1)
    }

    fn f(&self, h: &DecreasingFactorization, i: usize) -> Option<DecreasingFactorization> {
        f3(h, i).ok().flatten()
    }

    fn e(&self, h: &DecreasingFactorization, i: usize) -> Option<DecreasingFactorization> {
        e3(h, i).ok().flatten()
    }

    fn weight(&self, h: &DecreasingFactorization) -> Vec<i64> {
        h.weight().into_iter().map(|k| k as i64).collect()
    }
}

/// Every factorization on three strands with `m` factors and exactly `letters` letters.
pub fn factorizations_with_letters(m: usize, letters: usize) -> Vec<DecreasingFactorization> {
    const FACTORS: [&[Letter]; 4] = [&[], &[1], &[2], &[2, 1]];
    let mut out = Vec::new();
    let mut idx = vec![0usize; m];
    loop {
        if idx.iter().map(|&k| FACTORS[k].len()).sum::<usize>() == letters {
            let factors = idx.iter().map(|&k| FACTORS[k].to_vec()).collect();
            out.push(DecreasingFactorization::new(3, factors).expect("valid factors"));
        }
        let Some(pos) = idx.iter().rposition(|&k| k < 3) else { break };
        idx[pos] += 1;
        idx[pos + 1..].fill(0);
    }
    out
}

/// The full crystal graph on factorizations with `m` factors and exactly `letters` letters.
pub fn crystal_graph(m: usize, letters: usize) -> CrystalGraph<DecreasingFactorization> {
    let crystal = N3Crystal { m };
    let nodes = factorizations_with_letters(m, letters);
    let mut edges = Vec::new();
    for (s, h) in nodes.iter().enumerate() {
        for i in 1..m {
            if let Some(g) = crystal.f(h, i) {
                let d = nodes.iter().position(|x| *x == g).expect("f keeps the letter count");
                edges.push((s, d, i));
            }
        }
    }
    let weights = nodes.iter().map(|h| crystal.weight(h)).collect();
    CrystalGraph::from_parts(crystal.rank(), nodes, weights, edges)
}
