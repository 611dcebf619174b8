use std::collections::{BTreeSet, VecDeque};

use crate::error::Result;
use crate::hecke::{check_same_n, HeckeWord, Letter};

fn moves(a: Letter, b: Letter, c: Letter) -> Vec<[Letter; 3]> {
    let mut out = Vec::new();
    // Knuth: xyz ~ yxz and zxy ~ zyx for x < z < y
    if a.min(b) < c && c < a.max(b) {
        out.push([b, a, c]);
    }
    if b.min(c) < a && a < b.max(c) {
        out.push([a, c, b]);
    }
    // weak Knuth, for y > x + 1: xyy ~ yxy and xxy ~ xyx
    let far = |x: Letter, y: Letter| y > x + 1;
    if b == c && far(a, b) {
        out.push([b, a, b]);
    }
    if a == c && far(b, a) {
        out.push([b, a, a]);
    }
    if a == b && far(a, c) {
        out.push([a, c, a]);
    }
    if a == c && far(a, b) {
        out.push([a, a, b]);
    }
    // Hecke: xxy ~ xyy for y = x + 1
    if a == b && c == a + 1 {
        out.push([a, c, c]);
    }
    if b == c && b == a + 1 {
        out.push([a, a, b]);
    }
    out
}

/// Words one micro-move away from `w`.
pub fn micro_neighbours(w: &HeckeWord) -> Vec<HeckeWord> {
    let l = w.letters();
    let mut out = BTreeSet::new();
    for i in 0..l.len().saturating_sub(2) {
        for t in moves(l[i], l[i + 1], l[i + 2]) {
            let mut v = l.to_vec();
            v[i..i + 3].copy_from_slice(&t);
            out.insert(v);
        }
    }
    out.into_iter()
        .map(|v| HeckeWord::new(w.n(), v).expect("same letters"))
        .collect()
}

/// Equivalence class of `w` under micro-moves, sorted.
pub fn micro_class(w: &HeckeWord) -> Vec<HeckeWord> {
    let mut seen = BTreeSet::from([w.letters().to_vec()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(u) = queue.pop_front() {
        for v in micro_neighbours(&u) {
            if seen.insert(v.letters().to_vec()) {
                queue.push_back(v);
            }
        }
    }
    seen.into_iter()
        .map(|v| HeckeWord::new(w.n(), v).expect("same letters"))
        .collect()
}

pub fn micro_equivalent(a: &HeckeWord, b: &HeckeWord) -> Result<bool> {
    check_same_n(a.n(), b.n())?;
    if a.len() != b.len() {
        return Ok(false);
    }
    Ok(micro_class(a).iter().any(|w| w == b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_of_13242() {
        let w = HeckeWord::parse("13242", None).unwrap();
        let class: Vec<String> = micro_class(&w)
            .iter()
            .map(|u| u.letters().iter().map(|x| x.to_string()).collect())
            .collect();
        assert_eq!(class, ["13224", "13242", "13422", "31124", "31224", "31242"]);
    }
}
