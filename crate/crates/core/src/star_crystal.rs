//! The ⋆-crystal on fully-commutative decreasing factorizations.

use crate::crystal::{Crystal, CrystalGraph};
use crate::error::{Error, Result};
use crate::factorization::DecreasingFactorization;
use crate::hecke::Letter;
use crate::mutation::Mutation;

/// Result of pairing `h^{i+1}` against `h^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    /// Letters of `h^{i+1}` in decreasing order with their partners in `h^i`.
    pub upper: Vec<(Letter, Option<Letter>)>,
    /// Letters of `h^i` in decreasing order, flagged when paired.
    pub lower: Vec<(Letter, bool)>,
}

impl Pairing {
    pub fn unpaired_upper(&self) -> impl Iterator<Item = Letter> + '_ {
        self.upper.iter().filter(|(_, p)| p.is_none()).map(|&(b, _)| b)
    }

    pub fn unpaired_lower(&self) -> impl Iterator<Item = Letter> + '_ {
        self.lower.iter().filter(|(_, p)| !p).map(|&(a, _)| a)
    }
}

fn check(f: &DecreasingFactorization, i: usize) -> Result<()> {
    if i == 0 || i >= f.m() {
        return Err(Error::Argument(format!("operator index {i} outside [1, {}]", f.m().saturating_sub(1))));
    }
    if !f.is_fully_commutative() {
        return Err(Error::Domain(format!("{f} is not fully commutative")));
    }
    Ok(())
}

pub(crate) fn pair_factors(upper: &[Letter], lower: &[Letter]) -> Pairing {
    // both factors are stored in decreasing order
    let mut used = vec![false; lower.len()];
    let mut out = Vec::with_capacity(upper.len());
    for &b in upper {
        // smallest unused a >= b: scan lower from its small end
        let partner = (0..lower.len()).rev().find(|&k| !used[k] && lower[k] >= b);
        if let Some(k) = partner {
            used[k] = true;
        }
        out.push((b, partner.map(|k| lower[k])));
    }
    Pairing { upper: out, lower: lower.iter().copied().zip(used).collect() }
}

pub fn pairing(f: &DecreasingFactorization, i: usize) -> Result<Pairing> {
    check(f, i)?;
    Ok(pair_factors(f.factor(i + 1), f.factor(i)))
}

fn insert_desc(v: &mut Vec<Letter>, x: Letter) {
    let at = v.partition_point(|&y| y > x);
    v.insert(at, x);
}

fn remove(v: &mut Vec<Letter>, x: Letter) {
    let at = v.iter().position(|&y| y == x).expect("letter present");
    v.remove(at);
}

/// `f⋆_i` without the full-commutativity check.
pub(crate) fn f_star_raw(f: &DecreasingFactorization, i: usize, mutation: Option<Mutation>) -> Option<DecreasingFactorization> {
    let p = pair_factors(f.factor(i + 1), f.factor(i));
    let x = p.unpaired_lower().next()?;
    let mut g = f.clone();
    let case1 = f.factor(i).contains(&(x + 1)) && f.factor(i + 1).contains(&(x + 1));
    if case1 && mutation != Some(Mutation::StarCase1) {
        remove(g.factor_mut(i), x + 1);
        insert_desc(g.factor_mut(i + 1), x);
    } else {
        if mutation == Some(Mutation::StarCase2) {
            return None;
        }
        remove(g.factor_mut(i), x);
        insert_desc(g.factor_mut(i + 1), x);
    }
    Some(g)
}

pub(crate) fn e_star_raw(f: &DecreasingFactorization, i: usize) -> Option<DecreasingFactorization> {
    let p = pair_factors(f.factor(i + 1), f.factor(i));
    let y = p.unpaired_upper().last()?;
    let mut g = f.clone();
    if y > 1 && f.factor(i).contains(&(y - 1)) && f.factor(i + 1).contains(&(y - 1)) {
        remove(g.factor_mut(i + 1), y - 1);
        insert_desc(g.factor_mut(i), y);
    } else {
        remove(g.factor_mut(i + 1), y);
        insert_desc(g.factor_mut(i), y);
    }
    Some(g)
}

pub fn f_star(f: &DecreasingFactorization, i: usize) -> Result<Option<DecreasingFactorization>> {
    check(f, i)?;
    Ok(f_star_raw(f, i, None))
}

pub fn e_star(f: &DecreasingFactorization, i: usize) -> Result<Option<DecreasingFactorization>> {
    check(f, i)?;
    Ok(e_star_raw(f, i))
}

/// `f⋆_i` with one case disabled; only for mutation testing.
pub fn f_star_mutated(f: &DecreasingFactorization, i: usize, mutation: Option<Mutation>) -> Result<Option<DecreasingFactorization>> {
    check(f, i)?;
    Ok(f_star_raw(f, i, mutation))
}

/// Number of unpaired letters of `h^i`.
pub fn phi(f: &DecreasingFactorization, i: usize) -> Result<usize> {
    Ok(pairing(f, i)?.unpaired_lower().count())
}

/// Number of unpaired letters of `h^{i+1}`.
pub fn epsilon(f: &DecreasingFactorization, i: usize) -> Result<usize> {
    Ok(pairing(f, i)?.unpaired_upper().count())
}

/// The ⋆-crystal of rank `m − 1` on `H^{m,⋆}`.
#[derive(Clone, Copy, Debug)]
pub struct StarCrystal {
    pub m: usize,
    pub mutation: Option<Mutation>,
}

impl StarCrystal {
    pub fn new(m: usize) -> Self {
        StarCrystal { m, mutation: None }
    }
}

impl Crystal for StarCrystal {
    type Node = DecreasingFactorization;

    fn rank(&self) -> usize {
        self.m.saturating_sub(1)
    }

    fn f(&self, x: &DecreasingFactorization, i: usize) -> Option<DecreasingFactorization> {
        f_star_raw(x, i, self.mutation)
    }

    fn e(&self, x: &DecreasingFactorization, i: usize) -> Option<DecreasingFactorization> {
        e_star_raw(x, i)
    }

    fn weight(&self, x: &DecreasingFactorization) -> Vec<i64> {
        x.weight().into_iter().map(|w| w as i64).collect()
    }
}

/// Component of `seed` in the ⋆-crystal.
pub fn crystal_graph(seed: &DecreasingFactorization) -> Result<CrystalGraph<DecreasingFactorization>> {
    if !seed.is_fully_commutative() {
        return Err(Error::Domain(format!("{seed} is not fully commutative")));
    }
    Ok(CrystalGraph::component(&StarCrystal::new(seed.m()), seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(s: &str) -> DecreasingFactorization {
        DecreasingFactorization::parse(s, None).unwrap()
    }

    #[test]
    fn equal_letters_pair() {
        let p = pair_factors(&[2], &[2]);
        assert_eq!(p.upper, vec![(2, Some(2))]);
        let p = pair_factors(&[], &[3, 1]);
        assert!(p.upper.is_empty());
        assert_eq!(p.unpaired_lower().count(), 2);
    }

    #[test]
    fn rejects_non_fully_commutative() {
        let f = fac("()(21)(32)(32)");
        assert!(matches!(f_star(&f, 1), Err(Error::Domain(_))));
        assert!(matches!(f_star(&fac("(1)(1)"), 2), Err(Error::Argument(_))));
    }

    #[test]
    fn phi_eps() {
        let f = fac("(7532)(621)(6)");
        assert_eq!(phi(&f, 1).unwrap(), 0);
        // one application of f⋆_2 leaves h^2 fully paired
        assert_eq!(phi(&f, 2).unwrap(), 1);
        let g = f_star(&f, 2).unwrap().unwrap();
        assert_eq!(f_star(&g, 2).unwrap(), None);
        assert_eq!(epsilon(&f, 1).unwrap(), 2);
        assert_eq!(epsilon(&f, 2).unwrap(), 2);
    }
}
