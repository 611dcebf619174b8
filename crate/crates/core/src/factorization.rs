//! Decreasing factorizations, Hecke biwords and bounded enumeration.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hecke::{eval_letters, format_letters, parse_letters, HeckeElement, HeckeWord, Letter};

/// `h^m ... h^1`, each factor strictly decreasing. Storage order is `h^m` first;
/// accessors take the superscript index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FactorizationJson", into = "FactorizationJson")]
pub struct DecreasingFactorization {
    n: usize,
    factors: Vec<Vec<Letter>>,
}

#[derive(Serialize, Deserialize)]
struct FactorizationJson {
    n: usize,
    factors: Vec<Vec<Letter>>,
}

impl TryFrom<FactorizationJson> for DecreasingFactorization {
    type Error = Error;
    fn try_from(j: FactorizationJson) -> Result<Self> {
        DecreasingFactorization::new(j.n, j.factors)
    }
}

impl From<DecreasingFactorization> for FactorizationJson {
    fn from(f: DecreasingFactorization) -> Self {
        FactorizationJson { n: f.n, factors: f.factors }
    }
}

impl DecreasingFactorization {
    /// `factors[0]` is `h^m`.
    pub fn new(n: usize, factors: Vec<Vec<Letter>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("alphabet bound n must be at least 1".into()));
        }
        for (pos, h) in factors.iter().enumerate() {
            let idx = factors.len() - pos;
            if let Some(&l) = h.iter().find(|&&l| l == 0 || l as usize >= n) {
                return Err(Error::Validation(format!("letter {l} of h^{idx} outside [1, {}]", n - 1)));
            }
            if h.windows(2).any(|p| p[0] <= p[1]) {
                return Err(Error::Validation(format!("factor h^{idx} is not strictly decreasing")));
            }
        }
        Ok(DecreasingFactorization { n, factors })
    }

    pub fn inferred(factors: Vec<Vec<Letter>>) -> Result<Self> {
        let n = factors.iter().flatten().copied().max().unwrap_or(0) as usize + 1;
        DecreasingFactorization::new(n, factors)
    }

    pub fn empty(n: usize, m: usize) -> Self {
        DecreasingFactorization { n, factors: vec![Vec::new(); m] }
    }

    /// Parses the usual notation, e.g. `(7532)(621)(6)` or `(21)()(\;)`.
    /// Inside a factor letters may be run together or separated by spaces/commas.
    pub fn parse(s: &str, n: Option<usize>) -> Result<Self> {
        let s = s.trim();
        let mut factors = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let r = rest.trim_start();
            if r.is_empty() {
                break;
            }
            let Some(body) = r.strip_prefix('(') else {
                return Err(Error::Parse(format!("expected '(' in {s:?}")));
            };
            let Some(close) = body.find(')') else {
                return Err(Error::Parse(format!("unclosed factor in {s:?}")));
            };
            let inner = body[..close].trim();
            let inner = if inner == r"\;" { "" } else { inner };
            factors.push(parse_letters(inner)?);
            rest = &body[close + 1..];
        }
        if factors.is_empty() {
            return Err(Error::Parse("a factorization needs at least one factor".into()));
        }
        match n {
            Some(n) => DecreasingFactorization::new(n, factors),
            None => DecreasingFactorization::inferred(factors),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.factors.len()
    }

    /// `h^i` for `1 <= i <= m`.
    pub fn factor(&self, i: usize) -> &[Letter] {
        &self.factors[self.factors.len() - i]
    }

    pub(crate) fn factor_mut(&mut self, i: usize) -> &mut Vec<Letter> {
        let m = self.factors.len();
        &mut self.factors[m - i]
    }

    /// Factors in written order, `h^m` first.
    pub fn factors(&self) -> &[Vec<Letter>] {
        &self.factors
    }

    /// `(len h^1, ..., len h^m)`.
    pub fn weight(&self) -> Vec<usize> {
        self.factors.iter().rev().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.factors.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn flatten(&self) -> HeckeWord {
        HeckeWord::new(self.n, self.factors.concat()).expect("letters validated")
    }

    pub fn element(&self) -> HeckeElement {
        eval_letters(self.n, &self.factors.concat())
    }

    pub fn excess(&self) -> usize {
        self.len() - self.element().length()
    }

    pub fn is_fully_commutative(&self) -> bool {
        self.element().is_fully_commutative()
    }

    pub fn to_biword(&self) -> HeckeBiword {
        let m = self.m();
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        for (pos, h) in self.factors.iter().enumerate() {
            for &l in h {
                top.push(m - pos);
                bottom.push(l);
            }
        }
        HeckeBiword { n: self.n, top, bottom }
    }

    pub fn from_biword(b: &HeckeBiword, m: usize) -> Result<Self> {
        if let Some(&k) = b.top.iter().find(|&&k| k == 0 || k > m) {
            return Err(Error::Validation(format!("factor index {k} outside [1, {m}]")));
        }
        let mut factors = vec![Vec::new(); m];
        for (&k, &l) in b.top.iter().zip(&b.bottom) {
            factors[m - k].push(l);
        }
        DecreasingFactorization::new(b.n, factors)
    }

    /// Same factors with a different alphabet bound.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        DecreasingFactorization::new(n, self.factors.clone())
    }
}

impl fmt::Display for DecreasingFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for h in &self.factors {
            write!(f, "({})", format_letters(h, " "))?;
        }
        Ok(())
    }
}

/// A decreasing Hecke biword: `top` weakly decreasing factor indices, `bottom`
/// strictly decreasing inside each block of equal top values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeckeBiword {
    n: usize,
    top: Vec<usize>,
    bottom: Vec<Letter>,
}

impl HeckeBiword {
    pub fn new(n: usize, top: Vec<usize>, bottom: Vec<Letter>) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::Validation("top and bottom rows differ in length".into()));
        }
        if n == 0 {
            return Err(Error::Argument("alphabet bound n must be at least 1".into()));
        }
        if let Some(&l) = bottom.iter().find(|&&l| l == 0 || l as usize >= n) {
            return Err(Error::Validation(format!("letter {l} outside [1, {}]", n - 1)));
        }
        if top.contains(&0) {
            return Err(Error::Validation("factor indices start at 1".into()));
        }
        for p in 0..top.len().saturating_sub(1) {
            if top[p] < top[p + 1] {
                return Err(Error::Validation(format!("top row increases at position {}", p + 1)));
            }
            if top[p] == top[p + 1] && bottom[p] <= bottom[p + 1] {
                return Err(Error::Validation(format!(
                    "bottom row not strictly decreasing within block {} at position {}",
                    top[p],
                    p + 1
                )));
            }
        }
        Ok(HeckeBiword { n, top, bottom })
    }

    /// Two lines of integers, top row first.
    pub fn parse(s: &str, n: Option<usize>) -> Result<Self> {
        let lines: Vec<&str> = s.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        if lines.len() != 2 {
            return Err(Error::Parse("a biword is two lines: top row then bottom row".into()));
        }
        let top: Vec<usize> = parse_letters(lines[0])?.into_iter().map(|k| k as usize).collect();
        let bottom = parse_letters(lines[1])?;
        let n = n.unwrap_or(bottom.iter().copied().max().unwrap_or(0) as usize + 1);
        HeckeBiword::new(n, top, bottom)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top(&self) -> &[usize] {
        &self.top
    }

    pub fn bottom(&self) -> &[Letter] {
        &self.bottom
    }

    pub fn len(&self) -> usize {
        self.top.len()
    }

    pub fn is_empty(&self) -> bool {
        self.top.is_empty()
    }

    pub fn word(&self) -> HeckeWord {
        HeckeWord::new(self.n, self.bottom.clone()).expect("letters validated")
    }
}

impl fmt::Display for HeckeBiword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top: Vec<String> = self.top.iter().map(|k| k.to_string()).collect();
        let bottom: Vec<String> = self.bottom.iter().map(|k| k.to_string()).collect();
        write!(f, "{}\n{}", top.join(" "), bottom.join(" "))
    }
}

pub fn weight(f: &DecreasingFactorization) -> Vec<usize> {
    f.weight()
}

pub fn excess(f: &DecreasingFactorization) -> usize {
    f.excess()
}

pub fn to_biword(f: &DecreasingFactorization) -> HeckeBiword {
    f.to_biword()
}

pub fn from_biword(b: &HeckeBiword, m: usize) -> Result<DecreasingFactorization> {
    DecreasingFactorization::from_biword(b, m)
}

/// Every strictly decreasing subset of `1..n-1`, including the empty one.
pub fn decreasing_factors(n: usize) -> Vec<Vec<Letter>> {
    let r = n.saturating_sub(1);
    (0u64..1 << r)
        .map(|mask| (1..=r as Letter).rev().filter(|&l| mask >> (l - 1) & 1 == 1).collect())
        .collect()
}

/// All factorizations of `w` into `m` decreasing factors with excess at most
/// `max_excess`, in a fixed deterministic order.
pub fn enumerate(w: &HeckeElement, m: usize, max_excess: usize) -> Vec<DecreasingFactorization> {
    let mut out = Vec::new();
    for_each_factorization(w, m, max_excess, |f| out.push(f.clone()));
    out
}

/// Visitor form of [`enumerate`]. Search states are memoized on
/// (remaining factors, Demazure prefix, excess so far).
pub fn for_each_factorization(
    w: &HeckeElement,
    m: usize,
    max_excess: usize,
    mut visit: impl FnMut(&DecreasingFactorization),
) {
    let n = w.n();
    let mut search = Search {
        target: w.clone(),
        target_len: w.length(),
        max_excess,
        choices: decreasing_factors(n),
        memo: HashMap::new(),
    };
    let mut current = DecreasingFactorization::empty(n, m);
    search.walk(m, HeckeElement::identity(n), 0, &mut current, &mut visit);
}

struct Search {
    target: HeckeElement,
    target_len: usize,
    max_excess: usize,
    choices: Vec<Vec<Letter>>,
    memo: HashMap<(usize, HeckeElement, usize), bool>,
}

impl Search {
    fn step(&self, e: &HeckeElement, letters: &[Letter]) -> HeckeElement {
        let mut e = e.clone();
        for &l in letters {
            e.apply_in_place(l as usize);
        }
        e
    }

    fn admissible(&self, e: &HeckeElement, excess: usize) -> bool {
        excess <= self.max_excess && e.length() <= self.target_len && e.bruhat_le(&self.target)
    }

    fn feasible(&mut self, remaining: usize, e: &HeckeElement, excess: usize) -> bool {
        if remaining == 0 {
            return *e == self.target;
        }
        let key = (remaining, e.clone(), excess);
        if let Some(&ans) = self.memo.get(&key) {
            return ans;
        }
        let mut ans = false;
        for c in 0..self.choices.len() {
            let next = self.step(e, &self.choices[c]);
            let ex = excess + self.choices[c].len() - (next.length() - e.length());
            if self.admissible(&next, ex) && self.feasible(remaining - 1, &next, ex) {
                ans = true;
                break;
            }
        }
        self.memo.insert(key, ans);
        ans
    }

    fn walk(
        &mut self,
        remaining: usize,
        e: HeckeElement,
        excess: usize,
        current: &mut DecreasingFactorization,
        visit: &mut impl FnMut(&DecreasingFactorization),
    ) {
        if remaining == 0 {
            if e == self.target {
                visit(current);
            }
            return;
        }
        let m = current.m();
        for c in 0..self.choices.len() {
            let next = self.step(&e, &self.choices[c]);
            let ex = excess + self.choices[c].len() - (next.length() - e.length());
            if !self.admissible(&next, ex) || !self.feasible(remaining - 1, &next, ex) {
                continue;
            }
            current.factors[m - remaining] = self.choices[c].clone();
            self.walk(remaining - 1, next, ex, current, visit);
        }
        current.factors[m - remaining].clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(s: &str) -> DecreasingFactorization {
        DecreasingFactorization::parse(s, None).unwrap()
    }

    #[test]
    fn weights_and_excess() {
        assert_eq!(fac("(7532)(621)(6)").weight(), vec![1, 3, 4]);
        assert_eq!(fac("(21)(41)").weight(), vec![2, 2]);
        assert_eq!(fac("(21)(41)").excess(), 1);
        assert_eq!(DecreasingFactorization::parse("(2)(21)(2)", Some(3)).unwrap().excess(), 1);
        assert_eq!(DecreasingFactorization::empty(3, 3).weight(), vec![0, 0, 0]);
    }

    #[test]
    fn parse_and_print() {
        let f = fac(r"(1)(2)(31)(\;)(32)");
        assert_eq!(f.to_string(), "(1)(2)(31)()(32)");
        assert_eq!(f.m(), 5);
        assert_eq!(f.factor(1), &[3, 2]);
        assert!(DecreasingFactorization::parse("(12)", None).is_err());
        assert!(DecreasingFactorization::parse("(1", None).is_err());
    }

    #[test]
    fn biword_examples() {
        let b = fac("(1)(2)(31)()(32)").to_biword();
        assert_eq!(b.top(), &[5, 4, 3, 3, 1, 1]);
        assert_eq!(b.bottom(), &[1, 2, 3, 1, 3, 2]);
        let b = fac("(21)(41)").to_biword();
        assert_eq!(b.top(), &[2, 2, 1, 1]);
        assert_eq!(b.bottom(), &[2, 1, 4, 1]);
        assert_eq!(DecreasingFactorization::from_biword(&b, 2).unwrap(), fac("(21)(41)"));
        assert!(HeckeBiword::new(5, vec![1, 2], vec![1, 1]).is_err());
        assert!(HeckeBiword::new(5, vec![2, 2], vec![1, 3]).is_err());
    }

    #[test]
    fn enumerate_small() {
        let w = HeckeWord::parse("1", Some(3)).unwrap().eval();
        let got: Vec<String> = enumerate(&w, 2, 1).iter().map(|f| f.to_string()).collect();
        assert_eq!(got.len(), 3);
        for s in ["(1)()", "()(1)", "(1)(1)"] {
            assert!(got.contains(&s.to_string()), "{s}");
        }
        let id = HeckeElement::identity(4);
        assert_eq!(enumerate(&id, 3, 0), vec![DecreasingFactorization::empty(4, 3)]);
    }

    #[test]
    fn nonlocality_pair() {
        let w = HeckeWord::parse("12132", Some(4)).unwrap().eval();
        let got: Vec<String> = enumerate(&w, 4, 1)
            .into_iter()
            .filter(|f| f.weight() == vec![2, 2, 2, 0])
            .map(|f| f.to_string())
            .collect();
        assert_eq!(got.len(), 2);
        assert!(got.contains(&"()(21)(21)(32)".to_string()));
        assert!(got.contains(&"()(21)(32)(32)".to_string()));
    }
}
