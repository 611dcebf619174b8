//! Words in the 0-Hecke monoid and their canonical permutations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u32;

/// A word in the generators `1..n-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WordJson", into = "WordJson")]
pub struct HeckeWord {
    n: usize,
    letters: Vec<Letter>,
}

#[derive(Serialize, Deserialize)]
struct WordJson {
    n: usize,
    letters: Vec<Letter>,
}

impl TryFrom<WordJson> for HeckeWord {
    type Error = Error;
    fn try_from(j: WordJson) -> Result<Self> {
        HeckeWord::new(j.n, j.letters)
    }
}

impl From<HeckeWord> for WordJson {
    fn from(w: HeckeWord) -> Self {
        WordJson { n: w.n, letters: w.letters }
    }
}

impl HeckeWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("alphabet bound n must be at least 1".into()));
        }
        if let Some(&l) = letters.iter().find(|&&l| l == 0 || l as usize >= n) {
            return Err(Error::Argument(format!("letter {l} outside [1, {}]", n - 1)));
        }
        Ok(HeckeWord { n, letters })
    }

    /// Uses the smallest bound that admits every letter.
    pub fn inferred(letters: Vec<Letter>) -> Result<Self> {
        let n = letters.iter().copied().max().unwrap_or(0) as usize + 1;
        HeckeWord::new(n, letters)
    }

    /// Parses "13242" (one digit per letter) or "1 3 2 4 2" / "1,3,2".
    /// With `n = None` the bound is inferred from the largest letter.
    pub fn parse(s: &str, n: Option<usize>) -> Result<Self> {
        let letters = parse_letters(s.trim())?;
        match n {
            Some(n) => HeckeWord::new(n, letters),
            None => HeckeWord::inferred(letters),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn reversed(&self) -> HeckeWord {
        let mut letters = self.letters.clone();
        letters.reverse();
        HeckeWord { n: self.n, letters }
    }

    pub fn concat(&self, other: &HeckeWord) -> Result<HeckeWord> {
        check_same_n(self.n, other.n)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(HeckeWord { n: self.n, letters })
    }

    pub fn eval(&self) -> HeckeElement {
        eval(self)
    }

    pub fn is_reduced(&self) -> bool {
        self.eval().length() == self.len()
    }
}

pub(crate) fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let separated = s.contains(|c: char| c.is_whitespace() || c == ',');
    if separated {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<Letter>().map_err(|_| Error::Parse(format!("bad letter {t:?}"))))
            .collect()
    } else {
        s.chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad letter {c:?}"))))
            .collect()
    }
}

/// Digits run together when every letter is a single digit, otherwise spaces.
pub(crate) fn format_letters(letters: &[Letter], sep_if_needed: &str) -> String {
    if letters.iter().all(|&l| l < 10) {
        letters.iter().map(|l| l.to_string()).collect()
    } else {
        letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(sep_if_needed)
    }
}

impl fmt::Display for HeckeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.letters, " "))
    }
}

pub(crate) fn check_same_n(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Argument(format!("alphabet bounds differ: {a} vs {b}")));
    }
    Ok(())
}

/// A permutation of `1..=n` in one-line notation, the canonical form of a
/// 0-Hecke word under the Demazure product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HeckeElement {
    perm: Vec<u8>,
}

impl HeckeElement {
    pub fn identity(n: usize) -> Self {
        assert!(n <= 255, "rank too large");
        HeckeElement { perm: (1..=n as u8).collect() }
    }

    pub fn from_perm(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        if n > 255 {
            return Err(Error::Argument("rank too large".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &perm {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Argument(format!("{perm:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(HeckeElement { perm: perm.into_iter().map(|v| v as u8).collect() })
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> Vec<usize> {
        self.perm.iter().map(|&v| v as usize).collect()
    }

    /// Inversion count.
    pub fn length(&self) -> usize {
        let p = &self.perm;
        let mut inv = 0;
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                if p[a] > p[b] {
                    inv += 1;
                }
            }
        }
        inv
    }

    pub fn demazure_apply(&self, i: usize) -> Result<Self> {
        if i == 0 || i >= self.n() {
            return Err(Error::Argument(format!("generator {i} outside [1, {}]", self.n().saturating_sub(1))));
        }
        let mut e = self.clone();
        e.apply_in_place(i);
        Ok(e)
    }

    /// Right multiplication by s_i when it raises length. `i` must be in range.
    pub(crate) fn apply_in_place(&mut self, i: usize) {
        if self.perm[i - 1] < self.perm[i] {
            self.perm.swap(i - 1, i);
        }
    }

    pub fn is_fully_commutative(&self) -> bool {
        // 321-avoidance: some middle entry with a larger entry before and a smaller one after.
        let p = &self.perm;
        let n = p.len();
        for j in 1..n.saturating_sub(1) {
            let bigger_before = p[..j].iter().any(|&a| a > p[j]);
            let smaller_after = p[j + 1..].iter().any(|&c| c < p[j]);
            if bigger_before && smaller_after {
                return false;
            }
        }
        true
    }

    /// A reduced word for the element (lexicographically first by right descents).
    pub fn reduced_word(&self) -> HeckeWord {
        let mut p = self.perm.clone();
        let mut rev = Vec::new();
        while let Some(i) = (1..p.len()).find(|&i| p[i - 1] > p[i]) {
            p.swap(i - 1, i);
            rev.push(i as Letter);
        }
        rev.reverse();
        HeckeWord { n: self.n().max(1), letters: rev }
    }

    /// Bruhat order by the rank-matrix criterion.
    pub fn bruhat_le(&self, other: &HeckeElement) -> bool {
        let n = self.n();
        if n != other.n() {
            return false;
        }
        for j in 1..=n as u8 {
            let (mut a, mut b) = (0, 0);
            for i in 0..n {
                if self.perm[i] >= j {
                    a += 1;
                }
                if other.perm[i] >= j {
                    b += 1;
                }
                if a > b {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.perm.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn demazure_apply(e: &HeckeElement, i: usize) -> Result<HeckeElement> {
    e.demazure_apply(i)
}

pub fn eval(w: &HeckeWord) -> HeckeElement {
    eval_letters(w.n, &w.letters)
}

pub(crate) fn eval_letters(n: usize, letters: &[Letter]) -> HeckeElement {
    let mut e = HeckeElement::identity(n);
    for &l in letters {
        e.apply_in_place(l as usize);
    }
    e
}

pub fn is_fully_commutative(e: &HeckeElement) -> bool {
    e.is_fully_commutative()
}

pub fn equivalent(a: &HeckeWord, b: &HeckeWord) -> Result<bool> {
    check_same_n(a.n, b.n)?;
    Ok(eval(a) == eval(b))
}
