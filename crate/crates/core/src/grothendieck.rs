//! Stable Grothendieck polynomials in finitely many variables and their Schur expansions.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::for_each_factorization;
use crate::hecke::HeckeElement;
use crate::partition::{Partition, SkewShape};
use crate::star_crystal::f_star;
use crate::tableau::{semistandard_tableaux, set_valued_tableaux};

/// Sparse polynomial in `m` variables, keyed by exponent vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    m: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl Polynomial {
    pub fn zero(m: usize) -> Self {
        Polynomial { m, terms: BTreeMap::new() }
    }

    pub fn one(m: usize) -> Self {
        let mut p = Polynomial::zero(m);
        p.add_term(vec![0; m], 1);
        p
    }

    pub fn vars(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, i64> {
        &self.terms
    }

    pub fn coeff(&self, exp: &[u32]) -> i64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: i64) {
        assert_eq!(exp.len(), self.m, "exponent vector length");
        let v = self.coeff(&exp) + c;
        if v == 0 {
            self.terms.remove(&exp);
        } else {
            self.terms.insert(exp, v);
        }
    }

    pub fn add_scaled(&mut self, other: &Polynomial, c: i64) {
        for (e, &v) in &other.terms {
            self.add_term(e.clone(), c * v);
        }
    }

    /// The first transposition of variables that changes the polynomial, if any.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        for i in 0..self.m {
            for j in i + 1..self.m {
                let moved = self.terms.iter().any(|(e, &c)| {
                    let mut f = e.clone();
                    f.swap(i, j);
                    self.coeff(&f) != c
                });
                if moved {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry().is_none()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, &c) in self.terms.iter().rev() {
            let mono: String = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                .collect::<Vec<_>>()
                .join("*");
            let sign = match (c < 0, first) {
                (true, true) => "-",
                (true, false) => "- ",
                (false, true) => "",
                (false, false) => "+ ",
            };
            let abs = c.abs();
            let body = match (abs, mono.is_empty()) {
                (_, true) => abs.to_string(),
                (1, false) => mono,
                (_, false) => format!("{abs}*{mono}"),
            };
            write!(f, "{}{sign}{body}", if first { "" } else { " " })?;
            first = false;
        }
        Ok(())
    }
}

/// Polynomial graded by powers of β.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaPolynomial {
    m: usize,
    slices: BTreeMap<usize, Polynomial>,
}

impl BetaPolynomial {
    pub fn zero(m: usize) -> Self {
        BetaPolynomial { m, slices: BTreeMap::new() }
    }

    pub fn vars(&self) -> usize {
        self.m
    }

    pub fn add_term(&mut self, beta: usize, exp: Vec<u32>, c: i64) {
        let m = self.m;
        let s = self.slices.entry(beta).or_insert_with(|| Polynomial::zero(m));
        s.add_term(exp, c);
        if s.is_zero() {
            self.slices.remove(&beta);
        }
    }

    /// Coefficient of β^d; zero when absent.
    pub fn slice(&self, d: usize) -> Polynomial {
        self.slices.get(&d).cloned().unwrap_or_else(|| Polynomial::zero(self.m))
    }

    pub fn slices(&self) -> &BTreeMap<usize, Polynomial> {
        &self.slices
    }
}

/// ∑ β^d c_{d,μ} s_μ, truncated at `max_beta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaSchurSeries {
    pub vars: usize,
    pub max_beta: usize,
    pub coeffs: BTreeMap<usize, BTreeMap<Partition, i64>>,
}

impl BetaSchurSeries {
    pub fn new(vars: usize, max_beta: usize) -> Self {
        BetaSchurSeries { vars, max_beta, coeffs: BTreeMap::new() }
    }

    pub fn coeff(&self, d: usize, mu: &Partition) -> i64 {
        self.coeffs.get(&d).and_then(|s| s.get(mu)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, d: usize, mu: Partition, c: i64) {
        let s = self.coeffs.entry(d).or_default();
        let e = s.entry(mu.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            s.remove(&mu);
        }
        if s.is_empty() {
            self.coeffs.remove(&d);
        }
    }

    /// `(d, μ, c)` in increasing β-degree, partitions in decreasing lexicographic order.
    pub fn entries(&self) -> Vec<(usize, Partition, i64)> {
        self.coeffs
            .iter()
            .flat_map(|(&d, s)| s.iter().rev().map(move |(mu, &c)| (d, mu.clone(), c)))
            .collect()
    }
}

impl fmt::Display for BetaSchurSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .entries()
            .into_iter()
            .map(|(d, mu, c)| {
                let s = format!("s{}", mu.parts().iter().map(|p| p.to_string()).collect::<String>());
                let b = match d {
                    0 => String::new(),
                    1 => "β*".into(),
                    _ => format!("β^{d}*"),
                };
                if c == 1 { format!("{b}{s}") } else { format!("{c}*{b}{s}") }
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

fn exponent(weight: impl IntoIterator<Item = usize>) -> Vec<u32> {
    weight.into_iter().map(|k| k as u32).collect()
}

/// Generating function of semistandard tableaux of shape μ in `m` variables.
pub fn schur_poly(mu: &Partition, m: usize) -> Polynomial {
    let mut p = Polynomial::zero(m);
    if mu.len() > m {
        return p;
    }
    for t in semistandard_tableaux(&SkewShape::straight(mu.clone()), m) {
        p.add_term(exponent(t.weight(m)), 1);
    }
    p
}

/// ∑ β^{ex(h)} x^{wt(h)} over decreasing factorizations of `w` into `m` factors.
pub fn grothendieck_poly(w: &HeckeElement, m: usize, max_beta: usize) -> BetaPolynomial {
    let mut g = BetaPolynomial::zero(m);
    for_each_factorization(w, m, max_beta, |f| g.add_term(f.excess(), exponent(f.weight()), 1));
    g
}

/// ∑ β^{ex(T)} x^{wt(T)} over set-valued tableaux of `shape` with entries at most `m`.
pub fn svt_generating_function(shape: &SkewShape, m: usize, max_beta: usize) -> BetaPolynomial {
    let mut g = BetaPolynomial::zero(m);
    for t in set_valued_tableaux(shape, m) {
        if t.excess() <= max_beta {
            g.add_term(t.excess(), exponent(t.weight(m)), 1);
        }
    }
    g
}

/// The Grassmannian permutation of λ with its descent at ℓ(λ).
pub fn grassmannian(lambda: &Partition) -> HeckeElement {
    let d = lambda.len();
    let n = d + lambda.part(1);
    let mut perm: Vec<usize> = (1..=d).map(|i| i + lambda.part(d + 1 - i)).collect();
    let rest: Vec<usize> = (1..=n).filter(|v| !perm.contains(v)).collect();
    perm.extend(rest);
    HeckeElement::from_perm(perm).expect("a permutation")
}

/// Schur coefficients of a symmetric polynomial, by peeling the lexicographically largest term.
pub fn schur_expand(p: &Polynomial) -> Result<BTreeMap<Partition, i64>> {
    if let Some((i, j)) = p.asymmetry() {
        return Err(Error::Validation(format!("polynomial is not symmetric in x{i}, x{j}")));
    }
    let mut rest = p.clone();
    let mut out = BTreeMap::new();
    while let Some((e, &c)) = rest.terms.iter().next_back() {
        let mu = Partition::new(e.iter().map(|&k| k as usize).collect())
            .map_err(|_| Error::Validation(format!("leading exponent {e:?} is not a partition")))?;
        rest.add_scaled(&schur_poly(&mu, p.m), -c);
        out.insert(mu, c);
    }
    Ok(out)
}

/// Schur expansion of every β-slice of `g`.
pub fn beta_schur_expand(g: &BetaPolynomial, max_beta: usize) -> Result<BetaSchurSeries> {
    let mut s = BetaSchurSeries::new(g.m, max_beta);
    for (&d, p) in g.slices.range(..=max_beta) {
        for (mu, c) in schur_expand(p)? {
            s.add(d, mu, c);
        }
    }
    Ok(s)
}

/// Schur coefficients read off the ⋆-crystal: one s_μ per lowest-weight factorization of weight reverse(μ).
pub fn schur_coeffs_via_crystal(w: &HeckeElement, m: usize, max_beta: usize) -> Result<BetaSchurSeries> {
    if !w.is_fully_commutative() {
        return Err(Error::Domain("the ⋆-crystal needs a fully-commutative element".into()));
    }
    let mut s = BetaSchurSeries::new(m, max_beta);
    let mut failure = None;
    for_each_factorization(w, m, max_beta, |f| {
        if failure.is_some() {
            return;
        }
        let lowest = (1..m).all(|i| matches!(f_star(f, i), Ok(None)));
        if lowest {
            let wt = f.weight();
            if wt.windows(2).any(|p| p[0] > p[1]) {
                failure = Some(Error::Validation(format!("lowest weight {wt:?} of {f} is not antidominant")));
                return;
            }
            s.add(f.excess(), Partition::sorted(wt), 1);
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(s),
    }
}
