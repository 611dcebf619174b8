//! Exhaustive checks over bounded instance spaces.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::crystal::{Crystal, CrystalGraph};
use crate::error::{Error, Result};
use crate::factorization::{enumerate, DecreasingFactorization};
use crate::grothendieck::{
    beta_schur_expand, grassmannian, grothendieck_poly, schur_coeffs_via_crystal, schur_poly, svt_generating_function,
    BetaSchurSeries,
};
use crate::hecke::{eval_letters, HeckeElement, HeckeWord, Letter};
use crate::insertion::{hecke_insert, insert_rows, micro_class, micro_equivalent, star_insert_mutated, star_inverse};
use crate::local_crystal_n3::{factorizations_with_letters, N3Crystal};
use crate::mutation::Mutation;
use crate::partition::{partitions, skew_shapes, Partition, SkewShape};
use crate::residue::res;
use crate::star_crystal::{e_star_raw, f_star_raw, pairing, StarCrystal};
use crate::svt_crystal::{e_svt_raw, f_ssyt, f_svt_raw, SvtCrystal};
use crate::tableau::{semistandard_tableaux, set_valued_tableaux, t_mu, SetValuedTableau, Tableau, TableauKind};
use crate::uncrowding::{star_tilde_with_inner, uncrowd};

/// Size limits of an instance space. Which fields matter depends on the suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// permutations of [n]
    pub n: usize,
    /// number of factors, or the largest tableau entry
    pub m: usize,
    /// letters in a factorization or word
    pub length: usize,
    /// cells of a tableau shape
    pub cells: usize,
    /// excess, or β-degree
    pub excess: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// f and e on set-valued tableaux commute with the residue map.
    ResidueIntertwines,
    /// Hecke insertion of res(T) records T, for straight shapes.
    HeckeRecording,
    /// ⋆-insertion is a bijection onto valid (P, Q) pairs.
    StarBijection,
    /// Micro-equivalent words share their insertion tableau.
    MicroInvariance,
    /// f⋆ and e⋆ stay inside a micro-move class.
    MicroCrystal,
    /// ⋆-insertion intertwines f⋆ with f on recording tableaux and fixes P.
    RecordingIntertwines,
    /// Shape and insertion tableau of lowest-weight factorizations.
    LowestWeight,
    /// Local structure around the letter moved by f⋆.
    SideConditions,
    /// Modified ⋆-insertion recovers the uncrowded tableau.
    UncrowdCompatible,
    /// Uncrowding intertwines the two crystals.
    UncrowdIntertwines,
    /// Stembridge axioms and characters on the ⋆-crystal.
    StembridgeStar,
    /// Stembridge axioms and characters on set-valued tableaux.
    StembridgeSvt,
    /// Stembridge axioms and characters on the three-strand crystal.
    StembridgeN3,
    /// Fully-commutative elements are counted by Catalan numbers.
    Catalan,
    /// Schur coefficients from enumeration agree with lowest-weight counts.
    DualPipeline,
    /// Set-valued tableaux and factorizations of the Grassmannian element agree.
    Grassmannian,
    /// Highest-weight set-valued tableaux give the Schur coefficients.
    HighestWeightSvt,
}

impl Suite {
    pub const ALL: [Suite; 17] = [
        Suite::ResidueIntertwines,
        Suite::HeckeRecording,
        Suite::StarBijection,
        Suite::MicroInvariance,
        Suite::MicroCrystal,
        Suite::RecordingIntertwines,
        Suite::LowestWeight,
        Suite::SideConditions,
        Suite::UncrowdCompatible,
        Suite::UncrowdIntertwines,
        Suite::StembridgeStar,
        Suite::StembridgeSvt,
        Suite::StembridgeN3,
        Suite::Catalan,
        Suite::DualPipeline,
        Suite::Grassmannian,
        Suite::HighestWeightSvt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ResidueIntertwines => "residue-intertwines",
            Suite::HeckeRecording => "hecke-recording",
            Suite::StarBijection => "star-bijection",
            Suite::MicroInvariance => "micro-invariance",
            Suite::MicroCrystal => "micro-crystal",
            Suite::RecordingIntertwines => "recording-intertwines",
            Suite::LowestWeight => "lowest-weight",
            Suite::SideConditions => "side-conditions",
            Suite::UncrowdCompatible => "uncrowd-compatible",
            Suite::UncrowdIntertwines => "uncrowd-intertwines",
            Suite::StembridgeStar => "stembridge-star",
            Suite::StembridgeSvt => "stembridge-svt",
            Suite::StembridgeN3 => "stembridge-n3",
            Suite::Catalan => "catalan",
            Suite::DualPipeline => "dual-pipeline",
            Suite::Grassmannian => "grassmannian",
            Suite::HighestWeightSvt => "highest-weight-svt",
        }
    }

    pub fn default_bounds(self) -> Bounds {
        let b = |n, m, length, cells, excess| Bounds { n, m, length, cells, excess };
        match self {
            Suite::ResidueIntertwines | Suite::StembridgeSvt => b(0, 3, 0, 4, 0),
            Suite::HeckeRecording => b(0, 3, 0, 5, 0),
            Suite::StarBijection
            | Suite::MicroInvariance
            | Suite::MicroCrystal
            | Suite::RecordingIntertwines
            | Suite::LowestWeight
            | Suite::SideConditions => b(4, 4, 6, 0, 0),
            Suite::UncrowdCompatible | Suite::UncrowdIntertwines => b(0, 3, 0, 5, 2),
            Suite::StembridgeStar => b(5, 4, 6, 0, 0),
            Suite::StembridgeN3 => b(3, 5, 6, 0, 0),
            Suite::Catalan => b(5, 0, 0, 0, 0),
            Suite::DualPipeline => b(4, 4, 0, 0, 2),
            Suite::Grassmannian | Suite::HighestWeightSvt => b(0, 3, 0, 4, 0),
        }
    }

    /// Larger bounds for occasional thorough runs.
    pub fn deep_bounds(self) -> Bounds {
        let d = self.default_bounds();
        match self {
            Suite::Catalan => Bounds { n: 7, ..d },
            Suite::StembridgeN3 => Bounds { m: 6, length: 8, ..d },
            Suite::DualPipeline => Bounds { n: 5, excess: 3, ..d },
            _ => Bounds {
                n: d.n + usize::from(d.n > 0),
                length: d.length + usize::from(d.length > 0),
                cells: d.cells + usize::from(d.cells > 0),
                ..d
            },
        }
    }

    fn uses(self) -> &'static [Mutation] {
        use Mutation::*;
        match self {
            Suite::ResidueIntertwines => &[StarCase1, StarCase2, SvtException, SvtPlain],
            Suite::StarBijection | Suite::MicroInvariance => &[InsertCase3],
            Suite::RecordingIntertwines => &[StarCase1, StarCase2, InsertCase3],
            Suite::MicroCrystal | Suite::LowestWeight | Suite::StembridgeStar => &[StarCase1, StarCase2],
            Suite::UncrowdIntertwines | Suite::StembridgeSvt => &[SvtException, SvtPlain],
            _ => &[],
        }
    }

    /// Whether the suite exercises the code a mutation disables.
    pub fn sensitive_to(self, mutation: Mutation) -> bool {
        self.uses().contains(&mutation)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub bounds: Bounds,
    pub instances: usize,
    pub failures: usize,
    /// the first few failing instances, serialized
    pub witnesses: Vec<String>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} instances, {} failures, {} ms",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.instances,
            self.failures,
            self.elapsed_ms
        )?;
        for w in &self.witnesses {
            write!(f, "\n  {w}")?;
        }
        Ok(())
    }
}

const MAX_WITNESSES: usize = 5;

type Failures = Vec<String>;

fn witness<T: Serialize + ?Sized>(what: &str, x: &T) -> String {
    format!("{what}: {}", serde_json::to_string(x).unwrap_or_else(|e| format!("<{e}>")))
}

/// Runs `check` on every instance in parallel; failures are merged in instance order.
fn run<T: Sync>(items: &[T], check: impl Fn(&T) -> Failures + Sync + Send) -> (usize, Failures) {
    let all: Vec<Failures> = items.par_iter().map(check).collect();
    (items.len(), all.into_iter().flatten().collect())
}

pub fn check(suite: Suite, bounds: &Bounds) -> Report {
    check_mutated(suite, bounds, None)
}

/// Runs a suite with one operator case disabled; for testing the checkers themselves.
pub fn check_mutated(suite: Suite, bounds: &Bounds, mutation: Option<Mutation>) -> Report {
    let start = Instant::now();
    let b = *bounds;
    let (instances, failures) = match suite {
        Suite::ResidueIntertwines => residue_intertwines(&b, mutation),
        Suite::HeckeRecording => hecke_recording(&b),
        Suite::StarBijection => star_bijection(&b, mutation),
        Suite::MicroInvariance => micro_invariance(&b, mutation),
        Suite::MicroCrystal => micro_crystal(&b, mutation),
        Suite::RecordingIntertwines => recording_intertwines(&b, mutation),
        Suite::LowestWeight => lowest_weight(&b, mutation),
        Suite::SideConditions => side_conditions(&b),
        Suite::UncrowdCompatible => uncrowd_compatible(&b),
        Suite::UncrowdIntertwines => uncrowd_intertwines(&b, mutation),
        Suite::StembridgeStar => stembridge_star(&b, mutation),
        Suite::StembridgeSvt => stembridge_svt(&b, mutation),
        Suite::StembridgeN3 => stembridge_n3(&b),
        Suite::Catalan => catalan(&b),
        Suite::DualPipeline => dual_pipeline(&b),
        Suite::Grassmannian => grassmannian_check(&b),
        Suite::HighestWeightSvt => highest_weight_svt(&b),
    };
    Report {
        suite,
        bounds: b,
        instances,
        failures: failures.len(),
        witnesses: failures.into_iter().take(MAX_WITNESSES).collect(),
        elapsed_ms: start.elapsed().as_millis(),
    }
}

// ---- instance generators ----

/// All permutations of [n] in lexicographic order.
pub fn permutations(n: usize) -> Vec<HeckeElement> {
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<HeckeElement>) {
        if cur.len() == n {
            out.push(HeckeElement::from_perm(cur.clone()).expect("a permutation"));
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n + 1], &mut out);
    out
}

pub fn fully_commutative_elements(n: usize) -> Vec<HeckeElement> {
    permutations(n).into_iter().filter(HeckeElement::is_fully_commutative).collect()
}

/// Fully-commutative factorizations in S_n with `m` factors and at most `max_len` letters.
pub fn fc_factorizations(n: usize, m: usize, max_len: usize) -> Vec<DecreasingFactorization> {
    fully_commutative_elements(n)
        .iter()
        .filter(|w| w.length() <= max_len)
        .flat_map(|w| enumerate(w, m, max_len - w.length()))
        .collect()
}

fn all_fc_factorizations(b: &Bounds) -> Vec<DecreasingFactorization> {
    (1..=b.m).flat_map(|m| fc_factorizations(b.n, m, b.length)).collect()
}

/// Fully-commutative words over [n−1] with at most `max_len` letters.
pub fn fc_words(n: usize, max_len: usize) -> Vec<HeckeWord> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for x in 1..n as Letter {
                let mut v: Vec<Letter> = w.clone();
                v.push(x);
                if eval_letters(n, &v).is_fully_commutative() {
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.into_iter().map(|v| HeckeWord::new(n, v).expect("letters in range")).collect()
}

fn svt_instances(shapes: &[SkewShape], max_m: usize, max_excess: Option<usize>) -> Vec<(SetValuedTableau, usize)> {
    let mut out = Vec::new();
    for shape in shapes {
        for m in 1..=max_m {
            for t in set_valued_tableaux(shape, m) {
                if max_excess.is_none_or(|e| t.excess() <= e) {
                    out.push((t, m));
                }
            }
        }
    }
    out
}

fn straight_shapes(max_cells: usize) -> Vec<SkewShape> {
    (1..=max_cells).flat_map(partitions).map(SkewShape::straight).collect()
}

// ---- suites ----

fn residue_intertwines(b: &Bounds, mutation: Option<Mutation>) -> (usize, Failures) {
    let items = svt_instances(&skew_shapes(b.cells), b.m, None);
    run(&items, |(t, m)| {
        let m = *m;
        let h = match res(t, m) {
            Ok(h) => h,
            Err(e) => return vec![witness(&format!("res failed ({e})"), t)],
        };
        if !h.is_fully_commutative() {
            return vec![witness("residue is not fully commutative", t)];
        }
        let mut bad = Vec::new();
        for i in 1..m {
            let l = i as Letter;
            let via_t = f_svt_raw(t, l, mutation).map(|u| res(&u, m).ok());
            let via_h = f_star_raw(&h, i, mutation).map(Some);
            if via_t != via_h {
                bad.push(witness(&format!("f_{i}"), t));
            }
            let via_t = e_svt_raw(t, l).map(|u| res(&u, m).ok());
            let via_h = e_star_raw(&h, i).map(Some);
            if via_t != via_h {
                bad.push(witness(&format!("e_{i}"), t));
            }
        }
        bad
    })
}

fn hecke_recording(b: &Bounds) -> (usize, Failures) {
    let items = svt_instances(&straight_shapes(b.cells), b.m, None);
    run(&items, |(t, m)| {
        let Ok(h) = res(t, *m) else { return vec![witness("res failed", t)] };
        let q = hecke_insert(&h.to_biword()).q;
        match q.to_set_valued() {
            Ok(q) if q == *t => vec![],
            _ => vec![witness("recording tableau differs", t)],
        }
    })
}

fn is_fc_tableau(p: &Tableau) -> bool {
    let n = p.rows().iter().flatten().copied().max().unwrap_or(0) as usize + 1;
    let word: Vec<Letter> = p.rows().iter().rev().flatten().copied().collect();
    eval_letters(n, &word).is_fully_commutative()
}

fn conjugate(p: &Partition) -> Partition {
    Partition::new((1..=p.part(1)).map(|c| p.parts().iter().filter(|&&r| r >= c).count()).collect())
        .expect("conjugate is a partition")
}

fn star_bijection(b: &Bounds, mutation: Option<Mutation>) -> (usize, Failures) {
    let mut instances = 0;
    let mut failures = Vec::new();
    for m in 1..=b.m {
        let hs = fc_factorizations(b.n, m, b.length);
        let (k, mut bad) = run(&hs, |h| {
            let bw = h.to_biword();
            let r = match star_insert_mutated(&bw, mutation) {
                Ok(r) => r,
                Err(e) => return vec![witness(&format!("insertion failed ({e})"), h)],
            };
            let ok = r.p.shape() == r.q.shape()
                && r.p.is_valid(TableauKind::RowIncreasing)
                && r.q.is_valid(TableauKind::Semistandard)
                && is_fc_tableau(&r.p)
                && star_inverse(&r.p, &r.q).is_ok_and(|back| back.top() == bw.top() && back.bottom() == bw.bottom());
            if ok { vec![] } else { vec![witness("not inverted", h)] }
        });
        instances += k;
        failures.append(&mut bad);
        // injectivity
        let images: HashSet<(Tableau, Tableau)> = hs
            .iter()
            .filter_map(|h| star_insert_mutated(&h.to_biword(), mutation).ok())
            .map(|r| (r.p, r.q))
            .collect();
        if images.len() != hs.len() {
            failures.push(format!("m = {m}: {} factorizations but {} images", hs.len(), images.len()));
        }
        // surjectivity: every valid pair comes from a factorization of the right length
        let mut pairs = Vec::new();
        for size in 0..=b.length {
            for lambda in partitions(size) {
                let ps: Vec<Tableau> = semistandard_tableaux(&SkewShape::straight(conjugate(&lambda)), b.n - 1)
                    .iter()
                    .map(Tableau::transpose)
                    .filter(is_fc_tableau)
                    .collect();
                let qs = semistandard_tableaux(&SkewShape::straight(lambda.clone()), m);
                for p in &ps {
                    for q in &qs {
                        pairs.push((p.clone(), q.clone()));
                    }
                }
            }
        }
        let (k, mut bad) = run(&pairs, |(p, q)| match star_inverse(p, q) {
            Ok(bw) if bw.len() == p.size() => vec![],
            _ => vec![format!("no preimage for P = {:?}, Q = {:?}", p.rows(), q.rows())],
        });
        instances += k;
        failures.append(&mut bad);
        if pairs.len() != hs.len() {
            failures.push(format!("m = {m}: {} factorizations but {} valid pairs", hs.len(), pairs.len()));
        }
    }
    (instances, failures)
}

fn insertion_tableau(w: &HeckeWord, mutation: Option<Mutation>) -> Vec<Vec<Letter>> {
    let mut rows = Vec::new();
    for &x in w.letters() {
        insert_rows(&mut rows, x, mutation);
    }
    rows
}

fn micro_invariance(b: &Bounds, mutation: Option<Mutation>) -> (usize, Failures) {
    let mut seen = HashSet::new();
    let mut classes = Vec::new();
    for w in fc_words(b.n, b.length) {
        if seen.contains(&w) {
            continue;
        }
        let class = micro_class(&w);
        seen.extend(class.iter().cloned());
        classes.push(class);
    }
    run(&classes, |class| {
        let p = insertion_tableau(&class[0], mutation);
        class
            .iter()
            .filter(|u| insertion_tableau(u, mutation) != p)
            .map(|u| witness("insertion tableau differs within class", u))
            .collect()
    })
}

fn micro_crystal(b: &Bounds, mutation: Option<Mutation>) -> (usize, Failures) {
    let items = all_fc_factorizations(b);
    run(&items, |h| {
        let word = h.flatten().reversed();
        let mut bad = Vec::new();
        for i in 1..h.m() {
            for (name, g) in [("f", f_star_raw(h, i, mutation)), ("e", e_star_raw(h, i))] {
                if let Some(g) = g {
                    let same = g.is_fully_commutative() && micro_equivalent(&g.flatten().reversed(), &word).unwrap_or(false);
                    if !same {
                        bad.push(witness(&format!("{name}_{i} leaves the class"), h));
                    }
                }
            }
        }
        bad
    })
}

fn recording_intertwines(b: &Bounds, mutation: Option<Mutation>) -> (usize, Failures) {
    let items = all_fc_factorizations(b);
    run(&items, |h| {
        let Ok(r) = star_insert_mutated(&h.to_biword(), mutation) else {
            return vec![witness("insertion failed", h)];
        };
        let mut bad = Vec::new();
        for i in 1..h.m() {
            let g = f_star_raw(h, i, mutation);
            let fq = f_ssyt(&r.q, i as Letter);
            match (g, fq) {
                (None, None) => {}
                (Some(g), Some(fq)) => match star_insert_mutated(&g.to_biword(), mutation) {
                    Ok(s) if s.q == fq && s.p == r.p => {}
                    _ => bad.push(witness(&format!("f_{i} does not commute with insertion"), h)),
                },
                _ => bad.push(witness(&format!("f_{i} defined on one side only"), h)),
            }
        }
        bad
    })
}

fn lowest_weight(b: &Bounds, mutation: Option<Mutation>) -> (usize, Failures) {
    let items: Vec<_> = all_fc_factorizations(b)
        .into_iter()
        .filter(|h| (1..h.m()).all(|i| f_star_raw(h, i, mutation).is_none()))
        .collect();
    run(&items, |h| {
        let wt = h.weight();
        let r = (1..=h.m()).find(|&k| wt[k - 1] > 0).unwrap_or(h.m() + 1);
        if wt.windows(2).any(|p| p[0] > p[1]) {
            return vec![witness("weight is not weakly increasing", h)];
        }
        let expected: Vec<Vec<Letter>> = (r..=h.m())
            .rev()
            .map(|k| {
                let mut row = h.factor(k).to_vec();
                row.reverse();
                row
            })
            .collect();
        let Ok(s) = star_insert_mutated(&h.to_biword(), None) else {
            return vec![witness("insertion failed", h)];
        };
        let mut bad = Vec::new();
        if s.p.rows() != expected.as_slice() {
            bad.push(witness("insertion tableau is not the stacked factors", h));
        }
        if *s.p.shape().outer() != Partition::sorted(wt) {
            bad.push(witness("shape is not the sorted weight", h));
        }
        bad
    })
}

fn side_conditions(b: &Bounds) -> (usize, Failures) {
    let items = all_fc_factorizations(b);
    run(&items, |h| {
        let mut bad = Vec::new();
        for i in 1..h.m() {
            let Ok(p) = pairing(h, i) else { continue };
            let Some(x) = p.unpaired_lower().next() else { continue };
            let (upper, lower) = (h.factor(i + 1), h.factor(i));
            if upper.contains(&(x - 1)) {
                bad.push(witness(&format!("x − 1 in h^{} for i = {i}", i + 1), h));
            }
            let up = upper.contains(&(x + 1));
            let low = lower.contains(&(x + 1));
            let holds = [up && low, !up && !low, up && !low].iter().filter(|&&c| c).count();
            if holds != 1 {
                bad.push(witness(&format!("x + 1 only in h^{i}"), h));
            }
        }
        bad
    })
}

fn uncrowd_compatible(b: &Bounds) -> (usize, Failures) {
    let items = svt_instances(&skew_shapes(b.cells), b.m, Some(b.excess));
    run(&items, |(t, m)| {
        let Ok(u) = uncrowd(t) else { return vec![witness("cannot uncrowd", t)] };
        let mut bad = Vec::new();
        if !u.p.is_valid(TableauKind::Semistandard) || !u.q.is_valid(TableauKind::FlaggedIncreasing) {
            bad.push(witness("uncrowding output is malformed", t));
        }
        let Ok(h) = res(t, *m) else { return vec![witness("res failed", t)] };
        match star_tilde_with_inner(&h, t.shape()) {
            Ok((_, q)) if q == u.p => {}
            _ => bad.push(witness("recording tableau differs from uncrowded tableau", t)),
        }
        bad
    })
}

fn uncrowd_intertwines(b: &Bounds, mutation: Option<Mutation>) -> (usize, Failures) {
    let items = svt_instances(&skew_shapes(b.cells), b.m, Some(b.excess));
    run(&items, |(t, m)| {
        let Ok(u) = uncrowd(t) else { return vec![witness("cannot uncrowd", t)] };
        let mut bad = Vec::new();
        for i in 1..*m {
            let l = i as Letter;
            let left = f_svt_raw(t, l, mutation).map(|s| uncrowd(&s).ok());
            let right = f_ssyt(&u.p, l).map(|p| (p, u.q.clone()));
            let same = match (&left, &right) {
                (None, None) => true,
                (Some(Some(a)), Some((p, q))) => a.p == *p && a.q == *q,
                _ => false,
            };
            if !same {
                bad.push(witness(&format!("f_{i}"), t));
            }
        }
        bad
    })
}

/// Audits one component and compares its character with the Schur polynomial of its sink.
fn audit_component<N: Clone + Eq + std::hash::Hash + Serialize>(g: &CrystalGraph<N>, vars: usize) -> Failures {
    let report = g.stembridge_audit();
    let mut bad = Vec::new();
    if !report.passed() {
        let axiom = report.first_axiom().map(|a| a.to_string()).unwrap_or_default();
        bad.push(witness(&format!("axiom {axiom} fails on the component of"), &g.nodes()[0]));
        return bad;
    }
    let sinks = g.sinks();
    let [sink] = sinks.as_slice() else {
        return vec![witness("component without a unique lowest weight", &g.nodes()[0])];
    };
    let mu = Partition::sorted(g.weights()[*sink].iter().map(|&k| k as usize).collect());
    let schur: BTreeMap<Vec<i64>, i64> = schur_poly(&mu, vars)
        .terms()
        .iter()
        .map(|(e, &c)| (e.iter().map(|&k| k as i64).collect(), c))
        .collect();
    if g.character() != schur {
        bad.push(witness(&format!("character is not s{mu}"), &g.nodes()[0]));
    }
    bad
}

fn audit_all<C>(crystal: &C, nodes: Vec<C::Node>, vars: usize) -> (usize, Failures)
where
    C: Crystal,
    C::Node: Serialize + Send + Sync,
{
    let comps = CrystalGraph::components(crystal, nodes);
    run(&comps, |g| audit_component(g, vars))
}

fn stembridge_star(b: &Bounds, mutation: Option<Mutation>) -> (usize, Failures) {
    let mut instances = 0;
    let mut failures = Vec::new();
    for m in 1..=b.m {
        let crystal = StarCrystal { m, mutation };
        let (k, mut bad) = audit_all(&crystal, fc_factorizations(b.n, m, b.length), m);
        instances += k;
        failures.append(&mut bad);
    }
    (instances, failures)
}

fn stembridge_svt(b: &Bounds, mutation: Option<Mutation>) -> (usize, Failures) {
    let mut instances = 0;
    let mut failures = Vec::new();
    for shape in skew_shapes(b.cells) {
        for m in 1..=b.m {
            let crystal = SvtCrystal { m, mutation };
            let (k, mut bad) = audit_all(&crystal, set_valued_tableaux(&shape, m), m);
            instances += k;
            failures.append(&mut bad);
        }
    }
    (instances, failures)
}

fn stembridge_n3(b: &Bounds) -> (usize, Failures) {
    let mut instances = 0;
    let mut failures = Vec::new();
    for m in 1..=b.m {
        let nodes: Vec<_> = (0..=b.length).flat_map(|l| factorizations_with_letters(m, l)).collect();
        let crystal = N3Crystal { m };
        // f and e must preserve the 0-Hecke element
        let (_, mut bad) = run(&nodes, |h| {
            (1..m)
                .flat_map(|i| [crystal.f(h, i), crystal.e(h, i)])
                .flatten()
                .filter(|g| g.element() != h.element())
                .map(|_| witness("operator changes the element", h))
                .collect()
        });
        failures.append(&mut bad);
        let (k, mut bad) = audit_all(&crystal, nodes, m);
        instances += k;
        failures.append(&mut bad);
    }
    (instances, failures)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn catalan(b: &Bounds) -> (usize, Failures) {
    let items: Vec<usize> = (1..=b.n).collect();
    run(&items, |&n| {
        let count = fully_commutative_elements(n).len() as u64;
        let expected = binomial(2 * n as u64, n as u64) / (n as u64 + 1);
        if count == expected {
            vec![]
        } else {
            vec![format!("n = {n}: {count} fully-commutative elements, expected {expected}")]
        }
    })
}

fn dual_pipeline(b: &Bounds) -> (usize, Failures) {
    let items: Vec<(HeckeElement, usize)> = fully_commutative_elements(b.n)
        .into_iter()
        .flat_map(|w| (1..=b.m).map(move |m| (w.clone(), m)))
        .collect();
    run(&items, |(w, m)| {
        let crystal = schur_coeffs_via_crystal(w, *m, b.excess);
        let peeled = beta_schur_expand(&grothendieck_poly(w, *m, b.excess), b.excess);
        match (crystal, peeled) {
            (Ok(a), Ok(c)) if a == c => vec![],
            (a, c) => vec![format!("w = {:?}, m = {m}: crystal {:?} vs expansion {:?}", w.perm(), a.map(|s| s.to_string()), c.map(|s| s.to_string()))],
        }
    })
}

fn grassmannian_check(b: &Bounds) -> (usize, Failures) {
    let items: Vec<(Partition, usize)> =
        (1..=b.cells).flat_map(partitions).flat_map(|l| (1..=b.m).map(move |m| (l.clone(), m))).collect();
    run(&items, |(lambda, m)| {
        let w = grassmannian(lambda);
        let mut bad = Vec::new();
        let t = SetValuedTableau::from_tableau(&t_mu(lambda)).expect("valid tableau");
        if res(&t, lambda.len()).map(|h| h.element()).ok() != Some(w.clone()) {
            bad.push(format!("λ = {lambda}: the residue of T_λ is not the Grassmannian element"));
        }
        let top = lambda.size() * m.saturating_sub(1);
        let shape = SkewShape::straight(lambda.clone());
        if svt_generating_function(&shape, *m, top) != grothendieck_poly(&w, *m, top) {
            bad.push(format!("λ = {lambda}, m = {m}: generating functions differ"));
        }
        bad
    })
}

fn highest_weight_svt(b: &Bounds) -> (usize, Failures) {
    let items: Vec<(Partition, usize)> =
        (1..=b.cells).flat_map(partitions).flat_map(|l| (1..=b.m).map(move |m| (l.clone(), m))).collect();
    run(&items, |(lambda, m)| {
        let m = *m;
        let shape = SkewShape::straight(lambda.clone());
        let top = lambda.size() * m.saturating_sub(1);
        let mut counted = BetaSchurSeries::new(m, top);
        for t in set_valued_tableaux(&shape, m) {
            if (1..m).all(|i| e_svt_raw(&t, i as Letter).is_none()) {
                counted.add(t.excess(), Partition::sorted(t.weight(m)), 1);
            }
        }
        match beta_schur_expand(&svt_generating_function(&shape, m, top), top) {
            Ok(s) if s == counted => vec![],
            _ => vec![format!("λ = {lambda}, m = {m}: highest-weight counts differ from the Schur expansion")],
        }
    })
}
