//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines land in the test log; exits nonzero on any unexpected result.

use std::fmt::Debug;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::Value;

use hecke_star::grothendieck::{beta_schur_expand, grothendieck_poly};
use hecke_star::insertion::{
    hecke_insert, micro_class, reverse_bump, star_insert, star_insert_one, star_insert_traced, star_insert_word,
    star_inverse,
};
use hecke_star::local_crystal_n3::{crystal_graph as n3_graph, pairing3};
use hecke_star::mutation::Mutation;
use hecke_star::residue::{res, res_inv, res_inv_shaped};
use hecke_star::star_crystal::{e_star, f_star};
use hecke_star::uncrowding::{star_tilde_with_inner, uncrowd, uncrowd_step};
use hecke_star::verification::{check, check_mutated, fully_commutative_elements, Report, Suite};
use hecke_star::{
    DecreasingFactorization, HeckeBiword, HeckeElement, HeckeWord, Partition, SetValuedTableau, SkewShape, Tableau,
};

/// Worked examples whose printed values the implementation does not reproduce,
/// with the exact mismatch message expected. Anything else failing is a regression,
/// and an entry here that starts passing means this list is stale.
const KNOWN_DEVIATIONS: &[(&str, &str)] = &[(
    "n=3 pairing, second example",
    "got [0, 1, 2, 2, 3, 4, 4, 4], expected [0, 1, 2, 2, 2, 3, 4, 5]",
)];

const SUITE_LIMIT: Duration = Duration::from_secs(60);

/// Suites behind the theorem criterion; mutations must trip at least one.
const THEOREM_SUITES: [Suite; 10] = [
    Suite::ResidueIntertwines,
    Suite::HeckeRecording,
    Suite::StarBijection,
    Suite::MicroInvariance,
    Suite::MicroCrystal,
    Suite::RecordingIntertwines,
    Suite::UncrowdCompatible,
    Suite::UncrowdIntertwines,
    Suite::LowestWeight,
    Suite::SideConditions,
];

struct Outcome {
    pass: bool,
    detail: String,
    /// failures that match a documented deviation
    known: Vec<String>,
    /// anything that should make the run exit nonzero
    unexpected: Vec<String>,
}

impl Outcome {
    fn strict(pass: bool, detail: String) -> Self {
        let unexpected = if pass { vec![] } else { vec![detail.clone()] };
        Outcome { pass, detail, known: vec![], unexpected }
    }
}

fn eq<T: PartialEq + Debug>(got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn fac(s: &str) -> DecreasingFactorization {
    DecreasingFactorization::parse(s, None).unwrap()
}

fn svt(shape: &str, rows: Vec<Vec<Vec<u32>>>) -> SetValuedTableau {
    SetValuedTableau::new(SkewShape::parse(shape).unwrap(), rows).unwrap()
}

fn show(f: Option<DecreasingFactorization>) -> String {
    f.map_or("0".into(), |f| f.to_string())
}

fn partition(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn run_suites(suites: &[Suite]) -> Vec<Report> {
    suites.iter().map(|&s| check(s, &s.default_bounds())).collect()
}

fn summarize(reports: &[Report]) -> Outcome {
    let slow: Vec<&Report> = reports.iter().filter(|r| r.elapsed_ms > SUITE_LIMIT.as_millis()).collect();
    let failed: Vec<&Report> = reports.iter().filter(|r| !r.passed()).collect();
    let instances: usize = reports.iter().map(|r| r.instances).sum();
    let slowest = reports.iter().max_by_key(|r| r.elapsed_ms).map(|r| (r.suite.name(), r.elapsed_ms));
    let mut detail = format!("{} suites, {instances} instances", reports.len());
    if let Some((name, ms)) = slowest {
        detail.push_str(&format!(", slowest {name} {ms} ms"));
    }
    for r in &failed {
        detail.push_str(&format!("; {} has {} failures", r.suite, r.failures));
    }
    for r in &slow {
        detail.push_str(&format!("; {} took {} ms", r.suite, r.elapsed_ms));
    }
    Outcome::strict(failed.is_empty() && slow.is_empty(), detail)
}

fn expansion() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_hecke-star"))
        .args(["expand", "--word", "12132", "--vars", "4", "--max-beta", "2", "--format", "json"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Outcome::strict(false, format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    let v: Value = serde_json::from_slice(&out.stdout).expect("JSON output");
    let got: Vec<(u64, Vec<u64>, i64)> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let parts = t["partition"].as_array().unwrap().iter().map(|p| p.as_u64().unwrap()).collect();
            (t["beta"].as_u64().unwrap(), parts, t["coefficient"].as_i64().unwrap())
        })
        .collect();
    let want = vec![
        (0, vec![2, 2, 1], 1),
        (1, vec![2, 2, 2], 2),
        (1, vec![2, 2, 1, 1], 3),
        (2, vec![2, 2, 2, 1], 6),
    ];
    let fast = elapsed < Duration::from_secs(10);
    match eq(&got, &want) {
        Ok(()) => Outcome::strict(fast, format!("s221 + 2β s222 + 3β s2211 + 6β² s2221 in {} ms", elapsed.as_millis())),
        Err(e) => Outcome::strict(false, e),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

type Item = (&'static str, fn() -> Result<(), String>);

fn worked_examples() -> Vec<Item> {
    vec![
        ("⋆-operators on (7532)(621)(6)", || {
            let h = fac("(7532)(621)(6)");
            eq(
                [
                    show(f_star(&h, 1).unwrap()),
                    show(e_star(&h, 1).unwrap()),
                    show(f_star(&h, 2).unwrap()),
                    show(e_star(&h, 2).unwrap()),
                ],
                ["0".into(), "(7532)(62)(61)".into(), "(75321)(61)(6)".into(), "(753)(6321)(6)".into()],
            )
        }),
        ("residue of a skew tableau", || {
            let t = svt("2,2/1", vec![vec![vec![1, 2]], vec![vec![2, 3], vec![3]]]);
            eq(res(&t, 3).unwrap().to_string(), "(21)(31)(3)".into())
        }),
        ("inverse residue, first example", || {
            let h = fac("(61)(752)(75)(762)");
            let t1 = svt(
                "4,4,1,1/2,2",
                vec![vec![vec![1], vec![1, 2, 3]], vec![vec![2, 3], vec![4]], vec![vec![1, 3]], vec![vec![4]]],
            );
            let t2 = svt(
                "3,3,1,1,1/1,1,1",
                vec![vec![vec![1], vec![1, 2, 3]], vec![vec![2, 3], vec![4]], vec![], vec![vec![1, 3]], vec![vec![4]]],
            );
            eq(res(&t1, 4).unwrap(), h.clone())?;
            eq(res(&t2, 4).unwrap(), h.clone())?;
            eq(res_inv(&h).unwrap(), t1)?;
            eq(res_inv_shaped(&h, t2.shape()).unwrap(), t2)
        }),
        ("inverse residue, second example", || {
            let h = fac("(8431)(863)(8654)(941)");
            let t = svt(
                "5,5,4,3,1/4,4,1,1",
                vec![
                    vec![vec![1]],
                    vec![vec![2, 3, 4]],
                    vec![vec![1, 2], vec![2], vec![2, 3]],
                    vec![vec![3, 4], vec![4]],
                    vec![vec![1, 4]],
                ],
            );
            eq(res(&t, 4).unwrap(), h.clone())?;
            eq(res_inv_shaped(&h, t.shape()).unwrap(), t)
        }),
        ("Hecke insertion", || {
            let r = hecke_insert(&fac("(1)(2)(31)()(32)").to_biword());
            eq(r.p.rows(), &[vec![1, 2], vec![2, 3], vec![3]][..])?;
            eq(r.q.rows(), &[vec![vec![1], vec![1, 3]], vec![vec![3], vec![4]], vec![vec![5]]][..])
        }),
        ("Hecke insertion of (21)(41)", || {
            let r = hecke_insert(&fac("(21)(41)").to_biword());
            eq(r.p.rows(), &[vec![1, 2], vec![4]][..])?;
            eq(r.q.rows(), &[vec![vec![1], vec![1]], vec![vec![2, 2]]][..])
        }),
        ("⋆-insertion with paths and inverse", || {
            let b = HeckeBiword::new(5, vec![4, 4, 2, 2, 1, 1], vec![4, 2, 4, 2, 3, 1]).unwrap();
            let r = star_insert_traced(&b).unwrap();
            eq(r.p.rows(), &[vec![1, 2, 4], vec![1, 4], vec![3]][..])?;
            eq(r.q.rows(), &[vec![1, 1, 2], vec![2, 4], vec![4]][..])?;
            let trace = r.trace.unwrap();
            eq(&trace[4..], &[vec![(1, 2), (2, 1), (3, 1)], vec![(1, 3), (2, 2)]][..])?;
            eq(star_inverse(&r.p, &r.q).unwrap(), b)
        }),
        ("reverse row bumping", || {
            let u = Tableau::from_rows(vec![vec![1, 2, 4], vec![2, 3, 5], vec![2, 5], vec![2], vec![5]]).unwrap();
            let (t, x) = reverse_bump(&u, 5).unwrap();
            eq(x, 2)?;
            eq(t.rows(), &[vec![1, 3, 4], vec![2, 3, 5], vec![2, 5], vec![5]][..])?;
            eq(star_insert_one(&t, 2).unwrap().0, u)
        }),
        ("micro-move class of 13242 and its P", || {
            let class = micro_class(&HeckeWord::parse("13242", Some(5)).unwrap());
            for listed in ["31242", "13422", "13224", "31224", "13242"] {
                if !class.contains(&HeckeWord::parse(listed, Some(5)).unwrap()) {
                    return Err(format!("{listed} missing from the class"));
                }
            }
            let p = Tableau::from_rows(vec![vec![1, 2, 4], vec![1], vec![3]]).unwrap();
            class.iter().try_for_each(|u| eq(star_insert_word(u).unwrap(), p.clone()))
        }),
        ("⋆-insertion rejects a non-fully-commutative input", || {
            eq(star_insert(&fac("(21)(32)(32)").to_biword()).is_err(), true)
        }),
        ("uncrowding", || {
            let t = svt(
                "6,3,3,1",
                vec![
                    vec![vec![1], vec![1], vec![1], vec![1, 2], vec![2, 3, 4], vec![5]],
                    vec![vec![2], vec![2, 3], vec![3]],
                    vec![vec![4], vec![4], vec![5]],
                    vec![vec![5]],
                ],
            );
            let (_, from, cell) = uncrowd_step(&t).unwrap();
            eq((from, cell), (2, (5, 1)))?;
            let u = uncrowd(&t).unwrap();
            eq(u.p.rows(), &[vec![1, 1, 1, 1, 2, 5], vec![2, 2, 2, 3], vec![3, 3, 4], vec![4, 4], vec![5, 5]][..])?;
            eq(u.q.shape(), &SkewShape::parse("6,4,3,2,2/6,3,3,1").unwrap())?;
            eq(u.q.rows(), &[vec![], vec![1], vec![], vec![3], vec![3, 4]][..])
        }),
        ("modified ⋆-insertion on a skew tableau", || {
            let t = svt("2,2/1", vec![vec![vec![1, 2]], vec![vec![2, 3], vec![3]]]);
            let (_, q) = star_tilde_with_inner(&res(&t, 3).unwrap(), t.shape()).unwrap();
            eq(q.rows(), &[vec![1], vec![2, 2], vec![3, 3]][..])
        }),
        ("n=3 pairing, first example", || {
            let p = pairing3(&DecreasingFactorization::parse("()(2)()(21)(1)(1)(2)(21)", Some(3)).unwrap()).unwrap();
            eq(&p.counts[..8], &[0, 1, 1, 2, 2, 3, 3, 3][..])
        }),
        ("n=3 pairing, second example", || {
            let p = pairing3(&DecreasingFactorization::parse("()(2)(2)(21)(2)(1)(21)(21)", Some(3)).unwrap()).unwrap();
            eq(&p.counts[..8], &[0, 1, 2, 2, 2, 3, 4, 5][..])
        }),
        ("n=3 crystal figure", || {
            let w0 = HeckeElement::from_perm(vec![3, 2, 1]).unwrap();
            let g = n3_graph(3, 4).restrict(|h| h.element() == w0);
            eq((g.len(), g.edges().len()), (12, 10))
        }),
        ("β-expansion of 12132 through the library", || {
            let w = HeckeWord::parse("12132", None).unwrap().eval();
            let s = beta_schur_expand(&grothendieck_poly(&w, 4, 2), 2).unwrap();
            eq(s.coeff(2, &partition(&[2, 2, 2, 1])), 6)
        }),
    ]
}

fn goldens() -> Outcome {
    let items = worked_examples();
    let total = items.len();
    let mut known = Vec::new();
    let mut unexpected = Vec::new();
    let mut failing = Vec::new();
    let mut matched = Vec::new();
    for (name, item) in items {
        let result = item();
        let expected = KNOWN_DEVIATIONS.iter().find(|(n, _)| *n == name);
        match (result, expected) {
            (Ok(()), None) => {}
            (Ok(()), Some(_)) => unexpected.push(format!("{name} now passes; drop it from the deviation list")),
            (Err(e), Some((_, msg))) if e == *msg => {
                matched.push(name);
                failing.push(name);
                known.push(format!("{name}: {e}"));
            }
            (Err(e), _) => {
                failing.push(name);
                unexpected.push(format!("{name}: {e}"));
            }
        }
    }
    for (name, _) in KNOWN_DEVIATIONS {
        if !matched.contains(name) && !unexpected.iter().any(|u| u.starts_with(name)) {
            unexpected.push(format!("documented deviation {name:?} has no example"));
        }
    }
    let detail = if failing.is_empty() {
        format!("{total}/{total} worked examples reproduce")
    } else {
        format!("{}/{total} worked examples reproduce; differs: {}", total - failing.len(), failing.join(", "))
    };
    Outcome { pass: failing.is_empty(), detail, known, unexpected }
}

fn catalan() -> Outcome {
    let counts: Vec<usize> = (3..=5).map(|n| fully_commutative_elements(n).len()).collect();
    let suite = check(Suite::Catalan, &Suite::Catalan.default_bounds());
    let ok = counts == [5, 14, 42] && suite.passed();
    Outcome::strict(ok, format!("n = 3, 4, 5 give {counts:?}; {suite}"))
}

fn single(suite: Suite) -> Outcome {
    let r = check(suite, &suite.default_bounds());
    Outcome::strict(r.passed() && r.elapsed_ms <= SUITE_LIMIT.as_millis(), r.to_string())
}

fn mutations() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for m in Mutation::ALL {
        let caught: Vec<&str> = THEOREM_SUITES
            .iter()
            .filter(|s| s.sensitive_to(m))
            .filter(|&&s| !check_mutated(s, &s.default_bounds(), Some(m)).passed())
            .map(|s| s.name())
            .collect();
        ok &= !caught.is_empty();
        lines.push(format!("{m:?} caught by {}", if caught.is_empty() { "nothing".into() } else { caught.join(", ") }));
    }
    Outcome::strict(ok, lines.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("β-expansion of 12132 in four variables", expansion),
        ("worked examples", goldens),
        ("theorem suites", || summarize(&run_suites(&THEOREM_SUITES))),
        ("Stembridge and character audits", || {
            summarize(&run_suites(&[Suite::StembridgeStar, Suite::StembridgeSvt, Suite::StembridgeN3]))
        }),
        ("fully-commutative counts are Catalan", catalan),
        ("enumeration and crystal pipelines agree", || single(Suite::DualPipeline)),
        ("Grassmannian cross-check", || single(Suite::Grassmannian)),
        ("mutations are detected", mutations),
    ];
    let mut unexpected = Vec::new();
    for (k, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("{status} {}. {title}: {} [{} ms]", k + 1, o.detail, start.elapsed().as_millis());
        for note in &o.known {
            println!("     known deviation: {note}");
        }
        unexpected.extend(o.unexpected.into_iter().map(|u| format!("criterion {}: {u}", k + 1)));
    }
    if unexpected.is_empty() {
        println!("acceptance: no unexpected results");
        ExitCode::SUCCESS
    } else {
        for u in &unexpected {
            println!("UNEXPECTED {u}");
        }
        ExitCode::FAILURE
    }
}
