//! The audit itself is checked against graphs with a known answer.

use std::collections::BTreeMap;

use hecke_star::crystal::{Axiom, CrystalGraph};
use hecke_star::grothendieck::schur_poly;
use hecke_star::partition::partitions;
use hecke_star::star_crystal;
use hecke_star::svt_crystal::{self, SvtCrystal};
use hecke_star::tableau::{semistandard_tableaux, t_mu};
use hecke_star::{DecreasingFactorization, Partition, SetValuedTableau, SkewShape};

fn ssyt_graph(lambda: &Partition, m: usize) -> CrystalGraph<SetValuedTableau> {
    let seed = SetValuedTableau::from_tableau(&t_mu(lambda)).unwrap();
    svt_crystal::crystal_graph(&seed, m)
}

fn schur_character(lambda: &Partition, m: usize) -> BTreeMap<Vec<i64>, i64> {
    schur_poly(lambda, m)
        .terms()
        .iter()
        .map(|(e, &c)| (e.iter().map(|&k| k as i64).collect(), c))
        .collect()
}

#[test]
fn semistandard_tableaux_calibrate_the_audit() {
    for m in 1..=4 {
        for n in 1..=5 {
            for lambda in partitions(n) {
                if lambda.len() > m {
                    continue;
                }
                let g = ssyt_graph(&lambda, m);
                let report = g.stembridge_audit();
                assert!(report.passed(), "{lambda} in {m} letters: {:?}", report.first_axiom());
                let count = semistandard_tableaux(&SkewShape::straight(lambda.clone()), m).len();
                assert_eq!(g.len(), count, "{lambda}, m = {m}");
                assert_eq!(g.character(), schur_character(&lambda, m), "{lambda}, m = {m}");
            }
        }
    }
}

#[test]
fn deleting_an_edge_is_reported() {
    let lambda = Partition::new(vec![2, 1]).unwrap();
    let full = ssyt_graph(&lambda, 3);
    for k in 0..full.edges().len() {
        let mut g = full.clone();
        let (a, b, i) = g.remove_edge(k);
        let report = g.stembridge_audit();
        assert!(!report.passed(), "edge {a} -{i}-> {b} removed unnoticed");
        // the endpoints lose an arrow, so φ − ε no longer matches the weight
        assert_eq!(report.first_axiom(), Some(Axiom::Seminormal), "edge {a} -{i}-> {b}");
    }
}

#[test]
fn a_single_node_passes() {
    let g = CrystalGraph::from_parts(2, vec!["x"], vec![vec![1, 1, 1]], vec![]);
    assert!(g.stembridge_audit().passed());
    assert_eq!(g.sources(), vec![0]);
    assert_eq!(g.sinks(), vec![0]);
}

#[test]
fn a_wrong_weight_breaks_seminormality() {
    // a single 1-string whose weights do not drop by α_1
    let g = CrystalGraph::from_parts(1, vec!["a", "b"], vec![vec![1, 0], vec![1, 0]], vec![(0, 1, 1)]);
    assert_eq!(g.stembridge_audit().first_axiom(), Some(Axiom::Seminormal));
}

#[test]
fn star_component_passes_and_has_schur_character() {
    let f = DecreasingFactorization::parse("(2)(1)(1)", None).unwrap();
    let g = star_crystal::crystal_graph(&f).unwrap();
    assert!(g.stembridge_audit().passed());
    let sinks = g.sinks();
    assert_eq!(sinks.len(), 1);
    let mut lowest: Vec<usize> = g.weights()[sinks[0]].iter().map(|&k| k as usize).collect();
    lowest.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(g.character(), schur_character(&Partition::new(lowest).unwrap(), 3));
    // the same component through the generic constructor
    let generic = CrystalGraph::component(&hecke_star::star_crystal::StarCrystal::new(3), &f);
    assert_eq!(generic.len(), g.len());
}

#[test]
fn svt_crystal_component_of_skew_example() {
    let t: SetValuedTableau =
        serde_json::from_str(r#"{"notation":"french","outer":[2,2],"inner":[1],"rows":[[[1,2]],[[2,3],[3]]]}"#).unwrap();
    let g = CrystalGraph::component(&SvtCrystal::new(3), &t);
    assert!(g.stembridge_audit().passed());
    assert_eq!(g.sources().len(), 1);
}
