use std::collections::BTreeMap;
use std::sync::OnceLock;

use itertools::Itertools;
use proptest::prelude::*;

use hecke_star::grothendieck::{schur_expand, schur_poly, Polynomial};
use hecke_star::insertion::{hecke_insert, micro_neighbours, star_insert, star_inverse};
use hecke_star::partition::{partitions, skew_shapes};
use hecke_star::residue::{res, res_inv, res_inv_shaped};
use hecke_star::star_crystal::{e_star, epsilon, f_star, phi};
use hecke_star::svt_crystal::{e_svt, f_svt};
use hecke_star::tableau::set_valued_tableaux;
use hecke_star::uncrowding::uncrowd;
use hecke_star::verification::{fc_factorizations, fc_words};
use hecke_star::{DecreasingFactorization, Partition, SetValuedTableau};

fn factorizations() -> &'static [DecreasingFactorization] {
    static CELL: OnceLock<Vec<DecreasingFactorization>> = OnceLock::new();
    CELL.get_or_init(|| fc_factorizations(5, 4, 6))
}

fn tableaux() -> &'static [(SetValuedTableau, usize)] {
    static CELL: OnceLock<Vec<(SetValuedTableau, usize)>> = OnceLock::new();
    CELL.get_or_init(|| {
        skew_shapes(4)
            .iter()
            .flat_map(|s| set_valued_tableaux(s, 3).into_iter().map(|t| (t, 3)))
            .collect()
    })
}

fn factorization() -> impl Strategy<Value = DecreasingFactorization> {
    prop::sample::select(factorizations())
}

fn tableau() -> impl Strategy<Value = (SetValuedTableau, usize)> {
    prop::sample::select(tableaux())
}

/// Weight after moving one letter from position i to i+1 (1-based).
fn lowered(w: &[usize], i: usize) -> Vec<usize> {
    let mut w = w.to_vec();
    w[i - 1] -= 1;
    w[i] += 1;
    w
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn star_operators_are_partial_inverses(f in factorization(), i in 1usize..4) {
        if let Some(g) = f_star(&f, i).unwrap() {
            prop_assert_eq!(e_star(&g, i).unwrap(), Some(f.clone()));
            prop_assert_eq!(g.weight(), lowered(&f.weight(), i));
            prop_assert_eq!(g.element(), f.element());
        }
        if let Some(g) = e_star(&f, i).unwrap() {
            prop_assert_eq!(f_star(&g, i).unwrap(), Some(f.clone()));
        }
    }

    #[test]
    fn string_lengths_match_weight(f in factorization(), i in 1usize..4) {
        let w = f.weight();
        let diff = phi(&f, i).unwrap() as i64 - epsilon(&f, i).unwrap() as i64;
        prop_assert_eq!(diff, w[i - 1] as i64 - w[i] as i64);
    }

    #[test]
    fn svt_operators_are_partial_inverses((t, m) in tableau(), i in 1u32..3) {
        if let Some(u) = f_svt(&t, i) {
            prop_assert!(u.validate().is_ok());
            prop_assert_eq!(e_svt(&u, i), Some(t.clone()));
            prop_assert_eq!(u.weight(m), lowered(&t.weight(m), i as usize));
        }
        if let Some(u) = e_svt(&t, i) {
            prop_assert_eq!(f_svt(&u, i), Some(t.clone()));
        }
    }

    #[test]
    fn residue_round_trips((t, m) in tableau()) {
        let f = res(&t, m).unwrap();
        prop_assert!(f.is_fully_commutative());
        prop_assert_eq!(f.weight(), t.weight(m));
        prop_assert_eq!(res_inv_shaped(&f, t.shape()).unwrap(), t);
        let canonical = res_inv(&f).unwrap();
        prop_assert_eq!(res(&canonical, m).unwrap(), f);
    }

    #[test]
    fn star_insertion_round_trips(f in factorization()) {
        let b = f.to_biword();
        let r = star_insert(&b).unwrap();
        prop_assert_eq!(r.p.shape(), r.q.shape());
        let back = star_inverse(&r.p, &r.q).unwrap();
        prop_assert_eq!(back.top(), b.top());
        prop_assert_eq!(back.bottom(), b.bottom());
    }

    #[test]
    fn hecke_insertion_reading_word(f in factorization()) {
        // letters go in right to left, so P reads as the reversed word
        let r = hecke_insert(&f.to_biword());
        let word = r.p.row_word(f.n()).unwrap();
        prop_assert_eq!(word.eval(), f.flatten().reversed().eval());
        prop_assert_eq!(r.q.shape(), r.p.shape().outer().clone());
    }

    #[test]
    fn uncrowding_keeps_weight_and_counts_excess((t, m) in tableau()) {
        let u = uncrowd(&t).unwrap();
        prop_assert_eq!(u.p.weight(m), t.weight(m));
        prop_assert_eq!(u.q.size(), t.excess());
        prop_assert_eq!(u.p.shape().inner(), t.shape().inner());
    }

    #[test]
    fn json_round_trips(f in factorization(), (t, _) in tableau()) {
        let s = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<DecreasingFactorization>(&s).unwrap(), f.clone());
        prop_assert_eq!(DecreasingFactorization::parse(&f.to_string(), Some(f.n())).unwrap(), f);
        let s = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<SetValuedTableau>(&s).unwrap(), t);
    }

    #[test]
    fn schur_expansion_recovers_combinations(coeffs in prop::collection::vec(-3i64..=3, 7)) {
        let m = 3;
        let shapes = partitions(4).into_iter().chain(partitions(3)).filter(|p| p.len() <= m).collect_vec();
        let mut p = Polynomial::zero(m);
        let mut want: BTreeMap<Partition, i64> = BTreeMap::new();
        for (mu, &c) in shapes.iter().zip(&coeffs) {
            p.add_scaled(&schur_poly(mu, m), c);
            if c != 0 {
                want.insert(mu.clone(), c);
            }
        }
        prop_assert_eq!(schur_expand(&p).unwrap(), want);
    }
}

#[test]
fn micro_moves_preserve_the_element() {
    for w in fc_words(5, 5) {
        let e = w.eval();
        for u in micro_neighbours(&w) {
            assert_eq!(u.eval(), e, "{w} ~ {u}");
        }
    }
}
