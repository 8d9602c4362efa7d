use std::sync::Arc;

use proptest::prelude::*;

use raagpal::aut::{format_generators, Automorphism};
use raagpal::graph::fixtures;
use raagpal::matrix::{evaluate, factor_theta, phi, phi2};
use raagpal::sample::{random_letters, random_suite, rng, SampleKind};
use raagpal::{GroupWord, SimplicialGraph};

fn fixture(i: usize) -> Arc<SimplicialGraph> {
    let all = fixtures::all();
    Arc::new(all[i % all.len()].1.clone())
}

fn sample(g: &Arc<SimplicialGraph>, kind: SampleKind, seed: u64) -> Automorphism {
    random_suite(g, kind, 1, seed, 6).pop().unwrap()
}

fn word(g: &Arc<SimplicialGraph>, seed: u64) -> GroupWord {
    let mut r = rng(seed);
    GroupWord::new(g, &random_letters(g, &mut r, 10)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_is_a_homomorphism(i in 0usize..5, s in any::<u64>(), t in any::<u64>()) {
        let g = fixture(i);
        let a = sample(&g, SampleKind::Aut, s);
        let b = sample(&g, SampleKind::Aut, t);
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(phi(&ab), phi(&a).mul(&phi(&b)));
        prop_assert_eq!(phi2(&ab), phi2(&a).mul(&phi2(&b)));
    }

    #[test]
    fn composition_is_associative(i in 0usize..5, s in any::<u64>(), t in any::<u64>(), u in any::<u64>()) {
        let g = fixture(i);
        let a = sample(&g, SampleKind::Aut, s);
        let b = sample(&g, SampleKind::Aut, t);
        let c = sample(&g, SampleKind::Aut, u);
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn automorphisms_act_on_words(i in 0usize..5, s in any::<u64>(), t in any::<u64>(), u in any::<u64>()) {
        let g = fixture(i);
        let a = sample(&g, SampleKind::Aut, s);
        let (v, w) = (word(&g, t), word(&g, u));
        prop_assert_eq!(a.apply(&v.mul(&w)).unwrap(), a.apply(&v).unwrap().mul(&a.apply(&w).unwrap()));
        let back = a.inverse().unwrap().apply(&a.apply(&v).unwrap()).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn purity_tests_agree(i in 0usize..5, s in any::<u64>()) {
        let g = fixture(i);
        let a = sample(&g, SampleKind::Centralizer, s);
        let p = a.predicates();
        prop_assert!(p.in_ciota);
        prop_assert_eq!(p.is_pure, p.pure_by_middle_letter);
        prop_assert_eq!(p.is_pure, phi2(&a).is_identity());
    }

    #[test]
    fn palindromic_samples_split(i in 0usize..5, s in any::<u64>()) {
        let g = fixture(i);
        let a = sample(&g, SampleKind::Palindromic, s);
        prop_assert!(a.predicates().is_palindromic);
        let (delta, gamma) = a.split_diagram_pure().unwrap();
        prop_assert!(gamma.predicates().is_pure);
        prop_assert_eq!(delta.compose(&gamma).unwrap(), a);
    }

    #[test]
    fn theta_round_trip(i in 0usize..5, s in any::<u64>()) {
        let g = fixture(i);
        let a = sample(&g, SampleKind::Pure, s);
        let m = phi(&a);
        let w = factor_theta(&m, g.domination()).unwrap();
        prop_assert_eq!(evaluate(g.len(), &w), m);
    }

    #[test]
    fn words_normalise(i in 0usize..5, s in any::<u64>()) {
        let g = fixture(i);
        let w = word(&g, s);
        let again = GroupWord::new(&g, w.letters()).unwrap();
        prop_assert_eq!(again.letters(), w.letters());
        prop_assert!(w.mul(&w.inverse()).is_identity());
        prop_assert_eq!(w.reverse().reverse(), w.clone());
        prop_assert_eq!(w.reverse().len(), w.len());
    }

    #[test]
    fn json_round_trip(i in 0usize..5, s in any::<u64>()) {
        let g = fixture(i);
        let a = sample(&g, SampleKind::Aut, s);
        let text = serde_json::to_string(&a.to_json()).unwrap();
        prop_assert_eq!(Automorphism::from_json_str(&g, &text).unwrap(), a.clone());
        let gens = a.provenance().unwrap();
        let parsed = Automorphism::parse_generators(&g, &format_generators(&g, gens)).unwrap();
        prop_assert_eq!(parsed, a);
        let gtext = serde_json::to_string(&g.to_json()).unwrap();
        prop_assert_eq!(&SimplicialGraph::from_json_str(&gtext).unwrap(), &*g);
    }
}

#[test]
fn corpora_are_reproducible() {
    for (_, g) in fixtures::all() {
        let g = Arc::new(g);
        for kind in [
            SampleKind::Aut,
            SampleKind::Centralizer,
            SampleKind::Pure,
            SampleKind::Palindromic,
        ] {
            assert_eq!(
                random_suite(&g, kind, 10, 0, 8),
                random_suite(&g, kind, 10, 0, 8)
            );
        }
        for a in random_suite(&g, SampleKind::Centralizer, 50, 1, 8) {
            assert!(a.predicates().in_ciota);
        }
        for a in random_suite(&g, SampleKind::Palindromic, 50, 1, 8) {
            assert!(a.predicates().is_palindromic);
        }
    }
}
