mod common;

use common::*;
use ltlearn::enumerative::{enumerate_fragment, learn_exact, learn_exact_with, minimal_size, ExactOptions};
use ltlearn::formula::{Formula, Fragment};
use ltlearn::reductions::{setcover_to_sample, SetCoverInstance};
use ltlearn::semantics::check_separates;
use ltlearn::trace::{Alphabet, Sample};
use std::collections::BTreeSet;

#[test]
fn level_contents_match_independent_enumeration() {
    let ab = Alphabet::letters(2);
    for (fragment, ops) in [(Fragment::XAnd, X_AND), (Fragment::FAnd, F_AND), (Fragment::FXAndOr, FX_AND_OR)] {
        let ours: Vec<Formula> = enumerate_fragment(fragment, &ab, 5).collect();
        let reference = formulas_by_size(ops, 2, 5);
        for size in 1..=5 {
            let mine: BTreeSet<&Formula> = ours.iter().filter(|f| f.size() == size).collect();
            let theirs: BTreeSet<&Formula> = reference[size].iter().collect();
            assert_eq!(mine, theirs, "{fragment} size {size}");
        }
        assert!(ours.windows(2).all(|w| w[0].size() <= w[1].size()));
    }
}

#[test]
fn small_levels() {
    let ab = Alphabet::letters(2);
    let shown = |k| -> Vec<String> {
        enumerate_fragment(Fragment::XAnd, &ab, k)
            .map(|f| f.display(&ab).to_string())
            .collect()
    };
    assert_eq!(shown(1), ["a", "b"]);
    assert_eq!(shown(2), ["a", "b", "X a", "X b"]);
    assert_eq!(shown(3).len() - shown(2).len(), 6);
}

#[test]
fn exact_examples() {
    let ab = Alphabet::letters(2);
    let s = Sample::from_strs(&ab, &["a"], &["b"]);
    assert_eq!(learn_exact(&s, Fragment::XAnd, 3).unwrap().display(&ab).to_string(), "a");
    assert_eq!(minimal_size(&s, Fragment::Full, 3), Some(1));
    let abc = Alphabet::letters(3);
    assert_eq!(minimal_size(&Sample::from_strs(&abc, &["aab"], &["ab"]), Fragment::FAnd, 12), None);
    let s = Sample::from_strs(&ab, &["aba"], &["bba", "abb"]);
    let f = learn_exact(&s, Fragment::XAnd, 6).unwrap();
    assert_eq!(f.size(), 5);
    for w in all_words(2, 1, 5) {
        assert_eq!(naive_sat(&w, &f), w.len() >= 3 && w[0] == w[2] && w[0].0 == 0);
    }
    let same = Sample::from_strs(&ab, &["ab", "b"], &["b", "ab"]);
    for fragment in Fragment::ALL {
        assert_eq!(minimal_size(&same, fragment, 8), None);
    }
    let inst = SetCoverInstance::new(1, vec![BTreeSet::from([1])]).unwrap();
    assert_eq!(minimal_size(&setcover_to_sample(&inst), Fragment::XAnd, 8), Some(4));
}

#[test]
fn outputs_are_minimal_against_independent_enumeration() {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(21);
    let by_size = formulas_by_size(FX_AND_OR, 2, 6);
    for _ in 0..150 {
        let s = random_sample(&mut rng, 2, 3, 4);
        let got = learn_exact(&s, Fragment::FXAndOr, 6);
        let first = (1..=6).find(|&k| by_size[k].iter().any(|f| naive_separates(&s, f)));
        assert_eq!(got.as_ref().map(Formula::size), first);
        if let Some(f) = got {
            assert!(check_separates(&s, &f) && naive_separates(&s, &f));
        }
    }
}

#[test]
fn ties_follow_enumeration_order() {
    let ab = Alphabet::letters(2);
    let s = Sample::from_strs(&ab, &["ab"], &["bb"]);
    let report = learn_exact_with(&s, Fragment::Full, 4, ExactOptions { dedup: false });
    let winner = report.formula.unwrap();
    let first = enumerate_fragment(Fragment::Full, &ab, 4).find(|f| check_separates(&s, f)).unwrap();
    assert_eq!(winner, first);
}
