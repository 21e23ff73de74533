mod common;

use common::*;
use ltlearn::enumerative::minimal_size;
use ltlearn::formula::{parse_formula, Fragment};
use ltlearn::fx::{disjunction_expansions, remove_f, trivial_separator, trivial_separator_size};
use ltlearn::reductions::{setcover_to_sample, SetCoverInstance};
use ltlearn::semantics::{check_separates, satisfies};
use ltlearn::trace::{Alphabet, Sample};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

const FX_AND: &[ltlearn::formula::Op] = &[
    ltlearn::formula::Op::Atom,
    ltlearn::formula::Op::Next,
    ltlearn::formula::Op::Eventually,
    ltlearn::formula::Op::And,
];

#[test]
fn expansions_imply_the_formula_and_are_not_larger() {
    let words = all_words(2, 1, 5);
    for phi in all_formulas(FX_AND_OR, 2, 6) {
        for psi in disjunction_expansions(&phi).unwrap() {
            assert!(psi.size() <= phi.size());
            assert!(psi.in_fragment(Fragment::FXAndOr));
            assert!(!format!("{psi:?}").contains("Or("));
            for w in &words {
                assert!(!satisfies(w, &psi) || satisfies(w, &phi));
            }
        }
    }
}

#[test]
fn erasing_f_strengthens() {
    let words = all_words(2, 1, 6);
    for phi in all_formulas(FX_AND, 2, 6) {
        let erased = remove_f(&phi).unwrap();
        assert!(erased.size() <= phi.size());
        assert!(erased.in_fragment(Fragment::XAnd));
        for w in &words {
            assert!(!satisfies(w, &erased) || satisfies(w, &phi));
        }
    }
}

fn setcover_samples(max_l: usize) -> Vec<Sample> {
    let mut out = Vec::new();
    for l in 1..=max_l {
        for n in 1..=3 {
            for code in 0u32..1 << (n * l) {
                let sets = (0..l)
                    .map(|i| (0..n).filter(|j| code >> (i * n + j) & 1 == 1).map(|j| j + 1).collect())
                    .collect();
                let inst = SetCoverInstance::new(n, sets).unwrap();
                if inst.has_cover() {
                    out.push(setcover_to_sample(&inst));
                }
            }
        }
    }
    out
}

#[test]
fn erasing_f_keeps_separation_on_reduction_samples() {
    let formulas = all_formulas(FX_AND, 2, 7);
    for s in setcover_samples(3) {
        for phi in &formulas {
            if check_separates(&s, phi) {
                assert!(check_separates(&s, &remove_f(phi).unwrap()));
            }
        }
    }
}

#[test]
fn reduction_samples_have_equal_minima_across_fragments() {
    let ab = Alphabet::letters(2);
    let g = parse_formula("G a", &ab).unwrap();
    for s in setcover_samples(4).into_iter().step_by(7) {
        let x = minimal_size(&s, Fragment::XAnd, 20).unwrap();
        assert_eq!(minimal_size(&s, Fragment::FXAndOr, x), Some(x));
        assert!(check_separates(&s, &g));
        assert_eq!(minimal_size(&s, Fragment::Full, x), Some(2));
    }
}

#[test]
fn trivial_separator_separates_equal_length_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..500 {
        let len = rng.gen_range(1..=6);
        let pos: Vec<_> = (0..rng.gen_range(1..=5)).map(|_| random_word(&mut rng, 3, len, len)).collect();
        let neg: Vec<_> = (0..rng.gen_range(1..=5)).map(|_| random_word(&mut rng, 3, len, len)).collect();
        let s = Sample::new(Alphabet::letters(3), pos, neg).unwrap();
        match trivial_separator(&s).unwrap() {
            Some(f) => {
                assert!(naive_separates(&s, &f) && f.in_fragment(Fragment::FXAndOr));
                let distinct: BTreeSet<_> = s.positives().iter().collect();
                assert_eq!(f.size(), trivial_separator_size(distinct.len(), len));
            }
            None => assert!(s.contradiction().is_some()),
        }
    }
}
