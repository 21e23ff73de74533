mod common;

use common::*;
use ltlearn::formula::{Formula, Op};
use ltlearn::semantics::{check_separates, eval_table};
use ltlearn::trace::{Symbol, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn formula(max_size: usize) -> impl Strategy<Value = Formula> {
    (any::<u64>(), 1..=max_size).prop_map(move |(seed, size)| {
        random_formula(&mut ChaCha8Rng::seed_from_u64(seed), FULL_WITH_NEG, 3, size)
    })
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0u16..3).prop_map(Symbol), 1..=max_len).prop_map(Word)
}

proptest! {
    #[test]
    fn tables_match_naive_semantics(phi in formula(8), w in word(8)) {
        let t = eval_table(&phi, &w);
        prop_assert_eq!(t.len(), w.len());
        for i in 1..=w.len() {
            prop_assert_eq!(t.get(i), naive_holds(&phi, &w, i));
        }
    }

    #[test]
    fn temporal_operators_are_suffix_scans(phi in formula(6), w in word(70)) {
        let inner = eval_table(&phi, &w).to_vec();
        let f = eval_table(&Formula::Eventually(Box::new(phi.clone())), &w).to_vec();
        let g = eval_table(&Formula::Globally(Box::new(phi.clone())), &w).to_vec();
        let x = eval_table(&Formula::Next(Box::new(phi)), &w).to_vec();
        for i in 0..w.len() {
            prop_assert_eq!(f[i], inner[i..].iter().any(|&b| b));
            prop_assert_eq!(g[i], inner[i..].iter().all(|&b| b));
            prop_assert_eq!(x[i], i + 1 < w.len() && inner[i + 1]);
        }
    }

    #[test]
    fn separation_matches_naive(seed in any::<u64>(), size in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_sample(&mut rng, 2, 4, 5);
        let phi = random_formula(&mut rng, &[Op::Atom, Op::Next, Op::Eventually, Op::Globally, Op::And, Op::Or], 2, size);
        prop_assert_eq!(check_separates(&s, &phi), naive_separates(&s, &phi));
    }
}
