//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use ltlearn::formula::{Formula, Op};
use ltlearn::trace::{Alphabet, Sample, Symbol, Word};
use rand::seq::SliceRandom;
use rand::Rng;

/// `w, i ⊨ φ` read straight off the semantic clauses, positions 1-based.
pub fn naive_holds(f: &Formula, w: &[Symbol], i: usize) -> bool {
    let l = w.len();
    if i == 0 || i > l {
        return false;
    }
    match f {
        Formula::Atom(c) => w[i - 1] == *c,
        Formula::NegAtom(c) => w[i - 1] != *c,
        Formula::And(a, b) => naive_holds(a, w, i) && naive_holds(b, w, i),
        Formula::Or(a, b) => naive_holds(a, w, i) || naive_holds(b, w, i),
        Formula::Next(a) => i < l && naive_holds(a, w, i + 1),
        Formula::Eventually(a) => (i..=l).any(|j| naive_holds(a, w, j)),
        Formula::Globally(a) => (i..=l).all(|j| naive_holds(a, w, j)),
    }
}

pub fn naive_sat(w: &[Symbol], f: &Formula) -> bool {
    naive_holds(f, w, 1)
}

pub fn naive_separates(s: &Sample, f: &Formula) -> bool {
    s.positives().iter().all(|u| naive_sat(u, f)) && !s.negatives().iter().any(|v| naive_sat(v, f))
}

/// Searches every increasing position map from `u` into `v`.
pub fn naive_subword(u: &[Symbol], v: &[Symbol]) -> bool {
    fn go(u: &[Symbol], v: &[Symbol], from: usize) -> bool {
        match u.split_first() {
            None => true,
            Some((c, rest)) => (from..v.len()).any(|p| v[p] == *c && go(rest, v, p + 1)),
        }
    }
    go(u, v, 0)
}

/// All words over `letters` symbols with lengths in `min..=max`, shortest first,
/// lexicographic within a length.
pub fn all_words(letters: usize, min: usize, max: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut level: Vec<Vec<Symbol>> = vec![vec![]];
    for len in 0..=max {
        if len >= min {
            out.extend(level.iter().cloned().map(Word));
        }
        level = level
            .iter()
            .flat_map(|w| {
                (0..letters).map(move |c| {
                    let mut v = w.clone();
                    v.push(Symbol(c as u16));
                    v
                })
            })
            .collect();
    }
    out
}

pub fn non_repeating(w: &[Symbol]) -> bool {
    w.windows(2).all(|p| p[0] != p[1])
}

/// Length of a shortest word that is a subword of every positive and of no negative,
/// found by trying every candidate in length order.
pub fn brute_shortest(
    positives: &[Word],
    negatives: &[Word],
    letters: usize,
    non_rep: bool,
) -> Option<usize> {
    let bound = positives.iter().map(|u| u.len()).min()?;
    all_words(letters, 0, bound)
        .into_iter()
        .filter(|w| !non_rep || non_repeating(w))
        .find(|w| {
            positives.iter().all(|u| naive_subword(w, u))
                && !negatives.iter().any(|v| naive_subword(w, v))
        })
        .map(|w| w.len())
}

/// Every formula built from `ops` over `letters` atoms, grouped by size `1..=max_size`.
pub fn formulas_by_size(ops: &[Op], letters: usize, max_size: usize) -> Vec<Vec<Formula>> {
    let mut by: Vec<Vec<Formula>> = vec![Vec::new(); max_size + 1];
    for size in 1..=max_size {
        let mut here = Vec::new();
        if size == 1 {
            for c in 0..letters as u16 {
                if ops.contains(&Op::Atom) {
                    here.push(Formula::Atom(Symbol(c)));
                }
                if ops.contains(&Op::NegAtom) {
                    here.push(Formula::NegAtom(Symbol(c)));
                }
            }
        } else {
            for g in &by[size - 1] {
                if ops.contains(&Op::Next) {
                    here.push(Formula::Next(Box::new(g.clone())));
                }
                if ops.contains(&Op::Eventually) {
                    here.push(Formula::Eventually(Box::new(g.clone())));
                }
                if ops.contains(&Op::Globally) {
                    here.push(Formula::Globally(Box::new(g.clone())));
                }
            }
            for left in 1..size - 1 {
                let right = size - 1 - left;
                for a in &by[left] {
                    for b in &by[right] {
                        if ops.contains(&Op::And) {
                            here.push(Formula::And(Box::new(a.clone()), Box::new(b.clone())));
                        }
                        if ops.contains(&Op::Or) {
                            here.push(Formula::Or(Box::new(a.clone()), Box::new(b.clone())));
                        }
                    }
                }
            }
        }
        by[size] = here;
    }
    by
}

pub fn all_formulas(ops: &[Op], letters: usize, max_size: usize) -> Vec<Formula> {
    formulas_by_size(ops, letters, max_size).into_iter().flatten().collect()
}

pub const X_AND: &[Op] = &[Op::Atom, Op::Next, Op::And];
pub const F_AND: &[Op] = &[Op::Atom, Op::Eventually, Op::And];
pub const FX_AND_OR: &[Op] = &[Op::Atom, Op::Next, Op::Eventually, Op::And, Op::Or];
pub const FULL_WITH_NEG: &[Op] = &[
    Op::Atom,
    Op::NegAtom,
    Op::Next,
    Op::Eventually,
    Op::Globally,
    Op::And,
    Op::Or,
];

/// Random formula of size exactly `size` over `ops`.
pub fn random_formula<R: Rng>(rng: &mut R, ops: &[Op], letters: usize, size: usize) -> Formula {
    let leaves: Vec<Op> = ops.iter().copied().filter(|o| o.arity() == 0).collect();
    let unary: Vec<Op> = ops.iter().copied().filter(|o| o.arity() == 1).collect();
    let binary: Vec<Op> = ops.iter().copied().filter(|o| o.arity() == 2).collect();
    let letter = Symbol(rng.gen_range(0..letters) as u16);
    let pick_unary = size >= 2 && !unary.is_empty();
    let pick_binary = size >= 3 && !binary.is_empty();
    let use_binary = pick_binary && (!pick_unary || rng.gen_bool(0.5));
    if size == 1 || (!pick_unary && !pick_binary) {
        return match leaves.choose(rng) {
            Some(Op::NegAtom) => Formula::NegAtom(letter),
            _ => Formula::Atom(letter),
        };
    }
    if use_binary {
        let left = rng.gen_range(1..size - 1);
        let a = Box::new(random_formula(rng, ops, letters, left));
        let b = Box::new(random_formula(rng, ops, letters, size - 1 - left));
        match binary.choose(rng) {
            Some(Op::Or) => Formula::Or(a, b),
            _ => Formula::And(a, b),
        }
    } else {
        let g = Box::new(random_formula(rng, ops, letters, size - 1));
        match unary.choose(rng) {
            Some(Op::Eventually) => Formula::Eventually(g),
            Some(Op::Globally) => Formula::Globally(g),
            _ => Formula::Next(g),
        }
    }
}

pub fn random_word<R: Rng>(rng: &mut R, letters: usize, min: usize, max: usize) -> Word {
    let len = rng.gen_range(min..=max);
    Word((0..len).map(|_| Symbol(rng.gen_range(0..letters) as u16)).collect())
}

pub fn random_sample<R: Rng>(
    rng: &mut R,
    letters: usize,
    max_per_side: usize,
    max_len: usize,
) -> Sample {
    let n = rng.gen_range(1..=max_per_side);
    let m = rng.gen_range(1..=max_per_side);
    let pos = (0..n).map(|_| random_word(rng, letters, 1, max_len)).collect();
    let neg = (0..m).map(|_| random_word(rng, letters, 1, max_len)).collect();
    Sample::new(Alphabet::letters(letters), pos, neg).unwrap()
}

/// All ways to pick `k` items of `items` with repetition-free increasing indices.
pub fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], k: usize, from: usize, acc: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in from..items.len() {
            acc.push(items[i].clone());
            go(items, k, i + 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}
