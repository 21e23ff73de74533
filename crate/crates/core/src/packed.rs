//! Whole-sample truth tables packed into one bit string: every word of a sample gets a
//! contiguous run of bits, so one formula's table over the sample is a single value and
//! the temporal operators become word-parallel shifts.

use std::hash::Hash;

#[cfg(test)]
use crate::formula::Formula;
#[cfg(test)]
use crate::semantics::SemTable;
use crate::trace::{Sample, Symbol};

pub(crate) trait Packed: Clone + Eq + Hash {
    fn zeros(bits: usize) -> Self;
    fn set(&mut self, bit: usize);
    #[cfg_attr(not(test), allow(dead_code))]
    fn get(&self, bit: usize) -> bool;
    fn and(&self, rhs: &Self) -> Self;
    fn or(&self, rhs: &Self) -> Self;
    /// Moves bit `i + k` to bit `i`.
    fn shr(&self, k: usize) -> Self;

    fn covers(&self, mask: &Self) -> bool {
        self.and(mask) == *mask
    }

    fn disjoint(&self, mask: &Self) -> bool;
}

impl Packed for u64 {
    fn zeros(_: usize) -> Self {
        0
    }
    fn set(&mut self, bit: usize) {
        *self |= 1 << bit;
    }
    fn get(&self, bit: usize) -> bool {
        self >> bit & 1 == 1
    }
    fn and(&self, rhs: &Self) -> Self {
        self & rhs
    }
    fn or(&self, rhs: &Self) -> Self {
        self | rhs
    }
    fn shr(&self, k: usize) -> Self {
        self.checked_shr(k as u32).unwrap_or(0)
    }
    fn disjoint(&self, mask: &Self) -> bool {
        self & mask == 0
    }
}

impl Packed for u128 {
    fn zeros(_: usize) -> Self {
        0
    }
    fn set(&mut self, bit: usize) {
        *self |= 1 << bit;
    }
    fn get(&self, bit: usize) -> bool {
        self >> bit & 1 == 1
    }
    fn and(&self, rhs: &Self) -> Self {
        self & rhs
    }
    fn or(&self, rhs: &Self) -> Self {
        self | rhs
    }
    fn shr(&self, k: usize) -> Self {
        self.checked_shr(k as u32).unwrap_or(0)
    }
    fn disjoint(&self, mask: &Self) -> bool {
        self & mask == 0
    }
}

/// Arbitrary-width bit string for samples longer than 128 positions in total.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Limbs(Box<[u64]>);

impl Packed for Limbs {
    fn zeros(bits: usize) -> Self {
        Limbs(vec![0; bits.div_ceil(64)].into_boxed_slice())
    }
    fn set(&mut self, bit: usize) {
        self.0[bit / 64] |= 1 << (bit % 64);
    }
    fn get(&self, bit: usize) -> bool {
        self.0.get(bit / 64).is_some_and(|l| l >> (bit % 64) & 1 == 1)
    }
    fn and(&self, rhs: &Self) -> Self {
        Limbs(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a & b).collect())
    }
    fn or(&self, rhs: &Self) -> Self {
        Limbs(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a | b).collect())
    }
    fn shr(&self, k: usize) -> Self {
        let (whole, part) = (k / 64, k % 64);
        let n = self.0.len();
        let limb = |i: usize| if i < n { self.0[i] } else { 0 };
        Limbs(
            (0..n)
                .map(|i| {
                    let lo = limb(i + whole) >> part;
                    let hi = if part == 0 {
                        0
                    } else {
                        limb(i + whole + 1) << (64 - part)
                    };
                    lo | hi
                })
                .collect(),
        )
    }
    fn disjoint(&self, mask: &Self) -> bool {
        self.0.iter().zip(mask.0.iter()).all(|(a, b)| a & b == 0)
    }
}

/// Bit layout of a sample: positives first, then negatives, each word contiguous with
/// position `i` of a word at `offset + i - 1`.
pub(crate) struct Layout<P> {
    #[cfg_attr(not(test), allow(dead_code))]
    pub offsets: Vec<usize>,
    #[cfg_attr(not(test), allow(dead_code))]
    pub lens: Vec<usize>,
    pub zero: P,
    /// `(k, reach, outside)`: `reach` marks positions with a same-word position `k` ahead,
    /// `outside` marks the other positions. `k` runs over powers of two.
    pub steps: Vec<(usize, P, P)>,
    pub atoms: Vec<P>,
    pub neg_atoms: Vec<P>,
    pub positive_starts: P,
    pub negative_starts: P,
}

impl<P: Packed> Layout<P> {
    pub fn new(sample: &Sample) -> Self {
        let words: Vec<&[Symbol]> = sample.words().map(|w| w.symbols()).collect();
        let total: usize = words.iter().map(|w| w.len()).sum();
        let mut offsets = Vec::with_capacity(words.len());
        let mut acc = 0;
        for w in &words {
            offsets.push(acc);
            acc += w.len();
        }
        let lens: Vec<usize> = words.iter().map(|w| w.len()).collect();
        let mask = |pred: &dyn Fn(usize, usize) -> bool| {
            let mut m = P::zeros(total);
            for (w, (&off, &len)) in offsets.iter().zip(&lens).enumerate() {
                for i in 1..=len {
                    if pred(w, i) {
                        m.set(off + i - 1);
                    }
                }
            }
            m
        };
        let max_len = lens.iter().copied().max().unwrap_or(0);
        let mut steps = Vec::new();
        let mut k = 1;
        while k < max_len {
            let reach = mask(&|w, i| i + k <= lens[w]);
            let outside = mask(&|w, i| i + k > lens[w]);
            steps.push((k, reach, outside));
            k *= 2;
        }
        let atoms: Vec<P> = sample
            .alphabet()
            .symbols()
            .map(|c| mask(&|w, i| words[w][i - 1] == c))
            .collect();
        let neg_atoms = sample
            .alphabet()
            .symbols()
            .map(|c| mask(&|w, i| words[w][i - 1] != c))
            .collect();
        let n_pos = sample.positives().len();
        let positive_starts = mask(&|w, i| w < n_pos && i == 1);
        let negative_starts = mask(&|w, i| w >= n_pos && i == 1);
        Layout {
            offsets,
            lens,
            zero: P::zeros(total),
            steps,
            atoms,
            neg_atoms,
            positive_starts,
            negative_starts,
        }
    }

    pub fn next(&self, t: &P) -> P {
        match self.steps.first() {
            Some((_, reach, _)) => t.shr(1).and(reach),
            None => self.zero.clone(),
        }
    }

    pub fn eventually(&self, t: &P) -> P {
        let mut t = t.clone();
        for (k, reach, _) in &self.steps {
            t = t.or(&t.shr(*k).and(reach));
        }
        t
    }

    pub fn globally(&self, t: &P) -> P {
        let mut t = t.clone();
        for (k, _, outside) in &self.steps {
            t = t.and(&t.shr(*k).or(outside));
        }
        t
    }

    pub fn separates(&self, t: &P) -> bool {
        t.covers(&self.positive_starts) && t.disjoint(&self.negative_starts)
    }

    #[cfg(test)]
    pub fn eval(&self, formula: &Formula) -> P {
        match formula {
            Formula::Atom(c) => self.atoms[c.index()].clone(),
            Formula::NegAtom(c) => self.neg_atoms[c.index()].clone(),
            Formula::And(l, r) => self.eval(l).and(&self.eval(r)),
            Formula::Or(l, r) => self.eval(l).or(&self.eval(r)),
            Formula::Next(f) => self.next(&self.eval(f)),
            Formula::Eventually(f) => self.eventually(&self.eval(f)),
            Formula::Globally(f) => self.globally(&self.eval(f)),
        }
    }

    /// Splits a packed table back into per-word tables.
    #[cfg(test)]
    pub fn unpack(&self, t: &P) -> Vec<SemTable> {
        self.offsets
            .iter()
            .zip(&self.lens)
            .map(|(&off, &len)| SemTable::from_fn(len, |i| t.get(off + i - 1)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::semantics::eval_table;
    use crate::trace::Alphabet;

    fn check<P: Packed>(sample: &Sample, formulas: &[&str]) {
        let layout = Layout::<P>::new(sample);
        for f in formulas {
            let formula = parse_formula(f, sample.alphabet()).unwrap();
            let packed = layout.unpack(&layout.eval(&formula));
            let direct: Vec<SemTable> = sample.words().map(|w| eval_table(&formula, w)).collect();
            assert_eq!(packed, direct, "{f}");
        }
    }

    const FORMULAS: &[&str] = &[
        "a",
        "!b",
        "X a",
        "X X b & a",
        "F b",
        "G a",
        "G (a | X b)",
        "F (a & X G b)",
        "X X X X X X X X X a",
    ];

    #[test]
    fn packed_tables_match_per_word_tables() {
        let ab = Alphabet::letters(3);
        let s = Sample::from_strs(&ab, &["abcab", "b", "aab"], &["cc", "abacabaabbbcc", "a"]);
        check::<u64>(&s, FORMULAS);
        check::<u128>(&s, FORMULAS);
        check::<Limbs>(&s, FORMULAS);
    }

    #[test]
    fn wide_samples_cross_limbs() {
        let ab = Alphabet::letters(2);
        let long: String = (0..150).map(|i| if i % 7 == 3 { 'b' } else { 'a' }).collect();
        let s = Sample::from_strs(&ab, &[&long, "ab"], &[&long[..90], "b"]);
        check::<Limbs>(&s, FORMULAS);
    }
}
