//! Finite-trace semantics: the table of positions of a word where a formula holds.

use crate::formula::Formula;
use crate::trace::{Sample, Symbol};

/// Truth values of one formula at positions `1..=len` of one word, packed 64 per limb.
/// Bit `i - 1` holds the value at position `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemTable {
    len: usize,
    limbs: Vec<u64>,
}

impl SemTable {
    pub fn falses(len: usize) -> Self {
        SemTable {
            len,
            limbs: vec![0; len.div_ceil(64)],
        }
    }

    pub fn trues(len: usize) -> Self {
        let mut t = SemTable {
            len,
            limbs: vec![!0; len.div_ceil(64)],
        };
        t.clear_tail();
        t
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut t = SemTable::falses(len);
        for i in 1..=len {
            if f(i) {
                t.set(i, true);
            }
        }
        t
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Value at 1-indexed position `i`; false outside the word.
    pub fn get(&self, i: usize) -> bool {
        if i == 0 || i > self.len {
            return false;
        }
        let k = i - 1;
        self.limbs[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!((1..=self.len).contains(&i), "position {i} out of range");
        let k = i - 1;
        if value {
            self.limbs[k / 64] |= 1 << (k % 64);
        } else {
            self.limbs[k / 64] &= !(1 << (k % 64));
        }
    }

    /// Truth value at position 1, i.e. whether the word satisfies the formula.
    pub fn verdict(&self) -> bool {
        self.get(1)
    }

    pub fn to_vec(&self) -> Vec<bool> {
        (1..=self.len).map(|i| self.get(i)).collect()
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.limbs.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    fn and_assign(&mut self, rhs: &SemTable) {
        self.limbs.iter_mut().zip(&rhs.limbs).for_each(|(a, b)| *a &= b);
    }

    fn or_assign(&mut self, rhs: &SemTable) {
        self.limbs.iter_mut().zip(&rhs.limbs).for_each(|(a, b)| *a |= b);
    }

    /// Position `i` takes the value of `i + 1`; the last position becomes false.
    fn shift_next(&mut self) {
        let n = self.limbs.len();
        for k in 0..n {
            let carry = if k + 1 < n { self.limbs[k + 1] << 63 } else { 0 };
            self.limbs[k] = self.limbs[k] >> 1 | carry;
        }
    }

    /// Suffix-OR scan from the last position down.
    fn suffix_or(&mut self) {
        let mut acc = false;
        for i in (1..=self.len).rev() {
            acc |= self.get(i);
            self.set(i, acc);
        }
    }

    /// Suffix-AND scan from the last position down.
    fn suffix_and(&mut self) {
        let mut acc = true;
        for i in (1..=self.len).rev() {
            acc &= self.get(i);
            self.set(i, acc);
        }
    }
}

/// Bottom-up evaluation of `formula` at every position of `word`, in `O(|formula|·|word|)`.
pub fn eval_table(formula: &Formula, word: &[Symbol]) -> SemTable {
    let len = word.len();
    match formula {
        Formula::Atom(c) => SemTable::from_fn(len, |i| word[i - 1] == *c),
        Formula::NegAtom(c) => SemTable::from_fn(len, |i| word[i - 1] != *c),
        Formula::And(l, r) => {
            let mut t = eval_table(l, word);
            t.and_assign(&eval_table(r, word));
            t
        }
        Formula::Or(l, r) => {
            let mut t = eval_table(l, word);
            t.or_assign(&eval_table(r, word));
            t
        }
        Formula::Next(f) => {
            let mut t = eval_table(f, word);
            t.shift_next();
            t
        }
        Formula::Eventually(f) => {
            let mut t = eval_table(f, word);
            t.suffix_or();
            t
        }
        Formula::Globally(f) => {
            let mut t = eval_table(f, word);
            t.suffix_and();
            t
        }
    }
}

/// `word, 1 ⊨ formula`. The empty word satisfies nothing.
pub fn satisfies(word: &[Symbol], formula: &Formula) -> bool {
    eval_table(formula, word).verdict()
}

/// True iff every positive word satisfies `formula` and no negative word does.
pub fn check_separates(sample: &Sample, formula: &Formula) -> bool {
    sample.positives().iter().all(|u| satisfies(u, formula))
        && !sample.negatives().iter().any(|v| satisfies(v, formula))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::trace::Alphabet;

    fn table(f: &str, w: &str) -> Vec<bool> {
        let ab = Alphabet::letters(2);
        let formula = parse_formula(f, &ab).unwrap();
        eval_table(&formula, &ab.parse_word(w).unwrap()).to_vec()
    }

    #[test]
    fn table_examples() {
        assert_eq!(table("F b", "ab"), [true, true]);
        assert_eq!(table("X a", "ab"), [false, false]);
        assert_eq!(table("G a", "aa"), [true, true]);
        assert_eq!(table("G a", "ab"), [false, false]);
        assert_eq!(table("G a", "ba"), [false, true]);
        assert_eq!(table("X !a", "aab"), [false, true, false]);
    }

    #[test]
    fn next_crosses_limb_boundaries() {
        let ab = Alphabet::letters(2);
        let mut w = vec![Symbol(0); 130];
        w[64] = Symbol(1);
        w[129] = Symbol(1);
        let t = eval_table(&parse_formula("X b", &ab).unwrap(), &w);
        let expected: Vec<usize> = (1..=130).filter(|&i| t.get(i)).collect();
        assert_eq!(expected, [64, 129]);
        let g = eval_table(&parse_formula("F b", &ab).unwrap(), &w);
        assert!(g.get(130) && g.get(1) && !SemTable::falses(3).get(4));
        assert_eq!(SemTable::trues(70).to_vec(), vec![true; 70]);
    }

    #[test]
    fn separation_examples() {
        let ab = Alphabet::letters(2);
        let f = |s: &str| parse_formula(s, &ab).unwrap();
        assert!(check_separates(&Sample::from_strs(&ab, &["a"], &["b"]), &f("a")));
        assert!(check_separates(&Sample::from_strs(&ab, &["aa"], &["ab"]), &f("X a")));
        assert!(check_separates(
            &Sample::from_strs(&ab, &["aba"], &["bba", "abb"]),
            &f("a & X X a")
        ));
        assert!(!check_separates(&Sample::from_strs(&ab, &["ab"], &["ab"]), &f("a")));
    }
}
