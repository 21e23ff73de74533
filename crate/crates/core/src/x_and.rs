//! Patterns, the normal form of the `X`/`∧` fragment, and the greedy set-cover learner.
//!
//! A pattern requires letter `c_q` at absolute position `i_q` for `i_1 < ... < i_p`, and is
//! written `X^(i_1 - 1)(c_1 ∧ X^(i_2 - i_1)(c_2 ∧ ...))`, of size `last + 2 (width - 1)`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::{require_fragment, Formula, Fragment, NotInFragment};
use crate::trace::{Alphabet, Sample, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// Two different letters required at one position.
    Unsat,
    /// Requirements `(position, letter)` with strictly increasing positions, starting at 1.
    Letters(Vec<(usize, Symbol)>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern needs at least one requirement")]
    Empty,
    #[error("pattern positions must be strictly increasing and start at 1")]
    BadPositions,
    #[error("the unsatisfiable pattern has no fixed formula")]
    Unsat,
}

impl Pattern {
    pub fn new(reqs: Vec<(usize, Symbol)>) -> Result<Self, PatternError> {
        if reqs.is_empty() {
            return Err(PatternError::Empty);
        }
        let increasing = reqs.windows(2).all(|w| w[0].0 < w[1].0);
        if !increasing || reqs[0].0 == 0 {
            return Err(PatternError::BadPositions);
        }
        Ok(Pattern::Letters(reqs))
    }

    pub fn requirements(&self) -> &[(usize, Symbol)] {
        match self {
            Pattern::Unsat => &[],
            Pattern::Letters(r) => r,
        }
    }

    pub fn last(&self) -> usize {
        self.requirements().last().map_or(0, |r| r.0)
    }

    pub fn width(&self) -> usize {
        self.requirements().len()
    }

    /// Size of the formula the pattern stands for. `Unsat` counts as `c_1 ∧ c_2`.
    pub fn size(&self) -> usize {
        match self {
            Pattern::Unsat => 3,
            Pattern::Letters(_) => self.last() + 2 * (self.width() - 1),
        }
    }
}

/// Equivalent pattern of an `X`/`∧` formula, no larger than the formula.
pub fn normalize_x_and(formula: &Formula) -> Result<Pattern, NotInFragment> {
    require_fragment(formula, Fragment::XAnd)?;

    // offset (0-based) -> letter; None once two requirements clash
    fn collect(f: &Formula, shift: usize, reqs: &mut BTreeMap<usize, Symbol>) -> bool {
        match f {
            Formula::Atom(c) => match reqs.insert(shift, *c) {
                Some(prev) => prev == *c,
                None => true,
            },
            Formula::Next(g) => collect(g, shift + 1, reqs),
            Formula::And(l, r) => collect(l, shift, reqs) && collect(r, shift, reqs),
            _ => unreachable!("checked to be in the X/∧ fragment"),
        }
    }

    let mut reqs = BTreeMap::new();
    if !collect(formula, 0, &mut reqs) {
        return Ok(Pattern::Unsat);
    }
    Ok(Pattern::Letters(
        reqs.into_iter().map(|(off, c)| (off + 1, c)).collect(),
    ))
}

/// `X^(i_1 - 1)(c_1 ∧ X^(i_2 - i_1)(...))`.
pub fn pattern_to_formula(pattern: &Pattern) -> Result<Formula, PatternError> {
    let reqs = match pattern {
        Pattern::Unsat => return Err(PatternError::Unsat),
        Pattern::Letters(r) => r,
    };
    let mut acc: Option<Formula> = None;
    for k in (0..reqs.len()).rev() {
        let (pos, c) = reqs[k];
        let here = match acc {
            None => Formula::Atom(c),
            Some(rest) => Formula::Atom(c).and(rest.next_n(reqs[k + 1].0 - pos)),
        };
        acc = Some(here);
    }
    let first = reqs.first().ok_or(PatternError::Empty)?.0;
    Ok(acc.ok_or(PatternError::Empty)?.next_n(first - 1))
}

/// Whether `word` has every required letter; `Unsat` matches nothing.
pub fn pattern_satisfies(pattern: &Pattern, word: &[Symbol]) -> bool {
    match pattern {
        Pattern::Unsat => false,
        Pattern::Letters(reqs) => reqs.iter().all(|&(i, c)| word.get(i - 1) == Some(&c)),
    }
}

/// Fixed-width bit set over the negative words.
#[derive(Clone, PartialEq, Eq)]
struct Cover(Vec<u64>);

impl Cover {
    fn empty(n: usize) -> Self {
        Cover(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, j: usize) {
        self.0[j / 64] |= 1 << (j % 64);
    }
    fn union_with(&mut self, other: &Cover) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a |= b);
    }
    fn gain(&self, other: &Cover) -> u32 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(c, y)| (y & !c).count_ones())
            .sum()
    }
    fn count(&self) -> usize {
        self.0.iter().map(|x| x.count_ones() as usize).sum()
    }
}

/// Per-position data shared by all prefix runs.
struct Candidates {
    /// Positions (1-based) where all positives agree, with the common letter.
    agreeing: Vec<(usize, Symbol)>,
    /// Negatives rejected by requiring the common letter at that position.
    rejects: Vec<Cover>,
    negatives: usize,
}

impl Candidates {
    fn new(sample: &Sample) -> Self {
        let positives = sample.positives();
        let negatives = sample.negatives();
        let shortest = positives.iter().map(|u| u.len()).min().unwrap_or(0);
        let mut agreeing = Vec::new();
        let mut rejects = Vec::new();
        for i in 1..=shortest {
            let c = positives[0][i - 1];
            if positives.iter().all(|u| u[i - 1] == c) {
                let mut y = Cover::empty(negatives.len());
                for (j, v) in negatives.iter().enumerate() {
                    // a negative too short for position i fails the X-chain
                    if v.get(i - 1) != Some(&c) {
                        y.insert(j);
                    }
                }
                agreeing.push((i, c));
                rejects.push(y);
            }
        }
        Candidates {
            agreeing,
            rejects,
            negatives: negatives.len(),
        }
    }

    /// Greedy cover using positions `<= last_allowed`; chosen positions, sorted.
    fn greedy(&self, last_allowed: usize) -> Option<Vec<usize>> {
        let usable = self
            .agreeing
            .iter()
            .take_while(|(i, _)| *i <= last_allowed)
            .count();
        let mut covered = Cover::empty(self.negatives);
        let mut chosen = Vec::new();
        let mut used = vec![false; usable];
        while covered.count() < self.negatives {
            let mut best: Option<(u32, usize)> = None;
            for k in (0..usable).filter(|&k| !used[k]) {
                let gain = covered.gain(&self.rejects[k]);
                // strict comparison keeps the smallest position on ties
                if gain > 0 && best.is_none_or(|(g, _)| gain > g) {
                    best = Some((gain, k));
                }
            }
            let (_, k) = best?;
            used[k] = true;
            covered.union_with(&self.rejects[k]);
            chosen.push(k);
        }
        chosen.sort_unstable();
        Some(chosen)
    }

    fn pattern(&self, chosen: &[usize]) -> Pattern {
        Pattern::Letters(chosen.iter().map(|&k| self.agreeing[k]).collect())
    }
}

/// Greedy `ln(n)`-approximate separator in the `X`/`∧` fragment, or `None` when no
/// pattern separates the sample.
///
/// Runs the greedy cover once per prefix length and keeps the smallest pattern; equal
/// sizes are broken by the printed form.
pub fn greedy_learn_x_and(sample: &Sample) -> Option<Pattern> {
    let candidates = Candidates::new(sample);
    let alphabet: &Alphabet = sample.alphabet();
    let longest = candidates.agreeing.last().map_or(0, |&(i, _)| i);
    let mut best: Option<(usize, String, Pattern)> = None;
    let mut last_result: Option<Vec<usize>> = None;
    for prefix in 1..=longest {
        if !candidates.agreeing.iter().any(|&(i, _)| i == prefix) {
            // no new candidate position, so the run equals the previous prefix's
            continue;
        }
        let Some(chosen) = candidates.greedy(prefix) else {
            continue;
        };
        if last_result.as_ref() == Some(&chosen) {
            continue;
        }
        let pattern = candidates.pattern(&chosen);
        last_result = Some(chosen);
        let size = pattern.size();
        if best.as_ref().is_some_and(|(s, _, _)| *s < size) {
            continue;
        }
        let printed = pattern_to_formula(&pattern)
            .expect("greedy patterns are satisfiable")
            .display(alphabet)
            .to_string();
        if best
            .as_ref()
            .is_none_or(|(s, p, _)| (size, &printed) < (*s, p))
        {
            best = Some((size, printed, pattern));
        }
    }
    best.map(|(_, _, p)| p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::semantics::check_separates;

    const A: Symbol = Symbol(0);
    const B: Symbol = Symbol(1);

    fn f(s: &str) -> Formula {
        parse_formula(s, &Alphabet::letters(2)).unwrap()
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(
            normalize_x_and(&f("a & X a")),
            Ok(Pattern::Letters(vec![(1, A), (2, A)]))
        );
        assert_eq!(normalize_x_and(&f("a & b")), Ok(Pattern::Unsat));
        assert_eq!(
            normalize_x_and(&f("X (a & X b) & X X b")),
            Ok(Pattern::Letters(vec![(2, A), (3, B)]))
        );
        assert!(normalize_x_and(&f("F a")).is_err());
    }

    #[test]
    fn pattern_formulas() {
        let p = Pattern::new(vec![(1, A)]).unwrap();
        assert_eq!(pattern_to_formula(&p), Ok(f("a")));
        let p = Pattern::new(vec![(2, A), (4, B)]).unwrap();
        assert_eq!(pattern_to_formula(&p), Ok(f("X (a & X X b)")));
        assert_eq!(p.size(), 6);
        let p = Pattern::new(vec![(1, A), (2, A)]).unwrap();
        assert_eq!(pattern_to_formula(&p).unwrap().size(), 4);
        assert_eq!(pattern_to_formula(&Pattern::Unsat), Err(PatternError::Unsat));
        assert_eq!(Pattern::new(vec![(2, A), (2, B)]), Err(PatternError::BadPositions));
        assert_eq!(Pattern::new(vec![]), Err(PatternError::Empty));
    }

    #[test]
    fn pattern_satisfaction() {
        let ab = Alphabet::letters(2);
        let w = |s: &str| ab.parse_word(s).unwrap();
        assert!(pattern_satisfies(&Pattern::new(vec![(1, A)]).unwrap(), &w("a")));
        assert!(!pattern_satisfies(&Pattern::new(vec![(2, A)]).unwrap(), &w("a")));
        assert!(pattern_satisfies(
            &Pattern::new(vec![(1, A), (3, A)]).unwrap(),
            &w("aba")
        ));
        assert!(!pattern_satisfies(&Pattern::Unsat, &w("aba")));
    }

    #[test]
    fn greedy_examples() {
        let ab = Alphabet::letters(2);
        let s = Sample::from_strs(&ab, &["ab"], &["bb"]);
        assert_eq!(greedy_learn_x_and(&s), Some(Pattern::Letters(vec![(1, A)])));

        let s = Sample::from_strs(&ab, &["aba"], &["bba", "abb"]);
        let p = greedy_learn_x_and(&s).unwrap();
        assert_eq!(p, Pattern::Letters(vec![(1, A), (3, A)]));
        assert_eq!(p.size(), 5);
        assert!(check_separates(&s, &pattern_to_formula(&p).unwrap()));

        let s = Sample::from_strs(&ab, &["ab"], &["ab"]);
        assert_eq!(greedy_learn_x_and(&s), None);
    }

    #[test]
    fn short_negatives_are_rejected_by_far_positions() {
        let ab = Alphabet::letters(2);
        let s = Sample::from_strs(&ab, &["aaa"], &["a", "aa"]);
        let p = greedy_learn_x_and(&s).unwrap();
        assert_eq!(p, Pattern::Letters(vec![(3, A)]));
        assert!(check_separates(&s, &pattern_to_formula(&p).unwrap()));
    }
}
