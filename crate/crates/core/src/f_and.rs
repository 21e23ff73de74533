//! The `F`/`∧` fragment: subword characterisation, forest formulas and fatterns, the
//! shortest separating subword dynamic program, and the learners built on it.

use std::collections::{BTreeMap, BTreeSet};

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::formula::{require_fragment, Formula, Fragment, NotInFragment};
use crate::semantics::check_separates;
use crate::trace::{is_subword, Sample, Symbol, Word};

/// A word without two equal adjacent letters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NonRepWord(Word);

#[derive(Debug, Error, PartialEq, Eq)]
#[error("word repeats a letter at positions {0} and {next}", next = .0 + 1)]
pub struct RepeatedLetter(pub usize);

impl NonRepWord {
    pub fn new(word: Word) -> Result<Self, RepeatedLetter> {
        match word.windows(2).position(|w| w[0] == w[1]) {
            Some(k) => Err(RepeatedLetter(k + 1)),
            None => Ok(NonRepWord(word)),
        }
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }
}

impl std::ops::Deref for NonRepWord {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

/// Words that must all occur as subwords, plus an optional required first letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FCharacterisation {
    Unsat,
    Sat {
        words: BTreeSet<NonRepWord>,
        initial: Option<Symbol>,
    },
}

impl FCharacterisation {
    /// Whether `z` meets every subword requirement and the initial letter.
    pub fn accepts(&self, z: &[Symbol]) -> bool {
        match self {
            FCharacterisation::Unsat => false,
            FCharacterisation::Sat { words, initial } => {
                initial.is_none_or(|c| z.first() == Some(&c))
                    && words.iter().all(|w| is_subword(w, z))
            }
        }
    }

    /// Equivalent characterisation with no redundant requirement: a word beginning with the
    /// initial letter loses that letter, and words that are subwords of others are dropped.
    pub fn reduce(&self) -> FCharacterisation {
        let FCharacterisation::Sat { words, initial } = self else {
            return FCharacterisation::Unsat;
        };
        let stripped: BTreeSet<Word> = words
            .iter()
            .map(|w| match (initial, w.first()) {
                (Some(c), Some(d)) if c == d => Word(w[1..].to_vec()),
                _ => w.word().clone(),
            })
            .filter(|w| !w.is_empty())
            .collect();
        let kept = stripped
            .iter()
            .filter(|w| !stripped.iter().any(|o| o != *w && is_subword(w, o)))
            .map(|w| NonRepWord((*w).clone()))
            .collect();
        FCharacterisation::Sat {
            words: kept,
            initial: *initial,
        }
    }
}

/// Characterisation of an `F`/`∧` formula by structural induction.
pub fn characterise_f_and(formula: &Formula) -> Result<FCharacterisation, NotInFragment> {
    require_fragment(formula, Fragment::FAnd)?;
    Ok(characterise(formula))
}

fn characterise(formula: &Formula) -> FCharacterisation {
    match formula {
        Formula::Atom(c) => FCharacterisation::Sat {
            words: BTreeSet::new(),
            initial: Some(*c),
        },
        Formula::Eventually(inner) => match characterise(inner) {
            FCharacterisation::Unsat => FCharacterisation::Unsat,
            FCharacterisation::Sat { words, initial } => {
                let mut lifted: BTreeSet<NonRepWord> = words
                    .into_iter()
                    .map(|w| match initial {
                        Some(c) if w.first() != Some(&c) => {
                            let mut v = vec![c];
                            v.extend_from_slice(&w);
                            NonRepWord(Word(v))
                        }
                        _ => w,
                    })
                    .collect();
                if let (true, Some(c)) = (lifted.is_empty(), initial) {
                    // F c needs c somewhere
                    lifted.insert(NonRepWord(Word(vec![c])));
                }
                FCharacterisation::Sat {
                    words: lifted,
                    initial: None,
                }
            }
        },
        Formula::And(l, r) => match (characterise(l), characterise(r)) {
            (
                FCharacterisation::Sat {
                    words: mut w1,
                    initial: c1,
                },
                FCharacterisation::Sat {
                    words: w2,
                    initial: c2,
                },
            ) => {
                let initial = match (c1, c2) {
                    (Some(a), Some(b)) if a != b => return FCharacterisation::Unsat,
                    (Some(a), _) | (None, Some(a)) => Some(a),
                    (None, None) => None,
                };
                w1.extend(w2);
                FCharacterisation::Sat {
                    words: w1,
                    initial,
                }
            }
            _ => FCharacterisation::Unsat,
        },
        _ => unreachable!("checked to be in the F/∧ fragment"),
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForestError {
    #[error("the unsatisfiable characterisation has no formula in the fragment")]
    Unsat,
    #[error("the trivially true characterisation has no formula in the fragment")]
    Trivial,
}

#[derive(Default)]
struct Trie(BTreeMap<Symbol, Trie>);

impl Trie {
    fn insert(&mut self, word: &[Symbol]) {
        if let Some((&c, rest)) = word.split_first() {
            self.0.entry(c).or_default().insert(rest);
        }
    }

    fn formulas(&self) -> Vec<Formula> {
        self.0
            .iter()
            .map(|(&c, child)| {
                let body = Formula::conjunction(
                    std::iter::once(Formula::Atom(c)).chain(child.formulas()),
                )
                .expect("non-empty");
                body.eventually()
            })
            .collect()
    }
}

/// Forest formula of a characterisation: the initial atom, if any, conjoined with one
/// nested `F` chain per tree of the prefix forest. Trees come in alphabet order.
pub fn forest_formula(ch: &FCharacterisation) -> Result<Formula, ForestError> {
    let FCharacterisation::Sat { words, initial } = ch else {
        return Err(ForestError::Unsat);
    };
    let mut trie = Trie::default();
    for w in words {
        trie.insert(w);
    }
    let conjuncts: Vec<Formula> = initial
        .map(Formula::Atom)
        .into_iter()
        .chain(trie.formulas())
        .collect();
    Formula::conjunction(conjuncts).ok_or(ForestError::Trivial)
}

/// `F(c_1 ∧ F(c_2 ∧ ... F c_p))`, of size `3p - 1`. `None` for the empty word.
pub fn fattern(word: &NonRepWord) -> Option<Formula> {
    word.iter().rev().fold(None, |acc, &c| {
        let body = match acc {
            None => Formula::Atom(c),
            Some(rest) => Formula::Atom(c).and(rest),
        };
        Some(body.eventually())
    })
}

/// `c ∧ fattern(rest)`, or the atom alone when `rest` is empty.
pub fn grounded_fattern(initial: Symbol, rest: &NonRepWord) -> Formula {
    match fattern(rest) {
        None => Formula::Atom(initial),
        Some(f) => Formula::Atom(initial).and(f),
    }
}

const SATURATED: u16 = u16::MAX;
const INFINITE: u32 = u32::MAX;

/// Memoized shortest-subword search. A state holds one cursor per word (positives first)
/// and the last emitted letter; the cursor is the first position the greedy embedding has
/// not used yet.
struct SubwordDp<'a> {
    positives: &'a [&'a [Symbol]],
    /// `ind[w][c][p]`: smallest position `>= p` of letter `c` in word `w`, or `SATURATED`.
    ind: Vec<Vec<Vec<u16>>>,
    non_repeating: bool,
    memo: FxHashMap<Box<[u16]>, u32>,
}

impl<'a> SubwordDp<'a> {
    fn new(
        positives: &'a [&'a [Symbol]],
        negatives: &'a [&'a [Symbol]],
        letters: usize,
        non_repeating: bool,
    ) -> Self {
        let ind = positives
            .iter()
            .chain(negatives)
            .map(|w| {
                (0..letters)
                    .map(|c| {
                        let mut table = vec![SATURATED; w.len() + 1];
                        for p in (0..w.len()).rev() {
                            table[p] = if w[p].index() == c {
                                p as u16
                            } else {
                                table[p + 1]
                            };
                        }
                        table
                    })
                    .collect()
            })
            .collect();
        SubwordDp {
            positives,
            ind,
            non_repeating,
            memo: FxHashMap::default(),
        }
    }

    /// Cursors after emitting `c`.
    fn advance(&self, state: &[u16], c: Symbol) -> Box<[u16]> {
        let n = self.ind.len();
        let mut next: Box<[u16]> = state.into();
        for w in 0..n {
            let p = state[w];
            next[w] = if p == SATURATED {
                SATURATED
            } else {
                match self.ind[w][c.index()][p as usize] {
                    SATURATED => SATURATED,
                    q => q + 1,
                }
            };
        }
        if self.non_repeating {
            next[n] = c.0;
        }
        next
    }

    fn letter_at_first_cursor(&self, state: &[u16]) -> Option<Symbol> {
        self.positives[0].get(state[0] as usize).copied()
    }

    fn forbidden(&self, state: &[u16], c: Symbol) -> bool {
        self.non_repeating && state[self.ind.len()] == c.0
    }

    fn skip(state: &[u16]) -> Box<[u16]> {
        let mut next: Box<[u16]> = state.into();
        next[0] += 1;
        next
    }

    fn solve(&mut self, state: &[u16]) -> u32 {
        let p = self.positives.len();
        let n = self.ind.len();
        if state[..p].contains(&SATURATED) {
            return INFINITE;
        }
        if state[p..n].iter().all(|&c| c == SATURATED) {
            return 0;
        }
        if let Some(&r) = self.memo.get(state) {
            return r;
        }
        let result = match self.letter_at_first_cursor(state) {
            None => INFINITE,
            Some(c) => {
                let take = if self.forbidden(state, c) {
                    INFINITE
                } else {
                    let next = self.advance(state, c);
                    self.solve(&next).saturating_add(1)
                };
                let skip = self.solve(&Self::skip(state));
                take.min(skip)
            }
        };
        self.memo.insert(state.into(), result);
        result
    }

    /// Shortest word from `start`, taking the earliest letter of the first positive on ties.
    fn run(&mut self, start: Box<[u16]>) -> Option<Vec<Symbol>> {
        let mut state = start;
        let mut best = self.solve(&state);
        if best == INFINITE {
            return None;
        }
        let mut word = Vec::with_capacity(best as usize);
        while best > 0 {
            let c = self
                .letter_at_first_cursor(&state)
                .expect("finite cost leaves letters to read");
            if !self.forbidden(&state, c) {
                let next = self.advance(&state, c);
                if self.solve(&next).saturating_add(1) == best {
                    word.push(c);
                    state = next;
                    best -= 1;
                    continue;
                }
            }
            state = Self::skip(&state);
        }
        Some(word)
    }
}

/// Shortest word that is a subword of every positive and of no negative. The empty
/// result means no negative is left to reject.
fn shortest_subword(
    positives: &[&[Symbol]],
    negatives: &[&[Symbol]],
    letters: usize,
    non_repeating: bool,
    last: Option<Symbol>,
) -> Option<Vec<Symbol>> {
    if positives.is_empty() {
        return None;
    }
    let mut dp = SubwordDp::new(positives, negatives, letters, non_repeating);
    let mut start = vec![0u16; positives.len() + negatives.len()];
    if non_repeating {
        start.push(last.map_or(SATURATED, |c| c.0));
    }
    dp.run(start.into())
}

/// A shortest word that is a subword of every positive and of no negative, optionally
/// restricted to words without equal adjacent letters.
pub fn shortest_separating_word(sample: &Sample, require_non_repeating: bool) -> Option<Word> {
    let positives: Vec<&[Symbol]> = sample.positives().iter().map(|w| w.symbols()).collect();
    let negatives: Vec<&[Symbol]> = sample.negatives().iter().map(|w| w.symbols()).collect();
    shortest_subword(
        &positives,
        &negatives,
        sample.alphabet().len(),
        require_non_repeating,
        None,
    )
    .map(Word)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FAndError {
    #[error("the single-fattern learner needs exactly one positive or exactly one negative word")]
    NotSingleSided,
}

/// Smallest single fattern, grounded or not, separating the whole sample.
fn best_fattern(sample: &Sample) -> Option<Formula> {
    let letters = sample.alphabet().len();
    let negatives: Vec<&[Symbol]> = sample.negatives().iter().map(|w| w.symbols()).collect();
    let plain = shortest_subword(
        &sample.positives().iter().map(|w| w.symbols()).collect::<Vec<_>>(),
        &negatives,
        letters,
        true,
        None,
    )
    .and_then(|w| fattern(&NonRepWord(Word(w))));

    let first = sample.positives()[0][0];
    let grounded = if sample.positives().iter().all(|u| u[0] == first) {
        let tails: Vec<&[Symbol]> = sample.positives().iter().map(|u| &u[1..]).collect();
        let live: Vec<&[Symbol]> = negatives
            .iter()
            .filter(|v| v[0] == first)
            .map(|v| &v[1..])
            .collect();
        shortest_subword(&tails, &live, letters, true, Some(first))
            .map(|w| grounded_fattern(first, &NonRepWord(Word(w))))
    } else {
        None
    };

    // sizes 3a - 1 and 3b + 1 never tie
    match (plain, grounded) {
        (Some(p), Some(g)) => Some(if g.size() < p.size() { g } else { p }),
        (p, g) => p.or(g),
    }
}

/// Minimal separator for a sample with one positive or one negative word, as a fattern
/// or grounded fattern. `Ok(None)` when no `F`/`∧` formula separates the sample.
pub fn learn_f_and_fattern(sample: &Sample) -> Result<Option<Formula>, FAndError> {
    if sample.positives().len() != 1 && sample.negatives().len() != 1 {
        return Err(FAndError::NotSingleSided);
    }
    Ok(best_fattern(sample))
}

/// Separator built from one fattern per negative word, within a factor of the number of
/// negatives of the optimum.
///
/// Negatives already rejected by earlier conjuncts are skipped, redundant conjuncts are
/// pruned, and the result is compared with its forest form and with the best single
/// fattern for the whole sample.
pub fn learn_f_and_napprox(sample: &Sample) -> Option<Formula> {
    if sample.contradiction().is_some() {
        return None;
    }
    let mut conjuncts: Vec<Formula> = Vec::new();
    for v in sample.negatives() {
        let current = Formula::conjunction(conjuncts.iter().cloned());
        if current
            .as_ref()
            .is_some_and(|f| !crate::semantics::satisfies(v, f))
        {
            continue;
        }
        let single = Sample::new(
            sample.alphabet().clone(),
            sample.positives().to_vec(),
            vec![v.clone()],
        )
        .expect("sub-sample of a valid sample");
        let phi = best_fattern(&single)?;
        if !conjuncts.contains(&phi) {
            conjuncts.push(phi);
        }
    }

    let mut k = 0;
    while k < conjuncts.len() && conjuncts.len() > 1 {
        let rest = Formula::conjunction(
            conjuncts
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, f)| f.clone())
                .collect::<Vec<_>>(),
        )
        .expect("at least one conjunct left");
        if check_separates(sample, &rest) {
            conjuncts.remove(k);
        } else {
            k += 1;
        }
    }

    let conj = Formula::conjunction(conjuncts).expect("sample has a negative");
    let forest = forest_formula(&characterise(&conj).reduce()).ok();
    let alphabet = sample.alphabet();
    [Some(conj), forest, best_fattern(sample)]
        .into_iter()
        .flatten()
        .min_by_key(|f| (f.size(), f.display(alphabet).to_string()))
}
