//! Constructions for the `F`/`X`/`∧`/`∨` fragment: the trivial separator, the
//! disjunction-free expansions `D(φ)`, and the `F`-erasing map `[φ]`.

use std::collections::HashSet;

use thiserror::Error;

use crate::formula::{require_fragment, Formula, Fragment, NotInFragment};
use crate::trace::{Sample, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TrivialError {
    #[error("all words must share one length, found {0} and {1}")]
    UnequalLengths(usize, usize),
}

/// `⋁_j ⋀_i X^(i-1) u_j(i)` over the distinct positives. `Ok(None)` when a negative
/// equals a positive.
pub fn trivial_separator(sample: &Sample) -> Result<Option<Formula>, TrivialError> {
    let len = sample.positives()[0].len();
    if let Some(w) = sample.words().find(|w| w.len() != len) {
        return Err(TrivialError::UnequalLengths(len, w.len()));
    }
    if sample.contradiction().is_some() {
        return Ok(None);
    }
    let mut seen = HashSet::new();
    let distinct: Vec<&Word> = sample.positives().iter().filter(|u| seen.insert(*u)).collect();
    let disjuncts: Vec<Formula> = distinct
        .into_iter()
        .map(|u| {
            let letters: Vec<Formula> = u
                .iter()
                .enumerate()
                .map(|(i, &c)| Formula::Atom(c).next_n(i))
                .collect();
            Formula::conjunction(letters).expect("words are non-empty")
        })
        .collect();
    Ok(Formula::disjunction(disjuncts))
}

/// Size of [`trivial_separator`]'s output for `d` distinct positives of length `len`.
pub fn trivial_separator_size(d: usize, len: usize) -> usize {
    d * (len * (len + 1) / 2 + len - 1) + d - 1
}

/// Lazily streams the distinct members of `D(φ)`: every way of keeping one side of each
/// disjunction. Each member is `∨`-free and no larger than `φ`.
pub fn disjunction_expansions(
    formula: &Formula,
) -> Result<impl Iterator<Item = Formula> + '_, NotInFragment> {
    require_fragment(formula, Fragment::FXAndOr)?;
    let mut seen = HashSet::new();
    Ok(expand(formula).filter(move |f| seen.insert(f.clone())))
}

fn expand(f: &Formula) -> Box<dyn Iterator<Item = Formula> + '_> {
    match f {
        Formula::Atom(_) | Formula::NegAtom(_) => Box::new(std::iter::once(f.clone())),
        Formula::Next(g) => Box::new(expand(g).map(Formula::next)),
        Formula::Eventually(g) => Box::new(expand(g).map(Formula::eventually)),
        Formula::Globally(g) => Box::new(expand(g).map(Formula::globally)),
        Formula::Or(l, r) => Box::new(expand(l).chain(expand(r))),
        Formula::And(l, r) => {
            let r: &Formula = r;
            Box::new(expand(l).flat_map(move |a| expand(r).map(move |b| a.clone().and(b))))
        }
    }
}

/// `[φ]`: erases every `F`, keeping atoms, `X`, `∧` and `∨` in place.
pub fn remove_f(formula: &Formula) -> Result<Formula, NotInFragment> {
    require_fragment(formula, Fragment::FXAndOr)?;
    Ok(erase(formula))
}

fn erase(f: &Formula) -> Formula {
    match f {
        Formula::Eventually(g) => erase(g),
        Formula::Next(g) => erase(g).next(),
        Formula::And(l, r) => erase(l).and(erase(r)),
        Formula::Or(l, r) => erase(l).or(erase(r)),
        other => other.clone(),
    }
}
