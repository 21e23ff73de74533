//! Learning linear temporal logic formulas over finite words from labeled examples.
//!
//! The crate covers the finite-trace semantics, an exact size-ordered enumerator, the
//! pattern normal form and greedy learner for `X`/`∧`, the subword machinery for
//! `F`/`∧`, the `F`/`X`/`∧`/`∨` constructions, and reduction-based instance generators.

pub mod enumerative;
pub mod f_and;
pub mod formula;
pub mod fx;
mod packed;
pub mod reductions;
pub mod semantics;
pub mod trace;
pub mod x_and;

pub use enumerative::{learn_exact, minimal_size};
pub use formula::{format_formula, parse_formula, Formula, Fragment};
pub use semantics::{check_separates, eval_table, satisfies, SemTable};
pub use trace::{format_sample, is_subword, parse_sample, Alphabet, Sample, Symbol, Word};
