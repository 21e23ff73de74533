//! Exact learning by bottom-up enumeration in order of size.
//!
//! Formulas of size `s` are assembled from kept formulas of smaller sizes. Each kept
//! formula carries its truth table over the whole sample, and with deduplication on a
//! formula whose table was already produced is dropped: any separator that uses it can
//! use the earlier, no larger formula instead, so the minimal size is unaffected.
//!
//! Enumeration order (and so the tie-break between minimal separators) is: smaller size
//! first; within a size, node kinds in [`Op`] order, atoms in alphabet order, and binary
//! nodes by ascending left-subtree size, then by the order of the subtrees themselves.

use rustc_hash::FxHashSet;

use crate::formula::{Formula, Fragment, Op};
use crate::packed::{Layout, Limbs, Packed};
use crate::trace::{Alphabet, Sample, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    /// Drop formulas whose sample table is already known.
    pub dedup: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions { dedup: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactReport {
    /// First minimal separator in enumeration order, if one of size `<= max_size` exists.
    pub formula: Option<Formula>,
    /// Formulas built, including dropped duplicates.
    pub visited: usize,
    /// Formulas kept for later levels.
    pub kept: usize,
}

/// Minimal-size separator of `sample` in `fragment` with size at most `max_size`.
pub fn learn_exact(sample: &Sample, fragment: Fragment, max_size: usize) -> Option<Formula> {
    learn_exact_with(sample, fragment, max_size, ExactOptions::default()).formula
}

/// Size of a minimal separator, or `None` when there is none up to `cap`.
pub fn minimal_size(sample: &Sample, fragment: Fragment, cap: usize) -> Option<usize> {
    learn_exact(sample, fragment, cap).map(|f| f.size())
}

pub fn learn_exact_with(
    sample: &Sample,
    fragment: Fragment,
    max_size: usize,
    options: ExactOptions,
) -> ExactReport {
    if sample.contradiction().is_some() {
        // identical words have identical tables under every formula
        return ExactReport {
            formula: None,
            visited: 0,
            kept: 0,
        };
    }
    let total = sample.total_len();
    if total <= 64 {
        Search::<u64>::new(sample, fragment, options).run(max_size)
    } else if total <= 128 {
        Search::<u128>::new(sample, fragment, options).run(max_size)
    } else {
        Search::<Limbs>::new(sample, fragment, options).run(max_size)
    }
}

#[derive(Debug, Clone, Copy)]
struct Node {
    op: Op,
    // symbol index for atoms, child indices otherwise
    a: u32,
    b: u32,
}

struct Search<P> {
    layout: Layout<P>,
    fragment: Fragment,
    options: ExactOptions,
    symbols: Vec<Symbol>,
    nodes: Vec<Node>,
    tables: Vec<P>,
    levels: Vec<Vec<u32>>,
    seen: FxHashSet<P>,
    visited: usize,
}

impl<P: Packed> Search<P> {
    fn new(sample: &Sample, fragment: Fragment, options: ExactOptions) -> Self {
        Search {
            layout: Layout::new(sample),
            fragment,
            options,
            symbols: sample.alphabet().symbols().collect(),
            nodes: Vec::new(),
            tables: Vec::new(),
            levels: vec![Vec::new()],
            seen: FxHashSet::default(),
            visited: 0,
        }
    }

    fn run(mut self, max_size: usize) -> ExactReport {
        let mut found = None;
        for size in 1..=max_size {
            if let Some(id) = self.build_level(size) {
                found = Some(self.extract(id));
                break;
            }
        }
        ExactReport {
            formula: found,
            visited: self.visited,
            kept: self.nodes.len(),
        }
    }

    /// Offers a candidate; returns its id if it is kept and separates.
    fn offer(&mut self, level: &mut Vec<u32>, node: Node, table: P) -> Option<u32> {
        self.visited += 1;
        if self.options.dedup && !self.seen.insert(table.clone()) {
            return None;
        }
        let separates = self.layout.separates(&table);
        let id = self.nodes.len() as u32;
        self.nodes.push(node);
        self.tables.push(table);
        level.push(id);
        separates.then_some(id)
    }

    fn build_level(&mut self, size: usize) -> Option<u32> {
        let mut level = Vec::new();
        let found = self.fill_level(size, &mut level);
        self.levels.push(level);
        found
    }

    fn fill_level(&mut self, size: usize, level: &mut Vec<u32>) -> Option<u32> {
        for &op in self.fragment.ops() {
            match op.arity() {
                0 if size == 1 => {
                    for k in 0..self.symbols.len() {
                        let c = self.symbols[k];
                        let table = match op {
                            Op::Atom => self.layout.atoms[c.index()].clone(),
                            _ => self.layout.neg_atoms[c.index()].clone(),
                        };
                        let node = Node {
                            op,
                            a: c.0 as u32,
                            b: 0,
                        };
                        if let Some(id) = self.offer(level, node, table) {
                            return Some(id);
                        }
                    }
                }
                1 if size >= 2 => {
                    for k in 0..self.levels[size - 1].len() {
                        let child = self.levels[size - 1][k];
                        let t = &self.tables[child as usize];
                        let table = match op {
                            Op::Next => self.layout.next(t),
                            Op::Eventually => self.layout.eventually(t),
                            _ => self.layout.globally(t),
                        };
                        let node = Node { op, a: child, b: 0 };
                        if let Some(id) = self.offer(level, node, table) {
                            return Some(id);
                        }
                    }
                }
                2 if size >= 3 => {
                    for left_size in 1..=size - 2 {
                        let right_size = size - 1 - left_size;
                        // with dedup, `r ∘ l` repeats the table of `l ∘ r`, and `l ∘ l` that of `l`
                        if self.options.dedup && left_size > right_size {
                            break;
                        }
                        let symmetric = self.options.dedup && left_size == right_size;
                        for i in 0..self.levels[left_size].len() {
                            let l = self.levels[left_size][i];
                            let start = if symmetric { i + 1 } else { 0 };
                            for j in start..self.levels[right_size].len() {
                                let r = self.levels[right_size][j];
                                let (lt, rt) = (&self.tables[l as usize], &self.tables[r as usize]);
                                let table = match op {
                                    Op::And => lt.and(rt),
                                    _ => lt.or(rt),
                                };
                                let node = Node { op, a: l, b: r };
                                if let Some(id) = self.offer(level, node, table) {
                                    return Some(id);
                                }
                            }
                        }
                    }
                }
                _ => {}
            }
        }
        None
    }

    fn extract(&self, id: u32) -> Formula {
        let node = self.nodes[id as usize];
        let child = |k: u32| Box::new(self.extract(k));
        match node.op {
            Op::Atom => Formula::Atom(Symbol(node.a as u16)),
            Op::NegAtom => Formula::NegAtom(Symbol(node.a as u16)),
            Op::Next => Formula::Next(child(node.a)),
            Op::Eventually => Formula::Eventually(child(node.a)),
            Op::Globally => Formula::Globally(child(node.a)),
            Op::And => Formula::And(child(node.a), child(node.b)),
            Op::Or => Formula::Or(child(node.a), child(node.b)),
        }
    }
}

/// Every formula of `fragment` over `alphabet` with size at most `max_size`, in
/// enumeration order, without any semantic pruning.
pub fn enumerate_fragment(
    fragment: Fragment,
    alphabet: &Alphabet,
    max_size: usize,
) -> FragmentFormulas {
    FragmentFormulas {
        fragment,
        symbols: alphabet.symbols().collect(),
        max_size,
        levels: vec![Vec::new()],
        cursor: 0,
    }
}

/// Iterator returned by [`enumerate_fragment`]; materializes one size level at a time.
pub struct FragmentFormulas {
    fragment: Fragment,
    symbols: Vec<Symbol>,
    max_size: usize,
    levels: Vec<Vec<Formula>>,
    cursor: usize,
}

impl FragmentFormulas {
    fn build_level(&self, size: usize) -> Vec<Formula> {
        let mut out = Vec::new();
        for &op in self.fragment.ops() {
            match op {
                Op::Atom if size == 1 => out.extend(self.symbols.iter().map(|&c| Formula::Atom(c))),
                Op::NegAtom if size == 1 => {
                    out.extend(self.symbols.iter().map(|&c| Formula::NegAtom(c)))
                }
                Op::Next | Op::Eventually | Op::Globally if size >= 2 => {
                    out.extend(self.levels[size - 1].iter().map(|f| match op {
                        Op::Next => f.clone().next(),
                        Op::Eventually => f.clone().eventually(),
                        _ => f.clone().globally(),
                    }))
                }
                Op::And | Op::Or if size >= 3 => {
                    for left_size in 1..=size - 2 {
                        for l in &self.levels[left_size] {
                            for r in &self.levels[size - 1 - left_size] {
                                out.push(match op {
                                    Op::And => l.clone().and(r.clone()),
                                    _ => l.clone().or(r.clone()),
                                });
                            }
                        }
                    }
                }
                _ => {}
            }
        }
        out
    }
}

impl Iterator for FragmentFormulas {
    type Item = Formula;

    fn next(&mut self) -> Option<Formula> {
        loop {
            let size = self.levels.len() - 1;
            if let Some(f) = self.levels[size].get(self.cursor) {
                self.cursor += 1;
                return Some(f.clone());
            }
            if size >= self.max_size {
                return None;
            }
            let level = self.build_level(size + 1);
            self.levels.push(level);
            self.cursor = 0;
        }
    }
}
