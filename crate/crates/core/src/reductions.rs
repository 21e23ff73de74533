//! Set cover and hitting set instances, their translations into learning samples with a
//! known optimum, exact brute-force solvers, and the plain-text instance format.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::trace::{Alphabet, Sample, Symbol, Word};

/// Sets `S_1..S_l` over the universe `[1, universe]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetCoverInstance {
    pub universe: usize,
    pub sets: Vec<BTreeSet<usize>>,
}

/// Collections `C_1..C_n` over the ground set `[1, ground]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HittingSetInstance {
    pub ground: usize,
    pub collections: Vec<BTreeSet<usize>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("element {element} lies outside [1, {bound}]")]
    OutOfRange { element: usize, bound: usize },
    #[error("collection {0} is empty, so nothing hits it")]
    EmptyCollection(usize),
    #[error("instance has no collections")]
    NoCollections,
    #[error("instance has no sets")]
    NoSets,
    #[error("brute force is limited to {MAX_BRUTE_FORCE} elements and sets, got {0}")]
    TooLarge(usize),
}

pub const MAX_BRUTE_FORCE: usize = 20;

fn check_range(sets: &[BTreeSet<usize>], bound: usize) -> Result<(), InstanceError> {
    for s in sets {
        if let Some(&element) = s.iter().find(|&&e| e == 0 || e > bound) {
            return Err(InstanceError::OutOfRange { element, bound });
        }
    }
    Ok(())
}

impl SetCoverInstance {
    pub fn new(universe: usize, sets: Vec<BTreeSet<usize>>) -> Result<Self, InstanceError> {
        if sets.is_empty() {
            return Err(InstanceError::NoSets);
        }
        check_range(&sets, universe)?;
        Ok(SetCoverInstance { universe, sets })
    }

    pub fn has_cover(&self) -> bool {
        let all: BTreeSet<usize> = self.sets.iter().flatten().copied().collect();
        all.len() == self.universe
    }
}

impl HittingSetInstance {
    pub fn new(ground: usize, collections: Vec<BTreeSet<usize>>) -> Result<Self, InstanceError> {
        if collections.is_empty() {
            return Err(InstanceError::NoCollections);
        }
        check_range(&collections, ground)?;
        Ok(HittingSetInstance {
            ground,
            collections,
        })
    }

    pub fn has_hitting_set(&self) -> bool {
        self.collections.iter().all(|c| !c.is_empty())
    }
}

/// Over `{a, b}`: the positive `a^(l+1)`; for each element `j` the negative with `b` at
/// position `i` exactly when `j ∈ S_i`, then a final `a`; and the negative `a^l b`.
pub fn setcover_to_sample(inst: &SetCoverInstance) -> Sample {
    let ab = Alphabet::letters(2);
    let (a, b) = (Symbol(0), Symbol(1));
    let l = inst.sets.len();
    let positive = Word(vec![a; l + 1]);
    let mut negatives: Vec<Word> = (1..=inst.universe)
        .map(|j| {
            let mut w: Vec<Symbol> = inst
                .sets
                .iter()
                .map(|s| if s.contains(&j) { b } else { a })
                .collect();
            w.push(a);
            Word(w)
        })
        .collect();
    let mut last = vec![a; l];
    last.push(b);
    negatives.push(Word(last));
    Sample::new(ab, vec![positive], negatives).expect("words are non-empty")
}

/// Over `{0, ..., l}`: the positive `0 1 ... l` and, for each collection, the negative `0`
/// followed by the complement of the collection in increasing order.
pub fn hittingset_to_sample(inst: &HittingSetInstance) -> Result<Sample, InstanceError> {
    if let Some(j) = inst.collections.iter().position(BTreeSet::is_empty) {
        return Err(InstanceError::EmptyCollection(j + 1));
    }
    let l = inst.ground;
    let alphabet = Alphabet::numbers(l);
    let sym = |i: usize| Symbol(i as u16);
    let positive = Word((0..=l).map(sym).collect());
    let negatives = inst
        .collections
        .iter()
        .map(|c| {
            Word(
                std::iter::once(0)
                    .chain((1..=l).filter(|i| !c.contains(i)))
                    .map(sym)
                    .collect(),
            )
        })
        .collect();
    Ok(Sample::new(alphabet, vec![positive], negatives).expect("words are non-empty"))
}

fn mask(set: &BTreeSet<usize>) -> u32 {
    set.iter().fold(0, |m, &e| m | 1 << (e - 1))
}

/// Smallest `k` such that some `k`-subset of `0..width` satisfies `accept`.
fn smallest_subset(width: usize, accept: impl Fn(u32) -> bool) -> Option<usize> {
    let mut by_size: Vec<u32> = (0..1u32 << width).collect();
    by_size.sort_by_key(|m| m.count_ones());
    by_size
        .into_iter()
        .find(|&m| accept(m))
        .map(|m| m.count_ones() as usize)
}

/// Size of a minimum cover, or `None` when the sets do not cover the universe.
pub fn solve_setcover_bruteforce(inst: &SetCoverInstance) -> Result<Option<usize>, InstanceError> {
    let width = inst.sets.len().max(inst.universe);
    if width > MAX_BRUTE_FORCE {
        return Err(InstanceError::TooLarge(width));
    }
    let sets: Vec<u32> = inst.sets.iter().map(mask).collect();
    let full = (1u32 << inst.universe) - 1;
    Ok(smallest_subset(inst.sets.len(), |chosen| {
        let covered = (0..sets.len())
            .filter(|i| chosen >> i & 1 == 1)
            .fold(0, |acc, i| acc | sets[i]);
        covered == full
    }))
}

/// Size of a minimum hitting set, or `None` when some collection is empty.
pub fn solve_hittingset_bruteforce(
    inst: &HittingSetInstance,
) -> Result<Option<usize>, InstanceError> {
    let width = inst.ground.max(inst.collections.len());
    if width > MAX_BRUTE_FORCE {
        return Err(InstanceError::TooLarge(width));
    }
    let collections: Vec<u32> = inst.collections.iter().map(mask).collect();
    Ok(smallest_subset(inst.ground, |h| {
        collections.iter().all(|&c| c & h != 0)
    }))
}

fn random_sets(count: usize, bound: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<BTreeSet<usize>> {
    (0..count)
        .map(|_| (1..=bound).filter(|_| rng.gen_bool(p)).collect())
        .collect()
}

/// `l` random sets over `[1, n]`, each element in each set with probability `p`.
pub fn random_setcover(n: usize, l: usize, p: f64, seed: u64) -> SetCoverInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SetCoverInstance {
        universe: n,
        sets: random_sets(l, n, p, &mut rng),
    }
}

/// `n` random collections over `[1, l]`, each element in each collection with
/// probability `p`.
pub fn random_hittingset(n: usize, l: usize, p: f64, seed: u64) -> HittingSetInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    HittingSetInstance {
        ground: l,
        collections: random_sets(n, l, p, &mut rng),
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SetsParseError {
    #[error("line {line}: cannot read `{text}` as a set of positive integers")]
    Malformed { line: usize, text: String },
    #[error("line {line}: header `{key}` must come before the sets")]
    LateHeader { line: usize, key: String },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Parsed instance file: an optional `universe:` or `ground:` bound and the sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetsFile {
    pub bound: Option<usize>,
    pub sets: Vec<BTreeSet<usize>>,
}

impl SetsFile {
    /// The header bound, else the largest element mentioned.
    pub fn bound_or_max(&self) -> usize {
        self.bound
            .unwrap_or_else(|| self.sets.iter().flatten().copied().max().unwrap_or(0))
    }

    pub fn into_setcover(self) -> Result<SetCoverInstance, InstanceError> {
        let n = self.bound_or_max();
        SetCoverInstance::new(n, self.sets)
    }

    pub fn into_hittingset(self) -> Result<HittingSetInstance, InstanceError> {
        let l = self.bound_or_max();
        HittingSetInstance::new(l, self.sets)
    }
}

/// One set per line as comma-separated integers, `{}` for the empty set, `#` comments.
/// A leading `universe: n` or `ground: l` line fixes the element range.
pub fn parse_sets(text: &str) -> Result<SetsFile, SetsParseError> {
    let mut bound = None;
    let mut sets = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some((key, value)) = content.split_once(':') {
            let key = key.trim();
            if key == "universe" || key == "ground" {
                if !sets.is_empty() {
                    return Err(SetsParseError::LateHeader {
                        line,
                        key: key.to_string(),
                    });
                }
                bound = Some(value.trim().parse().map_err(|_| SetsParseError::Malformed {
                    line,
                    text: content.to_string(),
                })?);
                continue;
            }
        }
        let malformed = || SetsParseError::Malformed {
            line,
            text: content.to_string(),
        };
        if content == "{}" {
            sets.push(BTreeSet::new());
            continue;
        }
        let set = content
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(e) if e > 0 => Ok(e),
                _ => Err(malformed()),
            })
            .collect::<Result<BTreeSet<usize>, _>>()?;
        sets.push(set);
    }
    Ok(SetsFile { bound, sets })
}

/// Inverse of [`parse_sets`], with the bound written under `key`.
pub fn format_sets(key: &str, bound: usize, sets: &[BTreeSet<usize>]) -> String {
    let mut out = format!("{key}: {bound}\n");
    for s in sets {
        if s.is_empty() {
            out.push_str("{}");
        } else {
            let items: Vec<String> = s.iter().map(usize::to_string).collect();
            out.push_str(&items.join(","));
        }
        out.push('\n');
    }
    out
}

/// Sidecar record of a generated sample: source kind, certified optimum, seed, and any
/// further generator parameters, one `key: value` per line.
#[derive(Debug, Clone, PartialEq)]
pub struct Metadata {
    pub kind: String,
    pub optimum: Option<usize>,
    pub seed: Option<u64>,
    pub extra: Vec<(String, String)>,
}

impl fmt::Display for Metadata {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind: {}", self.kind)?;
        match self.optimum {
            Some(k) => writeln!(f, "optimum: {k}")?,
            None => writeln!(f, "optimum: none")?,
        }
        match self.seed {
            Some(s) => writeln!(f, "seed: {s}")?,
            None => writeln!(f, "seed: none")?,
        }
        for (k, v) in &self.extra {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}
