//! LTL syntax trees over finite words: construction, printing, parsing, fragments and
//! the dual map that swaps `F`/`G` and `∧`/`∨` and negates atoms.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::trace::{Alphabet, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Symbol),
    NegAtom(Symbol),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Eventually(Box<Formula>),
    Globally(Box<Formula>),
}

/// Node kinds, listed in the order the enumerator tries them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Atom,
    NegAtom,
    Next,
    Eventually,
    Globally,
    And,
    Or,
}

impl Op {
    pub fn arity(self) -> usize {
        match self {
            Op::Atom | Op::NegAtom => 0,
            Op::Next | Op::Eventually | Op::Globally => 1,
            Op::And | Op::Or => 2,
        }
    }
}

impl Formula {
    pub fn atom(s: Symbol) -> Self {
        Formula::Atom(s)
    }

    pub fn neg_atom(s: Symbol) -> Self {
        Formula::NegAtom(s)
    }

    pub fn and(self, rhs: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn next(self) -> Self {
        Formula::Next(Box::new(self))
    }

    pub fn eventually(self) -> Self {
        Formula::Eventually(Box::new(self))
    }

    pub fn globally(self) -> Self {
        Formula::Globally(Box::new(self))
    }

    /// `X^k self`.
    pub fn next_n(self, k: usize) -> Self {
        (0..k).fold(self, |f, _| f.next())
    }

    /// Right-nested conjunction; `None` for an empty iterator.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Option<Formula>
    where
        I::IntoIter: DoubleEndedIterator,
    {
        items.into_iter().rev().reduce(|acc, f| f.and(acc))
    }

    /// Right-nested disjunction; `None` for an empty iterator.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Option<Formula>
    where
        I::IntoIter: DoubleEndedIterator,
    {
        items.into_iter().rev().reduce(|acc, f| f.or(acc))
    }

    pub fn op(&self) -> Op {
        match self {
            Formula::Atom(_) => Op::Atom,
            Formula::NegAtom(_) => Op::NegAtom,
            Formula::And(..) => Op::And,
            Formula::Or(..) => Op::Or,
            Formula::Next(_) => Op::Next,
            Formula::Eventually(_) => Op::Eventually,
            Formula::Globally(_) => Op::Globally,
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::NegAtom(_) => 1,
            Formula::Next(f) | Formula::Eventually(f) | Formula::Globally(f) => 1 + f.size(),
            Formula::And(l, r) | Formula::Or(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Structural dual: atoms are negated, `F` and `G` swap, `∧` and `∨` swap.
    pub fn dual(&self) -> Formula {
        match self {
            Formula::Atom(c) => Formula::NegAtom(*c),
            Formula::NegAtom(c) => Formula::Atom(*c),
            Formula::Next(f) => f.dual().next(),
            Formula::Eventually(f) => f.dual().globally(),
            Formula::Globally(f) => f.dual().eventually(),
            Formula::And(l, r) => l.dual().or(r.dual()),
            Formula::Or(l, r) => l.dual().and(r.dual()),
        }
    }

    pub fn in_fragment(&self, fragment: Fragment) -> bool {
        fragment.allows(self.op())
            && match self {
                Formula::Atom(_) | Formula::NegAtom(_) => true,
                Formula::Next(f) | Formula::Eventually(f) | Formula::Globally(f) => {
                    f.in_fragment(fragment)
                }
                Formula::And(l, r) | Formula::Or(l, r) => {
                    l.in_fragment(fragment) && r.in_fragment(fragment)
                }
            }
    }

    /// Every symbol mentioned by an atom or negated atom.
    pub fn symbols(&self) -> Vec<Symbol> {
        fn walk(f: &Formula, out: &mut Vec<Symbol>) {
            match f {
                Formula::Atom(c) | Formula::NegAtom(c) => out.push(*c),
                Formula::Next(g) | Formula::Eventually(g) | Formula::Globally(g) => walk(g, out),
                Formula::And(l, r) | Formula::Or(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Flattens a right- or left-nested chain of `∧` into its conjuncts.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::And(l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
                other => out.push(other),
            }
        }
        out
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> FormulaDisplay<'a> {
        FormulaDisplay {
            formula: self,
            alphabet,
        }
    }
}

/// Size of the syntax tree of `formula`.
pub fn formula_size(formula: &Formula) -> usize {
    formula.size()
}

/// The LTL fragments handled by the learners, closed under [`Fragment::dual`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fragment {
    /// `X`, `∧`
    XAnd,
    /// `F`, `∧`
    FAnd,
    /// `F`, `X`, `∧`, `∨`
    FXAndOr,
    /// `G`, `F`, `X`, `∧`, `∨`
    Full,
    /// `X`, `∨` over negated atoms
    XOr,
    /// `G`, `∨` over negated atoms
    GOr,
    /// `G`, `X`, `∧`, `∨` over negated atoms
    GXAndOr,
    /// `G`, `F`, `X`, `∧`, `∨` over negated atoms
    FullDual,
}

impl Fragment {
    pub const ALL: [Fragment; 8] = [
        Fragment::XAnd,
        Fragment::FAnd,
        Fragment::FXAndOr,
        Fragment::Full,
        Fragment::XOr,
        Fragment::GOr,
        Fragment::GXAndOr,
        Fragment::FullDual,
    ];

    /// Allowed node kinds, in enumeration order.
    pub fn ops(self) -> &'static [Op] {
        use Op::*;
        match self {
            Fragment::XAnd => &[Atom, Next, And],
            Fragment::FAnd => &[Atom, Eventually, And],
            Fragment::FXAndOr => &[Atom, Next, Eventually, And, Or],
            Fragment::Full => &[Atom, Next, Eventually, Globally, And, Or],
            Fragment::XOr => &[NegAtom, Next, Or],
            Fragment::GOr => &[NegAtom, Globally, Or],
            Fragment::GXAndOr => &[NegAtom, Next, Globally, And, Or],
            Fragment::FullDual => &[NegAtom, Next, Eventually, Globally, And, Or],
        }
    }

    pub fn allows(self, op: Op) -> bool {
        self.ops().contains(&op)
    }

    pub fn dual(self) -> Fragment {
        match self {
            Fragment::XAnd => Fragment::XOr,
            Fragment::XOr => Fragment::XAnd,
            Fragment::FAnd => Fragment::GOr,
            Fragment::GOr => Fragment::FAnd,
            Fragment::FXAndOr => Fragment::GXAndOr,
            Fragment::GXAndOr => Fragment::FXAndOr,
            Fragment::Full => Fragment::FullDual,
            Fragment::FullDual => Fragment::Full,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Fragment::XAnd => "x-and",
            Fragment::FAnd => "f-and",
            Fragment::FXAndOr => "f-x-and-or",
            Fragment::Full => "full",
            Fragment::XOr => "x-or",
            Fragment::GOr => "g-or",
            Fragment::GXAndOr => "g-x-and-or",
            Fragment::FullDual => "full-dual",
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown fragment `{0}`")]
pub struct UnknownFragment(pub String);

impl FromStr for Fragment {
    type Err = UnknownFragment;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Fragment::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| UnknownFragment(s.to_string()))
    }
}

/// Returned by fragment-specific operations handed a formula outside their fragment.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("formula is not in the {expected} fragment")]
pub struct NotInFragment {
    pub expected: Fragment,
}

pub(crate) fn require_fragment(formula: &Formula, expected: Fragment) -> Result<(), NotInFragment> {
    if formula.in_fragment(expected) {
        Ok(())
    } else {
        Err(NotInFragment { expected })
    }
}

pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    alphabet: &'a Alphabet,
}

// Binding strength: `|` < `&` < unary.
const LEVEL_OR: u8 = 0;
const LEVEL_AND: u8 = 1;
const LEVEL_UNARY: u8 = 2;

impl FormulaDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, node: &Formula, required: u8) -> fmt::Result {
        let level = match node {
            Formula::Or(..) => LEVEL_OR,
            Formula::And(..) => LEVEL_AND,
            _ => LEVEL_UNARY,
        };
        if level < required {
            f.write_str("(")?;
        }
        match node {
            Formula::Atom(c) => f.write_str(self.alphabet.token(*c))?,
            Formula::NegAtom(c) => write!(f, "!{}", self.alphabet.token(*c))?,
            Formula::Next(g) | Formula::Eventually(g) | Formula::Globally(g) => {
                let op = match node {
                    Formula::Next(_) => "X",
                    Formula::Eventually(_) => "F",
                    _ => "G",
                };
                write!(f, "{op} ")?;
                self.write(f, g, LEVEL_UNARY)?;
            }
            Formula::And(l, r) => {
                self.write(f, l, LEVEL_UNARY)?;
                f.write_str(" & ")?;
                self.write(f, r, LEVEL_AND)?;
            }
            Formula::Or(l, r) => {
                self.write(f, l, LEVEL_AND)?;
                f.write_str(" | ")?;
                self.write(f, r, LEVEL_OR)?;
            }
        }
        if level < required {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula, LEVEL_OR)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaParseError {
    #[error("unknown atom `{token}` at offset {offset}")]
    UnknownAtom { token: String, offset: usize },
    #[error("unbalanced parentheses at offset {offset}")]
    Unbalanced { offset: usize },
    #[error("unexpected `{token}` at offset {offset}")]
    Unexpected { token: String, offset: usize },
    #[error("unexpected end of formula")]
    UnexpectedEnd,
    #[error("`!` applies to atoms only (offset {offset})")]
    CompoundNegation { offset: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok<'s> {
    LParen,
    RParen,
    And,
    Or,
    Not,
    Word(&'s str),
}

fn lex(text: &str) -> Vec<(usize, Tok<'_>)> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '&' => Tok::And,
            '|' => Tok::Or,
            '!' => Tok::Not,
            _ => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_whitespace() || "()&|!".contains(d) {
                        break;
                    }
                    end = j + d.len_utf8();
                    chars.next();
                }
                out.push((i, Tok::Word(&text[i..end])));
                continue;
            }
        };
        chars.next();
        out.push((i, tok));
    }
    out
}

struct Parser<'s, 'a> {
    toks: Vec<(usize, Tok<'s>)>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'s> Parser<'s, '_> {
    fn peek(&self) -> Option<&(usize, Tok<'s>)> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<(usize, Tok<'s>)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn or_expr(&mut self) -> Result<Formula, FormulaParseError> {
        let lhs = self.and_expr()?;
        if matches!(self.peek(), Some((_, Tok::Or))) {
            self.bump();
            return Ok(lhs.or(self.or_expr()?));
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Formula, FormulaParseError> {
        let lhs = self.unary()?;
        if matches!(self.peek(), Some((_, Tok::And))) {
            self.bump();
            return Ok(lhs.and(self.and_expr()?));
        }
        Ok(lhs)
    }

    fn atom(&self, token: &str, offset: usize) -> Result<Symbol, FormulaParseError> {
        self.alphabet
            .symbol(token)
            .ok_or_else(|| FormulaParseError::UnknownAtom {
                token: token.to_string(),
                offset,
            })
    }

    fn unary(&mut self) -> Result<Formula, FormulaParseError> {
        let (offset, tok) = self.bump().ok_or(FormulaParseError::UnexpectedEnd)?;
        match tok {
            Tok::Word("X") => Ok(self.unary()?.next()),
            Tok::Word("F") => Ok(self.unary()?.eventually()),
            Tok::Word("G") => Ok(self.unary()?.globally()),
            Tok::Word(w) => Ok(Formula::Atom(self.atom(w, offset)?)),
            Tok::Not => match self.bump() {
                Some((o, Tok::Word(w))) if !["X", "F", "G"].contains(&w) => {
                    Ok(Formula::NegAtom(self.atom(w, o)?))
                }
                Some(_) => Err(FormulaParseError::CompoundNegation { offset }),
                None => Err(FormulaParseError::UnexpectedEnd),
            },
            Tok::LParen => {
                let inner = self.or_expr()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    Some((o, t)) => Err(FormulaParseError::Unexpected {
                        token: tok_text(&t),
                        offset: o,
                    }),
                    None => Err(FormulaParseError::Unbalanced { offset }),
                }
            }
            Tok::RParen => Err(FormulaParseError::Unbalanced { offset }),
            t => Err(FormulaParseError::Unexpected {
                token: tok_text(&t),
                offset,
            }),
        }
    }
}

fn tok_text(t: &Tok<'_>) -> String {
    match t {
        Tok::LParen => "(".into(),
        Tok::RParen => ")".into(),
        Tok::And => "&".into(),
        Tok::Or => "|".into(),
        Tok::Not => "!".into(),
        Tok::Word(w) => (*w).into(),
    }
}

/// Parses `X`, `F`, `G` (prefix), `!atom`, `&`, `|` (right-associative) and parentheses.
pub fn parse_formula(text: &str, alphabet: &Alphabet) -> Result<Formula, FormulaParseError> {
    let mut parser = Parser {
        toks: lex(text),
        pos: 0,
        alphabet,
    };
    let formula = parser.or_expr()?;
    match parser.bump() {
        None => Ok(formula),
        Some((offset, Tok::RParen)) => Err(FormulaParseError::Unbalanced { offset }),
        Some((offset, t)) => Err(FormulaParseError::Unexpected {
            token: tok_text(&t),
            offset,
        }),
    }
}

/// Canonical text form; [`parse_formula`] reads it back to the same tree.
pub fn format_formula(formula: &Formula, alphabet: &Alphabet) -> String {
    formula.display(alphabet).to_string()
}
