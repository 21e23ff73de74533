//! Words, samples and the line-oriented sample file format.
//!
//! Symbols are interned as indices into an [`Alphabet`]; every other module works on
//! `&[Symbol]` slices and only goes back to text tokens when printing.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Deref;

use thiserror::Error;

/// Operator keywords of the formula grammar; they cannot double as alphabet tokens.
pub const RESERVED_TOKENS: [&str; 3] = ["X", "F", "G"];

const TOKEN_SPECIALS: &[char] = &[',', '.', '#', '(', ')', '&', '|', '!'];

/// Index of a letter in its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u16);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("alphabet is empty")]
    Empty,
    #[error("alphabet token `{0}` is declared twice")]
    Duplicate(String),
    #[error("invalid alphabet token `{0}`")]
    InvalidToken(String),
    #[error("alphabet token `{0}` is reserved for an operator")]
    Reserved(String),
    #[error("alphabet has more than {} tokens", u16::MAX)]
    TooLarge,
}

/// An ordered set of symbol tokens; order is declaration order.
#[derive(Debug, Clone)]
pub struct Alphabet {
    tokens: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.tokens == other.tokens
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet {
            tokens: Vec::new(),
            index: HashMap::new(),
        };
        for token in tokens {
            let token: String = token.into();
            if token.is_empty()
                || token
                    .chars()
                    .any(|c| c.is_whitespace() || TOKEN_SPECIALS.contains(&c))
            {
                return Err(AlphabetError::InvalidToken(token));
            }
            if RESERVED_TOKENS.contains(&token.as_str()) {
                return Err(AlphabetError::Reserved(token));
            }
            if alphabet.index.contains_key(&token) {
                return Err(AlphabetError::Duplicate(token));
            }
            if alphabet.tokens.len() >= u16::MAX as usize {
                return Err(AlphabetError::TooLarge);
            }
            let symbol = Symbol(alphabet.tokens.len() as u16);
            alphabet.index.insert(token.clone(), symbol);
            alphabet.tokens.push(token);
        }
        if alphabet.tokens.is_empty() {
            return Err(AlphabetError::Empty);
        }
        Ok(alphabet)
    }

    /// Alphabet `{a, b, ...}` made of the first `size` lowercase letters.
    pub fn letters(size: usize) -> Self {
        assert!((1..=26).contains(&size), "letter alphabets have 1 to 26 symbols");
        Alphabet::new((b'a'..b'a' + size as u8).map(|c| (c as char).to_string()))
            .expect("lowercase letters are valid tokens")
    }

    /// Alphabet `{0, 1, ..., max}` of decimal tokens.
    pub fn numbers(max: usize) -> Self {
        Alphabet::new((0..=max).map(|i| i.to_string())).expect("decimal tokens are valid")
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn symbol(&self, token: &str) -> Option<Symbol> {
        self.index.get(token).copied()
    }

    pub fn token(&self, symbol: Symbol) -> &str {
        &self.tokens[symbol.index()]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        symbol.index() < self.tokens.len()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + Clone {
        (0..self.tokens.len() as u16).map(Symbol)
    }

    /// True when every token is one character, so words can be written without separators.
    pub fn is_single_char(&self) -> bool {
        self.tokens.iter().all(|t| t.chars().count() == 1)
    }

    /// Parses a word in either the compact or the `.`-separated syntax.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        if text.is_empty() {
            return Err(WordError::Empty);
        }
        let lookup = |tok: &str| {
            self.symbol(tok)
                .ok_or_else(|| WordError::UnknownSymbol(tok.to_string()))
        };
        let symbols = if text.contains('.') {
            text.split('.').map(lookup).collect::<Result<Vec<_>, _>>()?
        } else if let Some(symbol) = self.symbol(text) {
            vec![symbol]
        } else if self.is_single_char() {
            text.chars()
                .map(|c| lookup(c.encode_utf8(&mut [0; 4])))
                .collect::<Result<Vec<_>, _>>()?
        } else {
            return Err(WordError::UnknownSymbol(text.to_string()));
        };
        Ok(Word(symbols))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
}

/// A finite word. Positions are 1-indexed in [`Word::at`], 0-indexed through the slice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    /// The letter at 1-indexed position `i`.
    pub fn at(&self, i: usize) -> Option<Symbol> {
        i.checked_sub(1).and_then(|k| self.0.get(k).copied())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: &self.0,
            alphabet,
            tokenized: !alphabet.is_single_char(),
        }
    }

    /// Canonical `.`-separated rendering used in sample files.
    pub fn tokenized<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: &self.0,
            alphabet,
            tokenized: true,
        }
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }
}

pub struct WordDisplay<'a> {
    word: &'a [Symbol],
    alphabet: &'a Alphabet,
    tokenized: bool,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("ε");
        }
        for (k, &s) in self.word.iter().enumerate() {
            if k > 0 && self.tokenized {
                f.write_str(".")?;
            }
            f.write_str(self.alphabet.token(s))?;
        }
        Ok(())
    }
}

/// True iff `u` embeds into `v` through a strictly increasing position map.
pub fn is_subword(u: &[Symbol], v: &[Symbol]) -> bool {
    let mut rest = v.iter();
    u.iter().all(|c| rest.any(|d| d == c))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SampleError {
    #[error("sample has no positive words")]
    NoPositives,
    #[error("sample has no negative words")]
    NoNegatives,
    #[error("sample contains an empty word")]
    EmptyWord,
    #[error("word uses a symbol outside the alphabet")]
    ForeignSymbol,
}

/// Labeled example words over a shared alphabet.
///
/// A word may appear on both sides: such a sample simply has no separator. The file
/// parser rejects that case up front with [`ParseError::Contradiction`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    alphabet: Alphabet,
    positives: Vec<Word>,
    negatives: Vec<Word>,
}

impl Sample {
    pub fn new(
        alphabet: Alphabet,
        positives: Vec<Word>,
        negatives: Vec<Word>,
    ) -> Result<Self, SampleError> {
        if positives.is_empty() {
            return Err(SampleError::NoPositives);
        }
        if negatives.is_empty() {
            return Err(SampleError::NoNegatives);
        }
        for w in positives.iter().chain(&negatives) {
            if w.is_empty() {
                return Err(SampleError::EmptyWord);
            }
            if !w.iter().all(|&s| alphabet.contains(s)) {
                return Err(SampleError::ForeignSymbol);
            }
        }
        Ok(Sample {
            alphabet,
            positives,
            negatives,
        })
    }

    /// Builds a sample from textual words; panics on malformed input. Meant for tests.
    pub fn from_strs(alphabet: &Alphabet, positives: &[&str], negatives: &[&str]) -> Self {
        let parse = |ws: &[&str]| -> Vec<Word> {
            ws.iter()
                .map(|w| alphabet.parse_word(w).expect("valid word"))
                .collect()
        };
        Sample::new(alphabet.clone(), parse(positives), parse(negatives)).expect("valid sample")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn positives(&self) -> &[Word] {
        &self.positives
    }

    pub fn negatives(&self) -> &[Word] {
        &self.negatives
    }

    /// Positives followed by negatives.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.positives.iter().chain(&self.negatives)
    }

    pub fn max_len(&self) -> usize {
        self.words().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn total_len(&self) -> usize {
        self.words().map(|w| w.len()).sum()
    }

    /// Some word labeled both positive and negative, if any.
    pub fn contradiction(&self) -> Option<&Word> {
        let positives: HashSet<&Word> = self.positives.iter().collect();
        self.negatives.iter().find(|v| positives.contains(v))
    }

    /// The same words with the labels swapped.
    pub fn swapped(&self) -> Sample {
        Sample {
            alphabet: self.alphabet.clone(),
            positives: self.negatives.clone(),
            negatives: self.positives.clone(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected `alphabet: t1,t2,...` before any word")]
    MissingAlphabet { line: usize },
    #[error("line {line}: {source}")]
    Alphabet { line: usize, source: AlphabetError },
    #[error("line {line}: {source}")]
    Word { line: usize, source: WordError },
    #[error("line {line}: malformed line `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: word `{word}` is labeled both positive and negative")]
    Contradiction { line: usize, word: String },
    #[error("sample has no positive words")]
    NoPositives,
    #[error("sample has no negative words")]
    NoNegatives,
}

/// Reads a sample file: `alphabet: ...` first, then `+ WORD` / `- WORD` lines.
pub fn parse_sample(text: &str) -> Result<Sample, ParseError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut positives = Vec::new();
    let mut negatives = Vec::new();
    // word -> label, to catch contradictions
    let mut labels: HashMap<Word, bool> = HashMap::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some(alpha) = &alphabet else {
            let decl = content
                .strip_prefix("alphabet:")
                .ok_or(ParseError::MissingAlphabet { line })?;
            let tokens = decl.split(',').map(|t| t.trim().to_string());
            alphabet =
                Some(Alphabet::new(tokens).map_err(|source| ParseError::Alphabet { line, source })?);
            continue;
        };
        let (positive, rest) = if let Some(rest) = content.strip_prefix('+') {
            (true, rest)
        } else if let Some(rest) = content.strip_prefix('-') {
            (false, rest)
        } else {
            return Err(ParseError::Malformed {
                line,
                text: content.to_string(),
            });
        };
        let body = rest.trim();
        if body.contains(char::is_whitespace) {
            return Err(ParseError::Malformed {
                line,
                text: content.to_string(),
            });
        }
        let word = alpha
            .parse_word(body)
            .map_err(|source| ParseError::Word { line, source })?;
        match labels.get(&word) {
            Some(&previous) if previous != positive => {
                return Err(ParseError::Contradiction {
                    line,
                    word: body.to_string(),
                })
            }
            _ => {
                labels.insert(word.clone(), positive);
            }
        }
        if positive {
            positives.push(word);
        } else {
            negatives.push(word);
        }
    }

    let alphabet = alphabet.ok_or(ParseError::MissingAlphabet {
        line: text.lines().count().max(1),
    })?;
    if positives.is_empty() {
        return Err(ParseError::NoPositives);
    }
    if negatives.is_empty() {
        return Err(ParseError::NoNegatives);
    }
    Ok(Sample {
        alphabet,
        positives,
        negatives,
    })
}

/// Writes a sample in the canonical file syntax (tokenized words).
pub fn format_sample(sample: &Sample) -> String {
    let mut out = format!("alphabet: {}\n", sample.alphabet.tokens.join(","));
    for w in &sample.positives {
        out.push_str(&format!("+ {}\n", w.tokenized(&sample.alphabet)));
    }
    for w in &sample.negatives {
        out.push_str(&format!("- {}\n", w.tokenized(&sample.alphabet)));
    }
    out
}
