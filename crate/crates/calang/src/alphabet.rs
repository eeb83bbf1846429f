//! Alphabets of cell states with a distinguished quiescent symbol.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// A symbol, stored as an index into its [`Alphabet`].
///
/// The index order is the alphabet order; it is the order used whenever
/// words are sorted lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(pub u32);

impl Sym {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite word over an alphabet.
pub type Word = Vec<Sym>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("alphabet must contain at least one symbol")]
    Empty,
    #[error("duplicate symbol token `{0}`")]
    DuplicateToken(String),
    #[error("quiescent index {0} out of range")]
    QuiescentOutOfRange(usize),
    #[error("symbol token may not be empty or contain whitespace: `{0}`")]
    BadToken(String),
}

/// An ordered set of distinct symbol tokens with one distinguished
/// quiescent symbol.
///
/// Tokens are arbitrary non-empty strings without whitespace; the
/// quiescent symbol is rendered as `_` in the text formats produced by
/// this crate, but any token is accepted when parsing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    tokens: Vec<String>,
    quiescent: usize,
}

impl Alphabet {
    pub fn new<S: Into<String>>(
        tokens: impl IntoIterator<Item = S>,
        quiescent: usize,
    ) -> Result<Arc<Self>, AlphabetError> {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        if tokens.is_empty() {
            return Err(AlphabetError::Empty);
        }
        for (i, t) in tokens.iter().enumerate() {
            if t.is_empty() || t.chars().any(char::is_whitespace) {
                return Err(AlphabetError::BadToken(t.clone()));
            }
            if tokens[..i].contains(t) {
                return Err(AlphabetError::DuplicateToken(t.clone()));
            }
        }
        if quiescent >= tokens.len() {
            return Err(AlphabetError::QuiescentOutOfRange(quiescent));
        }
        Ok(Arc::new(Alphabet { tokens, quiescent }))
    }

    /// Builds an alphabet whose first token is the quiescent `_`.
    pub fn with_quiescent_first<S: Into<String>>(
        non_quiescent: impl IntoIterator<Item = S>,
    ) -> Result<Arc<Self>, AlphabetError> {
        let mut tokens = vec!["_".to_string()];
        tokens.extend(non_quiescent.into_iter().map(Into::into));
        Alphabet::new(tokens, 0)
    }

    /// Convenience for test and example alphabets: one char per symbol,
    /// quiescent first, e.g. `lowercase("ab")` gives `{_, a, b}`.
    pub fn lowercase(letters: &str) -> Arc<Self> {
        Alphabet::with_quiescent_first(letters.chars().map(|c| c.to_string()))
            .expect("distinct letters")
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn quiescent(&self) -> Sym {
        Sym(self.quiescent as u32)
    }

    pub fn symbols(&self) -> impl Iterator<Item = Sym> + '_ {
        (0..self.tokens.len() as u32).map(Sym)
    }

    /// All symbols except the quiescent one, in alphabet order.
    pub fn active_symbols(&self) -> impl Iterator<Item = Sym> + '_ {
        let q = self.quiescent();
        self.symbols().filter(move |&s| s != q)
    }

    pub fn contains(&self, sym: Sym) -> bool {
        sym.index() < self.tokens.len()
    }

    pub fn token(&self, sym: Sym) -> &str {
        &self.tokens[sym.index()]
    }

    pub fn lookup(&self, token: &str) -> Option<Sym> {
        self.tokens
            .iter()
            .position(|t| t == token)
            .map(|i| Sym(i as u32))
    }

    /// True when every token is a single character, so words can be
    /// written without separators.
    pub fn single_char(&self) -> bool {
        self.tokens.iter().all(|t| t.chars().count() == 1)
    }

    /// Renders a word: tokens are concatenated when all are single
    /// characters, otherwise joined with spaces. The empty word renders
    /// as `ε`.
    pub fn render_word(&self, word: &[Sym]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.single_char() { "" } else { " " };
        word.iter()
            .map(|&s| self.token(s))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Splits a string into symbols by greedy longest-token match.
    /// Whitespace separates tokens and is otherwise ignored.
    pub fn parse_word(&self, text: &str) -> Result<Word, AlphabetError> {
        let mut out = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            if let Some(stripped) = rest.strip_prefix(char::is_whitespace) {
                rest = stripped.trim_start();
                continue;
            }
            let hit = self
                .tokens
                .iter()
                .enumerate()
                .filter(|(_, t)| rest.starts_with(t.as_str()))
                .max_by_key(|(_, t)| t.len());
            match hit {
                Some((i, t)) => {
                    out.push(Sym(i as u32));
                    rest = &rest[t.len()..];
                }
                None => return Err(AlphabetError::BadToken(rest.to_string())),
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tokens.join(" "))
    }
}

/// Orders words by length first, then lexicographically in alphabet
/// order. This is the canonical enumeration order used for all samples
/// and reports.
pub fn word_cmp(a: &[Sym], b: &[Sym]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// A word wrapper ordered by [`word_cmp`], for use as a BTree key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonWord(pub Word);

impl PartialOrd for CanonWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        word_cmp(&self.0, &other.0)
    }
}
