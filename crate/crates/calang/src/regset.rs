//! Restricted regular expressions over the non-quiescent symbols,
//! compiled to an NFA by the Thompson construction.
//!
//! Grammar: symbol literals, juxtaposition for concatenation, `|` for
//! union, `*` and `+` postfix, `()` grouping, and `ε` for the empty
//! word. Symbol literals are matched greedily against the alphabet's
//! tokens, so multi-character tokens work without separators. The
//! quiescent symbol is forbidden in patterns: padding is supplied by
//! the configuration layer, and interior quiescent cells would break
//! word canonicity.

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::alphabet::{word_cmp, Alphabet, Sym, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol at byte {pos} in pattern")]
    UnknownSymbol { pos: usize },
    #[error("quiescent symbol at byte {pos}: patterns range over non-quiescent symbols")]
    QuiescentInPattern { pos: usize },
    #[error("alphabets differ")]
    AlphabetMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Sym(Sym),
    Epsilon,
    Bar,
    Star,
    Plus,
    Open,
    Close,
}

#[derive(Debug, Clone)]
struct Nfa {
    eps: Vec<Vec<usize>>,
    by_sym: Vec<Vec<(Sym, usize)>>,
    start: usize,
    accept: usize,
}

impl Nfa {
    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &t in &self.eps[s] {
                if set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    fn advance(&self, set: &BTreeSet<usize>, sym: Sym) -> BTreeSet<usize> {
        let mut next = BTreeSet::new();
        for &s in set {
            for &(label, t) in &self.by_sym[s] {
                if label == sym {
                    next.insert(t);
                }
            }
        }
        self.closure(&mut next);
        next
    }

    fn initial(&self) -> BTreeSet<usize> {
        let mut set = BTreeSet::from([self.start]);
        self.closure(&mut set);
        set
    }
}

/// A compiled pattern: the source text plus its NFA.
#[derive(Debug, Clone)]
pub struct RegularSet {
    pattern: String,
    alphabet: Arc<Alphabet>,
    nfa: Nfa,
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    eps: Vec<Vec<usize>>,
    by_sym: Vec<Vec<(Sym, usize)>>,
    text_len: usize,
    _marker: std::marker::PhantomData<&'a ()>,
}

impl Parser<'_> {
    fn fresh(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.by_sym.push(Vec::new());
        self.eps.len() - 1
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|&(p, _)| p)
            .unwrap_or(self.text_len)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    // expr := term ('|' term)*
    fn expr(&mut self) -> Result<(usize, usize), PatternError> {
        let mut frags = vec![self.term()?];
        while self.peek() == Some(&Token::Bar) {
            self.bump();
            frags.push(self.term()?);
        }
        if frags.len() == 1 {
            return Ok(frags[0]);
        }
        let s = self.fresh();
        let t = self.fresh();
        for (fs, ft) in frags {
            self.eps[s].push(fs);
            self.eps[ft].push(t);
        }
        Ok((s, t))
    }

    // term := factor*  (an empty term is ε)
    fn term(&mut self) -> Result<(usize, usize), PatternError> {
        let mut current: Option<(usize, usize)> = None;
        loop {
            match self.peek() {
                Some(Token::Sym(_)) | Some(Token::Epsilon) | Some(Token::Open) => {
                    let frag = self.factor()?;
                    current = Some(match current {
                        None => frag,
                        Some((s, t)) => {
                            self.eps[t].push(frag.0);
                            (s, frag.1)
                        }
                    });
                }
                _ => break,
            }
        }
        Ok(current.unwrap_or_else(|| {
            let s = self.fresh();
            let t = self.fresh();
            self.eps[s].push(t);
            (s, t)
        }))
    }

    // factor := atom ('*' | '+')*
    fn factor(&mut self) -> Result<(usize, usize), PatternError> {
        let mut frag = self.atom()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    let s = self.fresh();
                    let t = self.fresh();
                    self.eps[s].push(frag.0);
                    self.eps[s].push(t);
                    self.eps[frag.1].push(frag.0);
                    self.eps[frag.1].push(t);
                    frag = (s, t);
                }
                Some(Token::Plus) => {
                    self.bump();
                    let s = self.fresh();
                    let t = self.fresh();
                    self.eps[s].push(frag.0);
                    self.eps[frag.1].push(frag.0);
                    self.eps[frag.1].push(t);
                    frag = (s, t);
                }
                _ => break,
            }
        }
        Ok(frag)
    }

    fn atom(&mut self) -> Result<(usize, usize), PatternError> {
        let pos = self.here();
        match self.bump() {
            Some(Token::Sym(sym)) => {
                let s = self.fresh();
                let t = self.fresh();
                self.by_sym[s].push((sym, t));
                Ok((s, t))
            }
            Some(Token::Epsilon) => {
                let s = self.fresh();
                let t = self.fresh();
                self.eps[s].push(t);
                Ok((s, t))
            }
            Some(Token::Open) => {
                let frag = self.expr()?;
                match self.bump() {
                    Some(Token::Close) => Ok(frag),
                    _ => Err(PatternError::Syntax {
                        pos,
                        msg: "unclosed group".into(),
                    }),
                }
            }
            other => Err(PatternError::Syntax {
                pos,
                msg: format!("unexpected {:?}", other),
            }),
        }
    }
}

fn tokenize(text: &str, alphabet: &Alphabet) -> Result<Vec<(usize, Token)>, PatternError> {
    let quiescent_token = alphabet.token(alphabet.quiescent()).to_string();
    let mut out = Vec::new();
    let mut pos = 0;
    let bytes = text.as_bytes();
    while pos < text.len() {
        let rest = &text[pos..];
        let c = rest.chars().next().unwrap();
        let simple = match c {
            '|' => Some(Token::Bar),
            '*' => Some(Token::Star),
            '+' => Some(Token::Plus),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            'ε' => Some(Token::Epsilon),
            _ if c.is_whitespace() => {
                pos += c.len_utf8();
                continue;
            }
            _ => None,
        };
        if let Some(tok) = simple {
            out.push((pos, tok));
            pos += c.len_utf8();
            continue;
        }
        if rest.starts_with(&quiescent_token) {
            // a longer ordinary token may still shadow the quiescent one
            let longer = alphabet
                .active_symbols()
                .map(|s| alphabet.token(s))
                .filter(|t| rest.starts_with(*t))
                .max_by_key(|t| t.len());
            match longer {
                Some(t) if t.len() > quiescent_token.len() => {
                    out.push((pos, Token::Sym(alphabet.lookup(t).unwrap())));
                    pos += t.len();
                    continue;
                }
                _ => return Err(PatternError::QuiescentInPattern { pos }),
            }
        }
        let hit = alphabet
            .active_symbols()
            .map(|s| (s, alphabet.token(s)))
            .filter(|(_, t)| rest.starts_with(*t))
            .max_by_key(|(_, t)| t.len());
        match hit {
            Some((sym, t)) => {
                out.push((pos, Token::Sym(sym)));
                pos += t.len();
            }
            None => {
                let _ = bytes;
                return Err(PatternError::UnknownSymbol { pos });
            }
        }
    }
    Ok(out)
}

/// Compiles `text` into a [`RegularSet`] over `alphabet`.
pub fn parse_pattern(text: &str, alphabet: Arc<Alphabet>) -> Result<RegularSet, PatternError> {
    let tokens = tokenize(text, &alphabet)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        eps: Vec::new(),
        by_sym: Vec::new(),
        text_len: text.len(),
        _marker: std::marker::PhantomData,
    };
    let (start, accept) = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(PatternError::Syntax {
            pos: parser.here(),
            msg: "trailing input".into(),
        });
    }
    Ok(RegularSet {
        pattern: text.to_string(),
        alphabet,
        nfa: Nfa {
            eps: parser.eps,
            by_sym: parser.by_sym,
            start,
            accept,
        },
    })
}

impl RegularSet {
    pub fn pattern(&self) -> &str {
        &self.pattern
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// NFA acceptance. Quiescent cells never label a transition, so a
    /// word containing them is simply rejected.
    pub fn contains(&self, word: &[Sym]) -> Result<bool, PatternError> {
        if word.iter().any(|&s| !self.alphabet.contains(s)) {
            return Err(PatternError::AlphabetMismatch);
        }
        let mut set = self.nfa.initial();
        for &sym in word {
            set = self.nfa.advance(&set, sym);
            if set.is_empty() {
                return Ok(false);
            }
        }
        Ok(set.contains(&self.nfa.accept))
    }

    /// All accepted words of length at most `max_len`, in length-then-
    /// lexicographic order. Deterministic.
    pub fn enumerate_words(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let initial = self.nfa.initial();
        if initial.contains(&self.nfa.accept) {
            out.push(Vec::new());
        }
        let mut frontier: Vec<(Word, BTreeSet<usize>)> = vec![(Vec::new(), initial)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (word, set) in &frontier {
                for sym in self.alphabet.active_symbols() {
                    let advanced = self.nfa.advance(set, sym);
                    if advanced.is_empty() {
                        continue;
                    }
                    let mut w = word.clone();
                    w.push(sym);
                    if advanced.contains(&self.nfa.accept) {
                        out.push(w.clone());
                    }
                    next.push((w, advanced));
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        debug_assert!(out.windows(2).all(|p| word_cmp(&p[0], &p[1]).is_lt()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rs(pattern: &str, letters: &str) -> RegularSet {
        parse_pattern(pattern, Alphabet::lowercase(letters)).unwrap()
    }

    fn words(set: &RegularSet, max_len: usize) -> Vec<String> {
        set.enumerate_words(max_len)
            .iter()
            .map(|w| set.alphabet().render_word(w))
            .collect()
    }

    #[test]
    fn star_literal_and_union() {
        let set = rs("a*ab", "ab");
        for (w, expect) in [("aab", true), ("ab", true), ("ba", false), ("a", false)] {
            let word = set.alphabet().parse_word(w).unwrap();
            assert_eq!(set.contains(&word).unwrap(), expect, "{w}");
        }
        assert_eq!(words(&set, 4), vec!["ab", "aab", "aaab"]);

        let lit = rs("abc", "abc");
        assert_eq!(words(&lit, 2), Vec::<String>::new());
        assert_eq!(words(&lit, 3), vec!["abc"]);

        let grouped = rs("(ab)*", "ab");
        assert_eq!(words(&grouped, 4), vec!["ε", "ab", "abab"]);

        let branching = rs("a(b|c)*", "abc");
        assert_eq!(words(&branching, 2), vec!["a", "ab", "ac"]);
    }

    #[test]
    fn plus_and_epsilon() {
        let set = rs("ab+|ε", "ab");
        assert_eq!(words(&set, 3), vec!["ε", "ab", "abb"]);
    }

    #[test]
    fn pattern_errors() {
        let ab = Alphabet::lowercase("ab");
        assert_eq!(
            parse_pattern("a_b", ab.clone()).unwrap_err(),
            PatternError::QuiescentInPattern { pos: 1 }
        );
        assert_eq!(
            parse_pattern("axb", ab.clone()).unwrap_err(),
            PatternError::UnknownSymbol { pos: 1 }
        );
        assert!(matches!(
            parse_pattern("a(b", ab.clone()).unwrap_err(),
            PatternError::Syntax { .. }
        ));
        assert!(matches!(
            parse_pattern("a)b", ab).unwrap_err(),
            PatternError::Syntax { .. }
        ));
    }

    #[test]
    fn multi_char_tokens_tokenize_greedily() {
        let ab = Alphabet::with_quiescent_first(["a", "a-2"]).unwrap();
        let set = parse_pattern("a-2a*", ab.clone()).unwrap();
        let w = ab.parse_word("a-2aa").unwrap();
        assert!(set.contains(&w).unwrap());
    }

    proptest! {
        /// `contains` agrees with membership in the enumeration, and
        /// enumeration is monotone in the length bound.
        #[test]
        fn contains_matches_enumeration(raw in proptest::collection::vec(1u32..3, 0..6)) {
            let set = rs("a(b|a)*|b+", "ab");
            let word: Vec<Sym> = raw.into_iter().map(Sym).collect();
            let enumerated = set.enumerate_words(6);
            let member = enumerated.contains(&word);
            prop_assert_eq!(set.contains(&word).unwrap(), member);

            let shorter = set.enumerate_words(3);
            for w in &shorter {
                prop_assert!(enumerated.contains(w));
            }
        }
    }
}
