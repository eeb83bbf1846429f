//! Built-in rule tables and parametric glider-system builders, each
//! paired with an independent reference oracle for its target language.
//!
//! The oracles are hand-written predicates over words; they never touch
//! the rule tables or the builders, so sampling a construction and
//! checking it against its oracle is a genuine two-route test.

use std::sync::Arc;

use thiserror::Error;

use crate::alphabet::{word_cmp, Alphabet, Sym, Word};
use crate::gliders::{gtor, Glider, GliderError, GliderSystem};
use crate::language::{generate_language, Budgets, LanguageError, LanguageSample};
use crate::regset::{parse_pattern, RegularSet};
use crate::rule::RuleTable;

pub const BUILTIN_NAMES: [&str; 8] = [
    "anbn",
    "anban",
    "anbmc",
    "anbm",
    "anbncn",
    "anbncndn",
    "rule90",
    "two_captains",
];

/// The a^n b^n table; also the a^n b^m table, which differs only in
/// its initial set.
const ANBN_RULES: &str = "\
alphabet: _ a b
radius: 1
_ _ _ -> _
_ _ a -> a
_ a a -> a
_ a b -> a
a a a -> a
a a b -> a
a b _ -> b
a b b -> b
b _ _ -> b
b b _ -> b
b b b -> b
";

const ANBAN_RULES: &str = "\
alphabet: _ a b
radius: 1
_ _ _ -> _
_ _ a -> a
_ a a -> a
_ a b -> a
a _ _ -> a
a a _ -> a
a a a -> a
a a b -> a
b a _ -> a
b a a -> a
a b a -> b
";

const ANBMC_RULES: &str = "\
alphabet: _ a b c
radius: 1
_ _ _ -> _
_ _ a -> a
_ a a -> a
_ a b -> a
a a a -> a
a a b -> a
a b b -> b
a b c -> b
b b b -> b
b b c -> b
b c _ -> b
c _ _ -> c
";

const ANBNCN_RULES: &str = "\
alphabet: _ a b c
radius: 2
_ _ _ _ _ -> _
_ _ _ _ a -> _
_ _ _ a a -> a
_ _ _ a b -> a
_ _ a a a -> a
_ _ a a b -> a
_ _ a b c -> a
_ a a a a -> a
_ a a a b -> a
_ a a b b -> a
a a a a a -> a
a a a a b -> a
a a a b b -> a
_ a b c _ -> b
a a b b b -> b
a a b b c -> b
a b b b b -> b
a b b b c -> b
a b b c c -> b
a b c _ _ -> b
b b b b b -> b
b b b b c -> b
b b b c c -> b
b b c c _ -> b
b b c c c -> b
b c _ _ _ -> c
b c c _ _ -> c
b c c c _ -> c
b c c c c -> c
c _ _ _ _ -> c
c c _ _ _ -> c
c c c _ _ -> c
c c c c _ -> c
c c c c c -> c
";

const ANBNCNDN_RULES: &str = "\
alphabet: _ a b c d
radius: 2
d d d d d -> d
d d d d _ -> d
d d d _ _ -> d
d d _ _ _ -> d
d _ _ _ _ -> d
c d d d d -> d
c d d d _ -> d
c d d _ _ -> d
c d _ _ _ -> d
c c d d d -> c
c c d d _ -> c
c c c d d -> c
c c c c d -> c
c c c c c -> c
b c d _ _ -> c
b c c d d -> c
b c c c d -> c
b c c c c -> c
b b c c d -> c
b b c c c -> c
b b b c c -> b
b b b b c -> b
b b b b b -> b
a b c d _ -> c
a b b c c -> b
a b b b c -> b
a b b b b -> b
a a b b c -> b
a a b b b -> b
a a a b b -> b
a a a a b -> a
a a a a a -> a
_ a b c d -> b
_ a a b b -> b
_ a a a b -> a
_ a a a a -> a
_ _ a b c -> b
_ _ a a b -> a
_ _ a a a -> a
_ _ _ a b -> a
_ _ _ a a -> a
_ _ _ _ a -> a
_ _ _ _ _ -> _
";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("unknown construction `{0}`")]
    UnknownConstruction(String),
    #[error("block words must be non-empty")]
    EmptyWord,
    #[error("nested counters need radius at least 1")]
    RadiusZero,
    #[error("words and exponent expressions must be non-empty lists of equal length")]
    LengthMismatch,
    #[error("bad linear expression `{0}`; expected forms like `n`, `2n`, `n+1`, `3n+2`")]
    BadLinearExpr(String),
    #[error("linear expression must have a positive leading coefficient")]
    NonPositiveCoefficient,
    #[error(transparent)]
    Glider(#[from] GliderError),
}

/// A positive linear exponent `e(n) = a·n + b` with `a > 0`, `b ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearExpr {
    a: u64,
    b: u64,
}

impl LinearExpr {
    pub fn new(a: u64, b: u64) -> Result<Self, BuildError> {
        if a == 0 {
            return Err(BuildError::NonPositiveCoefficient);
        }
        Ok(LinearExpr { a, b })
    }

    pub fn coefficient(&self) -> u64 {
        self.a
    }

    pub fn constant(&self) -> u64 {
        self.b
    }

    pub fn eval(&self, n: u64) -> u64 {
        self.a * n + self.b
    }

    /// Parses `n`, `2n`, `n+1`, `3n+2`.
    pub fn parse(text: &str) -> Result<Self, BuildError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || BuildError::BadLinearExpr(text.to_string());
        let (head, tail) = match s.split_once('+') {
            Some((h, t)) => (h, Some(t)),
            None => (s.as_str(), None),
        };
        let head = head.strip_suffix('n').ok_or_else(bad)?;
        let a: u64 = if head.is_empty() {
            1
        } else {
            head.parse().map_err(|_| bad())?
        };
        let b: u64 = match tail {
            None => 0,
            Some(t) => t.parse().map_err(|_| bad())?,
        };
        if a == 0 {
            return Err(BuildError::NonPositiveCoefficient);
        }
        Ok(LinearExpr { a, b })
    }
}

impl std::fmt::Display for LinearExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.a != 1 {
            write!(f, "{}", self.a)?;
        }
        write!(f, "n")?;
        if self.b != 0 {
            write!(f, "+{}", self.b)?;
        }
        Ok(())
    }
}

/// Reference predicate and generator for a target language.
#[derive(Debug, Clone)]
pub struct Oracle {
    alphabet: Arc<Alphabet>,
    kind: OracleKind,
}

#[derive(Debug, Clone)]
enum OracleKind {
    /// `w_1^{a_1 n + b_1} … w_m^{a_m n + b_m}` for n ≥ 1; at least one
    /// coefficient is positive.
    Blocks {
        words: Vec<Word>,
        exprs: Vec<(u64, u64)>,
    },
    /// `a^n b^m` with n ≥ m > 0, optionally with one trailing symbol.
    GeqPair {
        a: Sym,
        b: Sym,
        trailing: Option<Sym>,
    },
    /// The rows of the XOR automaton evolved from a single set cell:
    /// row t holds a one at even offset j iff C(t, j/2) is odd.
    ParityRows { one: Sym },
}

impl Oracle {
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    fn blocks(alphabet: Arc<Alphabet>, words: Vec<Word>, exprs: Vec<(u64, u64)>) -> Self {
        debug_assert!(exprs.iter().any(|&(a, _)| a > 0));
        Oracle {
            alphabet,
            kind: OracleKind::Blocks { words, exprs },
        }
    }

    fn block_word(words: &[Word], exprs: &[(u64, u64)], n: u64) -> Word {
        let mut out = Vec::new();
        for (w, &(a, b)) in words.iter().zip(exprs) {
            for _ in 0..(a * n + b) {
                out.extend_from_slice(w);
            }
        }
        out
    }

    pub fn contains(&self, word: &[Sym]) -> bool {
        match &self.kind {
            OracleKind::Blocks { words, exprs } => {
                for n in 1.. {
                    let candidate = Oracle::block_word(words, exprs, n);
                    if candidate.len() > word.len() {
                        return false;
                    }
                    if candidate.len() == word.len() {
                        return candidate == word;
                    }
                }
                unreachable!()
            }
            OracleKind::GeqPair { a, b, trailing } => {
                let mut rest = word;
                if let Some(t) = trailing {
                    match rest.split_last() {
                        Some((&last, head)) if last == *t => rest = head,
                        _ => return false,
                    }
                }
                let n = rest.iter().take_while(|&&s| s == *a).count();
                let m = rest[n..].iter().take_while(|&&s| s == *b).count();
                n + m == rest.len() && n >= m && m > 0
            }
            OracleKind::ParityRows { one } => {
                if word.len() % 2 == 0 {
                    return false;
                }
                let t = (word.len() - 1) / 2;
                word.iter().enumerate().all(|(j, &s)| {
                    let expect_one = j % 2 == 0 && binom_odd(t as u64, (j / 2) as u64);
                    (s == *one) == expect_one
                })
            }
        }
    }

    /// Every member of the language with length at most `max_len`, in
    /// canonical order.
    pub fn enumerate_upto(&self, max_len: usize) -> Vec<Word> {
        let mut out = match &self.kind {
            OracleKind::Blocks { words, exprs } => {
                let mut out = Vec::new();
                for n in 1.. {
                    let candidate = Oracle::block_word(words, exprs, n);
                    if candidate.len() > max_len {
                        break;
                    }
                    out.push(candidate);
                }
                out
            }
            OracleKind::GeqPair { a, b, trailing } => {
                let extra = usize::from(trailing.is_some());
                let mut out = Vec::new();
                for m in 1.. {
                    if 2 * m + extra > max_len {
                        break;
                    }
                    for n in m.. {
                        if n + m + extra > max_len {
                            break;
                        }
                        let mut w = vec![*a; n];
                        w.extend(std::iter::repeat(*b).take(m));
                        w.extend(trailing.iter().copied());
                        out.push(w);
                    }
                }
                out
            }
            OracleKind::ParityRows { one } => {
                let zero = self.alphabet.quiescent();
                let mut out = Vec::new();
                for t in 0.. {
                    let len = 2 * t + 1;
                    if len > max_len {
                        break;
                    }
                    let row: Word = (0..len)
                        .map(|j| {
                            if j % 2 == 0 && binom_odd(t as u64, (j / 2) as u64) {
                                *one
                            } else {
                                zero
                            }
                        })
                        .collect();
                    out.push(row);
                }
                out
            }
        };
        out.sort_by(|x, y| word_cmp(x, y));
        out.dedup();
        out
    }
}

/// `C(n, k)` is odd iff `k`'s bits are a subset of `n`'s.
fn binom_odd(n: u64, k: u64) -> bool {
    k & !n == 0
}

/// A rule table (hand-written or compiled from gliders), its initial
/// pattern, and an independent oracle for the intended language.
#[derive(Debug, Clone)]
pub struct Construction {
    pub name: String,
    pub rule: RuleTable,
    pub gliders: Option<GliderSystem>,
    pub initial: RegularSet,
    pub oracle: Oracle,
}

impl Construction {
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.rule.alphabet()
    }

    pub fn radius(&self) -> usize {
        self.rule.radius()
    }

    pub fn sample(&self, budgets: Budgets) -> Result<LanguageSample, LanguageError> {
        generate_language(&self.rule, &self.initial, budgets)
    }

    /// `.rules` text with the initial pattern recorded as a comment.
    pub fn export_rules_text(&self) -> String {
        format!("# init: {}\n{}", self.initial.pattern(), self.rule.to_text())
    }

    /// `.gliders` text for builder-backed constructions.
    pub fn export_gliders_text(&self) -> Option<String> {
        self.gliders
            .as_ref()
            .map(|gs| gs.to_text_with_init(Some(self.initial.pattern())))
    }
}

fn hand_construction(name: &str, rules: &str, init: &str, oracle_of: impl FnOnce(&Arc<Alphabet>) -> Oracle) -> Construction {
    let rule = RuleTable::parse_str(rules).expect("built-in table parses");
    let initial = parse_pattern(init, rule.alphabet().clone()).expect("built-in pattern parses");
    let oracle = oracle_of(rule.alphabet());
    Construction {
        name: name.to_string(),
        rule,
        gliders: None,
        initial,
        oracle,
    }
}

fn uniform_blocks(alphabet: &Arc<Alphabet>, letters: &str) -> Oracle {
    let words: Vec<Word> = letters
        .chars()
        .map(|c| vec![alphabet.lookup(&c.to_string()).unwrap()])
        .collect();
    let exprs = vec![(1, 0); words.len()];
    Oracle::blocks(alphabet.clone(), words, exprs)
}

/// Returns one of the built-in constructions by name.
pub fn builtin(name: &str) -> Result<Construction, BuildError> {
    match name {
        "anbn" => Ok(hand_construction("anbn", ANBN_RULES, "ab", |ab| {
            uniform_blocks(ab, "ab")
        })),
        "two_captains" => Ok(hand_construction(
            "two_captains",
            ANBN_RULES,
            "ab",
            |ab| uniform_blocks(ab, "ab"),
        )),
        "anban" => Ok(hand_construction("anban", ANBAN_RULES, "aba", |ab| {
            let a = vec![ab.lookup("a").unwrap()];
            let b = vec![ab.lookup("b").unwrap()];
            Oracle::blocks(ab.clone(), vec![a.clone(), b, a], vec![(1, 0), (0, 1), (1, 0)])
        })),
        "anbmc" => Ok(hand_construction("anbmc", ANBMC_RULES, "a*abc", |ab| {
            Oracle {
                alphabet: ab.clone(),
                kind: OracleKind::GeqPair {
                    a: ab.lookup("a").unwrap(),
                    b: ab.lookup("b").unwrap(),
                    trailing: Some(ab.lookup("c").unwrap()),
                },
            }
        })),
        "anbm" => Ok(hand_construction("anbm", ANBN_RULES, "a*ab", |ab| Oracle {
            alphabet: ab.clone(),
            kind: OracleKind::GeqPair {
                a: ab.lookup("a").unwrap(),
                b: ab.lookup("b").unwrap(),
                trailing: None,
            },
        })),
        "anbncn" => Ok(hand_construction("anbncn", ANBNCN_RULES, "abc", |ab| {
            uniform_blocks(ab, "abc")
        })),
        "anbncndn" => Ok(hand_construction(
            "anbncndn",
            ANBNCNDN_RULES,
            "abcd",
            |ab| uniform_blocks(ab, "abcd"),
        )),
        "rule90" => {
            let bits = Alphabet::new(["0", "1"], 0).expect("bit alphabet");
            let rule = RuleTable::total_from_fn(bits.clone(), 1, |w| Sym((w[0].0 ^ w[2].0) & 1));
            let initial = parse_pattern("1", bits.clone()).expect("pattern");
            let one = bits.lookup("1").unwrap();
            Ok(Construction {
                name: "rule90".to_string(),
                rule,
                gliders: None,
                initial,
                oracle: Oracle {
                    alphabet: bits,
                    kind: OracleKind::ParityRows { one },
                },
            })
        }
        other => Err(BuildError::UnknownConstruction(other.to_string())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    fn sign(self) -> i64 {
        match self {
            Direction::Left => -1,
            Direction::Right => 1,
        }
    }
}

/// Which reading of the dominated-velocity sets the two-block builder
/// uses for the over-long-block case; see [`build_two_block`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum XSetReading {
    /// `[2r+1-k]` read as the interval `[1, 2r+1-k]`.
    #[default]
    Interval,
    /// `[2r+1-k]` read as the singleton `{2r+1-k}`.
    Singleton,
}

fn alphabet_of_letters(words: &[&str]) -> Result<Arc<Alphabet>, BuildError> {
    let mut letters: Vec<char> = words.iter().flat_map(|w| w.chars()).collect();
    letters.sort_unstable();
    letters.dedup();
    if letters.is_empty() {
        return Err(BuildError::EmptyWord);
    }
    Ok(Alphabet::with_quiescent_first(
        letters.iter().map(|c| c.to_string()),
    )
    .expect("distinct letters"))
}

fn distinct_symbols(word: &[Sym]) -> Vec<Sym> {
    let mut out: Vec<Sym> = word.to_vec();
    out.sort_unstable();
    out.dedup();
    out
}

/// All quiescent-valued gliders within the radius.
fn quiescent_gliders(alphabet: &Alphabet, radius: usize) -> Vec<Glider> {
    let r = radius as i64;
    (-r..=r)
        .map(|v| Glider::new(alphabet.quiescent(), v))
        .collect()
}

/// Pairs making every value glider dominate every quiescent glider of a
/// different velocity, so reconstruction fills quiescent outputs last.
fn value_over_quiescent(
    alphabet: &Alphabet,
    radius: usize,
    value_gliders: &[Glider],
) -> Vec<(Glider, Glider)> {
    let mut pairs = Vec::new();
    for &g in value_gliders {
        for q in quiescent_gliders(alphabet, radius) {
            if q.velocity != g.velocity {
                pairs.push((g, q));
            }
        }
    }
    pairs
}

fn literal_construction(
    name: String,
    system: GliderSystem,
    initial_word: &[Sym],
    oracle: Oracle,
) -> Result<Construction, BuildError> {
    let rule = gtor(&system)?;
    let pattern = rule.alphabet().render_word(initial_word);
    let initial =
        parse_pattern(&pattern, rule.alphabet().clone()).expect("literal initial pattern");
    Ok(Construction {
        name,
        rule,
        gliders: Some(system),
        initial,
        oracle,
    })
}

/// A system that repeatedly shifts the existing copies of `w` by `s`
/// and appends a fresh copy on side `d`: per symbol, gliders at `s` and
/// at `s + sign(d)·|w|`. Generates `{w^n | n ≥ 1}`.
pub fn build_shift_concat(
    word: &str,
    shift: i64,
    dir: Direction,
) -> Result<Construction, BuildError> {
    if word.is_empty() {
        return Err(BuildError::EmptyWord);
    }
    let alphabet = alphabet_of_letters(&[word])?;
    let w = alphabet.parse_word(word).expect("letters are in alphabet");
    let far = shift + dir.sign() * w.len() as i64;
    let radius = shift.unsigned_abs().max(far.unsigned_abs()) as usize;
    let mut value_gliders = Vec::new();
    for sym in distinct_symbols(&w) {
        value_gliders.push(Glider::new(sym, shift));
        value_gliders.push(Glider::new(sym, far));
    }
    let dominance = value_over_quiescent(&alphabet, radius, &value_gliders);
    let mut gliders = value_gliders;
    gliders.extend(quiescent_gliders(&alphabet, radius));
    let system = GliderSystem::new(alphabet.clone(), radius, gliders, dominance)?;
    let oracle = Oracle::blocks(alphabet, vec![w.clone()], vec![(1, 0)]);
    literal_construction(
        format!("shift_concat({word},{shift:+},{dir:?})"),
        system,
        &w,
        oracle,
    )
}

/// The two-block system for `{w1^n w2^n | n ≥ 1}` at radius
/// `⌈(|w1|+|w2|)/2⌉`: shift gliders at `s = |w1| - r` for every symbol,
/// left-injection gliders at `-r` for `w1`, right-injection gliders at
/// `s + |w2|` for `w2`, and quiescent gliders dominated per the X-sets
/// (plus by the shift gliders, which the reconstruction order needs).
pub fn build_two_block(w1: &str, w2: &str) -> Result<Construction, BuildError> {
    build_two_block_with_reading(w1, w2, XSetReading::default())
}

pub fn build_two_block_with_reading(
    w1: &str,
    w2: &str,
    reading: XSetReading,
) -> Result<Construction, BuildError> {
    if w1.is_empty() || w2.is_empty() {
        return Err(BuildError::EmptyWord);
    }
    let alphabet = alphabet_of_letters(&[w1, w2])?;
    let left = alphabet.parse_word(w1).expect("letters");
    let right = alphabet.parse_word(w2).expect("letters");
    let k1 = left.len() as i64;
    let k2 = right.len() as i64;
    let radius = ((k1 + k2 + 1) / 2) as usize;
    let r = radius as i64;
    let s = k1 - r;
    let inject_right = s + k2;

    let mut gliders: Vec<Glider> = Vec::new();
    let mut shift_gliders = Vec::new();
    for sym in distinct_symbols(&[left.clone(), right.clone()].concat()) {
        shift_gliders.push(Glider::new(sym, s));
    }
    gliders.extend(&shift_gliders);
    let mut dominance = value_over_quiescent(&alphabet, radius, &shift_gliders);

    let q = alphabet.quiescent();
    let x_set = |k: i64, lo_case: (i64, i64)| -> Vec<i64> {
        if k <= r {
            (lo_case.0..=lo_case.1).collect()
        } else {
            let edge = 2 * r + 1 - k;
            match reading {
                XSetReading::Interval => (1..=edge).collect(),
                XSetReading::Singleton => vec![edge],
            }
        }
    };

    // left-injection gliders for w1
    for (i, &sym) in left.iter().enumerate() {
        let g = Glider::new(sym, -r);
        gliders.push(g);
        let k_rem = k1 - (i as i64 + 1);
        for x in x_set(k_rem, (k_rem - r, r)) {
            if x != g.velocity {
                dominance.push((g, Glider::new(q, x)));
            }
        }
    }
    // right-injection gliders for w2
    for (j, &sym) in right.iter().enumerate() {
        let g = Glider::new(sym, inject_right);
        gliders.push(g);
        let k_rem = k2 - (j as i64 + 1);
        for x in x_set(k_rem, (-r, r - k_rem)) {
            if -x != g.velocity {
                dominance.push((g, Glider::new(q, -x)));
            }
        }
    }
    gliders.extend(quiescent_gliders(&alphabet, radius));

    let system = GliderSystem::new(alphabet.clone(), radius, gliders, dominance)?;
    let initial = [left.clone(), right.clone()].concat();
    let oracle = Oracle::blocks(alphabet, vec![left, right], vec![(1, 0), (1, 0)]);
    literal_construction(format!("two_block({w1},{w2})"), system, &initial, oracle)
}

fn nested_tokens(radius: usize) -> Vec<String> {
    if 2 * radius <= 26 {
        (0..2 * radius)
            .map(|k| ((b'a' + k as u8) as char).to_string())
            .collect()
    } else {
        let mut toks: Vec<String> = (1..=radius).rev().map(|i| format!("a-{i}")).collect();
        toks.extend((1..=radius).map(|i| format!("a{i}")));
        toks
    }
}

/// The nested-counters system for
/// `{a_{-r}^n … a_{-1}^n a_1^n … a_r^n | n ≥ 1}`: each symbol carries
/// two gliders, at its signed block index and one step inward, with
/// inner blocks dominating outer ones on the same side. Symbols are
/// rendered `a`, `b`, … in block order while they fit.
pub fn build_nested_counters(radius: usize) -> Result<Construction, BuildError> {
    if radius == 0 {
        return Err(BuildError::RadiusZero);
    }
    let tokens = nested_tokens(radius);
    let alphabet = Alphabet::with_quiescent_first(tokens.clone()).expect("distinct tokens");
    let r = radius as i64;
    let indices: Vec<i64> = (-r..=r).filter(|&i| i != 0).collect();
    let sym_of = |i: i64| -> Sym {
        let block = if i < 0 { i + r } else { i + r - 1 } as usize;
        alphabet.lookup(&tokens[block]).unwrap()
    };
    let mut value_gliders = Vec::new();
    let mut pair_of = Vec::new();
    for &i in &indices {
        let main = Glider::new(sym_of(i), i);
        let inward = Glider::new(sym_of(i), i - i.signum());
        value_gliders.push(main);
        value_gliders.push(inward);
        pair_of.push((i, [main, inward]));
    }
    let mut dominance = Vec::new();
    for &(i, gi) in &pair_of {
        for &(j, gj) in &pair_of {
            if i.signum() != j.signum() || i.abs() >= j.abs() {
                continue;
            }
            for a in gi {
                for b in gj {
                    if a.value != b.value && a.velocity != b.velocity {
                        dominance.push((a, b));
                    }
                }
            }
        }
    }
    dominance.extend(value_over_quiescent(&alphabet, radius, &value_gliders));
    let mut gliders = value_gliders;
    gliders.extend(quiescent_gliders(&alphabet, radius));
    let system = GliderSystem::new(alphabet.clone(), radius, gliders, dominance)?;

    let initial: Word = indices.iter().map(|&i| sym_of(i)).collect();
    let words: Vec<Word> = initial.iter().map(|&s| vec![s]).collect();
    let exprs = vec![(1, 0); words.len()];
    let oracle = Oracle::blocks(alphabet, words, exprs);
    literal_construction(format!("nested_counters({radius})"), system, &initial, oracle)
}

/// The block-repetition system for
/// `{w_1^{e_1(n)} … w_m^{e_m(n)} | n ≥ 1}` with positive linear
/// exponents: blocks are composed to `w_i^{a_i}`, assigned consecutive
/// velocity families `{v_i, v_i + |w_i^{a_i}|}` starting at
/// `-⌈K/2⌉` where `K` is the composed total length, and the `b_i`
/// static copies are pre-loaded into the initial configuration.
pub fn build_block_repetition(
    words: &[&str],
    exprs: &[LinearExpr],
) -> Result<Construction, BuildError> {
    if words.is_empty() || words.len() != exprs.len() {
        return Err(BuildError::LengthMismatch);
    }
    if words.iter().any(|w| w.is_empty()) {
        return Err(BuildError::EmptyWord);
    }
    let alphabet = alphabet_of_letters(words)?;
    let parsed: Vec<Word> = words
        .iter()
        .map(|w| alphabet.parse_word(w).expect("letters"))
        .collect();
    let composed_len: Vec<i64> = parsed
        .iter()
        .zip(exprs)
        .map(|(w, e)| (w.len() as u64 * e.coefficient()) as i64)
        .collect();
    let total: i64 = composed_len.iter().sum();
    let radius = ((total + 1) / 2) as usize;
    let mut v = -((total + 1) / 2);
    let mut value_gliders = Vec::new();
    for (w, &k) in parsed.iter().zip(&composed_len) {
        for sym in distinct_symbols(w) {
            value_gliders.push(Glider::new(sym, v));
            value_gliders.push(Glider::new(sym, v + k));
        }
        v += k;
    }
    value_gliders.sort_unstable();
    value_gliders.dedup();
    let dominance = value_over_quiescent(&alphabet, radius, &value_gliders);
    let mut gliders = value_gliders;
    gliders.extend(quiescent_gliders(&alphabet, radius));
    let system = GliderSystem::new(alphabet.clone(), radius, gliders, dominance)?;

    let mut initial = Vec::new();
    for (w, e) in parsed.iter().zip(exprs) {
        for _ in 0..e.eval(1) {
            initial.extend_from_slice(w);
        }
    }
    let oracle = Oracle::blocks(
        alphabet,
        parsed,
        exprs.iter().map(|e| (e.coefficient(), e.constant())).collect(),
    );
    let shown: Vec<String> = words
        .iter()
        .zip(exprs)
        .map(|(w, e)| format!("{w}^{e}"))
        .collect();
    literal_construction(
        format!("block_repetition({})", shown.join(" ")),
        system,
        &initial,
        oracle,
    )
}
