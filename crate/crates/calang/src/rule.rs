//! Partial local rules and the global evolution map.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::alphabet::{Alphabet, Sym};
use crate::config::FiniteConfiguration;

/// A neighborhood of `2r+1` consecutive cells, indexed `-r..=r` around
/// the center.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Window(pub Vec<Sym>);

impl Window {
    pub fn radius(&self) -> usize {
        debug_assert!(self.0.len() % 2 == 1);
        (self.0.len() - 1) / 2
    }

    /// Symbol at relative index `rel`, with `rel` in `-r..=r`.
    pub fn at(&self, rel: i64) -> Sym {
        let r = self.radius() as i64;
        debug_assert!(-r <= rel && rel <= r);
        self.0[(rel + r) as usize]
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.0
            .iter()
            .map(|&s| alphabet.token(s))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RuleError {
    #[error("no rule entry for window `{window}`{}", position.map(|p| format!(" at cell {p}")).unwrap_or_default())]
    UndefinedNeighborhood {
        window: String,
        position: Option<i64>,
    },
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("window has length {got}, expected {expected}")]
    BadWindowLength { expected: usize, got: usize },
    #[error("symbol out of range for this alphabet")]
    UnknownSymbol,
    #[error("the all-quiescent window must map to the quiescent symbol")]
    QuiescenceViolation,
    #[error("conflicting entries for window `{window}`")]
    ConflictingEntry { window: String },
    #[error("configuration width {width} exceeds the cap {cap}")]
    WidthBudgetExceeded { width: usize, cap: usize },
}

/// A partial local rule `f : Σ^{2r+1} ⇀ Σ`.
///
/// Missing entries are first-class: looking one up is a reported error,
/// not a silent quiescent default, since a missing entry means an
/// infeasible window was reached or the table is under-specified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleTable {
    alphabet: Arc<Alphabet>,
    radius: usize,
    entries: BTreeMap<Vec<Sym>, Sym>,
}

impl RuleTable {
    pub fn new(
        alphabet: Arc<Alphabet>,
        radius: usize,
        entries: impl IntoIterator<Item = (Vec<Sym>, Sym)>,
    ) -> Result<Self, RuleError> {
        let width = 2 * radius + 1;
        let mut map = BTreeMap::new();
        for (key, value) in entries {
            if key.len() != width {
                return Err(RuleError::BadWindowLength {
                    expected: width,
                    got: key.len(),
                });
            }
            if !alphabet.contains(value) || key.iter().any(|&s| !alphabet.contains(s)) {
                return Err(RuleError::UnknownSymbol);
            }
            if let Some(&prev) = map.get(&key) {
                if prev != value {
                    return Err(RuleError::ConflictingEntry {
                        window: Window(key).render(&alphabet),
                    });
                }
                continue;
            }
            map.insert(key, value);
        }
        let q = alphabet.quiescent();
        let all_q = vec![q; width];
        if let Some(&v) = map.get(&all_q) {
            if v != q {
                return Err(RuleError::QuiescenceViolation);
            }
        }
        Ok(RuleTable {
            alphabet,
            radius,
            entries: map,
        })
    }

    /// The total rule `f(w) = w[0]`: every configuration is a fixed
    /// point.
    pub fn identity(alphabet: Arc<Alphabet>, radius: usize) -> Self {
        RuleTable::total_from_fn(alphabet, radius, |w| w[radius])
    }

    /// Builds a total rule from a function on windows. The function is
    /// forced to quiescence on the all-quiescent window.
    pub fn total_from_fn(
        alphabet: Arc<Alphabet>,
        radius: usize,
        f: impl Fn(&[Sym]) -> Sym,
    ) -> Self {
        let width = 2 * radius + 1;
        let n = alphabet.len();
        let q = alphabet.quiescent();
        let mut entries = Vec::with_capacity(n.pow(width as u32));
        let mut window = vec![Sym(0); width];
        loop {
            let value = if window.iter().all(|&s| s == q) {
                q
            } else {
                f(&window)
            };
            entries.push((window.clone(), value));
            // odometer over Σ^{2r+1}
            let mut k = width;
            loop {
                if k == 0 {
                    return RuleTable::new(alphabet, radius, entries).expect("total rule is valid");
                }
                k -= 1;
                if window[k].index() + 1 < n {
                    window[k] = Sym(window[k].0 + 1);
                    for cell in window.iter_mut().skip(k + 1) {
                        *cell = Sym(0);
                    }
                    break;
                }
            }
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn window_len(&self) -> usize {
        2 * self.radius + 1
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.entries.len() == self.alphabet.len().pow(self.window_len() as u32)
    }

    pub fn get(&self, window: &[Sym]) -> Option<Sym> {
        self.entries.get(window).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<Sym>, Sym)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    /// Looks up `f(window)`, reporting an undefined or ill-formed
    /// window.
    pub fn apply_local(&self, window: &[Sym]) -> Result<Sym, RuleError> {
        if window.len() != self.window_len() {
            return Err(RuleError::BadWindowLength {
                expected: self.window_len(),
                got: window.len(),
            });
        }
        if window.iter().any(|&s| !self.alphabet.contains(s)) {
            return Err(RuleError::UnknownSymbol);
        }
        self.get(window)
            .ok_or_else(|| RuleError::UndefinedNeighborhood {
                window: Window(window.to_vec()).render(&self.alphabet),
                position: None,
            })
    }

    /// One synchronous application of the global map.
    ///
    /// Only cells within the active interval extended by `r` on each
    /// side are evaluated; everything further out stays quiescent.
    pub fn step(&self, c: &FiniteConfiguration) -> Result<FiniteConfiguration, RuleError> {
        if c.alphabet().as_ref() != self.alphabet.as_ref() {
            return Err(RuleError::AlphabetMismatch);
        }
        let Some((min, max)) = c.interval() else {
            return Ok(FiniteConfiguration::quiescent(self.alphabet.clone()));
        };
        let r = self.radius as i64;
        let lo = min - r;
        let hi = max + r;
        let mut cells = Vec::with_capacity((hi - lo + 1) as usize);
        let mut window: Vec<Sym> = (lo - r..=lo + r).map(|i| c.get(i)).collect();
        for z in lo..=hi {
            if z > lo {
                window.remove(0);
                window.push(c.get(z + r));
            }
            match self.get(&window) {
                Some(v) => cells.push(v),
                None => {
                    return Err(RuleError::UndefinedNeighborhood {
                        window: Window(window).render(&self.alphabet),
                        position: Some(z),
                    })
                }
            }
        }
        Ok(FiniteConfiguration::new(self.alphabet.clone(), lo, cells))
    }

    /// The orbit prefix `[c, G(c), …, G^n(c)]`.
    pub fn evolve(
        &self,
        c: &FiniteConfiguration,
        n: usize,
        width_cap: Option<usize>,
    ) -> Result<Vec<FiniteConfiguration>, RuleError> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(c.clone());
        for _ in 0..n {
            let next = self.step(out.last().unwrap())?;
            if let Some(cap) = width_cap {
                if next.width() > cap {
                    return Err(RuleError::WidthBudgetExceeded {
                        width: next.width(),
                        cap,
                    });
                }
            }
            out.push(next);
        }
        Ok(out)
    }

    /// Canonical text form: `alphabet:` line, `radius:` line, then one
    /// entry per line in window order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "alphabet: {}", self.alphabet).unwrap();
        writeln!(out, "radius: {}", self.radius).unwrap();
        for (key, value) in &self.entries {
            writeln!(
                out,
                "{} -> {}",
                Window(key.clone()).render(&self.alphabet),
                self.alphabet.token(*value)
            )
            .unwrap();
        }
        out
    }

    pub fn parse_str(text: &str) -> Result<Self, FormatError> {
        let mut alphabet: Option<Arc<Alphabet>> = None;
        let mut radius: Option<usize> = None;
        let mut entries: Vec<(Vec<Sym>, Sym)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix("alphabet:") {
                let tokens: Vec<&str> = rest.split_whitespace().collect();
                alphabet = Some(
                    Alphabet::new(tokens, 0)
                        .map_err(|e| FormatError::new(line, e.to_string()))?,
                );
                continue;
            }
            if let Some(rest) = content.strip_prefix("radius:") {
                radius = Some(
                    rest.trim()
                        .parse()
                        .map_err(|_| FormatError::new(line, "bad radius".into()))?,
                );
                continue;
            }
            let ab = alphabet
                .as_ref()
                .ok_or_else(|| FormatError::new(line, "entry before alphabet line".into()))?;
            let r = radius
                .ok_or_else(|| FormatError::new(line, "entry before radius line".into()))?;
            let (lhs, rhs) = content
                .split_once("->")
                .ok_or_else(|| FormatError::new(line, "expected `window -> symbol`".into()))?;
            let mut key = Vec::new();
            for tok in lhs.split_whitespace() {
                key.push(
                    ab.lookup(tok)
                        .ok_or_else(|| FormatError::new(line, format!("unknown token `{tok}`")))?,
                );
            }
            if key.len() != 2 * r + 1 {
                return Err(FormatError::new(
                    line,
                    format!("window has {} tokens, expected {}", key.len(), 2 * r + 1),
                ));
            }
            let rhs = rhs.trim();
            let value = ab
                .lookup(rhs)
                .ok_or_else(|| FormatError::new(line, format!("unknown token `{rhs}`")))?;
            entries.push((key, value));
        }
        let alphabet = alphabet.ok_or_else(|| FormatError::new(0, "missing alphabet line".into()))?;
        let radius = radius.ok_or_else(|| FormatError::new(0, "missing radius line".into()))?;
        RuleTable::new(alphabet, radius, entries).map_err(|e| FormatError::new(0, e.to_string()))
    }
}

/// A text-format error with the offending line number (0 when the
/// problem is not tied to a single line).
#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

impl FormatError {
    pub fn new(line: usize, msg: String) -> Self {
        FormatError { line, msg }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// The full (total) rule of a one-symbol drift automaton: the lone
    /// `a` moves one cell to the left each step.
    fn drift_rule() -> RuleTable {
        let text = "\
            alphabet: _ a\n\
            radius: 1\n\
            _ _ _ -> _\n\
            _ _ a -> a\n\
            _ a _ -> _\n\
            _ a a -> a\n\
            a _ _ -> _\n\
            a _ a -> a\n\
            a a _ -> a\n\
            a a a -> a\n";
        RuleTable::parse_str(text).unwrap()
    }

    fn feasible_drift_rule() -> RuleTable {
        RuleTable::parse_str(
            "alphabet: _ a\nradius: 1\n_ _ _ -> _\n_ _ a -> a\n_ a _ -> _\na _ _ -> _\n",
        )
        .unwrap()
    }

    #[test]
    fn apply_local_and_quiescence() {
        let rule = drift_rule();
        let ab = rule.alphabet().clone();
        let a = ab.lookup("a").unwrap();
        let q = ab.quiescent();
        assert_eq!(rule.apply_local(&[q, q, a]).unwrap(), a);
        assert_eq!(rule.apply_local(&[q, q, q]).unwrap(), q);
        assert_eq!(
            rule.apply_local(&[q, q]).unwrap_err(),
            RuleError::BadWindowLength {
                expected: 3,
                got: 2
            }
        );
    }

    #[test]
    fn step_shifts_the_drifting_symbol() {
        let rule = feasible_drift_rule();
        let ab = rule.alphabet().clone();
        let w = ab.parse_word("a").unwrap();
        let c = FiniteConfiguration::pad(ab, &w);
        let next = rule.step(&c).unwrap();
        assert_eq!(next.interval(), Some((-1, -1)));
        assert!(next.shift_equivalent(&c));
    }

    #[test]
    fn step_reports_the_missing_window_and_position() {
        let rule = feasible_drift_rule();
        let ab = rule.alphabet().clone();
        let w = ab.parse_word("aa").unwrap();
        let c = FiniteConfiguration::pad(ab, &w);
        let err = rule.step(&c).unwrap_err();
        assert_eq!(
            err,
            RuleError::UndefinedNeighborhood {
                window: "_ a a".into(),
                position: Some(0),
            }
        );
    }

    #[test]
    fn quiescent_configuration_is_a_fixed_point() {
        let rule = feasible_drift_rule();
        let c = FiniteConfiguration::quiescent(rule.alphabet().clone());
        assert_eq!(rule.step(&c).unwrap(), c);
    }

    #[test]
    fn evolve_zero_steps_returns_the_initial_configuration() {
        let rule = drift_rule();
        let ab = rule.alphabet().clone();
        let c = FiniteConfiguration::pad(ab.clone(), &ab.parse_word("a").unwrap());
        let orbit = rule.evolve(&c, 0, None).unwrap();
        assert_eq!(orbit, vec![c]);
    }

    #[test]
    fn evolve_honors_the_width_cap() {
        // right-spreading at speed 1: every step widens by one
        let ab = Alphabet::lowercase("a");
        let a = ab.lookup("a").unwrap();
        let q = ab.quiescent();
        let rule = RuleTable::total_from_fn(ab.clone(), 1, move |w| {
            if w[0] == a || w[1] == a {
                a
            } else {
                q
            }
        });
        let c = FiniteConfiguration::pad(ab.clone(), &ab.parse_word("a").unwrap());
        let err = rule.evolve(&c, 10, Some(4)).unwrap_err();
        assert_eq!(err, RuleError::WidthBudgetExceeded { width: 5, cap: 4 });
    }

    #[test]
    fn identity_rule_fixes_everything() {
        let ab = Alphabet::lowercase("ab");
        let rule = RuleTable::identity(ab.clone(), 1);
        let c = FiniteConfiguration::pad(ab.clone(), &ab.parse_word("abba").unwrap());
        assert_eq!(rule.step(&c).unwrap(), c);
    }

    #[test]
    fn text_round_trip_is_canonical() {
        let rule = drift_rule();
        let text = rule.to_text();
        let reparsed = RuleTable::parse_str(&text).unwrap();
        assert_eq!(reparsed, rule);
        assert_eq!(reparsed.to_text(), text);
    }

    #[test]
    fn parse_rejects_unknown_tokens_and_conflicts() {
        let err = RuleTable::parse_str("alphabet: _ a\nradius: 1\n_ _ x -> a\n").unwrap_err();
        assert!(err.msg.contains("unknown token"));
        let err =
            RuleTable::parse_str("alphabet: _ a\nradius: 1\n_ _ a -> a\n_ _ a -> _\n").unwrap_err();
        assert!(err.msg.contains("conflicting"));
        let err = RuleTable::parse_str("alphabet: _ a\nradius: 1\n_ _ _ -> a\n").unwrap_err();
        assert!(err.msg.contains("quiescent"));
    }

    proptest! {
        /// The local rule is translation-invariant, so the global map
        /// commutes with domain shifts.
        #[test]
        fn step_commutes_with_shift(raw in proptest::collection::vec(0u32..2, 1..10), s in -30i64..30) {
            let rule = drift_rule();
            let ab = rule.alphabet().clone();
            let cells: Vec<Sym> = raw.into_iter().map(Sym).collect();
            let c = FiniteConfiguration::new(ab, 0, cells);
            let a = rule.step(&c.shift(s)).unwrap();
            let b = rule.step(&c).unwrap().shift(s);
            prop_assert_eq!(a, b);
        }
    }
}
