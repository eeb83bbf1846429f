//! Finite configurations over the bi-infinite grid.
//!
//! A configuration assigns a symbol to every integer cell, with all but
//! finitely many cells quiescent. It is stored as the grid index of the
//! first retained cell plus the finite cell run; everything outside is
//! implicitly quiescent. The representation is kept normalized: the run
//! is empty, or starts and ends with a non-quiescent symbol.

use std::fmt;
use std::sync::Arc;

use crate::alphabet::{Alphabet, Sym, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteConfiguration {
    alphabet: Arc<Alphabet>,
    offset: i64,
    cells: Vec<Sym>,
}

impl FiniteConfiguration {
    /// Builds a configuration from a raw cell run anchored at `offset`,
    /// trimming quiescent cells at both ends.
    pub fn new(alphabet: Arc<Alphabet>, offset: i64, cells: Vec<Sym>) -> Self {
        let q = alphabet.quiescent();
        debug_assert!(cells.iter().all(|&s| alphabet.contains(s)));
        let start = cells.iter().position(|&s| s != q);
        match start {
            None => FiniteConfiguration {
                alphabet,
                offset: 0,
                cells: Vec::new(),
            },
            Some(i) => {
                let j = cells.iter().rposition(|&s| s != q).unwrap();
                FiniteConfiguration {
                    alphabet,
                    offset: offset + i as i64,
                    cells: cells[i..=j].to_vec(),
                }
            }
        }
    }

    /// The all-quiescent configuration.
    pub fn quiescent(alphabet: Arc<Alphabet>) -> Self {
        FiniteConfiguration {
            alphabet,
            offset: 0,
            cells: Vec::new(),
        }
    }

    /// Surrounds a finite word with quiescent padding, anchored at
    /// `offset`. The word itself is stored verbatim, so a word with
    /// quiescent ends is trimmed by normalization.
    pub fn pad_at(alphabet: Arc<Alphabet>, word: &[Sym], offset: i64) -> Self {
        FiniteConfiguration::new(alphabet, offset, word.to_vec())
    }

    /// `pad` anchored at cell 0.
    pub fn pad(alphabet: Arc<Alphabet>, word: &[Sym]) -> Self {
        FiniteConfiguration::pad_at(alphabet, word, 0)
    }

    /// The non-quiescent segment between the paddings, verbatim
    /// (interior quiescent cells, if any, are kept). The all-quiescent
    /// configuration yields the empty word.
    pub fn extract_word(&self) -> Word {
        self.cells.clone()
    }

    /// True when the extracted word contains a quiescent cell strictly
    /// inside the active interval.
    pub fn has_interior_quiescent(&self) -> bool {
        let q = self.alphabet.quiescent();
        self.cells.iter().any(|&s| s == q)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn is_quiescent(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cell state at grid index `i`.
    pub fn get(&self, i: i64) -> Sym {
        if i < self.offset || i >= self.offset + self.cells.len() as i64 {
            self.alphabet.quiescent()
        } else {
            self.cells[(i - self.offset) as usize]
        }
    }

    /// Support: the set of non-quiescent cell indices.
    pub fn support(&self) -> Vec<i64> {
        let q = self.alphabet.quiescent();
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != q)
            .map(|(k, _)| self.offset + k as i64)
            .collect()
    }

    /// The smallest interval containing the support, or `None` for the
    /// all-quiescent configuration.
    pub fn interval(&self) -> Option<(i64, i64)> {
        if self.cells.is_empty() {
            None
        } else {
            Some((self.offset, self.offset + self.cells.len() as i64 - 1))
        }
    }

    pub fn width(&self) -> usize {
        self.cells.len()
    }

    /// The same configuration with every cell moved right by `s`. The
    /// all-quiescent configuration is its own shift, keeping offset 0
    /// canonical.
    pub fn shift(&self, s: i64) -> Self {
        if self.cells.is_empty() {
            return self.clone();
        }
        FiniteConfiguration {
            alphabet: self.alphabet.clone(),
            offset: self.offset + s,
            cells: self.cells.clone(),
        }
    }

    /// Equivalence under a domain shift: the intervals coincide after
    /// shifting and the contents agree cell-wise.
    pub fn shift_equivalent(&self, other: &FiniteConfiguration) -> bool {
        self.alphabet.as_ref() == other.alphabet.as_ref() && self.cells == other.cells
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn cells(&self) -> &[Sym] {
        &self.cells
    }
}

impl fmt::Display for FiniteConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}@{}",
            self.alphabet.render_word(&self.cells),
            self.offset
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg(word: &str, offset: i64) -> FiniteConfiguration {
        let ab = Alphabet::lowercase("ab");
        let w = ab.parse_word(word).unwrap();
        FiniteConfiguration::pad_at(ab, &w, offset)
    }

    #[test]
    fn metrics_of_padded_word() {
        let c = cfg("ab", 0);
        assert_eq!(c.support(), vec![0, 1]);
        assert_eq!(c.interval(), Some((0, 1)));
        assert_eq!(c.width(), 2);
    }

    #[test]
    fn quiescent_configuration_has_empty_metrics() {
        let ab = Alphabet::lowercase("ab");
        let c = FiniteConfiguration::quiescent(ab);
        assert!(c.support().is_empty());
        assert_eq!(c.interval(), None);
        assert_eq!(c.width(), 0);
        assert_eq!(c.extract_word(), Vec::<Sym>::new());
    }

    #[test]
    fn shift_equivalence_ignores_offset_only() {
        assert!(cfg("ab", 0).shift_equivalent(&cfg("ab", 17)));
        assert!(!cfg("ab", 0).shift_equivalent(&cfg("ba", 0)));
        assert!(!cfg("ab", 0).shift_equivalent(&cfg("aab", 0)));
    }

    #[test]
    fn pad_and_extract_are_inverse() {
        let ab = Alphabet::lowercase("abc");
        let w = ab.parse_word("abc").unwrap();
        let c = FiniteConfiguration::pad(ab, &w);
        assert_eq!(c.extract_word(), w);
    }

    #[test]
    fn interior_quiescent_is_kept_and_tagged() {
        let ab = Alphabet::lowercase("ab");
        let mut w = ab.parse_word("ab").unwrap();
        w.insert(1, ab.quiescent());
        let c = FiniteConfiguration::pad(ab.clone(), &w);
        assert_eq!(c.width(), 3);
        assert!(c.has_interior_quiescent());
        assert_eq!(ab.render_word(&c.extract_word()), "a_b");
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent(raw in proptest::collection::vec(0u32..3, 0..12), offset in -20i64..20) {
            let ab = Alphabet::lowercase("ab");
            let cells: Vec<Sym> = raw.into_iter().map(Sym).collect();
            let once = FiniteConfiguration::new(ab.clone(), offset, cells);
            let twice = FiniteConfiguration::new(ab, once.offset(), once.cells().to_vec());
            prop_assert_eq!(once, twice);
        }
    }
}
