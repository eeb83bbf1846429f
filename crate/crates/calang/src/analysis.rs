//! Structural analyses: difference sequences and the radius lower
//! bound, width-growth checking, language-oracle verification, and
//! bounded safety queries.

use crate::alphabet::{word_cmp, Sym, Word};
use crate::config::FiniteConfiguration;
use crate::constructions::Oracle;
use crate::language::{explore_orbits, Budgets, LanguageError, LanguageSample};
use crate::regset::RegularSet;
use crate::rule::{RuleError, RuleTable};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("cannot profile an empty sample")]
    EmptySample,
    #[error("sample was truncated by the width budget; words below the bound may be missing")]
    TruncatedSample,
    #[error(transparent)]
    Language(#[from] LanguageError),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

/// Consecutive length differences over a sample's length-sorted
/// enumeration. The bound under-approximates the true difference bound
/// of the language, which is the safe direction for the radius check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceProfile {
    pub lengths: Vec<usize>,
    pub deltas: Vec<usize>,
    pub bound: usize,
}

pub fn difference_profile(sample: &LanguageSample) -> Result<DifferenceProfile, AnalysisError> {
    let lengths = sample.lengths();
    if lengths.is_empty() {
        return Err(AnalysisError::EmptySample);
    }
    let deltas: Vec<usize> = lengths.windows(2).map(|p| p[1] - p[0]).collect();
    let bound = deltas.iter().copied().max().unwrap_or(0);
    Ok(DifferenceProfile {
        lengths,
        deltas,
        bound,
    })
}

/// The smallest radius a CA can have if it generates a language with
/// difference bound `k`: anything with `r ≤ ⌊(k-1)/2⌋` is excluded.
pub fn radius_lower_bound(k: usize) -> usize {
    if k == 0 {
        0
    } else {
        (k - 1) / 2 + 1
    }
}

/// Per-step width growth over a set of configurations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthGrowthReport {
    /// Largest `width(G(c)) - width(c)` observed (0 for an empty input).
    pub max_delta: i64,
    /// The guaranteed bound `2r`.
    pub bound: usize,
    pub within_bound: bool,
    /// Whether every stepped interval stayed inside the input interval
    /// widened by `r` per side.
    pub interval_contained: bool,
}

pub fn check_width_growth(
    rule: &RuleTable,
    configs: &[FiniteConfiguration],
) -> Result<WidthGrowthReport, RuleError> {
    let r = rule.radius() as i64;
    let mut max_delta = 0i64;
    let mut interval_contained = true;
    for c in configs {
        let next = rule.step(c)?;
        let delta = next.width() as i64 - c.width() as i64;
        max_delta = max_delta.max(delta);
        if let Some((lo, hi)) = next.interval() {
            match c.interval() {
                Some((m, n)) => {
                    if lo < m - r || hi > n + r {
                        interval_contained = false;
                    }
                }
                None => interval_contained = false,
            }
        }
    }
    let bound = 2 * rule.radius();
    Ok(WidthGrowthReport {
        max_delta,
        bound,
        within_bound: max_delta <= bound as i64,
        interval_contained,
    })
}

/// Two-sided comparison of a sample against a reference oracle up to a
/// length bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub len_bound: usize,
    /// Oracle words within the bound that the sample misses.
    pub missing_from_sample: Vec<Word>,
    /// Sampled words within the bound that the oracle rejects.
    pub not_in_oracle: Vec<Word>,
    /// Whether the oracle side was enumerated by exhaustive scan
    /// (small alphabets) or by the oracle's structured generator.
    pub checked_by_scan: bool,
}

impl EquivalenceReport {
    pub fn equivalent(&self) -> bool {
        self.missing_from_sample.is_empty() && self.not_in_oracle.is_empty()
    }
}

const SCAN_LIMIT: u128 = 10_000_000;

fn scan_is_cheap(active_symbols: usize, len_bound: usize) -> bool {
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..=len_bound {
        total += level;
        if total > SCAN_LIMIT {
            return false;
        }
        level = match level.checked_mul(active_symbols as u128) {
            Some(v) => v,
            None => return false,
        };
    }
    true
}

/// Checks that the sample and the oracle agree on every word up to
/// `len_bound`. Errors when the width budget may have silently dropped
/// words below the bound.
pub fn verify_language(
    sample: &LanguageSample,
    oracle: &Oracle,
    len_bound: usize,
) -> Result<EquivalenceReport, AnalysisError> {
    if sample.truncated_by_width() {
        return Err(AnalysisError::TruncatedSample);
    }
    let mut not_in_oracle: Vec<Word> = sample
        .words()
        .filter(|w| w.len() <= len_bound && !oracle.contains(w))
        .cloned()
        .collect();
    not_in_oracle.sort_by(|x, y| word_cmp(x, y));

    let alphabet = sample.alphabet();
    let active: Vec<Sym> = alphabet.active_symbols().collect();
    let checked_by_scan = scan_is_cheap(active.len(), len_bound);
    let mut missing_from_sample = Vec::new();
    if checked_by_scan {
        // exhaustive sweep of Σ^{≤len_bound} without the quiescent symbol
        let mut word: Word = Vec::new();
        loop {
            if oracle.contains(&word) && !sample.contains_word(&word) {
                missing_from_sample.push(word.clone());
            }
            if word.len() < len_bound {
                word.push(active[0]);
                continue;
            }
            loop {
                match word.pop() {
                    None => {
                        missing_from_sample.sort_by(|x, y| word_cmp(x, y));
                        return Ok(EquivalenceReport {
                            len_bound,
                            missing_from_sample,
                            not_in_oracle,
                            checked_by_scan,
                        });
                    }
                    Some(last) => {
                        let next = active.iter().position(|&s| s == last).unwrap() + 1;
                        if next < active.len() {
                            word.push(active[next]);
                            break;
                        }
                    }
                }
            }
        }
    }
    for w in oracle.enumerate_upto(len_bound) {
        if !sample.contains_word(&w) {
            missing_from_sample.push(w);
        }
    }
    missing_from_sample.sort_by(|x, y| word_cmp(x, y));
    Ok(EquivalenceReport {
        len_bound,
        missing_from_sample,
        not_in_oracle,
        checked_by_scan,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SafetyStatus {
    /// A reachable word in the bad set; minimal under (step, initial
    /// word order).
    Witness {
        source: Word,
        step: usize,
        word: Word,
    },
    BoundedSafe,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafetyResult {
    pub status: SafetyStatus,
    pub budgets: Budgets,
}

impl SafetyResult {
    pub fn is_safe(&self) -> bool {
        matches!(self.status, SafetyStatus::BoundedSafe)
    }
}

/// Bounded search for a reachable word accepted by the bad set:
/// the safety question reduces to intersecting the generated language
/// with the bad set.
pub fn safety_check(
    rule: &RuleTable,
    initial: &RegularSet,
    bad: &RegularSet,
    budgets: Budgets,
) -> Result<SafetyResult, AnalysisError> {
    let (sources, traces) = explore_orbits(rule, initial, budgets)?;
    let mut best: Option<(usize, usize)> = None;
    for (idx, trace) in traces.iter().enumerate() {
        for (step, config) in trace.configs.iter().enumerate() {
            if let Some((t, i)) = best {
                if (step, idx) >= (t, i) {
                    break;
                }
            }
            let word = config.extract_word();
            if bad.contains(&word).map_err(LanguageError::from)? {
                best = Some((step, idx));
                break;
            }
        }
    }
    let status = match best {
        Some((step, idx)) => SafetyStatus::Witness {
            source: sources[idx].clone(),
            step,
            word: traces[idx].configs[step].extract_word(),
        },
        None => SafetyStatus::BoundedSafe,
    };
    Ok(SafetyResult { status, budgets })
}
