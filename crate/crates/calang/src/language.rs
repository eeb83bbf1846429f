//! Padding, orbit enumeration, language extraction and bounded
//! feasible-neighborhood computation.
//!
//! The exact generated language and the exact feasible-neighborhood set
//! are uncomputable in general, so both are budget-bounded
//! under-approximations carrying explicit truncation flags.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::alphabet::{Alphabet, CanonWord, Sym, Word};
use crate::config::FiniteConfiguration;
use crate::regset::{PatternError, RegularSet};
use crate::rule::{RuleError, RuleTable, Window};

/// Exploration budgets: steps per orbit, length cap on enumerated
/// initial words, and a width cap on configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub max_steps: usize,
    pub max_word_len: usize,
    pub max_width: usize,
}

impl Budgets {
    pub fn new(max_steps: usize, max_word_len: usize, max_width: usize) -> Self {
        Budgets {
            max_steps,
            max_word_len,
            max_width,
        }
    }

    /// Steps only; initial words up to the step horizon, effectively
    /// unbounded width.
    pub fn steps(max_steps: usize) -> Self {
        Budgets::new(max_steps, max_steps.max(8), usize::MAX)
    }

    pub fn with_word_len(mut self, max_word_len: usize) -> Self {
        self.max_word_len = max_word_len;
        self
    }

    pub fn with_width(mut self, max_width: usize) -> Self {
        self.max_width = max_width;
        self
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LanguageError {
    #[error("rule undefined on `{window}` at cell {position} (initial word `{source_word}`, step {step})")]
    UndefinedNeighborhood {
        source_word: String,
        step: usize,
        position: i64,
        window: String,
    },
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// Where and when a sampled word was first generated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub source: Word,
    pub step: usize,
    pub interior_quiescent: bool,
}

/// A deterministic, budget-bounded enumeration of the generated
/// language.
#[derive(Debug, Clone)]
pub struct LanguageSample {
    alphabet: Arc<Alphabet>,
    words: BTreeMap<CanonWord, Provenance>,
    budgets: Budgets,
    truncated_by_steps: bool,
    truncated_by_word_len: bool,
    truncated_by_width: bool,
}

impl LanguageSample {
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Words in length-then-lexicographic order.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.words.keys().map(|k| &k.0)
    }

    pub fn contains_word(&self, word: &[Sym]) -> bool {
        self.words.contains_key(&CanonWord(word.to_vec()))
    }

    pub fn provenance(&self, word: &[Sym]) -> Option<&Provenance> {
        self.words.get(&CanonWord(word.to_vec()))
    }

    pub fn budgets(&self) -> Budgets {
        self.budgets
    }

    pub fn truncated(&self) -> bool {
        self.truncated_by_steps || self.truncated_by_word_len || self.truncated_by_width
    }

    pub fn truncated_by_steps(&self) -> bool {
        self.truncated_by_steps
    }

    pub fn truncated_by_word_len(&self) -> bool {
        self.truncated_by_word_len
    }

    pub fn truncated_by_width(&self) -> bool {
        self.truncated_by_width
    }

    /// True when some sampled word kept a quiescent cell strictly
    /// inside its active interval.
    pub fn any_interior_quiescent(&self) -> bool {
        self.words.values().any(|p| p.interior_quiescent)
    }

    /// Word lengths in enumeration order (duplicates kept).
    pub fn lengths(&self) -> Vec<usize> {
        self.words.keys().map(|k| k.0.len()).collect()
    }

    /// One JSON record per word, sorted, plus a trailing metadata
    /// record.
    pub fn to_jsonl(&self) -> String {
        #[derive(Serialize)]
        struct Record<'a> {
            word: String,
            source: String,
            step: usize,
            #[serde(skip_serializing_if = "std::ops::Not::not")]
            interior_quiescent: bool,
            #[serde(skip_serializing_if = "Option::is_none")]
            meta: Option<&'a ()>,
        }
        #[derive(Serialize)]
        struct Meta<'a> {
            meta: MetaBody<'a>,
        }
        #[derive(Serialize)]
        struct MetaBody<'a> {
            budgets: &'a Budgets,
            truncated: bool,
            truncated_by_steps: bool,
            truncated_by_word_len: bool,
            truncated_by_width: bool,
            word_count: usize,
        }
        let mut out = String::new();
        for (word, prov) in &self.words {
            let record = Record {
                word: self.alphabet.render_word(&word.0),
                source: self.alphabet.render_word(&prov.source),
                step: prov.step,
                interior_quiescent: prov.interior_quiescent,
                meta: None,
            };
            writeln!(out, "{}", serde_json::to_string(&record).unwrap()).unwrap();
        }
        let meta = Meta {
            meta: MetaBody {
                budgets: &self.budgets,
                truncated: self.truncated(),
                truncated_by_steps: self.truncated_by_steps,
                truncated_by_word_len: self.truncated_by_word_len,
                truncated_by_width: self.truncated_by_width,
                word_count: self.words.len(),
            },
        };
        writeln!(out, "{}", serde_json::to_string(&meta).unwrap()).unwrap();
        out
    }
}

/// The windows observed across all explored configurations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleWindowSet {
    radius: usize,
    windows: BTreeSet<Vec<Sym>>,
    stabilized: bool,
}

impl FeasibleWindowSet {
    pub fn from_windows(
        radius: usize,
        windows: impl IntoIterator<Item = Vec<Sym>>,
        stabilized: bool,
    ) -> Self {
        let windows: BTreeSet<Vec<Sym>> = windows.into_iter().collect();
        debug_assert!(windows.iter().all(|w| w.len() == 2 * radius + 1));
        FeasibleWindowSet {
            radius,
            windows,
            stabilized,
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }

    pub fn stabilized(&self) -> bool {
        self.stabilized
    }

    pub fn contains(&self, window: &[Sym]) -> bool {
        self.windows.contains(window)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<Sym>> {
        self.windows.iter()
    }

    pub fn is_subset(&self, other: &FeasibleWindowSet) -> bool {
        self.windows.is_subset(&other.windows)
    }

    /// The rule-table key format: one window per line, for diffing
    /// against `.rules` files.
    pub fn to_key_text(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for w in &self.windows {
            writeln!(out, "{}", Window(w.clone()).render(alphabet)).unwrap();
        }
        out
    }
}

/// `pad`: surrounds a word with quiescent padding, anchored at cell 0.
pub fn pad(alphabet: &Arc<Alphabet>, word: &[Sym]) -> FiniteConfiguration {
    FiniteConfiguration::pad(alphabet.clone(), word)
}

/// The non-quiescent segment of a configuration, inverse to [`pad`] up
/// to a domain shift.
pub fn extract_word(c: &FiniteConfiguration) -> Word {
    c.extract_word()
}

#[derive(Debug)]
pub(crate) struct OrbitTrace {
    pub(crate) configs: Vec<FiniteConfiguration>,
    cycled: bool,
    width_capped: bool,
}

impl OrbitTrace {
    fn steps_exhausted(&self) -> bool {
        !self.cycled && !self.width_capped
    }
}

/// Explores one orbit prefix with cycle detection up to domain shift.
fn trace_orbit(
    rule: &RuleTable,
    source: &Word,
    budgets: Budgets,
) -> Result<OrbitTrace, LanguageError> {
    let c0 = pad(rule.alphabet(), source);
    let mut seen: HashSet<Vec<Sym>> = HashSet::new();
    seen.insert(c0.cells().to_vec());
    let mut configs = vec![c0];
    let mut cycled = false;
    let mut width_capped = false;
    while configs.len() <= budgets.max_steps {
        let step = configs.len();
        let next = rule.step(configs.last().unwrap()).map_err(|e| match e {
            RuleError::UndefinedNeighborhood { window, position } => {
                LanguageError::UndefinedNeighborhood {
                    source_word: rule.alphabet().render_word(source),
                    step,
                    position: position.unwrap_or_default(),
                    window,
                }
            }
            other => LanguageError::Rule(other),
        })?;
        if next.width() > budgets.max_width {
            width_capped = true;
            break;
        }
        if !seen.insert(next.cells().to_vec()) {
            cycled = true;
            break;
        }
        configs.push(next);
    }
    Ok(OrbitTrace {
        configs,
        cycled,
        width_capped,
    })
}

/// Enumerates initial words within the length budget and reports
/// whether the pattern accepts longer words too.
fn initial_words(f_set: &RegularSet, budgets: Budgets) -> (Vec<Word>, bool) {
    let words = f_set.enumerate_words(budgets.max_word_len);
    let overflow = f_set
        .enumerate_words(budgets.max_word_len + 1)
        .last()
        .map(|w| w.len() > budgets.max_word_len)
        .unwrap_or(false);
    (words, overflow)
}

fn traced_orbits(
    rule: &RuleTable,
    sources: &[Word],
    budgets: Budgets,
) -> Result<Vec<OrbitTrace>, LanguageError> {
    let mut indexed: Vec<(usize, Result<OrbitTrace, LanguageError>)> = sources
        .par_iter()
        .enumerate()
        .map(|(i, u)| (i, trace_orbit(rule, u, budgets)))
        .collect();
    indexed.sort_by_key(|(i, _)| *i);
    indexed.into_iter().map(|(_, r)| r).collect()
}

/// Orbit traces for every initial word within the budgets, in initial
/// word order. Shared by sampling, neighborhood harvesting and the
/// safety search.
pub(crate) fn explore_orbits(
    rule: &RuleTable,
    f_set: &RegularSet,
    budgets: Budgets,
) -> Result<(Vec<Word>, Vec<OrbitTrace>), LanguageError> {
    if f_set.alphabet().as_ref() != rule.alphabet().as_ref() {
        return Err(LanguageError::Rule(RuleError::AlphabetMismatch));
    }
    let (sources, _) = initial_words(f_set, budgets);
    let traces = traced_orbits(rule, &sources, budgets)?;
    Ok((sources, traces))
}

/// The sampled language of `rule` from the padded initial set `F`.
pub fn generate_language(
    rule: &RuleTable,
    f_set: &RegularSet,
    budgets: Budgets,
) -> Result<LanguageSample, LanguageError> {
    if f_set.alphabet().as_ref() != rule.alphabet().as_ref() {
        return Err(LanguageError::Rule(RuleError::AlphabetMismatch));
    }
    let (sources, overflow) = initial_words(f_set, budgets);
    let traces = traced_orbits(rule, &sources, budgets)?;
    let q = rule.alphabet().quiescent();
    let mut words: BTreeMap<CanonWord, Provenance> = BTreeMap::new();
    let mut truncated_by_steps = false;
    let mut truncated_by_width = false;
    for (source, trace) in sources.iter().zip(&traces) {
        truncated_by_steps |= trace.steps_exhausted();
        truncated_by_width |= trace.width_capped;
        for (step, config) in trace.configs.iter().enumerate() {
            let word = config.extract_word();
            let interior_quiescent = word.iter().any(|&s| s == q);
            let key = CanonWord(word);
            let better = match words.get(&key) {
                None => true,
                Some(prev) => step < prev.step,
            };
            if better {
                words.insert(
                    key,
                    Provenance {
                        source: source.clone(),
                        step,
                        interior_quiescent,
                    },
                );
            }
        }
    }
    Ok(LanguageSample {
        alphabet: rule.alphabet().clone(),
        words,
        budgets,
        truncated_by_steps,
        truncated_by_word_len: overflow,
        truncated_by_width,
    })
}

fn harvest_windows(config: &FiniteConfiguration, radius: usize, into: &mut BTreeSet<Vec<Sym>>) {
    let Some((min, max)) = config.interval() else {
        return;
    };
    let r = radius as i64;
    for z in (min - r)..=(max + r) {
        let window: Vec<Sym> = (z - r..=z + r).map(|i| config.get(i)).collect();
        into.insert(window);
    }
}

/// The windows occurring in any explored configuration, harvested over
/// the active interval widened by `r` per side; all windows further out
/// are all-quiescent and represented once.
pub fn feasible_neighborhoods(
    rule: &RuleTable,
    f_set: &RegularSet,
    budgets: Budgets,
) -> Result<FeasibleWindowSet, LanguageError> {
    if f_set.alphabet().as_ref() != rule.alphabet().as_ref() {
        return Err(LanguageError::Rule(RuleError::AlphabetMismatch));
    }
    let (sources, _) = initial_words(f_set, budgets);
    let traces = traced_orbits(rule, &sources, budgets)?;
    let radius = rule.radius();
    let mut windows = BTreeSet::new();
    windows.insert(vec![rule.alphabet().quiescent(); rule.window_len()]);
    for trace in &traces {
        for config in &trace.configs {
            harvest_windows(config, radius, &mut windows);
        }
    }
    // One further step over every frontier that is still growing: if it
    // adds no window, the set is declared stabilized.
    let mut stabilized = true;
    for trace in &traces {
        if trace.width_capped {
            stabilized = false;
            break;
        }
        if trace.cycled {
            continue;
        }
        match rule.step(trace.configs.last().unwrap()) {
            Ok(next) => {
                let mut extra = BTreeSet::new();
                harvest_windows(&next, radius, &mut extra);
                if !extra.is_subset(&windows) {
                    stabilized = false;
                    break;
                }
            }
            Err(_) => {
                stabilized = false;
                break;
            }
        }
    }
    Ok(FeasibleWindowSet {
        radius,
        windows,
        stabilized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regset::parse_pattern;

    /// Example rule over {_, a}: the lone `a` drifts left forever.
    fn drift_rule() -> RuleTable {
        RuleTable::parse_str(
            "alphabet: _ a\nradius: 1\n_ _ _ -> _\n_ _ a -> a\n_ a _ -> _\na _ _ -> _\n",
        )
        .unwrap()
    }

    #[test]
    fn drift_orbit_cycles_and_samples_one_word() {
        let rule = drift_rule();
        let f = parse_pattern("a", rule.alphabet().clone()).unwrap();
        let sample = generate_language(&rule, &f, Budgets::steps(5)).unwrap();
        let words: Vec<String> = sample
            .words()
            .map(|w| rule.alphabet().render_word(w))
            .collect();
        assert_eq!(words, vec!["a"]);
        assert!(!sample.truncated(), "cycle detection should cut the orbit");
    }

    #[test]
    fn feasible_neighborhoods_of_the_drift_rule() {
        let rule = drift_rule();
        let f = parse_pattern("a", rule.alphabet().clone()).unwrap();
        let fns = feasible_neighborhoods(&rule, &f, Budgets::steps(3)).unwrap();
        let listing = fns.to_key_text(rule.alphabet());
        assert_eq!(listing, "_ _ _\n_ _ a\n_ a _\na _ _\n");
        assert!(fns.stabilized());
    }

    #[test]
    fn identity_rule_reproduces_the_initial_set() {
        let ab = crate::alphabet::Alphabet::lowercase("ab");
        let rule = RuleTable::identity(ab.clone(), 1);
        let f = parse_pattern("a|b|ab", ab.clone()).unwrap();
        let sample = generate_language(&rule, &f, Budgets::steps(9)).unwrap();
        let words: Vec<String> = sample.words().map(|w| ab.render_word(w)).collect();
        assert_eq!(words, vec!["a", "b", "ab"]);
        assert!(!sample.truncated());
        let fns = feasible_neighborhoods(&rule, &f, Budgets::steps(2)).unwrap();
        assert!(fns.stabilized());
    }

    #[test]
    fn undefined_window_reports_source_step_position() {
        let rule = drift_rule();
        let f = parse_pattern("aa", rule.alphabet().clone()).unwrap();
        let err = generate_language(&rule, &f, Budgets::steps(2)).unwrap_err();
        assert_eq!(
            err,
            LanguageError::UndefinedNeighborhood {
                source_word: "aa".into(),
                step: 1,
                position: 0,
                window: "_ a a".into(),
            }
        );
    }

    #[test]
    fn word_len_budget_sets_the_truncation_flag() {
        let rule = drift_rule();
        let f = parse_pattern("a", rule.alphabet().clone()).unwrap();
        let sample = generate_language(&rule, &f, Budgets::steps(3)).unwrap();
        assert!(!sample.truncated_by_word_len());
        // `a+` keeps accepting beyond any finite bound
        let f = parse_pattern("a+", rule.alphabet().clone()).unwrap();
        let budgets = Budgets::new(0, 2, usize::MAX);
        let sample = generate_language(&rule, &f, budgets).unwrap();
        assert!(sample.truncated_by_word_len());
        assert_eq!(sample.len(), 2);
    }

    #[test]
    fn fn_monotone_in_steps() {
        // a right-spreading rule so the window set keeps growing for a while
        let ab = crate::alphabet::Alphabet::lowercase("a");
        let a = ab.lookup("a").unwrap();
        let q = ab.quiescent();
        let rule = RuleTable::total_from_fn(ab.clone(), 1, move |w| {
            if w[0] == a || w[1] == a {
                a
            } else {
                q
            }
        });
        let f = parse_pattern("a", ab).unwrap();
        let small = feasible_neighborhoods(&rule, &f, Budgets::steps(1)).unwrap();
        let large = feasible_neighborhoods(&rule, &f, Budgets::steps(4)).unwrap();
        assert!(small.is_subset(&large));
    }

    #[test]
    fn jsonl_has_one_record_per_word_plus_meta() {
        let rule = drift_rule();
        let f = parse_pattern("a", rule.alphabet().clone()).unwrap();
        let sample = generate_language(&rule, &f, Budgets::steps(4)).unwrap();
        let text = sample.to_jsonl();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].contains("\"word\":\"a\""));
        assert!(lines[1].contains("\"meta\""));
    }
}
