//! One-dimensional cellular automata over bi-infinite grids, viewed as
//! language generators, together with a glider calculus.
//!
//! A cellular automaton here is an alphabet with a distinguished
//! quiescent symbol plus a (possibly partial) local rule on
//! `2r+1`-cell windows. Starting from a regular set of finite
//! configurations, the orbit of the global map sweeps out a language:
//! the non-quiescent segments of the reachable configurations. Despite
//! the regular initialization and the local rules, these languages can
//! be non-regular and even non-context-free.
//!
//! The crate provides:
//!
//! - [`rule`]: partial rule tables, single- and multi-step evolution,
//!   and the `.rules` text format;
//! - [`regset`]: a small regex dialect compiled to NFAs, used for
//!   initial sets and bad sets;
//! - [`language`]: budget-bounded language sampling and
//!   feasible-neighborhood computation;
//! - [`gliders`]: gliders (one-cell carriers with a value and a
//!   velocity), persistence classification, derivation of an ordered
//!   glider system from a rule, soundness checking, and the
//!   glider-to-rule reconstruction compiler;
//! - [`constructions`]: built-in rule tables and parametric builders
//!   for counting languages, each paired with an independent oracle;
//! - [`analysis`]: difference profiles, radius lower bounds,
//!   width-growth checks, oracle verification, and bounded safety
//!   queries;
//! - [`render`]: ASCII and PGM space-time diagrams;
//! - [`cli`]: the functions behind the `calang` binary.
//!
//! Most capabilities have a runnable example under `examples/`.
//!
//! ```
//! use calang::constructions::builtin;
//! use calang::language::Budgets;
//!
//! let c = builtin("anbn").unwrap();
//! let sample = c.sample(Budgets::steps(3)).unwrap();
//! let words: Vec<String> = sample
//!     .words()
//!     .map(|w| c.alphabet().render_word(w))
//!     .collect();
//! assert_eq!(words, ["ab", "aabb", "aaabbb", "aaaabbbb"]);
//! ```

pub mod alphabet;
pub mod analysis;
pub mod cli;
pub mod config;
pub mod constructions;
pub mod gliders;
pub mod language;
pub mod regset;
pub mod render;
pub mod rule;
pub mod runtime;

pub use alphabet::{Alphabet, Sym, Word};
pub use config::FiniteConfiguration;
pub use language::{Budgets, FeasibleWindowSet, LanguageSample};
pub use regset::RegularSet;
pub use rule::{RuleTable, Window};
