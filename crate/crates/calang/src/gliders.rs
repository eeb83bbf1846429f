//! The glider calculus: loci, persistence classification, derivation of
//! an ordered glider system from a rule under an initial set, soundness
//! checking, and the glider-to-rule reconstruction compiler.
//!
//! A glider is a one-cell carrier of a value moving at a fixed
//! velocity. A cell holding `σ` feeds the window at relative index `-i`
//! of the cell it reaches after one step, so the locus of `(σ, i)` is
//! the set of windows with `σ` at index `-i`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::alphabet::{Alphabet, Sym};
use crate::language::FeasibleWindowSet;
use crate::rule::{FormatError, RuleTable, Window};

/// A value–velocity pair. The derive order (value index, then
/// velocity) is also the tie-break used by the reconstruction
/// compiler's linearization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Glider {
    pub value: Sym,
    pub velocity: i64,
}

impl Glider {
    pub fn new(value: Sym, velocity: i64) -> Self {
        Glider { value, velocity }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        format!("({}, {:+})", alphabet.token(self.value), self.velocity)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GliderError {
    #[error("velocity {velocity} outside [-{radius}, {radius}]")]
    VelocityOutOfRange { velocity: i64, radius: usize },
    #[error("dominance relates a glider not in the system: {0}")]
    UnknownGlider(String),
    #[error("dominance pair must differ in both value and velocity: {0}")]
    BadDominancePair(String),
    #[error("dominance digraph has a cycle: {0}")]
    CyclicDominance(String),
    #[error("a total rule is required when quantifying over all windows")]
    PartialRuleWithAll,
    #[error("rule undefined on feasible window `{0}`")]
    UndefinedNeighborhood(String),
    #[error("the given order is not a linearization of the dominance order")]
    BadLinearization,
    #[error("alphabets differ")]
    AlphabetMismatch,
}

/// Quantification domain for glider analyses: the full window space or
/// a feasible-neighborhood under-approximation.
#[derive(Debug, Clone, Copy)]
pub enum FnScope<'a> {
    All,
    Feasible(&'a FeasibleWindowSet),
}

/// All windows of length `2r+1` over the alphabet, in canonical order.
pub fn all_windows(alphabet: &Alphabet, radius: usize) -> Vec<Vec<Sym>> {
    let width = 2 * radius + 1;
    let n = alphabet.len();
    let mut out = Vec::with_capacity(n.pow(width as u32));
    let mut window = vec![Sym(0); width];
    loop {
        out.push(window.clone());
        let mut k = width;
        loop {
            if k == 0 {
                return out;
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

/// Index into a window slice for the relative position `-velocity`.
fn locus_slot(radius: usize, velocity: i64) -> usize {
    (radius as i64 - velocity) as usize
}

/// `Loc_i(σ)`: every window with `σ` at relative index `-i`.
pub fn locus(
    value: Sym,
    velocity: i64,
    alphabet: &Alphabet,
    radius: usize,
) -> Result<BTreeSet<Vec<Sym>>, GliderError> {
    if velocity.unsigned_abs() as usize > radius {
        return Err(GliderError::VelocityOutOfRange { velocity, radius });
    }
    let slot = locus_slot(radius, velocity);
    Ok(all_windows(alphabet, radius)
        .into_iter()
        .filter(|w| w[slot] == value)
        .collect())
}

fn window_in_locus(window: &[Sym], g: Glider, radius: usize) -> bool {
    window[locus_slot(radius, g.velocity)] == g.value
}

/// A set of gliders with a strict-partial-order dominance relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GliderSystem {
    alphabet: Arc<Alphabet>,
    radius: usize,
    gliders: BTreeSet<Glider>,
    dominance: BTreeSet<(Glider, Glider)>,
}

impl GliderSystem {
    /// Builds a system, rejecting out-of-range velocities, dominance
    /// pairs that do not differ in both value and velocity, pairs over
    /// unknown gliders, and cyclic dominance.
    pub fn new(
        alphabet: Arc<Alphabet>,
        radius: usize,
        gliders: impl IntoIterator<Item = Glider>,
        dominance: impl IntoIterator<Item = (Glider, Glider)>,
    ) -> Result<Self, GliderError> {
        let system = GliderSystem::new_permissive(alphabet, radius, gliders, dominance)?;
        if let Some(cycle) = system.find_cycle() {
            let shown = cycle
                .iter()
                .map(|g| g.render(&system.alphabet))
                .collect::<Vec<_>>()
                .join(" > ");
            return Err(GliderError::CyclicDominance(shown));
        }
        Ok(system)
    }

    /// Like [`GliderSystem::new`] but keeps cyclic dominance, so the
    /// soundness checker can diagnose it.
    pub fn new_permissive(
        alphabet: Arc<Alphabet>,
        radius: usize,
        gliders: impl IntoIterator<Item = Glider>,
        dominance: impl IntoIterator<Item = (Glider, Glider)>,
    ) -> Result<Self, GliderError> {
        let gliders: BTreeSet<Glider> = gliders.into_iter().collect();
        for g in &gliders {
            if g.velocity.unsigned_abs() as usize > radius {
                return Err(GliderError::VelocityOutOfRange {
                    velocity: g.velocity,
                    radius,
                });
            }
            if !alphabet.contains(g.value) {
                return Err(GliderError::UnknownGlider(format!("{g:?}")));
            }
        }
        let dominance: BTreeSet<(Glider, Glider)> = dominance.into_iter().collect();
        for (a, b) in &dominance {
            for g in [a, b] {
                if !gliders.contains(g) {
                    return Err(GliderError::UnknownGlider(g.render(&alphabet)));
                }
            }
            if a.value == b.value || a.velocity == b.velocity {
                return Err(GliderError::BadDominancePair(format!(
                    "{} > {}",
                    a.render(&alphabet),
                    b.render(&alphabet)
                )));
            }
        }
        Ok(GliderSystem {
            alphabet,
            radius,
            gliders,
            dominance,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn gliders(&self) -> &BTreeSet<Glider> {
        &self.gliders
    }

    pub fn dominance(&self) -> &BTreeSet<(Glider, Glider)> {
        &self.dominance
    }

    pub fn dominates(&self, a: Glider, b: Glider) -> bool {
        self.dominance.contains(&(a, b))
    }

    /// A dominance cycle, if one exists.
    pub fn find_cycle(&self) -> Option<Vec<Glider>> {
        // iterative DFS with an explicit color map
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Gray,
            Black,
        }
        let mut color: BTreeMap<Glider, Color> =
            self.gliders.iter().map(|&g| (g, Color::White)).collect();
        let succ = |g: Glider| {
            self.dominance
                .range((g, Glider::new(Sym(0), i64::MIN))..)
                .take_while(move |(a, _)| *a == g)
                .map(|&(_, b)| b)
        };
        for &start in &self.gliders {
            if color[&start] != Color::White {
                continue;
            }
            let mut stack = vec![(start, false)];
            let mut path: Vec<Glider> = Vec::new();
            while let Some((g, expanded)) = stack.pop() {
                if expanded {
                    color.insert(g, Color::Black);
                    path.pop();
                    continue;
                }
                if color[&g] == Color::Black {
                    continue;
                }
                if color[&g] == Color::Gray {
                    continue;
                }
                color.insert(g, Color::Gray);
                path.push(g);
                stack.push((g, true));
                for next in succ(g) {
                    match color[&next] {
                        Color::White => stack.push((next, false)),
                        Color::Gray => {
                            let pos = path.iter().position(|&p| p == next).unwrap();
                            return Some(path[pos..].to_vec());
                        }
                        Color::Black => {}
                    }
                }
            }
        }
        None
    }

    /// Transitive closure of the dominance relation.
    pub fn dominance_closure(&self) -> BTreeSet<(Glider, Glider)> {
        let nodes: Vec<Glider> = self.gliders.iter().copied().collect();
        let mut closed = self.dominance.clone();
        loop {
            let mut grew = false;
            for &a in &nodes {
                for &b in &nodes {
                    if !closed.contains(&(a, b)) {
                        continue;
                    }
                    for &c in &nodes {
                        if closed.contains(&(b, c)) && closed.insert((a, c)) {
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                return closed;
            }
        }
    }

    /// Canonical text form (`.gliders` format without an `init` line).
    pub fn to_text(&self) -> String {
        self.to_text_with_init(None)
    }

    pub fn to_text_with_init(&self, init: Option<&str>) -> String {
        let mut out = String::new();
        writeln!(out, "alphabet: {}", self.alphabet).unwrap();
        writeln!(out, "radius: {}", self.radius).unwrap();
        for g in &self.gliders {
            writeln!(
                out,
                "glider {} {}",
                self.alphabet.token(g.value),
                g.velocity
            )
            .unwrap();
        }
        for (a, b) in &self.dominance {
            writeln!(
                out,
                "dom {} {} > {} {}",
                self.alphabet.token(a.value),
                a.velocity,
                self.alphabet.token(b.value),
                b.velocity
            )
            .unwrap();
        }
        if let Some(pattern) = init {
            writeln!(out, "init {pattern}").unwrap();
        }
        out
    }
}

/// Parsed `.gliders` file: the system plus its optional initial
/// pattern.
#[derive(Debug, Clone)]
pub struct GliderSpec {
    pub system: GliderSystem,
    pub init: Option<String>,
}

/// Parses the `.gliders` text format. Cycles are kept so they can be
/// reported by the soundness checker.
pub fn parse_gliders_str(text: &str) -> Result<GliderSpec, FormatError> {
    let mut alphabet: Option<Arc<Alphabet>> = None;
    let mut radius: Option<usize> = None;
    let mut gliders: Vec<Glider> = Vec::new();
    let mut dominance: Vec<(Glider, Glider)> = Vec::new();
    let mut init: Option<String> = None;

    let parse_glider = |ab: &Alphabet, toks: &[&str], line: usize| -> Result<Glider, FormatError> {
        if toks.len() != 2 {
            return Err(FormatError::new(line, "expected `<symbol> <velocity>`".into()));
        }
        let value = ab
            .lookup(toks[0])
            .ok_or_else(|| FormatError::new(line, format!("unknown token `{}`", toks[0])))?;
        let velocity = toks[1]
            .parse()
            .map_err(|_| FormatError::new(line, format!("bad velocity `{}`", toks[1])))?;
        Ok(Glider::new(value, velocity))
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("alphabet:") {
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            alphabet =
                Some(Alphabet::new(tokens, 0).map_err(|e| FormatError::new(line, e.to_string()))?);
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
        if let Some(rest) = content.strip_prefix("init") {
            init = Some(rest.trim().to_string());
            continue;
        }
        let ab = alphabet
            .as_ref()
            .ok_or_else(|| FormatError::new(line, "entry before alphabet line".into()))?;
        if let Some(rest) = content.strip_prefix("glider") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            gliders.push(parse_glider(ab, &toks, line)?);
            continue;
        }
        if let Some(rest) = content.strip_prefix("dom") {
            let (lhs, rhs) = rest
                .split_once('>')
                .ok_or_else(|| FormatError::new(line, "expected `dom g > g`".into()))?;
            let lt: Vec<&str> = lhs.split_whitespace().collect();
            let rt: Vec<&str> = rhs.split_whitespace().collect();
            dominance.push((parse_glider(ab, &lt, line)?, parse_glider(ab, &rt, line)?));
            continue;
        }
        return Err(FormatError::new(line, format!("unrecognized line `{content}`")));
    }
    let alphabet = alphabet.ok_or_else(|| FormatError::new(0, "missing alphabet line".into()))?;
    let radius = radius.ok_or_else(|| FormatError::new(0, "missing radius line".into()))?;
    let system = GliderSystem::new_permissive(alphabet, radius, gliders, dominance)
        .map_err(|e| FormatError::new(0, e.to_string()))?;
    Ok(GliderSpec { system, init })
}

/// How a glider behaves over its quantification domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PersistenceClass {
    Persistent,
    IPersistent,
    NonPersistentGlider,
    NotAGlider,
}

/// A window in the glider's locus where the rule does not return the
/// glider's value; `output` is `None` when the rule is undefined there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceWitness {
    pub window: Vec<Sym>,
    pub output: Option<Sym>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GliderVerdict {
    pub glider: Glider,
    pub class: PersistenceClass,
    pub witness: Option<PersistenceWitness>,
}

/// Classification of every `(σ, i)` pair of the rule's alphabet.
#[derive(Debug, Clone)]
pub struct PersistenceReport {
    pub verdicts: Vec<GliderVerdict>,
}

impl PersistenceReport {
    pub fn class_of(&self, g: Glider) -> Option<PersistenceClass> {
        self.verdicts
            .iter()
            .find(|v| v.glider == g)
            .map(|v| v.class)
    }

    /// Gliders persistent over the full window space.
    pub fn persistent(&self) -> BTreeSet<Glider> {
        self.verdicts
            .iter()
            .filter(|v| v.class == PersistenceClass::Persistent)
            .map(|v| v.glider)
            .collect()
    }

    /// Gliders persistent at least over the feasible windows.
    pub fn i_persistent(&self) -> BTreeSet<Glider> {
        self.verdicts
            .iter()
            .filter(|v| {
                matches!(
                    v.class,
                    PersistenceClass::Persistent | PersistenceClass::IPersistent
                )
            })
            .map(|v| v.glider)
            .collect()
    }
}

fn scope_windows(rule: &RuleTable, scope: FnScope) -> Result<Vec<Vec<Sym>>, GliderError> {
    match scope {
        FnScope::All => {
            if !rule.is_total() {
                return Err(GliderError::PartialRuleWithAll);
            }
            Ok(all_windows(rule.alphabet(), rule.radius()))
        }
        FnScope::Feasible(fns) => {
            for w in fns.iter() {
                if rule.get(w).is_none() {
                    return Err(GliderError::UndefinedNeighborhood(
                        Window(w.clone()).render(rule.alphabet()),
                    ));
                }
            }
            Ok(fns.iter().cloned().collect())
        }
    }
}

/// Classifies every value–velocity pair as persistent, I-persistent,
/// a plain (non-persistent) glider, or not a glider at all.
pub fn classify_gliders(
    rule: &RuleTable,
    scope: FnScope,
) -> Result<PersistenceReport, GliderError> {
    let domain = scope_windows(rule, scope)?;
    let radius = rule.radius();
    let r = radius as i64;
    let universe = all_windows(rule.alphabet(), radius);
    let mut verdicts = Vec::new();
    for value in rule.alphabet().symbols() {
        for velocity in -r..=r {
            let g = Glider::new(value, velocity);
            let slot = locus_slot(radius, velocity);
            let in_domain: Vec<&Vec<Sym>> =
                domain.iter().filter(|w| w[slot] == value).collect();
            let any_hit = in_domain.iter().any(|w| rule.get(w) == Some(value));
            if !any_hit {
                verdicts.push(GliderVerdict {
                    glider: g,
                    class: PersistenceClass::NotAGlider,
                    witness: None,
                });
                continue;
            }
            // persistence quantifies over the unrestricted locus
            let locus_violation = universe
                .iter()
                .filter(|w| w[slot] == value)
                .find_map(|w| match rule.get(w) {
                    Some(v) if v == value => None,
                    output => Some(PersistenceWitness {
                        window: w.clone(),
                        output,
                    }),
                });
            let class = if locus_violation.is_none() {
                PersistenceClass::Persistent
            } else if in_domain.iter().all(|w| rule.get(w) == Some(value)) {
                PersistenceClass::IPersistent
            } else {
                PersistenceClass::NonPersistentGlider
            };
            let witness = match class {
                PersistenceClass::Persistent => None,
                PersistenceClass::IPersistent => locus_violation,
                PersistenceClass::NonPersistentGlider => in_domain
                    .iter()
                    .find(|w| rule.get(w) != Some(value))
                    .map(|w| PersistenceWitness {
                        window: (*w).clone(),
                        output: rule.get(w),
                    }),
                PersistenceClass::NotAGlider => None,
            };
            verdicts.push(GliderVerdict {
                glider: g,
                class,
                witness,
            });
        }
    }
    Ok(PersistenceReport { verdicts })
}

/// Persistent gliders can only coexist when they share a velocity or a
/// value; returns the first offending pair otherwise.
pub fn coexistence_check(persistent: &BTreeSet<Glider>) -> Option<(Glider, Glider)> {
    let gliders: Vec<Glider> = persistent.iter().copied().collect();
    for (k, &a) in gliders.iter().enumerate() {
        for &b in &gliders[k + 1..] {
            if a.value != b.value && a.velocity != b.velocity {
                return Some((a, b));
            }
        }
    }
    None
}

/// How a symbol's set of persistent-glider velocities makes it spread.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spreading {
    Right { speed: u64 },
    Left { speed: u64 },
    TwoWay,
    Shift,
    None,
}

/// Classifies the spreading behavior of `value` from the velocities of
/// its persistent gliders. Non-contiguous velocity sets and the lone
/// zero velocity are not spreading states.
pub fn classify_spreading(persistent: &BTreeSet<Glider>, value: Sym) -> Spreading {
    let velocities: BTreeSet<i64> = persistent
        .iter()
        .filter(|g| g.value == value)
        .map(|g| g.velocity)
        .collect();
    let Some((&m, &n)) = velocities.first().zip(velocities.last()) else {
        return Spreading::None;
    };
    let contiguous = (n - m + 1) as usize == velocities.len();
    if !contiguous || (m, n) == (0, 0) {
        return Spreading::None;
    }
    if m == 0 {
        Spreading::Right { speed: n as u64 }
    } else if n == 0 {
        Spreading::Left {
            speed: m.unsigned_abs(),
        }
    } else if m < 0 && n > 0 {
        Spreading::TwoWay
    } else {
        Spreading::Shift
    }
}

/// Derives the glider set and dominance order of a rule restricted to
/// its feasible neighborhoods.
///
/// A dominance pair is emitted only when the two loci overlap inside
/// the feasible set and the rule resolves every overlap window to the
/// dominating value; empty overlaps are omitted rather than recorded as
/// vacuous.
pub fn derive_glider_system(
    rule: &RuleTable,
    fns: &FeasibleWindowSet,
) -> Result<GliderSystem, GliderError> {
    let windows = scope_windows(rule, FnScope::Feasible(fns))?;
    let radius = rule.radius();
    let r = radius as i64;
    let mut gliders: BTreeSet<Glider> = BTreeSet::new();
    for w in &windows {
        let value = rule.get(w).unwrap();
        for velocity in -r..=r {
            if w[locus_slot(radius, velocity)] == value {
                gliders.insert(Glider::new(value, velocity));
            }
        }
    }
    let mut dominance = BTreeSet::new();
    for &a in &gliders {
        for &b in &gliders {
            if a.value == b.value || a.velocity == b.velocity {
                continue;
            }
            let slot_a = locus_slot(radius, a.velocity);
            let slot_b = locus_slot(radius, b.velocity);
            let mut overlap = windows
                .iter()
                .filter(|w| w[slot_a] == a.value && w[slot_b] == b.value)
                .peekable();
            if overlap.peek().is_none() {
                continue;
            }
            if overlap.all(|w| rule.get(w) == Some(a.value)) {
                dominance.insert((a, b));
            }
        }
    }
    GliderSystem::new(rule.alphabet().clone(), radius, gliders, dominance)
}

/// A feasible window whose maximal glider disagrees with the rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalDisagreement {
    pub window: Vec<Sym>,
    pub maximal: Glider,
    pub expected: Sym,
}

/// The three sound-derivation verdicts, with witnesses.
///
/// Maximality is evaluated under the raw derived relation and, because
/// strict partial orders are usually presented transitively closed,
/// also under the transitive closure; a difference between the two is
/// reported, not resolved.
#[derive(Debug, Clone)]
pub struct SoundnessReport {
    pub acyclic: bool,
    pub cycle: Option<Vec<Glider>>,
    pub covered: bool,
    pub uncovered: Vec<Vec<Sym>>,
    pub maximal_agreement: bool,
    pub disagreements: Vec<MaximalDisagreement>,
    pub closure_maximality_differs: bool,
    pub closure_disagreements: Vec<MaximalDisagreement>,
}

impl SoundnessReport {
    pub fn sound(&self) -> bool {
        self.acyclic && self.covered && self.maximal_agreement
    }
}

fn maximal_in(
    members: &[Glider],
    dominates: &BTreeSet<(Glider, Glider)>,
) -> Vec<Glider> {
    members
        .iter()
        .copied()
        .filter(|&g| !members.iter().any(|&d| dominates.contains(&(d, g))))
        .collect()
}

/// Checks the three sound-derivation conditions of `gs` against `rule`
/// on the feasible windows.
pub fn check_soundness(
    rule: &RuleTable,
    fns: &FeasibleWindowSet,
    gs: &GliderSystem,
) -> Result<SoundnessReport, GliderError> {
    if gs.alphabet().as_ref() != rule.alphabet().as_ref() {
        return Err(GliderError::AlphabetMismatch);
    }
    let windows = scope_windows(rule, FnScope::Feasible(fns))?;
    let radius = rule.radius();
    let cycle = gs.find_cycle();
    let acyclic = cycle.is_none();
    let closure = gs.dominance_closure();

    let mut uncovered = Vec::new();
    let mut disagreements = Vec::new();
    let mut closure_disagreements = Vec::new();
    let mut closure_maximality_differs = false;
    for w in &windows {
        let expected = rule.get(w).unwrap();
        let covering = gs
            .gliders()
            .iter()
            .any(|&g| g.value == expected && window_in_locus(w, g, radius));
        if !covering {
            uncovered.push(w.clone());
        }
        let members: Vec<Glider> = gs
            .gliders()
            .iter()
            .copied()
            .filter(|&g| window_in_locus(w, g, radius))
            .collect();
        let raw_max = maximal_in(&members, gs.dominance());
        let closed_max = maximal_in(&members, &closure);
        if raw_max != closed_max {
            closure_maximality_differs = true;
        }
        for &g in &raw_max {
            if g.value != expected {
                disagreements.push(MaximalDisagreement {
                    window: w.clone(),
                    maximal: g,
                    expected,
                });
            }
        }
        for &g in &closed_max {
            if g.value != expected {
                closure_disagreements.push(MaximalDisagreement {
                    window: w.clone(),
                    maximal: g,
                    expected,
                });
            }
        }
    }
    Ok(SoundnessReport {
        acyclic,
        cycle,
        covered: uncovered.is_empty(),
        uncovered,
        maximal_agreement: disagreements.is_empty(),
        disagreements,
        closure_maximality_differs,
        closure_disagreements,
    })
}

/// The canonical linearization used by [`gtor`]: repeatedly remove a
/// currently-maximal glider, choosing the least under (value's alphabet
/// index, then velocity).
pub fn linearization(gs: &GliderSystem) -> Result<Vec<Glider>, GliderError> {
    let mut dominated_by: BTreeMap<Glider, usize> =
        gs.gliders().iter().map(|&g| (g, 0)).collect();
    for (_, b) in gs.dominance() {
        *dominated_by.get_mut(b).unwrap() += 1;
    }
    let mut ready: BTreeSet<Glider> = dominated_by
        .iter()
        .filter(|(_, &n)| n == 0)
        .map(|(&g, _)| g)
        .collect();
    let mut order = Vec::with_capacity(gs.gliders().len());
    while let Some(&g) = ready.first() {
        ready.remove(&g);
        order.push(g);
        for &(a, b) in gs.dominance() {
            if a == g {
                let n = dominated_by.get_mut(&b).unwrap();
                *n -= 1;
                if *n == 0 {
                    ready.insert(b);
                }
            }
        }
    }
    if order.len() != gs.gliders().len() {
        let cycle = gs.find_cycle().unwrap_or_default();
        let shown = cycle
            .iter()
            .map(|g| g.render(gs.alphabet()))
            .collect::<Vec<_>>()
            .join(" > ");
        return Err(GliderError::CyclicDominance(shown));
    }
    Ok(order)
}

/// Glider-to-rule reconstruction: processes gliders along a
/// linearization of the dominance order, each step extending the
/// partial rule with the glider's value on the not-yet-defined part of
/// its locus.
pub fn gtor(gs: &GliderSystem) -> Result<RuleTable, GliderError> {
    let order = linearization(gs)?;
    gtor_with_order(gs, &order)
}

/// [`gtor`] along a caller-supplied linearization. Any valid
/// linearization of a soundly-derived system reconstructs the same rule
/// on the feasible windows.
pub fn gtor_with_order(gs: &GliderSystem, order: &[Glider]) -> Result<RuleTable, GliderError> {
    let as_set: BTreeSet<Glider> = order.iter().copied().collect();
    if as_set != *gs.gliders() || order.len() != gs.gliders().len() {
        return Err(GliderError::BadLinearization);
    }
    let position: BTreeMap<Glider, usize> =
        order.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    if gs
        .dominance()
        .iter()
        .any(|(a, b)| position[a] > position[b])
    {
        return Err(GliderError::BadLinearization);
    }
    let radius = gs.radius();
    let slots: Vec<(usize, Sym)> = order
        .iter()
        .map(|g| (locus_slot(radius, g.velocity), g.value))
        .collect();
    let mut entries: Vec<(Vec<Sym>, Sym)> = Vec::new();
    for w in all_windows(gs.alphabet(), radius) {
        // the first glider in the linearization whose locus holds the
        // window claims it; later Extend calls leave it untouched
        if let Some(&(_, value)) = slots.iter().find(|&&(slot, value)| w[slot] == value) {
            entries.push((w, value));
        }
    }
    Ok(RuleTable::new(gs.alphabet().clone(), radius, entries)
        .expect("loci windows are well-formed"))
}

/// Windows whose output symbol occurs nowhere in the window; a
/// non-empty result certifies the rule is not glider-expressible at
/// this radius.
pub fn obs_non_glider(
    rule: &RuleTable,
    scope: FnScope,
) -> Result<Vec<(Vec<Sym>, Sym)>, GliderError> {
    let windows = scope_windows(rule, scope)?;
    Ok(windows
        .into_iter()
        .filter_map(|w| {
            let out = rule.get(&w).unwrap();
            if w.contains(&out) {
                None
            } else {
                Some((w, out))
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::{feasible_neighborhoods, Budgets};
    use crate::regset::parse_pattern;

    fn sym(ab: &Alphabet, t: &str) -> Sym {
        ab.lookup(t).unwrap()
    }

    /// Full (total) rule of the one-symbol left-drift automaton.
    fn drift_full() -> RuleTable {
        RuleTable::parse_str(
            "alphabet: _ a\nradius: 1\n\
             _ _ _ -> _\n_ _ a -> a\n_ a _ -> _\n_ a a -> a\n\
             a _ _ -> _\na _ a -> a\na a _ -> a\na a a -> a\n",
        )
        .unwrap()
    }

    /// The 27-entry total rule whose restriction to ppad({ab}) is the
    /// canonical two-captains table.
    fn extended_two_captains() -> RuleTable {
        RuleTable::parse_str(
            "alphabet: _ a b\nradius: 1\n\
             _ _ _ -> _\na _ b -> _\na a _ -> _\na b a -> _\nb _ b -> _\n\
             _ _ a -> a\n_ a _ -> a\n_ a a -> a\n_ a b -> a\n_ b _ -> a\n\
             _ b a -> a\na a a -> a\na a b -> a\nb a _ -> a\nb b a -> a\n\
             _ _ b -> b\n_ b b -> b\na _ _ -> b\na _ a -> b\na b _ -> b\n\
             a b b -> b\nb _ _ -> b\nb _ a -> b\nb a a -> b\nb a b -> b\n\
             b b _ -> b\nb b b -> b\n",
        )
        .unwrap()
    }

    #[test]
    fn locus_matches_the_definition() {
        let ab = Alphabet::lowercase("a");
        let a = sym(&ab, "a");
        let q = ab.quiescent();
        let loc = locus(a, -1, &ab, 1).unwrap();
        let rendered: Vec<String> = loc.iter().map(|w| Window(w.clone()).render(&ab)).collect();
        assert_eq!(rendered, vec!["_ _ a", "_ a a", "a _ a", "a a a"]);
        let loc0 = locus(q, 0, &ab, 1).unwrap();
        let rendered: Vec<String> = loc0.iter().map(|w| Window(w.clone()).render(&ab)).collect();
        assert_eq!(rendered, vec!["_ _ _", "_ _ a", "a _ _", "a _ a"]);
        for i in -1..=1 {
            assert_eq!(locus(a, i, &ab, 1).unwrap().len(), 4);
        }
        assert_eq!(
            locus(a, 2, &ab, 1).unwrap_err(),
            GliderError::VelocityOutOfRange {
                velocity: 2,
                radius: 1
            }
        );
    }

    #[test]
    fn drift_carrier_is_persistent() {
        let rule = drift_full();
        let ab = rule.alphabet().clone();
        let report = classify_gliders(&rule, FnScope::All).unwrap();
        assert_eq!(
            report.class_of(Glider::new(sym(&ab, "a"), -1)),
            Some(PersistenceClass::Persistent)
        );
    }

    #[test]
    fn identity_rule_makes_every_symbol_statically_persistent() {
        let ab = Alphabet::lowercase("ab");
        let rule = RuleTable::identity(ab.clone(), 1);
        let report = classify_gliders(&rule, FnScope::All).unwrap();
        for s in ab.symbols() {
            assert_eq!(
                report.class_of(Glider::new(s, 0)),
                Some(PersistenceClass::Persistent)
            );
        }
    }

    #[test]
    fn i_persistence_of_the_extended_two_captains_rule() {
        let rule = extended_two_captains();
        let ab = rule.alphabet().clone();
        let f = parse_pattern("ab", ab.clone()).unwrap();
        let fns = feasible_neighborhoods(&rule, &f, Budgets::steps(8)).unwrap();
        assert!(fns.stabilized());
        let report = classify_gliders(&rule, FnScope::Feasible(&fns)).unwrap();
        let a = sym(&ab, "a");
        let b = sym(&ab, "b");
        for g in [
            Glider::new(a, -1),
            Glider::new(a, 0),
            Glider::new(b, 0),
            Glider::new(b, 1),
        ] {
            assert_eq!(report.class_of(g), Some(PersistenceClass::IPersistent));
            let verdict = report
                .verdicts
                .iter()
                .find(|v| v.glider == g)
                .unwrap()
                .witness
                .clone()
                .expect("I-persistent but not persistent needs a witness");
            // the witness lies in the locus and genuinely violates
            assert_eq!(verdict.window[locus_slot(1, g.velocity)], g.value);
            assert_ne!(rule.get(&verdict.window), Some(g.value));
        }
        // the witnesses named in the source table
        let w = |s: &str| ab.parse_word(s).unwrap();
        assert_eq!(rule.get(&w("a_a")), Some(b));
        assert_eq!(rule.get(&w("aa_")), Some(ab.quiescent()));
        assert_eq!(rule.get(&w("_ba")), Some(a));
        assert_eq!(rule.get(&w("b_b")), Some(ab.quiescent()));
    }

    #[test]
    fn coexistence_rejects_value_and_velocity_distinct_pairs() {
        let ab = Alphabet::lowercase("ab");
        let a = sym(&ab, "a");
        let b = sym(&ab, "b");
        let ok1: BTreeSet<Glider> = [Glider::new(a, 0), Glider::new(b, 0)].into();
        assert_eq!(coexistence_check(&ok1), None);
        let ok2: BTreeSet<Glider> = [Glider::new(a, 0), Glider::new(a, 1)].into();
        assert_eq!(coexistence_check(&ok2), None);
        let bad: BTreeSet<Glider> = [Glider::new(a, 0), Glider::new(b, 1)].into();
        assert_eq!(
            coexistence_check(&bad),
            Some((Glider::new(a, 0), Glider::new(b, 1)))
        );
    }

    #[test]
    fn spreading_classification() {
        let ab = Alphabet::lowercase("a");
        let a = sym(&ab, "a");
        let set = |vs: &[i64]| -> BTreeSet<Glider> {
            vs.iter().map(|&v| Glider::new(a, v)).collect()
        };
        assert_eq!(
            classify_spreading(&set(&[0, 1, 2]), a),
            Spreading::Right { speed: 2 }
        );
        assert_eq!(
            classify_spreading(&set(&[-1, 0]), a),
            Spreading::Left { speed: 1 }
        );
        assert_eq!(classify_spreading(&set(&[-1, 0, 1]), a), Spreading::TwoWay);
        assert_eq!(classify_spreading(&set(&[1, 2]), a), Spreading::Shift);
        assert_eq!(classify_spreading(&set(&[]), a), Spreading::None);
        assert_eq!(classify_spreading(&set(&[0]), a), Spreading::None);
        assert_eq!(classify_spreading(&set(&[-1, 1]), a), Spreading::None);
    }

    #[test]
    fn derive_and_reconstruct_the_drift_rule() {
        let rule = RuleTable::parse_str(
            "alphabet: _ a\nradius: 1\n_ _ _ -> _\n_ _ a -> a\n_ a _ -> _\na _ _ -> _\n",
        )
        .unwrap();
        let ab = rule.alphabet().clone();
        let f = parse_pattern("a", ab.clone()).unwrap();
        let fns = feasible_neighborhoods(&rule, &f, Budgets::steps(4)).unwrap();
        let gs = derive_glider_system(&rule, &fns).unwrap();
        let a = sym(&ab, "a");
        let q = ab.quiescent();
        let expected: BTreeSet<Glider> = [
            Glider::new(a, -1),
            Glider::new(q, -1),
            Glider::new(q, 0),
            Glider::new(q, 1),
        ]
        .into();
        assert_eq!(*gs.gliders(), expected);
        let report = check_soundness(&rule, &fns, &gs).unwrap();
        assert!(report.sound());
        assert!(!report.closure_maximality_differs);
        let rebuilt = gtor(&gs).unwrap();
        for w in fns.iter() {
            assert_eq!(rebuilt.get(w), rule.get(w));
        }
    }

    #[test]
    fn identity_rule_derives_static_gliders() {
        let ab = Alphabet::lowercase("ab");
        let rule = RuleTable::identity(ab.clone(), 1);
        let f = parse_pattern("ab|ba", ab.clone()).unwrap();
        let fns = feasible_neighborhoods(&rule, &f, Budgets::steps(3)).unwrap();
        let gs = derive_glider_system(&rule, &fns).unwrap();
        // every non-quiescent carrier is static
        assert!(gs
            .gliders()
            .iter()
            .filter(|g| g.value != ab.quiescent())
            .all(|g| g.velocity == 0));
        // no value-vs-value dominance arises; the center always wins
        // over boundary quiescent gliders, and those pairs are the only
        // ones the overlaps support
        for (a, b) in gs.dominance() {
            assert_ne!(a.value, ab.quiescent());
            assert_eq!(b.value, ab.quiescent());
        }
        let report = check_soundness(&rule, &fns, &gs).unwrap();
        assert!(report.sound());
    }

    #[test]
    fn xor_rule_has_a_non_glider_window() {
        let bits = Alphabet::new(["0", "1"], 0).unwrap();
        let one = sym(&bits, "1");
        let rule = RuleTable::total_from_fn(bits.clone(), 1, |w| {
            Sym((w[0].0 ^ w[2].0) & 1)
        });
        let violations = obs_non_glider(&rule, FnScope::All).unwrap();
        let w111 = vec![one, one, one];
        assert_eq!(violations, vec![(w111, bits.quiescent())]);
    }

    #[test]
    fn gtor_of_a_dominated_pair_layers_loci() {
        // two symbols, no designated-quiescent role in the dynamics
        let ab = Alphabet::new(["a", "b"], 0).unwrap();
        let a = sym(&ab, "a");
        let b = sym(&ab, "b");
        let gb = Glider::new(b, 1);
        let ga = Glider::new(a, 0);
        let gs = GliderSystem::new(ab.clone(), 1, [ga, gb], [(gb, ga)]).unwrap();
        let rule = gtor(&gs).unwrap();
        for w in all_windows(&ab, 1) {
            let expected = if w[0] == b {
                Some(b)
            } else if w[1] == a {
                Some(a)
            } else {
                None
            };
            assert_eq!(rule.get(&w), expected, "window {:?}", w);
        }
    }

    #[test]
    fn single_static_glider_compiles_to_a_constant_locus() {
        let ab = Alphabet::lowercase("a");
        let a = sym(&ab, "a");
        let gs = GliderSystem::new(ab.clone(), 1, [Glider::new(a, 0)], []).unwrap();
        let rule = gtor(&gs).unwrap();
        assert_eq!(rule.len(), 4);
        for (w, v) in rule.entries() {
            assert_eq!(w[1], a);
            assert_eq!(v, a);
        }
    }

    #[test]
    fn cyclic_dominance_is_rejected_and_reported() {
        let ab = Alphabet::lowercase("ab");
        let a = sym(&ab, "a");
        let b = sym(&ab, "b");
        let g1 = Glider::new(a, 0);
        let g2 = Glider::new(b, 1);
        let err = GliderSystem::new(ab.clone(), 1, [g1, g2], [(g1, g2), (g2, g1)]).unwrap_err();
        assert!(matches!(err, GliderError::CyclicDominance(_)));
        let gs =
            GliderSystem::new_permissive(ab.clone(), 1, [g1, g2], [(g1, g2), (g2, g1)]).unwrap();
        let rule = RuleTable::identity(ab.clone(), 1);
        let f = parse_pattern("a", ab).unwrap();
        let fns = feasible_neighborhoods(&rule, &f, Budgets::steps(2)).unwrap();
        let report = check_soundness(&rule, &fns, &gs).unwrap();
        assert!(!report.acyclic);
        assert!(report.cycle.is_some());
        assert!(matches!(gtor(&gs), Err(GliderError::CyclicDominance(_))));
    }

    #[test]
    fn gliders_file_round_trip() {
        let ab = Alphabet::lowercase("ab");
        let a = sym(&ab, "a");
        let b = sym(&ab, "b");
        let gs = GliderSystem::new(
            ab,
            1,
            [Glider::new(a, 0), Glider::new(b, 1)],
            [(Glider::new(b, 1), Glider::new(a, 0))],
        )
        .unwrap();
        let text = gs.to_text_with_init(Some("a*ab"));
        let spec = parse_gliders_str(&text).unwrap();
        assert_eq!(spec.system, gs);
        assert_eq!(spec.init.as_deref(), Some("a*ab"));
        assert_eq!(spec.system.to_text_with_init(spec.init.as_deref()), text);
    }

    #[test]
    fn dominance_must_differ_in_value_and_velocity() {
        let ab = Alphabet::lowercase("ab");
        let a = sym(&ab, "a");
        let b = sym(&ab, "b");
        let err = GliderSystem::new(
            ab.clone(),
            1,
            [Glider::new(a, 0), Glider::new(b, 0)],
            [(Glider::new(b, 0), Glider::new(a, 0))],
        )
        .unwrap_err();
        assert!(matches!(err, GliderError::BadDominancePair(_)));
        let err = GliderSystem::new(ab, 1, [Glider::new(a, 2)], []).unwrap_err();
        assert!(matches!(err, GliderError::VelocityOutOfRange { .. }));
    }
}
