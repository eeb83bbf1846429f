//! The functions behind the `calang` binary.
//!
//! Exit-code contract: 0 when the property holds (or artifacts were
//! written), 1 for violations and witnesses (unsound derivation, cyclic
//! dominance, safety counterexample, undefined neighborhood during
//! evolution), 2 for usage, parse and budget errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;
use thiserror::Error;

use crate::alphabet::Word;
use crate::analysis::{
    check_width_growth, difference_profile, radius_lower_bound, safety_check, SafetyStatus,
};
use crate::constructions::{
    build_block_repetition, build_nested_counters, build_shift_concat, build_two_block, builtin,
    Construction, Direction, LinearExpr, BUILTIN_NAMES,
};
use crate::gliders::{
    all_windows, check_soundness, classify_gliders, classify_spreading, derive_glider_system,
    gtor, parse_gliders_str, FnScope, Spreading,
};
use crate::language::{
    explore_orbits, feasible_neighborhoods, generate_language, Budgets, FeasibleWindowSet,
};
use crate::regset::parse_pattern;
use crate::render::{render_ascii, render_pgm, RenderFormat, RenderSpec};
use crate::rule::{RuleTable, Window};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    /// Usage, parse or budget problems; exit code 2.
    #[error("{0}")]
    Usage(String),
    /// Evolution failures such as undefined neighborhoods; exit code 1.
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Runtime(_) => EXIT_VIOLATION,
        }
    }
}

/// Successful command output plus whether it reports a violation
/// (exit code 1 instead of 0).
#[derive(Debug, Clone)]
pub struct CmdResult {
    pub stdout: String,
    pub violation: bool,
}

impl CmdResult {
    fn ok(stdout: String) -> Self {
        CmdResult {
            stdout,
            violation: false,
        }
    }

    fn flagged(stdout: String) -> Self {
        CmdResult {
            stdout,
            violation: true,
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.violation {
            EXIT_VIOLATION
        } else {
            EXIT_OK
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn load_rules(path: &Path) -> Result<RuleTable, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    RuleTable::parse_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_output(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
        }
    }
    fs::write(path, bytes).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

/// Feasible windows from `--init-re`, or the full window space when no
/// pattern is given (which needs a total rule).
fn scope_windows_for(
    rule: &RuleTable,
    init_re: Option<&str>,
    budgets: Budgets,
) -> Result<FeasibleWindowSet, CliError> {
    match init_re {
        Some(pattern) => {
            let f = parse_pattern(pattern, rule.alphabet().clone()).map_err(usage)?;
            feasible_neighborhoods(rule, &f, budgets)
                .map_err(|e| CliError::Runtime(e.to_string()))
        }
        None => {
            if !rule.is_total() {
                return Err(usage(
                    "the rule is partial: give --init-re so feasible windows can be computed",
                ));
            }
            Ok(FeasibleWindowSet::from_windows(
                rule.radius(),
                all_windows(rule.alphabet(), rule.radius()),
                true,
            ))
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimulateOpts {
    pub rules: PathBuf,
    pub init: Option<String>,
    pub init_re: Option<String>,
    pub init_re_max_len: usize,
    pub steps: usize,
    pub format: RenderFormat,
    pub out: Option<PathBuf>,
    pub viewport: Option<(i64, i64)>,
    pub glyphs: BTreeMap<String, char>,
    pub max_width: Option<usize>,
}

pub fn cmd_simulate(opts: &SimulateOpts) -> Result<CmdResult, CliError> {
    let rule = load_rules(&opts.rules)?;
    let word: Word = match (&opts.init, &opts.init_re) {
        (Some(w), None) => rule.alphabet().parse_word(w).map_err(usage)?,
        (None, Some(pattern)) => {
            let f = parse_pattern(pattern, rule.alphabet().clone()).map_err(usage)?;
            f.enumerate_words(opts.init_re_max_len)
                .into_iter()
                .next()
                .ok_or_else(|| usage("--init-re matches no word within its length bound"))?
        }
        _ => return Err(usage("give exactly one of --init or --init-re")),
    };
    let c0 = crate::language::pad(rule.alphabet(), &word);
    let rows = rule
        .evolve(&c0, opts.steps, opts.max_width)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let spec = RenderSpec {
        viewport: opts.viewport,
        glyph_overrides: opts.glyphs.clone(),
    };
    match opts.format {
        RenderFormat::Ascii => {
            let text = render_ascii(&rows, &spec).map_err(usage)?;
            match &opts.out {
                Some(path) => {
                    write_output(path, text.as_bytes())?;
                    Ok(CmdResult::ok(format!("wrote {}\n", path.display())))
                }
                None => Ok(CmdResult::ok(text)),
            }
        }
        RenderFormat::Pgm => {
            let bytes = render_pgm(&rows, &spec);
            let path = opts
                .out
                .as_ref()
                .ok_or_else(|| usage("--format pgm needs -o <file>"))?;
            write_output(path, &bytes)?;
            Ok(CmdResult::ok(format!("wrote {}\n", path.display())))
        }
    }
}

#[derive(Debug, Clone)]
pub struct LangOpts {
    pub rules: PathBuf,
    pub init_re: String,
    pub budgets: Budgets,
    pub out: Option<PathBuf>,
}

pub fn cmd_lang(opts: &LangOpts) -> Result<CmdResult, CliError> {
    let rule = load_rules(&opts.rules)?;
    let f = parse_pattern(&opts.init_re, rule.alphabet().clone()).map_err(usage)?;
    let sample = generate_language(&rule, &f, opts.budgets)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let jsonl = sample.to_jsonl();
    match &opts.out {
        Some(path) => {
            write_output(path, jsonl.as_bytes())?;
            Ok(CmdResult::ok(format!(
                "wrote {} ({} words)\n",
                path.display(),
                sample.len()
            )))
        }
        None => Ok(CmdResult::ok(jsonl)),
    }
}

#[derive(Debug, Clone)]
pub struct GlidersOpts {
    pub rules: PathBuf,
    pub init_re: Option<String>,
    pub budgets: Budgets,
    pub out: Option<PathBuf>,
}

pub fn cmd_gliders_derive(opts: &GlidersOpts) -> Result<CmdResult, CliError> {
    let rule = load_rules(&opts.rules)?;
    let fns = scope_windows_for(&rule, opts.init_re.as_deref(), opts.budgets)?;
    let gs = derive_glider_system(&rule, &fns)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let text = gs.to_text_with_init(opts.init_re.as_deref());
    if let Some(path) = &opts.out {
        write_output(path, text.as_bytes())?;
    }
    let mut stdout = text;
    if !fns.stabilized() {
        writeln!(
            stdout,
            "# note: feasible set not stabilized within the step budget"
        )
        .unwrap();
    }
    Ok(CmdResult::ok(stdout))
}

pub fn cmd_gliders_check(opts: &GlidersOpts) -> Result<CmdResult, CliError> {
    let rule = load_rules(&opts.rules)?;
    let fns = scope_windows_for(&rule, opts.init_re.as_deref(), opts.budgets)?;
    let gs = derive_glider_system(&rule, &fns)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let report = check_soundness(&rule, &fns, &gs)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let ab = rule.alphabet();
    let mut out = String::new();
    writeln!(
        out,
        "(i) acyclicity: {}",
        if report.acyclic { "ok" } else { "FAIL" }
    )
    .unwrap();
    if let Some(cycle) = &report.cycle {
        let shown: Vec<String> = cycle.iter().map(|g| g.render(ab)).collect();
        writeln!(out, "    cycle: {}", shown.join(" > ")).unwrap();
    }
    writeln!(
        out,
        "(ii) coverage: {}",
        if report.covered { "ok" } else { "FAIL" }
    )
    .unwrap();
    for w in report.uncovered.iter().take(8) {
        writeln!(
            out,
            "    uncovered window {} -> {}",
            Window(w.clone()).render(ab),
            ab.token(rule.get(w).unwrap())
        )
        .unwrap();
    }
    writeln!(
        out,
        "(iii) maximal agreement: {}",
        if report.maximal_agreement { "ok" } else { "FAIL" }
    )
    .unwrap();
    for d in report.disagreements.iter().take(8) {
        writeln!(
            out,
            "    window {}: maximal {} vs rule {}",
            Window(d.window.clone()).render(ab),
            d.maximal.render(ab),
            ab.token(d.expected)
        )
        .unwrap();
    }
    if report.closure_maximality_differs {
        writeln!(
            out,
            "note: maximality under the transitive closure differs from the raw relation"
        )
        .unwrap();
    }
    let sound = report.sound();
    writeln!(out, "derivation: {}", if sound { "sound" } else { "UNSOUND" }).unwrap();
    if sound {
        Ok(CmdResult::ok(out))
    } else {
        Ok(CmdResult::flagged(out))
    }
}

pub fn cmd_gliders_compile(input: &Path, out: &Path) -> Result<CmdResult, CliError> {
    let text = fs::read_to_string(input)
        .map_err(|e| usage(format!("cannot read {}: {e}", input.display())))?;
    let spec = parse_gliders_str(&text).map_err(|e| usage(format!("{}: {e}", input.display())))?;
    let rule = gtor(&spec.system).map_err(|e| CliError::Runtime(e.to_string()))?;
    let mut body = String::new();
    if let Some(init) = &spec.init {
        writeln!(body, "# init: {init}").unwrap();
    }
    body.push_str(&rule.to_text());
    write_output(out, body.as_bytes())?;
    Ok(CmdResult::ok(format!(
        "wrote {} ({} entries)\n",
        out.display(),
        rule.len()
    )))
}

/// What `construction export` should build.
#[derive(Debug, Clone)]
pub enum ExportTarget {
    Builtin(String),
    ShiftConcat {
        word: String,
        shift: i64,
        dir: Direction,
    },
    TwoBlock {
        w1: String,
        w2: String,
    },
    NestedCounters {
        radius: usize,
    },
    BlockRepetition {
        words: Vec<String>,
        exprs: Vec<String>,
    },
}

fn build_target(target: &ExportTarget) -> Result<Construction, CliError> {
    match target {
        ExportTarget::Builtin(name) => builtin(name).map_err(usage),
        ExportTarget::ShiftConcat { word, shift, dir } => {
            build_shift_concat(word, *shift, *dir).map_err(usage)
        }
        ExportTarget::TwoBlock { w1, w2 } => build_two_block(w1, w2).map_err(usage),
        ExportTarget::NestedCounters { radius } => build_nested_counters(*radius).map_err(usage),
        ExportTarget::BlockRepetition { words, exprs } => {
            let parsed: Result<Vec<LinearExpr>, _> =
                exprs.iter().map(|e| LinearExpr::parse(e)).collect();
            let refs: Vec<&str> = words.iter().map(String::as_str).collect();
            build_block_repetition(&refs, &parsed.map_err(usage)?).map_err(usage)
        }
    }
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

pub fn cmd_construction_list() -> CmdResult {
    let mut out = String::from("built-in constructions:\n");
    for name in BUILTIN_NAMES {
        out.push_str("  ");
        out.push_str(name);
        out.push('\n');
    }
    out.push_str(
        "parametric builders (via flags on `construction export`):\n  \
         shift_concat --word W --shift S --dir left|right\n  \
         two_block --w1 W --w2 W\n  \
         nested_counters --radius R\n  \
         block_repetition --words W,W,… --exprs E,E,…\n",
    );
    CmdResult::ok(out)
}

pub fn cmd_construction_export(
    target: &ExportTarget,
    out_dir: &Path,
) -> Result<CmdResult, CliError> {
    let construction = build_target(target)?;
    let stem = file_stem(&construction.name);
    let mut out = String::new();
    let rules_path = out_dir.join(format!("{stem}.rules"));
    write_output(&rules_path, construction.export_rules_text().as_bytes())?;
    writeln!(out, "wrote {}", rules_path.display()).unwrap();
    if let Some(gliders_text) = construction.export_gliders_text() {
        let gliders_path = out_dir.join(format!("{stem}.gliders"));
        write_output(&gliders_path, gliders_text.as_bytes())?;
        writeln!(out, "wrote {}", gliders_path.display()).unwrap();
    }
    Ok(CmdResult::ok(out))
}

#[derive(Debug, Clone)]
pub struct AnalyzeOpts {
    pub rules: PathBuf,
    pub init_re: String,
    pub budgets: Budgets,
}

pub fn cmd_analyze_diff_bound(opts: &AnalyzeOpts) -> Result<CmdResult, CliError> {
    let rule = load_rules(&opts.rules)?;
    let f = parse_pattern(&opts.init_re, rule.alphabet().clone()).map_err(usage)?;
    let sample = generate_language(&rule, &f, opts.budgets)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let profile = difference_profile(&sample).map_err(usage)?;
    let report = json!({
        "bound": profile.bound,
        "deltas": profile.deltas,
        "lengths": profile.lengths,
        "radius_lower_bound": radius_lower_bound(profile.bound),
        "rule_radius": rule.radius(),
        "truncated": sample.truncated(),
    });
    Ok(CmdResult::ok(format!("{report:#}\n")))
}

pub fn cmd_analyze_width(opts: &AnalyzeOpts) -> Result<CmdResult, CliError> {
    let rule = load_rules(&opts.rules)?;
    let f = parse_pattern(&opts.init_re, rule.alphabet().clone()).map_err(usage)?;
    let (_, traces) = explore_orbits(&rule, &f, opts.budgets)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let configs: Vec<_> = traces
        .iter()
        .flat_map(|t| t.configs.iter().cloned())
        .collect();
    let report = check_width_growth(&rule, &configs)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let body = json!({
        "bound": report.bound,
        "interval_contained": report.interval_contained,
        "max_delta": report.max_delta,
        "within_bound": report.within_bound,
    });
    let out = format!("{body:#}\n");
    if report.within_bound && report.interval_contained {
        Ok(CmdResult::ok(out))
    } else {
        Ok(CmdResult::flagged(out))
    }
}

#[derive(Debug, Clone)]
pub struct SpreadingOpts {
    pub rules: PathBuf,
    pub symbol: String,
    pub init_re: Option<String>,
    pub budgets: Budgets,
}

pub fn cmd_analyze_spreading(opts: &SpreadingOpts) -> Result<CmdResult, CliError> {
    let rule = load_rules(&opts.rules)?;
    let sym = rule
        .alphabet()
        .lookup(&opts.symbol)
        .ok_or_else(|| usage(format!("unknown symbol `{}`", opts.symbol)))?;
    let (scope_name, report) = match &opts.init_re {
        None => (
            "all-windows",
            classify_gliders(&rule, FnScope::All).map_err(usage)?,
        ),
        Some(pattern) => {
            let f = parse_pattern(pattern, rule.alphabet().clone()).map_err(usage)?;
            let fns = feasible_neighborhoods(&rule, &f, opts.budgets)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            (
                "feasible",
                classify_gliders(&rule, FnScope::Feasible(&fns))
                    .map_err(|e| CliError::Runtime(e.to_string()))?,
            )
        }
    };
    let persistent = if opts.init_re.is_none() {
        report.persistent()
    } else {
        report.i_persistent()
    };
    let velocities: Vec<i64> = persistent
        .iter()
        .filter(|g| g.value == sym)
        .map(|g| g.velocity)
        .collect();
    let class = match classify_spreading(&persistent, sym) {
        Spreading::Right { speed } => format!("right-spreading (speed {speed})"),
        Spreading::Left { speed } => format!("left-spreading (speed {speed})"),
        Spreading::TwoWay => "two-way spreading".to_string(),
        Spreading::Shift => "shift-spreading".to_string(),
        Spreading::None => "not a spreading state".to_string(),
    };
    let body = json!({
        "classification": class,
        "scope": scope_name,
        "symbol": opts.symbol,
        "velocities": velocities,
    });
    Ok(CmdResult::ok(format!("{body:#}\n")))
}

#[derive(Debug, Clone)]
pub struct SafetyOpts {
    pub rules: PathBuf,
    pub init_re: String,
    pub bad_re: String,
    pub budgets: Budgets,
}

pub fn cmd_safety(opts: &SafetyOpts) -> Result<CmdResult, CliError> {
    let rule = load_rules(&opts.rules)?;
    let f = parse_pattern(&opts.init_re, rule.alphabet().clone()).map_err(usage)?;
    let bad = parse_pattern(&opts.bad_re, rule.alphabet().clone()).map_err(usage)?;
    let result = safety_check(&rule, &f, &bad, opts.budgets)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let ab = rule.alphabet();
    match &result.status {
        SafetyStatus::Witness { source, step, word } => {
            let body = json!({
                "status": "witness",
                "source": ab.render_word(source),
                "step": step,
                "word": ab.render_word(word),
            });
            Ok(CmdResult::flagged(format!("{body:#}\n")))
        }
        SafetyStatus::BoundedSafe => {
            let body = json!({
                "status": "bounded-safe",
                "max_steps": result.budgets.max_steps,
                "max_word_len": result.budgets.max_word_len,
                "max_width": format!("{}", result.budgets.max_width),
            });
            Ok(CmdResult::ok(format!("{body:#}\n")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runtime::with_threads;

    fn tmp_dir(tag: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("calang-cli-{tag}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        dir
    }

    fn exported_rules(tag: &str, name: &str) -> PathBuf {
        let dir = tmp_dir(tag);
        cmd_construction_export(&ExportTarget::Builtin(name.into()), &dir).unwrap();
        dir.join(format!("{name}.rules"))
    }

    #[test]
    fn simulate_renders_the_counting_diagram() {
        let rules = exported_rules("sim", "anbn");
        let result = cmd_simulate(&SimulateOpts {
            rules,
            init: Some("ab".into()),
            init_re: None,
            init_re_max_len: 12,
            steps: 2,
            format: RenderFormat::Ascii,
            out: None,
            viewport: None,
            glyphs: BTreeMap::new(),
            max_width: None,
        })
        .unwrap();
        assert_eq!(result.stdout, "..ab..\n.aabb.\naaabbb\n");
        assert_eq!(result.exit_code(), EXIT_OK);
    }

    #[test]
    fn simulate_zero_steps_is_a_single_row() {
        let rules = exported_rules("sim0", "anbn");
        let result = cmd_simulate(&SimulateOpts {
            rules,
            init: Some("ab".into()),
            init_re: None,
            init_re_max_len: 12,
            steps: 0,
            format: RenderFormat::Ascii,
            out: None,
            viewport: None,
            glyphs: BTreeMap::new(),
            max_width: None,
        })
        .unwrap();
        assert_eq!(result.stdout, "ab\n");
    }

    #[test]
    fn simulate_reports_undefined_neighborhoods_as_violation() {
        let rules = exported_rules("simbad", "anbn");
        let err = cmd_simulate(&SimulateOpts {
            rules,
            init: Some("ba".into()),
            init_re: None,
            init_re_max_len: 12,
            steps: 2,
            format: RenderFormat::Ascii,
            out: None,
            viewport: None,
            glyphs: BTreeMap::new(),
            max_width: None,
        })
        .unwrap_err();
        assert_eq!(err.exit_code(), EXIT_VIOLATION);
        assert!(err.to_string().contains("cell"));
    }

    #[test]
    fn lang_jsonl_matches_the_evolution() {
        let rules = exported_rules("lang", "anbn");
        let result = cmd_lang(&LangOpts {
            rules,
            init_re: "ab".into(),
            budgets: Budgets::steps(3),
            out: None,
        })
        .unwrap();
        let lines: Vec<&str> = result.stdout.lines().collect();
        assert_eq!(lines.len(), 5, "4 words + meta: {lines:?}");
        assert!(lines[0].contains("\"word\":\"ab\""));
        assert!(lines[3].contains("\"word\":\"aaaabbbb\""));
    }

    #[test]
    fn gliders_check_flags_the_xor_rule() {
        let rules = exported_rules("check90", "rule90");
        let result = cmd_gliders_check(&GlidersOpts {
            rules,
            init_re: None,
            budgets: Budgets::steps(8),
            out: None,
        })
        .unwrap();
        assert_eq!(result.exit_code(), EXIT_VIOLATION);
        assert!(result.stdout.contains("(ii) coverage: FAIL"));
        assert!(result.stdout.contains("1 1 1"));
    }

    #[test]
    fn derive_check_compile_round_trip() {
        let dir = tmp_dir("roundtrip");
        let rules = exported_rules("roundtrip", "anbn");
        let derived = dir.join("anbn.gliders");
        let opts = GlidersOpts {
            rules: rules.clone(),
            init_re: Some("ab".into()),
            budgets: Budgets::steps(10),
            out: Some(derived.clone()),
        };
        let result = cmd_gliders_derive(&opts).unwrap();
        assert!(result.stdout.contains("glider a -1"));
        assert!(result.stdout.contains("glider b 1"));
        let check = cmd_gliders_check(&opts).unwrap();
        assert_eq!(check.exit_code(), EXIT_OK, "{}", check.stdout);

        let compiled = dir.join("anbn-compiled.rules");
        cmd_gliders_compile(&derived, &compiled).unwrap();
        let original = load_rules(&rules).unwrap();
        let rebuilt = load_rules(&compiled).unwrap();
        for (w, v) in original.entries() {
            assert_eq!(rebuilt.get(w), Some(v));
        }
    }

    #[test]
    fn safety_witness_and_bounded_safe() {
        let rules = exported_rules("safety", "anbn");
        let witness = cmd_safety(&SafetyOpts {
            rules: rules.clone(),
            init_re: "ab".into(),
            bad_re: "aab+".into(),
            budgets: Budgets::steps(50),
        })
        .unwrap();
        assert_eq!(witness.exit_code(), EXIT_VIOLATION);
        assert!(witness.stdout.contains("\"word\": \"aabb\""));
        let safe = cmd_safety(&SafetyOpts {
            rules,
            init_re: "ab".into(),
            bad_re: "a+b+a".into(),
            budgets: Budgets::steps(50),
        })
        .unwrap();
        assert_eq!(safe.exit_code(), EXIT_OK);
    }

    #[test]
    fn analyze_width_and_diff_bound() {
        let rules = exported_rules("analyze", "anbn");
        let width = cmd_analyze_width(&AnalyzeOpts {
            rules: rules.clone(),
            init_re: "ab".into(),
            budgets: Budgets::steps(6),
        })
        .unwrap();
        assert_eq!(width.exit_code(), EXIT_OK);
        let diff = cmd_analyze_diff_bound(&AnalyzeOpts {
            rules,
            init_re: "ab".into(),
            budgets: Budgets::steps(6),
        })
        .unwrap();
        assert!(diff.stdout.contains("\"bound\": 2"));
        assert!(diff.stdout.contains("\"radius_lower_bound\": 1"));
    }

    #[test]
    fn spreading_classification_over_all_windows() {
        let dir = tmp_dir("spreading");
        cmd_construction_export(
            &ExportTarget::ShiftConcat {
                word: "a".into(),
                shift: 0,
                dir: Direction::Right,
            },
            &dir,
        )
        .unwrap();
        let rules = dir.join("shift_concat_a__0_Right_.rules");
        let result = cmd_analyze_spreading(&SpreadingOpts {
            rules,
            symbol: "a".into(),
            init_re: Some("a".into()),
            budgets: Budgets::steps(8),
        })
        .unwrap();
        assert!(result.stdout.contains("right-spreading (speed 1)"));
    }

    #[test]
    fn outputs_are_identical_across_pool_sizes() {
        let rules = exported_rules("threads", "anbmc");
        let opts = LangOpts {
            rules,
            init_re: "a*abc".into(),
            budgets: Budgets::new(8, 10, 4096),
            out: None,
        };
        let one = with_threads(1, || cmd_lang(&opts).unwrap().stdout);
        let eight = with_threads(8, || cmd_lang(&opts).unwrap().stdout);
        assert_eq!(one, eight);
    }
}
