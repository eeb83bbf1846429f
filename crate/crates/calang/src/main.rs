//! `calang`: simulate rule tables, sample generated languages, derive
//! and compile glider systems, run structural analyses and bounded
//! safety checks. See `calang <command> --help`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use calang::cli::{self, CliError, CmdResult, ExportTarget};
use calang::constructions::Direction;
use calang::language::Budgets;
use calang::render::RenderFormat;
use calang::runtime;

#[derive(Parser)]
#[command(name = "calang", version, about = "cellular automata as language generators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// Evolution steps per initial configuration
    #[arg(long, default_value_t = 16)]
    max_steps: usize,
    /// Length cap on enumerated initial words
    #[arg(long, default_value_t = 10)]
    max_word_len: usize,
    /// Width cap on configurations
    #[arg(long, default_value_t = 65536)]
    max_width: usize,
}

impl BudgetArgs {
    fn budgets(&self) -> Budgets {
        Budgets::new(self.max_steps, self.max_word_len, self.max_width)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Render a space-time diagram of one orbit
    Simulate {
        rules: PathBuf,
        /// Initial word (literal)
        #[arg(long)]
        init: Option<String>,
        /// Pattern; the first matching word is simulated
        #[arg(long)]
        init_re: Option<String>,
        #[arg(long, default_value_t = 12)]
        init_re_max_len: usize,
        #[arg(long, default_value_t = 8)]
        steps: usize,
        /// ascii or pgm
        #[arg(long, default_value = "ascii")]
        format: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Grid viewport `lo:hi` (default: union of row intervals)
        #[arg(long)]
        viewport: Option<String>,
        /// Glyph overrides `token=char,token=char`
        #[arg(long)]
        glyphs: Option<String>,
        #[arg(long)]
        max_width: Option<usize>,
    },
    /// Sample the generated language as JSON lines
    Lang {
        rules: PathBuf,
        #[arg(long)]
        init_re: String,
        #[command(flatten)]
        budgets: BudgetArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Derive, check or compile glider systems
    Gliders {
        #[command(subcommand)]
        sub: GlidersCommand,
    },
    /// List or export built-in and parametric constructions
    Construction {
        #[command(subcommand)]
        sub: ConstructionCommand,
    },
    /// Structural analyses over sampled orbits
    Analyze {
        #[command(subcommand)]
        sub: AnalyzeCommand,
    },
    /// Bounded reachability of a regular bad set
    Safety {
        rules: PathBuf,
        #[arg(long)]
        init_re: String,
        #[arg(long)]
        bad_re: String,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
}

#[derive(Subcommand)]
enum GlidersCommand {
    /// Print (and optionally write) the derived glider system
    Derive {
        rules: PathBuf,
        /// Initial pattern for the feasible windows; omit for total
        /// rules to quantify over all windows
        #[arg(long)]
        init_re: Option<String>,
        #[command(flatten)]
        budgets: BudgetArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check the three sound-derivation conditions
    Check {
        rules: PathBuf,
        #[arg(long)]
        init_re: Option<String>,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// Compile a `.gliders` file to a `.rules` table
    Compile {
        gliders: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum ConstructionCommand {
    List,
    /// Write the `.rules` (and `.gliders`, for builders) of a
    /// construction
    Export {
        /// A built-in name, or one of shift_concat, two_block,
        /// nested_counters, block_repetition with its flags
        name: String,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        shift: Option<i64>,
        /// left or right
        #[arg(long)]
        dir: Option<String>,
        #[arg(long)]
        w1: Option<String>,
        #[arg(long)]
        w2: Option<String>,
        #[arg(long)]
        radius: Option<usize>,
        /// Comma-separated block words
        #[arg(long)]
        words: Option<String>,
        /// Comma-separated linear exponents, e.g. `2n,n+1`
        #[arg(long)]
        exprs: Option<String>,
    },
}

#[derive(Subcommand)]
enum AnalyzeCommand {
    /// Difference profile and the radius lower bound it implies
    DiffBound {
        rules: PathBuf,
        #[arg(long)]
        init_re: String,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// Per-step width growth against the 2r bound
    Width {
        rules: PathBuf,
        #[arg(long)]
        init_re: String,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// Spreading classification of one symbol
    Spreading {
        rules: PathBuf,
        #[arg(long)]
        symbol: String,
        /// Restrict to feasible windows of this initial pattern
        /// (default: all windows, which needs a total rule)
        #[arg(long)]
        init_re: Option<String>,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
}

fn parse_viewport(text: &str) -> Result<(i64, i64), CliError> {
    let err = || CliError::Usage(format!("bad viewport `{text}`; expected `lo:hi`"));
    let (lo, hi) = text.split_once(':').ok_or_else(err)?;
    let lo = lo.trim().parse().map_err(|_| err())?;
    let hi = hi.trim().parse().map_err(|_| err())?;
    if lo > hi {
        return Err(err());
    }
    Ok((lo, hi))
}

fn parse_glyphs(text: &str) -> Result<BTreeMap<String, char>, CliError> {
    let mut map = BTreeMap::new();
    for part in text.split(',') {
        let (token, glyph) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("bad glyph override `{part}`")))?;
        let mut chars = glyph.chars();
        match (chars.next(), chars.next()) {
            (Some(g), None) => {
                map.insert(token.trim().to_string(), g);
            }
            _ => return Err(CliError::Usage(format!("glyph must be one char: `{part}`"))),
        }
    }
    Ok(map)
}

fn parse_direction(text: &str) -> Result<Direction, CliError> {
    match text {
        "left" => Ok(Direction::Left),
        "right" => Ok(Direction::Right),
        other => Err(CliError::Usage(format!("bad direction `{other}`"))),
    }
}

fn export_target(
    name: String,
    word: Option<String>,
    shift: Option<i64>,
    dir: Option<String>,
    w1: Option<String>,
    w2: Option<String>,
    radius: Option<usize>,
    words: Option<String>,
    exprs: Option<String>,
) -> Result<ExportTarget, CliError> {
    let missing = |flag: &str| CliError::Usage(format!("{name} needs {flag}"));
    match name.as_str() {
        "shift_concat" => Ok(ExportTarget::ShiftConcat {
            word: word.ok_or_else(|| missing("--word"))?,
            shift: shift.ok_or_else(|| missing("--shift"))?,
            dir: parse_direction(&dir.ok_or_else(|| missing("--dir"))?)?,
        }),
        "two_block" => Ok(ExportTarget::TwoBlock {
            w1: w1.ok_or_else(|| missing("--w1"))?,
            w2: w2.ok_or_else(|| missing("--w2"))?,
        }),
        "nested_counters" => Ok(ExportTarget::NestedCounters {
            radius: radius.ok_or_else(|| missing("--radius"))?,
        }),
        "block_repetition" => Ok(ExportTarget::BlockRepetition {
            words: words
                .ok_or_else(|| missing("--words"))?
                .split(',')
                .map(str::to_string)
                .collect(),
            exprs: exprs
                .ok_or_else(|| missing("--exprs"))?
                .split(',')
                .map(str::to_string)
                .collect(),
        }),
        _ => Ok(ExportTarget::Builtin(name)),
    }
}

fn run(cli: Cli) -> Result<CmdResult, CliError> {
    match cli.command {
        Command::Simulate {
            rules,
            init,
            init_re,
            init_re_max_len,
            steps,
            format,
            out,
            viewport,
            glyphs,
            max_width,
        } => {
            let format = match format.as_str() {
                "ascii" => RenderFormat::Ascii,
                "pgm" => RenderFormat::Pgm,
                other => return Err(CliError::Usage(format!("bad format `{other}`"))),
            };
            let viewport = viewport.as_deref().map(parse_viewport).transpose()?;
            let glyphs = match glyphs {
                Some(text) => parse_glyphs(&text)?,
                None => BTreeMap::new(),
            };
            cli::cmd_simulate(&cli::SimulateOpts {
                rules,
                init,
                init_re,
                init_re_max_len,
                steps,
                format,
                out,
                viewport,
                glyphs,
                max_width,
            })
        }
        Command::Lang {
            rules,
            init_re,
            budgets,
            out,
        } => cli::cmd_lang(&cli::LangOpts {
            rules,
            init_re,
            budgets: budgets.budgets(),
            out,
        }),
        Command::Gliders { sub } => match sub {
            GlidersCommand::Derive {
                rules,
                init_re,
                budgets,
                out,
            } => cli::cmd_gliders_derive(&cli::GlidersOpts {
                rules,
                init_re,
                budgets: budgets.budgets(),
                out,
            }),
            GlidersCommand::Check {
                rules,
                init_re,
                budgets,
            } => cli::cmd_gliders_check(&cli::GlidersOpts {
                rules,
                init_re,
                budgets: budgets.budgets(),
                out: None,
            }),
            GlidersCommand::Compile { gliders, out } => cli::cmd_gliders_compile(&gliders, &out),
        },
        Command::Construction { sub } => match sub {
            ConstructionCommand::List => Ok(cli::cmd_construction_list()),
            ConstructionCommand::Export {
                name,
                out_dir,
                word,
                shift,
                dir,
                w1,
                w2,
                radius,
                words,
                exprs,
            } => {
                let target =
                    export_target(name, word, shift, dir, w1, w2, radius, words, exprs)?;
                cli::cmd_construction_export(&target, &out_dir)
            }
        },
        Command::Analyze { sub } => match sub {
            AnalyzeCommand::DiffBound {
                rules,
                init_re,
                budgets,
            } => cli::cmd_analyze_diff_bound(&cli::AnalyzeOpts {
                rules,
                init_re,
                budgets: budgets.budgets(),
            }),
            AnalyzeCommand::Width {
                rules,
                init_re,
                budgets,
            } => cli::cmd_analyze_width(&cli::AnalyzeOpts {
                rules,
                init_re,
                budgets: budgets.budgets(),
            }),
            AnalyzeCommand::Spreading {
                rules,
                symbol,
                init_re,
                budgets,
            } => cli::cmd_analyze_spreading(&cli::SpreadingOpts {
                rules,
                symbol,
                init_re,
                budgets: budgets.budgets(),
            }),
        },
        Command::Safety {
            rules,
            init_re,
            bad_re,
            budgets,
        } => cli::cmd_safety(&cli::SafetyOpts {
            rules,
            init_re,
            bad_re,
            budgets: budgets.budgets(),
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = runtime::with_env_threads(|| run(cli));
    match outcome {
        Ok(result) => {
            print!("{}", result.stdout);
            ExitCode::from(result.exit_code())
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
