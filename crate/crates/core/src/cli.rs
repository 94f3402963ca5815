//! Command-line front end. Data goes to `out`, diagnostics to `err`.
//!
//! Exit codes: 0 yes or success, 1 no, 2 unknown, 3 input error, 4 resource
//! limit.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::circuit::{
    check_repeatable, check_transient, corrupted_and_library, one_shot_wire_ca, reference_wire_ca, AssemblySpec,
    Boundary, BlockLibrary, WIRE_BLANK,
};
use crate::config::{Config, FinitePattern};
use crate::decision::{column_language, cycle_gt_phi, cycle_structure, pred, ubpred_bounded, ubpred_zigzag};
use crate::engine::{evolve_window, iterate_periodic, step_biperiodic};
use crate::error::{CaError, Result};
use crate::freezing::{check_freezing, find_freezing_order, FreezingSynthesis, StateOrder};
use crate::intrinsic::{check_simulation, search_strong_simulation, BlockShape, SimulationWitness};
use crate::io::library::parse_library;
use crate::io::render::{render_spacetime, RenderSpec};
use crate::io::text::{parse_config, parse_word, serialize_config};
use crate::io::resolve_rule;
use crate::limits::Limits;
use crate::phi::PhiSpec;
use crate::rule::CaRule;

const FORMATS: &str = "\
File formats (`#` starts a comment everywhere):

  Rule file
    dimension <1|2>
    states <name> <name> ...
    neighborhood <dx> ...            (2D: <dx>,<dy> ...; dy > 0 is north)
    rule <s_1> ... <s_|V|> -> <s>    (zero or more; window in neighborhood order)
    default -> <state|unchanged>     (optional; `unchanged` needs offset 0)

  Rule names: a rule file path or one of rule110, zigzag:<rule>,
  signed-majority, identity, shift, not, or-spread, xor, wire-ca,
  wire-ca-one-shot.

  Configuration file (exactly one form; words are space-separated state
  names, or unseparated when every name is one character)
    left: <word>  mid: <word>  right: <word>  origin: <int>   (one per line; bi-periodic)
    period: <word>                                           (1D periodic)
    grid:     followed by rows, north first                  (2D periodic)
    window: <word>                                           (1D centered pattern)
    pattern:  followed by rows, north first                  (2D centered pattern)

  State order file: lines `<state> <= <state>`.

  Witness file
    m: <int> ...
    t: <int>
    blocks: (<s>,<s>,...) ...
    pi:
    (<s>,<s>,...) -> <state>

  Block library directory
    meta:      N: <side>  delta: <steps>  alphabet: <rule name or file>
    *.block:   gate: <AND|OR|CROSS|NOP|FORK|WIRE(i,o)>  u: <4 bits NESW>
               then N rows of state names, north first

  Reports: `verdict: yes|no|unknown`, `witness_time:`, `transient:`,
  `cycle:`, `note:` lines.

Exit codes: 0 yes/success, 1 no, 2 unknown, 3 input error, 4 resource limit.";

#[derive(Parser, Debug)]
#[command(name = "cellauto", version, about = "Cellular automata simulation and verification", after_help = FORMATS)]
struct Cli {
    #[command(flatten)]
    limits: LimitArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// Largest dense transition table.
    #[arg(long, global = true, default_value_t = Limits::default().max_table_entries)]
    max_table_entries: u64,
    /// Largest number of windows enumerated by exhaustive checks.
    #[arg(long, global = true, default_value_t = Limits::default().max_windows)]
    max_windows: u64,
    /// Largest configuration or image, in cells.
    #[arg(long, global = true, default_value_t = Limits::default().max_cells)]
    max_cells: usize,
    /// Largest number of configurations stored by cycle detection.
    #[arg(long, global = true, default_value_t = Limits::default().max_orbit_states)]
    max_orbit_states: usize,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_table_entries: self.max_table_entries,
            max_windows: self.max_windows,
            max_cells: self.max_cells,
            max_orbit_states: self.max_orbit_states,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Step a configuration and print the result.
    Simulate {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        steps: usize,
        /// Print every intermediate configuration.
        #[arg(long)]
        every: bool,
    },
    /// Write a space-time diagram (1D) or frames (2D) as plain PGM.
    Render {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        steps: usize,
        /// Time 0 on the bottom row.
        #[arg(long)]
        time_up: bool,
        /// First cell shown for bi-periodic configurations.
        #[arg(long, allow_hyphen_values = true, requires = "to")]
        from: Option<i64>,
        /// Last cell shown for bi-periodic configurations.
        #[arg(long, allow_hyphen_values = true, requires = "from")]
        to: Option<i64>,
        /// Output file; 2D frames go to `<out>_<t>.pgm`. Defaults to stdout for 1D.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Center state after t steps of a pattern over the radius r·t ball.
    Pred {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        t: usize,
        /// 1D pattern as a word.
        #[arg(long, conflicts_with = "pattern")]
        window: Option<String>,
        /// Pattern file (`window:` or `pattern:`).
        #[arg(long)]
        pattern: Option<PathBuf>,
    },
    /// Bounded search for a state at cell 0 (yes or unknown).
    Ubpred {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(long)]
        horizon: u64,
    },
    /// Exact reachability for the zigzag automaton over an inner rule.
    UbpredZigzag {
        /// Inner rule (1D, radius 1).
        #[arg(long)]
        inner: String,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        state: String,
    },
    /// Transient and cycle length of a periodic orbit.
    Cycle {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        config: PathBuf,
        /// Threshold, e.g. `3*n^2` or `2^n`; answers whether cycle > phi(n).
        #[arg(long)]
        phi: Option<String>,
    },
    /// k-step column words of width n.
    ColumnLang {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Synthesize a freezing order, or check a given one.
    CheckFreezing {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        order: Option<PathBuf>,
    },
    /// Check a simulation witness of F by G.
    VerifySim {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        witness: PathBuf,
        /// Block sizes applied to F (two-sided relation).
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        f_m: Option<Vec<usize>>,
        /// Time factor applied to F.
        #[arg(long, default_value_t = 1)]
        f_t: usize,
    },
    /// Search for a strong simulation of F by G.
    SearchSim {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        m_max: usize,
        #[arg(long)]
        t_max: usize,
        /// Also write the witness here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check gate blocks on random assemblies.
    CheckCircuit {
        /// Library directory.
        #[arg(long, conflicts_with = "builtin")]
        library: Option<PathBuf>,
        /// Built-in library.
        #[arg(long, value_enum)]
        builtin: Option<BuiltinLibrary>,
        #[arg(long, value_enum, default_value_t = Mode::Repeatable)]
        mode: Mode,
        #[arg(long, default_value_t = 4)]
        rounds: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        min_side: usize,
        #[arg(long, default_value_t = 4)]
        max_side: usize,
        #[arg(long, value_enum, default_value_t = BoundaryArg::Mixed)]
        boundary: BoundaryArg,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[allow(clippy::enum_variant_names)]
enum BuiltinLibrary {
    WireCa,
    WireCaOneShot,
    WireCaCorruptedAnd,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Mode {
    Transient,
    Repeatable,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BoundaryArg {
    Torus,
    Padded,
    Mixed,
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    3
                }
            };
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CaError::Io(format!("{}: {e}", path.display())))
}

fn load_config(path: &Path, rule: &CaRule) -> Result<Config> {
    parse_config(&read(path)?, rule).map_err(|e| match e {
        CaError::Parse { line, column, message } => CaError::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

fn state_arg(rule: &CaRule, name: &str) -> Result<u32> {
    rule.state_index(name)
        .ok_or_else(|| CaError::input(format!("unknown state {name:?}")))
}

fn io_err(e: std::io::Error) -> CaError {
    CaError::Io(e.to_string())
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let limits = cli.limits.limits();
    match &cli.command {
        Command::Simulate { rule, config, steps, every } => {
            let rule = resolve_rule(rule)?;
            let mut c = load_config(config, &rule)?;
            if *every {
                writeln!(out, "# t = 0\n{}", serialize_config(&c, &rule)).map_err(io_err)?;
            }
            for t in 1..=*steps {
                c = match c {
                    Config::Periodic(p) => Config::Periodic(iterate_periodic(&rule, &p, 1)?),
                    Config::BiPeriodic(b) => {
                        let next = step_biperiodic(&rule, &b)?;
                        if next.mid().len() > limits.max_cells {
                            return Err(CaError::resource(format!("middle section exceeds {} cells", limits.max_cells)));
                        }
                        Config::BiPeriodic(next)
                    }
                    Config::Finite(u) => Config::Finite(evolve_window(&rule, &u, 1).map_err(|_| {
                        CaError::input(format!("pattern too small for {steps} steps"))
                    })?),
                };
                if *every {
                    writeln!(out, "# t = {t}\n{}", serialize_config(&c, &rule)).map_err(io_err)?;
                }
            }
            if !*every {
                write!(out, "{}", serialize_config(&c, &rule)).map_err(io_err)?;
            }
            Ok(0)
        }
        Command::Render { rule, config, steps, time_up, from, to, out: dest } => {
            let rule = resolve_rule(rule)?;
            let c = load_config(config, &rule)?;
            let spec = RenderSpec {
                time_up: *time_up,
                window: from.zip(*to),
            };
            let images = render_spacetime(&rule, &c, *steps, &spec, &limits)?;
            if c.dimension() == 2 {
                let dest = dest
                    .as_ref()
                    .ok_or_else(|| CaError::input("2D rendering writes frames and needs --out"))?;
                for (t, img) in images.iter().enumerate() {
                    let path = PathBuf::from(format!("{}_{t:04}.pgm", dest.display()));
                    fs::write(&path, img)?;
                }
                writeln!(err, "wrote {} frames", images.len()).map_err(io_err)?;
            } else if let Some(dest) = dest {
                fs::write(dest, &images[0])?;
            } else {
                write!(out, "{}", images[0]).map_err(io_err)?;
            }
            Ok(0)
        }
        Command::Pred { rule, t, window, pattern } => {
            let rule = resolve_rule(rule)?;
            let u = match (window, pattern) {
                (Some(w), _) => FinitePattern::new_1d(parse_word(w, &rule, 1, 1)?)?,
                (None, Some(p)) => match load_config(p, &rule)? {
                    Config::Finite(u) => u,
                    _ => return Err(CaError::input("the pattern file must hold `window:` or `pattern:`")),
                },
                (None, None) => return Err(CaError::input("pass --window or --pattern")),
            };
            let s = pred(&rule, *t, &u)?;
            writeln!(out, "{}", rule.state_name(s)).map_err(io_err)?;
            Ok(0)
        }
        Command::Ubpred { rule, config, state, horizon } => {
            let rule = resolve_rule(rule)?;
            let Config::BiPeriodic(c) = load_config(config, &rule)? else {
                return Err(CaError::input("ubpred needs a bi-periodic configuration"));
            };
            let q = state_arg(&rule, state)?;
            let rep = ubpred_bounded(&rule, &c, q, *horizon, &limits)?;
            write!(out, "{}", rep.to_text()).map_err(io_err)?;
            Ok(rep.verdict.exit_code())
        }
        Command::UbpredZigzag { inner, config, state } => {
            let inner = resolve_rule(inner)?;
            let z = crate::constructions::zigzag(&inner)?;
            let Config::BiPeriodic(c) = load_config(config, &z)? else {
                return Err(CaError::input("ubpred-zigzag needs a bi-periodic configuration"));
            };
            let q = state_arg(&z, state)?;
            let rep = ubpred_zigzag(&inner, &c, q, &limits)?;
            write!(out, "{}", rep.to_text()).map_err(io_err)?;
            Ok(rep.verdict.exit_code())
        }
        Command::Cycle { rule, config, phi } => {
            let rule = resolve_rule(rule)?;
            let Config::Periodic(c) = load_config(config, &rule)? else {
                return Err(CaError::input("cycle needs a periodic configuration"));
            };
            match phi {
                Some(p) => {
                    let phi: PhiSpec = p.parse()?;
                    let rep = cycle_gt_phi(&rule, &c, &phi, &limits)?;
                    write!(out, "{}", rep.to_text()).map_err(io_err)?;
                    Ok(rep.verdict.exit_code())
                }
                None => {
                    let info = cycle_structure(&rule, &c, &limits)?;
                    writeln!(out, "transient: {}\ncycle: {}", info.transient, info.cycle).map_err(io_err)?;
                    Ok(0)
                }
            }
        }
        Command::ColumnLang { rule, n, k } => {
            let rule = resolve_rule(rule)?;
            let words = column_language(&rule, *n, *k, &limits)?;
            write_words(out, &rule, &words, *n).map_err(io_err)?;
            writeln!(err, "{} words", words.len()).map_err(io_err)?;
            Ok(0)
        }
        Command::CheckFreezing { rule, order } => {
            let rule = resolve_rule(rule)?;
            match order {
                Some(path) => {
                    let order = StateOrder::from_text(&read(path)?, &rule)?;
                    let rep = check_freezing(&rule, &order, &limits)?;
                    write!(out, "{}", rep.to_text()).map_err(io_err)?;
                    Ok(rep.verdict.exit_code())
                }
                None => match find_freezing_order(&rule, &limits)? {
                    FreezingSynthesis::Freezing(o) => {
                        writeln!(out, "verdict: yes").map_err(io_err)?;
                        write!(out, "{}", o.to_text(&rule)).map_err(io_err)?;
                        Ok(0)
                    }
                    FreezingSynthesis::NotFreezing { cycle } => {
                        let names: Vec<&str> = cycle.iter().map(|&s| rule.state_name(s)).collect();
                        writeln!(out, "verdict: no\ncycle: {}", names.join(" <= ")).map_err(io_err)?;
                        Ok(1)
                    }
                },
            }
        }
        Command::VerifySim { f, g, witness, f_m, f_t } => {
            let (fr, gr) = (resolve_rule(f)?, resolve_rule(g)?);
            let w = SimulationWitness::from_text(&read(witness)?, &fr, &gr)?;
            let shape_f = match f_m {
                Some(m) => BlockShape::new(m.clone(), *f_t)?,
                None => BlockShape::new(vec![1; fr.dimension()], *f_t)?,
            };
            if shape_f.volume() != 1 {
                return Err(CaError::input(
                    "witness files name F's states directly; rescaled F needs block-state names",
                ));
            }
            let rep = check_simulation(&fr, &shape_f, &gr, &w.shape, &w.pi, &limits)?;
            write!(out, "{}", rep.to_text()).map_err(io_err)?;
            Ok(rep.verdict.exit_code())
        }
        Command::SearchSim { f, g, m_max, t_max, out: dest } => {
            let (fr, gr) = (resolve_rule(f)?, resolve_rule(g)?);
            let rep = search_strong_simulation(&fr, &gr, *m_max, *t_max, &limits)?;
            for s in &rep.exhausted {
                writeln!(err, "exhausted {s}").map_err(io_err)?;
            }
            for (s, why) in &rep.skipped {
                writeln!(err, "skipped {s}: {why}").map_err(io_err)?;
            }
            match rep.witness {
                Some(w) => {
                    let text = w.to_text(&fr, &gr);
                    write!(out, "{text}").map_err(io_err)?;
                    if let Some(d) = dest {
                        fs::write(d, &text)?;
                    }
                    Ok(0)
                }
                None if rep.skipped.is_empty() => {
                    writeln!(out, "verdict: no\nnote: no witness within m <= {m_max}, t <= {t_max}").map_err(io_err)?;
                    Ok(1)
                }
                None => {
                    writeln!(out, "verdict: unknown\nnote: {} shape(s) skipped at resource limits", rep.skipped.len())
                        .map_err(io_err)?;
                    Ok(4)
                }
            }
        }
        Command::CheckCircuit {
            library,
            builtin,
            mode,
            rounds,
            count,
            min_side,
            max_side,
            boundary,
            seed,
        } => {
            let (rule, lib, blank): (CaRule, BlockLibrary, u32) = match (library, builtin) {
                (Some(dir), _) => {
                    let (r, l) = parse_library(dir)?;
                    let blank = r.state_index(".").unwrap_or(0);
                    (r, l, blank)
                }
                (None, Some(BuiltinLibrary::WireCa)) | (None, None) => {
                    let (r, l) = reference_wire_ca();
                    (r, l, WIRE_BLANK)
                }
                (None, Some(BuiltinLibrary::WireCaOneShot)) => {
                    let (r, l) = one_shot_wire_ca();
                    (r, l, WIRE_BLANK)
                }
                (None, Some(BuiltinLibrary::WireCaCorruptedAnd)) => (reference_wire_ca().0, corrupted_and_library(), WIRE_BLANK),
            };
            let spec = AssemblySpec {
                count: *count,
                min_side: *min_side,
                max_side: *max_side,
                boundary: match boundary {
                    BoundaryArg::Torus => Some(Boundary::Torus),
                    BoundaryArg::Padded => Some(Boundary::Padded),
                    BoundaryArg::Mixed => None,
                },
                seed: *seed,
            };
            let rep = match mode {
                Mode::Transient => check_transient(&rule, &lib, &spec, blank)?,
                Mode::Repeatable => check_repeatable(&rule, &lib, &spec, *rounds, blank)?,
            };
            write!(out, "{}", rep.to_text()).map_err(io_err)?;
            Ok(rep.verdict.exit_code())
        }
    }
}

fn write_words(out: &mut dyn Write, rule: &CaRule, words: &BTreeSet<Vec<u32>>, n: usize) -> std::io::Result<()> {
    for w in words {
        let rows: Vec<String> = w
            .chunks(n)
            .map(|r| r.iter().map(|&s| rule.state_name(s)).collect::<Vec<_>>().join(" "))
            .collect();
        writeln!(out, "{}", rows.join(" | "))?;
    }
    Ok(())
}
