//! `plathom`: link homology of plat diagrams from the command line.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use plathom::diagram::PlatWord;
use plathom::homology::moves::PlatMove;

mod cache;
mod commands;
mod config;
mod error;
mod report;
mod selftest;

use cache::{sha256_hex, Cache};
use commands::{read_word, Output, Params};
use config::FileConfig;
use error::CliError;
use report::{Meta, RunResult};

#[derive(Parser, Debug)]
#[command(name = "plathom", version, about = "Link homology of plat braid diagrams")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Default)]
struct Opts {
    /// Extra quantum gradings computed beyond the expected support.
    #[arg(long, global = true)]
    window_margin: Option<i64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// u-degree bound for the algebra suites.
    #[arg(long, global = true)]
    degree_bound: Option<usize>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Configuration file (default: ./plathom.conf).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Also write the structured result to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Table,
    JsonLike,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// δ-graded total homology.
    Total { word: String },
    /// (h, q)-graded E₂ page.
    E2 { word: String },
    /// Khovanov homology from the independent cube computation.
    Kh { word: String },
    /// E₂ against Khovanov, bigrading by bigrading.
    Compare { word: String },
    /// Homology and module structure of one complete resolution.
    Resolution {
        word: String,
        /// One 0/1 per crossing, in word order.
        #[arg(long)]
        bits: String,
    },
    /// Run a check suite.
    Check {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Run the acceptance corpus.
    Selftest,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MoveName {
    R1,
    R2,
    R3,
    TwistTop,
    TwistBottom,
    CapSwap,
    CupSwap,
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// d² = 0 for d₀ and for d₀ + d₁.
    D2 { word: String },
    /// MOY relations at a resolution (default: every crossing singular).
    Moy {
        word: String,
        #[arg(long)]
        bits: Option<String>,
    },
    /// Total homology of the word against a moved or given partner. Without
    /// `--move` or `--other`, runs RI and both twists.
    Invariance {
        word: String,
        #[arg(long = "move", value_enum)]
        mv: Option<MoveName>,
        /// Use the negative version of the move.
        #[arg(long)]
        negative: bool,
        /// Cup/cap pair for twists and swaps (1-based).
        #[arg(long, default_value_t = 1)]
        pair: usize,
        /// Position for RII and RIII.
        #[arg(long, default_value_t = 0)]
        at: usize,
        /// Letter inserted by RII.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        letter: i64,
        /// Compare against this diagram instead.
        #[arg(long)]
        other: Option<String>,
    },
    /// Strands algebra relations, associativity and the h isomorphism.
    Algebra {
        /// Only this n (default: relations for 1..=3, the rest for 1..=2).
        #[arg(long)]
        n: Option<usize>,
    },
    /// sl₁ homology: unlinks, and closures of a resolution.
    Sl1 {
        word: Option<String>,
        #[arg(long)]
        bits: Option<String>,
        #[arg(long)]
        unlink: Option<usize>,
    },
    /// Homology-level U-action identities (default: every resolution).
    UAction {
        word: String,
        #[arg(long)]
        bits: Option<String>,
    },
    /// Commutativity of the edge actions on cycles (default: every resolution).
    Commutativity {
        word: String,
        #[arg(long)]
        bits: Option<String>,
    },
}

/// Flags merged over the configuration file.
struct Settings {
    params: Params,
    format: Format,
    jobs: Option<usize>,
    no_cache: bool,
    output: Option<PathBuf>,
}

fn settings(opts: &Opts) -> Result<Settings, CliError> {
    let path = opts.config.clone().unwrap_or_else(|| PathBuf::from("plathom.conf"));
    let file = if opts.config.is_some() && !path.exists() {
        return Err(CliError::Io(format!("{}: no such file", path.display())));
    } else {
        FileConfig::load(&path)?
    };
    let format = match (opts.format, file.format.as_deref()) {
        (Some(f), _) => f,
        (None, Some(s)) => Format::from_str(s, false).map_err(|_| CliError::Config(format!("unknown format {s:?}")))?,
        (None, None) => Format::Table,
    };
    Ok(Settings {
        params: Params {
            margin: opts.window_margin.or(file.window_margin).unwrap_or(4),
            degree_bound: opts.degree_bound.or(file.degree_bound).unwrap_or(3),
        },
        format,
        jobs: opts.jobs.or(file.jobs),
        no_cache: opts.no_cache || file.no_cache.unwrap_or(false),
        output: opts.output.clone(),
    })
}

fn plat_move(mv: MoveName, negative: bool, pair: usize, at: usize, letter: i64) -> PlatMove {
    let positive = !negative;
    match mv {
        MoveName::R1 => PlatMove::R1 { positive },
        MoveName::R2 => PlatMove::R2 { at, letter },
        MoveName::R3 => PlatMove::R3 { at },
        MoveName::TwistTop => PlatMove::TwistTop { pair, positive },
        MoveName::TwistBottom => PlatMove::TwistBottom { pair, positive },
        MoveName::CapSwap => PlatMove::CapSwap { pair, positive },
        MoveName::CupSwap => PlatMove::CupSwap { pair, positive },
    }
}

/// A resolved request: its canonical description and how to compute it.
struct Request {
    command: String,
    input: Option<PlatWord>,
    params: BTreeMap<String, String>,
}

fn describe(cmd: &Command, p: Params) -> Result<Request, CliError> {
    let mut params = BTreeMap::from([("window-margin".to_string(), p.margin.to_string())]);
    let mut add = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            params.insert(k.to_string(), v);
        }
    };
    let (command, input) = match cmd {
        Command::Total { word } => ("total".to_string(), Some(read_word(word)?)),
        Command::E2 { word } => ("e2".into(), Some(read_word(word)?)),
        Command::Kh { word } => ("kh".into(), Some(read_word(word)?)),
        Command::Compare { word } => ("compare".into(), Some(read_word(word)?)),
        Command::Resolution { word, bits } => {
            add("bits", Some(bits.clone()));
            ("resolution".into(), Some(read_word(word)?))
        }
        Command::Selftest => {
            add("degree-bound", Some(p.degree_bound.to_string()));
            ("selftest".into(), None)
        }
        Command::Check { suite } => match suite {
            Suite::D2 { word } => ("check d2".into(), Some(read_word(word)?)),
            Suite::Moy { word, bits } => {
                add("bits", bits.clone());
                ("check moy".into(), Some(read_word(word)?))
            }
            Suite::Invariance { word, mv, negative, pair, at, letter, other } => {
                if let Some(o) = other {
                    add("other", Some(read_word(o)?.to_string()));
                }
                if let Some(m) = mv {
                    add("move", Some(format!("{:?}", plat_move(*m, *negative, *pair, *at, *letter))));
                }
                ("check invariance".into(), Some(read_word(word)?))
            }
            Suite::Algebra { n } => {
                add("degree-bound", Some(p.degree_bound.to_string()));
                add("n", n.map(|n| n.to_string()));
                ("check algebra".into(), None)
            }
            Suite::Sl1 { word, bits, unlink } => {
                add("bits", bits.clone());
                add("unlink", unlink.map(|k| k.to_string()));
                ("check sl1".into(), word.as_deref().map(read_word).transpose()?)
            }
            Suite::UAction { word, bits } => {
                add("bits", bits.clone());
                ("check u-action".into(), Some(read_word(word)?))
            }
            Suite::Commutativity { word, bits } => {
                add("bits", bits.clone());
                ("check commutativity".into(), Some(read_word(word)?))
            }
        },
    };
    Ok(Request { command, input, params })
}

fn compute(cmd: &Command, input: Option<&PlatWord>, p: Params) -> Result<Output, CliError> {
    let w = || input.expect("command takes a word");
    match cmd {
        Command::Total { .. } => commands::total(w(), p),
        Command::E2 { .. } => commands::e2(w(), p),
        Command::Kh { .. } => commands::kh(w()),
        Command::Compare { .. } => commands::compare(w(), p),
        Command::Resolution { bits, .. } => commands::resolution(w(), bits, p),
        Command::Selftest => selftest::run(p),
        Command::Check { suite } => match suite {
            Suite::D2 { .. } => commands::check_d2(w(), p),
            Suite::Moy { bits, .. } => commands::check_moy(w(), bits.as_deref(), p),
            Suite::Invariance { mv, negative, pair, at, letter, other, .. } => {
                let other = other.as_deref().map(read_word).transpose()?;
                let moves = match mv {
                    Some(m) => vec![plat_move(*m, *negative, *pair, *at, *letter)],
                    None => vec![
                        PlatMove::R1 { positive: true },
                        PlatMove::R1 { positive: false },
                        PlatMove::TwistTop { pair: 1, positive: true },
                        PlatMove::TwistBottom { pair: 1, positive: false },
                    ],
                };
                commands::check_invariance(w(), &moves, other.as_ref(), p)
            }
            Suite::Algebra { n } => match n {
                Some(n) => commands::check_algebra(&[*n], *n, p),
                None => commands::check_algebra(&[1, 2, 3], 2, p),
            },
            Suite::Sl1 { bits, unlink, .. } => commands::check_sl1(input, bits.as_deref(), *unlink, p),
            Suite::UAction { bits, .. } => commands::check_u_action(w(), bits.as_deref(), p),
            Suite::Commutativity { bits, .. } => commands::check_commutativity(w(), bits.as_deref()),
        },
    }
}

fn run(cli: &Cli) -> Result<(RunResult, Settings), CliError> {
    let s = settings(&cli.opts)?;
    if let Some(j) = s.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    let req = describe(&cli.cmd, s.params)?;
    let input = req.input.as_ref().map(|w| w.to_string());
    let meta = Meta {
        command: req.command.clone(),
        input_hash: input.as_ref().map(|i| sha256_hex(i.as_bytes())),
        input,
        params: req.params.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let cache = if s.no_cache { None } else { Cache::from_env() };
    let key = Cache::key(&serde_json::to_string(&meta).expect("serializable"));
    if let Some(hit) = cache.as_ref().and_then(|c| c.get(&key)) {
        log::info!("cache hit {key}");
        return Ok((hit, s));
    }
    let (dims, checks) = compute(&cli.cmd, req.input.as_ref(), s.params)?;
    let result = RunResult { dims, checks, meta };
    if let Some(c) = &cache {
        c.put(&key, &result);
    }
    Ok((result, s))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let start = Instant::now();
    let json_errors = cli.opts.format == Some(Format::JsonLike);
    match run(&cli) {
        Ok((result, s)) => {
            let text = match s.format {
                Format::Table => {
                    let mut t = result.to_table();
                    t.push_str(&format!("\n{:.2}s\n", start.elapsed().as_secs_f64()));
                    t
                }
                Format::JsonLike => result.to_json(),
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            if let Some(path) = &s.output {
                if let Err(e) = std::fs::write(path, result.to_json()) {
                    let err = CliError::Io(format!("{}: {e}", path.display()));
                    eprintln!("{err}");
                    return ExitCode::from(2);
                }
            }
            if result.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if json_errors {
                eprintln!("{}", e.to_json());
            } else {
                eprintln!("{e}");
            }
            ExitCode::from(2)
        }
    }
}
