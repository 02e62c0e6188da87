//! Front end of the `cc-growth` binary: argument validation into an
//! [`ExperimentPlan`], then [`execute`] with atomic CSV/JSON output.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 unsupported context,
//! 3 resource budget, 64 usage, 65 malformed input data, 66 unreadable
//! input, 73 output not writable.

mod args;
mod run;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use num_rational::Ratio;

use crate::error::Error;
use crate::growth::LengthFunctionZ;
use crate::metrics::{NormMode, MAX_RADIUS, N_ORACLE_RADIUS_BUDGET};
use crate::presentations::Presentation;
use crate::rips::{RipsMode, RipsScheme};
use crate::words::{Alphabet, Word};

pub use run::{execute, write_atomic};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_CANT_CREATE: i32 = 73;

/// `--version` text: crate version and presentation grammar version.
pub fn version_text() -> &'static str {
    args::VERSION_TEXT
}

/// Maps a library error to the process exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Coverage(..) | Error::UnsupportedContext(_) => EXIT_UNSUPPORTED,
        Error::Resource(_) | Error::RadiusExceeded { .. } => EXIT_RESOURCE,
        Error::Syntax { .. } | Error::DegenerateRelator(_) | Error::DuplicateRelator(..) => EXIT_DATA,
        Error::Alphabet(_)
        | Error::Parameter(_)
        | Error::ArityMismatch { .. }
        | Error::TrivialClass
        | Error::EmptyDomain
        | Error::Domain(_) => EXIT_USAGE,
    }
}

/// A presentation file, read and parsed during validation.
#[derive(Clone, Debug)]
pub struct Input {
    pub path: PathBuf,
    pub presentation: Presentation,
}

#[derive(Clone, Debug)]
pub enum Command {
    Parse { input: Input, out: Option<PathBuf> },
    ScCheck { input: Input, lambda: Ratio<u64>, rips: Option<RipsScheme>, out: Option<PathBuf> },
    RipsGen { input: Input, scheme: RipsScheme, out: PathBuf },
    Dehn { input: Input, word: Word },
    Heisenberg { n_max: u64, radius: u32, csv: PathBuf },
    Growth {
        input: Input,
        scheme: RipsScheme,
        q: Word,
        class: Word,
        n_max: i64,
        mode: NormMode,
        csv: PathBuf,
        q_radius: Option<u32>,
        oracle_radius: Option<usize>,
    },
    Lenfun { function: LengthFunctionZ, lambda: f64, r_max: u64, samples: usize, out: Option<PathBuf> },
    ProductGrowth {
        input: Input,
        schemes: Vec<RipsScheme>,
        q: Word,
        classes: Vec<Word>,
        n_max: u32,
        csv: PathBuf,
        q_radius: Option<u32>,
    },
    Lip { input: Input, scheme: RipsScheme, q: Word, radius: usize, out: Option<PathBuf> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Parse { .. } => "parse",
            Command::ScCheck { .. } => "sc-check",
            Command::RipsGen { .. } => "rips-gen",
            Command::Dehn { .. } => "dehn",
            Command::Heisenberg { .. } => "heisenberg",
            Command::Growth { .. } => "growth",
            Command::Lenfun { .. } => "lenfun",
            Command::ProductGrowth { .. } => "product-growth",
            Command::Lip { .. } => "lip",
        }
    }
}

/// A fully validated invocation.
#[derive(Clone, Debug)]
pub struct ExperimentPlan {
    pub seed: u64,
    pub command: Command,
}

/// Why [`parse_args`] did not produce a plan. `code` 0 means help or
/// version text that belongs on standard output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArgsExit {
    pub code: i32,
    pub message: String,
}

impl ArgsExit {
    fn usage(message: impl Into<String>) -> Self {
        ArgsExit { code: EXIT_USAGE, message: message.into() }
    }
}

fn read_input(path: &Path) -> Result<Input, ArgsExit> {
    let text = std::fs::read_to_string(path).map_err(|e| ArgsExit {
        code: EXIT_NO_INPUT,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    let presentation = Presentation::parse(&text).map_err(|e| ArgsExit {
        code: EXIT_DATA,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(Input { path: path.to_path_buf(), presentation })
}

fn word_over(alphabet: &Alphabet, flag: &str, text: &str) -> Result<Word, ArgsExit> {
    alphabet.parse_word(text).map_err(|e| ArgsExit::usage(format!("--{flag}: {e}")))
}

/// Q's alphabet followed by `x`, `y`, as laid out by the Rips construction.
fn g_alphabet(q: &Presentation) -> Result<Alphabet, ArgsExit> {
    let mut a = q.alphabet().clone();
    for name in ["x", "y"] {
        a.push(name).map_err(|_| ArgsExit::usage(format!("--presentation: Q already uses the name `{name}`")))?;
    }
    Ok(a)
}

fn n_word(q: &Presentation, flag: &str, text: &str) -> Result<Word, ArgsExit> {
    let g = g_alphabet(q)?;
    let w = word_over(&g, flag, text)?;
    let nq = q.alphabet().len() as u32;
    if w.letters().iter().any(|l| l.generator() < nq) {
        return Err(ArgsExit::usage(format!("--{flag}: `{text}` must be a word in x and y")));
    }
    Ok(w)
}

fn scheme(k: u32, mode: &str) -> Result<RipsScheme, ArgsExit> {
    if k == 0 {
        return Err(ArgsExit::usage("--k: k must be at least 1"));
    }
    let mode: RipsMode = mode.parse().map_err(|e: Error| ArgsExit::usage(format!("--mode: {e}")))?;
    RipsScheme::new(k, mode).map_err(|e| ArgsExit::usage(format!("--k: {e}")))
}

fn parse_ratio(flag: &str, s: &str) -> Result<Ratio<u64>, ArgsExit> {
    let bad = || ArgsExit::usage(format!("--{flag}: expected a fraction p/q in (0, 1), got `{s}`"));
    let (n, d) = s.split_once('/').ok_or_else(bad)?;
    let n: u64 = n.trim().parse().map_err(|_| bad())?;
    let d: u64 = d.trim().parse().map_err(|_| bad())?;
    if n == 0 || d == 0 || n >= d {
        return Err(bad());
    }
    Ok(Ratio::new(n, d))
}

fn check_radius(flag: &str, r: u32) -> Result<u32, ArgsExit> {
    if r > MAX_RADIUS {
        return Err(ArgsExit::usage(format!("--{flag}: radius {r} exceeds the supported maximum {MAX_RADIUS}")));
    }
    Ok(r)
}

/// Validates `argv` (program name first) into a plan. Presentation files are
/// read and parsed here, so [`execute`] starts from checked data only.
pub fn parse_args<I, T>(argv: I) -> Result<ExperimentPlan, ArgsExit>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    use args::Cmd;
    let cli = args::parse_cli(argv).map_err(|e| {
        let code = match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
            _ => EXIT_USAGE,
        };
        ArgsExit { code, message: e.render().to_string() }
    })?;

    let command = match cli.command {
        Cmd::Parse { presentation, out } => Command::Parse { input: read_input(&presentation)?, out },
        Cmd::ScCheck { presentation, lambda, k, mode, out } => {
            let lambda = parse_ratio("lambda", &lambda)?;
            let rips = k.map(|k| scheme(k, &mode)).transpose()?;
            Command::ScCheck { input: read_input(&presentation)?, lambda, rips, out }
        }
        Cmd::RipsGen { presentation, k, mode, out } => {
            let scheme = scheme(k, &mode)?;
            let input = read_input(&presentation)?;
            g_alphabet(&input.presentation)?;
            Command::RipsGen { input, scheme, out }
        }
        Cmd::Dehn { presentation, word } => {
            let input = read_input(&presentation)?;
            let word = word_over(input.presentation.alphabet(), "word", &word)?;
            Command::Dehn { input, word }
        }
        Cmd::Heisenberg { n_max, radius, csv } => {
            if n_max == 0 {
                return Err(ArgsExit::usage("--n-max: must be at least 1"));
            }
            let radius = match radius {
                Some(r) => check_radius("radius", r)?,
                None => check_radius("n-max", crate::metrics::radius_for_z_powers(n_max))?,
            };
            Command::Heisenberg { n_max, radius, csv }
        }
        Cmd::Growth { presentation, k, q, class, n_max, mode, csv, q_radius, oracle_radius } => {
            let scheme = scheme(k, "complete")?;
            if n_max < 0 {
                return Err(ArgsExit::usage("--n-max: must be non-negative"));
            }
            let mode: NormMode = mode.parse().map_err(|e: Error| ArgsExit::usage(format!("--mode: {e}")))?;
            let q_radius = q_radius.map(|r| check_radius("q-radius", r)).transpose()?;
            if oracle_radius.is_some_and(|r| r > N_ORACLE_RADIUS_BUDGET) {
                return Err(ArgsExit::usage(format!("--oracle-radius: at most {N_ORACLE_RADIUS_BUDGET}")));
            }
            let input = read_input(&presentation)?;
            let q = word_over(input.presentation.alphabet(), "q", &q)?;
            let class = n_word(&input.presentation, "class", &class)?;
            if crate::words::cyclic_reduce(&class).0.is_empty() {
                return Err(ArgsExit::usage("--class: the trivial class has no growth curve"));
            }
            Command::Growth { input, scheme, q, class, n_max, mode, csv, q_radius, oracle_radius }
        }
        Cmd::Lenfun { alpha, lambda, rmax, samples, out } => {
            let function =
                LengthFunctionZ::power_from_str(&alpha).map_err(|e| ArgsExit::usage(format!("--alpha: {e}")))?;
            if !(lambda > 1.0) || !lambda.is_finite() {
                return Err(ArgsExit::usage(format!("--lambda: must be a finite number above 1, got {lambda}")));
            }
            if rmax == 0 || rmax > 1 << 15 {
                return Err(ArgsExit::usage("--rmax: must lie in [1, 32768]"));
            }
            Command::Lenfun { function, lambda, r_max: rmax, samples, out }
        }
        Cmd::ProductGrowth { presentation, k, q, class, n_max, csv, q_radius } => {
            let schemes = k.iter().map(|&k| scheme(k, "complete")).collect::<Result<Vec<_>, _>>()?;
            if class.len() != schemes.len() {
                return Err(ArgsExit::usage(format!(
                    "--class: expected one class per --k ({}), got {}",
                    schemes.len(),
                    class.len()
                )));
            }
            let q_radius = q_radius.map(|r| check_radius("q-radius", r)).transpose()?;
            let input = read_input(&presentation)?;
            let q = word_over(input.presentation.alphabet(), "q", &q)?;
            let classes =
                class.iter().map(|c| n_word(&input.presentation, "class", c)).collect::<Result<Vec<_>, _>>()?;
            Command::ProductGrowth { input, schemes, q, classes, n_max, csv, q_radius }
        }
        Cmd::Lip { presentation, k, q, radius, out } => {
            let scheme = scheme(k, "complete")?;
            if radius == 0 || radius > crate::lipschitz::LIP_RADIUS_BUDGET {
                return Err(ArgsExit::usage(format!(
                    "--radius: must lie in [1, {}]",
                    crate::lipschitz::LIP_RADIUS_BUDGET
                )));
            }
            let input = read_input(&presentation)?;
            let q = word_over(input.presentation.alphabet(), "q", &q)?;
            Command::Lip { input, scheme, q, radius, out }
        }
    };
    Ok(ExperimentPlan { seed: cli.seed, command })
}

/// Entry point of the binary: parse, execute, report. Returns the exit code.
pub fn main_with_args<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(plan) => execute(&plan, stdout, stderr),
        Err(e) => {
            let mut text = e.message;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            let _ = if e.code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            e.code
        }
    }
}
