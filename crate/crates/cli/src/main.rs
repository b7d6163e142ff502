//! `edepth`: E-depth, local cohomology tables, partial gin and ray
//! decompositions from the command line.

mod batch;
mod commands;
mod render;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use edepth::parse::{parse_document, parse_ring_header, Document};
use edepth::Error;

use crate::render::Output;

#[derive(Parser)]
#[command(name = "edepth", version, about = "E-depth, local cohomology tables and their cone decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Clone)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Ring as `p=32003,n=3` (or just `n=3`); used when the input has no header and by `corpus`.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Column window `a:b` for exported tables (default: support plus two guard columns).
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    /// Worker threads for corpus runs (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args, Clone)]
struct Input {
    /// Input file (`-` for stdin).
    file: PathBuf,
    /// Name of the submodule block to use (default: the first one).
    #[arg(long)]
    module: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// E-depth, depth and dimension of every Ext module, sequential CM verdict.
    Edepth(Input),
    /// Local cohomology, Δ and socle tables.
    Table(Input),
    /// Partial generic initial submodule gin_{rev_t}.
    Gin {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        t: usize,
    },
    /// Compares E-depth >= t with equality of the cohomology tables of F/U and F/gin_{rev_t}(U).
    VerifyGin {
        #[command(flatten)]
        input: Input,
        /// A single t (default: every t from 0 to n).
        #[arg(long)]
        t: Option<usize>,
    },
    /// Writes the Δ table as a nonnegative combination of S- and J-rays.
    Decompose(Input),
    /// Checks a socle lemma on blocks A, B (and C or ELLS) of the input.
    Socle {
        /// Input file (`-` for stdin).
        file: PathBuf,
    },
    /// Runs the gin, decomposition and socle harnesses on a random corpus.
    Corpus {
        /// monomial, binomial, toric, determinantal or module.
        #[arg(long, default_value = "monomial")]
        kind: String,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Restrict the gin harness to a single t.
        #[arg(long)]
        t: Option<usize>,
        /// Strict pairs drawn per socle lemma (default: count).
        #[arg(long)]
        pairs: Option<usize>,
    },
}

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    /// A check produced a witness against the expected statement.
    Violation = 1,
    HypothesisUnmet = 2,
    CertificationFailure = 3,
    InputError = 4,
}

impl Status {
    pub fn of_error(e: &Error) -> Status {
        match e {
            Error::EdepthTooSmall { .. }
            | Error::NotFilterRegular(_)
            | Error::NotMultihomogeneous(_)
            | Error::ContainmentViolated(_)
            | Error::NotArtinian(_) => Status::HypothesisUnmet,
            Error::CertificationFailed { .. } | Error::Infeasible(_) => Status::CertificationFailure,
            Error::Parse { .. } | Error::OutOfRange(_) | Error::InvalidRing(_) | Error::NotHomogeneous(_) | Error::AmbientMismatch(_) => {
                Status::InputError
            }
            _ => Status::Violation,
        }
    }

    /// The more severe of two statuses.
    pub fn worst(self, other: Status) -> Status {
        fn rank(s: Status) -> u8 {
            match s {
                Status::Ok => 0,
                Status::HypothesisUnmet => 1,
                Status::CertificationFailure => 2,
                Status::Violation => 3,
                Status::InputError => 4,
            }
        }
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

/// A command failure: message for stderr and exit status.
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { status: Status::of_error(&e), message: e.to_string() }
    }
}

fn input_failure(message: String) -> Failure {
    Failure { status: Status::InputError, message }
}

/// Parses `--ring` (`p=..,n=..`, `n=..` or a bare `n`).
pub fn ring_spec(s: &str) -> Result<edepth::Ring, Failure> {
    let s = s.trim();
    let header = if s.chars().all(|c| c.is_ascii_digit()) && !s.is_empty() { format!("n={s}") } else { s.replace(',', " ") };
    parse_ring_header(&header).map_err(|e| input_failure(format!("--ring: {e}")))
}

/// Parses `--window a:b`.
pub fn window_spec(s: &str) -> Result<(i32, i32), Failure> {
    let bad = || input_failure(format!("--window expects a:b with a <= b, got `{s}`"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: i32 = a.trim().parse().map_err(|_| bad())?;
    let b: i32 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn read_text(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| input_failure(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| input_failure(format!("{}: {e}", path.display())))
}

/// Reads a document; `--ring` supplies the header when the file has none.
fn read_document(path: &PathBuf, ring: Option<&str>) -> Result<Document, Failure> {
    let text = read_text(path)?;
    let has_header = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty()).is_some_and(|l| l.starts_with("ring"));
    let text = match (has_header, ring) {
        (false, Some(r)) => format!("{}\n{text}", ring_spec(r)?.header()),
        _ => text,
    };
    Ok(parse_document(&text)?)
}

fn select(doc: &Document, name: Option<&str>) -> Result<edepth::submodule::Submodule, Failure> {
    let found = match name {
        Some(n) => doc.get(n),
        None => doc.first(),
    };
    found.cloned().ok_or_else(|| match name {
        Some(n) => input_failure(format!("no submodule named `{n}`")),
        None => input_failure("the input has no submodule block".into()),
    })
}

fn run(cli: &Cli) -> Result<(Output, Status), Failure> {
    let g = &cli.global;
    let window = g.window.as_deref().map(window_spec).transpose()?;
    let load = |input: &Input| -> Result<edepth::submodule::Submodule, Failure> {
        let doc = read_document(&input.file, g.ring.as_deref())?;
        select(&doc, input.module.as_deref())
    };
    match &cli.command {
        Command::Edepth(input) => commands::edepth(&load(input)?),
        Command::Table(input) => commands::table(&load(input)?, window),
        Command::Gin { input, t } => commands::gin(&load(input)?, *t, g.seed),
        Command::VerifyGin { input, t } => commands::verify_gin(&load(input)?, *t, g.seed),
        Command::Decompose(input) => commands::decompose(&load(input)?, window, g.seed),
        Command::Socle { file } => commands::socle(&read_document(file, g.ring.as_deref())?),
        Command::Corpus { kind, count, t, pairs } => {
            let ring = ring_spec(g.ring.as_deref().unwrap_or("n=3"))?;
            let kind = edepth::corpus::CorpusKind::parse(kind).ok_or_else(|| input_failure(format!("unknown corpus kind `{kind}`")))?;
            let cfg = batch::Config { kind, ring, count: *count, seed: g.seed, t: *t, pairs: pairs.unwrap_or(*count), jobs: g.jobs };
            batch::run(&cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(Status::InputError as u8),
            };
        }
    };
    match run(&cli) {
        Ok((out, status)) => {
            print!("{}", out.render(cli.global.format));
            ExitCode::from(status as u8)
        }
        Err(f) => {
            eprintln!("edepth: {}", f.message);
            ExitCode::from(f.status as u8)
        }
    }
}
