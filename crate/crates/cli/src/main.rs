mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use selfsmall::fixture::{ModuleFixture, SystemFixture};
use selfsmall::towers::mittag_leffler_check;
use selfsmall::verify::run_full_report;
use selfsmall::Error;

use config::{Format, VerifyArgs};

const PASS: u8 = 0;
const FAILED: u8 = 1;
const INVALID: u8 = 2;
const INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "selfsmall", version, about = "Verify adic towers of finitely presented modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the condition and lemma checks on R/(g) -> R/(g^2) -> ...
    Verify(VerifyArgs),
    /// Test the Mittag-Leffler condition on an inverse system fixture.
    MittagLeffler {
        fixture: PathBuf,
        #[arg(long, default_value_t = 8)]
        horizon: usize,
    },
    /// Print the invariant factors of a module fixture.
    Normalize { fixture: PathBuf },
}

/// Maps a library error to an exit code: bad input is 2, anything else 3.
fn error_code(e: &Error) -> u8 {
    match e {
        Error::Internal(_) => INTERNAL,
        Error::InvalidDepth(_)
        | Error::InvalidIdeal(_)
        | Error::InvalidRing(_)
        | Error::Parse(_)
        | Error::Dimension(_)
        | Error::Endpoint(_)
        | Error::NotWellDefined(_) => INVALID,
        _ => INTERNAL,
    }
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("selfsmall: {message}");
    ExitCode::from(code)
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) -> Result<(), std::io::Error> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => r,
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn verify(args: &VerifyArgs) -> ExitCode {
    let config = match config::resolve(args) {
        Ok(c) => c,
        Err(e) => return fail(INVALID, e),
    };
    let report = match run_full_report(&config.tower, &config.options) {
        Ok(r) => r,
        Err(e) => return fail(error_code(&e), e),
    };
    let text = match config.format {
        Format::Text => report.render_text(),
        Format::Json => match serde_json::to_string_pretty(&report) {
            Ok(s) => s + "\n",
            Err(e) => return fail(INTERNAL, e),
        },
    };
    if let Err(e) = emit(&text) {
        return fail(INTERNAL, e);
    }
    ExitCode::from(if report.passed() { PASS } else { FAILED })
}

fn mittag_leffler(path: &PathBuf, horizon: usize) -> ExitCode {
    let fixture: SystemFixture = match read_json(path) {
        Ok(f) => f,
        Err(e) => return fail(INVALID, e),
    };
    let system = match fixture.build() {
        Ok(s) => s,
        Err(e) => return fail(INVALID, e),
    };
    match mittag_leffler_check(&system, horizon) {
        Ok(v) => {
            let line = serde_json::to_string(&v).expect("verdict serializes") + "\n";
            if let Err(e) = emit(&line) {
                return fail(INTERNAL, e);
            }
            ExitCode::from(if v.holds() { PASS } else { FAILED })
        }
        Err(e) => fail(error_code(&e), e),
    }
}

fn normalize(path: &PathBuf) -> ExitCode {
    let fixture: ModuleFixture = match read_json(path) {
        Ok(f) => f,
        Err(e) => return fail(INVALID, e),
    };
    match fixture.build() {
        Ok(m) => {
            let ring = m.ring();
            let factors: Vec<String> = m.invariant_factors().iter().map(|d| ring.format(d)).collect();
            let text = format!(
                "invariant factors: [{}]\nfree rank: {}\nmodule: {}\n",
                factors.join(", "),
                m.free_rank(),
                m.describe()
            );
            match emit(&text) {
                Ok(()) => ExitCode::from(PASS),
                Err(e) => fail(INTERNAL, e),
            }
        }
        Err(e) => fail(INVALID, e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INVALID } else { PASS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match &cli.command {
        Command::Verify(args) => verify(args),
        Command::MittagLeffler { fixture, horizon } => mittag_leffler(fixture, *horizon),
        Command::Normalize { fixture } => normalize(fixture),
    }
}
