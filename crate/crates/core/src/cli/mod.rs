//! The `torsion-lab` command line: argument parsing, problem ingestion,
//! dispatch and output.
//!
//! Every invocation prints exactly one JSON envelope (or its human
//! rendering) on stdout and exits with 0 on success, 1 when a verification
//! property fails, 2 on invalid input, 3 on numerical failure and 4 when a
//! limit does not stabilize.

pub mod commands;
pub mod envelope;
pub mod problem;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::verify::Suite;
use envelope::{exit, human, Envelope, Failure, Outcome};
use problem::{effective_policy, parse_problem, InputError, Kind};

/// Environment variable consulted when `--seed` is absent.
pub const SEED_ENV: &str = "TORSION_LAB_SEED";

/// Seed used when neither the flag nor the environment sets one.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Parser, Debug)]
#[command(name = "torsion-lab", version, about = "Joint torsion, multiplicities and tame symbols")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Koszul cohomology dimensions and index of a commuting tuple.
    Koszul(ProblemArgs),
    /// Joint torsion of two commuting cochain maps.
    JointTorsion(ProblemArgs),
    /// Tame symbol at a point, by closed form or perturbation limit.
    TameSymbol(ProblemArgs),
    /// Carey-Pincus product for a pair of disc symbols.
    CareyPincus(ProblemArgs),
    /// Index of a Toeplitz operator from the winding number of its symbol.
    Noether(ProblemArgs),
    /// Antisymmetry, multiplicativity and Steinberg checks at a point.
    Axioms(ProblemArgs),
    /// Seeded property batteries.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Human,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Overrides the TORSION_LAB_SEED environment variable.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ProblemArgs {
    /// Problem file in JSON.
    #[arg(long)]
    pub input: PathBuf,
    /// Relative singular-value threshold of the rank policy.
    #[arg(long)]
    pub policy_rel: Option<f64>,
    /// Also evaluate an independent path and report the gap.
    #[arg(long)]
    pub cross_check: bool,
    /// Emit the convergence sequence of the limit procedure.
    #[arg(long)]
    pub trace: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Signs,
    Axioms,
    Agreement,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Signs => Suite::Signs,
            SuiteArg::Axioms => Suite::Axioms,
            SuiteArg::Agreement => Suite::Agreement,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: SuiteArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Flag, then environment, then nothing.
pub fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<Option<u64>, InputError> {
    if let Some(s) = flag {
        return Ok(Some(s));
    }
    match env {
        None => Ok(None),
        Some(v) => v
            .trim()
            .parse::<u64>()
            .map(Some)
            .map_err(|_| InputError::new(SEED_ENV, format!("not an unsigned integer: {v:?}"))),
    }
}

/// The rendered output and exit code of one invocation.
#[derive(Clone, Debug)]
pub struct Invocation {
    pub output: String,
    pub exit_code: i32,
}

fn render(e: &Envelope, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(e).expect("envelopes serialize"),
        Format::Human => human(e),
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn run_problem(kind: Kind, args: &ProblemArgs, env_seed: Option<&str>) -> Result<Outcome, Failure> {
    let path = args.input.display().to_string();
    let text = std::fs::read_to_string(&args.input).map_err(|e| Failure::Io {
        path: path.clone(),
        message: e.to_string(),
    })?;
    let file = parse_problem(&text)?;
    if file.kind != kind {
        return Err(InputError::new(
            "kind",
            format!("file holds a {:?} problem but the subcommand is {}", file.kind.name(), kind.name()),
        )
        .into());
    }
    let policy = effective_policy(file.policy, args.policy_rel)?;
    let mut schedule = file.schedule.unwrap_or_default();
    if let Some(seed) = resolve_seed(args.output.seed, env_seed)? {
        schedule.seed = seed;
    }
    schedule.validate().map_err(|e| InputError::new("schedule", e.to_string()))?;
    let ctx = commands::Context {
        policy,
        schedule,
        cross_check: args.cross_check,
        trace: args.trace,
    };
    match kind {
        Kind::Koszul => commands::koszul(&file.payload, &ctx),
        Kind::JointTorsion => commands::joint_torsion(&file.payload, &ctx),
        Kind::TameSymbol => commands::tame_symbol(&file.payload, &ctx),
        Kind::CareyPincus => commands::carey_pincus_cmd(&file.payload, &ctx),
        Kind::Noether => commands::noether(&file.payload, &ctx),
        Kind::Axioms => commands::axioms(&file.payload, &ctx),
    }
}

/// Runs one invocation with an explicit seed environment value.
pub fn invoke<I, T>(argv: I, env_seed: Option<&str>) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let start = Instant::now();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Invocation {
                    output: e.to_string(),
                    exit_code: exit::OK,
                };
            }
            let f = Failure::Input(InputError::new("arguments", e.render().to_string().trim().to_string()));
            return Invocation {
                output: render(&f.envelope(elapsed_ms(start)), Format::Json),
                exit_code: f.exit_code(),
            };
        }
    };
    let (result, format) = match &cli.command {
        Command::Verify(v) => {
            let r = resolve_seed(v.output.seed, env_seed)
                .map_err(Failure::from)
                .map(|s| commands::verify(v.suite.into(), s.unwrap_or(DEFAULT_SEED)));
            (r, v.output.format)
        }
        Command::Koszul(a) => (run_problem(Kind::Koszul, a, env_seed), a.output.format),
        Command::JointTorsion(a) => (run_problem(Kind::JointTorsion, a, env_seed), a.output.format),
        Command::TameSymbol(a) => (run_problem(Kind::TameSymbol, a, env_seed), a.output.format),
        Command::CareyPincus(a) => (run_problem(Kind::CareyPincus, a, env_seed), a.output.format),
        Command::Noether(a) => (run_problem(Kind::Noether, a, env_seed), a.output.format),
        Command::Axioms(a) => (run_problem(Kind::Axioms, a, env_seed), a.output.format),
    };
    let timing = elapsed_ms(start);
    let (envelope, code) = match result {
        Ok(outcome) => outcome.finish(timing),
        Err(f) => (f.envelope(timing), f.exit_code()),
    };
    Invocation {
        output: render(&envelope, format),
        exit_code: code,
    }
}

/// Entry point of the binary: reads the process arguments and environment,
/// prints the envelope and returns the exit code.
pub fn main_entry() -> i32 {
    let env = std::env::var(SEED_ENV).ok();
    let inv = invoke(std::env::args_os(), env.as_deref());
    println!("{}", inv.output.trim_end());
    inv.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_precedence() {
        assert_eq!(resolve_seed(Some(1), Some("2")).unwrap(), Some(1));
        assert_eq!(resolve_seed(None, Some("2")).unwrap(), Some(2));
        assert_eq!(resolve_seed(None, None).unwrap(), None);
        assert!(resolve_seed(None, Some("x")).is_err());
    }

    #[test]
    fn bad_arguments_produce_json() {
        let inv = invoke(["torsion-lab", "koszul"], None);
        assert_eq!(inv.exit_code, exit::VALIDATION);
        let v: serde_json::Value = serde_json::from_str(&inv.output).unwrap();
        assert_eq!(v["status"], "error");
    }

    #[test]
    fn missing_file_is_a_validation_error() {
        let inv = invoke(["torsion-lab", "noether", "--input", "/nonexistent/problem.json"], None);
        assert_eq!(inv.exit_code, exit::VALIDATION);
        assert!(inv.output.contains("\"io\""));
    }
}
