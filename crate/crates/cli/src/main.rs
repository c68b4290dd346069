//! `qmetric`: state metrics, verification campaigns and counterexample searches.
//!
//! Exit codes: 0 when the expectation is met, 1 when it is violated,
//! 2 for input or usage errors.

mod commands;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::RunReport;

#[derive(Debug, Parser)]
#[command(name = "qmetric", version, about = "Quantum state metrics and property campaigns")]
pub struct Cli {
    /// Seed for every random draw; runs are reproducible from it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for trials and restarts.
    #[arg(long, global = true, env = "QMETRIC_JOBS")]
    pub jobs: Option<usize>,
    /// Emit output records as CSV instead of JSON lines.
    #[arg(long, global = true)]
    pub csv: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance or fidelity between two state files.
    Metric(MetricArgs),
    /// Run a property campaign and check it against its expectation.
    Verify(VerifyArgs),
    /// Search for a counterexample and write it as a witness file.
    Search(SearchArgs),
    /// Geometric entanglement of a two-qubit state.
    Entanglement(EntanglementArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricName {
    Trace,
    Bures,
    Fidelity,
    #[value(name = "afid", alias = "a_fidelity")]
    AFidelity,
    /// Schatten family `D_p`.
    #[value(name = "Dp", alias = "D_p")]
    BigDp,
    /// Measurement supremum `d_p`.
    #[value(name = "dp", alias = "d_p")]
    SmallDp,
}

#[derive(Debug, Args)]
pub struct MetricArgs {
    pub state_a: PathBuf,
    pub state_b: PathBuf,
    #[arg(long, value_enum)]
    pub metric: MetricName,
    /// Exponent for `Dp` and `dp`.
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    /// Restarts per partition shape for `dp`; defaults by dimension.
    #[arg(long)]
    pub restarts: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    /// `d_p` never grows under random channels.
    T1,
    /// Joint convexity of `d_p^p` and `D_p^p`.
    T2,
    /// Metric axioms of `D_p`.
    T3,
    /// Weak majorization of root-difference spectra.
    T4,
    /// Four-distribution mixture inequality.
    Eq8,
    /// Closed-form Hessian of the convexity kernel.
    Hessian,
    /// A-fidelity expansiveness and pure-state values.
    Afid,
    /// Nielsen criterion on sampled separable states.
    Nielsen,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub check: Check,
    /// Trial count; each check has its own default.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Dimensions to sample from.
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3])]
    pub dims: Vec<usize>,
    /// Exponent(s); each check has its own default set.
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<f64>,
    /// Upper exponent for t4, paired with `--p`.
    #[arg(long)]
    pub q: Option<f64>,
    /// Expect at least one violation instead of none.
    #[arg(long)]
    pub expect_violation: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Convexity,
    Contractivity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "Dp", alias = "D_p")]
    BigDp,
    #[value(name = "dp", alias = "d_p")]
    SmallDp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Increase,
    Decrease,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(value_enum)]
    pub target: Target,
    #[arg(long, default_value_t = 3.0)]
    pub p: f64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    /// Metric family for convexity searches.
    #[arg(long, value_enum, default_value_t = Family::BigDp)]
    pub family: Family,
    /// Contractivity failure to look for.
    #[arg(long, value_enum, default_value_t = DirectionArg::Increase)]
    pub direction: DirectionArg,
    /// Sweep the standard exponent list instead of `--p` (convexity only).
    #[arg(long)]
    pub survey: bool,
    /// Witness file to write.
    #[arg(long, default_value = "witness.json")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EntanglementArgs {
    pub state: PathBuf,
    #[arg(long, value_enum, default_value_t = MetricName::Bures)]
    pub metric: MetricName,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = qmetric_core::entanglement::DEFAULT_RESTARTS)]
    pub restarts: usize,
    /// Where to write the closest separable decomposition.
    #[arg(long, default_value = "closest.json")]
    pub out: PathBuf,
}

fn emit(report: &RunReport, csv: bool) -> io::Result<()> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    if csv {
        report::write_csv(&mut lock, report).map_err(io::Error::other)?;
    } else {
        report::write_jsonl(&mut lock, report)?;
    }
    lock.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("qmetric: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("qmetric: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let result = match &cli.command {
        Command::Metric(a) => commands::metric(a, cli.seed),
        Command::Verify(a) => commands::verify(a, cli.seed),
        Command::Search(a) => commands::search(a, cli.seed),
        Command::Entanglement(a) => commands::entanglement(a, cli.seed),
    };
    match result {
        Ok(mut report) => {
            report.wall_time = start.elapsed().as_secs_f64();
            if let Err(e) = emit(&report, cli.csv) {
                eprintln!("qmetric: cannot write report: {e}");
                return ExitCode::from(2);
            }
            if report.status == "met" {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("qmetric: {e}");
            ExitCode::from(2)
        }
    }
}
