use std::path::PathBuf;
use std::process::ExitCode;

use boundsol::experiment::{self, parse_range, Command, Mode, RunConfig, Variant};
use boundsol::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit status for malformed invocations.
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "boundsol", version, about = "Experiments on the solution bounds of x_i = 1, x_i + x_j = x_k and x_i * x_j = x_k systems")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Unique solutions of W_n systems stay within [-2^(n-1), 2^(n-1)]
    #[command(name = "conjI")]
    ConjI(Common),
    /// Minimal-norm least-squares solutions stay within 2^(n-1)
    #[command(name = "conj1")]
    Conj1(Common),
    /// Maximal minors of the n-1 row patterns stay within 2^(n-1)
    #[command(name = "conj2")]
    Conj2(Common),
    /// Numerators and denominators of unique solutions stay within 2^(n-1)
    #[command(name = "conj3")]
    Conj3(Common),
    /// Clamped consecutive ratios of sorted unique solutions stay within 2
    #[command(name = "conj4")]
    Conj4(Common),
    /// Double-exponential bounds for E_n systems (variants a, b, c, d)
    #[command(name = "conj5")]
    Conj5(Common),
    /// Some solution (and every minimal-norm one) stays within 2^(2^(n-2))
    #[command(name = "conjII")]
    ConjII(Common),
    /// Replacement search for W_n solutions
    #[command(name = "obs1")]
    Obs1(Common),
    /// Replacement search for E_n solutions
    #[command(name = "obs2")]
    Obs2(Common),
    /// Solve a system file and report the relevant statistics
    #[command(name = "solve")]
    Solve {
        /// System file, one equation per line
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Number of variables
    #[arg(long)]
    n: Option<usize>,
    /// Random trials
    #[arg(long = "iters", default_value_t = experiment::DEFAULT_ITERATIONS)]
    iterations: u64,
    #[arg(long, default_value_t = experiment::DEFAULT_SEED)]
    seed: u64,
    /// Enumerate every candidate instead of sampling
    #[arg(long)]
    exhaustive: bool,
    /// Half-open interval A..B of combination ranks (exhaustive) or trial indices
    #[arg(long, value_parser = range_arg)]
    range: Option<(u64, u64)>,
    /// Worker threads; defaults to the available parallelism
    #[arg(long)]
    threads: Option<usize>,
    /// Print the report as JSON
    #[arg(long)]
    json: bool,
    #[arg(long)]
    witness_dir: Option<PathBuf>,
    /// conj1: right-hand side 0 for every drawn row, including x_i + x_j = x_j
    #[arg(long)]
    strict_semantics: bool,
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Scan the squaring-chain equations first (conj5 a and d)
    #[arg(long)]
    extremal: bool,
    /// Lift the n cap on polynomial trials
    #[arg(long)]
    allow_large_n: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    A,
    B,
    C,
    D,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::A => Variant::A,
            VariantArg::B => Variant::B,
            VariantArg::C => Variant::C,
            VariantArg::D => Variant::D,
        }
    }
}

fn range_arg(s: &str) -> Result<(u64, u64), String> {
    parse_range(s).map_err(|e| e.to_string())
}

fn config(sub: Sub) -> (RunConfig, bool) {
    let (command, common, input) = match sub {
        Sub::ConjI(c) => (Command::ConjI, c, None),
        Sub::Conj1(c) => (Command::Conj1, c, None),
        Sub::Conj2(c) => (Command::Conj2, c, None),
        Sub::Conj3(c) => (Command::Conj3, c, None),
        Sub::Conj4(c) => (Command::Conj4, c, None),
        Sub::Conj5(c) => (Command::Conj5, c, None),
        Sub::ConjII(c) => (Command::ConjII, c, None),
        Sub::Obs1(c) => (Command::Obs1, c, None),
        Sub::Obs2(c) => (Command::Obs2, c, None),
        Sub::Solve { path, common } => (Command::Solve, common, Some(path)),
    };
    let threads = common.threads.unwrap_or_else(|| {
        std::thread::available_parallelism().map_or(1, |p| p.get())
    });
    let cfg = RunConfig {
        n: common.n,
        mode: if common.exhaustive { Mode::Exhaustive } else { Mode::Random },
        iterations: common.iterations,
        seed: common.seed,
        range: common.range,
        threads,
        strict_semantics: common.strict_semantics,
        variant: common.variant.map(Variant::from),
        witness_dir: common.witness_dir,
        extremal: common.extremal,
        allow_large_n: common.allow_large_n,
        input,
        ..RunConfig::new(command)
    };
    (cfg, common.json)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let (cfg, json) = config(cli.command);
    match experiment::run(&cfg) {
        Ok(report) => {
            if json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e @ Error::Config(_)) => {
            eprintln!("boundsol: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(e) => {
            eprintln!("boundsol: {e}");
            ExitCode::from(1)
        }
    }
}
