use std::io;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use ruehrkit::cli::{run_suite, write_reports, Format, Suite, SuiteOptions};
use ruehrkit::collatz_bound::{eta_profile, orbit, GenCollatzConfig, Termination};
use ruehrkit::exact_math::{parse_rational, Rational};

#[derive(Parser, Debug)]
#[command(name = "ruehrkit", version, about = "Exact cross-checks of binomial-sum and integral identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an identity suite and emit one report per checked instance.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Upper end of the parameter range (suite-specific default).
        #[arg(long)]
        max_n: Option<u64>,
        /// Number of fuzzed instances for suites that fuzz.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, env = "RUEHRKIT_SEED", default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Exact tail sums and their k-th roots.
    Tailsum {
        #[arg(long)]
        d: u64,
        /// Threshold as NUM/DEN.
        #[arg(long, value_parser = rational_arg)]
        eps: Rational,
        #[arg(long, value_delimiter = ',', required = true)]
        k_list: Vec<u64>,
    },
    /// Orbit of a start value under the generalized map.
    Orbit {
        #[arg(long)]
        value: u64,
        #[arg(long, value_enum, conflicts_with_all = ["mult", "div", "residues"])]
        preset: Option<Preset>,
        #[arg(long)]
        mult: Option<u64>,
        #[arg(long)]
        div: Option<u64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        residues: Option<Vec<i64>>,
        #[arg(long, default_value_t = 10_000)]
        max_steps: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Preset {
    Classical,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn usage_error(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::InvalidValue, msg).exit()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { suite, max_n, trials, seed, format, jobs, inject_fault } => {
            let opts = SuiteOptions { max_n, trials, seed, jobs, inject_fault };
            let run = run_suite(suite, &opts);
            if let Err(e) = write_reports(&run.reports, format, io::stdout().lock()) {
                eprintln!("error writing reports: {e}");
                return ExitCode::FAILURE;
            }
            if !run.all_passed() {
                eprintln!("{} of {} checks failed", run.failures(), run.reports.len());
            }
            ExitCode::from(run.exit_code() as u8)
        }
        Command::Tailsum { d, eps, k_list } => {
            let profile = eta_profile(d, &eps, &k_list).unwrap_or_else(|e| usage_error(e));
            for e in &profile.entries {
                println!("k={} tail={} root={:.12}", e.k, e.tail, e.root);
            }
            println!("max_root={:.12}", profile.max_root());
            ExitCode::SUCCESS
        }
        Command::Orbit { value, preset, mult, div, residues, max_steps } => {
            let cfg = match (preset, mult, div, residues) {
                (Some(Preset::Classical), ..) => GenCollatzConfig::classical(),
                (None, Some(m), Some(d), Some(r)) => {
                    GenCollatzConfig::new(m, d, r).unwrap_or_else(|e| usage_error(e))
                }
                _ => usage_error("give --preset classical or all of --mult, --div, --residues"),
            };
            let result =
                orbit(&BigInt::from(value), &cfg, max_steps).unwrap_or_else(|e| usage_error(e));
            let steps: Vec<String> = result.steps.iter().map(ToString::to_string).collect();
            println!("orbit: {}", steps.join(" "));
            match (result.terminated, &result.cycle) {
                (Termination::CycleFound, Some(cycle)) => {
                    let cycle: Vec<String> = cycle.iter().map(ToString::to_string).collect();
                    println!("cycle: {}", cycle.join(" "));
                }
                _ => println!("max steps reached after {max_steps} steps"),
            }
            ExitCode::SUCCESS
        }
    }
}
