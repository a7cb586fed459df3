use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use supergeom_cli::compute::{self, Op};
use supergeom_cli::{exit, CliError, SuiteConfig, SuiteReport};

#[derive(Parser)]
#[command(
    name = "supergeom",
    version,
    about = "Exact supergeometry over Grassmann algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the seeded property suites.
    Verify {
        #[arg(long, default_value_t = 20_240_917)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        /// Odd generators of the coefficient algebra.
        #[arg(long, default_value_t = 6)]
        odd: usize,
        /// Even generators of the coefficient algebra.
        #[arg(long, default_value_t = 1)]
        even: usize,
        /// Comma-separated suites: algebra, matrix, groups, flag, jacobian.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "algebra,matrix,groups,flag,jacobian"
        )]
        suites: Vec<String>,
        /// Rerun a single trial index.
        #[arg(long)]
        only_trial: Option<u64>,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Evaluate one operation on a JSON payload.
    Compute {
        op: OpArg,
        /// Input file; `-` or absent reads stdin.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Output file; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Basis for `jacobian`: gl, sl or stabilizer.
        #[arg(long)]
        basis: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    Ber,
    Pi,
    Act,
    Jacobian,
}

impl From<OpArg> for Op {
    fn from(op: OpArg) -> Op {
        match op {
            OpArg::Ber => Op::Ber,
            OpArg::Pi => Op::Pi,
            OpArg::Act => Op::Act,
            OpArg::Jacobian => Op::Jacobian,
        }
    }
}

fn io_error(path: &std::path::Path, source: io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|e| io_error(p, e)),
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| io_error("<stdin>".as_ref(), e))?;
            Ok(s)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Verify {
            seed,
            trials,
            odd,
            even,
            suites,
            only_trial,
            report,
        } => {
            let config =
                SuiteConfig::new(seed, trials, odd, even, &suites)?.with_only_trial(only_trial);
            let result = SuiteReport::run(&config);
            print!("{}", result.render_text());
            if let Some(path) = report {
                fs::write(&path, result.to_json() + "\n").map_err(|e| io_error(&path, e))?;
            }
            Ok(if result.passed() {
                exit::SUCCESS
            } else {
                exit::PROPERTY_FAILURE
            })
        }
        Command::Compute {
            op,
            input,
            out,
            basis,
        } => {
            let op = Op::from(op);
            // The jacobian payload is optional; only read stdin when asked to.
            let text = match (op, &input, &basis) {
                (Op::Jacobian, None, _) | (Op::Jacobian, _, Some(_)) => None,
                _ => Some(read_input(input.as_ref())?),
            };
            let json = compute::run(op, text.as_deref(), basis.as_deref())? + "\n";
            match out {
                Some(path) => fs::write(&path, json).map_err(|e| io_error(&path, e))?,
                None => print!("{json}"),
            }
            Ok(exit::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::CONFIG_ERROR
            } else {
                exit::SUCCESS
            });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
