mod commands;
mod report;
mod system;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::Output;
use crate::report::Report;
use crate::system::{Source, System};

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(message: String) -> Self {
        Self { code: 2, message }
    }

    pub fn precondition(message: String) -> Self {
        Self { code: 4, message }
    }
}

impl From<logdec_core::Error> for CliError {
    fn from(e: logdec_core::Error) -> Self {
        use logdec_core::Error as E;
        let code = match e {
            E::Capacity { .. } => 3,
            E::EmptyIdeal | E::NoWitness(_) | E::Unnormalized(_) => 4,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Entropy decomposition, co-information structure and gate census.
#[derive(Parser, Debug)]
#[command(name = "logdec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// System file (JSON with "outcomes", "p" and "variables").
    file: Option<PathBuf>,
    /// Named gate such as `xor:2x2`, `or:2x2` or `add:3x3`.
    #[arg(long)]
    gate: Option<String>,
    /// Comma-separated truth table in row-major order, e.g. `0,1,1,0`.
    #[arg(long)]
    table: Option<String>,
    /// Shape `NXxNY` of `--table`; square by default.
    #[arg(long, requires = "table")]
    shape: Option<String>,
    /// Emit the JSON report instead of a table.
    #[arg(long)]
    json: bool,
}

impl Input {
    fn source(&self) -> Source {
        Source {
            file: self.file.clone(),
            gate: self.gate.clone(),
            table: self.table.clone(),
            shape: self.shape.clone(),
        }
    }

    fn system(&self) -> Result<System, CliError> {
        System::from_file(&self.source().load()?)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Measure of every atom of the complex, or of one variable's content.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Restrict to the content of this variable.
        #[arg(long)]
        variable: Option<String>,
    },
    /// Co-information of the named variables (all by default).
    Coinfo {
        #[command(flatten)]
        input: Input,
        /// Variables to combine.
        #[arg(long = "var", short = 'v')]
        vars: Vec<String>,
        /// Also report the ideal, its degrees and its parity.
        #[arg(long)]
        structure: bool,
    },
    /// Classify every gate of one shape up to symmetry.
    Census {
        #[arg(long, default_value_t = 2)]
        nx: usize,
        #[arg(long, default_value_t = 2)]
        ny: usize,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Survey seed; a fresh one is generated and printed when absent.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Print the system as a system file, e.g. to save a `--gate` shortcut.
    Export {
        #[command(flatten)]
        input: Input,
    },
    /// Distributions of opposite co-information sign for a mixed system.
    Witness {
        #[command(flatten)]
        input: Input,
        #[arg(long = "var", short = 'v')]
        vars: Vec<String>,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("LOGDEC_THREADS") else {
        return Ok(());
    };
    let threads: usize = value.parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        CliError::parse(format!(
            "LOGDEC_THREADS={value:?} is not a positive integer"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::parse(format!("thread pool: {e}")))
}

fn fresh_seed() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or(0)
}

fn run(cli: Cli) -> Result<(Output, bool, Option<u64>), CliError> {
    configure_threads()?;
    Ok(match cli.command {
        Command::Decompose { input, variable } => {
            let system = input.system()?;
            (
                commands::decompose(&system, variable.as_deref())?,
                input.json,
                None,
            )
        }
        Command::Coinfo {
            input,
            vars,
            structure,
        } => {
            let system = input.system()?;
            (
                commands::coinfo(&system, &vars, structure)?,
                input.json,
                None,
            )
        }
        Command::Census {
            nx,
            ny,
            samples,
            seed,
            json,
        } => {
            let seed = seed.unwrap_or_else(|| {
                let s = fresh_seed();
                eprintln!("seed: {s}");
                s
            });
            (
                commands::run_census(nx, ny, samples, seed)?,
                json,
                Some(seed),
            )
        }
        Command::Export { input } => {
            let file = input.source().load()?;
            System::from_file(&file)?;
            let text = file.to_json() + "\n";
            (
                Output {
                    results: serde_json::to_value(&file).expect("serializable"),
                    text,
                },
                false,
                None,
            )
        }
        Command::Witness { input, vars } => {
            let system = input.system()?;
            (commands::witness(&system, &vars)?, input.json, None)
        }
    })
}

fn main() -> ExitCode {
    let command: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    match run(cli) {
        Ok((output, json, seed)) => {
            if json {
                let report = Report::new(command.join(" "), seed, output.results);
                println!("{}", report.to_json());
            } else {
                if let Some(seed) = seed {
                    println!("seed: {seed}");
                }
                print!("{}", output.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
