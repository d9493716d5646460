use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use coxmut::Caps;
use coxmut_cli::commands::{self, Output};
use coxmut_cli::input::{parse_extra, Input};
use coxmut_cli::{server, CliError};

/// Quiver and diagram mutation, Coxeter presentations and manifold
/// invariants. Caps can be set through COXMUT_CAPS, e.g.
/// `COXMUT_CAPS="max_size=5000,cosets=200000,closure=50000,max_weight=4"`.
#[derive(Parser)]
#[command(name = "coxmut", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mutates a diagram at a vertex (1-based).
    Mutate {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerates the mutation class.
    Class {
        #[arg(short, long)]
        input: PathBuf,
        /// Largest class enumerated.
        #[arg(long)]
        max: Option<usize>,
    },
    /// Classifies the mutation type.
    Classify {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Prints the group presentation.
    Present {
        #[arg(short, long)]
        input: PathBuf,
        /// File of `rel` lines added to the presentation.
        #[arg(long)]
        extra: Option<PathBuf>,
    },
    /// Reports the manifold invariants.
    Analyze {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Prints the torsion certificate; exits 0 only when torsion-free.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Reproduces a reference table.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        check: u8,
        #[arg(long)]
        json: bool,
    },
    /// Runs the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Writes all sessions to this file after every change.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

fn write_output(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn run(command: Command, caps: Caps) -> Result<Output, CliError> {
    match command {
        Command::Mutate { input, k, output } => {
            let out = commands::mutate(&Input::read(&input)?, k)?;
            match output {
                Some(path) => {
                    write_output(&path, &out.text)?;
                    Ok(Output { text: String::new(), code: 0 })
                }
                None => Ok(out),
            }
        }
        Command::Class { input, max } => {
            let caps = Caps { max_size: max.unwrap_or(caps.max_size), ..caps };
            commands::class(&Input::read(&input)?, &caps)
        }
        Command::Classify { input } => commands::classify(&Input::read(&input)?, &caps),
        Command::Present { input, extra } => {
            let input = Input::read(&input)?;
            let extra = match extra {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
                    parse_extra(input.matrix.rank(), &text)?
                }
                None => Vec::new(),
            };
            commands::present(&input, extra)
        }
        Command::Analyze { input, json } => commands::analyze(&Input::read(&input)?, &caps, json),
        Command::Verify { input } => commands::verify(&Input::read(&input)?, &caps),
        Command::Tables { check, json } => commands::tables(check, &caps, json),
        Command::Serve { port, dump } => {
            let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::Unavailable(e.to_string()))?;
            runtime
                .block_on(server::serve(port, caps, dump))
                .map_err(|e| CliError::Unavailable(format!("serve: {e}")))?;
            Ok(Output { text: String::new(), code: 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = match Caps::from_env() {
        Ok(caps) => caps,
        Err(e) => {
            eprintln!("coxmut: COXMUT_CAPS: {e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command, caps) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("coxmut: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
