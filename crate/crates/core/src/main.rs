use std::io;
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};
use wfreconf::checker::DEFAULT_MAX_STATES;
use wfreconf::cli::{self, CheckArgs, SimulateArgs};
use wfreconf::PropertyId;

/// Validate, simulate and model-check workflow reconfiguration.
#[derive(Parser)]
#[command(name = "wfreconf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check configuration well-formedness.
    Validate {
        /// Workflow or configuration document, or a built-in name.
        spec: String,
    },
    /// Run one random execution and print its trace.
    Simulate {
        spec: String,
        #[arg(long)]
        scenario: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the trace here instead of standard output.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Explore every execution and check the requirements.
    Check {
        spec: String,
        #[arg(long)]
        scenario: String,
        #[arg(long, value_delimiter = ',', default_value = "R1,R2,R3,R4,deadlock")]
        properties: Vec<PropertyId>,
        /// Export the reachable transition system as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
        /// Include state digests in counterexamples.
        #[arg(long)]
        verbose: bool,
        /// Print reports as JSON.
        #[arg(long)]
        json: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    let code = match cli.command {
        Command::Validate { spec } => cli::cmd_validate(&spec, &mut out, &mut err),
        Command::Simulate {
            spec,
            scenario,
            seed,
            trace,
        } => cli::cmd_simulate(
            &SimulateArgs {
                spec,
                scenario,
                seed,
                trace,
            },
            &mut out,
            &mut err,
        ),
        Command::Check {
            spec,
            scenario,
            properties,
            dot,
            max_states,
            verbose,
            json,
        } => cli::cmd_check(
            &CheckArgs {
                spec,
                scenario,
                properties,
                dot,
                max_states,
                verbose,
                json,
            },
            &mut out,
            &mut err,
        ),
    };
    process::exit(code.code());
}
