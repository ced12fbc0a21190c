use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lrc_cli::commands::{self, Mode, Output, DEFAULT_SEED, EXIT_INVALID};
use lrc_cli::table;
use lrc_core::code::distance::DEFAULT_BUDGET;

#[derive(Parser)]
#[command(name = "lrc", version, about = "Construct and certify locally repairable codes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Bounded,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a code from a JSON plan and write its matrix file.
    Construct {
        #[arg(long)]
        plan: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check rank, locality and minimum distance of a matrix file.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        /// Largest number of message classes to enumerate before falling back to bounds.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Encode a random message, erase positions and repair them locally.
    RepairDemo {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        erase: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Print the families and parameters available over GF(q).
    Table {
        #[arg(long)]
        q: u64,
    },
    /// Print which r values each family admits over GF(q).
    Params {
        #[arg(long)]
        q: u64,
    },
}

fn read(path: &PathBuf) -> Result<String, Output> {
    fs::read_to_string(path)
        .map_err(|e| Output { stdout: format!("error: cannot read {}: {e}\n", path.display()), exit: EXIT_INVALID })
}

fn valid_q(q: u64) -> Result<(), Output> {
    lrc_core::Field::from_order(q).map(|_| ()).map_err(|e| Output { stdout: format!("error: {e}\n"), exit: EXIT_INVALID })
}

fn run(cli: Cli) -> Output {
    let res = match cli.cmd {
        Cmd::Construct { plan, output } => read(&plan).map(|text| {
            let (matrix, mut out) = commands::construct(&text);
            if let Some(m) = matrix {
                if let Err(e) = fs::write(&output, m) {
                    out.stdout.push_str(&format!("error: cannot write {}: {e}\n", output.display()));
                    out.exit = EXIT_INVALID;
                } else {
                    out.stdout.push_str(&format!("wrote {}\n", output.display()));
                }
            }
            out
        }),
        Cmd::Verify { file, mode, budget, seed } => read(&file).map(|text| {
            let mode = match mode {
                ModeArg::Exhaustive => Mode::Exhaustive,
                ModeArg::Bounded => Mode::Bounded,
            };
            commands::verify(&text, mode, budget, seed)
        }),
        Cmd::RepairDemo { file, erase, seed } => read(&file).map(|text| commands::repair_demo(&text, &erase, seed)),
        Cmd::Table { q } => valid_q(q).map(|_| Output { stdout: table::render_table(q), exit: 0 }),
        Cmd::Params { q } => valid_q(q).map(|_| Output { stdout: table::render_params(q), exit: 0 }),
    };
    res.unwrap_or_else(|e| e)
}

fn main() -> ExitCode {
    let out = run(Cli::parse());
    print!("{}", out.stdout);
    ExitCode::from(out.exit as u8)
}
