mod commands;
mod error;
mod report;
mod schema;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use commands::{Command, Options};
use error::{CliError, Result};
use schema::Dataset;

/// Homology and comparison maps for equivariant and twisted Floer datasets.
#[derive(Debug, Parser)]
#[command(name = "polarfloer", version)]
struct Args {
    command: Command,

    /// Dataset file, or the block kind (B0, Bplus, Bminus, Binfty) for `blocks`.
    input: String,

    /// Twisted window, or block size for `blocks`.
    #[arg(long, env = "POLARFLOER_WINDOW")]
    window: Option<usize>,

    /// Truncation level for ss-compare; degree shift for kunneth.
    #[arg(long)]
    truncate: Option<usize>,

    /// Also report homology degree by degree.
    #[arg(long)]
    grading: bool,

    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(short, long, action = clap::ArgAction::Count, env = "POLARFLOER_VERBOSE")]
    verbose: u8,
}

fn read(path: &Path) -> Result<Dataset> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    schema::parse(&text)
}

fn write(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(args: &Args) -> Result<bool> {
    let start = Instant::now();
    if args.command == Command::Blocks {
        let a = commands::blocks(&args.input, args.window.unwrap_or(4))?;
        write(args.out.as_deref(), &schema::emit(&Dataset::Z2Complex(a)))?;
        return Ok(true);
    }
    let ds = read(Path::new(&args.input))?;
    let opts = Options { window: args.window, truncate: args.truncate, grading: args.grading };
    let report = commands::run(args.command, ds, opts)?;
    write(args.out.as_deref(), &report.render(args.verbose, start.elapsed()))?;
    Ok(!report.failed())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("polarfloer: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
