use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gcliff_cli::{run, Command, Format, JobSpec, Mode, Source};

/// Exact computations with graded Clifford algebras.
#[derive(Parser, Debug)]
#[command(name = "gcliff", version)]
struct Args {
    command: Command,
    /// Input JSON file.
    #[arg(short, long, conflicts_with = "json")]
    input: Option<PathBuf>,
    /// Input JSON given inline.
    #[arg(long)]
    json: Option<String>,
    #[arg(short, long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Truncation degree.
    #[arg(short = 'D', long)]
    degree: Option<usize>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let input = args.input.map(Source::File).or(args.json.map(Source::Inline));
    let out = run(&JobSpec { command: args.command, input, format: args.format, degree: args.degree, mode: args.mode });
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
