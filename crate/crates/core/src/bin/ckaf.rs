use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use ckaf::instance::{parse_window_arg, Instance};
use ckaf::report::{run, Command, Format, RunOptions, EXIT_USAGE};

#[derive(Clone, Copy, ValueEnum)]
enum Cmd {
    Check,
    Construct,
    Embed,
    Verify,
    Oracle,
    Report,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Text,
    Dot,
}

/// Almost-proper labellings of tree-plus-loop graphs and one stage of the AF embedding.
#[derive(Parser)]
#[command(name = "ckaf", version)]
struct Args {
    command: Cmd,
    /// Instance document (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Window points, e.g. "0,1" (rank one) or "0,0;1,0".
    #[arg(long)]
    window: Option<String>,
    /// Longest path in the verification sweeps; generator legs go up to one less.
    #[arg(long, default_value_t = 3)]
    max_len: usize,
    #[arg(long, value_enum, default_value_t = Fmt::Text)]
    format: Fmt,
    /// Number of random expressions for `oracle`.
    #[arg(long, default_value_t = 500)]
    cases: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Build with one factor of q removed (negative control).
    #[arg(long, hide = true)]
    corrupt_q: bool,
}

fn fail(message: String) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_USAGE as u8)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let text = match std::fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => return fail(format!("{}: {e}", args.input.display())),
    };
    let inst = match Instance::parse(&text) {
        Ok(i) => i,
        Err(e) => return fail(format!("{}: {e}", args.input.display())),
    };
    let window = match args.window.as_deref().map(|w| parse_window_arg(&inst.gamma, w)).transpose() {
        Ok(w) => w,
        Err(e) => return fail(e.to_string()),
    };
    let command = match args.command {
        Cmd::Check => Command::Check,
        Cmd::Construct => Command::Construct,
        Cmd::Embed => Command::Embed,
        Cmd::Verify => Command::Verify,
        Cmd::Oracle => Command::Oracle,
        Cmd::Report => Command::Report,
    };
    let format = match args.format {
        Fmt::Json => Format::Json,
        Fmt::Text => Format::Text,
        Fmt::Dot => Format::Dot,
    };
    let opts = RunOptions {
        window,
        max_len: args.max_len,
        format,
        oracle_cases: args.cases,
        seed: args.seed,
        corrupt_q: args.corrupt_q,
    };
    let out = run(command, &inst, &opts);
    if out.status == EXIT_USAGE {
        eprint!("{}", out.output);
    } else {
        print!("{}", out.output);
    }
    ExitCode::from(out.status as u8)
}
