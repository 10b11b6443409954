//! Prints the Graphviz block diagram for the instance given on the command
//! line (default: the two-loop fixture).
//!
//! ```bash
//! cargo run --example block_diagram -- crates/core/fixtures/forest.json | dot -Tsvg > blocks.svg
//! ```

use ckaf::instance::Instance;
use ckaf::report::{run, Command, Format, RunOptions};

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable instance"),
        None => include_str!("../fixtures/fix_a.json").to_string(),
    };
    let inst = Instance::parse(&text).unwrap_or_else(|e| panic!("{e}"));
    let opts = RunOptions { format: Format::Dot, max_len: 2, ..Default::default() };
    let out = run(Command::Report, &inst, &opts);
    print!("{}", out.output);
    std::process::exit(out.status);
}
