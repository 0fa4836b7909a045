// SPDX-License-Identifier: MIT OR Apache-2.0
//! The `bklkit` command-line tool.

use clap::Parser;

use bklkit::cli::{exit_code, run, Cli};

fn main() {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let result = run(cli, &mut stdout.lock());
    if let Err(e) = &result {
        eprintln!("bklkit: {e}");
    }
    std::process::exit(exit_code(&result));
}
