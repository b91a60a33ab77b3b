//! Command-line front end: reads state files, runs the separability checks
//! and prints a JSON [`report::Report`] on stdout. Diagnostics go to stderr.
//!
//! Exit codes: 0 separable (or success), 1 not separable, 2 input error,
//! 3 the rank-1 oracle disagrees under `--verify`.

#![forbid(unsafe_code)]

pub mod args;
pub mod bench;
pub mod commands;
pub mod exit;
pub mod io;
pub mod report;

use clap::Parser;

use args::{Cli, Command};

pub fn run() -> u8 {
    match args::Cli::try_parse() {
        Ok(cli) => run_cli(&cli),
        Err(error) => exit::from_clap_error(error),
    }
}

pub fn run_cli(cli: &Cli) -> u8 {
    let outcome = match &cli.command {
        Command::CheckFull(a) => commands::check_full(a).map(|(r, c)| (Some(r), c)),
        Command::CheckPq(a) => commands::check_pq(a).map(|(r, c)| (Some(r), c)),
        Command::Decompose(a) => commands::decompose_file(a).map(|(r, c)| (Some(r), c)),
        Command::Random(a) => commands::random(a),
        Command::Bench(a) => commands::bench(a).map(|(r, c)| (Some(r), c)),
    };
    match outcome {
        Ok((report, code)) => {
            if let Some(report) = report {
                println!("{}", report.to_json());
            }
            if code == exit::ORACLE_DISAGREES {
                eprintln!("sepcheck: oracle disagrees with the separability test");
            }
            code
        }
        Err(error) => {
            eprintln!("sepcheck: {error:#}");
            exit::INPUT_ERROR
        }
    }
}
