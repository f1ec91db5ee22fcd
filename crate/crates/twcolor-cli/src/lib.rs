//! Library side of the `twcolor` binary: argument definitions and command
//! implementations, exposed so integration tests can drive commands directly.
//!
//! Exit code contract: 0 success, 1 invariant failure, 2 input error.

pub mod args;
pub mod commands;

use args::{Cli, Command};
use commands::{CmdError, CmdResult};

pub fn run(cli: Cli) -> i32 {
    let result: CmdResult<()> = match &cli.command {
        Command::Color {
            graph,
            td,
            t,
            algorithm,
            seed,
        } => commands::cmd_color(graph, td, *t, algorithm, *seed).map(|_| ()),
        Command::Adversary {
            t,
            k,
            victim,
            seed,
            out,
        } => commands::cmd_adversary(*t, *k, victim, *seed, out.as_deref()).map(|_| ()),
        Command::Verify { graph, td } => commands::caps_from_env()
            .and_then(|caps| commands::cmd_verify(graph, td.as_deref(), &caps))
            .map(|_| ()),
        Command::Suite {
            config,
            out,
            format,
        } => commands::cmd_suite(config.as_deref(), out.as_deref(), format).map(|_| ()),
        Command::Gen {
            t,
            n,
            density,
            seed,
            out,
        } => commands::cmd_gen(*t, *n, *density, *seed, out.as_deref()).map(|_| ()),
    };
    match result {
        Ok(()) => 0,
        Err(e @ CmdError::Input(_)) | Err(e @ CmdError::Invariant(_)) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}
