//! The `sumprod` command line: argument definitions, output encodings, the
//! result cache and one handler per subcommand.

pub mod args;
pub mod cache;
pub mod commands;
pub mod error;
pub mod output;

pub use args::{Cli, Command};
pub use error::{CliError, CliResult};

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Falpha(a) => commands::falpha(cli, a),
        Command::Search(a) => commands::search(cli, a),
        Command::Construct(a) => commands::construct(cli, a),
        Command::Regularity(a) => commands::regularity(cli, a),
        Command::Verify(a) => commands::verify(cli, a),
    }
}
