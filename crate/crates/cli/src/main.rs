use std::io;
use std::process::ExitCode;

use clap::Parser;
use lctkit::commands::{run, Cli, Io};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (mut stdout, mut stderr) = (io::stdout().lock(), io::stderr());
    let mut io = Io {
        stdout: &mut stdout,
        stderr: &mut stderr,
    };
    match run(&cli, &mut io) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
