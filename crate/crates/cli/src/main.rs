use std::process::ExitCode;

use clap::Parser;

use artinloc_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = execute(&cli);
    if let Some(blob) = &run.bug_report {
        eprint!("{blob}");
    }
    if run.code == 2 || (run.code == 3 && run.output.starts_with("internal error")) {
        eprint!("{}", run.output);
    } else if let Some(path) = &cli.common.output {
        if let Err(e) = std::fs::write(path, &run.output) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else {
        print!("{}", run.output);
    }
    ExitCode::from(run.code as u8)
}
