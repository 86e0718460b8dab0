use std::process::ExitCode;

use clap::Parser;
use latconst_cli::{render, run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("{}", CliError::Io(e.to_string()).to_json());
            return ExitCode::from(1);
        }
    }
    let result = run(&cli).and_then(|doc| {
        let text = render(&doc, cli.format);
        match &cli.output {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
