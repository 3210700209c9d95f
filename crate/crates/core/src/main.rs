use std::process::ExitCode;

use accat::cli::{execute, Cli, EXIT_INPUT};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let out = execute(&cli);
    for line in &out.lines {
        if out.code == EXIT_INPUT || line.starts_with("error:") {
            eprintln!("{line}");
        } else {
            println!("{line}");
        }
    }
    if let Some(path) = &cli.json_out {
        let text = serde_json::to_string_pretty(&out.json).expect("serializable");
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    ExitCode::from(out.code as u8)
}
