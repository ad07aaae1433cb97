use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use linfdim_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli, &mut std::io::stdin().lock()) {
        Ok(done) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(done.stdout.as_bytes());
            let _ = out.flush();
            if let Some(note) = done.note {
                eprintln!("linfdim: {note}");
            }
            ExitCode::from(done.code)
        }
        Err(e) => {
            eprintln!("linfdim: {e}");
            ExitCode::from(e.code())
        }
    }
}
