use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = herbrand_cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(outcome.output.as_bytes());
    ExitCode::from(outcome.code as u8)
}
