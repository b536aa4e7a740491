use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = spinflip::cli::run(std::env::args_os());
    if let Some(out) = &outcome.stdout {
        let _ = std::io::stdout().write_all(out.as_bytes());
    }
    if let Some(err) = &outcome.stderr {
        let _ = std::io::stderr().write_all(err.as_bytes());
    }
    ExitCode::from(outcome.code as u8)
}
