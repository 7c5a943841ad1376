use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = proxlat_cli::run(std::env::args_os());
    std::io::stdout().write_all(outcome.stdout.as_bytes()).expect("stdout");
    std::io::stderr().write_all(outcome.stderr.as_bytes()).expect("stderr");
    ExitCode::from(outcome.status as u8)
}
