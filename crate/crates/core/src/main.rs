use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = hyperprod::cli::run(std::env::args_os(), &mut io::stdin().lock());
    io::stdout().write_all(result.stdout.as_bytes()).ok();
    io::stderr().write_all(result.stderr.as_bytes()).ok();
    ExitCode::from(result.exit_code as u8)
}
