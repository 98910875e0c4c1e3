use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let config = berkdisc_cli::parse_args(std::env::args_os()).unwrap_or_else(|e| e.exit());
    let (code, out) = berkdisc_cli::run(&config);
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
