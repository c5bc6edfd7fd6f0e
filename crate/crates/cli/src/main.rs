use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    match ureg_cli::run(std::env::args_os()) {
        Ok(outcome) => {
            let out = std::io::stdout().write_all(outcome.stdout.as_bytes());
            let err = std::io::stderr().write_all(outcome.stderr.as_bytes());
            if out.is_err() || err.is_err() {
                return ExitCode::from(8);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            let _ = e.print();
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
