use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(uncert_cli::run(std::env::args_os()))
}
