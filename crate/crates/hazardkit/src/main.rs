use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(hazardkit::cli::run(std::env::args_os()))
}
