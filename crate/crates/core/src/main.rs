use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(epioptic::cli::run(std::env::args_os()))
}
