use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(subordlab::cli::dispatch(std::env::args_os()))
}
