use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(tailgap::cli::run() as u8)
}
