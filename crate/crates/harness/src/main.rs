use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(cookeval::cli::run() as u8)
}
