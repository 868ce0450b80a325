use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(netrand::cli::main_with_args())
}
