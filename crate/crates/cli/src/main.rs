use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(spinplan_cli::run(std::env::args_os()))
}
