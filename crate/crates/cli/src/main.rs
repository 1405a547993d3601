use std::process::ExitCode;

fn main() -> ExitCode {
    xxchain_cli::run(std::env::args_os())
}
