use std::process::ExitCode;

fn main() -> ExitCode {
    graphanon_cli::run(std::env::args_os())
}
