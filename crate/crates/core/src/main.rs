use std::process::ExitCode;

fn main() -> ExitCode {
    let code = squeeznet::cli::run(std::env::args_os());
    ExitCode::from(code)
}
