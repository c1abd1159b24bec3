use std::process::ExitCode;

fn main() -> ExitCode {
    wavicle::cli::main()
}
