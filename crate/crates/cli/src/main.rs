use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(sepcheck::run())
}
