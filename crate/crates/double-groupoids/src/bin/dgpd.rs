use std::process::ExitCode;

fn main() -> ExitCode {
    let code = double_groupoids::cli_dispatch(std::env::args());
    ExitCode::from(u8::try_from(code).unwrap_or(2))
}
