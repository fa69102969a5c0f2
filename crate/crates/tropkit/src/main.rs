use std::process::ExitCode;

fn main() -> ExitCode {
    tropkit::cli_main()
}
