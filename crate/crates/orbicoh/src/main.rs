use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = orbicoh::run(std::env::args_os());
    let mut out = std::io::stdout().lock();
    if outcome.code == 2 {
        eprint!("{}", outcome.output);
    } else if writeln!(out, "{}", outcome.output.trim_end()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.code)
}
