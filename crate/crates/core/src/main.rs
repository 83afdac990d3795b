use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = skew_capelli::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    if !out.stderr.is_empty() && !out.stderr.ends_with('\n') {
        eprintln!();
    }
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
