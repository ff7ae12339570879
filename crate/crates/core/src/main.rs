use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(e) = pathforge::cli::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = pathforge::cli::run(std::env::args_os(), &mut out, &mut std::io::stderr());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
