use std::io::Write;

fn main() {
    if let Err(e) = entrocone_cli::configure_threads() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
    let (outcome, diagnostics) = entrocone_cli::run(std::env::args_os());
    print!("{}", outcome.output);
    eprint!("{diagnostics}");
    let _ = std::io::stdout().flush();
    std::process::exit(outcome.status);
}
