use std::io::Write;

fn main() {
    let outcome = affine_macdonald::cli::run_args(std::env::args_os());
    let text = outcome.output;
    if outcome.status == affine_macdonald::cli::EXIT_USAGE {
        eprint!("{text}");
    } else {
        let _ = std::io::stdout().write_all(text.as_bytes());
    }
    std::process::exit(outcome.status);
}
