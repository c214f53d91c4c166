use std::io::Write;

fn main() {
    let outcome = multiset_smt::cli::run(std::env::args_os());
    // a closed pipe is not worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{}", outcome.render());
    std::process::exit(outcome.code);
}
