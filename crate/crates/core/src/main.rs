use std::io;

fn main() {
    let code = reldecay::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
