use std::io;

fn main() {
    let code = tunit::runner::cli_main(std::env::args(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
