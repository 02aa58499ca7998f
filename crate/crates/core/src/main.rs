use std::io;

fn main() {
    let code = flowgraph::cli::run_cli(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
