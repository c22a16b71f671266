use std::io;

fn main() {
    let status = cubespec::cli::main_with_args(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr());
    std::process::exit(status);
}
