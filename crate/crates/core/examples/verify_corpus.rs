//! Run every corpus check through the command-line front end.

use std::io;

fn main() {
    let args = ["spantree-kh", "verify", "--all"];
    let code = spantree_kh::cli::run(args, &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
