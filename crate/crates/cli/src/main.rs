use clap::Parser;

use spinlab::{execute, Cli};

fn main() {
    std::process::exit(execute(&Cli::parse()));
}
