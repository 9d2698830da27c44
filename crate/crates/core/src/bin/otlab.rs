use clap::Parser;

fn main() {
    std::process::exit(otlab::cli::run(otlab::cli::Cli::parse()));
}
