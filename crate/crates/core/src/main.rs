use clap::Parser;

fn main() {
    let cli = su11::cli::Cli::parse();
    std::process::exit(su11::cli::run(&cli));
}
