use clap::Parser;

fn main() {
    let cli = twcolor_cli::args::Cli::parse();
    std::process::exit(twcolor_cli::run(cli));
}
