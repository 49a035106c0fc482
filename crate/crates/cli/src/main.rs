use clap::Parser;

fn main() {
    let cli = polycut_cli::Cli::parse();
    std::process::exit(polycut_cli::run(cli));
}
