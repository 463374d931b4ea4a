use clap::Parser;

fn main() {
    let cli = brace_forge_cli::args::Cli::parse();
    std::process::exit(brace_forge_cli::run(cli));
}
