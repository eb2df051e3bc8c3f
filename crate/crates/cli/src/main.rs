use clap::Parser;
use hmf_cli::config::Cli;

fn main() {
    let cli = Cli::parse();
    std::process::exit(hmf_cli::main_with(cli.command, cli.opts));
}
