use clap::Parser;

fn main() {
    let cli = preopt::cli::Cli::parse();
    let code = preopt::cli::run(cli, &mut std::io::stdout());
    std::process::exit(code);
}
