use clap::Parser;

fn main() {
    let cli = bsd_cli::Cli::parse();
    let code = bsd_cli::run(cli, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
