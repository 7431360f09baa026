use clap::Parser;
use lvar_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("lvar: {e}");
        std::process::exit(e.exit_code());
    }
}
