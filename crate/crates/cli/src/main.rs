use clap::Parser;
use rigidity_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (result, rendered) = run(&cli);
    print!("{rendered}");
    if let Some(msg) = &result.message {
        eprintln!("rigidity {}: {msg}", result.command);
    }
    std::process::exit(result.exit_code());
}
