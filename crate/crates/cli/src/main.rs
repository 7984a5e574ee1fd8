use clap::Parser;
use confstab_cli::{run, Cli, Verdict};

fn main() {
    let cli = Cli::parse();
    let outcome = match run(cli) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("{err}");
            std::process::exit(err.exit_code());
        }
    };

    match &outcome.destination {
        Some(path) => {
            if let Err(err) = confstab_cli::write_atomic(path, &outcome.output) {
                eprintln!("i/o error writing {}: {err}", path.display());
                std::process::exit(1);
            }
        }
        None => print!("{}", outcome.output),
    }

    if let Some(summary) = &outcome.summary {
        eprintln!("{summary}");
    }

    match outcome.verdict {
        Verdict::Pass => {}
        Verdict::ClaimFailed(msg) => {
            eprintln!("{msg}");
            std::process::exit(1);
        }
    }
}
