use std::process::ExitCode;

use clap::Parser;
use qkostant_cli::{dispatch, thread_cap, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match thread_cap(cli.threads) {
        Ok(Some(k)) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build_global()
                .expect("thread pool is configured once");
        }
        Ok(None) => {}
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = match dispatch(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print!("{}", out.text);
    if let Some(path) = &cli.report {
        let mut json = serde_json::to_string_pretty(&out.report).expect("reports serialize");
        json.push('\n');
        if let Err(e) = std::fs::write(path, json) {
            eprintln!("error: cannot write --report {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if out.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
