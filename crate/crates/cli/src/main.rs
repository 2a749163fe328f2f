mod args;
mod cache;
mod commands;
mod error;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format};
use cache::SubcomplexCache;
use error::CliError;

fn run(cli: &Cli) -> Result<commands::Output, CliError> {
    let common = &cli.common;
    configure_pool(common.jobs)?;
    let input = input::load(common.input.as_deref(), common.kind)?;
    let cache = if common.no_cache {
        SubcomplexCache::disabled()
    } else {
        SubcomplexCache::new(SubcomplexCache::default_dir(common.cache_dir.as_deref()))
    };
    match &cli.command {
        Command::Validate => commands::validate(&input),
        Command::Betti => commands::betti(&input, &cache),
        Command::Ring { products } => commands::ring(&input, &cache, common, *products),
        Command::Quadrics { check, samples } => commands::quadrics(&input, common, *check, *samples),
        Command::Massey { a, b, c } => commands::massey(&input, a, b, c),
    }
}

#[cfg(feature = "parallel")]
fn configure_pool(jobs: usize) -> Result<(), CliError> {
    if jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn configure_pool(_jobs: usize) -> Result<(), CliError> {
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = match cli.common.format {
                Format::Text => out.text,
                // serde_json::Value keeps keys sorted, so output is canonical.
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json renders") + "\n",
            };
            // A closed pipe downstream is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
