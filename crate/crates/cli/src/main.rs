mod report;

use std::collections::HashMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use frobrat::catalog;
use frobrat::chartable::{TableConfig, DEFAULT_DIXON_CAP};
use frobrat::group::DEFAULT_CAP;
use frobrat::harness::{self, HarnessConfig, Status};
use frobrat::{describe, Error};

#[derive(Parser)]
#[command(name = "frobrat", version, about = "Rationality analysis of finite and Frobenius groups")]
struct Cli {
    /// Enumeration cap (elements per group).
    #[arg(long, global = true, env = "FROBRAT_CAP", default_value_t = DEFAULT_CAP)]
    cap: usize,

    /// Largest group order for Dixon-Schneider tables.
    #[arg(long, global = true, env = "FROBRAT_DIXON_CAP", default_value_t = DEFAULT_DIXON_CAP)]
    dixon_cap: u64,

    /// Directory for cached character tables.
    #[arg(long, global = true, env = "FROBRAT_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    #[arg(long, global = true, env = "FROBRAT_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Classes, prime graph and rationality report of a group.
    Analyze {
        /// Description file, `-` for stdin, or `catalog:NAME`.
        group: String,
    },
    /// Character table of a group.
    Chartable { group: String },
    /// Catalog entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the reproduction checks.
    VerifyPaper {
        /// Only rows of this criterion.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=12))]
        criterion: Option<u8>,

        /// Replace an instance's generator matrices: `NAME=a,b,c,d;e,f,g,h`.
        #[arg(long, hide = true)]
        mutate: Vec<String>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
}

fn read_description(arg: &str) -> Result<String, Error> {
    if arg.starts_with("catalog:") {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    std::fs::read_to_string(arg).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{arg}: {e}"))))
}

fn parse_mutation(spec: &str) -> Result<(String, Vec<Vec<i64>>), String> {
    let (name, body) = spec.split_once('=').ok_or("expected NAME=entries")?;
    let mats = body
        .split(';')
        .map(|m| {
            m.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|e| format!("`{x}`: {e}")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((name.to_string(), mats))
}

/// Exit code for a library error: 2 for input problems, 1 otherwise.
fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Parse { .. } | Error::UnknownName(_) | Error::Io(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let table_cfg = TableConfig {
        dixon_cap: cli.dixon_cap,
    };
    match &cli.command {
        Command::Analyze { group } => {
            let g = match read_description(group).and_then(|t| describe::load(&t, cli.cap)) {
                Ok(g) => g,
                Err(e) => return fail(&e),
            };
            match report::analyze(&g, &table_cfg, cli.cache_dir.as_deref()) {
                Ok(r) => {
                    print!("{}", r.render(cli.format));
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e),
            }
        }
        Command::Chartable { group } => {
            let table = read_description(group)
                .and_then(|t| describe::load(&t, cli.cap))
                .and_then(|g| frobrat::cache::cached_table(&g, &table_cfg, cli.cache_dir.as_deref()));
            match table {
                Ok(t) => {
                    print!("{}", report::chartable(&t, cli.format));
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e),
            }
        }
        Command::Catalog { action: CatalogAction::List } => {
            for e in catalog::entries() {
                match cli.format {
                    Format::Text => println!("{:<20} {:<14} {:>6}  {}", e.name, e.kind, e.order, e.note),
                    Format::Machine => println!("{} kind={} order={}", e.name, e.kind, e.order),
                }
            }
            ExitCode::SUCCESS
        }
        Command::VerifyPaper { criterion, mutate } => {
            let mut mutations = HashMap::new();
            for m in mutate {
                match parse_mutation(m) {
                    Ok((name, mats)) => {
                        mutations.insert(name, mats);
                    }
                    Err(msg) => {
                        eprintln!("error: --mutate {m}: {msg}");
                        return ExitCode::from(2);
                    }
                }
            }
            let cfg = HarnessConfig {
                cap: cli.cap,
                dixon_cap: cli.dixon_cap,
                cache_dir: cli.cache_dir.clone(),
                mutations,
            };
            let rows = match criterion {
                Some(c) => harness::criterion_rows(cfg, *c),
                None => harness::verify_paper(cfg),
            };
            print!("{}", report::verification(&rows, cli.format));
            if harness::summarize(&rows) == Status::Fail {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
