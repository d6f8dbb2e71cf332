use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hopftwist::catalog;
use hopftwist::error::Error;
use hopftwist::hopf::{Deformation, Indices};
use hopftwist::verify::{self, Check, IndexSelection, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(name = "hopftwist", version, about = "Exact checks of twisted Poincaré and Galilei Hopf algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Derive objects from the twists.
    Derive {
        #[command(subcommand)]
        what: DeriveCommand,
    },
    /// Contract a generalized deformation to its Galilei counterpart.
    Contract(CaseArgs),
    /// Inspect the closed-form catalog.
    Catalog {
        #[command(subcommand)]
        what: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum DeriveCommand {
    /// Star-commutator tables [x_μ, x_ν].
    Spacetime(CaseArgs),
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Print every entry as JSON.
    Dump {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    order: Option<u32>,
    #[arg(long, value_name = "ID")]
    deformation: Vec<String>,
    /// `k=..,l=..,i=..` or `all`.
    #[arg(long)]
    indices: Option<String>,
    #[arg(long, value_name = "json|text")]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated subset of cybe, cocycle, normalization, coproducts, antipode, spacetime, contraction.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    /// Add wall times to the report.
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CaseArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

fn build_config(file: Option<&PathBuf>, c: &Common) -> Result<RunConfig, Error> {
    let mut cfg = match file {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    if let Some(n) = c.order {
        cfg.order = n;
    }
    if !c.deformation.is_empty() {
        cfg.deformations = c.deformation.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    }
    if let Some(i) = &c.indices {
        cfg.indices = i.parse()?;
    }
    if let Some(f) = &c.format {
        cfg.format = f.parse()?;
    }
    Ok(cfg)
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn json_text(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value") + "\n"
}

fn single_case(cfg: &RunConfig) -> Result<(Deformation, Indices), Error> {
    let cases = cfg.cases()?;
    match (cfg.deformations.len(), cfg.indices) {
        (1, IndexSelection::Fixed(_)) => Ok(cases[0]),
        _ => Err(Error::Config("contract needs exactly one --deformation and fixed --indices".into())),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Verify(a) => {
            let mut cfg = build_config(a.config.as_ref(), &a.common)?;
            if !a.checks.is_empty() {
                cfg.checks = a.checks.iter().map(|s| s.parse::<Check>()).collect::<Result<_, _>>()?;
            }
            cfg.timings |= a.timings;
            let report = verify::run(&cfg)?;
            emit(a.common.out.as_ref(), &report.render(cfg.format))?;
            Ok(ExitCode::from(report.exit_code() as u8))
        }
        Command::Derive { what: DeriveCommand::Spacetime(a) } => {
            let mut cfg = build_config(a.config.as_ref(), &a.common)?;
            if a.common.deformation.is_empty() && a.config.is_none() {
                cfg.deformations = Deformation::GENERALIZED.to_vec();
            }
            let doc = verify::emit_spacetime_tables(&cfg)?;
            let text = match cfg.format {
                OutputFormat::Json => json_text(&doc),
                OutputFormat::Text => verify::spacetime_text(&doc),
            };
            emit(a.common.out.as_ref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Contract(a) => {
            let cfg = build_config(a.config.as_ref(), &a.common)?;
            let (d, idx) = single_case(&cfg)?;
            let doc = verify::contraction_document(d, &idx, cfg.order)?;
            let text = match cfg.format {
                OutputFormat::Json => json_text(&doc),
                OutputFormat::Text => {
                    let mut s = String::new();
                    for c in doc["coproducts"].as_array().into_iter().flatten() {
                        let ok = if c["matches_catalog"].as_bool() == Some(true) { "match" } else { "differs" };
                        s += &format!("Δ({}) = {}   [{} {ok}]\n", c["generator"].as_str().unwrap_or(""), c["coproduct"].as_str().unwrap_or(""), c["catalog"].as_str().unwrap_or(""));
                    }
                    s
                }
            };
            emit(a.common.out.as_ref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog { what: CatalogCommand::Dump { out } } => {
            emit(out.as_ref(), &json_text(&catalog::dump()))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
