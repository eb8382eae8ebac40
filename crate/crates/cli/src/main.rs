use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hovey_forge::{demo_spec, emit_report, load_spec, run, Command, Format, Overrides};

/// Catalogs, Ext tables, cotorsion pairs and Hovey triples over
/// finite-dimensional quiver algebras.
#[derive(Parser, Debug)]
#[command(name = "hovey-forge", version)]
struct Cli {
    command: Command,
    /// JSON run specification (optional with --demo).
    specfile: Option<PathBuf>,
    /// Largest middle term for witness searches.
    #[arg(long)]
    bound: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Exit 0 even when some entries are only bound-qualified.
    #[arg(long)]
    allow_inconclusive: bool,
    /// Enables randomized isomorphism fallbacks with this seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_parser = ["lambda2", "a2", "n3"])]
    demo: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let overrides = Overrides { demo: cli.demo.clone(), bound: cli.bound, seed: cli.seed };
    let spec = match (&cli.specfile, &cli.demo) {
        (Some(path), _) => load_spec(path, &overrides),
        (None, Some(name)) => demo_spec(name, &overrides),
        (None, None) => {
            eprintln!("error: give a spec file or --demo");
            return ExitCode::from(2);
        }
    };
    let spec = match spec {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let start = std::time::Instant::now();
    let report = match run(&spec, cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print!("{}", emit_report(&report, cli.format));
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    ExitCode::from(report.exit_code(cli.allow_inconclusive) as u8)
}
