use bpfkit::monoid::CapMode;
use bpfkit_cli::{run, CliError, Command, Options};
use clap::{Parser, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cap {
    Lcm,
    Product,
}

/// Monoids in finitely generated abelian groups and base point freeness on
/// Mori dream spaces.
#[derive(Debug, Parser)]
#[command(name = "bpfkit", version)]
struct Args {
    command: Command,
    /// Input documents (one, or two for `intersect`).
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Group element, e.g. "3;1" for free part 3 and torsion part 1.
    #[arg(long, allow_hyphen_values = true)]
    element: Option<String>,
    /// Canonical class for `gorenstein` and `fujita`.
    #[arg(long, allow_hyphen_values = true)]
    kx: Option<String>,
    /// Include witnesses: coefficient vectors, failing faces, failure tuples.
    #[arg(long)]
    witness: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Coefficient cap in the membership polytope.
    #[arg(long, value_enum, default_value = "lcm")]
    cap_mode: Cap,
    /// Report the elapsed time.
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(args.threads).build_global() {
        eprintln!("error: cannot start thread pool: {e}");
        return ExitCode::from(1);
    }
    let opts = Options {
        command: args.command,
        files: args.files,
        element: args.element,
        kx: args.kx,
        witness: args.witness,
        cap_mode: match args.cap_mode {
            Cap::Lcm => CapMode::Lcm,
            Cap::Product => CapMode::Product,
        },
        timing: args.timing,
    };
    match run(&opts) {
        Ok(doc) => {
            match args.format {
                Format::Json => print!("{}", doc.to_json()),
                Format::Text => print!("{}", doc.to_text()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                _ => 1,
            })
        }
    }
}
