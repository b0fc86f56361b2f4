//! `borcherds`: lattices, theta series, Borcherds products and divisor relations from the command line.

mod commands;
mod files;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::files::Failure;

#[derive(Parser)]
#[command(name = "borcherds", version, about = "Exact Borcherds product and divisor relation computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel expansion.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice files.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Theta series of a positive definite lattice.
    Theta {
        lattice: String,
        /// Last exponent kept.
        #[arg(long, default_value_t = 8)]
        prec: i64,
    },
    /// Truncated product expansion at a cusp.
    Expand(ExpandArgs),
    /// The relation `Σ c(−m, μ) Z(m, μ)` of a form.
    Relation(FormArgs),
    /// The relation of a form recomputed through the Niemeier embedding.
    EmbedTrick {
        #[command(flatten)]
        form: FormArgs,
        /// Theta precision for the Niemeier lattices.
        #[arg(long, default_value_t = 8)]
        prec: i64,
    },
    /// Pairing of a form's principal part with a coefficient sequence.
    Pair {
        #[command(flatten)]
        form: FormArgs,
        /// Scalar series supplying `a(m)`; without it the pairing uses the symbols `Z(m, μ)`.
        #[arg(long)]
        series: Option<String>,
    },
    /// Write a bundled form as a form file.
    FormGen {
        name: String,
        /// Last exponent kept.
        #[arg(long, default_value_t = 8)]
        prec: i64,
        #[arg(long, default_value_t = 1)]
        scale: i64,
    },
    /// Write a classical series (`e4`, `e6`, ..., `delta`, `j`) as a series file.
    SeriesGen {
        name: String,
        #[arg(long, default_value_t = 8)]
        prec: i64,
    },
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Rank, signature, discriminant form and maximality.
    Info { lattice: String },
    /// Write a bundled lattice as a lattice file.
    Export { name: String },
}

#[derive(Args)]
struct FormArgs {
    #[arg(long)]
    form: String,
    /// Integer multiplier applied to the form.
    #[arg(long, default_value_t = 1)]
    scale: i64,
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(long)]
    lattice: String,
    #[command(flatten)]
    form: FormArgs,
    /// Primitive isotropic vector; found by search when omitted.
    #[arg(long, allow_hyphen_values = true)]
    ell: Option<String>,
    /// Interior point of the Weyl chamber, in `V0` coordinates.
    #[arg(long, allow_hyphen_values = true)]
    chamber_point: String,
    /// Weyl vector, in `V0` coordinates.
    #[arg(long, allow_hyphen_values = true)]
    weyl: String,
    #[arg(long, default_value = "5")]
    cutoff: String,
}

fn run(cli: Cli) -> Result<String, Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Lattice(LatticeCommand::Info { lattice }) => commands::lattice_info(&lattice),
        Command::Lattice(LatticeCommand::Export { name }) => commands::lattice_export(&name),
        Command::Theta { lattice, prec } => commands::theta(&lattice, prec),
        Command::Expand(a) => commands::expand(&commands::ExpandJob {
            lattice: &a.lattice,
            form: &a.form.form,
            scale: a.form.scale,
            ell: a.ell.as_deref(),
            chamber_point: &a.chamber_point,
            weyl: &a.weyl,
            cutoff: &a.cutoff,
        }),
        Command::Relation(f) => commands::relation(&f.form, f.scale),
        Command::EmbedTrick { form, prec } => commands::embed_trick(&form.form, form.scale, prec),
        Command::Pair { form, series } => commands::pair(&form.form, form.scale, series.as_deref()),
        Command::FormGen { name, prec, scale } => commands::form_gen(&name, prec, scale),
        Command::SeriesGen { name, prec } => commands::series_gen(&name, prec),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let result = run(cli).and_then(|report| files::emit(out.as_deref(), &report));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
