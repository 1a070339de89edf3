use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use spc_core::Signature;
use spc_tools::gen::{GeneratorConfig, Require};
use spc_tools::runner::{self, ExportFormat, Limits, RunError, RunReport};

/// Finite sectionally pseudocomplemented orders: check, enumerate
/// filters and congruences, quotient, generate and export.
#[derive(Parser)]
#[command(name = "spc", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a structure file and run the verification suites
    Check { file: PathBuf },
    /// Enumerate filters, their inclusion order, and the congruence correspondence
    Filters {
        file: PathBuf,
        /// Operations the filters must respect (defaults to the richest available)
        #[arg(long, value_enum)]
        sig: Option<SigArg>,
        /// Also test every subset directly against the definition
        #[arg(long)]
        exhaustive: bool,
    },
    /// Enumerate congruences and verify the structure of the family
    Congruences {
        file: PathBuf,
        /// Operations the congruences must respect (defaults to the richest available)
        #[arg(long, value_enum)]
        sig: Option<SigArg>,
    },
    /// Quotient by the principal congruence of a kernel filter
    Quotient {
        file: PathBuf,
        /// Comma-separated element labels whose generated filter becomes the kernel
        #[arg(long)]
        kernel: String,
    },
    /// Draw a random structure; a pure function of the parameters
    Generate {
        #[arg(long)]
        seed: u64,
        /// Element count
        #[arg(long)]
        n: usize,
        /// Probability of each candidate comparability, in [0, 1]
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Predicate the draw must satisfy
        #[arg(long, value_enum, default_value = "any")]
        require: RequireArg,
    },
    /// Render a structure file as a diagram or a JSON document
    Export {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SigArg {
    Lattice,
    Poset,
}

impl From<SigArg> for Signature {
    fn from(s: SigArg) -> Signature {
        match s {
            SigArg::Lattice => Signature::Lattice,
            SigArg::Poset => Signature::Poset,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RequireArg {
    Any,
    Spc,
    Strong,
    Lattice,
}

impl From<RequireArg> for Require {
    fn from(r: RequireArg) -> Require {
        match r {
            RequireArg::Any => Require::Any,
            RequireArg::Spc => Require::Spc,
            RequireArg::Strong => Require::Strong,
            RequireArg::Lattice => Require::Lattice,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Json,
}

impl From<FormatArg> for ExportFormat {
    fn from(f: FormatArg) -> ExportFormat {
        match f {
            FormatArg::Dot => ExportFormat::Dot,
            FormatArg::Json => ExportFormat::Json,
        }
    }
}

fn run(cli: &Cli, limits: Limits) -> Result<RunReport, RunError> {
    match &cli.cmd {
        Cmd::Check { file } => runner::cmd_check(&runner::load(file, limits)?, limits),
        Cmd::Filters { file, sig, exhaustive } => runner::cmd_filters(
            &runner::load(file, limits)?,
            sig.map(Into::into),
            *exhaustive,
            limits,
        ),
        Cmd::Congruences { file, sig } => {
            runner::cmd_congruences(&runner::load(file, limits)?, sig.map(Into::into), limits)
        }
        Cmd::Quotient { file, kernel } => {
            runner::cmd_quotient(&runner::load(file, limits)?, kernel, limits)
        }
        Cmd::Generate { seed, n, density, require } => {
            let cfg = GeneratorConfig {
                seed: *seed,
                n: *n,
                density: *density,
                require: (*require).into(),
            };
            runner::cmd_generate(&cfg, limits)
        }
        Cmd::Export { file, format } => {
            runner::cmd_export(&runner::load(file, limits)?, (*format).into(), limits)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let limits = Limits::from_env();
    let started = Instant::now();
    // Stdout carries only the deterministic report; timing and error
    // messages go to stderr so identical inputs give identical stdout.
    let code = match run(&cli, limits) {
        Ok(rep) => {
            print!("{}", rep.output());
            rep.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    eprintln!("elapsed: {:?}", started.elapsed());
    std::process::exit(code);
}
