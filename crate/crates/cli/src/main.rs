//! `gerstenhaber`: load JSON definitions, run a verification pipeline, print
//! the report. Exit status 0 iff every check passes, 1 on a failed check,
//! 2 on unreadable input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gerstenhaber_cli::{pipeline, InputError, LiftKind, Output, Overrides};

#[derive(Parser, Debug)]
#[command(name = "gerstenhaber", version, about = "Exact Gerstenhaber calculus on Lie algebroids")]
struct Cli {
    /// Print the report as JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized pipelines; overrides the seed in the input file.
    /// Without either the seed is 0.
    #[arg(long, global = true, env = "GERSTENHABER_SEED")]
    seed: Option<u64>,
    /// Tolerance for numeric checks (default 1e-6).
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Finite-difference step (default 1e-5).
    #[arg(long, global = true)]
    fd_step: Option<f64>,
    /// Write the constructed document (if any) to this file.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jacobi and anchor residuals of an algebroid.
    ValidateAlgebroid { file: PathBuf },
    /// δ is a k-differential: graded Leibniz on every generator pair.
    CheckDifferential { file: PathBuf },
    /// δ² = ⟦Ω,·⟧ and δΩ = 0.
    CheckQlb { file: PathBuf },
    /// Twist a quasi-Lie bialgebroid by a bivector section.
    Twist {
        file: PathBuf,
        /// The bivector t (a multivector document on the algebroid frame).
        #[arg(long = "t")]
        t: PathBuf,
        /// Twist back by −t; the result must equal the input.
        #[arg(long)]
        then_negate: bool,
    },
    /// The k-vector field induced on the base.
    BaseField { file: PathBuf },
    /// Lift to the total space of A.
    Lift {
        #[arg(value_enum)]
        kind: LiftKind,
        file: PathBuf,
        /// Time parameter for the gauge lift.
        #[arg(long)]
        param: Option<String>,
    },
    /// (c, F, Ω) of a Manin quasi-triple, as a QLB over a point.
    ManinExtract { file: PathBuf },
    /// The double of a quadratic Lie algebra.
    Double { file: PathBuf },
    /// The transformation QLB of an action of a Manin quasi-triple.
    TransformationQlb { file: PathBuf },
    /// The QLB (T*M, d, φ) of a twisted Poisson structure.
    TwistedPoisson { file: PathBuf },
    /// Infinitesimal Hamiltonian conditions for an algebroid action.
    CheckHamiltonian { file: PathBuf },
    /// Is a subspace coisotropic for a pointed multivector?
    Coisotropy { file: PathBuf },
    /// Multiplicativity and quasi-Poisson residuals at sampled points of G×G.
    GroupoidSample {
        file: PathBuf,
        /// Number of samples, overriding the file.
        #[arg(long)]
        count: Option<usize>,
    },
}

fn run(cli: &Cli) -> Result<Output, InputError> {
    let over = Overrides { seed: cli.seed, tolerance: cli.tolerance, fd_step: cli.fd_step, count: None };
    match &cli.command {
        Command::ValidateAlgebroid { file } => pipeline::validate_algebroid(file),
        Command::CheckDifferential { file } => pipeline::check_differential(file),
        Command::CheckQlb { file } => pipeline::check_qlb(file),
        Command::Twist { file, t, then_negate } => pipeline::twist(file, t, *then_negate),
        Command::BaseField { file } => pipeline::base_field(file),
        Command::Lift { kind, file, param } => pipeline::lift(*kind, file, param.as_deref()),
        Command::ManinExtract { file } => pipeline::manin_extract(file),
        Command::Double { file } => pipeline::double_of(file),
        Command::TransformationQlb { file } => pipeline::transformation(file),
        Command::TwistedPoisson { file } => pipeline::twisted_poisson(file),
        Command::CheckHamiltonian { file } => pipeline::hamiltonian(file),
        Command::Coisotropy { file } => pipeline::coisotropy(file, &over),
        Command::GroupoidSample { file, count } => {
            pipeline::groupoid_sample(file, &Overrides { count: *count, ..over })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let (Some(path), Some(result)) = (&cli.output, &out.result) {
        let text = serde_json::to_string_pretty(result).expect("documents serialize") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if cli.json {
        println!("{}", out.to_json());
    } else {
        print!("{}", out.to_text());
    }
    if out.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
