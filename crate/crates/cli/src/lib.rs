//! Command-line driver: reads bundles, runs checks and constructions, writes
//! JSON reports and bundles.

pub mod bundle;
pub mod commands;
pub mod gen;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use wrmc::exactla::Field;

pub use commands::{run, Output};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("reference error: {0}")]
    Reference(String),
    #[error("generation failed: {0}")]
    Generation(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

fn parse_field(s: &str) -> Result<Field, String> {
    Field::from_descriptor(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "wrmc", version, about = "Exact checks for wide right Morita contexts, corings and comodules")]
pub struct Cli {
    /// Field mode: `Q` or `Fp:<p>`. Must match the bundle when one is read.
    #[arg(long, global = true, value_parser = parse_field)]
    pub field: Option<Field>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the report or bundle here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Number of random samples for generators and the axiom checker.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Adds timing to the report and logs it on standard error.
    #[arg(long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct BundleArgs {
    pub bundle: PathBuf,
    /// Restrict to the entry with this name.
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Debug, clap::Args)]
pub struct ConstructArgs {
    pub bundle: PathBuf,
    #[arg(long)]
    pub name: Option<String>,
    /// Also write the constructed objects as a bundle.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct MulArgs {
    pub bundle: PathBuf,
    #[arg(long, requires = "inner")]
    pub outer: Option<String>,
    #[arg(long, requires = "outer")]
    pub inner: Option<String>,
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct IdentityArgs {
    /// Algebras to use; without a bundle the built-in small algebras are used.
    pub bundle: Option<PathBuf>,
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Bim,
    W,
    Rem,
    All,
}

#[derive(Debug, clap::Args)]
pub struct AxiomArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub which: Which,
    /// Largest algebra and bimodule dimension for random bimodules.
    #[arg(long, default_value_t = 3)]
    pub max_dim: usize,
}

#[derive(Debug, clap::Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub generator: gen::Generator,
    /// Matrix size for the matrix generators.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Also emit deliberately broken copies named `<name>.expected-fail`.
    #[arg(long)]
    pub negatives: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Runs every validator on every entry.
    Validate(BundleArgs),
    /// Checks the two context diagrams.
    CheckContext(BundleArgs),
    /// Multiplies contexts and checks the products.
    MulContexts(MulArgs),
    /// Checks context morphisms.
    CheckMorphism(BundleArgs),
    /// Builds and checks identity contexts.
    IdentityContext(IdentityArgs),
    /// Solves for rho from equivalence data.
    FromEquivalence(ConstructArgs),
    /// Inverts surjective eta and rho.
    EpiIso(BundleArgs),
    /// Checks coring axioms.
    CheckCoring(BundleArgs),
    /// Checks entwined cells, including those of bicomodules.
    CheckCell(BundleArgs),
    /// Composes entwined cells and checks the composites.
    RemCompose(BundleArgs),
    /// Checks contexts over corings.
    CheckWrem(BundleArgs),
    /// Reads classical contexts over trivial corings and back.
    ClassicalRoundtrip(BundleArgs),
    /// Pushes comodules along cells.
    Pushout(ConstructArgs),
    /// Checks the push-out context at sample comodules.
    CheckCatContext(BundleArgs),
    /// Rebuilds contexts from comodules and natural maps.
    Reconstruct(ConstructArgs),
    /// Runs the bicategory axiom checker on random samples.
    BicatAxioms(AxiomArgs),
    /// Writes a generated bundle.
    Gen(GenArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::CheckContext(_) => "check-context",
            Command::MulContexts(_) => "mul-contexts",
            Command::CheckMorphism(_) => "check-morphism",
            Command::IdentityContext(_) => "identity-context",
            Command::FromEquivalence(_) => "from-equivalence",
            Command::EpiIso(_) => "epi-iso",
            Command::CheckCoring(_) => "check-coring",
            Command::CheckCell(_) => "check-cell",
            Command::RemCompose(_) => "rem-compose",
            Command::CheckWrem(_) => "check-wrem",
            Command::ClassicalRoundtrip(_) => "classical-roundtrip",
            Command::Pushout(_) => "pushout",
            Command::CheckCatContext(_) => "check-cat-context",
            Command::Reconstruct(_) => "reconstruct",
            Command::BicatAxioms(_) => "bicat-axioms",
            Command::Gen(_) => "gen",
        }
    }
}

/// Parses arguments, runs, writes the output, and returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = run(&cli).and_then(|out| {
        match &cli.out {
            Some(path) => std::fs::write(path, &out.text)?,
            None => print!("{}", out.text),
        }
        Ok(out.code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("wrmc: {e}");
            e.exit_code()
        }
    }
}
