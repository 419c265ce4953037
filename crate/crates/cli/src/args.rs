//! Command-line surface. Every argument struct serializes into the `config`
//! field of the report.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "symtwist",
    version,
    about = "Twist deformations of symplectic structures"
)]
pub struct Cli {
    /// Run sample and grid loops on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check antisymmetry and the Jacobi identity exactly.
    ValidateAlgebra(ValidateArgs),
    /// Compute [t,t] and test ad-invariance.
    Rmatrix(RmatrixArgs),
    /// Sample f_t = (-1)^n det A_t over a moment image.
    Admissible(AdmissibleArgs),
    /// Deform the Fubini-Study form on CP^n and scan it for degeneracy.
    Deform(DeformArgs),
    /// Symplectic volume of the deformed CP^1.
    Volume(VolumeArgs),
    /// Grassmannian r-matrix checks in su(n).
    Grassmann(GrassmannArgs),
    /// Run a command over a parameter range and emit a table.
    Sweep(SweepArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::ValidateAlgebra(_) => "validate-algebra",
            Command::Rmatrix(_) => "rmatrix",
            Command::Admissible(_) => "admissible",
            Command::Deform(_) => "deform",
            Command::Volume(_) => "volume",
            Command::Grassmann(_) => "grassmann",
            Command::Sweep(s) => match s.target {
                SweepTarget::Volume { .. } => "sweep volume",
                SweepTarget::Admissible { .. } => "sweep admissible",
                SweepTarget::Grassmann { .. } => "sweep grassmann",
            },
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct ValidateArgs {
    /// suN, abelianN, torusN or a structure-constant JSON file.
    #[arg(long)]
    pub algebra: String,
}

#[derive(Debug, Args, Serialize)]
pub struct RmatrixArgs {
    #[arg(long)]
    pub algebra: String,
    /// Comma-separated lij=v, A^B:c or canonical.
    #[arg(long, allow_hyphen_values = true)]
    pub twist: String,
}

#[derive(Debug, Args, Serialize)]
pub struct AdmissibleArgs {
    #[arg(long, default_value = "su2")]
    pub algebra: String,
    #[arg(long, allow_hyphen_values = true)]
    pub twist: String,
    /// sphere:R or cp:N.
    #[arg(long, default_value = "sphere:0.5")]
    pub image: String,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Verdict is min |f_t| > tolerance.
    #[arg(long, default_value_t = 1e-6, allow_hyphen_values = true)]
    pub tolerance: f64,
    /// Seed for cp:N images.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write every sample and its f_t here.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionKind {
    Unitary,
    Torus,
}

#[derive(Debug, Args, Serialize)]
pub struct DeformArgs {
    /// SU(n+1) or the n-torus acting on CP^n.
    #[arg(long, value_enum, default_value_t = ActionKind::Unitary)]
    pub action: ActionKind,
    /// Complex dimension of CP^n.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub twist: String,
    #[arg(long, default_value_t = 2.0)]
    pub half_width: f64,
    #[arg(long, default_value_t = 9)]
    pub points_per_axis: usize,
    /// Points with |det|^(1/2) at or below this are flagged.
    #[arg(long, default_value_t = 1e-9, allow_hyphen_values = true)]
    pub tolerance: f64,
    /// Dump the deformed form's entries over the grid here.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct VolumeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    /// Integrate the pipeline form instead of the radial density.
    #[arg(long)]
    pub pipeline: bool,
    /// Verdict is rel_error < tolerance.
    #[arg(long, default_value_t = 1e-6, allow_hyphen_values = true)]
    pub tolerance: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct GrassmannArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    /// Without --n/--r: every 2 ≤ n ≤ max-n, 1 ≤ r < n.
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
    /// Include the bracket relations behind the argument.
    #[arg(long)]
    pub table: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    #[command(subcommand)]
    #[serde(flatten)]
    pub target: SweepTarget,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "target", rename_all = "lowercase")]
pub enum SweepTarget {
    /// Volume over a list or start:stop:step range of lambda.
    Volume {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        pipeline: bool,
        #[arg(long, default_value_t = 1e-6, allow_hyphen_values = true)]
        tolerance: f64,
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
    },
    /// Admissibility of s·t over a range of scales s.
    Admissible {
        #[arg(long, default_value = "su2")]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        twist: String,
        #[arg(long, allow_hyphen_values = true)]
        scales: String,
        #[arg(long, default_value = "sphere:0.5")]
        image: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-6, allow_hyphen_values = true)]
        tolerance: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
    },
    /// Every Grassmannian instance up to max-n.
    Grassmann {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
    },
}

impl SweepTarget {
    pub fn csv(&self) -> Option<&PathBuf> {
        match self {
            SweepTarget::Volume { csv, .. }
            | SweepTarget::Admissible { csv, .. }
            | SweepTarget::Grassmann { csv, .. } => csv.as_ref(),
        }
    }
}
