//! `axikernel`: evaluate the axisymmetric heat kernel and Green function,
//! check identities and scaling laws, and reconstruct stream function and
//! velocity from vorticity. Output is CSV.
//!
//! Exit status: 0 when every gate passes, 1 on a numerical gate failure,
//! 2 on a usage or data error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use axikernel::QuadratureSpec;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "axikernel",
    version,
    about = "Axisymmetric Green function toolkit"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Relative quadrature tolerance.
    #[arg(long, global = true, value_name = "TOL")]
    tol_rel: Option<f64>,
    /// Absolute quadrature tolerance.
    #[arg(long, global = true, value_name = "TOL")]
    tol_abs: Option<f64>,
    /// Write CSV to this file instead of stdout (a directory for `reconstruct`).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Add a generation timestamp comment to CSV output.
    #[arg(long, global = true)]
    stamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalQuantity {
    /// Heat kernel G(t; r, rho, zeta).
    #[value(name = "G")]
    G,
    /// dG/dz.
    #[value(name = "dzG")]
    DzG,
    /// Green function Gamma(r, rho, zeta).
    #[value(name = "Gamma")]
    Gamma,
    /// dGamma/dz.
    #[value(name = "dzGamma")]
    DzGamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    /// (int int Gamma^p / rho)^(1/p), exponent 1/p - 1.
    Lp,
    /// (int int Gamma^2 rho)^(1/2), exponent 1/2.
    L2,
    /// int int |dGamma/dz| rho^-delta, exponent -delta.
    Dz,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the kernel at points given as `t,r,rho,zeta` (G, dzG) or
    /// `r,rho,zeta` (Gamma, dzGamma).
    Eval {
        quantity: EvalQuantity,
        /// Points; each a comma-separated tuple.
        #[arg(allow_hyphen_values = true)]
        points: Vec<String>,
        /// Read points from a file, one tuple per line (`#` starts a comment).
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
    },
    /// Fit the r-scaling exponents of the weighted Green-function norms.
    VerifyBounds {
        /// Norm families to check.
        #[arg(long, value_delimiter = ',', default_values = ["lp", "l2", "dz"])]
        kind: Vec<BoundKind>,
        /// Exponents p for the inverse-rho norm, each in [1, 2).
        #[arg(long, value_delimiter = ',', default_values = ["1", "1.5", "1.9"])]
        p: Vec<f64>,
        /// Weights delta for the dz norm, each in [0, 1).
        #[arg(long, value_delimiter = ',', default_values = ["0", "0.5", "0.9"])]
        delta: Vec<f64>,
        /// Target radii, at least three distinct.
        #[arg(long, value_delimiter = ',', default_values = ["0.25", "0.5", "1", "2", "4"])]
        r_samples: Vec<f64>,
        /// Exponent gate for every kind (defaults: 1e-3 for lp and l2, 5e-3 for dz).
        #[arg(long, value_name = "TOL")]
        exponent_gate: Option<f64>,
        /// Largest allowed spread of value * r^-exponent around its mean.
        #[arg(long, value_name = "TOL", default_value_t = 2e-3)]
        ratio_gate: f64,
    },
    /// Run the identity battery: Bessel integrals, sphere lemma, first
    /// moment, semigroup and Green-function scaling.
    IdentityCheck,
    /// Compare the time-integral, ring-integral and closed-form Green function.
    OracleCompare {
        /// Points `r,rho,zeta`; default is a fixed 20-point sample.
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
        /// Relative agreement gate.
        #[arg(long, value_name = "TOL", default_value_t = 1e-6)]
        gate: f64,
    },
    /// Reconstruct L_theta and (u_r, u_z) from an omega_theta grid file.
    Reconstruct {
        /// omega_theta CSV file.
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        /// Target grid `rmin:rmax:nr,zmin:zmax:nz`; defaults to the source grid.
        #[arg(long, value_name = "SPEC")]
        grid: Option<String>,
        /// Weights delta for the summary sup r^delta |u_r|.
        #[arg(long, value_delimiter = ',', default_values = ["0.5"])]
        delta: Vec<f64>,
        /// Compare against the manufactured solution and gate the errors.
        #[arg(long)]
        manufactured: bool,
        /// Sup-relative error gate for --manufactured.
        #[arg(long, value_name = "TOL", default_value_t = 1e-3)]
        gate: f64,
    },
}

impl Common {
    fn spec(&self) -> Result<QuadratureSpec, commands::CliError> {
        let mut spec = QuadratureSpec::default();
        if let Some(t) = self.tol_rel {
            spec = spec.with_rel_tol(t);
        }
        if let Some(t) = self.tol_abs {
            spec = spec.with_abs_tol(t);
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(commands::Status::Pass) => ExitCode::SUCCESS,
        Ok(commands::Status::GateFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
