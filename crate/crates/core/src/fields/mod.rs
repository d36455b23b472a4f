//! Gridded meridian fields and the reconstruction of stream function and
//! velocity from angular vorticity.
//!
//! Fields live on rectilinear `(r, z)` grids and are taken to vanish outside
//! them. Values are stored r-major: `values[i * nz + j]` sits at
//! `(r_axis[i], z_axis[j])`.

mod criteria;
pub mod envelope;
mod grid;
pub mod io;
pub mod manufactured;
mod reconstruct;
mod stencil;

pub use criteria::{
    corollary_assumption_check, criterion_functionals, AssumptionReport, CriterionReport,
};
pub use grid::{Grid, MeridianScalarField, MeridianVelocityField, Quantity};
pub use reconstruct::{
    reconstruct, stream_from_vorticity, ur_from_vorticity, Interpolation, Reconstruction,
    ReconstructionOptions,
};
pub use stencil::{axial_derivative, divergence, fd_weights, radial_derivative, uz_from_stream};
