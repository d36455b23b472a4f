//! Green function and heat kernel of the axisymmetric operator
//! `-(Delta - 1/r^2)`, the weighted norms of the Green function, and
//! stream-function / velocity reconstruction from angular vorticity.

pub mod bessel;
pub mod error;
pub mod fields;
pub mod kernel;
pub mod norms;
pub mod quadrature;
pub mod report;

pub use error::{Error, Result};
pub use kernel::{HalfPlanePoint, KernelArgs};
pub use quadrature::{QuadratureResult, QuadratureSpec};
pub use report::IdentityReport;
