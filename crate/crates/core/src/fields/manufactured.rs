//! Manufactured solution `L = r exp(-r^2 - z^2)` with its vorticity and
//! velocity, and a roundtrip check of the reconstruction against it.

use super::grid::{Grid, MeridianScalarField, Quantity};
use super::reconstruct::{reconstruct, Reconstruction, ReconstructionOptions};
use super::stencil::divergence;
use crate::error::Result;

pub fn stream(r: f64, z: f64) -> f64 {
    r * (-r * r - z * z).exp()
}

/// `-(Laplacian - 1/r^2)` applied to [`stream`].
pub fn vorticity(r: f64, z: f64) -> f64 {
    2.0 * r * (5.0 - 2.0 * r * r - 2.0 * z * z) * (-r * r - z * z).exp()
}

pub fn radial_velocity(r: f64, z: f64) -> f64 {
    2.0 * r * z * (-r * r - z * z).exp()
}

pub fn axial_velocity(r: f64, z: f64) -> f64 {
    2.0 * (1.0 - r * r) * (-r * r - z * z).exp()
}

pub fn vorticity_field(grid: Grid) -> Result<MeridianScalarField> {
    Ok(
        MeridianScalarField::from_fn(grid, Quantity::OmegaTheta, vorticity)?
            .with_provenance("manufactured: omega_theta = 2r(5 - 2r^2 - 2z^2) exp(-r^2 - z^2)"),
    )
}

/// Default source grid: `[0, 5] x [-5, 5]` at spacing 0.1.
pub fn default_source_grid() -> Grid {
    Grid::uniform((0.0, 5.0, 51), (-5.0, 5.0, 101)).expect("valid grid")
}

/// Default target grid: `[0, 3] x [-3, 3]` at spacing 0.05, fine enough for
/// the fourth-order differences behind `u_z` and the divergence.
pub fn default_target_grid() -> Grid {
    Grid::uniform((0.0, 3.0, 61), (-3.0, 3.0, 121)).expect("valid grid")
}

/// Comparison window `(r_min, r_max, z_abs_max)`.
pub const WINDOW: (f64, f64, f64) = (0.1, 3.0, 3.0);

/// `max |got - exact| / max |exact|` over grid points inside [`WINDOW`].
pub fn sup_relative_error(grid: &Grid, got: &[f64], exact: impl Fn(f64, f64) -> f64) -> f64 {
    let (r_lo, r_hi, z_hi) = WINDOW;
    let eps = 1e-12;
    let mut diff: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for ((r, z), v) in grid.points().zip(got) {
        if r < r_lo - eps || r > r_hi + eps || z.abs() > z_hi + eps {
            continue;
        }
        let e = exact(r, z);
        diff = diff.max((v - e).abs());
        scale = scale.max(e.abs());
    }
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

pub fn rms(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    (values.iter().map(|v| v * v).sum::<f64>() / values.len() as f64).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundtripReport {
    pub stream_error: f64,
    pub radial_error: f64,
    pub axial_error: f64,
    /// Root mean square of the discrete divergence over the target grid.
    pub divergence_rms: f64,
    pub divergence_max: f64,
}

impl RoundtripReport {
    pub fn worst_field_error(&self) -> f64 {
        self.stream_error
            .max(self.radial_error)
            .max(self.axial_error)
    }
}

/// Compares a reconstruction with the exact manufactured fields.
pub fn compare(rec: &Reconstruction) -> Result<RoundtripReport> {
    let grid = &rec.stream.grid;
    let div = divergence(&rec.velocity)?;
    Ok(RoundtripReport {
        stream_error: sup_relative_error(grid, &rec.stream.values, stream),
        radial_error: sup_relative_error(grid, &rec.velocity.u_r, radial_velocity),
        axial_error: sup_relative_error(grid, &rec.velocity.u_z, axial_velocity),
        divergence_rms: rms(&div),
        divergence_max: div.iter().fold(0.0, |m, v| m.max(v.abs())),
    })
}

pub fn roundtrip(
    source: Grid,
    target: &Grid,
    opts: &ReconstructionOptions,
) -> Result<(Reconstruction, RoundtripReport)> {
    let omega = vorticity_field(source)?;
    let rec = reconstruct(&omega, target, opts)?;
    let report = compare(&rec)?;
    Ok((rec, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vorticity_matches_operator_by_differences() {
        let h = 1e-3;
        for &(r, z) in &[(0.5, 0.2), (1.0, -0.7), (1.7, 1.1)] {
            let l = stream;
            let lrr = (l(r + h, z) - 2.0 * l(r, z) + l(r - h, z)) / (h * h);
            let lr = (l(r + h, z) - l(r - h, z)) / (2.0 * h);
            let lzz = (l(r, z + h) - 2.0 * l(r, z) + l(r, z - h)) / (h * h);
            let op = -(lrr + lr / r + lzz - l(r, z) / (r * r));
            assert!(
                (op - vorticity(r, z)).abs() < 1e-5,
                "{op} vs {}",
                vorticity(r, z)
            );
            let ur = -(l(r, z + h) - l(r, z - h)) / (2.0 * h);
            assert!((ur - radial_velocity(r, z)).abs() < 1e-5);
        }
    }
}
