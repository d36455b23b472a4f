//! Truncated power-law vorticity `omega = rho^-power` and the sup-norm
//! studies of the reconstructed `L` and `u_r` it supports.

use super::grid::{Grid, MeridianScalarField, Quantity};
use super::reconstruct::{stream_from_vorticity, ur_from_vorticity, ReconstructionOptions};
use crate::error::{Error, Result};
use crate::norms::fit_power_law;

/// Support box and resolution of a truncated power-law source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSource {
    pub power: f64,
    pub rho_min: f64,
    pub rho_max: f64,
    pub l_max: f64,
    /// Ratio of consecutive rho nodes.
    pub rho_ratio: f64,
    pub l_step: f64,
}

impl PowerSource {
    pub fn new(power: f64) -> Self {
        Self {
            power,
            rho_min: 1e-3,
            rho_max: 10.0,
            l_max: 10.0,
            rho_ratio: 1.05,
            l_step: 0.25,
        }
    }

    /// Same source with the outer box scaled by `factor`.
    pub fn enlarged(mut self, factor: f64) -> Self {
        self.rho_max *= factor;
        self.l_max *= factor;
        self
    }

    pub fn field(&self) -> Result<MeridianScalarField> {
        if !(self.rho_min > 0.0 && self.rho_max > self.rho_min && self.rho_ratio > 1.0) {
            return Err(Error::data(
                "power source needs 0 < rho_min < rho_max and a ratio above 1",
            ));
        }
        if !(self.l_max > 0.0 && self.l_step > 0.0 && self.l_step <= self.l_max) {
            return Err(Error::data("power source needs 0 < l_step <= l_max"));
        }
        let mut r_axis = vec![self.rho_min];
        while let Some(&last) = r_axis.last() {
            if last >= self.rho_max {
                break;
            }
            let next = last * self.rho_ratio;
            // avoid a sliver cell at the outer edge
            r_axis.push(if next * self.rho_ratio.sqrt() > self.rho_max {
                self.rho_max
            } else {
                next
            });
        }
        let nl = (2.0 * self.l_max / self.l_step).round() as usize + 1;
        let z_axis = super::grid::linspace(-self.l_max, self.l_max, nl)?;
        let power = self.power;
        Ok(MeridianScalarField::from_fn(
            Grid::new(r_axis, z_axis)?,
            Quantity::OmegaTheta,
            |r, _| r.powf(-power),
        )?
        .with_provenance(format!(
            "omega_theta = rho^-{} on rho in [{}, {}], |l| <= {}",
            self.power, self.rho_min, self.rho_max, self.l_max
        )))
    }
}

fn row_sups(field: &MeridianScalarField) -> Vec<f64> {
    let nz = field.grid.nz();
    field
        .values
        .chunks(nz)
        .map(|row| row.iter().fold(0.0f64, |m, v| m.max(v.abs())))
        .collect()
}

/// Targets `r_samples x z` with `z` covering the source box in steps of 0.5.
fn target_grid(r_samples: &[f64], l_max: f64) -> Result<Grid> {
    let nz = (4.0 * l_max).round() as usize + 1;
    Grid::new(
        r_samples.to_vec(),
        super::grid::linspace(-l_max, l_max, nz)?,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct StreamBoundReport {
    pub r_samples: Vec<f64>,
    /// `sup_z |L(r, z)|` per radius.
    pub sups: Vec<f64>,
    /// Same with the outer box doubled.
    pub sups_enlarged: Vec<f64>,
}

impl StreamBoundReport {
    /// `max / min` of the per-radius suprema.
    pub fn spread(&self) -> f64 {
        let max = self.sups.iter().cloned().fold(0.0, f64::max);
        let min = self.sups.iter().cloned().fold(f64::INFINITY, f64::min);
        max / min
    }

    pub fn global_sup(&self) -> f64 {
        self.sups.iter().cloned().fold(0.0, f64::max)
    }

    /// Relative change of the global supremum when the box doubles.
    pub fn truncation_change(&self) -> f64 {
        let enlarged = self.sups_enlarged.iter().cloned().fold(0.0, f64::max);
        (enlarged / self.global_sup() - 1.0).abs()
    }
}

/// `sup_z |L|` for `omega = rho^-2` on the default box and on the doubled box.
pub fn stream_bound_study(
    source: PowerSource,
    r_samples: &[f64],
    opts: &ReconstructionOptions,
) -> Result<StreamBoundReport> {
    let run = |src: PowerSource| -> Result<Vec<f64>> {
        let target = target_grid(r_samples, source.l_max)?;
        Ok(row_sups(&stream_from_vorticity(
            &src.field()?,
            &target,
            opts,
        )?))
    };
    Ok(StreamBoundReport {
        r_samples: r_samples.to_vec(),
        sups: run(source)?,
        sups_enlarged: run(source.enlarged(2.0))?,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VelocityEnvelopeReport {
    pub r_samples: Vec<f64>,
    /// `sup_z |u_r(r, z)|` per radius.
    pub sups: Vec<f64>,
    pub slope: f64,
}

/// Log-log slope of `sup_z |u_r|` against `r`. The target `z` grid reaches
/// the edges of the source box, where the truncated source jumps.
pub fn radial_velocity_envelope(
    source: PowerSource,
    r_samples: &[f64],
    opts: &ReconstructionOptions,
) -> Result<VelocityEnvelopeReport> {
    let target = target_grid(r_samples, source.l_max)?;
    let sups = row_sups(&ur_from_vorticity(&source.field()?, &target, opts)?);
    let (slope, _) = fit_power_law(r_samples, &sups)?;
    Ok(VelocityEnvelopeReport {
        r_samples: r_samples.to_vec(),
        sups,
        slope,
    })
}
