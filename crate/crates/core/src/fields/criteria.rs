//! Grid functionals for the drift and swirl hypotheses and the vorticity
//! envelopes assumed by the boundedness corollaries.

use super::grid::{MeridianScalarField, MeridianVelocityField};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriterionReport {
    pub alpha: f64,
    pub beta: f64,
    /// `sup r |b| (1 + |ln r|)^-beta` over grid points with `r > 0`.
    pub sup_b_functional: f64,
    /// `sup r |u_theta| (1 + |ln r|)^alpha` over grid points with `r > 0`.
    pub sup_utheta_functional: f64,
}

pub fn criterion_functionals(
    b: &MeridianVelocityField,
    u_theta: &MeridianScalarField,
    alpha: f64,
    beta: f64,
) -> Result<CriterionReport> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Range {
            name: "alpha",
            value: alpha,
            valid: "(0, 1]",
        });
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::Range {
            name: "beta",
            value: beta,
            valid: "[0, inf)",
        });
    }
    if b.grid != u_theta.grid {
        return Err(Error::data(
            "velocity and swirl fields are on different grids",
        ));
    }
    let mut sup_b: f64 = 0.0;
    let mut sup_u: f64 = 0.0;
    for (k, (r, _)) in b.grid.points().enumerate() {
        if r <= 0.0 {
            continue;
        }
        let log_factor = 1.0 + r.ln().abs();
        sup_b = sup_b.max(r * b.magnitude(k) * log_factor.powf(-beta));
        sup_u = sup_u.max(r * u_theta.values[k].abs() * log_factor.powf(alpha));
    }
    Ok(CriterionReport {
        alpha,
        beta,
        sup_b_functional: sup_b,
        sup_utheta_functional: sup_u,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssumptionReport {
    pub exponent: f64,
    /// `sup rho^exponent |omega|` over the grid.
    pub sup: f64,
    /// Radius where the supremum is attained.
    pub at_r: f64,
}

/// Envelope `sup rho^exponent |omega|`, for exponents in `[1, 2]`.
pub fn corollary_assumption_check(
    omega: &MeridianScalarField,
    exponent: f64,
) -> Result<AssumptionReport> {
    if !(1.0..=2.0).contains(&exponent) {
        return Err(Error::Range {
            name: "exponent",
            value: exponent,
            valid: "[1, 2]",
        });
    }
    let mut report = AssumptionReport {
        exponent,
        sup: 0.0,
        at_r: 0.0,
    };
    for ((r, _), v) in omega.grid.points().zip(&omega.values) {
        let weighted = if r == 0.0 {
            0.0
        } else {
            r.powf(exponent) * v.abs()
        };
        if weighted > report.sup {
            report.sup = weighted;
            report.at_r = r;
        }
    }
    Ok(report)
}
