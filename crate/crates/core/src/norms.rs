//! Weighted norms of the Green function over the meridian half-plane and
//! their scaling in the target radius `r`.
//!
//! | kind | functional | scaling |
//! |------|------------|---------|
//! | [`NormKind::LpInverseRho`] | `(int int Gamma^p rho^-1)^{1/p}`, `1 <= p < 2` | `r^{1/p - 1}` |
//! | [`NormKind::L2Rho`] | `(int int Gamma^2 rho)^{1/2}` | `r^{1/2}` |
//! | [`NormKind::DzL1RhoDelta`] | `int int abs(dGamma/dz) rho^-delta`, `0 <= delta < 1` | `r^{-delta}` |
//!
//! The scalings are exact: `Gamma(lambda r, lambda rho, lambda zeta) =
//! Gamma(r, rho, zeta) / lambda`. Outside the admissible windows for `p` and
//! `delta` the norms are rejected; the integrals are evaluated on the
//! closed-form kernel.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kernel::{ring_pair, HalfPlanePoint};
use crate::quadrature::{integrate_2d_domain, HalfPlaneDomain, QuadratureResult, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormKind {
    LpInverseRho,
    L2Rho,
    DzL1RhoDelta,
}

impl NormKind {
    pub fn reference_exponent(self, parameter: f64) -> f64 {
        match self {
            NormKind::LpInverseRho => 1.0 / parameter - 1.0,
            NormKind::L2Rho => 0.5,
            NormKind::DzL1RhoDelta => -parameter,
        }
    }

    /// Rejects parameters outside the admissible window.
    pub fn check_parameter(self, parameter: f64) -> Result<()> {
        let ok = match self {
            NormKind::LpInverseRho => (1.0..2.0).contains(&parameter),
            NormKind::L2Rho => true,
            NormKind::DzL1RhoDelta => (0.0..1.0).contains(&parameter),
        };
        if ok {
            Ok(())
        } else {
            Err(self.range_error(parameter))
        }
    }

    fn range_error(self, value: f64) -> Error {
        match self {
            NormKind::LpInverseRho => Error::Range {
                name: "p",
                value,
                valid: "[1, 2)",
            },
            NormKind::DzL1RhoDelta => Error::Range {
                name: "delta",
                value,
                valid: "[0, 1)",
            },
            NormKind::L2Rho => Error::Range {
                name: "parameter",
                value,
                valid: "any",
            },
        }
    }

    /// Outer power applied to the integral (`1/p`, `1/2` or `1`).
    fn outer_power(self, parameter: f64) -> f64 {
        match self {
            NormKind::LpInverseRho => 1.0 / parameter,
            NormKind::L2Rho => 0.5,
            NormKind::DzL1RhoDelta => 1.0,
        }
    }

    fn integrand(self, parameter: f64, r: f64) -> impl Fn(f64, f64) -> f64 {
        move |rho: f64, l: f64| {
            if rho <= 0.0 || ((rho - r) == 0.0 && l == 0.0) {
                return 0.0;
            }
            let (g, dg) = ring_pair(r, rho, -l);
            match self {
                NormKind::LpInverseRho => g.powf(parameter) / rho,
                NormKind::L2Rho => g * g * rho,
                NormKind::DzL1RhoDelta => dg.abs() * rho.powf(-parameter),
            }
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormKind::LpInverseRho => "lp_inverse_rho",
            NormKind::L2Rho => "l2_rho",
            NormKind::DzL1RhoDelta => "dz_l1_rho_delta",
        })
    }
}

impl FromStr for NormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lp_inverse_rho" | "lp" => Ok(NormKind::LpInverseRho),
            "l2_rho" | "l2" => Ok(NormKind::L2Rho),
            "dz_l1_rho_delta" | "dz" => Ok(NormKind::DzL1RhoDelta),
            other => Err(Error::data(format!("unknown norm kind '{other}'"))),
        }
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "target radius must be positive",
            value: r,
        })
    }
}

/// Raw double integral (before the outer power) over the half-plane with a
/// disk of `exclusion_radius` around `(r, 0)` removed. Does not check the
/// parameter range, so it can probe the excluded endpoints.
pub fn truncated_integral(
    kind: NormKind,
    parameter: f64,
    r: f64,
    exclusion_radius: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    check_radius(r)?;
    let domain = HalfPlaneDomain::around(HalfPlanePoint { r, z: 0.0 }).excluding(exclusion_radius);
    let res = integrate_2d_domain(kind.integrand(parameter, r), spec, &domain);
    res.require_converged()?;
    Ok(res)
}

/// Evaluates the chosen norm at target radius `r`.
pub fn weighted_norm(kind: NormKind, parameter: f64, r: f64, spec: &QuadratureSpec) -> Result<f64> {
    kind.check_parameter(parameter)?;
    let res = truncated_integral(kind, parameter, r, 0.0, spec)?;
    Ok(res.value.powf(kind.outer_power(parameter)))
}

pub fn norm_lp_inverse_rho(r: f64, p: f64, spec: &QuadratureSpec) -> Result<f64> {
    weighted_norm(NormKind::LpInverseRho, p, r, spec)
}

pub fn norm_l2_rho(r: f64, spec: &QuadratureSpec) -> Result<f64> {
    weighted_norm(NormKind::L2Rho, 0.0, r, spec)
}

pub fn norm_dz_weighted(r: f64, delta: f64, spec: &QuadratureSpec) -> Result<f64> {
    weighted_norm(NormKind::DzL1RhoDelta, delta, r, spec)
}

/// Unweighted least-squares fit of `log y = exponent * log x + log c`;
/// returns `(exponent, c)`.
pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::data(
            "power-law fit needs at least two paired samples",
        ));
    }
    if xs.iter().chain(ys).any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::data("power-law fit needs positive finite samples"));
    }
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::data("power-law fit needs distinct abscissae"));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Ok((slope, (my - slope * mx).exp()))
}

/// Norm values at several radii plus the fitted scaling exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct NormReport {
    pub kind: NormKind,
    /// `p` or `delta`; unused (0) for [`NormKind::L2Rho`].
    pub parameter: f64,
    pub r_samples: Vec<f64>,
    pub values: Vec<f64>,
    pub fitted_exponent: f64,
    pub reference_exponent: f64,
    /// Mean of `value * r^{-reference_exponent}`.
    pub constant: f64,
    /// Largest relative deviation of `value * r^{-reference_exponent}` from
    /// `constant`.
    pub max_ratio_deviation: f64,
}

impl NormReport {
    pub fn exponent_error(&self) -> f64 {
        (self.fitted_exponent - self.reference_exponent).abs()
    }
}

pub fn scaling_report(
    kind: NormKind,
    parameter: f64,
    r_samples: &[f64],
    spec: &QuadratureSpec,
) -> Result<NormReport> {
    kind.check_parameter(parameter)?;
    let mut distinct = r_samples.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::data(
            "scaling report needs at least three distinct radii",
        ));
    }
    for &r in r_samples {
        check_radius(r)?;
    }

    let values = r_samples
        .iter()
        .map(|&r| weighted_norm(kind, parameter, r, spec))
        .collect::<Result<Vec<_>>>()?;
    let (fitted_exponent, _) = fit_power_law(r_samples, &values)?;
    let reference_exponent = kind.reference_exponent(parameter);
    let ratios: Vec<f64> = r_samples
        .iter()
        .zip(&values)
        .map(|(r, v)| v * r.powf(-reference_exponent))
        .collect();
    let constant = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let max_ratio_deviation = ratios
        .iter()
        .map(|q| (q / constant - 1.0).abs())
        .fold(0.0, f64::max);

    Ok(NormReport {
        kind,
        parameter,
        r_samples: r_samples.to_vec(),
        values,
        fitted_exponent,
        reference_exponent,
        constant,
        max_ratio_deviation,
    })
}
