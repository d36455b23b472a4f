//! Heat kernel `G` and Green function `Gamma` of `-(Delta - 1/r^2)` acting on
//! axisymmetric fields, measured against `rho drho dl` in the meridian
//! half-plane.
//!
//! `G(t; r, rho, zeta) = exp(-(r^2 + rho^2 + zeta^2) / 4t) I_1(r rho / 2t) / (4 sqrt(pi) t^{3/2})`
//! and `Gamma = int_0^inf G dt`.
//!
//! Three independent routes to `Gamma` live here:
//! * [`green_function`]: the time integral of `G`,
//! * [`green_function_oracle`]: the `cos(phi)` moment of the Newtonian kernel
//!   over a ring, integrated numerically in `phi`,
//! * [`green_function_closed`]: the same ring moment in closed form, through
//!   the toroidal function `Q_{1/2}` (complete elliptic integrals near the
//!   diagonal, its hypergeometric series far from it). This is the fast path
//!   used by the norm and field code.

use std::f64::consts::PI;

use crate::bessel::{i0_scaled, i1_scaled};
use crate::error::{check_finite, check_nonneg, Error, Result};
use crate::quadrature::{
    integrate_2d_domain, integrate_finite, integrate_semi_infinite, HalfPlaneDomain,
    QuadratureResult, QuadratureSpec,
};
use crate::report::IdentityReport;

/// A point `(r, z)` of the meridian half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HalfPlanePoint {
    pub r: f64,
    pub z: f64,
}

impl HalfPlanePoint {
    pub fn new(r: f64, z: f64) -> Result<Self> {
        check_nonneg("r must be finite and nonnegative", r)?;
        check_finite("z must be finite", z)?;
        Ok(Self { r, z })
    }
}

/// Arguments of the heat kernel: time, target radius, source radius and
/// axial offset `zeta = z - l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelArgs {
    pub t: f64,
    pub r: f64,
    pub rho: f64,
    pub zeta: f64,
}

impl KernelArgs {
    pub fn new(t: f64, r: f64, rho: f64, zeta: f64) -> Result<Self> {
        let args = Self { t, r, rho, zeta };
        args.validate()?;
        Ok(args)
    }

    fn validate(&self) -> Result<()> {
        if !(self.t > 0.0 && self.t.is_finite()) {
            return Err(Error::Domain {
                what: "time must be positive",
                value: self.t,
            });
        }
        check_nonneg("r must be finite and nonnegative", self.r)?;
        check_nonneg("rho must be finite and nonnegative", self.rho)?;
        check_finite("zeta must be finite", self.zeta)
    }
}

const INV_4_SQRT_PI: f64 = 0.141_047_395_886_939_08;

/// `G` in the cancellation-safe form
/// `exp(-((r - rho)^2 + zeta^2) / 4t) [e^{-xi} I_1(xi)] / (4 sqrt(pi) t^{3/2})`,
/// `xi = r rho / 2t`.
#[inline]
pub(crate) fn heat_kernel_unchecked(t: f64, r: f64, rho: f64, zeta: f64) -> f64 {
    let xi = r * rho / (2.0 * t);
    let gap = (r - rho) * (r - rho) + zeta * zeta;
    INV_4_SQRT_PI * t.powf(-1.5) * (-gap / (4.0 * t)).exp() * i1_scaled(xi)
}

pub fn heat_kernel(args: KernelArgs) -> Result<f64> {
    args.validate()?;
    Ok(heat_kernel_unchecked(args.t, args.r, args.rho, args.zeta))
}

/// `dG/dz = -(zeta / 2t) G`.
pub fn heat_kernel_dz(args: KernelArgs) -> Result<f64> {
    args.validate()?;
    Ok(-(args.zeta / (2.0 * args.t)) * heat_kernel_unchecked(args.t, args.r, args.rho, args.zeta))
}

/// `dG/dr`, using `I_1'(xi) = I_0(xi) - I_1(xi) / xi`.
pub fn heat_kernel_dr(args: KernelArgs) -> Result<f64> {
    args.validate()?;
    let KernelArgs { t, r, rho, zeta } = args;
    if r == 0.0 {
        return Err(Error::Domain {
            what: "radial derivative requires r > 0",
            value: r,
        });
    }
    let xi = r * rho / (2.0 * t);
    let gap = (r - rho) * (r - rho) + zeta * zeta;
    let front = INV_4_SQRT_PI * t.powf(-1.5) * (-gap / (4.0 * t)).exp();
    let i1s = i1_scaled(xi);
    let i1_over_xi = if xi > 0.0 { i1s / xi } else { 0.5 };
    let bracket = -(r / (2.0 * t)) * i1s + (rho / (2.0 * t)) * (i0_scaled(xi) - i1_over_xi);
    Ok(front * bracket)
}

fn check_pair(r: f64, rho: f64, zeta: f64) -> Result<()> {
    check_nonneg("r must be finite and nonnegative", r)?;
    check_nonneg("rho must be finite and nonnegative", rho)?;
    check_finite("zeta must be finite", zeta)?;
    if (r - rho) * (r - rho) + zeta * zeta == 0.0 {
        return Err(Error::Singular { r, rho, zeta });
    }
    Ok(())
}

/// `Gamma(r, rho, zeta) = int_0^inf G dt` by quadrature, with the time
/// substitution anchored at `t* = r rho / 2`. Returns the full quadrature
/// record; a non-converged integral is an accuracy error.
pub fn green_function_result(
    r: f64,
    rho: f64,
    zeta: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    check_pair(r, rho, zeta)?;
    if r == 0.0 || rho == 0.0 {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        });
    }
    let scale = 0.5 * r * rho;
    let res = integrate_semi_infinite(|t| heat_kernel_unchecked(t, r, rho, zeta), 0.0, scale, spec);
    res.require_converged()?;
    Ok(res)
}

pub fn green_function(r: f64, rho: f64, zeta: f64, spec: &QuadratureSpec) -> Result<f64> {
    Ok(green_function_result(r, rho, zeta, spec)?.value)
}

/// `d Gamma / dz = int_0^inf dG/dz dt`, same substitution as [`green_function`].
pub fn green_function_dz_result(
    r: f64,
    rho: f64,
    zeta: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    check_pair(r, rho, zeta)?;
    if r == 0.0 || rho == 0.0 || zeta == 0.0 {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        });
    }
    let scale = 0.5 * r * rho;
    let res = integrate_semi_infinite(
        |t| -(zeta / (2.0 * t)) * heat_kernel_unchecked(t, r, rho, zeta),
        0.0,
        scale,
        spec,
    );
    res.require_converged()?;
    Ok(res)
}

pub fn green_function_dz(r: f64, rho: f64, zeta: f64, spec: &QuadratureSpec) -> Result<f64> {
    Ok(green_function_dz_result(r, rho, zeta, spec)?.value)
}

/// Ring oracle:
/// `Gamma = (1/4pi) int_0^{2pi} cos(phi) (r^2 + rho^2 - 2 r rho cos(phi) + zeta^2)^{-1/2} dphi`.
pub fn green_function_oracle(r: f64, rho: f64, zeta: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_pair(r, rho, zeta)?;
    let gap = (r - rho) * (r - rho) + zeta * zeta;
    let f = |phi: f64| {
        let s = (0.5 * phi).sin();
        phi.cos() / (gap + 4.0 * r * rho * s * s).sqrt()
    };
    // the integrand is even about pi
    let res = integrate_finite(f, 0.0, PI, spec);
    Ok(res.require_converged()? / (2.0 * PI))
}

/// Below this `chi - 1` the closed form goes through elliptic integrals.
const NEAR_BRANCH: f64 = 1.5;

/// Complete elliptic integrals `(K, E)` from the arithmetic-geometric mean,
/// given `k^2` and `1 - k^2` separately so that neither loses precision.
fn elliptic_ke(k2: f64, kc2: f64) -> (f64, f64) {
    let mut a = 1.0_f64;
    let mut b = kc2.sqrt();
    let mut sum = 0.5 * k2;
    let mut pow2 = 0.5;
    for _ in 0..40 {
        let c = 0.5 * (a - b);
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
        pow2 *= 2.0;
        sum += pow2 * c * c;
        if c.abs() <= 1e-16 * a {
            break;
        }
    }
    let k = PI / (2.0 * a);
    (k, k * (1.0 - sum))
}

/// Far-field series `F(x) = 2F1(5/4, 3/4; 2; x)` and `x F'(x)`.
fn far_series(x: f64) -> (f64, f64) {
    let mut term = 1.0_f64;
    let mut f = 1.0;
    let mut xdf = 0.0;
    for n in 1..200 {
        let m = (n - 1) as f64;
        term *= (1.25 + m) * (0.75 + m) / ((2.0 + m) * n as f64) * x;
        f += term;
        xdf += n as f64 * term;
        if term < 1e-17 * f {
            break;
        }
    }
    (f, xdf)
}

fn far_branch(prod: f64, r: f64, rho: f64, zeta: f64) -> (f64, f64) {
    let d2 = r * r + rho * rho + zeta * zeta;
    let d = d2.sqrt();
    let y = 2.0 * prod / d2;
    let (f, xdf) = far_series(y * y);
    let g = prod / (4.0 * d2 * d) * f;
    let dg = -(prod * zeta) / (4.0 * d2 * d2 * d) * (3.0 * f + 4.0 * xdf);
    (g, dg)
}

fn near_branch(prod: f64, q: f64, zeta: f64) -> (f64, f64) {
    let chi = 1.0 + q;
    let k2 = 2.0 / (q + 2.0);
    let kc2 = q / (q + 2.0);
    let k = k2.sqrt();
    let (big_k, big_e) = elliptic_ke(k2, kc2);
    let q_half = chi * k * big_k - 2.0 * big_e / k;
    // (chi^2 - 1) Q'_{1/2} = (chi Q_{1/2} - Q_{-1/2}) / 2, Q_{-1/2} = k K
    let dq_half = 0.5 * k * big_k - chi * big_e / (k * q * (q + 2.0));
    let norm = 1.0 / (2.0 * PI * prod.sqrt());
    (norm * q_half, norm * dq_half * zeta / prod)
}

/// `(Gamma, dGamma/dzeta)` in closed form. Off-diagonal points only.
pub(crate) fn ring_pair(r: f64, rho: f64, zeta: f64) -> (f64, f64) {
    let prod = r * rho;
    if prod == 0.0 {
        return (0.0, 0.0);
    }
    let gap = (r - rho) * (r - rho) + zeta * zeta;
    let q = gap / (2.0 * prod);
    if q >= NEAR_BRANCH {
        far_branch(prod, r, rho, zeta)
    } else {
        near_branch(prod, q, zeta)
    }
}

/// Closed-form `Gamma`.
pub fn green_function_closed(r: f64, rho: f64, zeta: f64) -> Result<f64> {
    check_pair(r, rho, zeta)?;
    Ok(ring_pair(r, rho, zeta).0)
}

/// Closed-form `d Gamma / dz`.
pub fn green_function_dz_closed(r: f64, rho: f64, zeta: f64) -> Result<f64> {
    check_pair(r, rho, zeta)?;
    Ok(ring_pair(r, rho, zeta).1)
}

/// Chapman-Kolmogorov check:
/// `G(s + t; r, rho', zeta)` against
/// `int int G(s; r, rho, zeta - eta) G(t; rho, rho', eta) rho drho deta`.
pub fn semigroup_check(
    s: f64,
    t: f64,
    r: f64,
    rho_final: f64,
    zeta: f64,
    spec: &QuadratureSpec,
) -> Result<IdentityReport> {
    KernelArgs::new(s, r, rho_final, zeta)?;
    KernelArgs::new(t, r, rho_final, zeta)?;
    let rhs = heat_kernel_unchecked(s + t, r, rho_final, zeta);
    if r == 0.0 || rho_final == 0.0 {
        return Ok(IdentityReport::new("semigroup", s + t, 0.0, rhs, 0.0));
    }
    let f = |rho: f64, eta: f64| {
        heat_kernel_unchecked(s, r, rho, zeta - eta)
            * heat_kernel_unchecked(t, rho, rho_final, eta)
            * rho
    };
    let domain =
        HalfPlaneDomain::default().with_length_scale(r.max(rho_final).max(s.min(t).sqrt()));
    let lhs = integrate_2d_domain(f, spec, &domain);
    let value = lhs.require_converged()?;
    Ok(IdentityReport::new(
        "semigroup",
        s + t,
        value,
        rhs,
        lhs.error_estimate,
    ))
}

/// `int int G(t; r, rho, zeta) rho^2 drho dzeta = r`: the function `v = r`
/// is annihilated by `Delta - 1/r^2`, so the heat flow keeps it fixed.
pub fn first_moment_check(t: f64, r: f64, spec: &QuadratureSpec) -> Result<IdentityReport> {
    KernelArgs::new(t, r, 0.0, 0.0)?;
    let f = |rho: f64, zeta: f64| heat_kernel_unchecked(t, r, rho, zeta) * rho * rho;
    let domain = HalfPlaneDomain::default().with_length_scale(r.max(t.sqrt()));
    let lhs = integrate_2d_domain(f, spec, &domain);
    let value = lhs.require_converged()?;
    Ok(IdentityReport::new(
        "first_moment",
        t,
        value,
        r,
        lhs.error_estimate,
    ))
}
