//! Modified Bessel functions of the first kind, orders 0 and 1.
//!
//! Below [`REGIME_SWITCH`] both functions are summed from their power series,
//! whose terms are all positive. Above it the exponentially scaled functions
//! `e^{-x} I_nu(x)` are taken from the large-argument expansion, so the scaled
//! forms stay finite for every representable argument.
//!
//! Kernel code only ever consumes the scaled forms.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_finite, integrate_semi_infinite, QuadratureSpec};
use crate::report::IdentityReport;

/// Argument at which evaluation moves from the power series to the
/// large-argument expansion.
///
/// The expansion is asymptotic, its smallest term near `x` is about
/// `e^{-2x}`, so at 20 the truncated sum is good to roughly 1e-17.
pub const REGIME_SWITCH: f64 = 20.0;

/// Series truncation: stop once the next term drops below this fraction of
/// the partial sum.
const SERIES_TOL: f64 = 1e-18;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Series,
    Asymptotic,
}

/// A single evaluation of `I_nu(x)` together with its scaled value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEval {
    pub argument: f64,
    /// `I_nu(x)`; `+inf` once `e^x` overflows.
    pub value: f64,
    /// `e^{-x} I_nu(x)`, finite for every finite argument.
    pub scaled_value: f64,
    pub regime: Regime,
}

fn check_argument(x: f64) -> Result<()> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "Bessel argument must be finite and nonnegative",
            value: x,
        })
    }
}

/// Power series `sum_m (x/2)^{2m+nu} / (m! (m+nu)!)` for `nu` in {0, 1}.
fn series(order: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    let mut term = if order == 0 { 1.0 } else { half };
    if term == 0.0 {
        return 0.0;
    }
    let mut sum = term;
    let mut m = 0.0_f64;
    loop {
        m += 1.0;
        term *= q / (m * (m + order as f64));
        sum += term;
        if term < SERIES_TOL * sum {
            return sum;
        }
    }
}

/// Large-argument expansion of `e^{-x} I_nu(x)`:
/// `(2 pi x)^{-1/2} sum_k (-1)^k prod_{j<=k} (mu - (2j-1)^2) / (k! (8x)^k)`
/// with `mu = 4 nu^2`.
fn asymptotic_scaled(order: u32, x: f64) -> f64 {
    let mu = 4.0 * (order * order) as f64;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu - odd * odd) / (k as f64 * 8.0 * x);
        if next.abs() >= term.abs() {
            // the expansion has started to diverge
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}

fn evaluate(order: u32, x: f64) -> Result<BesselEval> {
    check_argument(x)?;
    if x <= REGIME_SWITCH {
        let value = series(order, x);
        Ok(BesselEval {
            argument: x,
            value,
            scaled_value: value * (-x).exp(),
            regime: Regime::Series,
        })
    } else {
        let scaled_value = asymptotic_scaled(order, x);
        Ok(BesselEval {
            argument: x,
            value: scaled_value * x.exp(),
            scaled_value,
            regime: Regime::Asymptotic,
        })
    }
}

/// Full evaluation record for `I_1(x)`.
pub fn eval_i1(x: f64) -> Result<BesselEval> {
    evaluate(1, x)
}

/// Full evaluation record for `I_0(x)`.
pub fn eval_i0(x: f64) -> Result<BesselEval> {
    evaluate(0, x)
}

pub fn bessel_i1(x: f64) -> Result<f64> {
    Ok(evaluate(1, x)?.value)
}

/// `e^{-x} I_1(x)`.
pub fn bessel_i1_scaled(x: f64) -> Result<f64> {
    check_argument(x)?;
    Ok(i1_scaled(x))
}

pub fn bessel_i0(x: f64) -> Result<f64> {
    Ok(evaluate(0, x)?.value)
}

/// `e^{-x} I_0(x)`.
pub fn bessel_i0_scaled(x: f64) -> Result<f64> {
    check_argument(x)?;
    Ok(i0_scaled(x))
}

// Unchecked hot-path variants. Callers guarantee `x >= 0` and finite.

pub(crate) fn i1_scaled(x: f64) -> f64 {
    if x <= REGIME_SWITCH {
        series(1, x) * (-x).exp()
    } else {
        asymptotic_scaled(1, x)
    }
}

pub(crate) fn i0_scaled(x: f64) -> f64 {
    if x <= REGIME_SWITCH {
        series(0, x) * (-x).exp()
    } else {
        asymptotic_scaled(0, x)
    }
}

fn positive(what: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain { what, value })
    }
}

fn into_report(
    name: &str,
    parameter: f64,
    lhs: crate::quadrature::QuadratureResult,
    rhs: f64,
) -> Result<IdentityReport> {
    if !lhs.converged {
        return Err(Error::Accuracy {
            value: lhs.value,
            error_estimate: lhs.error_estimate,
        });
    }
    Ok(IdentityReport::new(
        name,
        parameter,
        lhs.value,
        rhs,
        lhs.error_estimate,
    ))
}

/// Checks `int_0^inf e^{-s^2} I_1(a s) ds = (e^{a^2/4} - 1) / a`.
pub fn verify_identity_id1(a: f64, quad: &QuadratureSpec) -> Result<IdentityReport> {
    positive("identity parameter a must be positive", a)?;
    // e^{-s^2} I_1(a s) = e^{-s^2 + a s} * [e^{-a s} I_1(a s)]
    let integrand = |s: f64| (a * s - s * s).exp() * i1_scaled(a * s);
    let lhs = integrate_semi_infinite(integrand, 0.0, (0.5 * a).max(1.0), quad);
    let rhs = (0.25 * a * a).exp_m1() / a;
    into_report("ID1", a, lhs, rhs)
}

/// Checks `int_0^inf e^{-s^2} I_1(a s)^2 s ds = e^{a^2/2} I_1(a^2/2) / 2`.
pub fn verify_identity_id2(a: f64, quad: &QuadratureSpec) -> Result<IdentityReport> {
    positive("identity parameter a must be positive", a)?;
    let integrand = |s: f64| {
        let b = i1_scaled(a * s);
        (2.0 * a * s - s * s).exp() * b * b * s
    };
    let lhs = integrate_semi_infinite(integrand, 0.0, a.max(1.0), quad);
    let half = 0.5 * a * a;
    // e^{a^2/2} I_1(a^2/2) = e^{a^2} [e^{-a^2/2} I_1(a^2/2)]
    let rhs = 0.5 * (a * a).exp() * i1_scaled(half);
    into_report("ID2", a, lhs, rhs)
}

/// Checks the sphere-angle integral `int_{-1}^{1} e^{A s} sqrt(1 - s^2) ds = pi I_1(A) / A`.
pub fn verify_lemma_sphere(big_a: f64, quad: &QuadratureSpec) -> Result<IdentityReport> {
    positive("sphere lemma parameter A must be positive", big_a)?;
    // factor e^{A} out of both sides to keep large A in range
    let integrand = |s: f64| (big_a * (s - 1.0)).exp() * (1.0 - s * s).max(0.0).sqrt();
    let lhs = integrate_finite(integrand, -1.0, 1.0, quad);
    let rhs = PI * i1_scaled(big_a) / big_a;
    into_report("sphere_lemma", big_a, lhs, rhs)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    // 40-digit reference values from an independent arbitrary-precision
    // evaluation of the power series.
    const I1_REF: [(f64, f64); 8] = [
        (0.5, 0.257_894_305_390_896_316_36),
        (1.0, 0.565_159_103_992_485_027_21),
        (2.0, 1.590_636_854_637_329_063_4),
        (7.75, 315.852_480_924_003_402_1),
        (10.0, 2_670.988_303_701_254_654_3),
        (20.0, 42_454_973.385_127_770_181),
        (25.0, 5_657_865_129.878_701_353_1),
        (50.0, 2.903_078_590_103_556_796_8e20),
    ];

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn i1_matches_reference_values() {
        assert_eq!(bessel_i1(0.0).unwrap(), 0.0);
        for (x, want) in I1_REF {
            let got = bessel_i1(x).unwrap();
            assert!(rel(got, want) <= 1e-12, "I1({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn i0_matches_reference_values() {
        assert_eq!(bessel_i0(0.0).unwrap(), 1.0);
        for (x, want) in [
            (1.0, 1.266_065_877_752_008_335_6),
            (2.0, 2.279_585_302_336_067_267_4),
            (10.0, 2_815.716_628_466_254_471_5),
            (30.0, 781_672_297_823.977_489_72),
        ] {
            let got = bessel_i0(x).unwrap();
            assert!(rel(got, want) <= 1e-12, "I0({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn scaled_values_for_large_arguments() {
        let e = bessel_i1_scaled(700.0).unwrap();
        assert!(rel(e, 0.015_070_519_444_716_846_949) <= 1e-12);
        let e = bessel_i0_scaled(700.0).unwrap();
        assert!(rel(e, 0.015_081_295_651_531_357_587) <= 1e-12);
        let e = bessel_i1_scaled(1e5).unwrap();
        assert!(rel(e, 0.001_261_561_530_121_817_127_3) <= 1e-12);
        let e = bessel_i1_scaled(f64::MAX).unwrap();
        assert!(e.is_finite() && e >= 0.0);
        // leading order of the expansion
        let lead = (2.0 * PI * 700.0_f64).powf(-0.5);
        assert!(rel(bessel_i1_scaled(700.0).unwrap(), lead) < 1e-3);
    }

    #[test]
    fn scaled_i1_at_two() {
        let want = 1.590_636_854_637_329_063_4 * (-2.0_f64).exp();
        assert!(rel(bessel_i1_scaled(2.0).unwrap(), want) <= 1e-13);
        assert_eq!(bessel_i1_scaled(0.0).unwrap(), 0.0);
    }

    #[test]
    fn overflowing_value_is_infinite_but_scaled_is_not() {
        let ev = eval_i1(800.0).unwrap();
        assert!(ev.value.is_infinite());
        assert!(ev.scaled_value.is_finite());
        assert_eq!(ev.regime, Regime::Asymptotic);
        assert_eq!(eval_i1(3.0).unwrap().regime, Regime::Series);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(bessel_i1(f64::NAN).is_err());
        assert!(bessel_i1(f64::INFINITY).is_err());
        assert!(bessel_i1(-1.0).is_err());
        assert!(bessel_i0_scaled(f64::NAN).is_err());
    }

    #[test]
    fn regimes_agree_at_the_switch() {
        for order in [0, 1] {
            let s = series(order, REGIME_SWITCH) * (-REGIME_SWITCH).exp();
            let a = asymptotic_scaled(order, REGIME_SWITCH);
            assert!(rel(s, a) <= 1e-11, "order {order}: {s} vs {a}");
        }
    }

    #[test]
    fn envelope_bounds() {
        for i in 1..=100 {
            let x = i as f64 / 100.0;
            let ratio = bessel_i1(x).unwrap() / x;
            assert!((0.5..=1.0).contains(&ratio));
        }
        let mut x = 1.01;
        while x < 1e6 {
            let v = bessel_i1_scaled(x).unwrap() * x.sqrt();
            assert!(v <= 1.0, "x={x}: {v}");
            x *= 1.1;
        }
    }

    #[test]
    fn i1_strictly_increasing() {
        let mut prev = 0.0;
        for i in 1..=2000 {
            let x = i as f64 * 0.35;
            let v = bessel_i1(x).unwrap();
            assert!(v > prev, "not increasing at {x}");
            prev = v;
        }
    }
}
