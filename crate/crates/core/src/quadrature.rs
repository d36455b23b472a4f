//! Adaptive Gauss-Kronrod integration on finite intervals, semi-infinite
//! intervals (through an anchored logarithmic substitution) and the meridian
//! half-plane `(0, inf) x (-inf, inf)`.
//!
//! All engines are deterministic for a fixed [`QuadratureSpec`]: subdivision
//! follows the error ordering and the final sum is taken left to right.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::kernel::HalfPlanePoint;

/// Tolerances and budgets shared by every integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of segments a single 1D integral may be split into.
    pub max_subdivisions: usize,
    /// Semi-infinite tails are cut where the transformed integrand drops
    /// below this fraction of its largest sampled magnitude.
    pub truncation_drop: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
            truncation_drop: 1e-16,
        }
    }
}

impl QuadratureSpec {
    pub fn new(
        rel_tol: f64,
        abs_tol: f64,
        max_subdivisions: usize,
        truncation_drop: f64,
    ) -> Result<Self> {
        let spec = Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
            truncation_drop,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name, value, valid| Err(Error::Range { name, value, valid });
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return bad("rel_tol", self.rel_tol, "(0, inf)");
        }
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return bad("abs_tol", self.abs_tol, "(0, inf)");
        }
        if self.max_subdivisions < 1 {
            return bad("max_subdivisions", self.max_subdivisions as f64, "[1, inf)");
        }
        if !(self.truncation_drop > 0.0 && self.truncation_drop < self.rel_tol) {
            return bad("truncation_drop", self.truncation_drop, "(0, rel_tol)");
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    /// Absolute error the engines aim for when the integral is `value`.
    pub fn target(&self, value: f64) -> f64 {
        (self.rel_tol * value.abs()).max(self.abs_tol)
    }

    fn tightened(&self, factor: f64) -> Self {
        Self {
            rel_tol: self.rel_tol * factor,
            abs_tol: self.abs_tol * factor,
            truncation_drop: self.truncation_drop.min(self.rel_tol * factor * 0.5),
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadratureResult {
    /// Converts a non-converged result into an accuracy error.
    pub fn require_converged(self) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::Accuracy {
                value: self.value,
                error_estimate: self.error_estimate,
            })
        }
    }

    fn zero() -> Self {
        Self {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        }
    }

    fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }
}

// 21-point Kronrod extension of the 10-point Gauss rule.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// One application of the 21-point rule, with the QUADPACK error rescaling.
#[allow(clippy::needless_range_loop)]
fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    let fc = f(center);
    let mut res_g = 0.0;
    let mut res_k = fc * WGK[10];
    let mut res_abs = res_k.abs();

    for j in 0..5 {
        let jtw = 2 * j + 1;
        let dx = half * XGK[jtw];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        res_g += WG[j] * (f1 + f2);
        res_k += WGK[jtw] * (f1 + f2);
        res_abs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let dx = half * XGK[jtwm1];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        res_k += WGK[jtwm1] * (f1 + f2);
        res_abs += WGK[jtwm1] * (f1.abs() + f2.abs());
    }

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let hl = half.abs();
    let value = res_k * half;
    res_abs *= hl;
    res_asc *= hl;
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Segment { a, b, value, error }
}

fn too_narrow(a: f64, b: f64) -> bool {
    let mid = 0.5 * (a + b);
    mid <= a || mid >= b || (b - a) <= 4.0 * f64::EPSILON * a.abs().max(b.abs())
}

/// Adaptive 21-point Gauss-Kronrod quadrature over `[a, b]`.
///
/// Integrable endpoint singularities are fine: the rule never samples the
/// endpoints. `a > b` returns the negated integral over `[b, a]`.
pub fn integrate_finite<F: FnMut(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> QuadratureResult {
    if a == b {
        return QuadratureResult::zero();
    }
    if a > b {
        let mut r = integrate_with_breaks(f, &[b, a], spec);
        r.value = -r.value;
        return r;
    }
    integrate_with_breaks(f, &[a, b], spec)
}

/// Adaptive quadrature over `[points[0], points[last]]`, starting from the
/// given (strictly increasing) breakpoints.
pub fn integrate_with_breaks<F: FnMut(f64) -> f64>(
    mut f: F,
    points: &[f64],
    spec: &QuadratureSpec,
) -> QuadratureResult {
    debug_assert!(points.windows(2).all(|w| w[0] <= w[1]));
    let mut heap = BinaryHeap::new();
    let mut done: Vec<Segment> = Vec::new();
    let mut evaluations = 0;
    let mut total = 0.0;
    let mut total_err = 0.0;

    for w in points.windows(2) {
        if w[1] > w[0] {
            let s = gk21(&mut f, w[0], w[1]);
            evaluations += 21;
            total += s.value;
            total_err += s.error;
            heap.push(s);
        }
    }
    if heap.is_empty() {
        return QuadratureResult::zero();
    }

    let mut segments = heap.len();
    let mut iterations = 0usize;
    let converged = loop {
        if !total.is_finite() || !total_err.is_finite() {
            break false;
        }
        if total_err <= spec.target(total) {
            break true;
        }
        if segments >= spec.max_subdivisions {
            break false;
        }
        let Some(worst) = heap.pop() else {
            // every remaining segment is already at machine resolution
            break false;
        };
        if too_narrow(worst.a, worst.b) {
            done.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk21(&mut f, worst.a, mid);
        let right = gk21(&mut f, mid, worst.b);
        evaluations += 42;
        segments += 1;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);

        iterations += 1;
        if iterations.is_multiple_of(64) {
            // re-sum to stop drift in the running totals
            total = heap.iter().chain(done.iter()).map(|s| s.value).sum();
            total_err = heap.iter().chain(done.iter()).map(|s| s.error).sum();
        }
    };

    let mut all: Vec<Segment> = heap.into_vec();
    all.extend(done);
    all.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value: f64 = all.iter().map(|s| s.value).sum();
    let error_estimate: f64 = all.iter().map(|s| s.error).sum();
    QuadratureResult {
        value,
        error_estimate,
        evaluations,
        converged: converged && value.is_finite(),
    }
}

/// Lowest and highest values of the log variable explored by the tail scan.
const LOG_LIMIT: f64 = 700.0;

/// Integrates over `[a, inf)` with the substitution `t = a + scale * e^u`.
///
/// The transformed integrand is scanned outward from `u = 0` in unit steps
/// until it stays below `truncation_drop` times its largest sampled
/// magnitude for two consecutive steps (and at least four units were
/// covered); the remaining finite `u` range is handed to
/// [`integrate_finite`]. The scan assumes a single dominant hump.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    scale: f64,
    spec: &QuadratureSpec,
) -> QuadratureResult {
    assert!(scale > 0.0 && scale.is_finite(), "scale must be positive");
    let mut g = |u: f64| {
        let h = scale * u.exp();
        let t = a + h;
        if h == 0.0 || !t.is_finite() {
            return 0.0;
        }
        f(t) * h
    };

    let mut peak = g(0.0).abs();
    let mut probes = 1;
    let mut scan = |dir: f64, peak: &mut f64, probes: &mut usize| -> f64 {
        let mut u = 0.0;
        let mut quiet = 0;
        loop {
            let next = u + dir;
            if next.abs() > LOG_LIMIT {
                return u;
            }
            if dir < 0.0 && a + scale * next.exp() == a && a != 0.0 {
                return u;
            }
            u = next;
            let v = g(u).abs();
            *probes += 1;
            if v.is_nan() {
                return u;
            }
            *peak = peak.max(v);
            if v <= spec.truncation_drop * *peak {
                quiet += 1;
            } else {
                quiet = 0;
            }
            if quiet >= 2 && u.abs() >= 4.0 {
                return u;
            }
        }
    };
    let hi = scan(1.0, &mut peak, &mut probes);
    let lo = scan(-1.0, &mut peak, &mut probes);

    let mut result = integrate_finite(g, lo, hi, spec);
    result.evaluations += probes;
    result
}

/// Region description for [`integrate_2d_domain`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HalfPlaneDomain {
    /// Point where the integrand may have an integrable singularity (or
    /// simply concentrates). Breakpoints are placed dyadically around it.
    pub singular_at: Option<HalfPlanePoint>,
    /// Disk of this radius around `singular_at` is removed from the domain.
    pub exclusion_radius: f64,
    /// Characteristic length for the breakpoints and the tail substitution;
    /// defaults to `singular_at.r` (or 1).
    pub length_scale: Option<f64>,
}

impl HalfPlaneDomain {
    pub fn around(point: HalfPlanePoint) -> Self {
        Self {
            singular_at: Some(point),
            ..Self::default()
        }
    }

    pub fn excluding(mut self, radius: f64) -> Self {
        self.exclusion_radius = radius;
        self
    }

    pub fn with_length_scale(mut self, scale: f64) -> Self {
        self.length_scale = Some(scale);
        self
    }
}

/// Number of dyadic breakpoint levels placed around the focus along `l`.
const OUTER_DYADIC_LEVELS: i32 = 8;
/// Hard cap on the inner dyadic levels (they otherwise follow `|l - l0|`).
const INNER_DYADIC_LEVELS: i32 = 60;

/// `int_0^inf int_-inf^inf f(rho, l) dl drho`, optionally around a singular
/// point.
pub fn integrate_2d_halfplane<F: Fn(f64, f64) -> f64>(
    f: F,
    spec: &QuadratureSpec,
    singular_at: Option<HalfPlanePoint>,
) -> QuadratureResult {
    let domain = HalfPlaneDomain {
        singular_at,
        ..HalfPlaneDomain::default()
    };
    integrate_2d_domain(f, spec, &domain)
}

/// Iterated adaptive quadrature over the half-plane: the outer integral runs
/// over `l`, the inner one over `rho`. Around the singular point both
/// directions get dyadic breakpoints (offsets `s * 2^-k`), which realizes a
/// pre-split into dyadic annuli; the inner levels go down to the current
/// distance `|l - l0|` so that the near-singular row is resolved.
pub fn integrate_2d_domain<F: Fn(f64, f64) -> f64>(
    f: F,
    spec: &QuadratureSpec,
    domain: &HalfPlaneDomain,
) -> QuadratureResult {
    let (r0, l0) = domain.singular_at.map(|p| (p.r, p.z)).unwrap_or((0.0, 0.0));
    let scale = domain
        .length_scale
        .unwrap_or(if r0 > 0.0 { r0 } else { 1.0 });
    let eps = domain.exclusion_radius.max(0.0);
    let has_focus = domain.singular_at.is_some();
    let inner_spec = spec.tightened(0.1);

    let inner_ok = Cell::new(true);
    let inner_evals = Cell::new(0usize);

    let inner = |l: f64| -> f64 {
        let eta = (l - l0).abs();
        let w = if eps > 0.0 && eta < eps {
            (eps * eps - eta * eta).sqrt()
        } else {
            0.0
        };
        let mut pts = vec![0.0];
        if has_focus && r0 > 0.0 {
            let floor = w.max(0.5 * eta).max(scale * 1e-15);
            let mut offsets = Vec::new();
            let mut k = 0;
            let mut d = scale;
            while d > floor && k < INNER_DYADIC_LEVELS {
                offsets.push(d);
                d *= 0.5;
                k += 1;
            }
            for &d in offsets.iter() {
                if r0 - d > 0.0 {
                    pts.push(r0 - d);
                }
            }
            if w > 0.0 {
                if r0 - w > 0.0 {
                    pts.push(r0 - w);
                }
            } else {
                pts.push(r0);
            }
            let mut right: Vec<f64> = offsets.iter().rev().map(|d| r0 + d).collect();
            if w > 0.0 {
                right.insert(0, r0 + w);
            }
            pts.extend(right);
        } else {
            pts.push(r0 + scale);
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        let last = *pts.last().unwrap();

        let row = |rho: f64| f(rho, l);
        let finite = if w > 0.0 && r0 - w > 0.0 {
            // two pieces on either side of the excluded chord
            let split = pts.iter().position(|&p| p == r0 - w).unwrap();
            let left = integrate_with_breaks(row, &pts[..=split], &inner_spec);
            let right = integrate_with_breaks(row, &pts[split + 1..], &inner_spec);
            left.combine(right)
        } else if w > 0.0 {
            let start = pts.iter().position(|&p| p == r0 + w).unwrap();
            integrate_with_breaks(row, &pts[start..], &inner_spec)
        } else {
            integrate_with_breaks(row, &pts, &inner_spec)
        };
        let tail = integrate_semi_infinite(row, last, scale, &inner_spec);
        let total = finite.combine(tail);
        if !total.converged {
            inner_ok.set(false);
        }
        inner_evals.set(inner_evals.get() + total.evaluations);
        total.value
    };

    // outer breakpoints on [l0 - scale, l0 + scale]
    let mut pts = vec![l0 - scale, l0, l0 + scale];
    if has_focus {
        let mut d = 0.5 * scale;
        for _ in 0..OUTER_DYADIC_LEVELS {
            pts.push(l0 - d);
            pts.push(l0 + d);
            d *= 0.5;
        }
    }
    if eps > 0.0 && eps < scale {
        pts.push(l0 - eps);
        pts.push(l0 + eps);
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();

    let middle = integrate_with_breaks(&inner, &pts, spec);
    let upper = integrate_semi_infinite(&inner, l0 + scale, scale, spec);
    let lower = integrate_semi_infinite(|x| inner(2.0 * l0 - x), l0 + scale, scale, spec);
    let mut result = middle.combine(upper).combine(lower);
    result.evaluations = inner_evals.get();
    result.converged = result.converged && inner_ok.get();
    result.error_estimate += inner_spec.rel_tol * result.value.abs();
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn constant_and_polynomial() {
        let r = integrate_finite(|_| 1.0, 0.0, 1.0, &spec());
        assert!(r.converged);
        assert!((r.value - 1.0).abs() < 1e-15);
        let r = integrate_finite(|x| x * x, 1.0, 0.0, &spec());
        assert!((r.value + 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn endpoint_singularity() {
        let r = integrate_finite(|t| t.powf(-0.5), 0.0, 1.0, &spec());
        assert!(r.converged, "{r:?}");
        assert!((r.value - 2.0).abs() < 2e-9);
    }

    #[test]
    fn sphere_lemma_integrand() {
        // pi I_1(1) from an arbitrary-precision reference
        let r = integrate_finite(|s| s.exp() * (1.0 - s * s).sqrt(), -1.0, 1.0, &spec());
        assert!(r.converged);
        assert!((r.value / 1.775_499_689_212_181 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn exponential_tail() {
        let r = integrate_semi_infinite(|t| (-t).exp(), 0.0, 1.0, &spec());
        assert!(r.converged);
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn change_of_variables_self_consistency() {
        // int_0^inf t^{-5/2} e^{-1/(4t)} dt; with u = 1/(4t) it becomes
        // 4^{3/2} int_0^inf u^{1/2} e^{-u} du.
        let direct =
            integrate_semi_infinite(|t| t.powf(-2.5) * (-0.25 / t).exp(), 0.0, 1.0, &spec());
        let swapped = integrate_semi_infinite(|u| 8.0 * u.sqrt() * (-u).exp(), 0.0, 1.0, &spec());
        assert!(direct.converged && swapped.converged);
        assert!((direct.value / swapped.value - 1.0).abs() < 1e-9);
        // Gamma(3/2) = sqrt(pi)/2
        assert!((swapped.value - 4.0 * std::f64::consts::PI.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn non_convergence_is_reported() {
        let tight = QuadratureSpec {
            max_subdivisions: 3,
            ..spec()
        };
        let r = integrate_finite(|t| 1.0 / t.sqrt(), 0.0, 1.0, &tight);
        assert!(!r.converged);
        assert!(r.require_converged().is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(0.0, 1e-14, 10, 1e-16).is_err());
        assert!(QuadratureSpec::new(1e-9, -1.0, 10, 1e-16).is_err());
        assert!(QuadratureSpec::new(1e-9, 1e-14, 0, 1e-16).is_err());
        assert!(QuadratureSpec::new(1e-9, 1e-14, 10, 1e-8).is_err());
        assert!(QuadratureSpec::new(1e-9, 1e-14, 10, 1e-16).is_ok());
        assert!(QuadratureSpec::default().validate().is_ok());
    }

    #[test]
    fn separable_gaussian_over_halfplane() {
        let r = integrate_2d_halfplane(|rho, l| (-rho * rho - l * l).exp() * rho, &spec(), None);
        assert!(r.converged);
        assert!((r.value - 0.5 * std::f64::consts::PI.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn log_singularity_over_halfplane() {
        // compare with the polar form computed in 1D
        let c = HalfPlanePoint { r: 6.0, z: 0.5 };
        let f = |rho: f64, l: f64| {
            let d2 = (rho - c.r).powi(2) + (l - c.z).powi(2);
            -0.5 * d2.ln() * (-d2).exp()
        };
        let polar = integrate_semi_infinite(|d| -d.ln() * (-d * d).exp() * d, 0.0, 1.0, &spec());
        // the part of the disk beyond rho = 0 carries e^{-36}
        let got = integrate_2d_halfplane(f, &spec(), Some(c));
        assert!(got.converged, "{got:?}");
        let want = 2.0 * std::f64::consts::PI * polar.value;
        assert!(
            (got.value - want).abs() < 1e-7 * want.abs(),
            "{} vs {}",
            got.value,
            want
        );
    }

    #[test]
    fn exclusion_removes_a_disk() {
        let c = HalfPlanePoint { r: 3.0, z: 0.0 };
        let f = |rho: f64, l: f64| {
            let d2 = (rho - c.r).powi(2) + l * l;
            (-d2).exp()
        };
        let full = integrate_2d_domain(f, &spec(), &HalfPlaneDomain::around(c));
        let cut = integrate_2d_domain(f, &spec(), &HalfPlaneDomain::around(c).excluding(0.5));
        // removed mass: int_0^0.5 e^{-d^2} 2 pi d dd = pi (1 - e^{-1/4})
        let removed = std::f64::consts::PI * (1.0 - (-0.25_f64).exp());
        assert!(full.converged && cut.converged);
        assert!(((full.value - cut.value) - removed).abs() < 1e-8);
    }
}
