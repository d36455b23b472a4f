//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test -p axikernel --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use axikernel::bessel::{verify_identity_id1, verify_identity_id2, verify_lemma_sphere};
use axikernel::fields::envelope::{radial_velocity_envelope, stream_bound_study, PowerSource};
use axikernel::fields::manufactured;
use axikernel::fields::ReconstructionOptions;
use axikernel::kernel::{
    first_moment_check, green_function, green_function_oracle, heat_kernel, heat_kernel_dr,
    heat_kernel_dz, semigroup_check,
};
use axikernel::norms::{norm_dz_weighted, scaling_report, truncated_integral, NormKind};
use axikernel::{Error, KernelArgs, QuadratureSpec, Result};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const RADII: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];

type Criterion = (&'static str, fn() -> Result<Outcome>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn identities() -> Result<Outcome> {
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for a in [0.1, 0.5, 1.0, 2.0, 4.0, 10.0] {
        for rep in [
            verify_identity_id1(a, &spec)?,
            verify_identity_id2(a, &spec)?,
            verify_lemma_sphere(a, &spec)?,
        ] {
            worst = worst.max(rep.relative_error);
        }
    }
    outcome(
        worst <= 1e-8,
        format!("worst relative error {worst:.2e} (limit 1e-8)"),
    )
}

fn kernel_sanity() -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(20_240_611);
    let mut negatives = 0;
    let mut worst_sym: f64 = 0.0;
    let mut axis_nonzero = 0;
    for _ in 0..1000 {
        let t = 10f64.powf(rng.gen_range(-2.0..1.0));
        let r = rng.gen_range(0.0..5.0);
        let rho = rng.gen_range(0.0..5.0);
        let zeta = rng.gen_range(-5.0..5.0);
        let g = heat_kernel(KernelArgs::new(t, r, rho, zeta)?)?;
        let g_swap = heat_kernel(KernelArgs::new(t, rho, r, zeta)?)?;
        if g < 0.0 {
            negatives += 1;
        }
        if g > 0.0 {
            worst_sym = worst_sym.max(rel(g_swap, g));
        } else if g_swap != 0.0 {
            worst_sym = f64::INFINITY;
        }
        if heat_kernel(KernelArgs::new(t, 0.0, rho, zeta)?)? != 0.0 {
            axis_nonzero += 1;
        }
    }

    let h = 1e-5;
    let mut worst_fd: f64 = 0.0;
    for _ in 0..50 {
        let t = rng.gen_range(0.2..4.0);
        let r = rng.gen_range(0.3..3.0);
        let rho = rng.gen_range(0.3..3.0);
        let zeta = rng.gen_range(0.2..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let g = |r: f64, zeta: f64| heat_kernel(KernelArgs::new(t, r, rho, zeta)?);
        let fd_z = (g(r, zeta + h)? - g(r, zeta - h)?) / (2.0 * h);
        let fd_r = (g(r + h, zeta)? - g(r - h, zeta)?) / (2.0 * h);
        let args = KernelArgs::new(t, r, rho, zeta)?;
        worst_fd = worst_fd
            .max(rel(fd_z, heat_kernel_dz(args)?))
            .max(rel(fd_r, heat_kernel_dr(args)?));
    }
    outcome(
        negatives == 0 && worst_sym <= 1e-12 && axis_nonzero == 0 && worst_fd <= 1e-6,
        format!(
            "1000 samples: {negatives} negative, symmetry {worst_sym:.1e}, {axis_nonzero} nonzero on axis; \
             50 derivative checks worst {worst_fd:.2e} (limit 1e-6)"
        ),
    )
}

fn first_moment() -> Result<Outcome> {
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for t in [0.1, 1.0, 10.0] {
        for r in [0.5, 1.0, 2.0] {
            worst = worst.max(first_moment_check(t, r, &spec)?.absolute_error());
        }
    }
    outcome(
        worst <= 1e-6,
        format!("worst absolute error {worst:.2e} (limit 1e-6)"),
    )
}

fn semigroup() -> Result<Outcome> {
    let spec = QuadratureSpec::default().with_rel_tol(1e-7);
    let start = Instant::now();
    let tuples = [
        (0.5, 0.5, 1.0, 1.0, 0.0),
        (1.0, 2.0, 1.0, 2.0, 0.5),
        (0.3, 0.7, 2.0, 0.5, -1.0),
        (2.0, 1.0, 0.5, 1.5, 1.0),
        (0.1, 0.2, 1.0, 1.2, 0.3),
    ];
    let mut worst: f64 = 0.0;
    for (s, t, r, rho, zeta) in tuples {
        worst = worst.max(semigroup_check(s, t, r, rho, zeta, &spec)?.relative_error);
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-4 && elapsed <= Duration::from_secs(60),
        format!(
            "worst relative error {worst:.2e} (limit 1e-4) in {:.1}s (limit 60s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn oracle_agreement() -> Result<Outcome> {
    let spec = QuadratureSpec::default();
    let mut rng = StdRng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let r = rng.gen_range(0.1..4.0);
        let rho = rng.gen_range(0.1..4.0);
        let zeta = rng.gen_range(-3.0..3.0);
        let time_route = green_function(r, rho, zeta, &spec)?;
        worst = worst.max(rel(time_route, green_function_oracle(r, rho, zeta, &spec)?));
    }
    let mut worst_scale: f64 = 0.0;
    for (r, rho, zeta) in [(1.0, 2.0, 0.5), (0.7, 0.3, -1.2), (2.5, 2.0, 0.0)] {
        let base = green_function(r, rho, zeta, &spec)?;
        for lambda in [0.5, 2.0, 4.0] {
            let scaled = lambda * green_function(lambda * r, lambda * rho, lambda * zeta, &spec)?;
            worst_scale = worst_scale.max(rel(scaled, base));
        }
    }
    outcome(
        worst <= 1e-6 && worst_scale <= 1e-8,
        format!("20 points worst {worst:.2e} (limit 1e-6); scaling worst {worst_scale:.2e} (limit 1e-8)"),
    )
}

fn strictly_increasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[1] > w[0])
}

fn excluded_growth(kind: NormKind, parameter: f64, spec: &QuadratureSpec) -> Result<Vec<f64>> {
    [1e-1, 1e-2, 1e-3]
        .iter()
        .map(|&eps| Ok(truncated_integral(kind, parameter, 1.0, eps, spec)?.value))
        .collect()
}

fn lp_scaling() -> Result<Outcome> {
    let spec = QuadratureSpec::default();
    let mut worst_const: f64 = 0.0;
    let mut worst_exp: f64 = 0.0;
    for p in [1.0, 1.5, 1.9] {
        let rep = scaling_report(NormKind::LpInverseRho, p, &RADII, &spec)?;
        worst_const = worst_const.max(rep.max_ratio_deviation);
        worst_exp = worst_exp.max(rep.exponent_error());
    }
    let growth = excluded_growth(NormKind::LpInverseRho, 2.0, &spec)?;
    let grows = strictly_increasing(&growth);
    outcome(
        worst_const <= 2e-3 && worst_exp <= 1e-3 && grows,
        format!(
            "constant spread {worst_const:.2e} (limit 2e-3), exponent error {worst_exp:.2e} (limit 1e-3); \
             p=2 truncated {:.6} < {:.6} < {:.6}",
            growth[0], growth[1], growth[2]
        ),
    )
}

fn l2_scaling() -> Result<Outcome> {
    let rep = scaling_report(NormKind::L2Rho, 0.0, &RADII, &QuadratureSpec::default())?;
    outcome(
        rep.exponent_error() <= 1e-3,
        format!(
            "fitted exponent {:.6} (target 0.5 +- 1e-3)",
            rep.fitted_exponent
        ),
    )
}

fn dz_scaling() -> Result<Outcome> {
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for delta in [0.0, 0.5, 0.9] {
        worst = worst
            .max(scaling_report(NormKind::DzL1RhoDelta, delta, &RADII, &spec)?.exponent_error());
    }
    let rejected = matches!(norm_dz_weighted(1.0, 1.0, &spec), Err(Error::Range { .. }));
    let growth = excluded_growth(NormKind::DzL1RhoDelta, 1.0, &spec)?;
    outcome(
        worst <= 5e-3 && rejected && strictly_increasing(&growth),
        format!(
            "worst exponent error {worst:.2e} (limit 5e-3); delta=1 rejected: {rejected}; \
             delta=1 truncated {:.6} < {:.6} < {:.6}",
            growth[0], growth[1], growth[2]
        ),
    )
}

fn stream_bound() -> Result<Outcome> {
    let rep = stream_bound_study(
        PowerSource::new(2.0),
        &[0.01, 0.03, 0.1, 0.3, 1.0, 2.0, 3.0, 5.0],
        &ReconstructionOptions::default(),
    )?;
    let spread = rep.spread();
    let change = rep.truncation_change();
    outcome(
        spread < 2.0 && change <= 0.1,
        format!(
            "sup|L| = {:.4}, max/min over r = {spread:.3} (limit 2), box doubling changes sup by {:.2}% (limit 10%)",
            rep.global_sup(),
            100.0 * change
        ),
    )
}

fn velocity_envelope() -> Result<Outcome> {
    let rep = radial_velocity_envelope(
        PowerSource::new(1.5),
        &[0.05, 0.1, 0.2, 0.4],
        &ReconstructionOptions::default(),
    )?;
    outcome(
        (rep.slope + 0.5).abs() <= 0.05,
        format!("slope {:.4} (target -0.5 +- 0.05)", rep.slope),
    )
}

fn manufactured_roundtrip() -> Result<Outcome> {
    let (_, rep) = manufactured::roundtrip(
        manufactured::default_source_grid(),
        &manufactured::default_target_grid(),
        &ReconstructionOptions::default(),
    )?;
    outcome(
        rep.worst_field_error() <= 1e-3 && rep.divergence_rms <= 1e-4,
        format!(
            "L {:.2e}, u_r {:.2e}, u_z {:.2e} (limit 1e-3); divergence rms {:.2e} (limit 1e-4)",
            rep.stream_error, rep.radial_error, rep.axial_error, rep.divergence_rms
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [Criterion; 11] = [
        ("Bessel identities", identities),
        ("kernel sanity", kernel_sanity),
        ("first moment", first_moment),
        ("semigroup", semigroup),
        ("Green function routes", oracle_agreement),
        ("inverse-rho Lp scaling", lp_scaling),
        ("rho-weighted L2 scaling", l2_scaling),
        ("dz L1 scaling", dz_scaling),
        ("stream function bound", stream_bound),
        ("radial velocity envelope", velocity_envelope),
        ("manufactured roundtrip", manufactured_roundtrip),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= pass;
        println!(
            "criterion {:>2} {} {name}: {detail} [{:.1}s]",
            k + 1,
            if pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
    }
    let total = start.elapsed();
    let fast = total <= Duration::from_secs(600);
    all &= fast;
    println!(
        "criterion 12 {} wall clock: {:.1}s (limit 600s)",
        if fast { "PASS" } else { "FAIL" },
        total.as_secs_f64()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
