use std::fs;
use std::io::Write;
use std::path::Path;

use axikernel::bessel::{verify_identity_id1, verify_identity_id2, verify_lemma_sphere};
use axikernel::fields::io::{read_scalar_file, write_scalar, write_velocity};
use axikernel::fields::{divergence, manufactured, reconstruct, Grid, ReconstructionOptions};
use axikernel::kernel::{
    first_moment_check, green_function, green_function_closed, green_function_dz_result,
    green_function_oracle, green_function_result, heat_kernel, heat_kernel_dz, semigroup_check,
};
use axikernel::norms::{scaling_report, NormKind};
use axikernel::{Error, IdentityReport, KernelArgs, QuadratureSpec};
use thiserror::Error as ThisError;

use crate::output::{input, num, stamp_line, status, Table};
use crate::{BoundKind, Cli, Command, Common, EvalQuantity};

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    GateFailed,
}

impl Status {
    fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::GateFailed
        }
    }
}

pub fn run(cli: Cli) -> Result<Status, CliError> {
    let spec = cli.common.spec()?;
    match cli.command {
        Command::Eval {
            quantity,
            points,
            input,
        } => eval(&cli.common, &spec, quantity, &points, input.as_deref()),
        Command::VerifyBounds {
            kind,
            p,
            delta,
            r_samples,
            exponent_gate,
            ratio_gate,
        } => verify_bounds(
            &cli.common,
            &spec,
            &kind,
            &p,
            &delta,
            &r_samples,
            exponent_gate,
            ratio_gate,
        ),
        Command::IdentityCheck => identity_check(&cli.common, &spec),
        Command::OracleCompare { input, gate } => {
            oracle_compare(&cli.common, &spec, input.as_deref(), gate)
        }
        Command::Reconstruct {
            input,
            grid,
            delta,
            manufactured,
            gate,
        } => run_reconstruct(
            &cli.common,
            &input,
            grid.as_deref(),
            &delta,
            manufactured,
            gate,
        ),
    }
}

/// Comma-separated tuples from arguments and an optional file.
fn read_points(
    inline: &[String],
    file: Option<&Path>,
    arity: usize,
) -> Result<Vec<Vec<f64>>, CliError> {
    let mut lines: Vec<(String, String)> = inline
        .iter()
        .enumerate()
        .map(|(k, s)| (format!("argument {}", k + 1), s.clone()))
        .collect();
    if let Some(path) = file {
        let text = fs::read_to_string(path)?;
        for (k, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if !body.is_empty() {
                lines.push((format!("{}:{}", path.display(), k + 1), body.to_string()));
            }
        }
    }
    if lines.is_empty() {
        return Err(CliError::Usage("no points given".into()));
    }
    lines
        .into_iter()
        .map(|(at, text)| {
            let vals: Result<Vec<f64>, _> =
                text.split(',').map(|s| s.trim().parse::<f64>()).collect();
            match vals {
                Ok(v) if v.len() == arity && v.iter().all(|x| x.is_finite()) => Ok(v),
                Ok(v) if v.len() != arity => Err(CliError::Usage(format!(
                    "{at}: expected {arity} comma-separated numbers, found {}",
                    v.len()
                ))),
                _ => Err(CliError::Usage(format!(
                    "{at}: '{text}' is not a list of finite numbers"
                ))),
            }
        })
        .collect()
}

fn eval(
    common: &Common,
    spec: &QuadratureSpec,
    quantity: EvalQuantity,
    inline: &[String],
    file: Option<&Path>,
) -> Result<Status, CliError> {
    let name = match quantity {
        EvalQuantity::G => "G",
        EvalQuantity::DzG => "dzG",
        EvalQuantity::Gamma => "Gamma",
        EvalQuantity::DzGamma => "dzGamma",
    };
    let timed = matches!(quantity, EvalQuantity::G | EvalQuantity::DzG);
    let points = read_points(inline, file, if timed { 4 } else { 3 })?;
    let mut table = Table::open(
        common.out.as_deref(),
        common.stamp,
        &[
            "quantity",
            "t",
            "r",
            "rho",
            "zeta",
            "value",
            "error_estimate",
            "status",
        ],
    )?;
    let mut all_converged = true;
    for p in points {
        let (t, r, rho, zeta) = if timed {
            (Some(p[0]), p[1], p[2], p[3])
        } else {
            (None, p[0], p[1], p[2])
        };
        let t_col = t.map(input).unwrap_or_default();
        let outcome = match quantity {
            EvalQuantity::G => heat_kernel(KernelArgs::new(p[0], r, rho, zeta)?).map(|v| (v, 0.0)),
            EvalQuantity::DzG => {
                heat_kernel_dz(KernelArgs::new(p[0], r, rho, zeta)?).map(|v| (v, 0.0))
            }
            EvalQuantity::Gamma => {
                green_function_result(r, rho, zeta, spec).map(|q| (q.value, q.error_estimate))
            }
            EvalQuantity::DzGamma => {
                green_function_dz_result(r, rho, zeta, spec).map(|q| (q.value, q.error_estimate))
            }
        };
        let (value, estimate, state) = match outcome {
            Ok((v, e)) => (num(v), num(e), "ok"),
            Err(Error::Singular { .. }) => (String::new(), String::new(), "singular"),
            Err(Error::Accuracy {
                value,
                error_estimate,
            }) => {
                all_converged = false;
                (num(value), num(error_estimate), "unconverged")
            }
            Err(e) => return Err(e.into()),
        };
        table.row([
            name,
            &t_col,
            &input(r),
            &input(rho),
            &input(zeta),
            &value,
            &estimate,
            state,
        ])?;
    }
    table.finish()?;
    Ok(Status::from_pass(all_converged))
}

#[allow(clippy::too_many_arguments)]
fn verify_bounds(
    common: &Common,
    spec: &QuadratureSpec,
    kinds: &[BoundKind],
    ps: &[f64],
    deltas: &[f64],
    r_samples: &[f64],
    exponent_gate: Option<f64>,
    ratio_gate: f64,
) -> Result<Status, CliError> {
    let mut jobs = Vec::new();
    for kind in kinds {
        let (norm, params, default_gate): (NormKind, Vec<f64>, f64) = match kind {
            BoundKind::Lp => (NormKind::LpInverseRho, ps.to_vec(), 1e-3),
            BoundKind::L2 => (NormKind::L2Rho, vec![0.0], 1e-3),
            BoundKind::Dz => (NormKind::DzL1RhoDelta, deltas.to_vec(), 5e-3),
        };
        for param in params {
            norm.check_parameter(param)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            jobs.push((norm, param, exponent_gate.unwrap_or(default_gate)));
        }
    }
    if r_samples.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
        return Err(CliError::Usage("r samples must be positive".into()));
    }

    let mut table = Table::open(
        common.out.as_deref(),
        common.stamp,
        &[
            "kind",
            "parameter",
            "r",
            "value",
            "fitted_exponent",
            "reference_exponent",
            "exponent_error",
            "max_ratio_deviation",
            "status",
        ],
    )?;
    let mut all = true;
    for (norm, param, gate) in jobs {
        let rep = scaling_report(norm, param, r_samples, spec).map_err(|e| match e {
            Error::Data(msg) => CliError::Usage(msg),
            other => other.into(),
        })?;
        let pass = rep.exponent_error() <= gate && rep.max_ratio_deviation <= ratio_gate;
        all &= pass;
        for (r, v) in rep.r_samples.iter().zip(&rep.values) {
            table.row([
                norm.to_string(),
                input(param),
                input(*r),
                num(*v),
                num(rep.fitted_exponent),
                input(rep.reference_exponent),
                num(rep.exponent_error()),
                num(rep.max_ratio_deviation),
                status(pass).to_string(),
            ])?;
        }
    }
    table.finish()?;
    Ok(Status::from_pass(all))
}

struct Check {
    report: IdentityReport,
    label: String,
    /// Compared against the relative error, or the absolute error when
    /// `absolute` is set.
    gate: f64,
    absolute: bool,
}

fn identity_check(common: &Common, spec: &QuadratureSpec) -> Result<Status, CliError> {
    let mut checks = Vec::new();
    for a in [0.1, 0.5, 1.0, 2.0, 4.0, 10.0] {
        for report in [
            verify_identity_id1(a, spec)?,
            verify_identity_id2(a, spec)?,
            verify_lemma_sphere(a, spec)?,
        ] {
            let label = format!("a={a}");
            checks.push(Check {
                report,
                label,
                gate: 1e-8,
                absolute: false,
            });
        }
    }
    for t in [0.1, 1.0, 10.0] {
        for r in [0.5, 1.0, 2.0] {
            checks.push(Check {
                report: first_moment_check(t, r, spec)?,
                label: format!("t={t};r={r}"),
                gate: 1e-6,
                absolute: true,
            });
        }
    }
    for (s, t, r, rho, zeta) in [
        (0.5, 0.5, 1.0, 1.0, 0.0),
        (1.0, 2.0, 1.0, 2.0, 0.5),
        (0.3, 0.7, 2.0, 0.5, -1.0),
        (2.0, 1.0, 0.5, 1.5, 1.0),
        (0.1, 0.2, 1.0, 1.2, 0.3),
    ] {
        checks.push(Check {
            report: semigroup_check(s, t, r, rho, zeta, spec)?,
            label: format!("s={s};t={t};r={r};rho={rho};zeta={zeta}"),
            gate: 1e-4,
            absolute: false,
        });
    }
    let (r, rho, zeta) = (1.0, 2.0, 0.5);
    let base = green_function(r, rho, zeta, spec)?;
    for lambda in [0.5, 2.0, 4.0] {
        let scaled = lambda * green_function(lambda * r, lambda * rho, lambda * zeta, spec)?;
        checks.push(Check {
            report: IdentityReport::new("gamma_scaling", lambda, scaled, base, 0.0),
            label: format!("lambda={lambda};r={r};rho={rho};zeta={zeta}"),
            gate: 1e-8,
            absolute: false,
        });
    }

    let mut table = Table::open(
        common.out.as_deref(),
        common.stamp,
        &[
            "name",
            "parameters",
            "lhs",
            "rhs",
            "relative_error",
            "absolute_error",
            "error_estimate",
            "gate",
            "status",
        ],
    )?;
    let mut all = true;
    for c in checks {
        let measured = if c.absolute {
            c.report.absolute_error()
        } else {
            c.report.relative_error
        };
        let pass = measured <= c.gate;
        all &= pass;
        table.row([
            c.report.name.clone(),
            c.label,
            num(c.report.lhs),
            num(c.report.rhs),
            num(c.report.relative_error),
            num(c.report.absolute_error()),
            num(c.report.error_estimate),
            input(c.gate),
            status(pass).to_string(),
        ])?;
    }
    table.finish()?;
    Ok(Status::from_pass(all))
}

/// Radical-inverse sequence in `base` (a Halton coordinate).
fn radical_inverse(mut k: u32, base: u32) -> f64 {
    let step = 1.0 / base as f64;
    let (mut out, mut f) = (0.0, step);
    while k > 0 {
        out += (k % base) as f64 * f;
        k /= base;
        f *= step;
    }
    out
}

fn default_oracle_points() -> Vec<Vec<f64>> {
    (1..=20)
        .map(|k| {
            vec![
                0.1 + 3.9 * radical_inverse(k, 2),
                0.1 + 3.9 * radical_inverse(k, 3),
                -3.0 + 6.0 * radical_inverse(k, 5),
            ]
        })
        .collect()
}

fn oracle_compare(
    common: &Common,
    spec: &QuadratureSpec,
    file: Option<&Path>,
    gate: f64,
) -> Result<Status, CliError> {
    let points = match file {
        Some(_) => read_points(&[], file, 3)?,
        None => default_oracle_points(),
    };
    let mut table = Table::open(
        common.out.as_deref(),
        common.stamp,
        &[
            "r",
            "rho",
            "zeta",
            "time_integral",
            "ring_integral",
            "closed_form",
            "rel_time_vs_ring",
            "rel_closed_vs_ring",
            "status",
        ],
    )?;
    let mut all = true;
    for p in points {
        let (r, rho, zeta) = (p[0], p[1], p[2]);
        let cols = [input(r), input(rho), input(zeta)];
        let ring = match green_function_oracle(r, rho, zeta, spec) {
            Ok(v) => v,
            Err(Error::Singular { .. }) => {
                let blanks = std::iter::repeat_n(String::new(), 5);
                table.row(
                    cols.into_iter()
                        .chain(blanks)
                        .chain(["singular".to_string()]),
                )?;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let time = green_function(r, rho, zeta, spec)?;
        let closed = green_function_closed(r, rho, zeta)?;
        let rel = |a: f64| {
            if ring == 0.0 {
                (a - ring).abs()
            } else {
                ((a - ring) / ring).abs()
            }
        };
        let pass = rel(time) <= gate && rel(closed) <= gate;
        all &= pass;
        table.row(cols.into_iter().chain([
            num(time),
            num(ring),
            num(closed),
            num(rel(time)),
            num(rel(closed)),
            status(pass).to_string(),
        ]))?;
    }
    table.finish()?;
    Ok(Status::from_pass(all))
}

fn write_with_stamp(
    path: &Path,
    stamp: bool,
    body: impl FnOnce(&mut Vec<u8>) -> Result<(), Error>,
) -> Result<(), CliError> {
    let mut buf = Vec::new();
    if stamp {
        writeln!(buf, "{}", stamp_line())?;
    }
    body(&mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

fn run_reconstruct(
    common: &Common,
    input_path: &Path,
    grid: Option<&str>,
    deltas: &[f64],
    check_manufactured: bool,
    gate: f64,
) -> Result<Status, CliError> {
    let out_dir = common
        .out
        .as_deref()
        .ok_or_else(|| CliError::Usage("reconstruct needs --out DIR for the field files".into()))?;
    for &d in deltas {
        NormKind::DzL1RhoDelta
            .check_parameter(d)
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let omega = read_scalar_file(input_path)?;
    let target = match grid {
        Some(spec) => Grid::parse_spec(spec)?,
        None => omega.grid.clone(),
    };
    let rec = reconstruct(&omega, &target, &ReconstructionOptions::default())?;
    fs::create_dir_all(out_dir)?;
    write_with_stamp(&out_dir.join("L_theta.csv"), common.stamp, |b| {
        write_scalar(&rec.stream, b)
    })?;
    write_with_stamp(&out_dir.join("velocity.csv"), common.stamp, |b| {
        write_velocity(&rec.velocity, b)
    })?;

    let sup = |vals: &[f64]| vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let div = divergence(&rec.velocity)?;
    let mut rows: Vec<(String, f64, Option<f64>)> = vec![
        ("sup_abs_L_theta".into(), sup(&rec.stream.values), None),
        ("sup_abs_u_r".into(), sup(&rec.velocity.u_r), None),
        ("sup_abs_u_z".into(), sup(&rec.velocity.u_z), None),
    ];
    for &d in deltas {
        let weighted: Vec<f64> = target
            .points()
            .zip(&rec.velocity.u_r)
            .map(|((r, _), u)| r.powf(d) * u)
            .collect();
        rows.push((format!("sup_r^{d}_abs_u_r"), sup(&weighted), None));
    }
    rows.push((
        "divergence_rms".into(),
        manufactured::rms(&div),
        check_manufactured.then_some(1e-4),
    ));
    if check_manufactured {
        let rep = manufactured::compare(&rec)?;
        rows.push((
            "manufactured_L_theta_error".into(),
            rep.stream_error,
            Some(gate),
        ));
        rows.push((
            "manufactured_u_r_error".into(),
            rep.radial_error,
            Some(gate),
        ));
        rows.push(("manufactured_u_z_error".into(), rep.axial_error, Some(gate)));
    }

    let mut table = Table::open(None, false, &["metric", "value", "gate", "status"])?;
    let mut all = true;
    for (name, value, gate) in rows {
        let (gate_col, state) = match gate {
            Some(g) => {
                let pass = value <= g;
                all &= pass;
                (input(g), status(pass))
            }
            None => (String::new(), "info"),
        };
        table.row([name, num(value), gate_col, state.to_string()])?;
    }
    table.finish()?;
    Ok(Status::from_pass(all))
}
