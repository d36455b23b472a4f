use axikernel::fields::io::{read_scalar, read_velocity, write_scalar, write_velocity};
use axikernel::fields::manufactured;
use axikernel::fields::*;
use proptest::prelude::*;

fn blob(r: f64, z: f64, z0: f64) -> f64 {
    r * r * (-(r - 1.0).powi(2) - 2.0 * (z - z0).powi(2)).exp()
}

fn source(f: impl Fn(f64, f64) -> f64) -> MeridianScalarField {
    let grid = Grid::uniform((0.0, 3.0, 16), (-3.0, 3.0, 31)).unwrap();
    MeridianScalarField::from_fn(grid, Quantity::OmegaTheta, f).unwrap()
}

fn target() -> Grid {
    Grid::uniform((0.0, 2.0, 6), (-2.0, 2.0, 9)).unwrap()
}

#[test]
fn reconstruction_is_linear() {
    let opts = ReconstructionOptions::default();
    let w1 = source(|r, z| blob(r, z, 0.3));
    let w2 = source(|r, z| r * (-r * r - z * z).exp());
    let (a, b) = (1.7, -0.4);
    let combo = source(|r, z| a * blob(r, z, 0.3) + b * r * (-r * r - z * z).exp());
    let r1 = reconstruct(&w1, &target(), &opts).unwrap();
    let r2 = reconstruct(&w2, &target(), &opts).unwrap();
    let rc = reconstruct(&combo, &target(), &opts).unwrap();
    let scale = rc.stream.max_abs();
    for k in 0..target().len() {
        let l = a * r1.stream.values[k] + b * r2.stream.values[k];
        let u = a * r1.velocity.u_r[k] + b * r2.velocity.u_r[k];
        assert!((rc.stream.values[k] - l).abs() <= 1e-12 * scale);
        assert!((rc.velocity.u_r[k] - u).abs() <= 1e-12 * scale);
    }
}

#[test]
fn axis_values_vanish() {
    let w = source(|r, z| blob(r, z, 0.0));
    let rec = reconstruct(&w, &target(), &ReconstructionOptions::default()).unwrap();
    let nz = target().nz();
    assert!(rec.stream.values[..nz].iter().all(|v| *v == 0.0));
    assert!(rec.velocity.u_r[..nz].iter().all(|v| *v == 0.0));
}

#[test]
fn mirror_symmetry() {
    // source even about z0 = 0.5 on a grid symmetric about it
    let z0 = 0.5;
    let grid = Grid::uniform((0.0, 3.0, 16), (z0 - 3.0, z0 + 3.0, 31)).unwrap();
    let w =
        MeridianScalarField::from_fn(grid, Quantity::OmegaTheta, |r, z| blob(r, z, z0)).unwrap();
    let tgrid = Grid::uniform((0.0, 2.0, 6), (z0 - 2.0, z0 + 2.0, 9)).unwrap();
    let rec = reconstruct(&w, &tgrid, &ReconstructionOptions::default()).unwrap();
    let nz = tgrid.nz();
    let scale = rec.stream.max_abs();
    let uscale = rec.velocity.u_r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for i in 0..tgrid.nr() {
        for j in 0..nz {
            let (a, b) = (i * nz + j, i * nz + nz - 1 - j);
            assert!((rec.stream.values[a] - rec.stream.values[b]).abs() <= 1e-8 * scale);
            assert!(
                (rec.velocity.u_r[a] + rec.velocity.u_r[b]).abs() <= 1e-8 * uscale,
                "{i} {j} {} {} {uscale}",
                rec.velocity.u_r[a],
                rec.velocity.u_r[b]
            );
        }
    }
}

#[test]
fn coincident_target_and_source_nodes() {
    let w = source(|r, z| blob(r, z, 0.0));
    let same = reconstruct(&w, &w.grid, &ReconstructionOptions::default()).unwrap();
    assert!(same.stream.values.iter().all(|v| v.is_finite()));
}

#[test]
fn manufactured_roundtrip_on_small_window() {
    let target = Grid::uniform((0.0, 1.5, 31), (-1.0, 1.0, 41)).unwrap();
    let (rec, _) = manufactured::roundtrip(
        manufactured::default_source_grid(),
        &target,
        &ReconstructionOptions::default(),
    )
    .unwrap();
    let err = manufactured::sup_relative_error(&target, &rec.stream.values, manufactured::stream);
    assert!(err < 1e-3, "stream error {err}");
    let err =
        manufactured::sup_relative_error(&target, &rec.velocity.u_r, manufactured::radial_velocity);
    assert!(err < 1e-3, "u_r error {err}");
}

#[test]
fn criterion_functionals_match_scan() {
    let grid = Grid::uniform((0.0, 2.0, 21), (-1.0, 1.0, 11)).unwrap();
    let b = MeridianVelocityField::new(
        grid.clone(),
        grid.sample(manufactured::radial_velocity),
        grid.sample(manufactured::axial_velocity),
        "",
    )
    .unwrap();
    let swirl =
        MeridianScalarField::from_fn(grid.clone(), Quantity::UTheta, manufactured::stream).unwrap();
    let rep = criterion_functionals(&b, &swirl, 0.5, 0.05).unwrap();
    let (mut sb, mut su) = (0.0f64, 0.0f64);
    for (r, z) in grid.points() {
        if r > 0.0 {
            let lf = 1.0 + r.ln().abs();
            let mag = manufactured::radial_velocity(r, z).hypot(manufactured::axial_velocity(r, z));
            sb = sb.max(r * mag / lf.powf(0.05));
            su = su.max(r * manufactured::stream(r, z).abs() * lf.sqrt());
        }
    }
    assert!((rep.sup_b_functional - sb).abs() <= 1e-14 * sb);
    assert!((rep.sup_utheta_functional - su).abs() <= 1e-14 * su);
    let other = MeridianScalarField::from_fn(target(), Quantity::UTheta, |_, _| 0.0).unwrap();
    assert!(matches!(
        criterion_functionals(&b, &other, 0.5, 0.0),
        Err(axikernel::Error::Data(_))
    ));
}

#[test]
fn assumption_envelope_grows_toward_axis() {
    let omega = manufactured::vorticity_field(manufactured::default_source_grid()).unwrap();
    for e in [1.0, 1.5, 2.0] {
        assert!(corollary_assumption_check(&omega, e)
            .unwrap()
            .sup
            .is_finite());
    }
    let sups: Vec<f64> = [1e-2, 1e-4]
        .iter()
        .map(|&rmin: &f64| {
            let r: Vec<f64> = (0..=20)
                .map(|k| rmin * (1.0 / rmin).powf(k as f64 / 20.0))
                .collect();
            let grid = Grid::new(r, vec![0.0, 1.0]).unwrap();
            let w = MeridianScalarField::from_fn(grid, Quantity::OmegaTheta, |r, _| r.powf(-2.5))
                .unwrap();
            corollary_assumption_check(&w, 2.0).unwrap().sup
        })
        .collect();
    assert!((sups[1] / sups[0] - 10.0).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn csv_round_trip(values in proptest::collection::vec(-1.0f64..1.0, 12), scale in -300i32..300) {
        let grid = Grid::new(vec![0.5, 1.0, 1.0 + 1e-9], vec![-2.0, 0.1, 0.2, 7.0]).unwrap();
        let values: Vec<f64> = values.iter().map(|v| v * 10f64.powi(scale)).collect();
        let f = MeridianScalarField::new(grid.clone(), values.clone(), Quantity::Generic).unwrap()
            .with_provenance("property test");
        let mut buf = Vec::new();
        write_scalar(&f, &mut buf).unwrap();
        prop_assert_eq!(read_scalar(buf.as_slice()).unwrap(), f);
        let rev: Vec<f64> = values.iter().rev().cloned().collect();
        let v = MeridianVelocityField::new(grid, values, rev, "v").unwrap();
        let mut buf = Vec::new();
        write_velocity(&v, &mut buf).unwrap();
        prop_assert_eq!(read_velocity(buf.as_slice()).unwrap(), v);
    }
}
