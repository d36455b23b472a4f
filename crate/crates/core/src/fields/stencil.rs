//! Finite-difference derivatives on rectilinear grids: five-point stencils,
//! centered in the interior and shifted one-sided at the edges, fourth order
//! on any node spacing.

use super::grid::{Grid, MeridianScalarField, MeridianVelocityField, Quantity};
use crate::error::{Error, Result};

const STENCIL: usize = 5;

/// Weights for the `order`-th derivative at `x0` from values at `nodes`
/// (Fornberg's recursion).
pub fn fd_weights(x0: f64, nodes: &[f64], order: usize) -> Vec<f64> {
    let n = nodes.len();
    assert!(n > order, "need more nodes than the derivative order");
    let mut c = vec![vec![0.0; order + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

/// Per-node `(stencil start, weights)` for the first derivative along `axis`.
fn derivative_plan(axis: &[f64]) -> Vec<(usize, Vec<f64>)> {
    let n = axis.len();
    (0..n)
        .map(|i| {
            let start = i.saturating_sub(STENCIL / 2).min(n - STENCIL);
            (start, fd_weights(axis[i], &axis[start..start + STENCIL], 1))
        })
        .collect()
}

fn check_nodes(name: &str, n: usize) -> Result<()> {
    if n < STENCIL {
        Err(Error::data(format!(
            "grid too coarse: {n} {name}-nodes, fourth-order differences need at least {STENCIL}"
        )))
    } else {
        Ok(())
    }
}

/// `d/dr` of grid values stored r-major.
pub fn radial_derivative(grid: &Grid, values: &[f64]) -> Result<Vec<f64>> {
    check_nodes("r", grid.nr())?;
    let nz = grid.nz();
    let plan = derivative_plan(&grid.r_axis);
    let mut out = vec![0.0; values.len()];
    for (i, (start, w)) in plan.iter().enumerate() {
        for j in 0..nz {
            out[i * nz + j] = w
                .iter()
                .enumerate()
                .map(|(k, wk)| wk * values[(start + k) * nz + j])
                .sum();
        }
    }
    Ok(out)
}

/// `d/dz` of grid values stored r-major.
pub fn axial_derivative(grid: &Grid, values: &[f64]) -> Result<Vec<f64>> {
    check_nodes("z", grid.nz())?;
    let nz = grid.nz();
    let plan = derivative_plan(&grid.z_axis);
    let mut out = vec![0.0; values.len()];
    for i in 0..grid.nr() {
        let row = &values[i * nz..(i + 1) * nz];
        for (j, (start, w)) in plan.iter().enumerate() {
            out[i * nz + j] = w
                .iter()
                .enumerate()
                .map(|(k, wk)| wk * row[start + k])
                .sum();
        }
    }
    Ok(out)
}

/// `u_z = (1/r) d(r L)/dr`; on the axis the limit `2 dL/dr` is used.
pub fn uz_from_stream(stream: &MeridianScalarField) -> Result<MeridianScalarField> {
    if stream.quantity != Quantity::LTheta {
        return Err(Error::data(format!(
            "axial velocity needs a stream function, got {}",
            stream.quantity
        )));
    }
    let grid = &stream.grid;
    let nz = grid.nz();
    let r_times: Vec<f64> = grid
        .points()
        .zip(&stream.values)
        .map(|((r, _), v)| r * v)
        .collect();
    let d_rl = radial_derivative(grid, &r_times)?;
    let d_l = radial_derivative(grid, &stream.values)?;
    let mut u_z = vec![0.0; stream.values.len()];
    for (i, &r) in grid.r_axis.iter().enumerate() {
        for j in 0..nz {
            let k = i * nz + j;
            u_z[k] = if r > 0.0 { d_rl[k] / r } else { 2.0 * d_l[k] };
        }
    }
    Ok(
        MeridianScalarField::new(grid.clone(), u_z, Quantity::UAxial)?
            .with_provenance("u_z = (1/r) d(r L_theta)/dr, fourth-order differences"),
    )
}

/// `du_r/dr + u_r/r + du_z/dz` at every node (`2 du_r/dr + du_z/dz` on the axis).
pub fn divergence(velocity: &MeridianVelocityField) -> Result<Vec<f64>> {
    let grid = &velocity.grid;
    let dr = radial_derivative(grid, &velocity.u_r)?;
    let dz = axial_derivative(grid, &velocity.u_z)?;
    let nz = grid.nz();
    let mut out = vec![0.0; dr.len()];
    for (i, &r) in grid.r_axis.iter().enumerate() {
        for j in 0..nz {
            let k = i * nz + j;
            let hoop = if r > 0.0 { velocity.u_r[k] / r } else { dr[k] };
            out[k] = dr[k] + hoop + dz[k];
        }
    }
    Ok(out)
}
