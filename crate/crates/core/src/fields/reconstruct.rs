//! Stream function and radial velocity from angular vorticity:
//! `L = int int Gamma(r, rho, z - l) w rho`, `u_r = -int int dGamma/dz w rho`.
//!
//! The source is interpolated cell by cell (tensor Lagrange, cubic by
//! default) and integrated with tensor Gauss-Legendre rules. Cells close to a
//! target are split recursively around it; once a panel shrinks below
//! `min_panel_fraction` of the cell while still near the target it is
//! dropped, which costs `O(s^2 log s)` in `L` and `O(s)` in `u_r`.

use rayon::prelude::*;

use super::grid::{Grid, MeridianScalarField, MeridianVelocityField, Quantity};
use super::stencil::{fd_weights, uz_from_stream};
use crate::error::{Error, Result};
use crate::kernel::ring_pair;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpolation {
    Bilinear,
    Cubic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionOptions {
    pub interpolation: Interpolation,
    /// Gauss-Legendre points per direction, 2 to 6.
    pub gauss_points: usize,
    /// A panel is integrated directly once its distance to the target is at
    /// least this multiple of its longest side.
    pub near_factor: f64,
    pub min_panel_fraction: f64,
}

impl Default for ReconstructionOptions {
    fn default() -> Self {
        Self {
            interpolation: Interpolation::Cubic,
            gauss_points: 3,
            near_factor: 1.0,
            min_panel_fraction: 1e-7,
        }
    }
}

impl ReconstructionOptions {
    pub fn validate(&self) -> Result<()> {
        if !(2..=6).contains(&self.gauss_points) {
            return Err(Error::Range {
                name: "gauss_points",
                value: self.gauss_points as f64,
                valid: "[2, 6]",
            });
        }
        if !(self.near_factor >= 0.5 && self.near_factor.is_finite()) {
            return Err(Error::Range {
                name: "near_factor",
                value: self.near_factor,
                valid: "[0.5, inf)",
            });
        }
        if !(self.min_panel_fraction > 0.0 && self.min_panel_fraction < 1.0) {
            return Err(Error::Range {
                name: "min_panel_fraction",
                value: self.min_panel_fraction,
                valid: "(0, 1)",
            });
        }
        Ok(())
    }
}

fn gauss_rule(n: usize) -> (&'static [f64], &'static [f64]) {
    const X2: [f64; 2] = [-0.577_350_269_189_625_8, 0.577_350_269_189_625_8];
    const W2: [f64; 2] = [1.0, 1.0];
    const X3: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
    const W3: [f64; 3] = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];
    const X4: [f64; 4] = [
        -0.861_136_311_594_052_6,
        -0.339_981_043_584_856_3,
        0.339_981_043_584_856_3,
        0.861_136_311_594_052_6,
    ];
    const W4: [f64; 4] = [
        0.347_854_845_137_453_9,
        0.652_145_154_862_546_1,
        0.652_145_154_862_546_1,
        0.347_854_845_137_453_9,
    ];
    const X5: [f64; 5] = [
        -0.906_179_845_938_664,
        -0.538_469_310_105_683,
        0.0,
        0.538_469_310_105_683,
        0.906_179_845_938_664,
    ];
    const W5: [f64; 5] = [
        0.236_926_885_056_189_1,
        0.478_628_670_499_366_5,
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
    ];
    const X6: [f64; 6] = [
        -0.932_469_514_203_152,
        -0.661_209_386_466_264_5,
        -0.238_619_186_083_196_9,
        0.238_619_186_083_196_9,
        0.661_209_386_466_264_5,
        0.932_469_514_203_152,
    ];
    const W6: [f64; 6] = [
        0.171_324_492_379_170_3,
        0.360_761_573_048_138_6,
        0.467_913_934_572_691_1,
        0.467_913_934_572_691_1,
        0.360_761_573_048_138_6,
        0.171_324_492_379_170_3,
    ];
    match n {
        2 => (&X2, &W2),
        3 => (&X3, &W3),
        4 => (&X4, &W4),
        5 => (&X5, &W5),
        _ => (&X6, &W6),
    }
}

#[derive(Debug, Clone, Copy)]
struct Rect {
    r0: f64,
    r1: f64,
    z0: f64,
    z1: f64,
}

impl Rect {
    fn size(&self) -> f64 {
        (self.r1 - self.r0).max(self.z1 - self.z0)
    }

    /// Far-field test. The slack keeps exact geometric ties on regular grids
    /// from being decided by rounding, which would break mirror symmetry.
    fn is_far(&self, r: f64, z: f64, factor: f64) -> bool {
        self.distance(r, z) >= factor * self.size() * (1.0 + 1e-9)
    }

    fn distance(&self, r: f64, z: f64) -> f64 {
        let dr = (self.r0 - r).max(r - self.r1).max(0.0);
        let dz = (self.z0 - z).max(z - self.z1).max(0.0);
        dr.hypot(dz)
    }
}

/// One grid cell with its interpolation stencil and far-field nodes
/// `(rho, l, weight * omega * rho)`.
struct Cell {
    rect: Rect,
    r_start: usize,
    z_start: usize,
    nodes: Vec<(f64, f64, f64)>,
}

struct Source<'a> {
    grid: &'a Grid,
    values: &'a [f64],
    width: usize,
    opts: &'a ReconstructionOptions,
    cells: Vec<Cell>,
}

fn stencil_start(cell: usize, nodes: usize, width: usize) -> usize {
    if width == 2 {
        cell
    } else {
        cell.saturating_sub(1).min(nodes - width)
    }
}

impl<'a> Source<'a> {
    fn new(omega: &'a MeridianScalarField, opts: &'a ReconstructionOptions) -> Self {
        let grid = &omega.grid;
        let (nr, nz) = (grid.nr(), grid.nz());
        let width = match opts.interpolation {
            Interpolation::Bilinear => 2,
            Interpolation::Cubic => 4,
        };
        let mut src = Source {
            grid,
            values: &omega.values,
            width,
            opts,
            cells: Vec::new(),
        };
        if nr < 2 || nz < 2 {
            return src;
        }
        for i in 0..nr - 1 {
            let r_start = stencil_start(i, nr, width.min(nr));
            for j in 0..nz - 1 {
                let z_start = stencil_start(j, nz, width.min(nz));
                let mut cell = Cell {
                    rect: Rect {
                        r0: grid.r_axis[i],
                        r1: grid.r_axis[i + 1],
                        z0: grid.z_axis[j],
                        z1: grid.z_axis[j + 1],
                    },
                    r_start,
                    z_start,
                    nodes: Vec::new(),
                };
                if src.stencil_is_zero(&cell) {
                    continue;
                }
                cell.nodes = src.panel_nodes(&cell, cell.rect);
                src.cells.push(cell);
            }
        }
        src
    }

    fn stencil_is_zero(&self, cell: &Cell) -> bool {
        let nz = self.grid.nz();
        let wr = self.width.min(self.grid.nr());
        let wz = self.width.min(nz);
        (0..wr).all(|a| {
            let row = (cell.r_start + a) * nz + cell.z_start;
            self.values[row..row + wz].iter().all(|v| *v == 0.0)
        })
    }

    fn interpolate(&self, cell: &Cell, rho: f64, l: f64) -> f64 {
        let nz = self.grid.nz();
        let wr = self.width.min(self.grid.nr());
        let wz = self.width.min(nz);
        let cr = fd_weights(rho, &self.grid.r_axis[cell.r_start..cell.r_start + wr], 0);
        let cz = fd_weights(l, &self.grid.z_axis[cell.z_start..cell.z_start + wz], 0);
        let mut acc = 0.0;
        for (a, wa) in cr.iter().enumerate() {
            let row = (cell.r_start + a) * nz + cell.z_start;
            let inner: f64 = cz
                .iter()
                .zip(&self.values[row..row + wz])
                .map(|(w, v)| w * v)
                .sum();
            acc += wa * inner;
        }
        acc
    }

    fn panel_nodes(&self, cell: &Cell, p: Rect) -> Vec<(f64, f64, f64)> {
        let (x, w) = gauss_rule(self.opts.gauss_points);
        let (hr, hz) = (0.5 * (p.r1 - p.r0), 0.5 * (p.z1 - p.z0));
        let (cr, cz) = (0.5 * (p.r0 + p.r1), 0.5 * (p.z0 + p.z1));
        let mut out = Vec::with_capacity(x.len() * x.len());
        for (xa, wa) in x.iter().zip(w) {
            let rho = cr + hr * xa;
            for (xb, wb) in x.iter().zip(w) {
                let l = cz + hz * xb;
                let weight = wa * wb * hr * hz * rho * self.interpolate(cell, rho, l);
                out.push((rho, l, weight));
            }
        }
        out
    }

    /// `(L, u_r)` at one target.
    fn evaluate(&self, r: f64, z: f64) -> (f64, f64) {
        if r == 0.0 {
            return (0.0, 0.0);
        }
        let mut acc = (0.0, 0.0);
        for cell in &self.cells {
            let rect = cell.rect;
            if rect.is_far(r, z, self.opts.near_factor) {
                accumulate(&mut acc, &cell.nodes, r, z);
            } else {
                let floor = self.opts.min_panel_fraction * rect.size();
                self.refine(cell, rect, r, z, floor, &mut acc);
            }
        }
        (acc.0, -acc.1)
    }

    fn refine(&self, cell: &Cell, p: Rect, r: f64, z: f64, floor: f64, acc: &mut (f64, f64)) {
        if p.is_far(r, z, self.opts.near_factor) {
            accumulate(acc, &self.panel_nodes(cell, p), r, z);
            return;
        }
        if p.size() <= floor {
            // neighbourhood of the target, dropped whole
            return;
        }
        let (wr, wz) = (p.r1 - p.r0, p.z1 - p.z0);
        let (mr, mz) = (0.5 * (p.r0 + p.r1), 0.5 * (p.z0 + p.z1));
        let split_r = wr > 0.5 * wz;
        let split_z = wz > 0.5 * wr;
        let rs: &[(f64, f64)] = if split_r {
            &[(p.r0, mr), (mr, p.r1)]
        } else {
            &[(p.r0, p.r1)]
        };
        let zs: &[(f64, f64)] = if split_z {
            &[(p.z0, mz), (mz, p.z1)]
        } else {
            &[(p.z0, p.z1)]
        };
        for &(r0, r1) in rs {
            for &(z0, z1) in zs {
                self.refine(cell, Rect { r0, r1, z0, z1 }, r, z, floor, acc);
            }
        }
    }
}

fn accumulate(acc: &mut (f64, f64), nodes: &[(f64, f64, f64)], r: f64, z: f64) {
    for &(rho, l, w) in nodes {
        let zeta = z - l;
        if rho == r && zeta == 0.0 {
            continue;
        }
        let (g, dg) = ring_pair(r, rho, zeta);
        acc.0 += g * w;
        acc.1 += dg * w;
    }
}

fn check_source(omega: &MeridianScalarField) -> Result<()> {
    if omega.quantity != Quantity::OmegaTheta {
        return Err(Error::data(format!(
            "reconstruction needs angular vorticity, got {}",
            omega.quantity
        )));
    }
    if omega.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::data("vorticity values must be finite"));
    }
    Ok(())
}

fn evaluate_grid(
    omega: &MeridianScalarField,
    target: &Grid,
    opts: &ReconstructionOptions,
) -> Result<(Vec<f64>, Vec<f64>)> {
    check_source(omega)?;
    opts.validate()?;
    let source = Source::new(omega, opts);
    let points: Vec<(f64, f64)> = target.points().collect();
    let pairs: Vec<(f64, f64)> = points
        .par_iter()
        .map(|&(r, z)| source.evaluate(r, z))
        .collect();
    Ok(pairs.into_iter().unzip())
}

pub fn stream_from_vorticity(
    omega: &MeridianScalarField,
    target: &Grid,
    opts: &ReconstructionOptions,
) -> Result<MeridianScalarField> {
    let (l, _) = evaluate_grid(omega, target, opts)?;
    Ok(
        MeridianScalarField::new(target.clone(), l, Quantity::LTheta)?
            .with_provenance("L_theta reconstructed from omega_theta with the Green function"),
    )
}

pub fn ur_from_vorticity(
    omega: &MeridianScalarField,
    target: &Grid,
    opts: &ReconstructionOptions,
) -> Result<MeridianScalarField> {
    let (_, ur) = evaluate_grid(omega, target, opts)?;
    Ok(
        MeridianScalarField::new(target.clone(), ur, Quantity::URadial)?
            .with_provenance("u_r reconstructed from omega_theta with dGamma/dz"),
    )
}

/// Stream function and velocity on one target grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub stream: MeridianScalarField,
    pub velocity: MeridianVelocityField,
}

/// `L` and `u_r` by quadrature, `u_z` by differentiating `L` on the target
/// grid (at least five r-nodes).
pub fn reconstruct(
    omega: &MeridianScalarField,
    target: &Grid,
    opts: &ReconstructionOptions,
) -> Result<Reconstruction> {
    let (l, ur) = evaluate_grid(omega, target, opts)?;
    let stream = MeridianScalarField::new(target.clone(), l, Quantity::LTheta)?
        .with_provenance("L_theta reconstructed from omega_theta with the Green function");
    let uz = uz_from_stream(&stream)?;
    let velocity = MeridianVelocityField::new(
        target.clone(),
        ur,
        uz.values,
        "u_r from dGamma/dz quadrature, u_z = (1/r) d(r L_theta)/dr",
    )?;
    Ok(Reconstruction { stream, velocity })
}
