use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    OmegaTheta,
    LTheta,
    UTheta,
    /// Radial velocity component.
    URadial,
    /// Axial velocity component.
    UAxial,
    Generic,
}

impl Quantity {
    /// Quantities that must vanish on the symmetry axis.
    pub fn vanishes_on_axis(self) -> bool {
        matches!(
            self,
            Quantity::OmegaTheta | Quantity::LTheta | Quantity::UTheta | Quantity::URadial
        )
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::OmegaTheta => "omega_theta",
            Quantity::LTheta => "L_theta",
            Quantity::UTheta => "u_theta",
            Quantity::URadial => "u_r",
            Quantity::UAxial => "u_z",
            Quantity::Generic => "generic",
        })
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "omega_theta" => Ok(Quantity::OmegaTheta),
            "L_theta" => Ok(Quantity::LTheta),
            "u_theta" => Ok(Quantity::UTheta),
            "u_r" => Ok(Quantity::URadial),
            "u_z" => Ok(Quantity::UAxial),
            "generic" => Ok(Quantity::Generic),
            other => Err(Error::data(format!("unknown quantity tag '{other}'"))),
        }
    }
}

/// Rectilinear grid in the meridian half-plane.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub r_axis: Vec<f64>,
    pub z_axis: Vec<f64>,
}

fn check_axis(name: &str, axis: &[f64]) -> Result<()> {
    if axis.is_empty() {
        return Err(Error::data(format!("{name} axis is empty")));
    }
    if axis.iter().any(|v| !v.is_finite()) {
        return Err(Error::data(format!("{name} axis has non-finite entries")));
    }
    if axis.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::data(format!(
            "{name} axis is not strictly increasing"
        )));
    }
    Ok(())
}

impl Grid {
    pub fn new(r_axis: Vec<f64>, z_axis: Vec<f64>) -> Result<Self> {
        check_axis("r", &r_axis)?;
        check_axis("z", &z_axis)?;
        if r_axis[0] < 0.0 {
            return Err(Error::data("r axis must be nonnegative"));
        }
        Ok(Self { r_axis, z_axis })
    }

    /// `n` evenly spaced nodes from `lo` to `hi` inclusive in each direction.
    pub fn uniform(r: (f64, f64, usize), z: (f64, f64, usize)) -> Result<Self> {
        Self::new(linspace(r.0, r.1, r.2)?, linspace(z.0, z.1, z.2)?)
    }

    /// Parses `rmin:rmax:nr,zmin:zmax:nz`.
    pub fn parse_spec(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::data(format!(
                "grid spec '{text}' must look like rmin:rmax:nr,zmin:zmax:nz"
            )));
        }
        let axis = |s: &str| -> Result<(f64, f64, usize)> {
            let f: Vec<&str> = s.split(':').collect();
            if f.len() != 3 {
                return Err(Error::data(format!("axis spec '{s}' must be min:max:n")));
            }
            let lo = f[0]
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::data(format!("'{}': {e}", f[0])))?;
            let hi = f[1]
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::data(format!("'{}': {e}", f[1])))?;
            let n = f[2]
                .trim()
                .parse::<usize>()
                .map_err(|e| Error::data(format!("'{}': {e}", f[2])))?;
            Ok((lo, hi, n))
        };
        Self::uniform(axis(parts[0])?, axis(parts[1])?)
    }

    pub fn nr(&self) -> usize {
        self.r_axis.len()
    }

    pub fn nz(&self) -> usize {
        self.z_axis.len()
    }

    pub fn len(&self) -> usize {
        self.nr() * self.nz()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.nz() + j
    }

    /// All `(r, z)` nodes in storage order.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.r_axis
            .iter()
            .flat_map(move |&r| self.z_axis.iter().map(move |&z| (r, z)))
    }

    pub fn sample(&self, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        self.points().map(|(r, z)| f(r, z)).collect()
    }
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 || hi <= lo || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::data(format!("bad axis {lo}:{hi}:{n}")));
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n)
        .map(|k| if k == n - 1 { hi } else { lo + k as f64 * step })
        .collect())
}

/// Axisymmetric scalar on a rectilinear grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MeridianScalarField {
    pub grid: Grid,
    pub values: Vec<f64>,
    pub quantity: Quantity,
    pub provenance: String,
}

impl MeridianScalarField {
    pub fn new(grid: Grid, values: Vec<f64>, quantity: Quantity) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::data(format!(
                "{} values for a {}x{} grid",
                values.len(),
                grid.nr(),
                grid.nz()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::data("field values must be finite"));
        }
        if grid.r_axis[0] == 0.0
            && quantity.vanishes_on_axis()
            && values[..grid.nz()].iter().any(|&v| v != 0.0)
        {
            return Err(Error::data(format!(
                "{quantity} must vanish on the axis r = 0"
            )));
        }
        Ok(Self {
            grid,
            values,
            quantity,
            provenance: String::new(),
        })
    }

    pub fn from_fn(grid: Grid, quantity: Quantity, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let values = grid.sample(f);
        Self::new(grid, values, quantity)
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// `(u_r, u_z)` on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MeridianVelocityField {
    pub grid: Grid,
    pub u_r: Vec<f64>,
    pub u_z: Vec<f64>,
    pub provenance: String,
}

impl MeridianVelocityField {
    pub fn new(
        grid: Grid,
        u_r: Vec<f64>,
        u_z: Vec<f64>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if u_r.len() != grid.len() || u_z.len() != grid.len() {
            return Err(Error::data("velocity components do not match the grid"));
        }
        if u_r.iter().chain(&u_z).any(|v| !v.is_finite()) {
            return Err(Error::data("velocity values must be finite"));
        }
        if grid.r_axis[0] == 0.0 && u_r[..grid.nz()].iter().any(|&v| v != 0.0) {
            return Err(Error::data("u_r must vanish on the axis r = 0"));
        }
        Ok(Self {
            grid,
            u_r,
            u_z,
            provenance: provenance.into(),
        })
    }

    pub fn magnitude(&self, k: usize) -> f64 {
        self.u_r[k].hypot(self.u_z[k])
    }
}
