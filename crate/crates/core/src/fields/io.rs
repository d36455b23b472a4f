//! CSV grid files.
//!
//! ```text
//! # quantity: omega_theta
//! # r_axis: 0,0.5,1
//! # z_axis: -1,0,1
//! # provenance: free text
//! r,z,value
//! 0,-1,0.0000000000000000e0
//! ...
//! ```
//!
//! Velocity files use `# quantity: velocity` and the header `r,z,u_r,u_z`.
//! Rows are r-major. Values carry 17 significant digits, so a write/read
//! cycle is exact. Without axis comments the axes are inferred from the rows.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::grid::{Grid, MeridianScalarField, MeridianVelocityField, Quantity};
use crate::error::{Error, Result};

const SCALAR_HEADER: &str = "r,z,value";
const VELOCITY_HEADER: &str = "r,z,u_r,u_z";
const VELOCITY_TAG: &str = "velocity";

fn join_axis(axis: &[f64]) -> String {
    axis.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn write_preamble(w: &mut impl Write, quantity: &str, grid: &Grid, provenance: &str) -> Result<()> {
    writeln!(w, "# quantity: {quantity}")?;
    writeln!(w, "# r_axis: {}", join_axis(&grid.r_axis))?;
    writeln!(w, "# z_axis: {}", join_axis(&grid.z_axis))?;
    writeln!(w, "# provenance: {}", provenance.replace('\n', " "))?;
    Ok(())
}

pub fn write_scalar(field: &MeridianScalarField, mut w: impl Write) -> Result<()> {
    write_preamble(
        &mut w,
        &field.quantity.to_string(),
        &field.grid,
        &field.provenance,
    )?;
    writeln!(w, "{SCALAR_HEADER}")?;
    for ((r, z), v) in field.grid.points().zip(&field.values) {
        writeln!(w, "{r},{z},{v:.16e}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_velocity(field: &MeridianVelocityField, mut w: impl Write) -> Result<()> {
    write_preamble(&mut w, VELOCITY_TAG, &field.grid, &field.provenance)?;
    writeln!(w, "{VELOCITY_HEADER}")?;
    for (k, (r, z)) in field.grid.points().enumerate() {
        writeln!(w, "{r},{z},{:.16e},{:.16e}", field.u_r[k], field.u_z[k])?;
    }
    w.flush()?;
    Ok(())
}

struct Table {
    quantity: Option<String>,
    r_axis: Option<Vec<f64>>,
    z_axis: Option<Vec<f64>>,
    provenance: String,
    rows: Vec<Vec<f64>>,
}

fn parse_number(text: &str, line: usize) -> Result<f64> {
    text.trim().parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("'{}' is not a number", text.trim()),
    })
}

fn parse_axis(text: &str, line: usize) -> Result<Vec<f64>> {
    text.split(',').map(|s| parse_number(s, line)).collect()
}

fn read_table(r: impl Read, header: &str) -> Result<Table> {
    let mut table = Table {
        quantity: None,
        r_axis: None,
        z_axis: None,
        provenance: String::new(),
        rows: Vec::new(),
    };
    let columns = header.split(',').count();
    let mut seen_header = false;
    for (idx, line) in BufReader::new(r).lines().enumerate() {
        let line = line?;
        let n = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if seen_header {
                continue;
            }
            let Some((key, value)) = comment.split_once(':') else {
                continue;
            };
            match key.trim() {
                "quantity" => table.quantity = Some(value.trim().to_string()),
                "r_axis" => table.r_axis = Some(parse_axis(value, n)?),
                "z_axis" => table.z_axis = Some(parse_axis(value, n)?),
                "provenance" => table.provenance = value.trim().to_string(),
                _ => {}
            }
            continue;
        }
        if !seen_header {
            if trimmed.replace(' ', "") != header {
                return Err(Error::Parse {
                    line: n,
                    message: format!("expected header '{header}', found '{trimmed}'"),
                });
            }
            seen_header = true;
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if fields.len() != columns {
            return Err(Error::Parse {
                line: n,
                message: format!("expected {columns} columns, found {}", fields.len()),
            });
        }
        let row = fields
            .iter()
            .map(|f| parse_number(f, n))
            .collect::<Result<Vec<_>>>()?;
        table.rows.push(row);
    }
    if !seen_header {
        return Err(Error::data(format!("missing header row '{header}'")));
    }
    Ok(table)
}

/// Grid from the axis comments, or inferred from r-major rows.
fn table_grid(table: &Table) -> Result<Grid> {
    let grid = match (&table.r_axis, &table.z_axis) {
        (Some(r), Some(z)) => Grid::new(r.clone(), z.clone())?,
        _ => {
            let first_r = table
                .rows
                .first()
                .map(|row| row[0])
                .ok_or_else(|| Error::data("no data rows"))?;
            let z: Vec<f64> = table
                .rows
                .iter()
                .take_while(|row| row[0] == first_r)
                .map(|row| row[1])
                .collect();
            let r: Vec<f64> = table
                .rows
                .iter()
                .step_by(z.len())
                .map(|row| row[0])
                .collect();
            Grid::new(r, z)?
        }
    };
    if table.rows.len() != grid.len() {
        return Err(Error::data(format!(
            "{} data rows for a {}x{} grid",
            table.rows.len(),
            grid.nr(),
            grid.nz()
        )));
    }
    for (k, ((r, z), row)) in grid.points().zip(&table.rows).enumerate() {
        if row[0] != r || row[1] != z {
            return Err(Error::data(format!(
                "data row {} at ({}, {}) does not match grid point ({r}, {z}); rows must be r-major",
                k + 1,
                row[0],
                row[1]
            )));
        }
    }
    Ok(grid)
}

pub fn read_scalar(r: impl Read) -> Result<MeridianScalarField> {
    let table = read_table(r, SCALAR_HEADER)?;
    let quantity = match &table.quantity {
        Some(q) => q.parse()?,
        None => Quantity::Generic,
    };
    let grid = table_grid(&table)?;
    let values = table.rows.iter().map(|row| row[2]).collect();
    Ok(MeridianScalarField::new(grid, values, quantity)?.with_provenance(table.provenance))
}

pub fn read_velocity(r: impl Read) -> Result<MeridianVelocityField> {
    let table = read_table(r, VELOCITY_HEADER)?;
    if let Some(q) = &table.quantity {
        if q != VELOCITY_TAG {
            return Err(Error::data(format!(
                "expected a velocity file, found quantity '{q}'"
            )));
        }
    }
    let grid = table_grid(&table)?;
    let u_r = table.rows.iter().map(|row| row[2]).collect();
    let u_z = table.rows.iter().map(|row| row[3]).collect();
    MeridianVelocityField::new(grid, u_r, u_z, table.provenance)
}

pub fn read_scalar_file(path: impl AsRef<Path>) -> Result<MeridianScalarField> {
    read_scalar(File::open(path)?)
}

pub fn read_velocity_file(path: impl AsRef<Path>) -> Result<MeridianVelocityField> {
    read_velocity(File::open(path)?)
}

pub fn write_scalar_file(field: &MeridianScalarField, path: impl AsRef<Path>) -> Result<()> {
    write_scalar(field, BufWriter::new(File::create(path)?))
}

pub fn write_velocity_file(field: &MeridianVelocityField, path: impl AsRef<Path>) -> Result<()> {
    write_velocity(field, BufWriter::new(File::create(path)?))
}
