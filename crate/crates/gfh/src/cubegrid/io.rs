//! Field snapshot export: flat binary for any size, JSON for small grids.
//!
//! Binary layout, all little-endian: `u64` dimension; per axis `u64` sample
//! count, `f64` min, `f64` max; then row-major `f64` vertex values.

use super::{AxisSpec, GridSpec, SampledField};
use crate::error::{GfhError, Result};
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

pub fn write_field_binary<W: Write>(field: &SampledField, mut w: W) -> Result<()> {
    let grid = field.grid();
    w.write_all(&(grid.dim() as u64).to_le_bytes())?;
    for a in grid.axes() {
        w.write_all(&(a.samples as u64).to_le_bytes())?;
        w.write_all(&a.min.to_le_bytes())?;
        w.write_all(&a.max.to_le_bytes())?;
    }
    for v in field.values() {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_field_binary<R: Read>(mut r: R) -> Result<SampledField> {
    let mut u = [0u8; 8];
    r.read_exact(&mut u)?;
    let dim = u64::from_le_bytes(u) as usize;
    if dim == 0 || dim > super::MAX_DIM {
        return Err(GfhError::InvalidInput(format!("bad field dimension {dim}")));
    }
    let mut axes = Vec::with_capacity(dim);
    for _ in 0..dim {
        r.read_exact(&mut u)?;
        let samples = u64::from_le_bytes(u) as usize;
        r.read_exact(&mut u)?;
        let min = f64::from_le_bytes(u);
        r.read_exact(&mut u)?;
        let max = f64::from_le_bytes(u);
        axes.push(AxisSpec::new(min, max, samples));
    }
    let grid = GridSpec::new(axes)?;
    let n = usize::try_from(grid.vertex_count())
        .map_err(|_| GfhError::InvalidInput("field too large".into()))?;
    let mut values = Vec::with_capacity(n);
    for _ in 0..n {
        r.read_exact(&mut u)?;
        values.push(f64::from_le_bytes(u));
    }
    SampledField::new(grid, values)
}

#[derive(Serialize, Deserialize)]
struct FieldJson {
    grid: GridSpec,
    values: Vec<f64>,
}

pub fn write_field_json<W: Write>(field: &SampledField, w: W) -> Result<()> {
    let doc = FieldJson { grid: field.grid().clone(), values: field.values().to_vec() };
    serde_json::to_writer(w, &doc)?;
    Ok(())
}

pub fn read_field_json<R: Read>(r: R) -> Result<SampledField> {
    let doc: FieldJson = serde_json::from_reader(r)?;
    SampledField::new(doc.grid, doc.values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_round_trip() {
        let grid = GridSpec::new(vec![AxisSpec::new(-1.0, 1.0, 3), AxisSpec::new(0.0, 2.0, 4)])
            .unwrap();
        let field = SampledField::from_fn(grid, |x| x[0] * 10.0 + x[1]).unwrap();
        let mut buf = Vec::new();
        write_field_binary(&field, &mut buf).unwrap();
        assert_eq!(buf.len(), 8 + 2 * 24 + 12 * 8);
        let back = read_field_binary(&buf[..]).unwrap();
        assert_eq!(back.values(), field.values());
        assert_eq!(back.grid(), field.grid());
    }

    #[test]
    fn json_round_trip() {
        let grid = GridSpec::cube(1, 0.0, 1.0, 5).unwrap();
        let field = SampledField::from_fn(grid, |x| x[0]).unwrap();
        let mut buf = Vec::new();
        write_field_json(&field, &mut buf).unwrap();
        let back = read_field_json(&buf[..]).unwrap();
        assert_eq!(back.values(), field.values());
    }
}
