//! Implicit coding of all cubical cells of a grid.
//!
//! Per axis, a cell coordinate in `0..2n-1` is even at a vertex slab and odd
//! on the open interval between two vertices; a cell is the product of one
//! slab per axis, and its dimension is the number of odd coordinates. This
//! lets a complex with hundreds of millions of cells live in a flat index
//! space with no per-cell storage.

use super::{GridSpec, SampledField, MAX_DIM};

/// Cell index space of a grid.
#[derive(Debug, Clone)]
pub struct CellGrid {
    dim: usize,
    /// Per-axis cell-coordinate count, `2 * samples - 1`.
    sizes: [u64; MAX_DIM],
    /// Row-major strides over cell coordinates.
    strides: [u64; MAX_DIM],
    /// Row-major strides over vertex indices.
    vstrides: [u64; MAX_DIM],
    total: u64,
}

impl CellGrid {
    pub fn new(grid: &GridSpec) -> Self {
        let dim = grid.dim();
        let mut sizes = [1u64; MAX_DIM];
        let mut vsizes = [1u64; MAX_DIM];
        for (i, a) in grid.axes().iter().enumerate() {
            sizes[i] = 2 * a.samples as u64 - 1;
            vsizes[i] = a.samples as u64;
        }
        let mut strides = [1u64; MAX_DIM];
        let mut vstrides = [1u64; MAX_DIM];
        for i in (0..dim.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * sizes[i + 1];
            vstrides[i] = vstrides[i + 1] * vsizes[i + 1];
        }
        let total = strides[0] * sizes[0];
        CellGrid { dim, sizes, strides, vstrides, total }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Number of cell coordinates along one axis (`2 * samples - 1`).
    #[inline]
    pub fn axis_size(&self, axis: usize) -> u64 {
        self.sizes[axis]
    }

    #[inline]
    pub fn decode(&self, pos: u64, coords: &mut [u64; MAX_DIM]) {
        let mut rest = pos;
        for i in 0..self.dim {
            coords[i] = rest / self.strides[i];
            rest %= self.strides[i];
        }
    }

    #[inline]
    pub fn encode(&self, coords: &[u64; MAX_DIM]) -> u64 {
        let mut pos = 0u64;
        for i in 0..self.dim {
            pos += coords[i] * self.strides[i];
        }
        pos
    }

    /// Cell dimension: number of odd coordinates.
    #[inline]
    pub fn degree(&self, coords: &[u64; MAX_DIM]) -> u32 {
        let mut d = 0;
        for i in 0..self.dim {
            d += (coords[i] & 1) as u32;
        }
        d
    }

    /// Maximum field value over the cell's corner vertices (lower-star value).
    #[inline]
    pub fn cell_max(&self, coords: &[u64; MAX_DIM], field: &SampledField) -> f64 {
        let values = field.values();
        let mut base = 0u64;
        let mut odd_axes = [0usize; MAX_DIM];
        let mut k = 0usize;
        for i in 0..self.dim {
            base += (coords[i] >> 1) * self.vstrides[i];
            if coords[i] & 1 == 1 {
                odd_axes[k] = i;
                k += 1;
            }
        }
        let mut best = f64::NEG_INFINITY;
        for mask in 0..(1u32 << k) {
            let mut v = base;
            for (j, &axis) in odd_axes[..k].iter().enumerate() {
                if mask >> j & 1 == 1 {
                    v += self.vstrides[axis];
                }
            }
            let val = values[v as usize];
            if val > best {
                best = val;
            }
        }
        best
    }

    /// Append the positions of all faces (codimension-one) to `out`.
    #[inline]
    pub fn faces(&self, pos: u64, coords: &[u64; MAX_DIM], out: &mut Vec<u64>) {
        out.clear();
        for i in 0..self.dim {
            if coords[i] & 1 == 1 {
                out.push(pos - self.strides[i]);
                out.push(pos + self.strides[i]);
            }
        }
    }

    /// Append the positions of all cofaces (codimension-minus-one) to `out`.
    #[inline]
    pub fn cofaces(&self, pos: u64, coords: &[u64; MAX_DIM], out: &mut Vec<u64>) {
        out.clear();
        for i in 0..self.dim {
            if coords[i] & 1 == 0 {
                if coords[i] > 0 {
                    out.push(pos - self.strides[i]);
                }
                if coords[i] + 1 < self.sizes[i] {
                    out.push(pos + self.strides[i]);
                }
            }
        }
    }

    /// Signed boundary of a cell: `(face position, coefficient)` pairs.
    ///
    /// The i-th odd axis (in axis order) contributes `(-1)^i (upper - lower)`.
    pub fn signed_boundary(&self, pos: u64, coords: &[u64; MAX_DIM], out: &mut Vec<(u64, i64)>) {
        out.clear();
        let mut sign = 1i64;
        for i in 0..self.dim {
            if coords[i] & 1 == 1 {
                out.push((pos + self.strides[i], sign));
                out.push((pos - self.strides[i], -sign));
                sign = -sign;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubegrid::{AxisSpec, GridSpec};

    fn grid2() -> GridSpec {
        GridSpec::new(vec![AxisSpec::new(0.0, 1.0, 3), AxisSpec::new(0.0, 1.0, 2)]).unwrap()
    }

    #[test]
    fn counts() {
        let g = grid2();
        let cg = CellGrid::new(&g);
        // 3x2 vertices: cells (2*3-1)*(2*2-1) = 15.
        assert_eq!(cg.len(), 15);
        assert_eq!(g.cell_count(), 15);
    }

    #[test]
    fn degree_and_faces() {
        let g = grid2();
        let cg = CellGrid::new(&g);
        let mut coords = [0u64; MAX_DIM];
        let mut degrees = [0usize; 3];
        let mut buf = Vec::new();
        for pos in 0..cg.len() {
            cg.decode(pos, &mut coords);
            let d = cg.degree(&coords) as usize;
            degrees[d] += 1;
            cg.faces(pos, &coords, &mut buf);
            assert_eq!(buf.len(), 2 * d);
        }
        // 6 vertices, 7 edges, 2 squares.
        assert_eq!(degrees, [6, 7, 2]);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let g = grid2();
        let cg = CellGrid::new(&g);
        let mut coords = [0u64; MAX_DIM];
        let mut bnd = Vec::new();
        let mut bnd2 = Vec::new();
        for pos in 0..cg.len() {
            cg.decode(pos, &mut coords);
            if cg.degree(&coords) != 2 {
                continue;
            }
            cg.signed_boundary(pos, &coords, &mut bnd);
            let mut acc: std::collections::BTreeMap<u64, i64> = std::collections::BTreeMap::new();
            let mut c2 = [0u64; MAX_DIM];
            for &(face, s) in &bnd {
                cg.decode(face, &mut c2);
                cg.signed_boundary(face, &c2, &mut bnd2);
                for &(vtx, s2) in &bnd2 {
                    *acc.entry(vtx).or_insert(0) += s * s2;
                }
            }
            assert!(acc.values().all(|&v| v == 0));
        }
    }
}
