//! Explicit sublevel complexes for small grids.
//!
//! A cell enters the complex at threshold `t` when all of its vertices have
//! value at most `t`, so complexes nest as the threshold grows. This builder
//! materializes matrices and is meant for fixtures and cross-checks; the big
//! grids go through the implicit pair engine instead.

use super::khalimsky::CellGrid;
use super::{SampledField, MAX_DIM};
use crate::error::Result;
use crate::homlin::{ChainComplex, SparseMatrix, SubcomplexSelector};
use std::collections::BTreeMap;

/// A cubical sublevel complex with its cell inventory.
#[derive(Debug, Clone)]
pub struct CubicalComplex {
    threshold: f64,
    /// Per degree: sorted cell positions and their lower-star values.
    cells: Vec<Vec<(u64, f64)>>,
    complex: ChainComplex,
}

impl CubicalComplex {
    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn cell_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn cells_of_degree(&self, k: usize) -> &[(u64, f64)] {
        &self.cells[k]
    }

    /// Selector for the subcomplex of cells with value at most `a`.
    ///
    /// Lower-star values make this automatically closed under the boundary.
    pub fn sublevel_selector(&self, a: f64) -> SubcomplexSelector {
        let mut sel = SubcomplexSelector::new();
        for (k, cells) in self.cells.iter().enumerate() {
            let idx: Vec<usize> = cells
                .iter()
                .enumerate()
                .filter(|(_, &(_, v))| v <= a)
                .map(|(i, _)| i)
                .collect();
            sel.insert(k as i64, idx);
        }
        sel
    }
}

/// Build the full cubical complex on all cells whose vertices all satisfy
/// `value <= t`.
pub fn build_sublevel_complex(field: &SampledField, t: f64, budget: u64) -> Result<CubicalComplex> {
    let grid = field.grid();
    grid.check_budget(budget)?;
    let cg = CellGrid::new(grid);
    let dim = grid.dim();

    let mut cells: Vec<Vec<(u64, f64)>> = vec![Vec::new(); dim + 1];
    let mut coords = [0u64; MAX_DIM];
    for pos in 0..cg.len() {
        cg.decode(pos, &mut coords);
        let v = cg.cell_max(&coords, field);
        if v <= t {
            cells[cg.degree(&coords) as usize].push((pos, v));
        }
    }

    let mut dims = BTreeMap::new();
    for (k, list) in cells.iter().enumerate() {
        dims.insert(k as i64, list.len());
    }
    let mut boundaries = BTreeMap::new();
    let mut signed = Vec::with_capacity(2 * MAX_DIM);
    for k in 1..=dim {
        let rows = cells[k - 1].len();
        let cols = cells[k].len();
        let mut entries = Vec::new();
        for (j, &(pos, _)) in cells[k].iter().enumerate() {
            cg.decode(pos, &mut coords);
            cg.signed_boundary(pos, &coords, &mut signed);
            for &(face, coeff) in &signed {
                // Faces of an included cell are always included (their
                // lower-star value can only be smaller).
                let i = cells[k - 1]
                    .binary_search_by(|&(p, _)| p.cmp(&face))
                    .expect("face of included cell must be included");
                entries.push((i, j, coeff));
            }
        }
        boundaries.insert(k as i64, SparseMatrix::new(rows, cols, entries)?);
    }
    let complex = ChainComplex::new(dims, boundaries)?;
    Ok(CubicalComplex { threshold: t, cells, complex })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubegrid::{AxisSpec, GridSpec};
    use crate::homlin::{GradedRanks, Ring};

    #[test]
    fn constant_field_full_box_is_contractible() {
        let grid = GridSpec::cube(2, 0.0, 1.0, 5).unwrap();
        let field = SampledField::from_fn(grid, |_| 0.0).unwrap();
        let cx = build_sublevel_complex(&field, 1.0, 10_000).unwrap();
        assert_eq!(cx.cell_count(), 81); // 9*9 cell coordinates
        let h = cx.complex().homology(Ring::Z).unwrap();
        assert_eq!(h, GradedRanks::from_free(&[(0, 1)]));
    }

    #[test]
    fn constant_field_below_threshold_is_empty() {
        let grid = GridSpec::cube(2, 0.0, 1.0, 5).unwrap();
        let field = SampledField::from_fn(grid, |_| 0.0).unwrap();
        let cx = build_sublevel_complex(&field, -1.0, 10_000).unwrap();
        assert_eq!(cx.cell_count(), 0);
        assert!(cx.complex().homology(Ring::Z).unwrap().is_zero());
    }

    #[test]
    fn paraboloid_sublevel_is_a_disk() {
        let grid = GridSpec::cube(2, -1.0, 1.0, 21).unwrap();
        let field = SampledField::from_fn(grid, |x| x[0] * x[0] + x[1] * x[1]).unwrap();
        let cx = build_sublevel_complex(&field, 0.5, 100_000).unwrap();
        let h = cx.complex().homology(Ring::Z).unwrap();
        assert_eq!(h, GradedRanks::from_free(&[(0, 1)]));
    }

    #[test]
    fn sublevel_complexes_nest() {
        let grid = GridSpec::cube(2, -1.0, 1.0, 9).unwrap();
        let field = SampledField::from_fn(grid, |x| x[0] * x[0] - x[1]).unwrap();
        let lo = build_sublevel_complex(&field, 0.2, 100_000).unwrap();
        let hi = build_sublevel_complex(&field, 0.7, 100_000).unwrap();
        for k in 0..3 {
            let a: Vec<u64> = lo.cells_of_degree(k).iter().map(|&(p, _)| p).collect();
            let b: Vec<u64> = hi.cells_of_degree(k).iter().map(|&(p, _)| p).collect();
            assert!(a.iter().all(|p| b.binary_search(p).is_ok()));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let grid = GridSpec::cube(2, 0.0, 1.0, 100).unwrap();
        let field = SampledField::from_fn(grid, |_| 0.0).unwrap();
        assert!(build_sublevel_complex(&field, 1.0, 100).is_err());
    }
}
