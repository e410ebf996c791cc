//! Sparse integer matrices and exact rank computations.

use crate::error::{GfhError, Result};
use std::collections::BTreeMap;

/// Sparse matrix over the integers, stored as a sorted list of
/// `(row, col, value)` triples with no duplicates and no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize, mut entries: Vec<(usize, usize, i64)>) -> Result<Self> {
        entries.retain(|&(_, _, v)| v != 0);
        entries.sort_unstable_by_key(|&(r, c, _)| (c, r));
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(GfhError::InvalidInput(format!(
                    "duplicate matrix entry at ({}, {})",
                    w[0].0, w[0].1
                )));
            }
        }
        if let Some(&(r, c, _)) = entries.iter().find(|&&(r, c, _)| r >= rows || c >= cols) {
            return Err(GfhError::InvalidInput(format!(
                "entry ({r}, {c}) outside a {rows}x{cols} matrix"
            )));
        }
        Ok(SparseMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(diag: &[i64]) -> Self {
        let entries = diag
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v != 0)
            .map(|(i, &v)| (i, i, v))
            .collect();
        SparseMatrix { rows: diag.len(), cols: diag.len(), entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Columns as sorted `(row, value)` lists.
    pub fn columns(&self) -> Vec<Vec<(usize, i64)>> {
        let mut cols = vec![Vec::new(); self.cols];
        for &(r, c, v) in &self.entries {
            cols[c].push((r, v));
        }
        for col in &mut cols {
            col.sort_unstable_by_key(|&(r, _)| r);
        }
        cols
    }

    /// Exact integer product `self * other`.
    pub fn multiply(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(GfhError::InvalidInput(format!(
                "matrix product shape mismatch: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let left_cols = self.columns();
        let mut acc: BTreeMap<(usize, usize), i128> = BTreeMap::new();
        for &(r, c, v) in &other.entries {
            // other[r][c] multiplies column r of self into product column c
            for &(lr, lv) in &left_cols[r] {
                *acc.entry((lr, c)).or_insert(0) += (lv as i128) * (v as i128);
            }
        }
        let entries = acc
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| {
                i64::try_from(v)
                    .map(|v| (r, c, v))
                    .map_err(|_| GfhError::Internal("matrix product overflow".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        SparseMatrix::new(self.rows, other.cols, entries)
    }

    /// Permute rows and columns; used by basis-reorder tests.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<SparseMatrix> {
        if row_perm.len() != self.rows || col_perm.len() != self.cols {
            return Err(GfhError::InvalidInput("permutation length mismatch".into()));
        }
        let entries = self
            .entries
            .iter()
            .map(|&(r, c, v)| (row_perm[r], col_perm[c], v))
            .collect();
        SparseMatrix::new(self.rows, self.cols, entries)
    }

    /// Rank over the field with two elements.
    pub fn rank_gf2(&self) -> usize {
        let cols: Vec<Vec<u32>> = self
            .columns()
            .into_iter()
            .map(|col| {
                col.into_iter()
                    .filter(|&(_, v)| v.rem_euclid(2) == 1)
                    .map(|(r, _)| r as u32)
                    .collect()
            })
            .collect();
        gf2_rank(cols)
    }
}

/// Rank over GF(2) of a matrix given as columns of sorted row indices.
///
/// Standard pivot-driven column reduction: each surviving column is stored
/// under its lowest row index and folded into later columns that share it.
pub fn gf2_rank(columns: Vec<Vec<u32>>) -> usize {
    let mut pivots: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    let mut rank = 0usize;
    for mut col in columns {
        loop {
            let Some(&low) = col.last() else { break };
            match pivots.get(&low) {
                None => {
                    pivots.insert(low, col);
                    rank += 1;
                    break;
                }
                Some(other) => {
                    col = xor_sorted(&col, other);
                }
            }
        }
    }
    rank
}

/// Symmetric difference of two sorted index lists (addition over GF(2)).
pub fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_entries() {
        assert!(SparseMatrix::new(2, 2, vec![(0, 0, 1), (0, 0, 2)]).is_err());
    }

    #[test]
    fn drops_explicit_zeros() {
        let m = SparseMatrix::new(2, 2, vec![(0, 0, 1), (1, 1, 0)]).unwrap();
        assert_eq!(m.entries().len(), 1);
    }

    #[test]
    fn gf2_rank_of_boundary_pair() {
        // Triangle boundary: three edges on three vertices, rank 2 over GF(2).
        let m = SparseMatrix::new(
            3,
            3,
            vec![(0, 0, -1), (1, 0, 1), (1, 1, -1), (2, 1, 1), (0, 2, -1), (2, 2, 1)],
        )
        .unwrap();
        assert_eq!(m.rank_gf2(), 2);
    }

    #[test]
    fn multiply_shapes() {
        let a = SparseMatrix::diagonal(&[2, 3]);
        let b = SparseMatrix::new(2, 1, vec![(0, 0, 1), (1, 0, 1)]).unwrap();
        let p = a.multiply(&b).unwrap();
        assert_eq!(p.entries(), &[(0, 0, 2), (1, 0, 3)]);
    }
}
