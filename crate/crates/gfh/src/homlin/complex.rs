//! Chain complexes over Z and Z/2 and their (relative) homology.

use super::matrix::SparseMatrix;
use super::ranks::{DegreeRanks, GradedRanks};
use super::snf::{prime_power_parts, smith_normal_form};
use crate::error::{GfhError, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Coefficient ring for homology computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Z,
    Z2,
}

impl std::fmt::Display for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ring::Z => write!(f, "z"),
            Ring::Z2 => write!(f, "z2"),
        }
    }
}

impl std::str::FromStr for Ring {
    type Err = GfhError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z" | "Z" => Ok(Ring::Z),
            "z2" | "Z2" | "z/2" => Ok(Ring::Z2),
            other => Err(GfhError::InvalidInput(format!("unknown ring {other:?}"))),
        }
    }
}

/// A bounded chain complex: module dimensions per degree and boundary maps
/// `d_k: C_k -> C_{k-1}`. Degrees outside `[k_lo, k_hi]` are zero.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    k_lo: i64,
    k_hi: i64,
    dims: BTreeMap<i64, usize>,
    boundaries: BTreeMap<i64, SparseMatrix>,
}

impl ChainComplex {
    /// Build from per-degree dimensions and boundary maps.
    ///
    /// Every supplied boundary must have shape `dims[k-1] x dims[k]`.
    pub fn new(dims: BTreeMap<i64, usize>, boundaries: BTreeMap<i64, SparseMatrix>) -> Result<Self> {
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|&(_, n)| n > 0).collect();
        let (k_lo, k_hi) = match (dims.keys().next(), dims.keys().next_back()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => (0, 0),
        };
        for (&k, m) in &boundaries {
            let rows = dims.get(&(k - 1)).copied().unwrap_or(0);
            let cols = dims.get(&k).copied().unwrap_or(0);
            if m.rows() != rows || m.cols() != cols {
                return Err(GfhError::InvalidInput(format!(
                    "boundary d_{k} has shape {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(ChainComplex { k_lo, k_hi, dims, boundaries })
    }

    pub fn degree_range(&self) -> (i64, i64) {
        (self.k_lo, self.k_hi)
    }

    pub fn dim(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn boundary(&self, k: i64) -> SparseMatrix {
        self.boundaries
            .get(&k)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(self.dim(k - 1), self.dim(k)))
    }

    /// Verify `d_k . d_{k+1} = 0` in every degree, over the given ring.
    pub fn verify_dd_zero(&self, ring: Ring) -> Result<()> {
        for k in self.k_lo..=self.k_hi {
            let a = self.boundary(k);
            let b = self.boundary(k + 1);
            if a.cols() == 0 || b.cols() == 0 {
                continue;
            }
            let p = a.multiply(&b)?;
            let vanishes = match ring {
                Ring::Z => p.is_zero(),
                Ring::Z2 => p.entries().iter().all(|&(_, _, v)| v.rem_euclid(2) == 0),
            };
            if !vanishes {
                return Err(GfhError::InvalidInput(format!(
                    "not a chain complex over {ring}: d_{k} . d_{} is nonzero",
                    k + 1
                )));
            }
        }
        Ok(())
    }

    /// Homology over the requested ring.
    ///
    /// Over Z the free rank and the prime-power torsion multiset are reported;
    /// over Z/2 the rank is the F2 dimension and torsion is empty.
    pub fn homology(&self, ring: Ring) -> Result<GradedRanks> {
        self.verify_dd_zero(ring)?;
        Ok(self.homology_unchecked(ring))
    }

    /// Homology without the `dd = 0` audit; callers that construct complexes
    /// from verified builders use this to skip the (possibly large) product.
    pub fn homology_unchecked(&self, ring: Ring) -> GradedRanks {
        let mut out = GradedRanks::new();
        match ring {
            Ring::Z2 => {
                let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
                for k in self.k_lo..=(self.k_hi + 1) {
                    ranks.insert(k, self.boundary(k).rank_gf2());
                }
                for k in self.k_lo..=self.k_hi {
                    let n = self.dim(k);
                    let h = n - ranks[&k] - ranks[&(k + 1)];
                    out.insert(k, DegreeRanks::free(h));
                }
            }
            Ring::Z => {
                let mut snfs = BTreeMap::new();
                for k in self.k_lo..=(self.k_hi + 1) {
                    snfs.insert(k, smith_normal_form(&self.boundary(k)));
                }
                for k in self.k_lo..=self.k_hi {
                    let n = self.dim(k);
                    let free = n - snfs[&k].rank - snfs[&(k + 1)].rank;
                    let mut torsion: Vec<u64> = Vec::new();
                    for d in snfs[&(k + 1)].torsion_factors() {
                        torsion.extend(prime_power_parts(&d));
                    }
                    torsion.sort_unstable();
                    out.insert(k, DegreeRanks { free, torsion });
                }
            }
        }
        out
    }

    /// Quotient by a subcomplex, given per-degree sorted cell indices.
    ///
    /// The selector must be closed under the boundary maps; anything else is
    /// rejected.
    pub fn quotient(&self, sub: &SubcomplexSelector) -> Result<ChainComplex> {
        // Validate indices and closure.
        for (&k, cells) in &sub.cells {
            let n = self.dim(k);
            if cells.iter().any(|&c| c >= n) {
                return Err(GfhError::InvalidInput(format!(
                    "subcomplex selector references cell out of range in degree {k}"
                )));
            }
        }
        for k in self.k_lo..=self.k_hi {
            let in_sub = sub.membership(k, self.dim(k));
            let in_sub_below = sub.membership(k - 1, self.dim(k - 1));
            let b = self.boundary(k);
            for &(r, c, _) in b.entries() {
                if in_sub[c] && !in_sub_below[r] {
                    return Err(GfhError::InvalidInput(format!(
                        "subcomplex not closed under boundary: degree {k} cell {c} has a face outside"
                    )));
                }
            }
        }

        let mut dims = BTreeMap::new();
        let mut index_maps: BTreeMap<i64, Vec<Option<usize>>> = BTreeMap::new();
        for k in self.k_lo..=self.k_hi {
            let in_sub = sub.membership(k, self.dim(k));
            let mut map = vec![None; self.dim(k)];
            let mut next = 0usize;
            for (i, slot) in map.iter_mut().enumerate() {
                if !in_sub[i] {
                    *slot = Some(next);
                    next += 1;
                }
            }
            dims.insert(k, next);
            index_maps.insert(k, map);
        }
        let mut boundaries = BTreeMap::new();
        for k in self.k_lo..=self.k_hi {
            let b = self.boundary(k);
            let rows = dims.get(&(k - 1)).copied().unwrap_or(0);
            let cols = dims[&k];
            let default_map = Vec::new();
            let row_map = index_maps.get(&(k - 1)).unwrap_or(&default_map);
            let col_map = &index_maps[&k];
            let entries = b
                .entries()
                .iter()
                .filter_map(|&(r, c, v)| match (row_map.get(r).copied().flatten(), col_map[c]) {
                    (Some(nr), Some(nc)) => Some((nr, nc, v)),
                    _ => None,
                })
                .collect();
            boundaries.insert(k, SparseMatrix::new(rows, cols, entries)?);
        }
        ChainComplex::new(dims, boundaries)
    }
}

/// Per-degree cell indices singling out a subcomplex.
#[derive(Debug, Clone, Default)]
pub struct SubcomplexSelector {
    cells: BTreeMap<i64, Vec<usize>>,
}

impl SubcomplexSelector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, degree: i64, mut cells: Vec<usize>) {
        cells.sort_unstable();
        cells.dedup();
        self.cells.insert(degree, cells);
    }

    fn membership(&self, degree: i64, dim: usize) -> Vec<bool> {
        let mut v = vec![false; dim];
        if let Some(cells) = self.cells.get(&degree) {
            for &c in cells {
                if c < dim {
                    v[c] = true;
                }
            }
        }
        v
    }
}

/// Homology of a chain complex, rejecting anything that is not one.
pub fn homology(c: &ChainComplex, ring: Ring) -> Result<GradedRanks> {
    c.homology(ring)
}

/// Relative homology `H(total / sub)`.
pub fn relative_homology(
    total: &ChainComplex,
    sub: &SubcomplexSelector,
    ring: Ring,
) -> Result<GradedRanks> {
    total.verify_dd_zero(ring)?;
    total.quotient(sub)?.homology(ring)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Cellular complex of the 2-sphere: one 0-cell, one 2-cell.
    fn sphere_cw() -> ChainComplex {
        let mut dims = BTreeMap::new();
        dims.insert(0, 1);
        dims.insert(2, 1);
        ChainComplex::new(dims, BTreeMap::new()).unwrap()
    }

    /// Standard CW torus: 1 vertex, 2 edges, 1 face, all boundaries zero.
    fn torus_cw() -> ChainComplex {
        let mut dims = BTreeMap::new();
        dims.insert(0, 1);
        dims.insert(1, 2);
        dims.insert(2, 1);
        let mut boundaries = BTreeMap::new();
        boundaries.insert(1, SparseMatrix::zero(1, 2));
        boundaries.insert(2, SparseMatrix::zero(2, 1));
        ChainComplex::new(dims, boundaries).unwrap()
    }

    /// CW disk: vertex, edge (loop at the vertex), 2-cell attached along the loop.
    fn disk_circle_pair() -> (ChainComplex, SubcomplexSelector) {
        let mut dims = BTreeMap::new();
        dims.insert(0, 1);
        dims.insert(1, 1);
        dims.insert(2, 1);
        let mut boundaries = BTreeMap::new();
        boundaries.insert(1, SparseMatrix::zero(1, 1));
        boundaries.insert(2, SparseMatrix::zero(1, 1));
        let total = ChainComplex::new(dims, boundaries).unwrap();
        let mut sub = SubcomplexSelector::new();
        sub.insert(0, vec![0]);
        sub.insert(1, vec![0]);
        (total, sub)
    }

    #[test]
    fn sphere_homology() {
        let h = sphere_cw().homology(Ring::Z).unwrap();
        assert_eq!(h, GradedRanks::from_free(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn torus_homology_both_rings() {
        let t = torus_cw();
        assert_eq!(t.homology(Ring::Z).unwrap(), GradedRanks::from_free(&[(0, 1), (1, 2), (2, 1)]));
        assert_eq!(t.homology(Ring::Z2).unwrap(), GradedRanks::from_free(&[(0, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn disk_mod_circle() {
        let (total, sub) = disk_circle_pair();
        let h = relative_homology(&total, &sub, Ring::Z).unwrap();
        assert_eq!(h, GradedRanks::from_free(&[(2, 1)]));
    }

    #[test]
    fn x_mod_x_vanishes() {
        let (total, _) = disk_circle_pair();
        let mut sub = SubcomplexSelector::new();
        sub.insert(0, vec![0]);
        sub.insert(1, vec![0]);
        sub.insert(2, vec![0]);
        let h = relative_homology(&total, &sub, Ring::Z).unwrap();
        assert!(h.is_zero());
    }

    #[test]
    fn relative_with_empty_sub_is_absolute() {
        let t = torus_cw();
        let rel = relative_homology(&t, &SubcomplexSelector::empty(), Ring::Z).unwrap();
        assert_eq!(rel, t.homology(Ring::Z).unwrap());
    }

    #[test]
    fn non_closed_sub_rejected() {
        // Interval: two vertices, one edge; sub containing the edge but only
        // one endpoint is not closed.
        let mut dims = BTreeMap::new();
        dims.insert(0, 2);
        dims.insert(1, 1);
        let mut boundaries = BTreeMap::new();
        boundaries.insert(1, SparseMatrix::new(2, 1, vec![(0, 0, -1), (1, 0, 1)]).unwrap());
        let c = ChainComplex::new(dims, boundaries).unwrap();
        let mut sub = SubcomplexSelector::new();
        sub.insert(0, vec![0]);
        sub.insert(1, vec![0]);
        assert!(c.quotient(&sub).is_err());
    }

    #[test]
    fn dd_nonzero_rejected() {
        let mut dims = BTreeMap::new();
        dims.insert(0, 1);
        dims.insert(1, 1);
        dims.insert(2, 1);
        let mut boundaries = BTreeMap::new();
        boundaries.insert(1, SparseMatrix::new(1, 1, vec![(0, 0, 1)]).unwrap());
        boundaries.insert(2, SparseMatrix::new(1, 1, vec![(0, 0, 1)]).unwrap());
        let c = ChainComplex::new(dims, boundaries).unwrap();
        assert!(c.homology(Ring::Z).is_err());
    }
}
