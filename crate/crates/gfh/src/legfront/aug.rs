//! Augmentations and linearized homology of a Chekanov-Eliashberg algebra.

use super::dga::Dga;
use crate::error::{GfhError, Result};
use crate::homlin::{ChainComplex, GradedRanks, Ring, SparseMatrix};
use serde::Serialize;
use std::collections::BTreeMap;

/// An algebra map to Z/2 killing the differential, supported on degree 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Augmentation {
    /// One bit per generator; nonzero only on degree-0 generators.
    pub values: Vec<bool>,
}

impl Augmentation {
    fn word_value(&self, word: &[usize]) -> bool {
        word.iter().all(|&l| self.values[l])
    }
}

/// Exhaustively enumerate the augmentations of `dga`, ordered by assignment
/// bits over the degree-0 generators.
pub fn augmentations(dga: &Dga) -> Result<Vec<Augmentation>> {
    let deg0 = dga.degree_zero_generators();
    if deg0.len() > 24 {
        return Err(GfhError::InvalidInput(format!(
            "{} degree-0 generators is past the enumeration budget",
            deg0.len()
        )));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << deg0.len()) {
        let mut values = vec![false; dga.generators.len()];
        for (bit, &g) in deg0.iter().enumerate() {
            values[g] = mask >> bit & 1 == 1;
        }
        let candidate = Augmentation { values };
        let kills = dga.differentials.iter().all(|words| {
            words.iter().filter(|w| candidate.word_value(w)).count() % 2 == 0
        });
        if kills {
            out.push(candidate);
        }
    }
    Ok(out)
}

/// Linearized contact homology over Z/2 for one augmentation.
///
/// The linearized differential takes each word of `d(g)`, substitutes the
/// augmentation into all letters but one, and keeps the surviving letter.
pub fn lch(dga: &Dga, aug: &Augmentation) -> Result<GradedRanks> {
    let n = dga.generators.len();
    if aug.values.len() != n {
        return Err(GfhError::InvalidInput("augmentation arity mismatch".into()));
    }
    // Index generators within their degree.
    let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (g, gen) in dga.generators.iter().enumerate() {
        by_degree.entry(gen.degree).or_default().push(g);
    }
    let index_in_degree: BTreeMap<usize, usize> = by_degree
        .values()
        .flat_map(|gens| gens.iter().enumerate().map(|(i, &g)| (g, i)))
        .collect();

    // Linearized matrix entries, mod 2.
    let mut entries: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for (g, words) in dga.differentials.iter().enumerate() {
        for w in words {
            for pos in 0..w.len() {
                let others = w
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != pos)
                    .all(|(_, &l)| aug.values[l]);
                if others {
                    *entries.entry((g, w[pos])).or_insert(0) += 1;
                }
            }
        }
    }

    let mut dims = BTreeMap::new();
    for (&k, gens) in &by_degree {
        dims.insert(k, gens.len());
    }
    let (k_lo, k_hi) = match (by_degree.keys().next(), by_degree.keys().next_back()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Ok(GradedRanks::new()),
    };
    let mut boundaries = BTreeMap::new();
    for k in k_lo..=k_hi {
        let rows = by_degree.get(&(k - 1)).map_or(0, Vec::len);
        let cols = by_degree.get(&k).map_or(0, Vec::len);
        let mut mat_entries = Vec::new();
        if let Some(gens) = by_degree.get(&k) {
            for &g in gens {
                for (&(src, dst), &count) in entries.range((g, 0)..=(g, usize::MAX)) {
                    debug_assert_eq!(src, g);
                    if count % 2 == 1 {
                        debug_assert_eq!(dga.generators[dst].degree, k - 1);
                        mat_entries.push((index_in_degree[&dst], index_in_degree[&g], 1));
                    }
                }
            }
        }
        boundaries.insert(k, SparseMatrix::new(rows, cols, mat_entries)?);
    }
    let complex = ChainComplex::new(dims, boundaries)?;
    complex.homology(Ring::Z2)
}

/// Regrade linearized homology into generating family homology: one degree up.
pub fn gfh_from_lch(l: &GradedRanks) -> GradedRanks {
    l.shifted(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legfront::dga::chekanov_dga;
    use crate::legfront::fronts;

    #[test]
    fn unknot_has_one_augmentation_and_sphere_gfh() {
        let dga = chekanov_dga(&fronts::unknot()).unwrap();
        let augs = augmentations(&dga).unwrap();
        assert_eq!(augs.len(), 1);
        let l = lch(&dga, &augs[0]).unwrap();
        assert_eq!(l, GradedRanks::from_free(&[(1, 1)]));
        assert_eq!(gfh_from_lch(&l), GradedRanks::from_free(&[(2, 1)]));
    }

    #[test]
    fn trefoil_has_five_augmentations_all_with_the_filling_profile() {
        let dga = chekanov_dga(&fronts::trefoil()).unwrap();
        let augs = augmentations(&dga).unwrap();
        assert_eq!(augs.len(), 5);
        for aug in &augs {
            let l = lch(&dga, aug).unwrap();
            assert_eq!(l, GradedRanks::from_free(&[(0, 2), (1, 1)]));
            assert_eq!(gfh_from_lch(&l), GradedRanks::from_free(&[(1, 2), (2, 1)]));
        }
    }

    #[test]
    fn euler_characteristic_matches_generators() {
        for f in [fronts::unknot(), fronts::unknot_wide(), fronts::trefoil()] {
            let dga = chekanov_dga(&f).unwrap();
            for aug in augmentations(&dga).unwrap() {
                let l = lch(&dga, &aug).unwrap();
                assert_eq!(l.euler_characteristic(), dga.generator_euler_characteristic());
            }
        }
    }

    #[test]
    fn presentation_independence_of_the_unknot() {
        let narrow = chekanov_dga(&fronts::unknot()).unwrap();
        let wide = chekanov_dga(&fronts::unknot_wide()).unwrap();
        let l1: Vec<GradedRanks> = augmentations(&narrow)
            .unwrap()
            .iter()
            .map(|a| lch(&narrow, a).unwrap())
            .collect();
        let l2: Vec<GradedRanks> = augmentations(&wide)
            .unwrap()
            .iter()
            .map(|a| lch(&wide, a).unwrap())
            .collect();
        assert_eq!(l1, l2);
    }

    #[test]
    fn bare_constant_differential_blocks_augmentations() {
        use crate::legfront::dga::{Dga, GenKind, Generator};
        // One degree-0 generator a and one degree-1 generator b with d(b) = 1:
        // no assignment kills the constant.
        let dga = Dga {
            generators: vec![
                Generator { name: "a".into(), degree: 0, kind: GenKind::Crossing, event: 0 },
                Generator { name: "b".into(), degree: 1, kind: GenKind::RightCusp, event: 1 },
            ],
            differentials: vec![vec![], vec![vec![]]],
        };
        assert!(augmentations(&dga).unwrap().is_empty());
    }
}
