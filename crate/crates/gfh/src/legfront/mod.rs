//! Combinatorial route to generating family homology for one-dimensional
//! Legendrians: plat fronts, classical invariants, the Chekanov-Eliashberg
//! algebra over Z/2, augmentations, and linearized homology with its
//! degree-one regrading.

mod aug;
mod dga;
mod front;
pub mod fronts;

pub use aug::{augmentations, gfh_from_lch, lch, Augmentation};
pub use dga::{chekanov_dga, chekanov_dga_unverified, chekanov_dga_with_budget, Dga, GenKind, Generator, Words};
pub use front::{Event, EventKind, FrontAnalysis, FrontDiagram};

use crate::error::Result;
use crate::homlin::GradedRanks;
use serde::Serialize;

/// Full combinatorial report for a front: classical invariants, the algebra,
/// and the per-augmentation homologies.
#[derive(Debug, Clone, Serialize)]
pub struct FrontReport {
    pub tb: i64,
    pub rot: i64,
    pub generators: Vec<Generator>,
    pub augmentations: Vec<AugmentationReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AugmentationReport {
    /// Values on the degree-zero generators, by generator name.
    pub assignment: Vec<(String, bool)>,
    pub lch: GradedRanks,
    pub gfh: GradedRanks,
}

/// Run the whole pipeline on one front diagram.
pub fn front_report(front: &FrontDiagram) -> Result<FrontReport> {
    let (tb, rot) = front.classical_invariants()?;
    let dga = chekanov_dga(front)?;
    let augs = augmentations(&dga)?;
    let mut reports = Vec::with_capacity(augs.len());
    for aug in &augs {
        let l = lch(&dga, aug)?;
        let g = gfh_from_lch(&l);
        let assignment = dga
            .degree_zero_generators()
            .into_iter()
            .map(|gi| (dga.generators[gi].name.clone(), aug.values[gi]))
            .collect();
        reports.push(AugmentationReport { assignment, lch: l, gfh: g });
    }
    Ok(FrontReport { tb, rot, generators: dga.generators.clone(), augmentations: reports })
}
