//! Generating-family descriptors and their difference-function homology.
//!
//! The pipeline: a [`GFDescriptor`] builds a difference field on a grid, the
//! positive critical values fix a threshold window, and the homology of the
//! sublevel pair, re-graded down by the fiber dimension, is the generating
//! family homology. Shearing and fillings extend the same machinery over a
//! positive cone coordinate.

mod descriptor;
mod filling;
mod shear;
mod window;

pub use descriptor::{smoothstep, Bump, GFDescriptor, Monomial, StabSign};
pub use filling::{
    seidel_decomposition, FillingDescriptorNumeric, SeidelOutcome, SeidelPlan, ShearedField,
};
pub use shear::{verify_lambda_lemmas, LambdaCheck, LambdaReport, ShearSpec};
pub use window::{choose_window, Window};

use crate::cubegrid::{
    detect_critical_values, relative_pair_homology, AxisSpec, CriticalValues, CubicalPair,
    GridSpec, SampledField, DEFAULT_CELL_BUDGET,
};
use crate::error::{GfhError, Result};
use crate::homlin::{GradedRanks, Ring};
use rayon::prelude::*;
use serde::Serialize;

/// Difference-function builder for a descriptor: samples
/// `delta(q, eta, eta~) = f(q, eta~) - f(q, eta)` on any grid.
pub struct DifferenceField<'a> {
    descriptor: &'a GFDescriptor,
}

impl GFDescriptor {
    pub fn difference(&self) -> DifferenceField<'_> {
        DifferenceField { descriptor: self }
    }
}

impl<'a> DifferenceField<'a> {
    /// Pointwise value; mostly for tests and spot checks.
    pub fn value(&self, base: &[f64], eta: &[f64], eta_tilde: &[f64]) -> f64 {
        let g = self.descriptor;
        let mut p = Vec::with_capacity(base.len() + eta.len());
        p.extend_from_slice(base);
        p.extend_from_slice(eta_tilde);
        let plus = g.eval(&p);
        p.truncate(base.len());
        p.extend_from_slice(eta);
        plus - g.eval(&p)
    }

    /// Sample the difference field on `base_axes x fiber_axes x fiber_axes`.
    ///
    /// Both fiber blocks share one set of axes, which makes the swap
    /// antisymmetry exact on samples.
    pub fn sample(&self, base_axes: &[AxisSpec], fiber_axes: &[AxisSpec]) -> Result<SampledField> {
        let g = self.descriptor;
        if base_axes.len() != g.base_dim() {
            return Err(GfhError::InvalidInput(format!(
                "{} base axes supplied for base dimension {}",
                base_axes.len(),
                g.base_dim()
            )));
        }
        if fiber_axes.len() != g.fiber_dim() {
            return Err(GfhError::InvalidInput(format!(
                "{} fiber axes supplied for fiber dimension {}",
                fiber_axes.len(),
                g.fiber_dim()
            )));
        }
        let mut axes: Vec<AxisSpec> = base_axes.to_vec();
        axes.extend_from_slice(fiber_axes);
        axes.extend_from_slice(fiber_axes);
        let grid = GridSpec::new(axes)?;

        // Tabulate f over base x fiber once; delta is a table difference.
        let fgrid =
            GridSpec::new(base_axes.iter().chain(fiber_axes.iter()).cloned().collect::<Vec<_>>())?;
        let fcount = usize::try_from(fgrid.vertex_count())
            .map_err(|_| GfhError::InvalidInput("fiber grid too large".into()))?;
        let ftab: Vec<f64> =
            (0..fcount).into_par_iter().map(|i| g.eval(&fgrid.vertex_coords(i))).collect();

        let fc: usize = fiber_axes.iter().map(|a| a.samples).product();
        let total = usize::try_from(grid.vertex_count())
            .map_err(|_| GfhError::InvalidInput("difference grid too large".into()))?;
        let values: Vec<f64> = (0..total)
            .into_par_iter()
            .map(|flat| {
                let j = flat % fc;
                let rest = flat / fc;
                let i = rest % fc;
                let q = rest / fc;
                ftab[q * fc + j] - ftab[q * fc + i]
            })
            .collect();
        SampledField::new(grid, values)
    }
}

/// Sampling plan for the numeric pipeline.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridPlan {
    /// Samples per base axis (when the base has positive dimension).
    pub base_samples: usize,
    /// Samples per fiber axis of the difference grid.
    pub fiber_samples: usize,
    /// Samples per fiber axis of the spectrum-detection grid.
    pub detection_samples: usize,
    /// Extra room around the support box, as a fraction per side.
    pub margin: f64,
}

impl GridPlan {
    pub fn fiber(fiber_samples: usize) -> Self {
        GridPlan { base_samples: 21, fiber_samples, detection_samples: 201, margin: 0.2 }
    }
}

fn widened(lo: f64, hi: f64, margin: f64) -> (f64, f64) {
    let pad = margin * 0.5 * (hi - lo);
    (lo - pad, hi + pad)
}

/// Axes for the base block of the difference grid.
///
/// No padding here: the declared base intervals are the base manifold.
pub fn base_axes_for(g: &GFDescriptor, plan: &GridPlan) -> Vec<AxisSpec> {
    g.support()[..g.base_dim()]
        .iter()
        .map(|&(lo, hi)| AxisSpec::new(lo, hi, plan.base_samples))
        .collect()
}

/// Axes for the full fiber block, including stabilization variables.
///
/// Core fiber axes pad the support box; stabilization axes must reach out to
/// `sqrt(omega - eps)` so that sublevel escapes along the negative square are
/// not cut off by the box.
pub fn fiber_axes_for(g: &GFDescriptor, plan: &GridPlan, window: &Window) -> Vec<AxisSpec> {
    let mut axes: Vec<AxisSpec> = g.support()[g.base_dim()..]
        .iter()
        .map(|&(lo, hi)| {
            let (lo, hi) = widened(lo, hi, plan.margin);
            AxisSpec::new(lo, hi, plan.fiber_samples)
        })
        .collect();
    if !g.stab_signs().is_empty() {
        let reach = (window.omega - window.eps).max(0.0).sqrt() * (1.0 + plan.margin);
        for _ in g.stab_signs() {
            axes.push(AxisSpec::new(-reach, reach, plan.fiber_samples));
        }
    }
    axes
}

/// Detect the length spectrum of a descriptor from its core difference field.
///
/// Stabilization variables are dropped first: they add no critical values and
/// their grid ranges would themselves depend on the window.
pub fn detect_spectrum(g: &GFDescriptor, plan: &GridPlan) -> Result<CriticalValues> {
    let core = g.without_stabilization();
    let det_plan = GridPlan { fiber_samples: plan.detection_samples, ..*plan };
    let base_axes = base_axes_for(&core, &det_plan);
    let window_unused = Window { eps: 1.0, omega: 2.0 }; // no stab axes needed
    let fiber_axes = fiber_axes_for(&core, &det_plan, &window_unused);
    let field = core.difference().sample(&base_axes, &fiber_axes)?;
    Ok(detect_critical_values(&field))
}

/// Everything a numeric GFH run reports.
#[derive(Debug, Clone, Serialize)]
pub struct GfhOutcome {
    /// Generating family homology, graded with the fiber-dimension shift.
    pub ranks: GradedRanks,
    /// The sublevel-pair homology before the shift.
    pub pair_ranks: GradedRanks,
    pub fiber_dim: usize,
    pub window: Window,
    /// Detected positive critical values (empty when a window was supplied
    /// for a spectrum-free descriptor).
    pub spectrum: Vec<f64>,
    pub grid: GridSpec,
    pub ring: Ring,
    pub warnings: Vec<String>,
}

/// Generating family homology of a descriptor: the homology of the window
/// sublevel pair of its difference function, re-indexed by `k -> k + N`.
pub fn gfh(
    g: &GFDescriptor,
    plan: &GridPlan,
    window: Option<Window>,
    ring: Ring,
    budget: u64,
) -> Result<GfhOutcome> {
    if g.base_dim() > 2 {
        return Err(GfhError::InvalidInput(
            "numeric GFH supports base dimension at most 2".into(),
        ));
    }
    let crits = detect_spectrum(g, plan)?;
    let window = match window {
        Some(w) => {
            if let Some((lmin, lmax)) = crits.spectrum_bounds() {
                w.validate_against(lmin, lmax)?;
            }
            w
        }
        None => choose_window(&crits)?,
    };

    let base_axes = base_axes_for(g, plan);
    let fiber_axes = fiber_axes_for(g, plan, &window);
    let field = g.difference().sample(&base_axes, &fiber_axes)?;
    let pair = CubicalPair::new(&field, window.eps, window.omega)?;
    let warnings = pair.threshold_warnings(&crits);
    let pair_ranks = relative_pair_homology(&pair, ring, budget)?;
    let ranks = pair_ranks.shifted(-(g.fiber_dim() as i64));
    Ok(GfhOutcome {
        ranks,
        pair_ranks,
        fiber_dim: g.fiber_dim(),
        window,
        spectrum: crits.positive(),
        grid: field.grid().clone(),
        ring,
        warnings,
    })
}

/// Convenience wrapper with the default cell budget.
pub fn gfh_default(
    g: &GFDescriptor,
    plan: &GridPlan,
    window: Option<Window>,
    ring: Ring,
) -> Result<GfhOutcome> {
    gfh(g, plan, window, ring, DEFAULT_CELL_BUDGET)
}

/// Reference fixtures used across tests, examples, and the shipped corpus.
pub mod fixtures {
    use super::*;

    /// The double-well family over a point: `f = eta^3 - 3 eta` inside the
    /// box, linear tail `eta` outside; length spectrum `{4}`.
    pub fn cubic() -> GFDescriptor {
        GFDescriptor::new(
            0,
            1,
            vec![
                Monomial { coeff: 1.0, exponents: vec![3] },
                Monomial { coeff: -4.0, exponents: vec![1] },
            ],
            vec![(-2.0, 2.0)],
            0.25,
            vec![1.0],
        )
        .expect("cubic fixture is valid")
    }

    /// A pure linear family: generates the empty Legendrian.
    pub fn linear() -> GFDescriptor {
        GFDescriptor::new(0, 1, vec![], vec![(-1.0, 1.0)], 0.25, vec![1.0])
            .expect("linear fixture is valid")
    }

    /// The cubic with a wide amplitude-0.5 bump at the bottom well. The well
    /// value moves from -2 to -1.5, so the spectrum shifts to {3.5} and stays
    /// inside every window used by the invariance suite.
    pub fn cubic_with_bump() -> GFDescriptor {
        cubic()
            .with_bump(Bump { center: vec![1.0], radius: vec![1.0], amplitude: 0.5 })
            .expect("bumped cubic fixture is valid")
    }

    /// Conical filling extension of the cubic family.
    pub fn cubic_filling() -> FillingDescriptorNumeric {
        FillingDescriptorNumeric::new(cubic(), 0.5).expect("cubic filling fixture is valid")
    }

    /// Conical filling extension of the linear family (empty Legendrian).
    pub fn linear_filling() -> FillingDescriptorNumeric {
        FillingDescriptorNumeric::new(linear(), 0.5).expect("linear filling fixture is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_vanishes_on_diagonal_and_antisymmetric() {
        let g = fixtures::cubic();
        let d = g.difference();
        for eta in [-1.5_f64, 0.0, 0.7, 2.3] {
            assert_eq!(d.value(&[], &[eta], &[eta]), 0.0);
        }
        for (a, b) in [(-1.0, 0.5), (0.2, 1.9), (-2.5, 2.5)] {
            assert_eq!(d.value(&[], &[a], &[b]), -d.value(&[], &[b], &[a]));
        }
        // f(-1) - f(1) = 2 - (-2) = 4.
        assert!((d.value(&[], &[1.0], &[-1.0]) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn linear_difference_has_no_critical_values() {
        let g = fixtures::linear();
        let plan = GridPlan::fiber(101);
        let crits = detect_spectrum(&g, &plan).unwrap();
        assert!(crits.clusters.is_empty());
    }

    #[test]
    fn cubic_spectrum_and_window() {
        let g = fixtures::cubic();
        let plan = GridPlan::fiber(101);
        let crits = detect_spectrum(&g, &plan).unwrap();
        let pos = crits.positive();
        assert_eq!(pos.len(), 1);
        assert!((pos[0] - 4.0).abs() < 0.05);
        let w = choose_window(&crits).unwrap();
        assert!((w.eps - 2.0).abs() < 0.05);
        assert!((w.omega - 9.0).abs() < 0.1);
    }

    #[test]
    fn sampled_antisymmetry_is_exact() {
        let g = fixtures::cubic();
        let axes = [AxisSpec::new(-2.4, 2.4, 31)];
        let field = g.difference().sample(&[], &axes).unwrap();
        let n = 31;
        for i in 0..n {
            for j in 0..n {
                let v = field.value(i * n + j);
                let w = field.value(j * n + i);
                assert_eq!(v, -w);
            }
        }
    }

    #[test]
    fn cubic_gfh_is_rank_one_in_degree_one() {
        let g = fixtures::cubic();
        let plan = GridPlan::fiber(101);
        let out = gfh_default(&g, &plan, None, Ring::Z).unwrap();
        assert_eq!(out.pair_ranks, GradedRanks::from_free(&[(2, 1)]));
        assert_eq!(out.ranks, GradedRanks::from_free(&[(1, 1)]));
    }

    #[test]
    fn linear_gfh_is_zero_with_explicit_window() {
        let g = fixtures::linear();
        let plan = GridPlan::fiber(61);
        let w = Window::explicit(1.0, 2.0).unwrap();
        let out = gfh_default(&g, &plan, Some(w), Ring::Z).unwrap();
        assert!(out.ranks.is_zero());
        // Without a window the run must fail loudly.
        assert!(gfh_default(&g, &plan, None, Ring::Z).is_err());
    }

    #[test]
    fn stabilized_cubic_gfh_matches_unstabilized() {
        let g = fixtures::cubic().stabilize(StabSign::Plus);
        let mut plan = GridPlan::fiber(41);
        plan.detection_samples = 161;
        let out = gfh(&g, &plan, None, Ring::Z2, DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(out.pair_ranks, GradedRanks::from_free(&[(3, 1)]));
        assert_eq!(out.ranks, GradedRanks::from_free(&[(1, 1)]));
    }

    #[test]
    fn cubic_over_interval_base() {
        // A base-independent cubic over an interval base: the pair gains a
        // contractible factor, so GFH is unchanged.
        let g = GFDescriptor::new(
            1,
            1,
            vec![
                Monomial { coeff: 1.0, exponents: vec![0, 3] },
                Monomial { coeff: -4.0, exponents: vec![0, 1] },
            ],
            vec![(0.0, 1.0), (-2.0, 2.0)],
            0.25,
            vec![1.0],
        )
        .unwrap();
        let mut plan = GridPlan::fiber(61);
        plan.base_samples = 9;
        plan.detection_samples = 121;
        let out = gfh_default(&g, &plan, None, Ring::Z).unwrap();
        assert_eq!(out.ranks, GradedRanks::from_free(&[(1, 1)]));
    }
}
