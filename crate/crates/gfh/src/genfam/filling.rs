//! Conical filling extensions and the numeric decomposition of their sheared
//! difference functions over cone-coordinate ranges.
//!
//! The filling field over a point base is
//! `F(t, eta) = t (B(t) core(eta) + A(eta))` with a smoothstep bridge `B`
//! that vanishes below `t_minus` and is 1 above 1, so `F = t f` on the cone
//! and `F = t A` on the linear end, exactly. Stabilization squares ride along
//! unscaled. The sheared difference adds `H(t)` on top.

use super::descriptor::{smoothstep, GFDescriptor};
use super::shear::ShearSpec;
use super::{detect_spectrum, GridPlan};
use crate::cubegrid::{relative_pair_homology, AxisSpec, CubicalPair, GridSpec, SampledField};
use crate::error::{GfhError, Result};
use crate::homlin::{GradedRanks, Ring};
use rayon::prelude::*;
use serde::Serialize;

/// A linearly-controlled conical filling of a point-base descriptor.
#[derive(Debug, Clone, PartialEq)]
pub struct FillingDescriptorNumeric {
    base: GFDescriptor,
    t_minus: f64,
}

impl FillingDescriptorNumeric {
    pub fn new(base: GFDescriptor, t_minus: f64) -> Result<Self> {
        if base.base_dim() != 0 {
            return Err(GfhError::InvalidInput(
                "filling descriptors require a point base (base dimension 0)".into(),
            ));
        }
        if !(t_minus > 0.0 && t_minus < 1.0) {
            return Err(GfhError::InvalidInput(format!(
                "t_minus = {t_minus} must lie in (0, 1)"
            )));
        }
        Ok(FillingDescriptorNumeric { base, t_minus })
    }

    pub fn base(&self) -> &GFDescriptor {
        &self.base
    }

    pub fn t_minus(&self) -> f64 {
        self.t_minus
    }

    /// The conical-to-linear bridge: 0 below `t_minus`, 1 above 1.
    pub fn bridge(&self, t: f64) -> f64 {
        smoothstep((t - self.t_minus) / (1.0 - self.t_minus))
    }

    /// Evaluate `F(t, eta)`.
    pub fn eval(&self, t: f64, fiber: &[f64]) -> f64 {
        let g = &self.base;
        let ncore = g.core_fiber_dim();
        let mut v = self.bridge(t) * g.core_value(&fiber[..ncore]);
        for (i, &c) in g.tail().iter().enumerate() {
            v += c * fiber[i];
        }
        v *= t;
        for (j, s) in g.stab_signs().iter().enumerate() {
            let x = fiber[ncore + j];
            v += s.factor() * x * x;
        }
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "descriptor": self.base.to_json(),
            "tMinus": format!("{}", self.t_minus),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| GfhError::InvalidInput("filling descriptor must be an object".into()))?;
        let desc = obj
            .get("descriptor")
            .ok_or_else(|| GfhError::InvalidInput("filling descriptor missing 'descriptor'".into()))?;
        let base = GFDescriptor::from_json(desc)?;
        let t_minus = obj
            .get("tMinus")
            .and_then(|v| v.as_str())
            .ok_or_else(|| GfhError::InvalidInput("filling descriptor missing 'tMinus'".into()))?
            .parse::<f64>()
            .map_err(|_| GfhError::InvalidInput("bad tMinus".into()))?;
        FillingDescriptorNumeric::new(base, t_minus)
    }
}

/// Sampler for the sheared difference
/// `Delta(t, eta, eta~) = F(t, eta~) + H(t) - F(t, eta)`.
pub struct ShearedField<'a> {
    filling: &'a FillingDescriptorNumeric,
    spec: &'a ShearSpec,
}

/// Builder over `(t, eta, eta~)` grids.
pub fn sheared_difference<'a>(
    filling: &'a FillingDescriptorNumeric,
    spec: &'a ShearSpec,
) -> ShearedField<'a> {
    ShearedField { filling, spec }
}

impl<'a> ShearedField<'a> {
    /// Pointwise value.
    pub fn value(&self, t: f64, eta: &[f64], eta_tilde: &[f64]) -> f64 {
        self.filling.eval(t, eta_tilde) + self.spec.h(t) - self.filling.eval(t, eta)
    }

    /// Sample on `t_axis x fiber_axes x fiber_axes`.
    pub fn sample(&self, t_axis: &AxisSpec, fiber_axes: &[AxisSpec]) -> Result<SampledField> {
        let g = self.filling.base();
        if fiber_axes.len() != g.fiber_dim() {
            return Err(GfhError::InvalidInput(format!(
                "{} fiber axes supplied for fiber dimension {}",
                fiber_axes.len(),
                g.fiber_dim()
            )));
        }
        let mut axes = vec![t_axis.clone()];
        axes.extend_from_slice(fiber_axes);
        axes.extend_from_slice(fiber_axes);
        let grid = GridSpec::new(axes)?;

        // Tables over the fiber grid: windowed core, linear tail, and the
        // unscaled stabilization squares.
        let ncore = g.core_fiber_dim();
        let fgrid = GridSpec::new(fiber_axes.to_vec())?;
        let fc = usize::try_from(fgrid.vertex_count())
            .map_err(|_| GfhError::InvalidInput("fiber grid too large".into()))?;
        let mut core_tab = vec![0.0f64; fc];
        let mut tail_tab = vec![0.0f64; fc];
        let mut stab_tab = vec![0.0f64; fc];
        for i in 0..fc {
            let coords = fgrid.vertex_coords(i);
            core_tab[i] = g.core_value(&coords[..ncore]);
            tail_tab[i] = g.tail().iter().zip(&coords).map(|(&c, &x)| c * x).sum();
            stab_tab[i] = g
                .stab_signs()
                .iter()
                .zip(&coords[ncore..])
                .map(|(s, &x)| s.factor() * x * x)
                .sum();
        }

        let nt = t_axis.samples;
        let mut t_bridge = vec![(0.0f64, 0.0f64, 0.0f64); nt];
        for (k, slot) in t_bridge.iter_mut().enumerate() {
            let t = t_axis.coordinate(k);
            *slot = (t, self.filling.bridge(t), self.spec.h(t));
        }

        let total = usize::try_from(grid.vertex_count())
            .map_err(|_| GfhError::InvalidInput("sheared grid too large".into()))?;
        let values: Vec<f64> = (0..total)
            .into_par_iter()
            .map(|flat| {
                let j = flat % fc;
                let rest = flat / fc;
                let i = rest % fc;
                let k = rest / fc;
                let (t, b, h) = t_bridge[k];
                t * (b * (core_tab[j] - core_tab[i]) + (tail_tab[j] - tail_tab[i]))
                    + (stab_tab[j] - stab_tab[i])
                    + h
            })
            .collect();
        SampledField::new(grid, values)
    }
}

/// Grid plan for the decomposition runs.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SeidelPlan {
    /// Samples along the cone coordinate for each 3D range.
    pub t_samples: usize,
    /// Samples per fiber axis.
    pub fiber_samples: usize,
    /// Samples per fiber axis for spectrum detection.
    pub detection_samples: usize,
    /// Padding fraction for fiber boxes.
    pub margin: f64,
}

impl SeidelPlan {
    pub fn new(t_samples: usize, fiber_samples: usize) -> Self {
        SeidelPlan { t_samples, fiber_samples, detection_samples: 201, margin: 0.2 }
    }
}

/// The four range homologies of the sheared pair, before any regrading.
#[derive(Debug, Clone, Serialize)]
pub struct SeidelOutcome {
    /// Over the slice `{u}`: matches the window pair of the boundary family.
    pub w: GradedRanks,
    /// Over `[w_cut, u]`: the filling contribution.
    pub a: GradedRanks,
    /// Over `[u, v_cut]`: must vanish.
    pub b: GradedRanks,
    /// Over `[w_cut, v_cut]`: must vanish.
    pub c: GradedRanks,
    /// Whether W = A and B = C = 0 degreewise.
    pub matches: bool,
    pub lmin: f64,
    pub lmax: f64,
    pub w_cut: f64,
    pub v_cut: f64,
    pub fiber_dim: usize,
}

/// Compute the four-range decomposition of `(Delta <= Omega, Delta <= -mu)`.
///
/// The cone coordinate is truncated to `[w_cut, v_cut]` with `w_cut < t_minus`
/// and `lambda_{-mu}(v_cut) > lmax`; past those cuts both sublevels are
/// products and contribute nothing.
pub fn seidel_decomposition(
    filling: &FillingDescriptorNumeric,
    spec: &ShearSpec,
    plan: &SeidelPlan,
    ring: Ring,
    budget: u64,
) -> Result<SeidelOutcome> {
    let g = filling.base();
    let det_plan = GridPlan {
        base_samples: 2,
        fiber_samples: plan.fiber_samples,
        detection_samples: plan.detection_samples,
        margin: plan.margin,
    };
    let crits = detect_spectrum(g, &det_plan)?;
    let (lmin, lmax) = crits.spectrum_bounds().ok_or_else(|| {
        GfhError::WindowViolation(
            "no positive critical values; the decomposition needs a nonempty spectrum (use the plain pair for the empty case)"
                .into(),
        )
    })?;
    spec.validate(lmin, lmax)?;
    if !(spec.t_minus == filling.t_minus()) {
        return Err(GfhError::InvalidInput(format!(
            "shear t_minus = {} disagrees with the filling's t_minus = {}",
            spec.t_minus,
            filling.t_minus()
        )));
    }

    let w_cut = 0.5 * filling.t_minus();
    let v_cut = spec.upper_cutoff(lmax);

    // Fiber axes: padded support plus stabilization reach for the thresholds.
    let mut fiber_axes: Vec<AxisSpec> = g
        .support()
        .iter()
        .map(|&(lo, hi)| {
            let pad = plan.margin * 0.5 * (hi - lo);
            AxisSpec::new(lo - pad, hi + pad, plan.fiber_samples)
        })
        .collect();
    if !g.stab_signs().is_empty() {
        let reach = (spec.omega_upper + spec.mu).sqrt() * (1.0 + plan.margin);
        for _ in g.stab_signs() {
            fiber_axes.push(AxisSpec::new(-reach, reach, plan.fiber_samples));
        }
    }

    let field_builder = sheared_difference(filling, spec);
    let pair_of = |field: &SampledField| -> Result<GradedRanks> {
        let pair = CubicalPair::new(field, -spec.mu, spec.omega_upper)?;
        relative_pair_homology(&pair, ring, budget)
    };

    // W: the 2D fiber slice at t = u.
    let w_ranks = {
        let slice_grid = GridSpec::new([fiber_axes.clone(), fiber_axes.clone()].concat())?;
        let fc: usize = fiber_axes.iter().map(|a| a.samples).product();
        let total = usize::try_from(slice_grid.vertex_count())
            .map_err(|_| GfhError::InvalidInput("slice grid too large".into()))?;
        let fgrid = GridSpec::new(fiber_axes.clone())?;
        let fvals: Vec<f64> = (0..fc)
            .into_par_iter()
            .map(|i| filling.eval(spec.u, &fgrid.vertex_coords(i)))
            .collect();
        let h_u = spec.h(spec.u);
        let values: Vec<f64> = (0..total)
            .into_par_iter()
            .map(|flat| {
                let j = flat % fc;
                let i = flat / fc;
                fvals[j] - fvals[i] + h_u
            })
            .collect();
        let field = SampledField::new(slice_grid, values)?;
        pair_of(&field)?
    };

    let sample_range = |lo: f64, hi: f64| -> Result<GradedRanks> {
        let t_axis = AxisSpec::new(lo, hi, plan.t_samples);
        let field = field_builder.sample(&t_axis, &fiber_axes)?;
        pair_of(&field)
    };

    let a_ranks = sample_range(w_cut, spec.u)?;
    let b_ranks = sample_range(spec.u, v_cut)?;
    let c_ranks = sample_range(w_cut, v_cut)?;

    let matches = w_ranks == a_ranks && b_ranks.is_zero() && c_ranks.is_zero();
    Ok(SeidelOutcome {
        w: w_ranks,
        a: a_ranks,
        b: b_ranks,
        c: c_ranks,
        matches,
        lmin,
        lmax,
        w_cut,
        v_cut,
        fiber_dim: g.fiber_dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfam::fixtures;

    fn cubic_shear() -> ShearSpec {
        // Spectrum {4}: u < min(sqrt 5, 2) = 2, mu < (u-1)^2/2, Omega > 12.
        ShearSpec::new(1.9, 0.01, 13.0, 0.5)
    }

    #[test]
    fn filling_matches_regimes_exactly() {
        let fd = fixtures::cubic_filling();
        let g = fixtures::cubic();
        // t >= 1: F = t f exactly.
        for (t, eta) in [(1.0, 0.3), (2.5, -1.7), (4.0, 1.0)] {
            assert_eq!(fd.eval(t, &[eta]), t * g.eval(&[eta]));
        }
        // t <= t_minus: F = t A exactly.
        for (t, eta) in [(0.5, 0.3), (0.2, -1.7), (0.1, 1.0)] {
            assert_eq!(fd.eval(t, &[eta]), t * eta);
        }
        // Outside the core support, F = t A for every t (linear control).
        for t in [0.25, 0.7, 1.0, 3.0] {
            assert_eq!(fd.eval(t, &[2.3]), t * 2.3);
        }
    }

    #[test]
    fn sheared_compatibility_on_cone_samples() {
        let fd = fixtures::cubic_filling();
        let spec = cubic_shear();
        let sf = sheared_difference(&fd, &spec);
        let g = fixtures::cubic();
        let d = g.difference();
        for t in [1.0, 1.3, 2.0, 4.5] {
            for (a, b) in [(-1.0, 0.8), (0.0, 2.2), (-2.4, 1.1)] {
                let lhs = sf.value(t, &[a], &[b]);
                let rhs = t * d.value(&[], &[a], &[b]) + spec.h(t);
                // Identical up to association order of the products.
                let tol = 1e-13 * rhs.abs().max(1.0);
                assert!((lhs - rhs).abs() <= tol, "t={t} a={a} b={b}: {lhs} vs {rhs}");
            }
        }
        // Diagonal between t_minus and 1: the critical submanifold at level 0.
        for t in [0.5, 0.7, 0.9, 1.0] {
            assert_eq!(sf.value(t, &[0.4], &[0.4]), 0.0);
        }
        // Linear end: Delta = t (A(eta~) - A(eta)).
        for t in [0.1, 0.3, 0.5] {
            assert_eq!(sf.value(t, &[0.25], &[-1.0]), t * (-1.25));
        }
    }

    #[test]
    fn reeb_chord_critical_point_sits_at_expected_height() {
        // For the chord of length 4 the critical point of Delta appears at
        // t = 5 with value 4 + 8 = 12, inside (-mu, Omega).
        let fd = fixtures::cubic_filling();
        let spec = cubic_shear();
        let sf = sheared_difference(&fd, &spec);
        let v = sf.value(5.0, &[1.0], &[-1.0]);
        assert!((v - 12.0).abs() < 1e-9, "critical value {v}");
        // Stationary in t: d/dt [t delta + H] = delta + H'(t) = 4 - 4 = 0.
        let dv = (sf.value(5.0 + 1e-6, &[1.0], &[-1.0]) - sf.value(5.0 - 1e-6, &[1.0], &[-1.0]))
            / 2e-6;
        assert!(dv.abs() < 1e-5, "dv/dt = {dv}");
        assert!(spec.omega_upper > 12.0);
    }

    #[test]
    fn empty_legendrian_filling_has_no_decomposition_spectrum() {
        let fd = fixtures::linear_filling();
        let spec = cubic_shear();
        let plan = SeidelPlan::new(21, 41);
        assert!(seidel_decomposition(&fd, &spec, &plan, Ring::Z, 10_000_000).is_err());
    }

    #[test]
    fn cubic_decomposition_small_grid() {
        let fd = fixtures::cubic_filling();
        let spec = cubic_shear();
        let plan = SeidelPlan::new(61, 121);
        let out = seidel_decomposition(&fd, &spec, &plan, Ring::Z, 50_000_000).unwrap();
        assert_eq!(out.w, GradedRanks::from_free(&[(2, 1)]), "W");
        assert_eq!(out.a, GradedRanks::from_free(&[(2, 1)]), "A");
        assert!(out.b.is_zero(), "B = {}", out.b);
        assert!(out.c.is_zero(), "C = {}", out.c);
        assert!(out.matches);
    }
}
