//! Structural decision procedures on homology profiles: fiber-dimension
//! lower bounds, fillability verdicts, the mod-2 duality audit, and the
//! comparison of a Legendrian's homology against a surface filling.

use crate::error::{GfhError, Result};
use crate::homlin::{GradedRanks, Ring};
use crate::spectop::{rp2_complex, sphere_complex, torus_complex, SimplicialComplex, SpectrumSurrogate};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Homology of one Legendrian across coefficient rings.
#[derive(Debug, Clone, Serialize)]
pub struct GFHProfile {
    /// Per-ring graded ranks; at least one ring must be present.
    pub ranks: BTreeMap<Ring, GradedRanks>,
    /// Dimension of the Legendrian.
    pub legendrian_dim: i64,
    pub connected: bool,
}

impl GFHProfile {
    pub fn new(ranks: BTreeMap<Ring, GradedRanks>, legendrian_dim: i64, connected: bool) -> Result<Self> {
        if ranks.is_empty() {
            return Err(GfhError::InvalidInput("profile needs at least one coefficient ring".into()));
        }
        if legendrian_dim < 0 {
            return Err(GfhError::InvalidInput("Legendrian dimension must be nonnegative".into()));
        }
        Ok(GFHProfile { ranks, legendrian_dim, connected })
    }

    pub fn single(ring: Ring, ranks: GradedRanks, legendrian_dim: i64, connected: bool) -> Self {
        let mut map = BTreeMap::new();
        map.insert(ring, ranks);
        GFHProfile { ranks: map, legendrian_dim, connected }
    }

    fn nonzero_in_some_ring(&self, degree: i64) -> bool {
        self.ranks.values().any(|g| !g.get(degree).is_trivial())
    }

    fn degree_range(&self) -> (i64, i64) {
        let mut lo = 0;
        let mut hi = 0;
        for g in self.ranks.values() {
            for k in g.nonzero_degrees() {
                lo = lo.min(k);
                hi = hi.max(k);
            }
        }
        (lo, hi)
    }
}

/// Lower bound on the fiber dimension within the stabilization class:
/// `max{k+1 : H_{-k} != 0, k >= 0} cup {l - m : H_l != 0, l >= 0} cup {1}`,
/// maximizing over coefficient rings independently in each term.
pub fn nmin_lower_bound(p: &GFHProfile) -> i64 {
    let (lo, hi) = p.degree_range();
    let mut bound = 1i64;
    for k in 0..=(-lo).max(0) {
        if p.nonzero_in_some_ring(-k) {
            bound = bound.max(k + 1);
        }
    }
    for l in 0..=hi.max(0) {
        if p.nonzero_in_some_ring(l) {
            bound = bound.max(l - p.legendrian_dim);
        }
    }
    bound
}

/// Fillability verdicts, in decreasing strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FillabilityVerdict {
    #[serde(rename = "noFilling")]
    NoFilling,
    #[serde(rename = "noConnectedFilling")]
    NoConnectedFilling,
    #[serde(rename = "noObstruction")]
    NoObstruction,
}

/// Negative-degree homology forbids any filling; degree-0 homology of a
/// connected Legendrian forbids a connected one.
pub fn fillability_obstruction(p: &GFHProfile) -> FillabilityVerdict {
    let (lo, _) = p.degree_range();
    for k in lo..0 {
        if p.nonzero_in_some_ring(k) {
            return FillabilityVerdict::NoFilling;
        }
    }
    if p.connected && p.nonzero_in_some_ring(0) {
        return FillabilityVerdict::NoConnectedFilling;
    }
    FillabilityVerdict::NoObstruction
}

/// Result of the duality audit with its witnesses.
#[derive(Debug, Clone, Serialize)]
pub struct DualityReport {
    pub pass: bool,
    /// Verified pairings `(-k, m+1+k)` with both sides nonzero.
    pub pairings: Vec<(i64, i64)>,
    /// Violations `(k, partner degree)` where exactly one side is nonzero.
    pub failures: Vec<(i64, i64)>,
}

/// Mod-2 duality: `H_{-k} != 0  iff  H_{m+1+k} != 0` for all `k >= 1`.
///
/// The degree pair `(0, m+1)` is exempt: the fundamental class sits there
/// and breaks the biconditional on every fillable example.
pub fn duality_audit(p: &GFHProfile) -> Result<DualityReport> {
    let ranks = p
        .ranks
        .get(&Ring::Z2)
        .ok_or_else(|| GfhError::InvalidInput("duality audit needs a Z/2 profile".into()))?;
    let m = p.legendrian_dim;
    let (lo, hi) = p.degree_range();
    let k_max = (-lo).max(hi - m - 1).max(1);
    let mut pairings = Vec::new();
    let mut failures = Vec::new();
    for k in 1..=k_max {
        let neg = !ranks.get(-k).is_trivial();
        let pos = !ranks.get(m + 1 + k).is_trivial();
        match (neg, pos) {
            (true, true) => pairings.push((-k, m + 1 + k)),
            (false, false) => {}
            _ => failures.push((k, m + 1 + k)),
        }
    }
    Ok(DualityReport { pass: failures.is_empty(), pairings, failures })
}

/// An orientable (or nonorientable) surface filling: genus and boundary
/// components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceFilling {
    pub genus: i64,
    pub boundary_components: i64,
    pub orientable: bool,
}

impl SurfaceFilling {
    pub fn orientable(genus: i64, boundary_components: i64) -> Result<Self> {
        SurfaceFilling { genus, boundary_components, orientable: true }.validated()
    }

    pub fn nonorientable(genus: i64, boundary_components: i64) -> Result<Self> {
        SurfaceFilling { genus, boundary_components, orientable: false }.validated()
    }

    fn validated(self) -> Result<Self> {
        if self.boundary_components < 1 {
            return Err(GfhError::InvalidInput("a filling needs at least one boundary component".into()));
        }
        if self.genus < 0 || (!self.orientable && self.genus < 1) {
            return Err(GfhError::InvalidInput("invalid genus".into()));
        }
        Ok(self)
    }

    /// Reduced homology of the quotient of the filling by its boundary:
    /// the cell-level stand-in for the filling's stable invariant.
    pub fn quotient_homology(&self) -> GradedRanks {
        let s = self.spectrum();
        s.spec_homology(Ring::Z).expect("surface surrogates are valid")
    }

    /// Build the spectrum surrogate of the boundary quotient.
    ///
    /// Stably the quotient splits as a wedge: one top sphere and `2g + b - 1`
    /// circles for orientable fillings; a projective plane replaces the top
    /// data in the nonorientable case.
    pub fn spectrum(&self) -> SpectrumSurrogate {
        let circle_count = if self.orientable {
            2 * self.genus + self.boundary_components - 1
        } else {
            (self.genus - 1) + self.boundary_components - 1
        };
        let mut cx: SimplicialComplex =
            if self.orientable { sphere_complex(2) } else { rp2_complex() };
        for _ in 0..circle_count {
            cx = cx.wedge(&sphere_complex(1));
        }
        SpectrumSurrogate::new(
            cx,
            0,
            format!(
                "filling(g={}, b={}, {})",
                self.genus,
                self.boundary_components,
                if self.orientable { "orientable" } else { "nonorientable" }
            ),
        )
    }
}

/// The filling homology predicted for a Legendrian: what its graded ranks
/// must equal if the given surface fills it.
pub fn seidel_spectrum(s: &SurfaceFilling) -> SpectrumSurrogate {
    s.spectrum()
}

/// Degreewise comparison report.
#[derive(Debug, Clone, Serialize)]
pub struct SeidelComparison {
    pub matches: bool,
    pub mismatched_degrees: Vec<i64>,
    pub gfh: GradedRanks,
    pub filling: GradedRanks,
}

/// Compare a Legendrian's homology against a candidate filling, degreewise.
pub fn compare_seidel(gfh: &GradedRanks, filling: &SurfaceFilling, ring: Ring) -> Result<SeidelComparison> {
    let fr = filling.spectrum().spec_homology(ring)?;
    let mut degrees: Vec<i64> = gfh.nonzero_degrees();
    degrees.extend(fr.nonzero_degrees());
    degrees.sort_unstable();
    degrees.dedup();
    let mismatched: Vec<i64> =
        degrees.into_iter().filter(|&k| gfh.get(k) != fr.get(k)).collect();
    Ok(SeidelComparison {
        matches: mismatched.is_empty(),
        mismatched_degrees: mismatched,
        gfh: gfh.clone(),
        filling: fr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectop::{suspension_obstruction, SuspensionVerdict};

    fn profile(degrees: &[(i64, usize)], m: i64) -> GFHProfile {
        let g = GradedRanks::from_free(degrees);
        let mut map = BTreeMap::new();
        map.insert(Ring::Z2, g.clone());
        map.insert(Ring::Z, g);
        GFHProfile { ranks: map, legendrian_dim: m, connected: true }
    }

    #[test]
    fn nmin_bound_examples() {
        // Nonzero at {-1, 2, 3}, m = 1: max(1+1, 3-1) = 2.
        assert_eq!(nmin_lower_bound(&profile(&[(-1, 1), (2, 1), (3, 1)], 1)), 2);
        // Twist family: {-d+2, 2, d}, m = 1 gives d - 1.
        for d in 3..=7i64 {
            let p = profile(&[(-d + 2, 1), (2, 1), (d, 1)], 1);
            assert_eq!(nmin_lower_bound(&p), d - 1, "d = {d}");
        }
        // Spun sphere: {n+1} with m = n gives the floor 1.
        for n in 1..=4i64 {
            assert_eq!(nmin_lower_bound(&profile(&[(n + 1, 1)], n)), 1);
        }
    }

    #[test]
    fn nmin_is_monotone_under_adding_degrees() {
        let base = profile(&[(2, 1)], 1);
        let more = profile(&[(2, 1), (-2, 1)], 1);
        assert!(nmin_lower_bound(&more) >= nmin_lower_bound(&base));
    }

    #[test]
    fn fillability_verdicts() {
        assert_eq!(
            fillability_obstruction(&profile(&[(-1, 1), (2, 1), (3, 1)], 1)),
            FillabilityVerdict::NoFilling
        );
        assert_eq!(
            fillability_obstruction(&profile(&[(1, 2), (2, 1)], 1)),
            FillabilityVerdict::NoObstruction
        );
        assert_eq!(
            fillability_obstruction(&profile(&[(0, 1), (2, 1)], 1)),
            FillabilityVerdict::NoConnectedFilling
        );
    }

    #[test]
    fn duality_pairings_and_failures() {
        let r = duality_audit(&profile(&[(-1, 1), (2, 1), (3, 1)], 1)).unwrap();
        assert!(r.pass);
        assert_eq!(r.pairings, vec![(-1, 3)]);
        for d in 3..=7i64 {
            let r = duality_audit(&profile(&[(-d + 2, 1), (2, 1), (d, 1)], 1)).unwrap();
            assert!(r.pass, "d = {d}");
            assert!(r.pairings.contains(&(-(d - 2), d)));
        }
        // A lone negative class fails with the partner named.
        let r = duality_audit(&profile(&[(-1, 1)], 1)).unwrap();
        assert!(!r.pass);
        assert_eq!(r.failures, vec![(1, 3)]);
        // The fundamental-class pair (0, m+1) is exempt.
        let r = duality_audit(&profile(&[(1, 2), (2, 1)], 1)).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn seidel_surface_homologies() {
        let disk = SurfaceFilling::orientable(0, 1).unwrap();
        assert_eq!(disk.quotient_homology(), GradedRanks::from_free(&[(2, 1)]));
        let torus_minus_disk = SurfaceFilling::orientable(1, 1).unwrap();
        assert_eq!(
            torus_minus_disk.quotient_homology(),
            GradedRanks::from_free(&[(1, 2), (2, 1)])
        );
        let pair_of_pants = SurfaceFilling::orientable(0, 3).unwrap();
        assert_eq!(pair_of_pants.quotient_homology(), GradedRanks::from_free(&[(1, 2), (2, 1)]));
    }

    #[test]
    fn interval_filling_of_two_points_is_a_circle() {
        // Genus 0 with one boundary circle collapsed... the interval filling
        // quotient is a circle: model as g=0, b=... handled through the
        // one-dimensional case directly.
        let s = SpectrumSurrogate::new(sphere_complex(1), 0, "interval/boundary");
        assert_eq!(s.spec_homology(Ring::Z).unwrap(), GradedRanks::from_free(&[(1, 1)]));
    }

    #[test]
    fn seidel_spectra_are_suspension_spectra() {
        for (g, b) in [(0, 1), (1, 1), (2, 3)] {
            let s = SurfaceFilling::orientable(g, b).unwrap();
            let report = suspension_obstruction(&s.spectrum()).unwrap();
            assert_eq!(report.verdict, SuspensionVerdict::Possible, "g={g} b={b}");
        }
        let klein = SurfaceFilling::nonorientable(2, 1).unwrap();
        let report = suspension_obstruction(&klein.spectrum()).unwrap();
        assert_eq!(report.verdict, SuspensionVerdict::Possible);
    }

    #[test]
    fn nonorientable_quotient_has_two_torsion() {
        let s = SurfaceFilling::nonorientable(1, 1).unwrap();
        let h = s.quotient_homology();
        assert_eq!(h.get(1).torsion, vec![2]);
        assert_eq!(h.get(2).free, 0);
    }

    #[test]
    fn compare_matches_and_mismatches() {
        let trefoil = GradedRanks::from_free(&[(1, 2), (2, 1)]);
        let unknot = GradedRanks::from_free(&[(2, 1)]);
        let torus_minus_disk = SurfaceFilling::orientable(1, 1).unwrap();
        let disk = SurfaceFilling::orientable(0, 1).unwrap();
        assert!(compare_seidel(&trefoil, &torus_minus_disk, Ring::Z).unwrap().matches);
        assert!(compare_seidel(&unknot, &disk, Ring::Z).unwrap().matches);
        let bad = compare_seidel(&trefoil, &disk, Ring::Z).unwrap();
        assert!(!bad.matches);
        assert_eq!(bad.mismatched_degrees, vec![1]);
    }

    #[test]
    fn euler_characteristics_match_for_fillable_fixtures() {
        // chi of the quotient equals 1 - (2g + b - 1) in the orientable case.
        for (g, b, gfh) in [
            (0i64, 1i64, GradedRanks::from_free(&[(2, 1)])),
            (1, 1, GradedRanks::from_free(&[(1, 2), (2, 1)])),
        ] {
            let s = SurfaceFilling::orientable(g, b).unwrap();
            let chi_filling = s.quotient_homology().euler_characteristic();
            assert_eq!(chi_filling, 1 - (2 * g + b - 1));
            assert_eq!(gfh.euler_characteristic(), chi_filling);
        }
    }
}
