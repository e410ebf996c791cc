//! Finite-spectrum surrogates: a pointed cell complex plus an integer shift,
//! standing in for `shift^(-s)` of a suspension spectrum at the level of
//! homology, cup products, and the two cheap Steenrod operations.
//!
//! The surrogate deliberately retains less than a spectrum does; comparisons
//! through it are degreewise homology plus obstruction flags, never an
//! equivalence claim.

mod pi;
mod simplicial;

pub use pi::{pi_s_lookup, SphereWedge, PI_STEM_HORIZON, PI_STEM_TABLE};
pub use simplicial::SimplicialComplex;

use crate::error::Result;
use crate::homlin::{GradedRanks, Ring};
use serde::Serialize;

/// A finite pointed cell complex together with a shift `s`: the object
/// stands in for the s-fold desuspension of the suspension spectrum of the
/// complex.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSurrogate {
    complex: SimplicialComplex,
    shift: i64,
    label: String,
}

impl SpectrumSurrogate {
    pub fn new(complex: SimplicialComplex, shift: i64, label: impl Into<String>) -> Self {
        SpectrumSurrogate { complex, shift, label: label.into() }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Homology of the surrogate: `H_k = reduced H_{k+s}(complex)`.
    pub fn spec_homology(&self, ring: Ring) -> Result<GradedRanks> {
        Ok(self.complex.reduced_homology(ring)?.shifted(-self.shift))
    }

    /// Raise all homology degrees by `n`.
    pub fn shifted(&self, n: i64) -> SpectrumSurrogate {
        SpectrumSurrogate {
            complex: self.complex.clone(),
            shift: self.shift - n,
            label: format!("shift({}, {n})", self.label),
        }
    }

    /// Suspend the underlying complex once; the represented spectrum is
    /// unchanged (the shift absorbs the suspension).
    pub fn resuspended(&self) -> SpectrumSurrogate {
        SpectrumSurrogate {
            complex: self.complex.suspension(),
            shift: self.shift + 1,
            label: self.label.clone(),
        }
    }

    /// Wedge sum. Shifts are equalized by suspending the lower-shift side,
    /// which loses cup-product information but not homology.
    pub fn wedge(&self, other: &SpectrumSurrogate) -> SpectrumSurrogate {
        let mut a = self.clone();
        let mut b = other.clone();
        while a.shift < b.shift {
            a = a.resuspended();
        }
        while b.shift < a.shift {
            b = b.resuspended();
        }
        SpectrumSurrogate {
            complex: a.complex.wedge(&b.complex),
            shift: a.shift,
            label: format!("{} v {}", self.label, other.label),
        }
    }
}

/// Why a surrogate cannot be a suspension spectrum, when it cannot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum ObstructionReason {
    /// Reduced homology in spectrum degree `degree <= 0`.
    HomologyDegree { degree: i64 },
    /// A class of spectrum degree `class_degree` with `Sq^i` nonzero for
    /// `i > class_degree`.
    SqInstability { sq: u32, class_degree: i64 },
}

/// Outcome of the suspension-spectrum test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "camelCase")]
pub enum SuspensionVerdict {
    Possible,
    Obstructed { reason: ObstructionReason },
    Inconclusive { why: String },
}

/// Full report: the homology-level degree test is exposed separately from the
/// Steenrod-enhanced verdict, because they can genuinely disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub verdict: SuspensionVerdict,
    /// True when homology alone is consistent with a suspension spectrum of a
    /// connected pointed space.
    pub homology_level_ok: bool,
}

/// Decide whether the surrogate can be a suspension spectrum of a connected
/// pointed space.
///
/// Obstructions, in order: reduced homology in degree <= 0; a mod-2 class of
/// spectrum degree `d` with `Sq^1` nonzero while `1 > d`, or with nonzero cup
/// square (computing `Sq^{|x|}`) while `|x| > d`.
pub fn suspension_obstruction(x: &SpectrumSurrogate) -> Result<ObstructionReport> {
    let hz = x.spec_homology(Ring::Z)?;
    let degree_violation = hz.nonzero_degrees().into_iter().find(|&k| k <= 0);
    let homology_level_ok = degree_violation.is_none();
    if let Some(degree) = degree_violation {
        return Ok(ObstructionReport {
            verdict: SuspensionVerdict::Obstructed {
                reason: ObstructionReason::HomologyDegree { degree },
            },
            homology_level_ok,
        });
    }

    let cx = x.complex();
    for c in 1..=cx.dim() {
        let classes = cx.cohomology_basis(c);
        if classes.is_empty() {
            continue;
        }
        let class_degree = c as i64 - x.shift;
        // Sq^1 as the integral Bockstein: unstable when 1 > class degree.
        if 1 > class_degree {
            for v in &classes {
                let b = cx.bockstein(c, v);
                if !cx.is_coboundary(c + 1, &b) {
                    return Ok(ObstructionReport {
                        verdict: SuspensionVerdict::Obstructed {
                            reason: ObstructionReason::SqInstability { sq: 1, class_degree },
                        },
                        homology_level_ok,
                    });
                }
            }
        }
        // Sq^{|x|} as the cup square: unstable when |x| > class degree,
        // i.e. when the shift is positive.
        if 2 * c <= cx.dim() && (c as i64) > class_degree {
            for v in &classes {
                let sq = cx.cup(c, v, c, v);
                if !cx.is_coboundary(2 * c, &sq) {
                    return Ok(ObstructionReport {
                        verdict: SuspensionVerdict::Obstructed {
                            reason: ObstructionReason::SqInstability {
                                sq: c as u32,
                                class_degree,
                            },
                        },
                        homology_level_ok,
                    });
                }
            }
        }
    }
    Ok(ObstructionReport { verdict: SuspensionVerdict::Possible, homology_level_ok })
}

// -- named complexes --------------------------------------------------------

/// Boundary of the (n+1)-simplex: the n-sphere.
pub fn sphere_complex(n: usize) -> SimplicialComplex {
    let verts: Vec<u32> = (0..=(n as u32 + 1)).collect();
    let facets: Vec<Vec<u32>> = (0..verts.len())
        .map(|omit| {
            verts.iter().enumerate().filter(|&(i, _)| i != omit).map(|(_, &v)| v).collect()
        })
        .collect();
    SimplicialComplex::from_facets(&facets).expect("sphere facets are valid")
}

/// The 7-vertex torus.
pub fn torus_complex() -> SimplicialComplex {
    let facets: Vec<Vec<u32>> = (0..7u32)
        .flat_map(|i| vec![vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    SimplicialComplex::from_facets(&facets).expect("torus facets are valid")
}

/// The 6-vertex projective plane.
pub fn rp2_complex() -> SimplicialComplex {
    let facets: Vec<Vec<u32>> = vec![
        vec![1, 2, 3],
        vec![1, 2, 4],
        vec![1, 3, 5],
        vec![1, 4, 6],
        vec![1, 5, 6],
        vec![2, 3, 6],
        vec![2, 4, 5],
        vec![2, 5, 6],
        vec![3, 4, 5],
        vec![3, 4, 6],
    ];
    SimplicialComplex::from_facets(&facets).expect("projective plane facets are valid")
}

/// The minimal 9-vertex complex projective plane.
///
/// Vertices are Z3 x Z3 via `v = 3a + b`; the 36 facets are the translation
/// orbits of four seed facets. The tests verify the f-vector, the homology,
/// and the nonvanishing cup square by exhaustive cochain computation.
pub fn cp2_complex() -> SimplicialComplex {
    let seeds: [[u32; 5]; 4] =
        [[0, 1, 2, 3, 6], [1, 2, 3, 4, 6], [0, 1, 2, 5, 6], [0, 1, 3, 5, 6]];
    let translate = |v: u32, x: u32, y: u32| -> u32 {
        let (a, b) = (v / 3, v % 3);
        3 * ((a + x) % 3) + ((b + y) % 3)
    };
    let mut facets = Vec::with_capacity(36);
    for seed in &seeds {
        for x in 0..3 {
            for y in 0..3 {
                let mut f: Vec<u32> = seed.iter().map(|&v| translate(v, x, y)).collect();
                f.sort_unstable();
                facets.push(f);
            }
        }
    }
    SimplicialComplex::from_facets(&facets).expect("projective plane facets are valid")
}

/// Parse a named complex or sphere-wedge literal into a surrogate.
pub fn named_surrogate(name: &str) -> Result<SpectrumSurrogate> {
    match name {
        "CP2" | "cp2" => Ok(SpectrumSurrogate::new(cp2_complex(), 0, "CP2")),
        "T2" | "t2" => Ok(SpectrumSurrogate::new(torus_complex(), 0, "T2")),
        "RP2" | "rp2" => Ok(SpectrumSurrogate::new(rp2_complex(), 0, "RP2")),
        other => {
            let wedge = SphereWedge::parse(other)?;
            Ok(sphere_wedge_surrogate(&wedge))
        }
    }
}

/// Build the surrogate of a wedge of sphere spectra.
pub fn sphere_wedge_surrogate(wedge: &SphereWedge) -> SpectrumSurrogate {
    let mut out: Option<SpectrumSurrogate> = None;
    for &d in &wedge.dims {
        let s = SpectrumSurrogate::new(sphere_complex(d as usize), 0, format!("S{d}"));
        out = Some(match out {
            None => s,
            Some(acc) => acc.wedge(&s),
        });
    }
    let mut s = out.expect("wedge has at least one summand");
    s = s.shifted(wedge.shift);
    s.label = wedge.to_string();
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homlin::DegreeRanks;

    #[test]
    fn sphere_surrogate_homology() {
        let s2 = SpectrumSurrogate::new(sphere_complex(2), 0, "S2");
        let h = s2.spec_homology(Ring::Z).unwrap();
        assert_eq!(h, GradedRanks::from_free(&[(2, 1)]));
    }

    #[test]
    fn desuspended_cp2_homology_degrees() {
        let x = SpectrumSurrogate::new(cp2_complex(), 1, "desusp CP2");
        let h = x.spec_homology(Ring::Z).unwrap();
        assert_eq!(h, GradedRanks::from_free(&[(1, 1), (3, 1)]));
    }

    #[test]
    fn torus_surrogate_homology() {
        let t = SpectrumSurrogate::new(torus_complex(), 0, "T2");
        let h = t.spec_homology(Ring::Z).unwrap();
        assert_eq!(h, GradedRanks::from_free(&[(1, 2), (2, 1)]));
    }

    #[test]
    fn wedge_and_shift_identities() {
        let w = SphereWedge::parse("S1+S1+S2").unwrap();
        let s = sphere_wedge_surrogate(&w);
        let h = s.spec_homology(Ring::Z).unwrap();
        assert_eq!(h, GradedRanks::from_free(&[(1, 2), (2, 1)]));
        // shift(S0, 3) has homology {3: 1}.
        let s0 = sphere_wedge_surrogate(&SphereWedge::parse("S0").unwrap());
        let shifted = s0.shifted(3);
        assert_eq!(shifted.spec_homology(Ring::Z).unwrap(), GradedRanks::from_free(&[(3, 1)]));
    }

    #[test]
    fn suspension_isomorphism_property() {
        for name in ["T2", "RP2", "S1+S2"] {
            let x = named_surrogate(name).unwrap();
            for n in [-2i64, 1, 3] {
                let a = x.shifted(n).spec_homology(Ring::Z).unwrap();
                let b = x.spec_homology(Ring::Z).unwrap().shifted(n);
                assert_eq!(a, b, "{name} shift {n}");
            }
            // Suspending the complex leaves the represented homology alone.
            let c = x.resuspended().spec_homology(Ring::Z).unwrap();
            assert_eq!(c, x.spec_homology(Ring::Z).unwrap(), "{name} resuspension");
        }
    }

    #[test]
    fn wedge_homology_is_additive() {
        let a = named_surrogate("T2").unwrap();
        let b = named_surrogate("S1+S2").unwrap();
        let w = a.wedge(&b);
        let sum = a
            .spec_homology(Ring::Z)
            .unwrap()
            .sum(&b.spec_homology(Ring::Z).unwrap());
        assert_eq!(w.spec_homology(Ring::Z).unwrap(), sum);
    }

    #[test]
    fn cp2_fixture_is_the_minimal_triangulation() {
        let c = cp2_complex();
        assert_eq!(c.f_vector(), vec![9, 36, 84, 90, 36]);
        let h = c.homology(Ring::Z).unwrap();
        assert_eq!(h, GradedRanks::from_free(&[(0, 1), (2, 1), (4, 1)]));
        // The generator of H^2 has nonvanishing cup square.
        let h2 = c.cohomology_basis(2);
        assert_eq!(h2.len(), 1);
        let sq = c.cup(2, &h2[0], 2, &h2[0]);
        assert!(!c.is_coboundary(4, &sq));
    }

    #[test]
    fn desuspended_cp2_is_obstructed_but_passes_degree_test() {
        let x = SpectrumSurrogate::new(cp2_complex(), 1, "desusp CP2");
        let report = suspension_obstruction(&x).unwrap();
        assert!(report.homology_level_ok);
        assert_eq!(
            report.verdict,
            SuspensionVerdict::Obstructed {
                reason: ObstructionReason::SqInstability { sq: 2, class_degree: 1 }
            }
        );
    }

    #[test]
    fn honest_suspension_spectra_pass() {
        for name in ["S2", "T2", "RP2", "S1+S1+S2"] {
            let x = named_surrogate(name).unwrap();
            let report = suspension_obstruction(&x).unwrap();
            assert_eq!(report.verdict, SuspensionVerdict::Possible, "{name}");
        }
    }

    #[test]
    fn negative_degree_homology_is_obstructed() {
        let s1 = named_surrogate("S1").unwrap();
        let x = s1.shifted(-2);
        let report = suspension_obstruction(&x).unwrap();
        assert!(!report.homology_level_ok);
        assert_eq!(
            report.verdict,
            SuspensionVerdict::Obstructed {
                reason: ObstructionReason::HomologyDegree { degree: -1 }
            }
        );
    }

    #[test]
    fn rp2_torsion_shows_in_surrogate_homology() {
        let x = named_surrogate("RP2").unwrap();
        let h = x.spec_homology(Ring::Z).unwrap();
        let mut expected = GradedRanks::new();
        expected.insert(1, DegreeRanks { free: 0, torsion: vec![2] });
        assert_eq!(h, expected);
    }
}
