//! Stable stems of the sphere through the published horizon, and group
//! lookups for wedges of sphere spectra.

use crate::error::{GfhError, Result};
use serde::Serialize;

/// Stable homotopy groups of the sphere spectrum for stems 0 through 8.
/// Anything past the horizon is a hard error, never an extrapolation.
pub const PI_STEM_TABLE: [&str; 9] =
    ["Z", "Z/2", "Z/2", "Z/24", "0", "0", "Z/2", "Z/240", "Z/2 x Z/2"];

pub const PI_STEM_HORIZON: i64 = 8;

/// A finite wedge of sphere spectra with an overall shift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphereWedge {
    /// Sphere dimensions, one entry per wedge summand.
    pub dims: Vec<i64>,
    pub shift: i64,
}

impl SphereWedge {
    pub fn new(mut dims: Vec<i64>, shift: i64) -> Self {
        dims.sort_unstable();
        SphereWedge { dims, shift }
    }

    /// Parse the compact literal syntax, e.g. `"S1+S1+S2 @shift 0"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (spheres, shift) = match text.split_once("@shift") {
            Some((a, b)) => {
                let shift: i64 = b.trim().parse().map_err(|_| {
                    GfhError::InvalidInput(format!("bad shift in sphere wedge {text:?}"))
                })?;
                (a.trim(), shift)
            }
            None => (text, 0),
        };
        let mut dims = Vec::new();
        for part in spheres.split('+') {
            let part = part.trim();
            let rest = part
                .strip_prefix('S')
                .or_else(|| part.strip_prefix('s'))
                .ok_or_else(|| {
                    GfhError::InvalidInput(format!("sphere summand {part:?} must look like S<n>"))
                })?;
            let n: i64 = rest.parse().map_err(|_| {
                GfhError::InvalidInput(format!("bad sphere dimension in {part:?}"))
            })?;
            if n < 0 {
                return Err(GfhError::InvalidInput("sphere dimensions must be >= 0".into()));
            }
            dims.push(n);
        }
        if dims.is_empty() {
            return Err(GfhError::InvalidInput("empty sphere wedge".into()));
        }
        Ok(SphereWedge::new(dims, shift))
    }
}

impl std::fmt::Display for SphereWedge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let body =
            self.dims.iter().map(|d| format!("S{d}")).collect::<Vec<_>>().join("+");
        if self.shift != 0 {
            write!(f, "{body} @shift {}", self.shift)
        } else {
            write!(f, "{body}")
        }
    }
}

/// `pi_k` of a wedge of sphere spectra, as a direct-sum expression string.
///
/// Each summand contributes the stem `k - (dim + shift)`; negative stems are
/// zero, stems past the table horizon are an error.
pub fn pi_s_lookup(wedge: &SphereWedge, k: i64) -> Result<String> {
    let mut parts = Vec::new();
    for &d in &wedge.dims {
        let eff = d + wedge.shift;
        if eff < 0 {
            return Err(GfhError::InvalidInput(format!(
                "summand S{d} with shift {} has negative dimension; pi lookup undefined",
                wedge.shift
            )));
        }
        let stem = k - eff;
        if stem < 0 {
            continue;
        }
        if stem > PI_STEM_HORIZON {
            return Err(GfhError::InvalidInput(format!(
                "table horizon exceeded: stem {stem} is beyond {PI_STEM_HORIZON}"
            )));
        }
        let entry = PI_STEM_TABLE[stem as usize];
        if entry != "0" {
            parts.push(entry.to_string());
        }
    }
    if parts.is_empty() {
        Ok("0".into())
    } else {
        Ok(parts.join(" + "))
    }
}
