//! Symbolic descriptors of linear-at-infinity generating families.
//!
//! A descriptor evaluates as `f(x, eta) = core(x, eta) + A(eta)` where the
//! core (a polynomial plus optional piecewise-cubic bumps) is windowed to
//! vanish outside its declared support box, and `A` is a nonzero linear
//! functional on the fiber. Quadratic stabilization terms in extra fiber
//! variables are tracked separately so the core support stays compact.

use crate::error::{GfhError, Result};
use serde::{Deserialize, Serialize};

/// Cubic smoothstep on [0, 1], clamped outside.
pub fn smoothstep(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    x * x * (3.0 - 2.0 * x)
}

/// One monomial of the core polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub coeff: f64,
    /// Exponent per variable, ordered base variables then core fiber variables.
    pub exponents: Vec<u32>,
}

/// A compactly supported piecewise-cubic bump, for perturbation experiments.
#[derive(Debug, Clone, PartialEq)]
pub struct Bump {
    pub center: Vec<f64>,
    pub radius: Vec<f64>,
    pub amplitude: f64,
}

/// Sign of one quadratic stabilization term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StabSign {
    Plus,
    Minus,
}

impl StabSign {
    pub fn factor(self) -> f64 {
        match self {
            StabSign::Plus => 1.0,
            StabSign::Minus => -1.0,
        }
    }
}

/// Symbolic description of a linear-at-infinity generating family
/// `f: B x R^N -> R`.
#[derive(Debug, Clone, PartialEq)]
pub struct GFDescriptor {
    base_dim: usize,
    core_fiber_dim: usize,
    stab_signs: Vec<StabSign>,
    core: Vec<Monomial>,
    bumps: Vec<Bump>,
    /// Support interval per base + core-fiber variable.
    support: Vec<(f64, f64)>,
    /// Fraction of each support half-width used for the smooth taper.
    blend_radius: f64,
    /// The linear tail on the core fiber variables; must be nonzero.
    tail: Vec<f64>,
}

impl GFDescriptor {
    pub fn new(
        base_dim: usize,
        core_fiber_dim: usize,
        core: Vec<Monomial>,
        support: Vec<(f64, f64)>,
        blend_radius: f64,
        tail: Vec<f64>,
    ) -> Result<Self> {
        let d = GFDescriptor {
            base_dim,
            core_fiber_dim,
            stab_signs: Vec::new(),
            core,
            bumps: Vec::new(),
            support,
            blend_radius,
            tail,
        };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        let nvars = self.base_dim + self.core_fiber_dim;
        if self.core_fiber_dim < 1 {
            return Err(GfhError::InvalidInput("fiber dimension must be at least 1".into()));
        }
        if self.tail.len() != self.core_fiber_dim {
            return Err(GfhError::InvalidInput(format!(
                "tail has {} coefficients for {} fiber variables",
                self.tail.len(),
                self.core_fiber_dim
            )));
        }
        if self.tail.iter().all(|&c| c == 0.0) {
            return Err(GfhError::InvalidInput("the linear tail must be nonzero".into()));
        }
        if self.support.len() != nvars {
            return Err(GfhError::InvalidInput(format!(
                "support box has {} intervals for {} variables",
                self.support.len(),
                nvars
            )));
        }
        for (i, &(lo, hi)) in self.support.iter().enumerate() {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(GfhError::InvalidInput(format!(
                    "support interval {i} must be finite with lo < hi"
                )));
            }
        }
        if !(self.blend_radius > 0.0 && self.blend_radius < 1.0) {
            return Err(GfhError::InvalidInput("blend radius must lie in (0, 1)".into()));
        }
        for m in &self.core {
            if m.exponents.len() != nvars {
                return Err(GfhError::InvalidInput(format!(
                    "monomial has {} exponents for {} variables",
                    m.exponents.len(),
                    nvars
                )));
            }
        }
        for b in &self.bumps {
            if b.center.len() != nvars || b.radius.len() != nvars {
                return Err(GfhError::InvalidInput("bump center/radius arity mismatch".into()));
            }
            for i in 0..nvars {
                let (lo, hi) = self.support[i];
                if b.radius[i] <= 0.0 || b.center[i] - b.radius[i] < lo || b.center[i] + b.radius[i] > hi {
                    return Err(GfhError::InvalidInput(
                        "bump support must lie inside the core support box".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn with_bump(mut self, bump: Bump) -> Result<Self> {
        self.bumps.push(bump);
        self.validate()?;
        Ok(self)
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    /// Total fiber dimension `N`, including stabilization variables.
    pub fn fiber_dim(&self) -> usize {
        self.core_fiber_dim + self.stab_signs.len()
    }

    pub fn core_fiber_dim(&self) -> usize {
        self.core_fiber_dim
    }

    pub fn stab_signs(&self) -> &[StabSign] {
        &self.stab_signs
    }

    pub fn support(&self) -> &[(f64, f64)] {
        &self.support
    }

    pub fn blend_radius(&self) -> f64 {
        self.blend_radius
    }

    pub fn tail(&self) -> &[f64] {
        &self.tail
    }

    pub fn core(&self) -> &[Monomial] {
        &self.core
    }

    pub fn bumps(&self) -> &[Bump] {
        &self.bumps
    }

    /// The descriptor with stabilization variables dropped; its difference
    /// function has the same critical values.
    pub fn without_stabilization(&self) -> GFDescriptor {
        let mut d = self.clone();
        d.stab_signs.clear();
        d
    }

    /// Stabilize by adding `sign * eta'^2` in a fresh fiber variable. The
    /// tail is unchanged, so the result is still linear-at-infinity.
    pub fn stabilize(&self, sign: StabSign) -> GFDescriptor {
        let mut d = self.clone();
        d.stab_signs.push(sign);
        d
    }

    /// Smooth window that is 1 well inside the support box and 0 outside it.
    ///
    /// Only fiber variables are tapered: linearity-at-infinity is a condition
    /// on the fiber, while the base intervals delimit the base manifold
    /// itself.
    fn window_weight(&self, vars: &[f64]) -> f64 {
        let mut w = 1.0;
        for (i, &(lo, hi)) in self.support.iter().enumerate().skip(self.base_dim) {
            let mid = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            let xi = ((vars[i] - mid) / half).abs();
            if xi >= 1.0 {
                return 0.0;
            }
            let inner = 1.0 - self.blend_radius;
            if xi > inner {
                w *= 1.0 - smoothstep((xi - inner) / self.blend_radius);
            }
        }
        w
    }

    fn polynomial_value(&self, vars: &[f64]) -> f64 {
        let mut total = 0.0;
        for m in &self.core {
            let mut v = m.coeff;
            for (x, &e) in vars.iter().zip(&m.exponents) {
                v *= x.powi(e as i32);
            }
            total += v;
        }
        total
    }

    fn bump_value(&self, vars: &[f64]) -> f64 {
        let mut total = 0.0;
        for b in &self.bumps {
            let mut v = b.amplitude;
            for i in 0..vars.len() {
                let xi = ((vars[i] - b.center[i]) / b.radius[i]).abs();
                if xi >= 1.0 {
                    v = 0.0;
                    break;
                }
                v *= 1.0 - smoothstep(xi);
            }
            total += v;
        }
        total
    }

    /// The compactly supported part of `f` (windowed polynomial plus bumps).
    pub fn core_value(&self, point: &[f64]) -> f64 {
        let vars = &point[..self.base_dim + self.core_fiber_dim];
        let w = self.window_weight(vars);
        if w == 0.0 && self.bumps.is_empty() {
            return 0.0;
        }
        w * self.polynomial_value(vars) + self.bump_value(vars)
    }

    /// Evaluate `f` at `[base..., core fiber..., stab fiber...]`.
    pub fn eval(&self, point: &[f64]) -> f64 {
        let nvars = self.base_dim + self.core_fiber_dim;
        debug_assert_eq!(point.len(), nvars + self.stab_signs.len());
        let mut v = self.core_value(point);
        for (i, &c) in self.tail.iter().enumerate() {
            v += c * point[self.base_dim + i];
        }
        for (j, s) in self.stab_signs.iter().enumerate() {
            let x = point[nvars + j];
            v += s.factor() * x * x;
        }
        v
    }
}

// ---------------------------------------------------------------------------
// JSON form: every real number travels as a decimal string.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct MonomialJson {
    coeff: String,
    exponents: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct BumpJson {
    center: Vec<String>,
    radius: Vec<String>,
    amplitude: String,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct DescriptorJson {
    base_dim: usize,
    fiber_dim: usize,
    core: Vec<MonomialJson>,
    support_box: Vec<[String; 2]>,
    blend_radius: String,
    tail: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    bumps: Vec<BumpJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    stab: Vec<i8>,
}

fn parse_real(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| GfhError::InvalidInput(format!("bad decimal number {s:?}")))
}

fn fmt_real(v: f64) -> String {
    format!("{v}")
}

impl GFDescriptor {
    pub fn to_json(&self) -> serde_json::Value {
        let doc = DescriptorJson {
            base_dim: self.base_dim,
            fiber_dim: self.core_fiber_dim,
            core: self
                .core
                .iter()
                .map(|m| MonomialJson { coeff: fmt_real(m.coeff), exponents: m.exponents.clone() })
                .collect(),
            support_box: self
                .support
                .iter()
                .map(|&(lo, hi)| [fmt_real(lo), fmt_real(hi)])
                .collect(),
            blend_radius: fmt_real(self.blend_radius),
            tail: self.tail.iter().map(|&c| fmt_real(c)).collect(),
            bumps: self
                .bumps
                .iter()
                .map(|b| BumpJson {
                    center: b.center.iter().map(|&c| fmt_real(c)).collect(),
                    radius: b.radius.iter().map(|&c| fmt_real(c)).collect(),
                    amplitude: fmt_real(b.amplitude),
                })
                .collect(),
            stab: self
                .stab_signs
                .iter()
                .map(|s| match s {
                    StabSign::Plus => 1,
                    StabSign::Minus => -1,
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("descriptor serialization cannot fail")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<GFDescriptor> {
        let doc: DescriptorJson = serde_json::from_value(value.clone())?;
        let core = doc
            .core
            .iter()
            .map(|m| Ok(Monomial { coeff: parse_real(&m.coeff)?, exponents: m.exponents.clone() }))
            .collect::<Result<Vec<_>>>()?;
        let support = doc
            .support_box
            .iter()
            .map(|[lo, hi]| Ok((parse_real(lo)?, parse_real(hi)?)))
            .collect::<Result<Vec<_>>>()?;
        let tail = doc.tail.iter().map(|s| parse_real(s)).collect::<Result<Vec<_>>>()?;
        let mut d = GFDescriptor::new(
            doc.base_dim,
            doc.fiber_dim,
            core,
            support,
            parse_real(&doc.blend_radius)?,
            tail,
        )?;
        for b in &doc.bumps {
            let bump = Bump {
                center: b.center.iter().map(|s| parse_real(s)).collect::<Result<Vec<_>>>()?,
                radius: b.radius.iter().map(|s| parse_real(s)).collect::<Result<Vec<_>>>()?,
                amplitude: parse_real(&b.amplitude)?,
            };
            d = d.with_bump(bump)?;
        }
        for &s in &doc.stab {
            match s {
                1 => d = d.stabilize(StabSign::Plus),
                -1 => d = d.stabilize(StabSign::Minus),
                other => {
                    return Err(GfhError::InvalidInput(format!(
                        "stab entries must be 1 or -1, got {other}"
                    )))
                }
            }
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfam::fixtures;

    #[test]
    fn cubic_matches_closed_form_inside_window() {
        let g = fixtures::cubic();
        // Inside the untapered region, f = eta^3 - 3 eta exactly.
        for eta in [-1.4_f64, -1.0, -0.3, 0.0, 0.5, 1.0, 1.5] {
            let expected = eta.powi(3) - 3.0 * eta;
            assert!((g.eval(&[eta]) - expected).abs() < 1e-12, "eta = {eta}");
        }
        // Outside the support box, f equals the linear tail.
        for eta in [-3.0_f64, 2.0, 2.5, 4.0] {
            assert_eq!(g.eval(&[eta]), eta);
        }
    }

    #[test]
    fn cubic_taper_is_monotone() {
        // No spurious critical points in the blend region.
        let g = fixtures::cubic();
        let mut prev = g.eval(&[1.2]);
        let mut eta = 1.2;
        while eta < 2.2 {
            eta += 0.001;
            let v = g.eval(&[eta]);
            assert!(v > prev, "taper not increasing at eta = {eta}");
            prev = v;
        }
    }

    #[test]
    fn stabilization_adds_square_and_keeps_tail() {
        let g = fixtures::cubic();
        let gp = g.stabilize(StabSign::Plus);
        let gm = g.stabilize(StabSign::Minus);
        assert_eq!(gp.fiber_dim(), 2);
        assert_eq!(gp.eval(&[0.5, 2.0]), g.eval(&[0.5]) + 4.0);
        assert_eq!(gm.eval(&[0.5, 2.0]), g.eval(&[0.5]) - 4.0);
    }

    #[test]
    fn zero_tail_rejected() {
        assert!(GFDescriptor::new(0, 1, vec![], vec![(-1.0, 1.0)], 0.25, vec![0.0]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = fixtures::cubic().stabilize(StabSign::Minus);
        let j = g.to_json();
        let back = GFDescriptor::from_json(&j).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn bump_changes_values_only_inside_its_support() {
        let g = fixtures::cubic();
        let gb = fixtures::cubic_with_bump();
        assert_eq!(g.eval(&[-0.5]), gb.eval(&[-0.5]));
        assert!(gb.eval(&[1.0]) > g.eval(&[1.0]));
    }
}
