//! Shearing functions and the level translation `lambda_alpha`.
//!
//! The shearing function is pinned piecewise: zero for `t <= 1`, the parabola
//! `-(t-1)^2/2` for `t >= u`, and on `(1, u)` the profile integrating
//! `H'(t) = -(u-1) s((t-1)/(u-1))` with `s` the cubic smoothstep. That gives
//! exact endpoint values, strict decrease, and `H'' < 0` on the open bridge,
//! at the cost of only C^1 matching at `t = u`.

use crate::error::{GfhError, Result};
use serde::{Deserialize, Serialize};

/// Shear parameters. All four constraints below tie them to the length
/// spectrum `[lmin, lmax]` of the Legendrian boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShearSpec {
    /// Bridge endpoint, `1 < u < min(sqrt(1 + lmin), 2)`.
    pub u: f64,
    /// Lower threshold magnitude, `0 < mu < min(lmin, (u-1)^2 / 2)`.
    pub mu: f64,
    /// Upper threshold, `Omega > lmax + lmax^2 / 2`.
    pub omega_upper: f64,
    /// Where the conical part hands over to the linear part, in (0, 1).
    pub t_minus: f64,
}

impl ShearSpec {
    pub fn new(u: f64, mu: f64, omega_upper: f64, t_minus: f64) -> Self {
        ShearSpec { u, mu, omega_upper, t_minus }
    }

    /// Check every constraint against the spectrum, naming the violated
    /// inequality in the error.
    pub fn validate(&self, lmin: f64, lmax: f64) -> Result<()> {
        if !(lmin > 0.0 && lmax >= lmin) {
            return Err(GfhError::InvalidInput(format!(
                "spectrum bounds must satisfy 0 < lmin <= lmax, got [{lmin}, {lmax}]"
            )));
        }
        let u_cap = (1.0 + lmin).sqrt().min(2.0);
        if !(self.u > 1.0 && self.u < u_cap) {
            return Err(GfhError::WindowViolation(format!(
                "u = {} violates 1 < u < min(sqrt(1 + lmin), 2) = {u_cap}",
                self.u
            )));
        }
        let mu_cap = lmin.min((self.u - 1.0).powi(2) / 2.0);
        if !(self.mu > 0.0 && self.mu < mu_cap) {
            return Err(GfhError::WindowViolation(format!(
                "mu = {} violates 0 < mu < min(lmin, (u-1)^2/2) = {mu_cap}",
                self.mu
            )));
        }
        let omega_floor = lmax + lmax * lmax / 2.0;
        if !(self.omega_upper > omega_floor) {
            return Err(GfhError::WindowViolation(format!(
                "Omega = {} violates lmax + lmax^2/2 < Omega, i.e. Omega > {omega_floor}",
                self.omega_upper
            )));
        }
        if !(self.t_minus > 0.0 && self.t_minus < 1.0) {
            return Err(GfhError::WindowViolation(format!(
                "t_minus = {} violates 0 < t_minus < 1",
                self.t_minus
            )));
        }
        Ok(())
    }

    /// The shearing function `H(t)`.
    pub fn h(&self, t: f64) -> f64 {
        if t <= 1.0 {
            0.0
        } else if t >= self.u {
            -0.5 * (t - 1.0) * (t - 1.0)
        } else {
            // Integral of -(u-1) s(x) with x = (t-1)/(u-1):
            // S(x) = x^3 - x^4/2, so H = -(u-1)^2 S(x).
            let b = self.u - 1.0;
            let x = (t - 1.0) / b;
            -b * b * (x.powi(3) - 0.5 * x.powi(4))
        }
    }

    /// Derivative `H'(t)`.
    pub fn h_prime(&self, t: f64) -> f64 {
        if t <= 1.0 {
            0.0
        } else if t >= self.u {
            -(t - 1.0)
        } else {
            let b = self.u - 1.0;
            let x = (t - 1.0) / b;
            -b * (3.0 * x * x - 2.0 * x.powi(3))
        }
    }

    /// The level translation `lambda_alpha(t) = (alpha - H(t)) / t`.
    pub fn lambda(&self, alpha: f64, t: f64) -> f64 {
        (alpha - self.h(t)) / t
    }

    /// Smallest `v > u` with `lambda_{-mu}(v) > lmax`, padded a little.
    ///
    /// For `t >= u` the inequality reads `t^2 - 2(1 + lmax) t + 1 - 2 mu > 0`.
    pub fn upper_cutoff(&self, lmax: f64) -> f64 {
        let s = 1.0 + lmax;
        let v = s + (s * s - 1.0 + 2.0 * self.mu).sqrt();
        1.05 * v.max(self.u)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "u": format!("{}", self.u),
            "mu": format!("{}", self.mu),
            "Omega": format!("{}", self.omega_upper),
            "tMinus": format!("{}", self.t_minus),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<ShearSpec> {
        #[derive(Deserialize)]
        struct ShearJson {
            u: String,
            mu: String,
            #[serde(rename = "Omega")]
            omega: String,
            #[serde(rename = "tMinus")]
            t_minus: String,
        }
        let doc: ShearJson = serde_json::from_value(value.clone())?;
        let parse = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .map_err(|_| GfhError::InvalidInput(format!("bad decimal number {s:?}")))
        };
        Ok(ShearSpec::new(
            parse(&doc.u)?,
            parse(&doc.mu)?,
            parse(&doc.omega)?,
            parse(&doc.t_minus)?,
        ))
    }
}

/// One sampled inequality check with its worst margin.
#[derive(Debug, Clone, Serialize)]
pub struct LambdaCheck {
    pub name: String,
    pub margin: f64,
    pub worst_t: f64,
    pub holds: bool,
}

/// Report of the sampled translation-function inequalities.
#[derive(Debug, Clone, Serialize)]
pub struct LambdaReport {
    pub pass: bool,
    pub samples: usize,
    pub t_max: f64,
    pub checks: Vec<LambdaCheck>,
}

/// Verify the translation-function inequalities by dense sampling.
///
/// Preconditions (the Choice inequalities and `u^2 - 1 < sigma < lmin`) are
/// errors; a violated sampled inequality makes the report fail with the
/// worst location recorded.
pub fn verify_lambda_lemmas(
    spec: &ShearSpec,
    lmin: f64,
    lmax: f64,
    sigma: f64,
    samples: usize,
) -> Result<LambdaReport> {
    spec.validate(lmin, lmax)?;
    if !(sigma > spec.u * spec.u - 1.0 && sigma < lmin) {
        return Err(GfhError::WindowViolation(format!(
            "sigma = {sigma} violates u^2 - 1 < sigma < lmin = min({}, {lmin})",
            spec.u * spec.u - 1.0
        )));
    }
    let samples = samples.max(10_000);
    let t_max = spec.upper_cutoff(lmax);
    let t_lo = 0.5 * spec.t_minus;

    let mut checks = Vec::new();
    let mut worst =
        |name: &str, margin: f64, t: f64, acc: Option<LambdaCheck>| -> Option<LambdaCheck> {
            match acc {
                Some(c) if c.margin <= margin => Some(c),
                _ => Some(LambdaCheck { name: name.into(), margin, worst_t: t, holds: margin > 0.0 }),
            }
        };

    // lambda_Omega(t) > lmax for all t.
    let mut c1: Option<LambdaCheck> = None;
    for i in 0..=samples {
        let t = t_lo + (t_max - t_lo) * i as f64 / samples as f64;
        c1 = worst("lambda_Omega > lmax", spec.lambda(spec.omega_upper, t) - lmax, t, c1);
    }
    checks.push(c1.unwrap());

    // -lmin < lambda_{-mu}(1) < 0 < lambda_{-mu}(u) < lmin.
    let l1 = spec.lambda(-spec.mu, 1.0);
    let lu = spec.lambda(-spec.mu, spec.u);
    checks.push(LambdaCheck {
        name: "-lmin < lambda_{-mu}(1)".into(),
        margin: l1 + lmin,
        worst_t: 1.0,
        holds: l1 + lmin > 0.0,
    });
    checks.push(LambdaCheck {
        name: "lambda_{-mu}(1) < 0".into(),
        margin: -l1,
        worst_t: 1.0,
        holds: l1 < 0.0,
    });
    checks.push(LambdaCheck {
        name: "0 < lambda_{-mu}(u)".into(),
        margin: lu,
        worst_t: spec.u,
        holds: lu > 0.0,
    });
    checks.push(LambdaCheck {
        name: "lambda_{-mu}(u) < lmin".into(),
        margin: lmin - lu,
        worst_t: spec.u,
        holds: lu < lmin,
    });

    // lambda_{-mu} reaches past lmax by the cutoff (so the cutoff is usable).
    let lv = spec.lambda(-spec.mu, t_max);
    checks.push(LambdaCheck {
        name: "lambda_{-mu}(t_max) > lmax".into(),
        margin: lv - lmax,
        worst_t: t_max,
        holds: lv > lmax,
    });

    // lambda_sigma decreasing on [1, u] with values in (0, lmin).
    let mut c_dec: Option<LambdaCheck> = None;
    let mut c_pos: Option<LambdaCheck> = None;
    let mut c_top: Option<LambdaCheck> = None;
    let m = samples.max(1000);
    let mut prev = spec.lambda(sigma, 1.0);
    for i in 0..=m {
        let t = 1.0 + (spec.u - 1.0) * i as f64 / m as f64;
        let v = spec.lambda(sigma, t);
        if i > 0 {
            c_dec = worst("lambda_sigma decreasing on [1, u]", prev - v, t, c_dec);
        }
        c_pos = worst("lambda_sigma > 0 on [1, u]", v, t, c_pos);
        c_top = worst("lambda_sigma < lmin on [1, u]", lmin - v, t, c_top);
        prev = v;
    }
    checks.push(c_dec.unwrap());
    checks.push(c_pos.unwrap());
    checks.push(c_top.unwrap());

    let pass = checks.iter().all(|c| c.holds);
    Ok(LambdaReport { pass, samples, t_max, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_matches_piecewise_form() {
        let s = ShearSpec::new(1.5, 0.05, 15.0, 0.5);
        assert_eq!(s.h(0.7), 0.0);
        assert_eq!(s.h(1.0), 0.0);
        assert_eq!(s.h(3.0), -2.0);
        // C^1 joint at u.
        assert!((s.h(1.5) - (-0.125)).abs() < 1e-12);
        assert!((s.h_prime(1.5) - (-0.5)).abs() < 1e-12);
        // Strictly decreasing across the bridge.
        let mut prev = 0.0;
        for i in 1..=100 {
            let t = 1.0 + 0.5 * i as f64 / 100.0;
            let v = s.h(t);
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn lambda_values_from_fixed_points() {
        let s = ShearSpec::new(1.5, 0.05, 15.0, 0.5);
        assert!((s.lambda(-0.1, 1.0) - (-0.1)).abs() < 1e-12);
        assert!((s.lambda(15.0, 3.0) - 17.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn choice_inequalities_are_named() {
        // lmin = 1, lmax = 2: Omega must exceed 2 + 2 = 4.
        let ok = ShearSpec::new(1.2, 0.01, 5.0, 0.5);
        assert!(ok.validate(1.0, 2.0).is_ok());
        let bad = ShearSpec::new(1.2, 0.01, 3.9, 0.5);
        let err = bad.validate(1.0, 2.0).unwrap_err().to_string();
        assert!(err.contains("lmax + lmax^2/2 < Omega"), "{err}");
        let bad_mu = ShearSpec::new(1.2, 0.5, 5.0, 0.5);
        let err = bad_mu.validate(1.0, 2.0).unwrap_err().to_string();
        assert!(err.contains("(u-1)^2/2"), "{err}");
    }

    #[test]
    fn lemma_report_passes_on_good_parameters() {
        let s = ShearSpec::new(1.4, 0.05, 4.5, 0.5);
        let r = verify_lambda_lemmas(&s, 1.0, 2.0, 0.98, 10_000).unwrap();
        assert!(r.pass, "{:?}", r.checks.iter().find(|c| !c.holds));
        assert!(r.checks.iter().all(|c| c.margin > 0.0));
    }

    #[test]
    fn sigma_bounds_are_strict() {
        let s = ShearSpec::new(1.4, 0.05, 4.5, 0.5);
        // sigma = u^2 - 1 exactly: precondition error.
        assert!(verify_lambda_lemmas(&s, 1.0, 2.0, 1.4 * 1.4 - 1.0, 10_000).is_err());
        assert!(verify_lambda_lemmas(&s, 1.0, 2.0, 1.0, 10_000).is_err());
    }
}
