//! Threshold windows around the positive length spectrum.

use crate::cubegrid::CriticalValues;
use crate::error::{GfhError, Result};
use serde::Serialize;

/// A sublevel window `0 < eps < omega` pinching the positive critical values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub eps: f64,
    pub omega: f64,
}

impl Window {
    /// A window supplied by the caller; only the ordering is checkable here.
    pub fn explicit(eps: f64, omega: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < omega) {
            return Err(GfhError::WindowViolation(format!(
                "need 0 < eps < omega, got eps = {eps}, omega = {omega}"
            )));
        }
        Ok(Window { eps, omega })
    }

    /// Check the window against a detected positive spectrum.
    pub fn validate_against(&self, lmin: f64, lmax: f64) -> Result<()> {
        if !(self.eps < lmin) {
            return Err(GfhError::WindowViolation(format!(
                "eps = {} violates eps < lmin = {lmin}",
                self.eps
            )));
        }
        if !(self.omega > lmax) {
            return Err(GfhError::WindowViolation(format!(
                "omega = {} violates omega > lmax = {lmax}",
                self.omega
            )));
        }
        Ok(())
    }
}

/// Automatic window from detected critical values: `eps = lmin / 2`,
/// `omega = 2 lmax + 1`.
///
/// An empty positive spectrum is an error; the caller must pass an explicit
/// window in that case (the empty Legendrian is the legitimate instance).
pub fn choose_window(crits: &CriticalValues) -> Result<Window> {
    match crits.spectrum_bounds() {
        Some((lmin, lmax)) => Ok(Window { eps: 0.5 * lmin, omega: 2.0 * lmax + 1.0 }),
        None => Err(GfhError::WindowViolation(
            "no positive critical values detected; supply an explicit window".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubegrid::{CriticalCluster, ValueSign};

    fn crits(values: &[f64]) -> CriticalValues {
        CriticalValues {
            clusters: values
                .iter()
                .map(|&v| CriticalCluster {
                    center: v,
                    sign: if v > 0.0 {
                        ValueSign::Positive
                    } else if v < 0.0 {
                        ValueSign::Negative
                    } else {
                        ValueSign::Zero
                    },
                    support: 1,
                })
                .collect(),
            value_resolution: 1e-6,
        }
    }

    #[test]
    fn formula_from_spectrum() {
        let w = choose_window(&crits(&[-4.0, 0.0, 4.0])).unwrap();
        assert_eq!((w.eps, w.omega), (2.0, 9.0));
        let w = choose_window(&crits(&[1.0, 3.0])).unwrap();
        assert_eq!((w.eps, w.omega), (0.5, 7.0));
    }

    #[test]
    fn empty_positive_spectrum_is_an_error() {
        assert!(choose_window(&crits(&[0.0])).is_err());
        assert!(choose_window(&crits(&[])).is_err());
        // ...but an explicit override is accepted.
        let w = Window::explicit(1.0, 2.0).unwrap();
        assert_eq!((w.eps, w.omega), (1.0, 2.0));
    }

    #[test]
    fn explicit_window_ordering_checked() {
        assert!(Window::explicit(2.0, 1.0).is_err());
        assert!(Window::explicit(-1.0, 1.0).is_err());
    }
}
