//! Global problem parameters and gauge normalization.
//!
//! Data with background levels (c_l, c_r) and dispersion ω are reduced to the
//! normalized case c_r = 0 via the affine symmetry
//! (ω, u) ↦ (αω − β, α·u(x − βt, αt) + β), which preserves both
//! (c_l+ω)/(c_r+ω) and (m+ω)/(c_r+ω).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Normalized problem parameters: left background level `c` (right level is 0),
/// dispersion `omega`, decay order `l`, and the cached branch point
/// `i·sqrt(c/(4(c+ω)))` of the left wavenumber.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct ProblemParams {
    pub c: f64,
    pub omega: f64,
    pub l: u32,
    /// |branch point| = sqrt(c / (4(c+ω))); the branch point itself is i·k0.
    pub k0: f64,
}

impl ProblemParams {
    /// Step case: requires ω > 0 and c > 0 (so c/ω > 0).
    pub fn new(c: f64, omega: f64, l: u32) -> Result<Self> {
        if !(omega > 0.0) {
            return Err(Error::Params(format!("omega must be positive, got {omega}")));
        }
        if !(c > 0.0) {
            return Err(Error::Params(format!(
                "c/omega > 0 required for the step case, got c = {c}"
            )));
        }
        Ok(ProblemParams {
            c,
            omega,
            l,
            k0: (c / (4.0 * (c + omega))).sqrt(),
        })
    }

    /// Degenerate c = 0 limit (vanishing background); the branch cut closes
    /// and z(k) = k.  Used by free-problem checks, not by the step pipeline.
    pub fn vanishing(omega: f64) -> Self {
        ProblemParams {
            c: 0.0,
            omega,
            l: 0,
            k0: 0.0,
        }
    }

    /// c/(4(c+ω)), the depth of the left potential plateau.
    pub fn depth(&self) -> f64 {
        self.c / (4.0 * (self.c + self.omega))
    }

    /// sqrt((c+ω)/ω), the Liouville stretch factor of the left half-line.
    pub fn stretch(&self) -> f64 {
        ((self.c + self.omega) / self.omega).sqrt()
    }

    /// z-coordinate of the left reconstruction point, |z| = (1/2)·sqrt(ω/(c+ω)).
    pub fn left_eval_im(&self) -> f64 {
        0.5 * (self.omega / (self.c + self.omega)).sqrt()
    }
}

/// Affine map (ω, u) ↦ (αω − β, αu(x − βt, αt) + β) that normalizes c_r to 0.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct GaugeTransform {
    pub alpha: f64,
    pub beta: f64,
}

impl GaugeTransform {
    pub fn is_identity(&self) -> bool {
        self.alpha == 1.0 && self.beta == 0.0
    }

    /// Apply to a velocity value (ignoring the argument rescaling).
    pub fn map_u(&self, u: f64) -> f64 {
        self.alpha * u + self.beta
    }

    pub fn map_omega(&self, omega: f64) -> f64 {
        self.alpha * omega - self.beta
    }
}

/// Normalize (c_l, c_r, ω) to c_r' = 0 with α = 1, β = -c_r.
///
/// Rejects (c_l+ω)/(c_r+ω) <= 0 outright; the range (0, 1) maps to the
/// excluded c/ω ∈ (-1, 0) family and is reported as out of scope, and the
/// ratio 1 gives a degenerate (stepless) background.
pub fn normalize_gauge(c_l: f64, c_r: f64, omega: f64) -> Result<(ProblemParams, GaugeTransform)> {
    let ratio = (c_l + omega) / (c_r + omega);
    if !ratio.is_finite() || ratio <= 0.0 {
        return Err(Error::Admissibility(format!(
            "(c_l+omega)/(c_r+omega) = {ratio:.6} must be positive"
        )));
    }
    if ratio == 1.0 {
        return Err(Error::Params(
            "c_l = c_r gives a stepless background (c = 0)".into(),
        ));
    }
    if ratio < 1.0 {
        return Err(Error::Params(format!(
            "(c_l+omega)/(c_r+omega) = {ratio:.6} < 1 maps to c/omega in (-1,0), \
             which this toolkit does not support"
        )));
    }
    let alpha = 1.0;
    let beta = -alpha * c_r;
    let params = ProblemParams::new(alpha * (c_l - c_r), alpha * (omega + c_r), 0)?;
    Ok((params, GaugeTransform { alpha, beta }))
}
