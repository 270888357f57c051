//! Spectral parameter maps.
//!
//! λ = k² + 1/4 = z² + ω/(4(c+ω)), with z(k) = sqrt(k² + c/(4(c+ω))) cut
//! along the segment [-i·k0, i·k0] and fixed by z ~ k at infinity.
//!
//! z is evaluated as the product of square roots of (k - i·k0)(k + i·k0)
//! with each factor's angle measured in (-π/2, 3π/2], which pins the cut to
//! the segment and never flips branch near it.  On-cut values require an
//! explicit side: `Plus` is the Re k > 0 side (where z > 0), `Minus` the
//! other.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ProblemParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CutSide {
    /// Limit from Re k > 0; on the segment this gives z = +|z|.
    Plus,
    /// Limit from Re k < 0; z = -|z|.
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub k: Complex64,
    pub z: Complex64,
    pub lambda: Complex64,
}

/// Angle of w measured in (-π/2, 3π/2].
fn angle_from_below(w: Complex64) -> f64 {
    let a = w.arg();
    if a <= -std::f64::consts::FRAC_PI_2 {
        a + 2.0 * std::f64::consts::PI
    } else {
        a
    }
}

/// z(k) for k off the cut (errors on the open cut without a side).
pub fn z_of_k(k: Complex64, p: &ProblemParams) -> Result<Complex64> {
    if p.k0 == 0.0 {
        return Ok(k);
    }
    if k.re == 0.0 && k.im.abs() < p.k0 {
        return Err(Error::CutSideRequired);
    }
    Ok(z_product(k, p.k0))
}

/// z(k) for k on (or near) the cut, approached from the given side.
pub fn z_on_cut(k_im: f64, side: CutSide, p: &ProblemParams) -> Complex64 {
    debug_assert!(k_im.abs() <= p.k0 + 1e-15);
    let mag = (p.k0 * p.k0 - k_im * k_im).max(0.0).sqrt();
    match side {
        CutSide::Plus => Complex64::new(mag, 0.0),
        CutSide::Minus => Complex64::new(-mag, 0.0),
    }
}

fn z_product(k: Complex64, k0: f64) -> Complex64 {
    let f1 = k - Complex64::new(0.0, k0);
    let f2 = k + Complex64::new(0.0, k0);
    let r = (f1.norm() * f2.norm()).sqrt();
    let phase = 0.5 * (angle_from_below(f1) + angle_from_below(f2));
    Complex64::from_polar(r, phase)
}

/// Full spectral point (k, z, λ); `side` is required only on the open cut.
pub fn spectral_maps(
    k: Complex64,
    p: &ProblemParams,
    side: Option<CutSide>,
) -> Result<SpectralPoint> {
    let lambda = k * k + 0.25;
    let z = if p.k0 > 0.0 && k.re == 0.0 && k.im.abs() < p.k0 {
        match side {
            Some(s) => z_on_cut(k.im, s, p),
            None => return Err(Error::CutSideRequired),
        }
    } else {
        z_of_k(k, p)?
    };
    Ok(SpectralPoint { k, z, lambda })
}

/// k(z) with k ~ z at infinity, cut along the real segment [-k0, k0] in z.
/// For real z in the open central interval, the limit from Im z > 0 is taken:
/// k = i·sqrt(k0² - z²) + 0·sign(z) (upper segment, side = sign of z).
pub fn k_of_z_upper(z: f64, p: &ProblemParams) -> (Complex64, Option<CutSide>) {
    let q = p.k0 * p.k0;
    if z.abs() >= p.k0 {
        // real k, same sign as z
        let k = z.signum() * (z * z - q).sqrt();
        (Complex64::new(k, 0.0), None)
    } else {
        let s = (q - z * z).sqrt();
        let side = if z >= 0.0 { CutSide::Plus } else { CutSide::Minus };
        (Complex64::new(0.0, s), Some(side))
    }
}
