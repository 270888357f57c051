//! Liouville transform machinery: the coordinate map y(x), the transformed
//! Schrödinger potential v(y), and the conserved quantities ℘ and H₀.
//!
//! y(x) = x - ∫_x^∞ (sqrt((m+ω)/ω) - 1) dr, with the integral beyond the grid
//! done in closed form against the exponential tail model.

use crate::datum::InitialDatum;
use crate::error::{Error, Result};
use crate::fd;
use crate::interp;
use crate::params::ProblemParams;
use crate::quad;
use serde::{Deserialize, Serialize};

/// sqrt((m+ω)/ω) samples; errors if m + ω ≤ 0 anywhere (no clamping).
pub fn weight_samples(d: &InitialDatum, p: &ProblemParams) -> Result<Vec<f64>> {
    d.m0.iter()
        .map(|&m| {
            if m + p.omega <= 0.0 {
                Err(Error::Datum(format!(
                    "m + omega = {} is not positive",
                    m + p.omega
                )))
            } else {
                Ok(((m + p.omega) / p.omega).sqrt())
            }
        })
        .collect()
}

/// Precomputed y(x) on the datum grid with tail extensions.
pub struct LiouvilleMap {
    pub x0: f64,
    pub h: f64,
    /// y at each grid node
    pub y: Vec<f64>,
    /// sqrt((m+ω)/ω) at each node (dy/dx)
    pub weight: Vec<f64>,
    stretch: f64,
    left_tail_int: f64,
    right_tail_int: f64,
}

impl LiouvilleMap {
    pub fn new(d: &InitialDatum, p: &ProblemParams) -> Result<Self> {
        let w = weight_samples(d, p)?;
        let n = d.len();
        let integrand: Vec<f64> = w.iter().map(|v| v - 1.0).collect();
        // right-limit overrides at breaks
        let mut cum = vec![0.0; n];
        let mut base = 0.0;
        for (a, b) in quad::slice_bounds(n, &d.breaks) {
            let mut piece: Vec<f64> = integrand[a..=b].to_vec();
            if d.breaks.contains(&a) {
                piece[0] = ((d.m_right_at(a) + p.omega) / p.omega).sqrt() - 1.0;
            }
            let c = quad::cumulative_piecewise(&piece, d.h, &[]);
            for (j, v) in c.iter().enumerate() {
                cum[a + j] = base + v;
            }
            base = cum[b];
        }
        let s = p.stretch();
        // ∫_{x_N}^∞ (w-1) ≈ A_r e^{-ρ x_N} / (2ωρ)
        let rt = &d.right_tail;
        let right_tail_int = rt.coeff * (-rt.rate * d.x_last()).exp() / (2.0 * p.omega * rt.rate);
        // ∫_{-∞}^{x_0} (w-s) ≈ A_l e^{ρ x_0} / (2 sqrt(ω(c+ω)) ρ)
        let lt = &d.left_tail;
        let left_tail_int = lt.coeff * (lt.rate * d.x0).exp()
            / (2.0 * (p.omega * (p.c + p.omega)).sqrt() * lt.rate);

        let total = cum[n - 1] + right_tail_int;
        let y: Vec<f64> = (0..n).map(|j| d.x(j) - (total - cum[j])).collect();
        Ok(LiouvilleMap {
            x0: d.x0,
            h: d.h,
            y,
            weight: w,
            stretch: s,
            left_tail_int,
            right_tail_int,
        })
    }

    pub fn x_last(&self) -> f64 {
        self.x0 + (self.y.len() - 1) as f64 * self.h
    }

    /// y(x), extended linearly (with tail slopes) beyond the grid.
    pub fn y_of_x(&self, x: f64) -> f64 {
        if x <= self.x0 {
            self.y[0] + self.stretch * (x - self.x0)
        } else if x >= self.x_last() {
            *self.y.last().unwrap() + (x - self.x_last())
        } else {
            interp::cubic_uniform(self.x0, self.h, &self.y, x)
        }
    }

    /// Inverse map by bisection + Newton (y is strictly increasing).
    pub fn x_of_y(&self, yq: f64) -> f64 {
        let y_first = self.y[0];
        let y_last = *self.y.last().unwrap();
        if yq <= y_first {
            return self.x0 + (yq - y_first) / self.stretch;
        }
        if yq >= y_last {
            return self.x_last() + (yq - y_last);
        }
        let mut lo = self.x0;
        let mut hi = self.x_last();
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if self.y_of_x(mid) < yq {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-14 * (1.0 + hi.abs()) {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// Residual tail pieces, exposed for the conserved-quantity assembly.
    pub fn tail_ints(&self) -> (f64, f64) {
        (self.left_tail_int, self.right_tail_int)
    }
}

/// liouville_y(d, x) at a grid node.
pub fn liouville_y(d: &InitialDatum, p: &ProblemParams, x: f64) -> Result<f64> {
    let map = LiouvilleMap::new(d, p)?;
    Ok(map.y_of_x(x))
}

/// Transformed potential v sampled on the image grid y(x_grid).
///
/// v = -m/(4(m+ω)) + (ω/4) m_xx/(m+ω)² - (5ω/16) m_x²/(m+ω)³,
/// with limits 0 (y → +∞) and -c/(4(c+ω)) (y → -∞).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampledPotential {
    pub y: Vec<f64>,
    pub v: Vec<f64>,
    /// -c/(4(c+ω)), the left plateau value
    pub left_level: f64,
}

pub fn schrodinger_potential(d: &InitialDatum, p: &ProblemParams) -> Result<SampledPotential> {
    let map = LiouvilleMap::new(d, p)?;
    let n = d.len();
    let mut v = vec![0.0; n];
    for (a, b) in quad::slice_bounds(n, &d.breaks) {
        if b - a < 6 {
            return Err(Error::Datum(
                "smooth slice too short for 4th-order differences".into(),
            ));
        }
        // at a slice-opening break the left-limit sample is wrong for this
        // side; substitute the right limit before differentiating
        let mut mm: Vec<f64> = d.m0[a..=b].to_vec();
        if d.breaks.contains(&a) {
            mm[0] = d.m_right_at(a);
        }
        let mx = fd::derivative1(&mm, d.h);
        let mxx = fd::derivative2(&mm, d.h);
        for j in a..=b {
            let m = mm[j - a];
            let mw = m + p.omega;
            if mw <= 0.0 {
                return Err(Error::Datum("m + omega not positive".into()));
            }
            v[j] = -m / (4.0 * mw) + 0.25 * p.omega * mxx[j - a] / (mw * mw)
                - (5.0 * p.omega / 16.0) * mx[j - a] * mx[j - a] / (mw * mw * mw);
        }
    }
    Ok(SampledPotential {
        y: map.y.clone(),
        v,
        left_level: -p.depth(),
    })
}

/// The conserved pair (℘, H₀).
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct ConservedPair {
    pub wp: f64,
    pub h0: f64,
}

/// ℘ and H₀ evaluated with base point x (a grid node) at time t.
///
/// ℘ = x(s-1) - c s t + ∫_{-∞}^x (w - s) + ∫_x^∞ (w - 1),  s = sqrt((c+ω)/ω),
/// H₀ = ∫_{-∞}^x (c - m) - ∫_x^∞ m - c(x+1) + c(3c+4ω)t/2.
pub fn conserved_quantities(
    d: &InitialDatum,
    p: &ProblemParams,
    x: f64,
    t: f64,
) -> Result<ConservedPair> {
    let j = d.index_of(x)?;
    let map = LiouvilleMap::new(d, p)?;
    let s = p.stretch();
    let (tail_l, tail_r) = map.tail_ints();

    // cumulative of (w - 1) is encoded in map.y: y_j = x_j - (total - cum_j)
    // => cum_j = y_j - x_j + total, and total = cum_N + tail_r.
    let n = d.len();
    let cum_of = |i: usize| {
        // reconstruct cum_i - cum_0 from the y samples
        (map.y[i] - d.x(i)) - (map.y[0] - d.x0)
    };
    let xj = d.x(j);
    let left_int = tail_l + cum_of(j) + (1.0 - s) * (xj - d.x0);
    let right_int = (cum_of(n - 1) - cum_of(j)) + tail_r;
    let wp = xj * (s - 1.0) - p.c * s * t + left_int + right_int;

    // H0: cumulative of m with break overrides
    let mut cum_m = vec![0.0; n];
    {
        let mut base = 0.0;
        for (a, b) in quad::slice_bounds(n, &d.breaks) {
            let mut piece: Vec<f64> = d.m0[a..=b].to_vec();
            if d.breaks.contains(&a) {
                piece[0] = d.m_right_at(a);
            }
            let c = quad::cumulative_piecewise(&piece, d.h, &[]);
            for (i, v) in c.iter().enumerate() {
                cum_m[a + i] = base + v;
            }
            base = cum_m[b];
        }
    }
    let lt = &d.left_tail;
    let rt = &d.right_tail;
    let tail_cm = -lt.coeff * (lt.rate * d.x0).exp() / lt.rate; // ∫_{-∞}^{x0} (c-m)
    let tail_m = rt.coeff * (-rt.rate * d.x_last()).exp() / rt.rate; // ∫_{xN}^∞ m
    let int_c_minus_m = tail_cm + p.c * (xj - d.x0) - cum_m[j];
    let int_m_right = (cum_m[n - 1] - cum_m[j]) + tail_m;
    let h0 = int_c_minus_m - int_m_right - p.c * (x + 1.0)
        + 0.5 * p.c * (3.0 * p.c + 4.0 * p.omega) * t;

    Ok(ConservedPair { wp, h0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::synth;

    fn p11() -> ProblemParams {
        ProblemParams::new(1.0, 1.0, 0).unwrap()
    }

    #[test]
    fn zero_momentum_identity_map() {
        let d = InitialDatum::from_m(
            -5.0,
            0.1,
            vec![0.0; 101],
            0.0,
            crate::datum::Tail::ZERO,
            crate::datum::Tail::ZERO,
        )
        .unwrap();
        let p = ProblemParams::vanishing(1.0);
        let map = LiouvilleMap::new(&d, &p).unwrap();
        for j in 0..d.len() {
            assert!((map.y[j] - d.x(j)).abs() < 1e-13);
        }
    }

    #[test]
    fn heaviside_map_values() {
        // m = 3 H(-x), omega = 1: w = 2 on x<0, 1 on x>0
        let d = synth::heaviside_step(3.0, -10.0, 10.0, 0.05);
        let p = ProblemParams::new(3.0, 1.0, 0).unwrap();
        let y_m2 = liouville_y(&d, &p, -2.0).unwrap();
        assert!((y_m2 + 4.0).abs() < 1e-10, "y(-2) = {y_m2}");
        let y_5 = liouville_y(&d, &p, 5.0).unwrap();
        assert!((y_5 - 5.0).abs() < 1e-10, "y(5) = {y_5}");
    }

    #[test]
    fn map_is_increasing_with_correct_slope() {
        let d = synth::tanh_step(1.0, 1.0, 0.0, -20.0, 20.0, 0.01);
        let p = p11();
        let map = LiouvilleMap::new(&d, &p).unwrap();
        for j in 1..d.len() {
            assert!(map.y[j] > map.y[j - 1]);
        }
        // centered difference of y vs the weight
        let mut worst: f64 = 0.0;
        for j in 1..d.len() - 1 {
            let dy = (map.y[j + 1] - map.y[j - 1]) / (2.0 * d.h);
            worst = worst.max((dy - map.weight[j]).abs());
        }
        assert!(worst < 1e-4, "slope residual {worst}");
    }

    #[test]
    fn potential_constant_cases() {
        let p = p11();
        // m ≡ 0 -> v ≡ 0 (vanishing-limit params)
        let d0 = InitialDatum::from_m(
            -5.0,
            0.1,
            vec![0.0; 101],
            0.0,
            crate::datum::Tail::ZERO,
            crate::datum::Tail::ZERO,
        )
        .unwrap();
        let sp = schrodinger_potential(&d0, &ProblemParams::vanishing(1.0)).unwrap();
        assert!(sp.v.iter().all(|v| v.abs() < 1e-12));
        // m ≡ c -> v ≡ -c/(4(c+ω)) (formula check on constant samples)
        let dc = InitialDatum::new(
            -5.0,
            0.1,
            vec![1.0; 101],
            vec![1.0; 101],
            crate::datum::Tail::ZERO,
            crate::datum::Tail::ZERO,
        )
        .unwrap();
        let sp = schrodinger_potential(&dc, &p).unwrap();
        assert!(sp.v.iter().all(|v| (v + 0.125).abs() < 1e-12));
    }

    #[test]
    fn potential_matches_symbolic_oracle_on_tanh() {
        // closed-form derivatives of m = c/2 (1 - tanh(x/w))
        let (c, w) = (1.0, 1.0);
        let p = p11();
        let d = synth::tanh_step(c, w, 0.0, -20.0, 20.0, 0.005);
        let sp = schrodinger_potential(&d, &p).unwrap();
        let mut worst: f64 = 0.0;
        for j in 0..d.len() {
            let x = d.x(j);
            let sech2 = 1.0 / (x / w).cosh().powi(2);
            let m = 0.5 * c * (1.0 - (x / w).tanh());
            let mx = -0.5 * c / w * sech2;
            let mxx = c / (w * w) * sech2 * (x / w).tanh();
            let mw = m + p.omega;
            let v_exact = -m / (4.0 * mw) + 0.25 * p.omega * mxx / (mw * mw)
                - (5.0 * p.omega / 16.0) * mx * mx / (mw * mw * mw);
            worst = worst.max((sp.v[j] - v_exact).abs());
        }
        assert!(worst < 1e-8, "symbolic-oracle residual {worst}");
    }

    #[test]
    fn y_step_potential_is_a_clean_step() {
        let d = synth::y_step(1.0, 1.0, -25.0, 25.0, 0.005);
        let p = p11();
        let sp = schrodinger_potential(&d, &p).unwrap();
        let mut worst: f64 = 0.0;
        for j in 0..d.len() {
            let target = if sp.y[j] < 0.0 { -0.125 } else { 0.0 };
            // skip the two nodes straddling y = 0 where the side is ambiguous
            if sp.y[j].abs() < 2.0 * d.h {
                continue;
            }
            worst = worst.max((sp.v[j] - target).abs());
        }
        assert!(worst < 1e-7, "clean-step residual {worst}");
    }

    #[test]
    fn conserved_heaviside_values() {
        let d = synth::heaviside_step(1.0, -10.0, 10.0, 0.05);
        let p = p11();
        let at0 = conserved_quantities(&d, &p, 0.0, 0.0).unwrap();
        assert!(at0.wp.abs() < 1e-10, "wp {}", at0.wp);
        assert!((at0.h0 + 1.0).abs() < 1e-10, "h0 {}", at0.h0);
        let at1 = conserved_quantities(&d, &p, 1.0, 0.0).unwrap();
        assert!(at1.wp.abs() < 1e-10, "wp at 1: {}", at1.wp);
        assert!((at1.h0 + 1.0).abs() < 1e-10, "h0 at 1: {}", at1.h0);
    }

    #[test]
    fn conserved_base_point_independence() {
        let d = synth::tanh_step(1.0, 1.0, 0.0, -30.0, 30.0, 0.005);
        let p = p11();
        let a = conserved_quantities(&d, &p, -5.0, 0.0).unwrap();
        let b = conserved_quantities(&d, &p, 5.0, 0.0).unwrap();
        assert!((a.wp - b.wp).abs() < 1e-8, "wp drift {}", (a.wp - b.wp).abs());
        assert!((a.h0 - b.h0).abs() < 1e-8, "h0 drift {}", (a.h0 - b.h0).abs());
    }

    #[test]
    fn y_step_wp_matches_closed_form() {
        let d = synth::y_step(1.0, 1.0, -25.0, 25.0, 0.005);
        let p = p11();
        let cq = conserved_quantities(&d, &p, 0.25, 0.0).unwrap();
        let exact = synth::YStep::new(1.0, 1.0).wp();
        assert!(
            (cq.wp - exact).abs() < 1e-9,
            "wp = {} vs closed form {exact}",
            cq.wp
        );
    }
}
