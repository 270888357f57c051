//! The Helmholtz pair m ↔ u: u = (1-∂_x²)^{-1} m via the Green kernel
//! e^{-|x-r|}/2 (with constant/exponential tails integrated in closed form),
//! and m = u - u_xx by 4th-order finite differences.

use crate::datum::{InitialDatum, Tail};
use crate::fd;
use crate::quad;

/// u(x_i) = 1/2 ∫ e^{-|x_i-r|} m(r) dr over grid + tails.
/// `overrides` are (break index, right-limit of m) pairs.
pub fn velocity_of_raw(
    x0: f64,
    h: f64,
    m: &[f64],
    c_left: f64,
    left_tail: &Tail,
    right_tail: &Tail,
    overrides: &[(usize, f64)],
) -> Vec<f64> {
    let n = m.len();
    let x = |j: usize| x0 + j as f64 * h;
    let x_last = x(n - 1);
    let breaks: Vec<usize> = overrides.iter().map(|&(b, _)| b).collect();

    // weighted prefix P_i = ∫_{x_0}^{x_i} e^{r} m dr and
    // suffix S_i = ∫_{x_i}^{x_N} e^{-r} m dr, each accumulated in the
    // direction where its integrand grows toward the running end
    let fwd: Vec<f64> = (0..n).map(|j| x(j).exp() * m[j]).collect();
    let fwd_rv: Vec<f64> = overrides.iter().map(|&(b, mv)| x(b).exp() * mv).collect();
    let prefix = quad::cumulative_two_sided(&fwd, h, &breaks, &fwd_rv, quad::Direction::Forward);
    let bwd: Vec<f64> = (0..n).map(|j| (-x(j)).exp() * m[j]).collect();
    let bwd_rv: Vec<f64> = overrides.iter().map(|&(b, mv)| (-x(b)).exp() * mv).collect();
    let suffix =
        quad::cumulative_two_sided(&bwd, h, &breaks, &bwd_rv, quad::Direction::FromRight);

    // tails
    let lt = left_tail;
    let rt = right_tail;
    let left_const = c_left * x0.exp() + lt.coeff * ((1.0 + lt.rate) * x0).exp() / (1.0 + lt.rate);
    let right_const = rt.coeff * (-(1.0 + rt.rate) * x_last).exp() / (1.0 + rt.rate);

    (0..n)
        .map(|i| {
            let xi = x(i);
            let left = (-xi).exp() * (prefix[i] + left_const);
            let right = xi.exp() * (suffix[i] + right_const);
            0.5 * (left + right)
        })
        .collect()
}

pub fn velocity_of(d: &InitialDatum, c_left: f64) -> Vec<f64> {
    let overrides: Vec<(usize, f64)> = d
        .breaks
        .iter()
        .copied()
        .zip(d.m_right.iter().copied())
        .collect();
    velocity_of_raw(
        d.x0,
        d.h,
        &d.m0,
        c_left,
        &d.left_tail,
        &d.right_tail,
        &overrides,
    )
}

/// m = u - u_xx by 4th-order differences.
pub fn momentum_of(u: &[f64], h: f64) -> Vec<f64> {
    let uxx = fd::derivative2(u, h);
    u.iter().zip(&uxx).map(|(a, b)| a - b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::synth;

    #[test]
    fn exponential_momentum_closed_form() {
        // m = e^{-|x|}  =>  u = (1+|x|) e^{-|x|} / 2, u(0) = 1/2
        let h = 0.01_f64;
        let x0 = -20.0_f64;
        let n = (40.0 / h) as usize;
        let j_kink = (-x0 / h).round() as usize;
        let m: Vec<f64> = (0..=n).map(|j| (-(x0 + j as f64 * h).abs()).exp()).collect();
        let lt = Tail { coeff: 1.0, rate: 1.0 };
        let rt = Tail { coeff: 1.0, rate: 1.0 };
        // |x| has a kink at 0; pass it as a break with equal limits
        let u = velocity_of_raw(x0, h, &m, 0.0, &lt, &rt, &[(j_kink, 1.0)]);
        for (j, frac) in [(j_kink, 0.5f64), (j_kink + 300, (1.0 + 3.0) * (-3.0f64).exp() / 2.0)] {
            assert!(
                (u[j] - frac).abs() < 5e-9,
                "u at node {j}: {} vs {frac}",
                u[j]
            );
        }
    }

    #[test]
    fn zero_momentum_gives_zero_velocity() {
        let m = vec![0.0; 100];
        let u = velocity_of_raw(-5.0, 0.1, &m, 0.0, &Tail::ZERO, &Tail::ZERO, &[]);
        assert!(u.iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn inverse_pair_to_discretization_order() {
        let d = synth::tanh_step(1.0, 1.0, 0.0, -25.0, 25.0, 0.01);
        let u = velocity_of(&d, 1.0);
        let m_back = momentum_of(&u, d.h);
        let mut worst: f64 = 0.0;
        for j in 10..d.len() - 10 {
            worst = worst.max((m_back[j] - d.m0[j]).abs());
        }
        assert!(worst < 5e-7, "roundtrip residual {worst}");
    }

    #[test]
    fn constant_background_velocity() {
        // m ≡ c on the far left forces u -> c there
        let d = synth::tanh_step(2.0, 1.0, 0.0, -30.0, 30.0, 0.01);
        let u = velocity_of(&d, 2.0);
        assert!((u[0] - 2.0).abs() < 1e-8, "left limit {}", u[0]);
        assert!(u[d.len() - 1].abs() < 1e-8, "right limit {}", u[d.len() - 1]);
    }
}
