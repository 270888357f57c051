//! Interpolation helpers: barycentric Lagrange on arbitrary nodes (used for
//! panel data), cubic interpolation on uniform grids, and monotone cubic
//! (Fritsch-Carlson) interpolation for parametric profiles.

use num_complex::Complex64;

/// Barycentric weights for a node set (O(n^2), done once per panel).
pub fn barycentric_weights(nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut w = vec![1.0; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                w[i] /= nodes[i] - nodes[j];
            }
        }
    }
    w
}

/// Barycentric interpolation of complex samples at `x`.
pub fn barycentric_eval(nodes: &[f64], weights: &[f64], values: &[Complex64], x: f64) -> Complex64 {
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    for i in 0..nodes.len() {
        let dx = x - nodes[i];
        if dx == 0.0 {
            return values[i];
        }
        let c = weights[i] / dx;
        num += values[i] * c;
        den += c;
    }
    num / den
}

/// Cubic (4-point) interpolation of samples on a uniform grid.
/// Accuracy O(h^4) for smooth data; clamps to one-sided stencils at the ends.
pub fn cubic_uniform(x0: f64, h: f64, f: &[f64], x: f64) -> f64 {
    let n = f.len();
    assert!(n >= 4);
    let s = (x - x0) / h;
    let i1 = (s.floor() as isize).clamp(1, n as isize - 3) as usize;
    let t = s - i1 as f64; // in [0,1] away from the ends
    let (a, b, c, d) = (f[i1 - 1], f[i1], f[i1 + 1], f[i1 + 2]);
    // Lagrange cubic through nodes at t = -1, 0, 1, 2
    let w0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
    let w1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    let w2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
    let w3 = (t + 1.0) * t * (t - 1.0) / 6.0;
    a * w0 + b * w1 + c * w2 + d * w3
}

/// Monotone cubic Hermite interpolant (Fritsch-Carlson slope limiting) on an
/// increasing but not necessarily uniform grid.
pub struct Pchip {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl Pchip {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        let n = x.len();
        assert!(n >= 2 && n == y.len());
        let mut d = vec![0.0; n];
        let mut delta = vec![0.0; n - 1];
        for i in 0..n - 1 {
            delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        }
        if n == 2 {
            d[0] = delta[0];
            d[1] = delta[0];
            return Pchip { x, y, d };
        }
        for i in 1..n - 1 {
            if delta[i - 1] * delta[i] <= 0.0 {
                d[i] = 0.0;
            } else {
                let h0 = x[i] - x[i - 1];
                let h1 = x[i + 1] - x[i];
                let w1 = 2.0 * h1 + h0;
                let w2 = h1 + 2.0 * h0;
                d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        d[0] = end_slope(x[1] - x[0], x[2] - x[1], delta[0], delta[1]);
        d[n - 1] = end_slope(
            x[n - 1] - x[n - 2],
            x[n - 2] - x[n - 3],
            delta[n - 2],
            delta[n - 3],
        );
        Pchip { x, y, d }
    }

    pub fn eval(&self, xq: f64) -> f64 {
        let n = self.x.len();
        let i = match self.x.binary_search_by(|v| v.partial_cmp(&xq).unwrap()) {
            Ok(j) => return self.y[j],
            Err(j) => j.clamp(1, n - 1) - 1,
        };
        let h = self.x[i + 1] - self.x[i];
        let t = (xq - self.x[i]) / h;
        let (y0, y1, d0, d1) = (self.y[i], self.y[i + 1], self.d[i], self.d[i + 1]);
        let t2 = t * t;
        let t3 = t2 * t;
        y0 * (2.0 * t3 - 3.0 * t2 + 1.0)
            + d0 * h * (t3 - 2.0 * t2 + t)
            + y1 * (-2.0 * t3 + 3.0 * t2)
            + d1 * h * (t3 - t2)
    }
}

fn end_slope(h0: f64, h1: f64, del0: f64, del1: f64) -> f64 {
    // Shape-preserving three-point estimate at the boundary.
    let d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if d * del0 <= 0.0 {
        0.0
    } else if del0 * del1 < 0.0 && d.abs() > 3.0 * del0.abs() {
        3.0 * del0
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barycentric_reproduces_polynomial() {
        let nodes = [-0.9, -0.4, 0.1, 0.5, 0.95];
        let w = barycentric_weights(&nodes);
        let vals: Vec<Complex64> = nodes
            .iter()
            .map(|&x| Complex64::new(x * x * x - 2.0 * x, x * x))
            .collect();
        let q = 0.3;
        let got = barycentric_eval(&nodes, &w, &vals, q);
        let want = Complex64::new(q * q * q - 2.0 * q, q * q);
        assert!((got - want).norm() < 1e-13);
    }

    #[test]
    fn cubic_uniform_fourth_order() {
        let err = |n: usize| {
            let h = 1.0 / n as f64;
            let f: Vec<f64> = (0..=n).map(|i| (3.0 * i as f64 * h).sin()).collect();
            (0..10 * n)
                .map(|j| {
                    let x = j as f64 / (10 * n) as f64;
                    (cubic_uniform(0.0, h, &f, x) - (3.0 * x).sin()).abs()
                })
                .fold(0.0f64, f64::max)
        };
        let (e1, e2) = (err(50), err(100));
        assert!(e1 / e2 > 12.0, "ratio {}", e1 / e2);
    }

    #[test]
    fn pchip_preserves_monotonicity() {
        let x: Vec<f64> = (0..20).map(|i| i as f64 * 0.5).collect();
        let y: Vec<f64> = x.iter().map(|&v| (v - 5.0).tanh()).collect();
        let p = Pchip::new(x.clone(), y);
        let mut prev = f64::NEG_INFINITY;
        for j in 0..400 {
            let xq = 9.5 * j as f64 / 399.0;
            let v = p.eval(xq);
            assert!(v >= prev - 1e-12, "not monotone at {xq}");
            prev = v;
        }
    }
}
