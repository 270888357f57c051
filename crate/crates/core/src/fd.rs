//! Fourth-order finite-difference stencils on uniform grids, with one-sided
//! closures at the ends.

/// First derivative, 4th order: centered 5-point stencil inside, one-sided
/// 5-point stencils at the boundary.
pub fn derivative1(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    assert!(n >= 5, "grid too coarse for 4th-order differences");
    let mut d = vec![0.0; n];
    let c = 1.0 / (12.0 * h);
    for i in 2..n - 2 {
        d[i] = c * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
    }
    let fwd = |j: usize, s: &[f64]| {
        c * (-25.0 * s[j] + 48.0 * s[j + 1] - 36.0 * s[j + 2] + 16.0 * s[j + 3] - 3.0 * s[j + 4])
    };
    let fwd1 = |j: usize, s: &[f64]| {
        c * (-3.0 * s[j - 1] - 10.0 * s[j] + 18.0 * s[j + 1] - 6.0 * s[j + 2] + s[j + 3])
    };
    d[0] = fwd(0, f);
    d[1] = fwd1(1, f);
    let rev: Vec<f64> = f.iter().rev().copied().collect();
    d[n - 1] = -fwd(0, &rev);
    d[n - 2] = -fwd1(1, &rev);
    d
}

/// Second derivative, 4th order.
pub fn derivative2(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    assert!(n >= 6, "grid too coarse for 4th-order differences");
    let mut d = vec![0.0; n];
    let c = 1.0 / (12.0 * h * h);
    for i in 2..n - 2 {
        d[i] = c * (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]);
    }
    // one-sided 6-point closures
    let fwd = |s: &[f64]| {
        c * (45.0 * s[0] - 154.0 * s[1] + 214.0 * s[2] - 156.0 * s[3] + 61.0 * s[4] - 10.0 * s[5])
    };
    let fwd1 = |s: &[f64]| {
        c * (10.0 * s[0] - 15.0 * s[1] - 4.0 * s[2] + 14.0 * s[3] - 6.0 * s[4] + s[5])
    };
    d[0] = fwd(f);
    d[1] = fwd1(f);
    let rev: Vec<f64> = f.iter().rev().copied().collect();
    d[n - 1] = fwd(&rev);
    d[n - 2] = fwd1(&rev);
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fourth_order_first_derivative() {
        let err = |n: usize| {
            let h = 2.0 / n as f64;
            let f: Vec<f64> = (0..=n).map(|i| (i as f64 * h).sin()).collect();
            let d = derivative1(&f, h);
            (0..=n)
                .map(|i| (d[i] - (i as f64 * h).cos()).abs())
                .fold(0.0f64, f64::max)
        };
        let (e1, e2) = (err(50), err(100));
        assert!(e1 / e2 > 12.0, "ratio {}", e1 / e2);
    }

    #[test]
    fn fourth_order_second_derivative() {
        let err = |n: usize| {
            let h = 2.0 / n as f64;
            let f: Vec<f64> = (0..=n).map(|i| (i as f64 * h).sin()).collect();
            let d = derivative2(&f, h);
            (0..=n)
                .map(|i| (d[i] + (i as f64 * h).sin()).abs())
                .fold(0.0f64, f64::max)
        };
        let (e1, e2) = (err(50), err(100));
        assert!(e1 / e2 > 10.0, "ratio {}", e1 / e2);
    }

    #[test]
    fn exact_on_quartics() {
        let n = 30;
        let h = 0.1;
        let f: Vec<f64> = (0..=n).map(|i| (i as f64 * h).powi(4)).collect();
        let d1 = derivative1(&f, h);
        let d2 = derivative2(&f, h);
        for i in 0..=n {
            let x = i as f64 * h;
            assert!((d1[i] - 4.0 * x.powi(3)).abs() < 1e-10, "d1 at {i}");
            assert!((d2[i] - 12.0 * x * x).abs() < 1e-8, "d2 at {i}");
        }
    }
}
