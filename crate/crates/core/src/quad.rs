//! Quadrature on uniform grids: Gregory end-corrected trapezoid rules,
//! piecewise integration across smoothness breakpoints, and Gauss-Legendre
//! nodes for contour panels.
//!
//! The Gregory rule of order 4 uses trapezoid weights with end corrections
//! `[3/8, 7/6, 23/24, 1, …, 1, 23/24, 7/6, 3/8]`, giving O(h^4) global error
//! on smooth integrands.  Short slices fall back to closed Newton-Cotes rules.

/// Quadrature weights (relative to step h) for `n` intervals, nodes `0..=n`.
pub fn uniform_weights(n: usize) -> Vec<f64> {
    match n {
        0 => vec![0.0],
        1 => vec![0.5, 0.5],
        2 => vec![1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0],
        3 => vec![3.0 / 8.0, 9.0 / 8.0, 9.0 / 8.0, 3.0 / 8.0],
        4 => vec![14.0 / 45.0, 64.0 / 45.0, 24.0 / 45.0, 64.0 / 45.0, 14.0 / 45.0],
        5 => {
            // Simpson on [0,2] + 3/8 rule on [2,5]
            vec![
                1.0 / 3.0,
                4.0 / 3.0,
                1.0 / 3.0 + 3.0 / 8.0,
                9.0 / 8.0,
                9.0 / 8.0,
                3.0 / 8.0,
            ]
        }
        _ => {
            let mut w = vec![1.0; n + 1];
            let edge = [3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0];
            for (i, e) in edge.iter().enumerate() {
                w[i] = *e;
                w[n - i] = *e;
            }
            w
        }
    }
}

/// Integrate samples `f` over a uniform grid with spacing `h`.
pub fn integrate_uniform(f: &[f64], h: f64) -> f64 {
    if f.len() < 2 {
        return 0.0;
    }
    let w = uniform_weights(f.len() - 1);
    h * f.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>()
}

/// Integrate samples over a uniform grid that is only piecewise smooth.
///
/// `breaks` lists interior node indices where smoothness fails; the rule is
/// applied separately on each closed slice `[b_k, b_{k+1}]` so the end
/// corrections never straddle a kink.  Node values at a break are taken as
/// the limit from whichever side the slice lies on, i.e. the sample itself.
pub fn integrate_piecewise(f: &[f64], h: f64, breaks: &[usize]) -> f64 {
    let mut total = 0.0;
    for (a, b) in slice_bounds(f.len(), breaks) {
        total += integrate_uniform(&f[a..=b], h);
    }
    total
}

/// Cumulative integral F(x_j) = ∫_{x_0}^{x_j} f, honoring breakpoints.
/// O(n) via per-interval cubic rules: ∫_{x_j}^{x_{j+1}} f ≈
/// h(-f_{j-1} + 13f_j + 13f_{j+1} - f_{j+2})/24, with one-sided closures.
/// Global accuracy O(h^4) on each smooth slice.
pub fn cumulative_piecewise(f: &[f64], h: f64, breaks: &[usize]) -> Vec<f64> {
    cumulative_two_sided(f, h, breaks, &[], Direction::Forward)
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// out[j] = ∫_{x_0}^{x_j} f
    Forward,
    /// out[j] = ∫_{x_j}^{x_N} f
    FromRight,
}

/// Direction-aware cumulative with two-sided break values.
///
/// `right_vals[i]` is the right-limit of the integrand at node `breaks[i]`
/// (samples hold left limits).  Exponentially graded integrands must be
/// accumulated in the direction where terms grow toward the running end,
/// otherwise the result is a difference of huge numbers; `FromRight`
/// accumulates each slice from its right endpoint for exactly that reason.
pub fn cumulative_two_sided(
    f: &[f64],
    h: f64,
    breaks: &[usize],
    right_vals: &[f64],
    dir: Direction,
) -> Vec<f64> {
    let n = f.len();
    let mut out = vec![0.0; n];
    let bounds = slice_bounds(n, breaks);
    let piece_of = |a: usize, b: usize| -> Vec<f64> {
        let mut piece: Vec<f64> = f[a..=b].to_vec();
        if let Some(pos) = breaks.iter().position(|&bk| bk == a) {
            if let Some(&rv) = right_vals.get(pos) {
                piece[0] = rv;
            }
        }
        piece
    };
    match dir {
        Direction::Forward => {
            let mut base = 0.0;
            for &(a, b) in &bounds {
                let piece = piece_of(a, b);
                let mut cum = vec![0.0; piece.len()];
                cumulative_slice(&piece, h, base, &mut cum);
                out[a..=b].copy_from_slice(&cum);
                base = out[b];
            }
        }
        Direction::FromRight => {
            let mut base = 0.0;
            for &(a, b) in bounds.iter().rev() {
                let mut piece = piece_of(a, b);
                piece.reverse();
                let mut cum = vec![0.0; piece.len()];
                cumulative_slice(&piece, h, base, &mut cum);
                for j in a..=b {
                    out[j] = cum[b - j];
                }
                base = out[a];
            }
        }
    }
    out
}

fn cumulative_slice(f: &[f64], h: f64, base: f64, out: &mut [f64]) {
    let n = f.len();
    out[0] = base;
    if n == 1 {
        return;
    }
    if n < 4 {
        for j in 1..n {
            out[j] = base + integrate_uniform(&f[..=j], h);
        }
        return;
    }
    let c = h / 24.0;
    out[1] = out[0] + c * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
    for j in 1..n - 2 {
        out[j + 1] = out[j] + c * (-f[j - 1] + 13.0 * f[j] + 13.0 * f[j + 1] - f[j + 2]);
    }
    out[n - 1] =
        out[n - 2] + c * (f[n - 4] - 5.0 * f[n - 3] + 19.0 * f[n - 2] + 9.0 * f[n - 1]);
}

pub(crate) fn slice_bounds(len: usize, breaks: &[usize]) -> Vec<(usize, usize)> {
    let mut cuts: Vec<usize> = breaks
        .iter()
        .copied()
        .filter(|&i| i > 0 && i + 1 < len)
        .collect();
    cuts.sort_unstable();
    cuts.dedup();
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut a = 0usize;
    for &c in &cuts {
        out.push((a, c));
        a = c;
    }
    out.push((a, len - 1));
    out
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_pair(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_pair(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, dp) = legendre_pair(n, 0.0);
        weights[n / 2] = 2.0 / (dp * dp);
    }
    (nodes, weights)
}

/// (P_n(x), P_n'(x)) via the three-term recurrence.
pub fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// All Legendre values P_0(x), …, P_{n-1}(x).
pub fn legendre_all(n: usize, x: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(n);
    if n == 0 {
        return p;
    }
    p.push(1.0);
    if n == 1 {
        return p;
    }
    p.push(x);
    for k in 1..n - 1 {
        let next = ((2 * k + 1) as f64 * x * p[k] - k as f64 * p[k - 1]) / (k + 1) as f64;
        p.push(next);
    }
    p
}
