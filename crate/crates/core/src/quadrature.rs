//! One-dimensional quadrature rules and collocation differentiation matrices.

use std::f64::consts::PI;

/// Nodes and weights of the n-point Gauss–Legendre rule mapped to `(lo, hi)`.
///
/// Nodes are strictly interior and ascending.
pub fn gauss_legendre(n: usize, lo: f64, hi: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = (hi - lo) / 2.0;
    let mid = (hi + lo) / 2.0;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess for the i-th largest root
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // ascending order: the largest root goes last
        nodes[n - 1 - i] = mid + half * x;
        nodes[i] = mid - half * x;
        weights[n - 1 - i] = half * w;
        weights[i] = half * w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = mid;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Equispaced nodes `lo + k·h` with equal weights `h`, the periodic trapezoid rule.
pub fn periodic_trapezoid(n: usize, lo: f64, hi: f64) -> (Vec<f64>, Vec<f64>) {
    let h = (hi - lo) / n as f64;
    ((0..n).map(|k| lo + k as f64 * h).collect(), vec![h; n])
}

/// Row-major differentiation matrix of the polynomial interpolant through `nodes`.
pub fn barycentric_differentiation(nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let bary: Vec<f64> = (0..n)
        .map(|j| {
            1.0 / (0..n)
                .filter(|&k| k != j)
                .map(|k| nodes[j] - nodes[k])
                .product::<f64>()
        })
        .collect();
    let mut d = vec![0.0; n * n];
    for j in 0..n {
        let mut diag = 0.0;
        for k in 0..n {
            if j != k {
                let entry = (bary[k] / bary[j]) / (nodes[j] - nodes[k]);
                d[j * n + k] = entry;
                diag -= entry;
            }
        }
        // negative-sum trick: rows annihilate constants exactly
        d[j * n + j] = diag;
    }
    d
}

/// Row-major Fourier differentiation matrix for `n` equispaced nodes on a period `length`.
pub fn fourier_differentiation(n: usize, length: f64) -> Vec<f64> {
    let h = 2.0 * PI / n as f64;
    let scale = 2.0 * PI / length;
    let mut d = vec![0.0; n * n];
    for j in 0..n {
        for k in 0..n {
            if j == k {
                continue;
            }
            let diff = j as f64 - k as f64;
            let sign = if (j + k) % 2 == 0 { 1.0 } else { -1.0 };
            let half = diff * h / 2.0;
            let entry = if n % 2 == 0 {
                0.5 * sign / half.tan()
            } else {
                0.5 * sign / half.sin()
            };
            d[j * n + k] = scale * entry;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in 1..=24 {
            let (x, w) = gauss_legendre(n, -1.0, 1.0);
            assert!(w.iter().all(|&wi| wi > 0.0));
            assert!(x.windows(2).all(|p| p[0] < p[1]));
            for degree in 0..(2 * n) as i32 {
                let exact = if degree % 2 == 0 { 2.0 / (degree as f64 + 1.0) } else { 0.0 };
                let approx: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(degree)).sum();
                assert_abs_diff_eq!(approx, exact, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn mapped_rule_has_interior_nodes_and_correct_length() {
        let (x, w) = gauss_legendre(8, 0.0, PI);
        assert!(x.iter().all(|&xi| xi > 0.0 && xi < PI));
        assert_abs_diff_eq!(w.iter().sum::<f64>(), PI, epsilon = 1e-14);
        let approx: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.sin()).sum();
        assert_abs_diff_eq!(approx, 2.0, epsilon = 1e-10);
    }

    #[test]
    fn barycentric_derivative_is_exact_on_polynomials() {
        let (x, _) = gauss_legendre(7, 0.0, 2.0);
        let d = barycentric_differentiation(&x);
        let f: Vec<f64> = x.iter().map(|t| t.powi(5) - 3.0 * t * t).collect();
        for j in 0..7 {
            let df: f64 = (0..7).map(|k| d[j * 7 + k] * f[k]).sum();
            assert_abs_diff_eq!(df, 5.0 * x[j].powi(4) - 6.0 * x[j], epsilon = 1e-10);
        }
    }

    #[test]
    fn fourier_derivative_is_exact_on_trig_polynomials() {
        for n in [12usize, 13] {
            let (x, _) = periodic_trapezoid(n, 0.0, 2.0 * PI);
            let d = fourier_differentiation(n, 2.0 * PI);
            let f: Vec<f64> = x.iter().map(|t| (3.0 * t).sin() + (2.0 * t).cos()).collect();
            for j in 0..n {
                let df: f64 = (0..n).map(|k| d[j * n + k] * f[k]).sum();
                let exact = 3.0 * (3.0 * x[j]).cos() - 2.0 * (2.0 * x[j]).sin();
                assert_abs_diff_eq!(df, exact, epsilon = 1e-12);
            }
        }
    }
}
