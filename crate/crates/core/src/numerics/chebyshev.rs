//! Chebyshev-Gauss grids, spectral differentiation and series evaluation.

use nalgebra::DMatrix;
use std::f64::consts::PI;

/// Interior Chebyshev-Gauss points x_k = cos((2k+1)π/2N), descending.
pub fn gauss_points(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| ((2 * k + 1) as f64 * PI / (2 * n) as f64).cos())
        .collect()
}

/// Barycentric differentiation matrix on the Chebyshev-Gauss points.
pub fn diff_matrix(n: usize) -> DMatrix<f64> {
    let x = gauss_points(n);
    let w: Vec<f64> = (0..n)
        .map(|k| {
            let s = ((2 * k + 1) as f64 * PI / (2 * n) as f64).sin();
            if k % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .collect();
    let mut d = DMatrix::zeros(n, n);
    for i in 0..n {
        let mut diag = 0.0;
        for j in 0..n {
            if i != j {
                let v = (w[j] / w[i]) / (x[i] - x[j]);
                d[(i, j)] = v;
                diag -= v;
            }
        }
        d[(i, i)] = diag;
    }
    d
}

/// Chebyshev series Σ c_n T_n(x) on [-1, 1].
#[derive(Debug, Clone)]
pub struct ChebSeries {
    pub coeffs: Vec<f64>,
}

impl ChebSeries {
    /// Interpolant through values sampled at [`gauss_points`].
    pub fn from_gauss_values(values: &[f64]) -> Self {
        let n = values.len();
        let nf = n as f64;
        let coeffs = (0..n)
            .map(|j| {
                let s: f64 = values
                    .iter()
                    .enumerate()
                    .map(|(k, v)| v * (j as f64 * (2 * k + 1) as f64 * PI / (2.0 * nf)).cos())
                    .sum();
                if j == 0 {
                    s / nf
                } else {
                    2.0 * s / nf
                }
            })
            .collect();
        Self { coeffs }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = 2.0 * x * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        x * b1 - b2 + self.coeffs.first().copied().unwrap_or(0.0)
    }

    pub fn derivative(&self) -> Self {
        let n = self.coeffs.len();
        if n <= 1 {
            return Self { coeffs: vec![0.0] };
        }
        let mut d = vec![0.0; n + 1];
        for k in (0..n - 1).rev() {
            d[k] = d[k + 2] + 2.0 * (k + 1) as f64 * self.coeffs[k + 1];
        }
        d[0] *= 0.5;
        d.truncate(n - 1);
        Self { coeffs: d }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn differentiates_smooth_function() {
        let n = 24;
        let x = gauss_points(n);
        let d = diff_matrix(n);
        let f: Vec<f64> = x.iter().map(|x| (2.0 * x).sin()).collect();
        for i in 0..n {
            let df: f64 = (0..n).map(|j| d[(i, j)] * f[j]).sum();
            assert!((df - 2.0 * (2.0 * x[i]).cos()).abs() < 1e-11);
        }
    }

    #[test]
    fn series_matches_interpolated_function_and_derivative() {
        let n = 30;
        let vals: Vec<f64> = gauss_points(n).iter().map(|x| (x * 1.5).exp()).collect();
        let s = ChebSeries::from_gauss_values(&vals);
        for &x in &[-1.0, -0.3, 0.0, 0.77, 1.0] {
            assert!((s.eval(x) - (1.5 * x).exp()).abs() < 1e-13);
            assert!((s.derivative().eval(x) - 1.5 * (1.5 * x).exp()).abs() < 1e-11);
        }
    }
}
