//! Angular separation equations with a dipole term: for given (m̃, z) find
//! the separation constants λ̃ and the pair (η₁, η₂).
//!
//! With f = sin^{1/2}θ · η the system reads
//!   f₁′ − W f₁ = λ̃ f₂,   f₂′ + W f₂ = −λ̃ f₁,   W = m̃ cscθ − z sin²θ.
//! The regular endpoint behaviour is factored out as powers of sin(θ/2) and
//! cos(θ/2) and the smooth remainders (g₁, g₂) are collocated on
//! Chebyshev-Gauss points in θ.

use crate::error::{Error, Result};
use crate::numerics::chebyshev::{diff_matrix, gauss_points, ChebSeries};
use crate::numerics::quad::gauss_legendre;
use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;

pub const DEFAULT_GRID: usize = 64;
pub const MIN_GRID: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularParams {
    pub m_tilde: f64,
    pub z: f64,
    pub grid_points: usize,
}

impl AngularParams {
    pub fn new(m_tilde: f64, z: f64, grid_points: usize) -> Result<Self> {
        let twice = 2.0 * m_tilde;
        if twice.fract() != 0.0 || (twice as i64) % 2 == 0 {
            return Err(Error::domain(format!(
                "m_tilde must be a half-odd integer, got {m_tilde}"
            )));
        }
        if !z.is_finite() {
            return Err(Error::domain("z must be finite"));
        }
        if grid_points < MIN_GRID {
            return Err(Error::domain(format!(
                "grid_points must be at least {MIN_GRID}, got {grid_points}"
            )));
        }
        Ok(Self {
            m_tilde,
            z,
            grid_points,
        })
    }

    pub fn with_z(&self, z: f64) -> Self {
        Self { z, ..*self }
    }

    /// Exponents (a₁, b₁, a₂, b₂) with f_i = sin^{a_i}(θ/2) cos^{b_i}(θ/2) g_i.
    fn weights(&self) -> (f64, f64, f64, f64) {
        let mu = self.m_tilde.abs();
        if self.m_tilde > 0.0 {
            (mu, mu + 1.0, mu + 1.0, mu)
        } else {
            (mu + 1.0, mu, mu, mu + 1.0)
        }
    }
}

/// θ on the collocation grid (ascending).
pub fn theta_grid(n: usize) -> Vec<f64> {
    gauss_points(n)
        .iter()
        .rev()
        .map(|s| 0.5 * PI * (s + 1.0))
        .collect()
}

/// The first-order operator on sampled (η₁, η₂): returns
/// ((d/dθ + ½cotθ − W)η₁, −(d/dθ + ½cotθ + W)η₂), which equals λ̃(η₂, η₁)
/// on an eigenpair. Samples live on [`theta_grid`].
pub fn angular_operator_apply(
    params: &AngularParams,
    eta1: &[f64],
    eta2: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    let n = eta1.len();
    let theta = theta_grid(n);
    let d = theta_derivative(n);
    let e1 = DVector::from_column_slice(eta1);
    let e2 = DVector::from_column_slice(eta2);
    let d1 = &d * &e1;
    let d2 = &d * &e2;
    let mut out1 = Vec::with_capacity(n);
    let mut out2 = Vec::with_capacity(n);
    for i in 0..n {
        let (st, ct) = theta[i].sin_cos();
        let w = params.m_tilde / st - params.z * st * st;
        let half_cot = 0.5 * ct / st;
        out1.push(d1[i] + (half_cot - w) * e1[i]);
        out2.push(-(d2[i] + (half_cot + w) * e2[i]));
    }
    (out1, out2)
}

/// d/dθ on [`theta_grid`].
fn theta_derivative(n: usize) -> DMatrix<f64> {
    // theta_grid reverses the Chebyshev ordering.
    let d = diff_matrix(n);
    DMatrix::from_fn(n, n, |i, j| d[(n - 1 - i, n - 1 - j)] * 2.0 / PI)
}

/// Maps g₁ → λ̃g₂ (A) and g₂ → λ̃g₁ (B).
fn factored_blocks(params: &AngularParams, n: usize) -> (DMatrix<f64>, DMatrix<f64>) {
    let theta = theta_grid(n);
    let d = theta_derivative(n);
    let z = params.z;
    let mu = params.m_tilde.abs();
    let mut a = DMatrix::zeros(n, n);
    let mut b = DMatrix::zeros(n, n);
    for i in 0..n {
        let t = theta[i];
        let (st, ct) = t.sin_cos();
        let cot_half = (0.5 * t).cos() / (0.5 * t).sin();
        let tan_half = (0.5 * t).sin() / (0.5 * t).cos();
        let plus = z * st * (1.0 + ct);
        let minus = z * st * (1.0 - ct);
        let (ca, da, cb, db) = if params.m_tilde > 0.0 {
            (cot_half, -(mu + 0.5) + plus, -tan_half, -(mu + 0.5) + minus)
        } else {
            (tan_half, (mu + 0.5) + minus, -cot_half, (mu + 0.5) + plus)
        };
        for j in 0..n {
            a[(i, j)] = ca * d[(i, j)];
            b[(i, j)] = cb * d[(i, j)];
        }
        a[(i, i)] += da;
        b[(i, i)] += db;
    }
    (a, b)
}

/// One eigenmode on a single grid: λ̃ and the remainders on [`theta_grid`],
/// normalized with Σ(g₁² + g₂²) = 1.
#[derive(Debug, Clone)]
struct GridMode {
    lambda: f64,
    g1: DVector<f64>,
    g2: DVector<f64>,
}

struct GridSpectrum {
    modes: Vec<GridMode>,
    complex: Vec<(f64, f64)>,
}

fn solve_grid(params: &AngularParams, n: usize) -> Result<GridSpectrum> {
    let (a, b) = factored_blocks(params, n);
    let ba = &b * &a;
    let mus = ba.clone().complex_eigenvalues();
    let mut modes = Vec::new();
    let mut complex = Vec::new();
    for mu in mus.iter() {
        if mu.im.abs() > 1e-8 * mu.norm().max(1.0) || mu.re <= 0.0 {
            let root = mu.sqrt();
            complex.push((root.re, root.im));
            continue;
        }
        let g1 = inverse_iteration(&ba, mu.re)?;
        let lam = mu.re.sqrt();
        for lambda in [lam, -lam] {
            let g2 = &a * &g1 / lambda;
            let norm = (g1.norm_squared() + g2.norm_squared()).sqrt();
            modes.push(GridMode {
                lambda,
                g1: &g1 / norm,
                g2: g2 / norm,
            });
        }
    }
    modes.sort_by(|x, y| {
        x.lambda
            .abs()
            .total_cmp(&y.lambda.abs())
            .then(y.lambda.total_cmp(&x.lambda))
    });
    Ok(GridSpectrum { modes, complex })
}

fn inverse_iteration(m: &DMatrix<f64>, mu: f64) -> Result<DVector<f64>> {
    let n = m.nrows();
    let shift = mu + 1e-10 * mu.abs().max(1.0);
    let lu = (m - DMatrix::identity(n, n) * shift).lu();
    let mut v = DVector::from_fn(n, |i, _| 1.0 + 0.1 * (i as f64).sin());
    for _ in 0..4 {
        v = lu.solve(&v).ok_or_else(|| {
            Error::convergence(format!("inverse iteration singular at mu = {mu}"))
        })?;
        v /= v.norm();
    }
    Ok(v)
}

#[derive(Debug, Clone)]
pub struct AngularEigenpair {
    pub lambda_t: f64,
    /// |λ̃(fine) − λ̃(coarse)|.
    pub extrapolation_error: f64,
    /// Residual of the second-order equation for η₁ and η₂ (larger of the two).
    pub residual: f64,
    pub theta: Vec<f64>,
    pub eta1: Vec<f64>,
    pub eta2: Vec<f64>,
}

/// Result of [`solve_angular_eigen`]. Non-real λ̃ candidates from the
/// discretization are kept aside rather than returned as modes.
#[derive(Debug, Clone)]
pub struct AngularSpectrum {
    pub modes: Vec<AngularEigenpair>,
    pub complex_candidates: Vec<(f64, f64)>,
}

/// The `count` eigenvalues of smallest |λ̃| on grids of `grid_points` and
/// twice that. The fine-grid value is reported; spectral convergence makes
/// the coarse/fine gap an error bound. Modes that move by more than
/// `1e-6·max(1, |λ̃|)` between the grids, or fail the second-order residual
/// check, are discarded.
pub fn solve_angular_eigen(params: &AngularParams, count: usize) -> Result<AngularSpectrum> {
    let coarse = solve_grid(params, params.grid_points)?;
    let n_fine = 2 * params.grid_points;
    let fine = solve_grid(params, n_fine)?;
    let theta = theta_grid(n_fine);
    let mut modes = Vec::new();
    for mode in &fine.modes {
        if modes.len() == count {
            break;
        }
        let nearest = coarse
            .modes
            .iter()
            .map(|c| (c.lambda - mode.lambda).abs())
            .fold(f64::INFINITY, f64::min);
        if nearest > 1e-6 * mode.lambda.abs().max(1.0) {
            continue;
        }
        let residual = second_order_residual(params, mode);
        if residual > 1e-6 {
            continue;
        }
        let (eta1, eta2) = sample_eta(params, mode, &theta);
        modes.push(AngularEigenpair {
            lambda_t: mode.lambda,
            extrapolation_error: nearest,
            residual,
            theta: theta.clone(),
            eta1,
            eta2,
        });
    }
    if modes.len() < count {
        return Err(Error::convergence(format!(
            "only {} of {count} angular modes are grid-stable at {} points",
            modes.len(),
            params.grid_points
        )));
    }
    Ok(AngularSpectrum {
        modes,
        complex_candidates: fine.complex,
    })
}

fn sample_eta(params: &AngularParams, mode: &GridMode, theta: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let (a1, b1, a2, b2) = params.weights();
    // plain dθ normalization of the remainders
    let norm = remainder_norm(mode);
    theta
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let (sh, ch) = (0.5 * t).sin_cos();
            let root = t.sin().sqrt();
            (
                sh.powf(a1) * ch.powf(b1) * mode.g1[i] / (root * norm),
                sh.powf(a2) * ch.powf(b2) * mode.g2[i] / (root * norm),
            )
        })
        .unzip()
}

fn series_pair(mode: &GridMode) -> (ChebSeries, ChebSeries) {
    // theta_grid is the reversed Chebyshev ordering.
    let rev = |v: &DVector<f64>| v.iter().rev().copied().collect::<Vec<_>>();
    (
        ChebSeries::from_gauss_values(&rev(&mode.g1)),
        ChebSeries::from_gauss_values(&rev(&mode.g2)),
    )
}

fn remainder_norm(mode: &GridMode) -> f64 {
    let (s1, s2) = series_pair(mode);
    let (x, w) = gauss_legendre(mode.g1.len() + 8);
    let integral: f64 = x
        .iter()
        .zip(&w)
        .map(|(s, wi)| wi * (s1.eval(*s).powi(2) + s2.eval(*s).powi(2)))
        .sum();
    (integral * 0.5 * PI).sqrt()
}

/// Residual of
///   (1−x²)η″ − 2xη′ + [λ̃² − ¼ − (m̃² ∓ m̃x + ¼)/(1−x²) + 2z(m̃ ± x)√(1−x²) − z²(1−x²)²]η = 0
/// (upper signs for η₁, lower for η₂), x = cosθ, evaluated through the
/// Chebyshev interpolants of the remainders at interior points and divided
/// by the sum of the magnitudes of its terms.
fn second_order_residual(params: &AngularParams, mode: &GridMode) -> f64 {
    let (a1, b1, a2, b2) = params.weights();
    let (s1, s2) = series_pair(mode);
    let m = params.m_tilde;
    let z = params.z;
    let lam2 = mode.lambda * mode.lambda;
    let mut worst = 0.0f64;
    for (series, a, b, sign) in [(&s1, a1, b1, 1.0), (&s2, a2, b2, -1.0)] {
        let d1 = series.derivative();
        let d2 = d1.derivative();
        let scale = 2.0 / PI;
        for k in 1..40 {
            let t = PI * k as f64 / 40.0;
            let s = 2.0 * t / PI - 1.0;
            let g = series.eval(s);
            let gp = d1.eval(s) * scale;
            let gpp = d2.eval(s) * scale * scale;
            let (st, ct) = t.sin_cos();
            let (sh, ch) = (0.5 * t).sin_cos();
            // logarithmic derivative of sin^{−1/2}θ sin^a(θ/2) cos^b(θ/2)
            let l = -0.5 * ct / st + 0.5 * a * ch / sh - 0.5 * b * sh / ch;
            let lp = 0.5 / (st * st) - 0.25 * a / (sh * sh) - 0.25 * b / (ch * ch);
            let cot = ct / st;
            let x = ct;
            let q = lam2 - 0.25 - (m * m - sign * m * x + 0.25) / (st * st)
                + 2.0 * z * (m + sign * x) * st
                - z * z * st.powi(4);
            let terms = [
                gpp,
                2.0 * l * gp,
                (lp + l * l) * g,
                cot * gp,
                cot * l * g,
                q * g,
            ];
            let total: f64 = terms.iter().sum();
            let size: f64 = terms.iter().map(|v| v.abs()).sum();
            if size > 0.0 {
                worst = worst.max(total.abs() / size);
            }
        }
    }
    worst
}

/// dλ̃/dz of one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeShift {
    pub lambda_t: f64,
    pub slope: f64,
}

/// Central-difference slopes dλ̃/dz at `params.z` for the `count` modes of
/// smallest |λ̃|. Modes at z ± dz are matched to the base modes by
/// eigenfunction overlap.
pub fn dipole_shift(params: &AngularParams, dz: f64, count: usize) -> Result<Vec<ModeShift>> {
    if !(1e-6..=1e-2).contains(&dz) {
        return Err(Error::domain(format!("dz = {dz} outside [1e-6, 1e-2]")));
    }
    let n = params.grid_points;
    let base = solve_grid(params, n)?;
    let plus = solve_grid(&params.with_z(params.z + dz), n)?;
    let minus = solve_grid(&params.with_z(params.z - dz), n)?;
    base.modes
        .iter()
        .take(count)
        .map(|mode| {
            let up = track(mode, &plus.modes)?;
            let down = track(mode, &minus.modes)?;
            Ok(ModeShift {
                lambda_t: mode.lambda,
                slope: (up - down) / (2.0 * dz),
            })
        })
        .collect()
}

fn track(mode: &GridMode, candidates: &[GridMode]) -> Result<f64> {
    let (best, overlap) = candidates
        .iter()
        .map(|c| {
            let o = (mode.g1.dot(&c.g1) + mode.g2.dot(&c.g2)).abs();
            (c.lambda, o)
        })
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .ok_or_else(|| Error::Tracking("no candidate modes".into()))?;
    if overlap < 0.9 {
        return Err(Error::Tracking(format!(
            "mode at lambda = {} has best overlap {overlap:.3}",
            mode.lambda
        )));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn param_validation() {
        assert!(AngularParams::new(0.5, 0.0, 64).is_ok());
        assert!(AngularParams::new(-1.5, 0.1, 64).is_ok());
        assert!(AngularParams::new(1.0, 0.0, 64).is_err());
        assert!(AngularParams::new(0.3, 0.0, 64).is_err());
        assert!(AngularParams::new(0.5, 0.0, 32).is_err());
    }

    #[test]
    fn operator_on_lowest_mode() {
        // m̃ = ½, z = 0: η₁ = cos(θ/2), η₂ = −sin(θ/2) with λ̃ = 1.
        let p = AngularParams::new(0.5, 0.0, 64).unwrap();
        let theta = theta_grid(64);
        let e1: Vec<f64> = theta.iter().map(|t| (0.5 * t).cos()).collect();
        let e2: Vec<f64> = theta.iter().map(|t| -(0.5 * t).sin()).collect();
        let (o1, o2) = angular_operator_apply(&p, &e1, &e2);
        for i in 0..64 {
            assert!((o1[i] - e2[i]).abs() < 1e-11);
            assert!((o2[i] - e1[i]).abs() < 1e-11);
        }
    }

    #[test]
    fn operator_is_linear_and_grid_consistent() {
        let p = AngularParams::new(1.5, 0.2, 64).unwrap();
        let f = |t: f64| (0.5 * t).sin().powi(3) * (1.0 + t.cos());
        let g = |t: f64| (0.5 * t).cos().powi(3) * t.sin();
        let apply = |n: usize, c: f64| {
            let th = theta_grid(n);
            let e1: Vec<f64> = th.iter().map(|&t| c * f(t)).collect();
            let e2: Vec<f64> = th.iter().map(|&t| c * g(t)).collect();
            (th, angular_operator_apply(&p, &e1, &e2))
        };
        let (_, (a1, a2)) = apply(64, 1.0);
        let (_, (b1, b2)) = apply(64, 3.0);
        for i in 0..64 {
            assert!((3.0 * a1[i] - b1[i]).abs() < 1e-11 * b1[i].abs().max(1.0));
            assert!((3.0 * a2[i] - b2[i]).abs() < 1e-11 * b2[i].abs().max(1.0));
        }
        // Evaluate the exact operator output on the fine grid's points.
        let (th, (c1, _)) = apply(128, 1.0);
        for (i, &t) in th.iter().enumerate() {
            let h = 1e-5;
            let d = (f(t + h) - f(t - h)) / (2.0 * h);
            let w = p.m_tilde / t.sin() - p.z * t.sin().powi(2);
            let exact = d + (0.5 / t.tan() - w) * f(t);
            assert!((c1[i] - exact).abs() < 1e-7 * exact.abs().max(1.0));
        }
    }

    fn lambdas(m: f64, z: f64, count: usize) -> Vec<f64> {
        let p = AngularParams::new(m, z, 64).unwrap();
        solve_angular_eigen(&p, count)
            .unwrap()
            .modes
            .iter()
            .map(|e| e.lambda_t)
            .collect()
    }

    #[test]
    fn free_spectrum_is_integer() {
        for m in [0.5, -0.5] {
            let got = lambdas(m, 0.0, 8);
            let want = [1.0, -1.0, 2.0, -2.0, 3.0, -3.0, 4.0, -4.0];
            for (g, w) in got.iter().zip(want) {
                assert!((g - w).abs() < 1e-9, "m={m}: {got:?}");
            }
        }
        let got = lambdas(1.5, 0.0, 2);
        assert!((got[0] - 2.0).abs() < 1e-9 && (got[1] + 2.0).abs() < 1e-9);
        let got = lambdas(-2.5, 0.0, 2);
        assert!((got[0] - 3.0).abs() < 1e-9);
    }

    #[test]
    fn dipole_spectrum_is_stable_and_symmetric() {
        let p = AngularParams::new(0.5, 0.1, 64).unwrap();
        let s = solve_angular_eigen(&p, 8).unwrap();
        let want = [0.941_668_82, 1.986_225_41, 2.990_523_51, 3.992_770_86];
        for (k, w) in want.iter().enumerate() {
            assert!((s.modes[2 * k].lambda_t - w).abs() < 1e-8);
            assert!((s.modes[2 * k + 1].lambda_t + w).abs() < 1e-8);
            assert!(s.modes[2 * k].extrapolation_error < 1e-9);
            assert!(s.modes[2 * k].residual < 1e-6);
        }
    }

    #[test]
    fn eigenfunctions_satisfy_first_order_system() {
        let p = AngularParams::new(-1.5, 0.3, 64).unwrap();
        let s = solve_angular_eigen(&p, 2).unwrap();
        let mode = &s.modes[0];
        let fine = AngularParams {
            grid_points: 128,
            ..p
        };
        let (o1, o2) = angular_operator_apply(&fine, &mode.eta1, &mode.eta2);
        let lam = mode.lambda_t;
        let scale = mode
            .eta1
            .iter()
            .chain(&mode.eta2)
            .fold(0.0f64, |a, v| a.max(v.abs()));
        for i in 0..mode.theta.len() {
            assert!((o1[i] - lam * mode.eta2[i]).abs() < 1e-8 * scale);
            assert!((o2[i] - lam * mode.eta1[i]).abs() < 1e-8 * scale);
        }
    }

    #[test]
    fn dipole_shift_is_finite_and_second_order() {
        let p = AngularParams::new(0.5, 0.0, 64).unwrap();
        let a = dipole_shift(&p, 1e-3, 4).unwrap();
        let b = dipole_shift(&p, 5e-4, 4).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(x.slope.is_finite());
            assert!((x.slope - y.slope).abs() < 1e-5, "{x:?} {y:?}");
        }
        // the z = 0.1 values above sit well inside a linear-plus-quadratic band
        let shifted = lambdas(0.5, 1e-3, 1)[0];
        assert!((shifted - 1.0 - a[0].slope * 1e-3).abs() < 1e-5);
    }

    #[test]
    fn dipole_shift_rejects_bad_step() {
        let p = AngularParams::new(0.5, 0.0, 64).unwrap();
        assert!(dipole_shift(&p, 0.1, 2).is_err());
    }
}
