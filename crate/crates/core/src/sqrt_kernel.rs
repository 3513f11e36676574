//! The square-root operator √(p² + μ²) in position space: its Bessel kernel,
//! an ε-ball regularized quadrature application to spherically symmetric
//! functions, and the Fourier-multiplier reference.

use crate::error::{Error, Result};
use crate::numerics::quad::{self, CompositeRule, QuadSpec};
use crate::numerics::richardson;
use crate::specfun::{bessel_k0, bessel_k1};
use std::f64::consts::PI;

/// Normalization of the smooth kernel used by [`apply_kernel`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelReading {
    /// −(μ²/π²)[K₀(μr)/r + 2K₁(μr)/(μr²)]/r, as printed.
    Literal,
    /// −μ²K₂(μr)/(2π²r²), the inverse Fourier transform of √(p² + μ²) off
    /// the diagonal (half the literal kernel).
    FourierNormalized,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelConfig {
    pub mu: f64,
    /// Largest exclusion radius; level k uses ball_eps / 2^k.
    pub ball_eps: f64,
    pub extrapolation_levels: usize,
    pub reading: KernelReading,
    /// Relative tolerance of the radial quadratures.
    pub rel_tol: f64,
    /// Composite Gauss-Legendre panels for the momentum integral.
    pub spectral_panels: usize,
}

impl Default for KernelConfig {
    fn default() -> Self {
        Self {
            mu: 1.0,
            ball_eps: 0.1,
            extrapolation_levels: 3,
            reading: KernelReading::FourierNormalized,
            rel_tol: 1e-12,
            spectral_panels: 64,
        }
    }
}

impl KernelConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.mu > 0.0) {
            return Err(Error::domain(format!(
                "mu must be positive, got {}",
                self.mu
            )));
        }
        if !(self.ball_eps > 0.0) {
            return Err(Error::domain(format!(
                "ball_eps must be positive, got {}",
                self.ball_eps
            )));
        }
        if self.extrapolation_levels < 2 {
            return Err(Error::domain("need at least two extrapolation levels"));
        }
        if self.spectral_panels == 0 {
            return Err(Error::domain("spectral_panels must be positive"));
        }
        Ok(())
    }

    pub fn eps_levels(&self) -> Vec<f64> {
        (0..self.extrapolation_levels)
            .map(|k| self.ball_eps / 2f64.powi(k as i32))
            .collect()
    }
}

/// Literal smooth kernel −(μ²/π²)[K₀(μr)/r + 2K₁(μr)/(μr²)]/r.
pub fn kernel_value(cfg: &KernelConfig, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::domain(format!("kernel needs r > 0, got {r}")));
    }
    let mu = cfg.mu;
    let x = mu * r;
    Ok(-(mu * mu / (PI * PI)) * (bessel_k0(x)? / r + 2.0 * bessel_k1(x)? / (mu * r * r)) / r)
}

/// The kernel actually integrated under `cfg.reading`.
pub fn reading_kernel(cfg: &KernelConfig, r: f64) -> Result<f64> {
    let lit = kernel_value(cfg, r)?;
    Ok(match cfg.reading {
        KernelReading::Literal => lit,
        KernelReading::FourierNormalized => 0.5 * lit,
    })
}

/// Spherically symmetric sum of Gaussians Σ A_i e^{−r²/2σ_i²}.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialTestFunction {
    pub terms: Vec<(f64, f64)>,
}

impl RadialTestFunction {
    pub fn gaussian(sigma: f64) -> Self {
        Self {
            terms: vec![(1.0, sigma)],
        }
    }

    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self { terms }
    }

    fn validate(&self) -> Result<()> {
        if self
            .terms
            .iter()
            .any(|(a, s)| !(s > &0.0) || !a.is_finite())
        {
            return Err(Error::domain("Gaussian widths must be positive"));
        }
        Ok(())
    }

    pub fn value(&self, r: f64) -> f64 {
        self.terms
            .iter()
            .map(|(a, s)| a * (-r * r / (2.0 * s * s)).exp())
            .sum()
    }

    /// Average over the sphere of radius `r` centred at distance `big_r`
    /// from the origin.
    pub fn sphere_average(&self, big_r: f64, r: f64) -> f64 {
        self.terms
            .iter()
            .map(|(a, s)| {
                let s2 = s * s;
                let q = big_r * r / s2;
                if q < 1e-300 {
                    return a * (-(big_r * big_r + r * r) / (2.0 * s2)).exp();
                }
                let d = big_r - r;
                -a * (-d * d / (2.0 * s2)).exp() * (-2.0 * q).exp_m1() / (2.0 * q)
            })
            .sum()
    }

    /// Radial Fourier transform f̂(p) = Σ A (2πσ²)^{3/2} e^{−σ²p²/2}.
    pub fn fourier(&self, p: f64) -> f64 {
        self.terms
            .iter()
            .map(|(a, s)| a * (2.0 * PI * s * s).powf(1.5) * (-0.5 * s * s * p * p).exp())
            .sum()
    }

    fn widest(&self) -> f64 {
        self.terms.iter().map(|t| t.1).fold(0.0, f64::max)
    }

    fn narrowest(&self) -> f64 {
        self.terms.iter().map(|t| t.1).fold(f64::INFINITY, f64::min)
    }
}

/// (√(p² + μ²) f)(x) at each |x| by inverse radial Fourier transform.
pub fn apply_spectral(
    cfg: &KernelConfig,
    f: &RadialTestFunction,
    x_points: &[f64],
) -> Result<Vec<f64>> {
    cfg.validate()?;
    f.validate()?;
    if f.terms.is_empty() {
        return Ok(vec![0.0; x_points.len()]);
    }
    let p_max = 9.5 / f.narrowest();
    let rule = CompositeRule::new(0.0, p_max, cfg.spectral_panels, 20);
    Ok(x_points
        .iter()
        .map(|&x| {
            let x = x.abs();
            let integral = rule.integrate(|p| {
                let radial = if x * p < 1e-8 {
                    p * p * (1.0 - (x * p).powi(2) / 6.0)
                } else {
                    p * (p * x).sin() / x
                };
                (p * p + cfg.mu * cfg.mu).sqrt() * f.fourier(p) * radial
            });
            integral / (2.0 * PI * PI)
        })
        .collect())
}

/// Kernel-path value at one ε level, split into its two divergent parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelLevel {
    pub eps: f64,
    /// ∫_{|y|>ε} K(|y|) f(x + y) d³y.
    pub near_field: f64,
    /// [μ − ∫_{|y|>ε} K d³y] f(x): the delta piece under the same ball.
    pub local: f64,
}

impl KernelLevel {
    pub fn total(&self) -> f64 {
        self.near_field + self.local
    }
}

/// Kernel-path result at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelApplication {
    pub x: f64,
    pub levels: Vec<KernelLevel>,
    pub extrapolated: f64,
    pub extrapolation_error: f64,
}

fn radial_breakpoints(eps: f64, x: f64, width: f64) -> Vec<f64> {
    let mut pts = vec![eps];
    let mut p = 2.0 * eps;
    while p < 0.5 {
        pts.push(p);
        p *= 2.0;
    }
    for k in -6..=6 {
        let v = x + k as f64 * width;
        if v > pts[pts.len() - 1] {
            pts.push(v);
        }
    }
    let last = pts[pts.len() - 1];
    if last < 1.0 {
        pts.push(1.0);
    }
    pts
}

fn kernel_level(
    cfg: &KernelConfig,
    f: &RadialTestFunction,
    x: f64,
    eps: f64,
) -> Result<KernelLevel> {
    let spec = QuadSpec::new(1e-300, cfg.rel_tol);
    let pts = radial_breakpoints(eps, x, f.widest());
    let end = pts[pts.len() - 1];
    let kernel = |r: f64| 4.0 * PI * r * r * reading_kernel(cfg, r).unwrap_or(0.0);
    let near_integrand = |r: f64| kernel(r) * f.sphere_average(x, r);
    let near = quad::over_breakpoints(near_integrand, &pts, spec)?
        + quad::to_infinity(near_integrand, end, spec)?;
    let mass = quad::over_breakpoints(kernel, &pts, spec)? + quad::to_infinity(kernel, end, spec)?;
    Ok(KernelLevel {
        eps,
        near_field: near,
        local: (cfg.mu - mass) * f.value(x),
    })
}

/// Error expansion of the ε-ball truncation: a·ε + b·ε³ + ….
const EPS_ORDERS: [f64; 3] = [1.0, 3.0, 5.0];

/// √(p² + μ²) f at each |x| by ε-ball regularized kernel quadrature with
/// Richardson extrapolation ε → 0.
pub fn apply_kernel(
    cfg: &KernelConfig,
    f: &RadialTestFunction,
    x_points: &[f64],
) -> Result<Vec<KernelApplication>> {
    cfg.validate()?;
    f.validate()?;
    let eps = cfg.eps_levels();
    x_points
        .iter()
        .map(|&x| {
            let x = x.abs();
            let levels = eps
                .iter()
                .map(|&e| kernel_level(cfg, f, x, e))
                .collect::<Result<Vec<_>>>()?;
            let totals: Vec<f64> = levels.iter().map(KernelLevel::total).collect();
            let ex = richardson::extrapolate(&totals, 2.0, &EPS_ORDERS);
            let scale = totals.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
            if !ex.value.is_finite() || ex.error > 0.05 * scale {
                return Err(Error::convergence(format!(
                    "kernel extrapolation at x = {x} unsettled: levels {totals:?}, last correction {:.3e}",
                    ex.error
                )));
            }
            Ok(KernelApplication {
                x,
                levels,
                extrapolated: ex.value,
                extrapolation_error: ex.error,
            })
        })
        .collect()
}

/// Exponential decay rate of |(Hf)(d)|·d^{5/2} over the given distances
/// (least-squares slope of its logarithm), from the kernel path.
pub fn locality_decay_rate(
    cfg: &KernelConfig,
    f: &RadialTestFunction,
    distances: &[f64],
) -> Result<f64> {
    let apps = apply_kernel(cfg, f, distances)?;
    let pts: Vec<(f64, f64)> = apps
        .iter()
        .map(|a| (a.x, (a.extrapolated.abs() * a.x.powf(2.5)).ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(-sxy / sxx)
}
