//! Radial equations for hydrogen with an anomalous-moment dipole coupling:
//! the Ω separation matrix, complex series recursions, ₁F₁ assembly of the
//! eigenfunctions and the quantized energies.

use crate::diracsep::{blocks, DiracAlgebra};
use crate::error::{Error, Result};
use crate::specfun::{kummer_1f1, SeriesControl};
use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

type C = Complex64;

const I: C = C::new(0.0, 1.0);

/// Ω = [[0, σ₃], [−σ₃, 0]].
pub fn omega_matrix(alg: &DiracAlgebra) -> Matrix4<C> {
    let z = Matrix2::zeros();
    blocks(&z, &alg.sigma[2], &(-alg.sigma[2]), &z)
}

/// Largest entry of each matrix condition Ω must satisfy for the
/// radial/angular separation, in the order: [Ω,α₁], [Ω,α₂], {Ω,α₃},
/// [α₃Ω,α₁Ω], [α₃Ω,α₂Ω], [ρ₃Ω,α₁Ω], [ρ₃Ω,α₂Ω], [Ω,α₁Ω], [Ω,α₂Ω].
pub fn omega_conditions(alg: &DiracAlgebra, omega: &Matrix4<C>) -> [f64; 9] {
    let comm = |a: &Matrix4<C>, b: &Matrix4<C>| a * b - b * a;
    let anti = |a: &Matrix4<C>, b: &Matrix4<C>| a * b + b * a;
    let size = |m: Matrix4<C>| m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let [a1, a2, a3] = &alg.alpha;
    let r3 = &alg.rho[2];
    let o = omega;
    [
        size(comm(o, a1)),
        size(comm(o, a2)),
        size(anti(o, a3)),
        size(comm(&(a3 * o), &(a1 * o))),
        size(comm(&(a3 * o), &(a2 * o))),
        size(comm(&(r3 * o), &(a1 * o))),
        size(comm(&(r3 * o), &(a2 * o))),
        size(comm(o, &(a1 * o))),
        size(comm(o, &(a2 * o))),
    ]
}

/// Parameters of a bound radial solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialParams {
    pub gamma: f64,
    pub lambda_t: f64,
    pub energy: f64,
    /// √(1 − E²).
    pub eps_bind: f64,
    /// √(λ̃² − γ²).
    pub delta: f64,
    /// γE/ε − δ.
    pub n_prime: f64,
    pub k: C,
}

impl RadialParams {
    /// γ/ε.
    pub fn g(&self) -> f64 {
        self.gamma / self.eps_bind
    }

    fn from_parts(
        gamma: f64,
        lambda_t: f64,
        energy: f64,
        eps_bind: f64,
        delta: f64,
        n_prime: f64,
    ) -> Self {
        let g = gamma / eps_bind;
        // δ + iλ̃ − iG(1 − iE) = −n′ + i(λ̃ − G)
        let k = C::new(delta - g * energy, lambda_t - g);
        Self {
            gamma,
            lambda_t,
            energy,
            eps_bind,
            delta,
            n_prime,
            k,
        }
    }

    /// The two expressions for β₀/α₀ from the indicial system.
    pub fn beta0_ratios(&self) -> (C, C) {
        let g = self.g();
        let e = self.energy;
        let first = -C::new(self.lambda_t, -g * e) / C::new(self.delta, -g);
        let second = -C::new(self.delta, g) / C::new(self.lambda_t, g * e);
        (first, second)
    }

    /// Determinant of the indicial 2×2 system, relative to its largest term.
    pub fn indicial_determinant(&self) -> f64 {
        let g = self.g();
        let e = self.energy;
        let a = C::new(self.lambda_t, -g * e) * C::new(self.lambda_t, g * e);
        let b = C::new(self.delta, -g) * C::new(self.delta, g);
        (a - b).norm() / a.norm().max(b.norm())
    }
}

fn delta_of(gamma: f64, lambda_t: f64) -> Result<f64> {
    let d2 = lambda_t * lambda_t - gamma * gamma;
    if d2 <= 0.0 {
        return Err(Error::domain(format!(
            "imaginary delta: lambda_t^2 = {} <= gamma^2 = {}",
            lambda_t * lambda_t,
            gamma * gamma
        )));
    }
    Ok(d2.sqrt())
}

pub fn bound_params(gamma: f64, lambda_t: f64, energy: f64) -> Result<RadialParams> {
    let delta = delta_of(gamma, lambda_t)?;
    if !(energy.abs() < 1.0) {
        return Err(Error::domain(format!(
            "not a bound state: |E| = {} >= 1",
            energy.abs()
        )));
    }
    let eps_bind = ((1.0 - energy) * (1.0 + energy)).sqrt();
    let n_prime = gamma * energy / eps_bind - delta;
    let p = RadialParams::from_parts(gamma, lambda_t, energy, eps_bind, delta, n_prime);
    let (r1, r2) = p.beta0_ratios();
    if (r1 - r2).norm() > 1e-12 * r1.norm().max(1.0) {
        return Err(Error::convergence(format!(
            "indicial ratios disagree: {r1} vs {r2}"
        )));
    }
    Ok(p)
}

/// Sign of a quantized energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergySign {
    Positive,
    Negative,
}

/// E = ±[1 + γ²/(n′ + δ)²]^{−1/2}.
pub fn energy_level(gamma: f64, lambda_t: f64, n_prime: u32, sign: EnergySign) -> Result<f64> {
    let delta = delta_of(gamma, lambda_t)?;
    let nd = n_prime as f64 + delta;
    let e = nd / nd.hypot(gamma);
    Ok(match sign {
        EnergySign::Positive => e,
        EnergySign::Negative => -e,
    })
}

/// Positive-energy parameters at integer n′, with ε = γ/√((n′+δ)² + γ²)
/// computed directly so that 1 − E² suffers no cancellation.
pub fn quantized_params(gamma: f64, lambda_t: f64, n_prime: u32) -> Result<RadialParams> {
    let delta = delta_of(gamma, lambda_t)?;
    if gamma <= 0.0 {
        return Err(Error::domain("quantized bound states need gamma > 0"));
    }
    let nd = n_prime as f64 + delta;
    let h = nd.hypot(gamma);
    Ok(RadialParams::from_parts(
        gamma,
        lambda_t,
        nd / h,
        gamma / h,
        delta,
        n_prime as f64,
    ))
}

/// Series coefficients of φ₁ = Σ α_q y^{q+δ}, φ₂ = Σ β_q y^{q+δ} together
/// with the constants of their ₁F₁ representation.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSolution {
    pub alpha: Vec<C>,
    pub beta: Vec<C>,
    pub delta: f64,
    /// (1 − n′, −n′, 1 + 2δ).
    pub f1_params: (f64, f64, f64),
    /// Coefficient of ₁F₁(1−n′; 1+2δ; y) in φ₁ and, times −i, in φ₂.
    pub c_upper: C,
    /// Coefficient of ₁F₁(−n′; 1+2δ; y) in φ₁.
    pub c_lower_1: C,
    /// Coefficient of ₁F₁(−n′; 1+2δ; y) in φ₂, before the factor −i.
    pub c_lower_2: C,
    pub alpha0: C,
}

fn guard(z: C, what: &str) -> Result<C> {
    if z.norm() < 1e-13 {
        Err(Error::Singular(format!("{what} vanishes")))
    } else {
        Ok(z)
    }
}

/// (K − 2iλ̃)/(δ − iγ/ε) · α₀/2: the common prefactor of φ₁ in Eq-style form.
pub fn phi1_prefactor(params: &RadialParams, alpha0: C) -> Result<C> {
    let den = guard(C::new(params.delta, -params.g()), "delta - i gamma/eps")?;
    Ok((params.k - 2.0 * I * params.lambda_t) / den * alpha0 * 0.5)
}

pub fn series_coefficients(params: &RadialParams, q_max: usize) -> Result<SeriesSolution> {
    if q_max < 2 {
        return Err(Error::domain("q_max must be at least 2"));
    }
    let k = guard(params.k, "K")?;
    let kc = k.conj();
    let d = params.delta;
    let n = params.n_prime;
    let alpha0 = C::from(1.0);
    let beta0 = params.beta0_ratios().0 * alpha0;

    let prefactor = phi1_prefactor(params, alpha0)?;
    let mut alpha = vec![alpha0, (1.0 + k) / (1.0 + 2.0 * d) * prefactor];
    for q in 2..=q_max {
        let qf = q as f64;
        let den = guard(qf - 1.0 + k, "q - 1 + K")?;
        let next = alpha[q - 1] * (qf - 1.0 - n) / (qf * (qf + 2.0 * d)) * ((qf + k) / den);
        alpha.push(next);
    }
    let mut beta = vec![beta0];
    for (q, a) in alpha.iter().enumerate().skip(1) {
        let qf = q as f64;
        beta.push(*a * (qf + kc) / (I * (qf + k)));
    }

    Ok(SeriesSolution {
        alpha,
        beta,
        delta: d,
        f1_params: (1.0 - n, -n, 1.0 + 2.0 * d),
        c_upper: -n * alpha0 / k,
        c_lower_1: (n + k) / k * alpha0,
        c_lower_2: (n + kc) / k * alpha0,
        alpha0,
    })
}

/// Max relative residual of the defining two-term recursions (the indicial
/// pair at q = 0 and the coupled pair for q ≥ 1).
pub fn recursion_residual(params: &RadialParams, sol: &SeriesSolution) -> f64 {
    let g = params.g();
    let e = params.energy;
    let lam = params.lambda_t;
    let d = params.delta;
    let (a, b) = (&sol.alpha, &sol.beta);
    let mut worst = 0.0f64;
    for q in 0..a.len() {
        let qf = q as f64;
        let (am, bm) = if q == 0 {
            (C::from(0.0), C::from(0.0))
        } else {
            (a[q - 1], b[q - 1])
        };
        let lhs_a = C::new(qf + d, -g) * b[q];
        let rhs_a = -0.5 * I * am - C::new(lam, -g * e) * a[q] + 0.5 * bm;
        let lhs_b = C::new(qf + d, g) * a[q];
        let rhs_b = 0.5 * am + 0.5 * I * bm - C::new(lam, g * e) * b[q];
        let scale = am.norm() + bm.norm() + a[q].norm() + b[q].norm();
        if scale > 0.0 {
            worst = worst.max((lhs_a - rhs_a).norm() / scale);
            worst = worst.max((lhs_b - rhs_b).norm() / scale);
        }
    }
    worst
}

/// Radial amplitudes (a, b) = (u/r, v/r) at radius r.
pub fn radial_eigenfunction(sol: &SeriesSolution, params: &RadialParams, r: f64) -> Result<(C, C)> {
    if !(r > 0.0) {
        return Err(Error::domain(format!("radius must be positive, got {r}")));
    }
    let ctl = SeriesControl::default();
    let y = 2.0 * params.eps_bind * r;
    let (a_up, a_low, b) = sol.f1_params;
    let f_low = kummer_1f1(a_low, b, y, ctl)?;
    let f_up = if sol.c_upper == C::from(0.0) {
        0.0
    } else {
        kummer_1f1(a_up, b, y, ctl)?
    };
    let yd = y.powf(sol.delta);
    let phi1 = (sol.c_upper * f_up + sol.c_lower_1 * f_low) * yd;
    let phi2 = -I * (sol.c_upper * f_up + sol.c_lower_2 * f_low) * yd;
    let damp = (-0.5 * y).exp();
    let u = (phi1 - phi2) * (damp * (1.0 - params.energy).sqrt());
    let v = (phi1 + phi2) * (damp * (1.0 + params.energy).sqrt());
    Ok((u / r, v / r))
}

/// Max over `r_grid` of the residual of the first-order radial system
///   −u′ + λ̃u/r + i(1 − E − γ/r)v = 0,  v′ + λ̃v/r + i(1 + E + γ/r)u = 0
/// for u = r·a, v = r·b, with five-point central differences, each point
/// normalized by max(|u|, |v|).
pub fn ode_residual<F>(eval: F, params: &RadialParams, r_grid: &[f64]) -> Result<f64>
where
    F: Fn(f64) -> Result<(C, C)>,
{
    let uv = |r: f64| -> Result<(C, C)> {
        let (a, b) = eval(r)?;
        Ok((a * r, b * r))
    };
    let (lam, gam, e) = (params.lambda_t, params.gamma, params.energy);
    let mut worst = 0.0f64;
    for &r in r_grid {
        let h = 1e-3 * r;
        let (u0, v0) = uv(r)?;
        let (u1, v1) = uv(r + h)?;
        let (um1, vm1) = uv(r - h)?;
        let (u2, v2) = uv(r + 2.0 * h)?;
        let (um2, vm2) = uv(r - 2.0 * h)?;
        let du = (um2 - 8.0 * um1 + 8.0 * u1 - u2) / (12.0 * h);
        let dv = (vm2 - 8.0 * vm1 + 8.0 * v1 - v2) / (12.0 * h);
        let r1 = -du + u0 * (lam / r) + I * (1.0 - e - gam / r) * v0;
        let r2 = dv + v0 * (lam / r) + I * (1.0 + e + gam / r) * u0;
        let scale = u0.norm().max(v0.norm());
        worst = worst.max(r1.norm().max(r2.norm()) / scale);
    }
    Ok(worst)
}
