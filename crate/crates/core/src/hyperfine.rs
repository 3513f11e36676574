//! Hydrogen 2s hyperfine integrals with the short-distance cutoff ρ₀, the
//! A² correction, the normalization correction and a shooting check that
//! the cutoff-form radial equation reproduces the Dirac spectrum.
//!
//! Everything here is in atomic units (η = 1/Bohr radius = 1) except the
//! eigenvalues returned by [`slater_radial_eigen`], which are in units of mc².

use crate::error::{Error, Result};
use crate::numerics::ode::{self, OdeSpec};
use crate::numerics::quad::{self, QuadSpec};
use crate::specfun::{expint_ei_neg, SeriesControl, EULER_GAMMA};
use serde::Serialize;

pub const FINE_STRUCTURE: f64 = 1.0 / 137.036;
pub const G_N_SQ: f64 = 30.9136;
pub const MASS_RATIO: f64 = 1.0 / 1836.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HydrogenConfig {
    pub gamma: f64,
    pub rho0: f64,
    pub g_n_sq: f64,
    /// Electron-to-proton mass ratio entering the nuclear magneton.
    pub mass_ratio: f64,
    pub eta: f64,
}

impl Default for HydrogenConfig {
    fn default() -> Self {
        Self::with_gamma(FINE_STRUCTURE)
    }
}

impl HydrogenConfig {
    /// Physical constants with ρ₀ = γ²/2.
    pub fn with_gamma(gamma: f64) -> Self {
        Self {
            gamma,
            rho0: 0.5 * gamma * gamma,
            g_n_sq: G_N_SQ,
            mass_ratio: MASS_RATIO,
            eta: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("gamma", self.gamma),
            ("rho0", self.rho0),
            ("g_n_sq", self.g_n_sq),
            ("mass_ratio", self.mass_ratio),
            ("eta", self.eta),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// μ_I² = mass_ratio²·g_N²·μ₀²·⟨I²⟩ with μ₀ = γ/2 and ⟨I²⟩ = 3/4.
    pub fn mu_i_sq(&self) -> f64 {
        self.mass_ratio.powi(2) * self.g_n_sq * (0.5 * self.gamma).powi(2) * 0.75
    }

    /// Same constants at a different γ, with ρ₀ = γ²/2 and the mass ratio
    /// scaled in proportion to γ (the order counting (1/1836)² ≅ (γ/13)²).
    pub fn rescaled(&self, gamma: f64) -> Self {
        Self {
            gamma,
            rho0: 0.5 * gamma * gamma,
            mass_ratio: self.mass_ratio * gamma / self.gamma,
            ..*self
        }
    }
}

fn spec() -> QuadSpec {
    QuadSpec::new(1e-300, 1e-13)
}

/// R(r) = (1/√2) η^{3/2} (1 − ηr/2) e^{−ηr/2}.
pub fn radial_2s(r: f64, eta: f64) -> f64 {
    std::f64::consts::FRAC_1_SQRT_2 * eta.powf(1.5) * (1.0 - 0.5 * eta * r) * (-0.5 * eta * r).exp()
}

fn radial_2s_derivative(r: f64, eta: f64) -> f64 {
    let e = (-0.5 * eta * r).exp();
    std::f64::consts::FRAC_1_SQRT_2 * eta.powf(2.5) * (0.25 * eta * r - 1.0) * e
}

/// ∫ f over (0, ∞) split at geometric breakpoints around `scale`.
fn half_line<F: FnMut(f64) -> f64>(mut f: F, scale: f64) -> Result<f64> {
    let mut points = vec![0.0];
    let mut p = scale;
    while p < 1.0 {
        points.push(p);
        p *= 10.0;
    }
    points.extend_from_slice(&[1.0, 4.0, 10.0]);
    let head = quad::over_breakpoints(&mut f, &points, spec())?;
    Ok(head + quad::to_infinity(&mut f, 10.0, spec())?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlaterIntegral {
    /// I(ρ₀) = ∫₀^∞ (1 − ρ/2)² e^{−ρ} / (ρ + ρ₀)² dρ.
    pub value: f64,
    pub rho0_times_value: f64,
}

pub fn slater_integral(cfg: &HydrogenConfig) -> Result<SlaterIntegral> {
    cfg.validate()?;
    let r0 = cfg.rho0;
    let value = half_line(
        |rho| (1.0 - 0.5 * rho).powi(2) * (-rho).exp() / (rho + r0).powi(2),
        r0,
    )?;
    Ok(SlaterIntegral {
        value,
        rho0_times_value: r0 * value,
    })
}

/// Contact-term reference (8π/3)|ψ(0)|² = η³/3.
pub fn pauli_reference(cfg: &HydrogenConfig) -> f64 {
    let psi0_sq = radial_2s(0.0, cfg.eta).powi(2) / (4.0 * std::f64::consts::PI);
    8.0 * std::f64::consts::PI / 3.0 * psi0_sq
}

/// The same contact quantity from the cutoff form, (1/3)η³ρ₀I(ρ₀).
pub fn slater_contact(cfg: &HydrogenConfig) -> Result<f64> {
    Ok(cfg.eta.powi(3) / 3.0 * slater_integral(cfg)?.rho0_times_value)
}

/// |R(r)|²·r/(r + r₀): the contact density seen through the (1 + r₀/r)^{−1}
/// factor.
pub fn delta_term_profile(cfg: &HydrogenConfig, r: f64) -> f64 {
    let r0 = cfg.rho0 / cfg.eta;
    radial_2s(r, cfg.eta).powi(2) * r / (r + r0)
}

/// Contact-term expectation with the (1 + r₀/r)^{−1} factor: the r → 0 limit
/// of [`delta_term_profile`], which is zero for any r₀ > 0. The limit is
/// checked along r = 10^{−6} … 10^{−14} before returning.
pub fn delta_term_value(cfg: &HydrogenConfig) -> Result<f64> {
    cfg.validate()?;
    let samples: Vec<f64> = (6..=14)
        .map(|k| delta_term_profile(cfg, 10f64.powi(-k)))
        .collect();
    let decreasing = samples.windows(2).all(|w| w[1] < w[0]);
    let last = samples[samples.len() - 1];
    let bound = radial_2s(0.0, cfg.eta).powi(2) * 1e-14 / (cfg.rho0 / cfg.eta) * 1.01;
    if !decreasing || last > bound {
        return Err(Error::convergence(format!(
            "contact density does not vanish at the origin (last sample {last:e})"
        )));
    }
    Ok(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct A2Quadrature {
    /// 1/ρ pole integrated from ε, the remaining partial fractions from 0.
    pub partial_fraction: f64,
    /// Full integrand from ε, plus the integrand minus its 1/ρ pole on (0, ε).
    pub direct: f64,
}

/// A² correction (1/3)η³μ_I² ∫ ρ₀(1 − ρ/2)² e^{−ρ}/(ρ(ρ + ρ₀)) dρ with the
/// 1/ρ pole cut off at ρ = ρ₀.
pub fn a2_quadrature(cfg: &HydrogenConfig) -> Result<A2Quadrature> {
    a2_quadrature_with_cutoff(cfg, cfg.rho0)
}

pub fn a2_quadrature_with_cutoff(cfg: &HydrogenConfig, cutoff: f64) -> Result<A2Quadrature> {
    cfg.validate()?;
    if !(cutoff > 0.0) {
        return Err(Error::domain("cutoff must be positive"));
    }
    let r0 = cfg.rho0;
    let c = 1.0 + r0 + 0.25 * r0 * r0;
    let pref = cfg.eta.powi(3) * cfg.mu_i_sq() / 3.0;
    let smooth = |rho: f64| (0.25 * r0 - c / (r0 + rho)) * (-rho).exp();
    let full = |rho: f64| r0 * (1.0 - 0.5 * rho).powi(2) * (-rho).exp() / (rho * (rho + r0));
    let pole = |rho: f64| (-rho).exp() / rho;

    let tail = |f: &dyn Fn(f64) -> f64| -> Result<f64> {
        let mut points = vec![cutoff];
        let mut p = cutoff * 10.0;
        while p < 10.0 {
            points.push(p);
            p *= 10.0;
        }
        points.push(p.max(10.0));
        let head = quad::over_breakpoints(f, &points, spec())?;
        Ok(head + quad::to_infinity(f, points[points.len() - 1], spec())?)
    };

    let partial_fraction = pref * (tail(&pole)? + half_line(smooth, r0)?);
    let below = quad::adaptive(
        |rho| (0.25 * r0 * rho - 1.0 - r0) / (rho + r0) * (-rho).exp(),
        0.0,
        cutoff,
        spec(),
    )?;
    let direct = pref * (tail(&full)? + below);
    if (partial_fraction - direct).abs() > 1e-8 * partial_fraction.abs() {
        return Err(Error::convergence(format!(
            "A² quadrature paths disagree: {partial_fraction:e} vs {direct:e}"
        )));
    }
    Ok(A2Quadrature {
        partial_fraction,
        direct,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct A2ClosedForm {
    /// (1/3)μ_I²[−Ei(−ρ₀) + ρ₀/4 + e^{ρ₀}(1 + ρ₀ + ρ₀²/4)Ei(−ρ₀)].
    pub exponential_integral: f64,
    /// Leading-order expansion in γ with ρ₀ = γ²/2.
    pub reduced: f64,
}

pub fn a2_closed_form(cfg: &HydrogenConfig) -> Result<A2ClosedForm> {
    cfg.validate()?;
    let r0 = cfg.rho0;
    let ei = expint_ei_neg(r0, SeriesControl::default())?;
    let c = 1.0 + r0 + 0.25 * r0 * r0;
    let exponential_integral =
        cfg.eta.powi(3) * cfg.mu_i_sq() / 3.0 * (-ei + 0.25 * r0 + r0.exp() * c * ei);
    let g2 = cfg.gamma * cfg.gamma;
    let reduced = g2 * cfg.mass_ratio.powi(2) * cfg.g_n_sq / 16.0
        * (g2 / 8.0 + (g2 + 5.0 * g2 * g2 / 16.0) * (EULER_GAMMA + (0.5 * g2).ln() - 0.5 * g2));
    Ok(A2ClosedForm {
        exponential_integral,
        reduced,
    })
}

/// Log-ratio exponent p in |A²| ∝ γ^p between `cfg.gamma` and `gamma2`,
/// using [`HydrogenConfig::rescaled`] for the second point.
pub fn a2_gamma_power(cfg: &HydrogenConfig, gamma2: f64) -> Result<f64> {
    let a = a2_closed_form(cfg)?.exponential_integral;
    let b = a2_closed_form(&cfg.rescaled(gamma2))?.exponential_integral;
    Ok((a.abs() / b.abs()).ln() / (cfg.gamma / gamma2).ln())
}

/// (γ²/4)∫ R′(r)² r² / (1 + r₀/r)² dr: the small-component weight
/// |(σ·p)ψ|²/4m²c² added to the unit norm.
pub fn normalization_correction(cfg: &HydrogenConfig) -> Result<f64> {
    cfg.validate()?;
    let r0 = cfg.rho0 / cfg.eta;
    let eta = cfg.eta;
    let integral = half_line(
        |r| {
            let d = radial_2s_derivative(r, eta);
            let w = r * r / (r + r0);
            d * d * w * w
        },
        r0,
    )?;
    Ok(0.25 * cfg.gamma * cfg.gamma * integral)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SplittingReport {
    pub gamma: f64,
    pub rho0: f64,
    pub slater_integral: f64,
    pub slater_limit_ratio: f64,
    pub pauli_reference: f64,
    pub ratio_slater_to_pauli: f64,
    pub delta_term: f64,
    pub a2_quadrature: f64,
    pub a2_closed_form: f64,
    pub a2_reduced_form: f64,
    pub a2_gamma_power: f64,
    pub normalization_correction: f64,
}

/// Second γ used by the report's exponent fit.
pub const GAMMA_FIT_PARTNER: f64 = 1.0 / 274.0;

pub fn splitting_report(cfg: &HydrogenConfig) -> Result<SplittingReport> {
    let slater = slater_integral(cfg)?;
    let pauli = pauli_reference(cfg);
    let closed = a2_closed_form(cfg)?;
    Ok(SplittingReport {
        gamma: cfg.gamma,
        rho0: cfg.rho0,
        slater_integral: slater.value,
        slater_limit_ratio: slater.rho0_times_value,
        pauli_reference: pauli,
        ratio_slater_to_pauli: cfg.eta.powi(3) / 3.0 * slater.rho0_times_value / pauli,
        delta_term: delta_term_value(cfg)?,
        a2_quadrature: a2_quadrature(cfg)?.partial_fraction,
        a2_closed_form: closed.exponential_integral,
        a2_reduced_form: closed.reduced,
        a2_gamma_power: a2_gamma_power(cfg, GAMMA_FIT_PARTNER)?,
        normalization_correction: normalization_correction(cfg)?,
    })
}

/// Prefactor of the spin-orbit-like term in the cutoff radial equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MassFactor {
    /// 1/(E + mc² − V): reproduces the Dirac spectrum.
    Exact,
    /// 1/(2mc²(1 + r₀/r)): the nonrelativistic prefactor.
    Pauli,
}

/// Large-component sector (ℓ, j = ½) of the cutoff radial equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    /// ℓ = 0, ⟨S·L⟩ = 0.
    S,
    /// ℓ = 1, ⟨S·L⟩ = −1.
    P,
}

impl Sector {
    pub fn ell(self) -> f64 {
        match self {
            Sector::S => 0.0,
            Sector::P => 1.0,
        }
    }

    /// [j(j+1) − ℓ(ℓ+1) − 3/4]/2 for j = ½.
    pub fn spin_orbit(self) -> f64 {
        let l = self.ell();
        (0.75 - l * (l + 1.0) - 0.75) / 2.0
    }

    /// Dirac κ = −(1 + 2⟨S·L⟩).
    pub fn kappa(self) -> f64 {
        -(1.0 + 2.0 * self.spin_orbit())
    }
}

/// Dirac-Coulomb binding energy 1 − E in units of mc², without cancellation.
pub fn dirac_binding(gamma: f64, n: u32, kappa: f64) -> f64 {
    let nr = n as f64 - kappa.abs();
    let q = (gamma / (nr + (kappa * kappa - gamma * gamma).sqrt())).powi(2);
    let root = (1.0 + q).sqrt();
    q / ((1.0 + root) * root)
}

/// Eigenvalue E (units of mc²) of the cutoff radial equation for the
/// large component in the given sector, found by shooting on G = rR in the
/// scaled variable x = γr (Bohr units) and t = ln x. The E-dependence of the
/// prefactor is resolved by fixed-point iteration (at most 50 rounds).
pub fn slater_radial_eigen(n: u32, sector: Sector, gamma: f64, mass: MassFactor) -> Result<f64> {
    if n < 1 || (sector == Sector::P && n < 2) {
        return Err(Error::domain(format!("no {sector:?} level with n = {n}")));
    }
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::domain(format!(
            "gamma must be in (0, 1), got {gamma}"
        )));
    }
    let mut b_frozen = 0.5 / (n * n) as f64;
    for _ in 0..50 {
        let b = shoot(n, sector, gamma, mass, b_frozen)?;
        if (b - b_frozen).abs() <= 1e-15 * b {
            return Ok(1.0 - gamma * gamma * b);
        }
        b_frozen = b;
    }
    Err(Error::convergence(
        "energy-dependent prefactor did not reach self-consistency in 50 iterations",
    ))
}

/// Binding energy b (E = 1 − γ²b) with the prefactor frozen at `b_frozen`.
fn shoot(n: u32, sector: Sector, gamma: f64, mass: MassFactor, b_frozen: f64) -> Result<f64> {
    let g2 = gamma * gamma;
    let kappa = sector.kappa();
    let l = sector.ell();
    let ll = l * (l + 1.0);
    let s = (kappa * kappa - g2).sqrt();
    let e_plus_1 = match mass {
        MassFactor::Exact => 2.0 - g2 * b_frozen,
        MassFactor::Pauli => 2.0,
    };
    let x_min = 1e-3 * g2;
    let x_max = 40.0 * n as f64;
    let x_match = 0.5 * (n * n) as f64;
    let ode_spec = OdeSpec {
        rel_tol: 1e-12,
        abs_tol: 1e-300,
        max_steps: 200_000,
    };

    let mismatch = |b: f64| -> Result<f64> {
        let rhs = |t: f64, y: &[f64; 2]| {
            let x = t.exp();
            let xw = e_plus_1 * x + g2;
            let w = xw / x;
            [
                y[1],
                y[1] + ll * y[0] - g2 * (y[1] + kappa * y[0]) / xw - w * (x - b * x * x) * y[0],
            ]
        };
        let out = ode::integrate(rhs, x_min.ln(), [1.0, s], x_match.ln(), ode_spec)?;
        let k = (b * (2.0 - g2 * b)).sqrt();
        let inn = ode::integrate(rhs, x_max.ln(), [1.0, -k * x_max], x_match.ln(), ode_spec)?;
        let norm = (out[0].hypot(out[1])) * (inn[0].hypot(inn[1]));
        Ok((out[1] * inn[0] - out[0] * inn[1]) / norm)
    };

    let b0 = 0.5 / (n * n) as f64;
    find_root(mismatch, b0 * 0.99, b0 * 1.01, 1e-15 * b0)
}

/// Illinois false position on a sign-changing bracket.
fn find_root<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<f64> {
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa.signum() == fb.signum() {
        return Err(Error::convergence(format!(
            "shooting mismatch does not change sign on [{a}, {b}]"
        )));
    }
    let mut side = 0;
    for _ in 0..200 {
        let c = (a * fb - b * fa) / (fb - fa);
        let fc = f(c)?;
        if fc == 0.0 || (b - a).abs() < tol {
            return Ok(c);
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
        if (b - a).abs() < tol {
            return Ok(0.5 * (a + b));
        }
    }
    Err(Error::convergence(
        "shooting root search exceeded 200 iterations",
    ))
}
