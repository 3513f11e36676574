//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when a
//! criterion outside `KNOWN_UNREACHED` fails.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dirac_analytika::angular::{self, AngularParams};
use dirac_analytika::diracsep::{self, DiracAlgebra, ModeConfig, ModeSpectrum};
use dirac_analytika::hyperfine::{self, HydrogenConfig, MassFactor, Sector};
use dirac_analytika::radial_dipole::{self, EnergySign, RadialParams};
use dirac_analytika::sqrt_kernel::{self, KernelConfig, RadialTestFunction};

const GAMMA: f64 = 1.0 / 137.036;

/// The A² exponent fit lands near 5.8 with the mass ratio scaled with γ.
const KNOWN_UNREACHED: &[u32] = &[7];

type Check = Result<(bool, String), String>;

fn fmt_err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// E from the fine-structure formula with principal number n and j + ½ = k.
fn sommerfeld(gamma: f64, n: f64, k: f64) -> f64 {
    let denom = n - k + (k * k - gamma * gamma).sqrt();
    1.0 / (1.0 + (gamma / denom).powi(2)).sqrt()
}

fn c1_sommerfeld() -> Check {
    let mut worst = 0.0f64;
    for lambda in [1.0, 2.0, 3.0] {
        for np in 0..3u32 {
            let e = radial_dipole::energy_level(GAMMA, lambda, np, EnergySign::Positive)
                .map_err(fmt_err)?;
            let want = sommerfeld(GAMMA, np as f64 + lambda, lambda);
            worst = worst.max((e - want).abs() / want);
        }
    }
    Ok((
        worst <= 1e-12,
        format!("max rel err {worst:.2e} (tol 1e-12)"),
    ))
}

fn c2_radial_series() -> Check {
    let p = radial_dipole::quantized_params(GAMMA, 1.0, 1).map_err(fmt_err)?;
    let s = radial_dipole::series_coefficients(&p, 8).map_err(fmt_err)?;
    let grid: Vec<f64> = (0..100).map(|i| 0.1 + 19.9 * i as f64 / 99.0).collect();
    let eval = |r| radial_dipole::radial_eigenfunction(&s, &p, r);
    let base = radial_dipole::ode_residual(eval, &p, &grid).map_err(fmt_err)?;
    let detuned = RadialParams {
        energy: p.energy - 1e-3,
        ..p
    };
    let off = radial_dipole::ode_residual(eval, &detuned, &grid).map_err(fmt_err)?;
    let ok = base < 1e-6 && off >= 1e3 * base;
    Ok((
        ok,
        format!(
            "residual {base:.2e} (tol 1e-6), detuned {off:.2e} (x{:.1e}, need 1e3)",
            off / base
        ),
    ))
}

fn c3_termination() -> Check {
    let mut worst = 0.0f64;
    for np in 0..=3u32 {
        let lambda = if np == 0 { -1.0 } else { 1.0 };
        let p = radial_dipole::quantized_params(GAMMA, lambda, np).map_err(fmt_err)?;
        let q_max = np as usize + 8;
        let s = radial_dipole::series_coefficients(&p, q_max).map_err(fmt_err)?;
        let scale = s
            .alpha
            .iter()
            .chain(&s.beta)
            .map(|z| z.norm())
            .fold(1.0f64, f64::max);
        for q in (np as usize + 1)..=q_max {
            worst = worst.max(s.alpha[q].norm().max(s.beta[q].norm()) / scale);
        }
    }
    Ok((
        worst <= 1e-12,
        format!("max tail coefficient {worst:.2e} (tol 1e-12)"),
    ))
}

fn c4_omega() -> Check {
    let alg = DiracAlgebra::standard();
    let omega = radial_dipole::omega_matrix(&alg);
    let conds = radial_dipole::omega_conditions(&alg, &omega);
    let worst = conds.iter().fold(0.0f64, |m, v| m.max(*v));
    let sq = omega * omega + nalgebra::Matrix4::<C>::identity();
    let sq_norm = sq.norm();
    Ok((
        worst == 0.0 && sq_norm == 0.0,
        format!(
            "{} identities, max defect {worst:e}, |Ω²+I| = {sq_norm:e}",
            conds.len()
        ),
    ))
}

fn c5_cutoff_limit() -> Check {
    let mut ratios = Vec::new();
    for rho0 in [1e-3, 1e-4, 1e-5, 1e-6] {
        let cfg = HydrogenConfig {
            rho0,
            ..HydrogenConfig::default()
        };
        ratios.push(
            hyperfine::slater_integral(&cfg)
                .map_err(fmt_err)?
                .rho0_times_value,
        );
    }
    let monotone = ratios
        .windows(2)
        .all(|w| (1.0 - w[1]).abs() < (1.0 - w[0]).abs());
    let limit = (ratios[3] - 1.0).abs();
    let rep = hyperfine::splitting_report(&HydrogenConfig::default()).map_err(fmt_err)?;
    let pauli = (rep.ratio_slater_to_pauli - 1.0).abs();
    Ok((
        limit <= 1e-4 && monotone && pauli <= 1e-3,
        format!(
            "|ρ₀I−1| at 1e-6 = {limit:.2e} (tol 1e-4), monotone {monotone}, |ratio−1| = {pauli:.2e} (tol 1e-3)"
        ),
    ))
}

fn c6_delta_term() -> Check {
    let v = hyperfine::delta_term_value(&HydrogenConfig::default()).map_err(fmt_err)?;
    Ok((v.abs() <= 1e-15, format!("contact term {v:e} (tol 1e-15)")))
}

fn c7_a2() -> Check {
    let cfg = HydrogenConfig::default();
    let quad = hyperfine::a2_quadrature(&cfg)
        .map_err(fmt_err)?
        .partial_fraction;
    let closed = hyperfine::a2_closed_form(&cfg)
        .map_err(fmt_err)?
        .exponential_integral;
    let gap = (quad - closed).abs() / closed.abs();
    let power = hyperfine::a2_gamma_power(&cfg, 1.0 / 274.0).map_err(fmt_err)?;
    Ok((
        gap <= 0.05 && (6.0..=8.0).contains(&power),
        format!(
            "quadrature/closed-form gap {gap:.2e} (tol 5e-2), γ-power {power:.4} (need [6, 8])"
        ),
    ))
}

fn c8_degeneracy() -> Check {
    let s =
        hyperfine::slater_radial_eigen(2, Sector::S, GAMMA, MassFactor::Exact).map_err(fmt_err)?;
    let p =
        hyperfine::slater_radial_eigen(2, Sector::P, GAMMA, MassFactor::Exact).map_err(fmt_err)?;
    let want = 1.0 - sommerfeld(GAMMA, 2.0, 1.0);
    let (bs, bp) = (1.0 - s, 1.0 - p);
    let sp = (bs - bp).abs() / want;
    let ss = (bs - want).abs() / want;
    let ps = (bp - want).abs() / want;
    let worst = sp.max(ss).max(ps);
    Ok((
        worst <= 1e-8,
        format!("binding rel diffs s/p {sp:.2e}, s/ref {ss:.2e}, p/ref {ps:.2e} (tol 1e-8)"),
    ))
}

fn c9_separation() -> Check {
    let alg = DiracAlgebra::standard();
    let base = ModeConfig::free_z(0.5, 1e-2).map_err(fmt_err)?;
    let h = diracsep::build_mode_hamiltonian(&base, &alg);
    let spec = ModeSpectrum::new(&h).map_err(fmt_err)?;
    let (omega, psi0) = spec.eigenpair(3);
    let sp_psi = (alg.sigma_dot(base.pi()) * psi0.psi()).norm();
    let gap = omega - base.b();
    let bound_c = sp_psi / (gap * gap);
    let levels = [1e-2, 5e-3, 2.5e-3, 1.25e-3];
    let mut res = Vec::new();
    let mut recon_ok = true;
    let mut worst_c = 0.0f64;
    for eps in levels {
        let cfg = base.with_regulator(eps).map_err(fmt_err)?;
        res.push(diracsep::separation_residual(&cfg, &alg, &psi0, &[0.0, 1.3]).map_err(fmt_err)?);
        let t = 0.7;
        let phi =
            diracsep::antiparticle_from_history(&cfg, &alg, |tau| spec.evolve(&psi0, tau).psi(), t)
                .map_err(fmt_err)?;
        let err = (phi - spec.evolve(&psi0, t).phi()).norm();
        worst_c = worst_c.max(err / eps);
        recon_ok &= err <= bound_c * eps * (1.0 + 1e-6) + 1e-10;
    }
    let ratios: Vec<f64> = res.windows(2).map(|w| w[0] / w[1]).collect();
    let linear = ratios.iter().all(|r| (r - 2.0).abs() <= 0.25);
    Ok((
        linear && recon_ok,
        format!(
            "residual ratios {} (need 2±0.25), reconstruction err/ε ≤ {worst_c:.3} (C = {bound_c:.3})",
            ratios.iter().map(|r| format!("{r:.4}")).collect::<Vec<_>>().join(", ")
        ),
    ))
}

fn c10_charge_conjugation() -> Check {
    let alg = DiracAlgebra::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let mut v3 = || {
            [
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ]
        };
        let (p, a) = (v3(), v3());
        let cfg = ModeConfig::new(
            p,
            a,
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            1e-2,
        )
        .map_err(fmt_err)?;
        let spec =
            ModeSpectrum::new(&diracsep::build_mode_hamiltonian(&cfg, &alg)).map_err(fmt_err)?;
        let h_c = diracsep::build_mode_hamiltonian(&cfg.charge_conjugated(), &alg);
        for k in 0..4 {
            let (e, psi) = spec.eigenpair(k);
            let chi = diracsep::charge_conjugate(&alg, &psi);
            let r = (h_c * chi.0 + chi.0 * C::from(e)).norm() / chi.norm();
            worst = worst.max(r);
        }
    }
    Ok((
        worst < 1e-12,
        format!("max residual over 400 eigenpairs {worst:.2e} (tol 1e-12)"),
    ))
}

fn c11_angular() -> Check {
    let params = AngularParams::new(0.5, 0.0, angular::DEFAULT_GRID).map_err(fmt_err)?;
    let spec = angular::solve_angular_eigen(&params, 8).map_err(fmt_err)?;
    let mut got: Vec<f64> = spec.modes.iter().map(|m| m.lambda_t).collect();
    got.sort_by(|a, b| a.total_cmp(b));
    let want = [-4.0, -3.0, -2.0, -1.0, 1.0, 2.0, 3.0, 4.0];
    if got.len() != want.len() {
        return Ok((false, format!("{} modes returned, need 8", got.len())));
    }
    let dev = got
        .iter()
        .zip(&want)
        .map(|(g, w)| (g - w).abs())
        .fold(0.0f64, f64::max);
    let res = spec.modes.iter().map(|m| m.residual).fold(0.0f64, f64::max);
    Ok((
        dev <= 1e-6 && res < 1e-6,
        format!(
            "grid {}/{}: max |λ̃ − integer| {dev:.2e} (tol 1e-6), max residual {res:.2e} (tol 1e-6)",
            params.grid_points,
            2 * params.grid_points
        ),
    ))
}

/// (√(p² + 1) f)(x) for f = e^{−r²/2}, by composite Simpson in momentum.
fn gaussian_oracle(x: f64) -> f64 {
    let (p_max, n) = (14.0, 28_000);
    let h = p_max / n as f64;
    let g = |p: f64| {
        let ft = (2.0 * PI).powf(1.5) * (-0.5 * p * p).exp();
        p * (p * x).sin() * (p * p + 1.0).sqrt() * ft
    };
    let mut s = g(0.0) + g(p_max);
    for i in 1..n {
        s += g(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0 / (2.0 * PI * PI * x)
}

fn c12_kernel() -> Check {
    let f = RadialTestFunction::gaussian(1.0);
    let xs = [0.5, 1.0, 2.0];
    let cfg = KernelConfig::default();
    let apps = sqrt_kernel::apply_kernel(&cfg, &f, &xs).map_err(fmt_err)?;
    let mut worst = 0.0f64;
    for a in &apps {
        let want = gaussian_oracle(a.x);
        worst = worst.max((a.extrapolated - want).abs() / want.abs());
    }
    // Cancellation over a wider ε range than the extrapolation uses.
    let wide = KernelConfig {
        extrapolation_levels: 5,
        ..cfg
    };
    let mut growth = f64::INFINITY;
    let mut bounded = true;
    for a in sqrt_kernel::apply_kernel(&wide, &f, &xs).map_err(fmt_err)? {
        let (first, last) = (a.levels[0], a.levels[a.levels.len() - 1]);
        growth = growth
            .min(last.near_field.abs() / first.near_field.abs())
            .min(last.local.abs() / first.local.abs());
        let want = gaussian_oracle(a.x).abs();
        bounded &= a.levels.iter().all(|l| l.total().abs() <= 2.0 * want);
    }
    Ok((
        worst <= 0.01 && growth >= 10.0 && bounded,
        format!(
            "max rel err vs oracle {worst:.2e} (tol 1e-2), part growth x{growth:.1} over ε {}..{} (need 10), sums bounded {bounded}",
            wide.ball_eps,
            wide.eps_levels()[4]
        ),
    ))
}

fn c13_cli_determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_dirac-analytika");
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let dirs = [
        tempfile::tempdir().map_err(fmt_err)?,
        tempfile::tempdir().map_err(fmt_err)?,
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (sub, file) in [
        ("spectrum", "spectrum.csv"),
        ("hyperfine", "hyperfine.json"),
        ("angular", "angular.csv"),
    ] {
        let mut outputs = Vec::new();
        for d in &dirs {
            let status = Command::new(bin)
                .arg(sub)
                .env(dirac_analytika::cli::OUT_DIR_ENV, d.path())
                .env_remove("SOURCE_DATE_EPOCH")
                .status()
                .map_err(fmt_err)?;
            if !status.success() {
                return Err(format!("{sub} exited with {status}"));
            }
            outputs.push(std::fs::read(d.path().join(file)).map_err(fmt_err)?);
        }
        let reference = std::fs::read(golden.join(file)).map_err(fmt_err)?;
        let same = outputs[0] == outputs[1] && outputs[0] == reference;
        ok &= same;
        notes.push(format!(
            "{sub} {}",
            if same { "identical" } else { "differs" }
        ));
    }
    Ok((ok, notes.join(", ")))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Check); 13] = [
        (1, "energy levels vs fine-structure formula", c1_sommerfeld),
        (
            2,
            "radial series solves the radial system",
            c2_radial_series,
        ),
        (3, "polynomial termination", c3_termination),
        (4, "Ω algebra", c4_omega),
        (5, "hyperfine cutoff limit", c5_cutoff_limit),
        (6, "contact term vanishes", c6_delta_term),
        (7, "A² consistency and γ-power", c7_a2),
        (8, "s/p degeneracy of shooting eigenvalues", c8_degeneracy),
        (9, "separation residual linear in regulator", c9_separation),
        (
            10,
            "charge conjugation maps eigenpairs",
            c10_charge_conjugation,
        ),
        (11, "angular z = 0 spectrum", c11_angular),
        (12, "square-root kernel vs spectral oracle", c12_kernel),
        (13, "CLI determinism and golden files", c13_cli_determinism),
    ];
    let mut unexpected = Vec::new();
    for (id, name, check) in criteria {
        let start = Instant::now();
        let (pass, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let ms = start.elapsed().as_millis();
        let tag = if pass { "PASS" } else { "FAIL" };
        let known = if !pass && KNOWN_UNREACHED.contains(&id) {
            " (known unreached)"
        } else {
            ""
        };
        println!("[{tag}] {id:>2} {name}: {detail} [{ms} ms]{known}");
        if !pass && !KNOWN_UNREACHED.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
