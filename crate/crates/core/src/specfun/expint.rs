use super::SeriesControl;
use crate::error::{Error, Result};
use crate::numerics::quad::{self, QuadSpec};

/// Euler's constant to 20 significant digits.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Ei(−ε) for ε > 0. Power series about the origin for ε ≤ 1, Lentz
/// continued fraction for E₁ beyond.
pub fn expint_ei_neg(eps: f64, ctl: SeriesControl) -> Result<f64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::domain(format!("Ei(-eps) needs eps > 0, got {eps}")));
    }
    if eps <= 1.0 {
        series(eps, ctl)
    } else {
        Ok(-e1_continued_fraction(eps, ctl)?)
    }
}

/// Ei(−ε) = −∫_ε^∞ e^{−t}/t dt by adaptive quadrature.
pub fn expint_ei_neg_quadrature(eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::domain(format!("Ei(-eps) needs eps > 0, got {eps}")));
    }
    let spec = QuadSpec::new(0.0, 1e-13);
    let head = quad::adaptive(|t| (-t).exp() / t, eps, eps + 1.0, spec)?;
    let tail = quad::to_infinity(|t| (-t).exp() / t, eps + 1.0, spec)?;
    Ok(-(head + tail))
}

fn series(eps: f64, ctl: SeriesControl) -> Result<f64> {
    let mut sum = 0.0;
    let mut power = 1.0; // (−ε)^k / k!
    for k in 1..=ctl.max_terms {
        let kf = k as f64;
        power *= -eps / kf;
        let term = power / kf;
        sum += term;
        if term.abs() <= ctl.rel_tol * sum.abs() {
            return Ok(EULER_GAMMA + eps.ln() + sum);
        }
    }
    Err(Error::convergence(format!(
        "Ei(-{eps}) series not converged within {} terms",
        ctl.max_terms
    )))
}

fn e1_continued_fraction(x: f64, ctl: SeriesControl) -> Result<f64> {
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=ctl.max_terms {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() <= ctl.rel_tol.max(f64::EPSILON) {
            return Ok(h * (-x).exp());
        }
    }
    Err(Error::convergence(format!(
        "E1({x}) continued fraction not converged within {} terms",
        ctl.max_terms
    )))
}
