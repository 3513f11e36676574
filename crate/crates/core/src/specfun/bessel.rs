use super::EULER_GAMMA;
use crate::error::{Error, Result};
use std::f64::consts::PI;

const SERIES_LIMIT: f64 = 2.0;

/// Modified Bessel function of the second kind, order 0 or 1.
pub fn bessel_k(order: u32, x: f64) -> Result<f64> {
    match order {
        0 => bessel_k0(x),
        1 => bessel_k1(x),
        _ => Err(Error::domain(format!("bessel_k order {order} unsupported"))),
    }
}

pub fn bessel_k0(x: f64) -> Result<f64> {
    check(x)?;
    Ok(if x < SERIES_LIMIT {
        series(x).0
    } else {
        continued_fraction(x).0
    })
}

pub fn bessel_k1(x: f64) -> Result<f64> {
    check(x)?;
    Ok(if x < SERIES_LIMIT {
        series(x).1
    } else {
        continued_fraction(x).1
    })
}

fn check(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("bessel_k requires x > 0, got {x}")))
    }
}

/// Ascending series for (K₀, K₁).
pub(super) fn series(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let log_half = (0.5 * x).ln();

    let mut i0 = 0.0;
    let mut i1 = 0.0;
    let mut k0_tail = 0.0;
    let mut k1_tail = 0.0;
    let mut term = 1.0; // q^k / (k!)^2
    let mut harmonic = 0.0; // H_k
    let mut psi_k1 = -EULER_GAMMA; // ψ(k+1)
    for k in 0..200 {
        let kf = k as f64;
        let psi_k2 = psi_k1 + 1.0 / (kf + 1.0);
        let t1 = term / (kf + 1.0); // q^k / (k!(k+1)!)
        i0 += term;
        i1 += t1;
        k0_tail += term * harmonic;
        k1_tail += t1 * (psi_k1 + psi_k2);
        if term < 1e-18 * i0 && kf > 1.0 {
            break;
        }
        term *= q / ((kf + 1.0) * (kf + 1.0));
        harmonic += 1.0 / (kf + 1.0);
        psi_k1 = psi_k2;
    }
    i1 *= 0.5 * x;
    let k0 = -(log_half + EULER_GAMMA) * i0 + k0_tail;
    let k1 = 1.0 / x + log_half * i1 - 0.25 * x * k1_tail;
    (k0, k1)
}

/// Steed's continued fraction (Temme's normalization) for (K₀, K₁).
pub(super) fn continued_fraction(x: f64) -> (f64, f64) {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..100_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    let h = a1 * h;
    let k0 = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// ∫₀^∞ e^{−x cosh t} cosh(νt) dt by the trapezoid rule, which converges
    /// geometrically for this analytic, doubly-decaying integrand.
    fn integral_oracle(nu: f64, x: f64) -> f64 {
        let t_max = (800.0 / x).acosh() + 1.0;
        let n = 20_000;
        let h = t_max / n as f64;
        let mut s = 0.5 * (-x).exp();
        for i in 1..=n {
            let t = i as f64 * h;
            s += (-x * t.cosh()).exp() * (nu * t).cosh();
        }
        s * h
    }

    #[test]
    fn reference_values() {
        assert!((bessel_k0(1.0).unwrap() - 0.421_024_438_240_708_3).abs() < 1e-15);
        assert!((bessel_k1(1.0).unwrap() - 0.601_907_230_197_234_6).abs() < 1e-15);
    }

    #[test]
    fn matches_integral_representation() {
        for &x in &[1e-6, 1e-3, 0.1, 0.7, 1.0, 1.99, 2.0, 3.3, 8.0, 20.0, 50.0] {
            for nu in [0u32, 1] {
                let v = bessel_k(nu, x).unwrap();
                let o = integral_oracle(nu as f64, x);
                assert!(((v - o) / o).abs() < 1e-12, "nu={nu} x={x} {v} {o}");
            }
        }
    }

    #[test]
    fn series_and_continued_fraction_overlap() {
        for i in 0..=20 {
            let x = 1.5 + 0.05 * i as f64;
            let (s0, s1) = series(x);
            let (c0, c1) = continued_fraction(x);
            assert!(((s0 - c0) / c0).abs() < 1e-10);
            assert!(((s1 - c1) / c1).abs() < 1e-10);
        }
    }

    #[test]
    fn large_argument_normalization() {
        let x = 50.0;
        let ratio = bessel_k0(x).unwrap() * x.exp() * (2.0 * x / PI).sqrt();
        assert!((ratio - 1.0).abs() < 1.0 / (8.0 * x) + 1e-3);
        assert!(ratio < 1.0);
    }

    #[test]
    fn derivative_of_k0_is_minus_k1() {
        let h = 1e-5;
        for &x in &[0.05, 0.5, 1.9, 2.1, 6.0, 25.0] {
            let d = (bessel_k0(x + h).unwrap() - bessel_k0(x - h).unwrap()) / (2.0 * h);
            let k1 = bessel_k1(x).unwrap();
            assert!((d + k1).abs() / k1 < 1e-6, "x={x}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_k0(0.0).is_err());
        assert!(bessel_k1(-1.0).is_err());
        assert!(bessel_k(2, 1.0).is_err());
    }
}
