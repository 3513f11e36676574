//! Scalar special functions: rising factorials, Kummer's ₁F₁, modified
//! Bessel K₀/K₁ and Ei on the negative real axis.

mod bessel;
mod expint;
mod kummer;

pub use bessel::{bessel_k, bessel_k0, bessel_k1};
pub use expint::{expint_ei_neg, expint_ei_neg_quadrature, EULER_GAMMA};
pub use kummer::kummer_1f1;

use crate::error::{Error, Result};

/// Truncation controls for power-series evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub rel_tol: f64,
}

impl SeriesControl {
    pub fn new(max_terms: usize, rel_tol: f64) -> Result<Self> {
        if max_terms == 0 {
            return Err(Error::domain("max_terms must be at least 1"));
        }
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::domain(format!("rel_tol {rel_tol} outside (0, 1)")));
        }
        Ok(Self { max_terms, rel_tol })
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_terms: 5000,
            rel_tol: 1e-16,
        }
    }
}

/// Rising factorial (a)_n = a(a+1)···(a+n−1).
pub fn pochhammer(a: f64, n: u32) -> f64 {
    (0..n).map(|k| a + k as f64).product()
}
