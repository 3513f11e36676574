use super::SeriesControl;
use crate::error::{Error, Result};

fn non_positive_integer(v: f64) -> Option<u64> {
    (v <= 0.0 && v.fract() == 0.0).then(|| (-v) as u64)
}

/// Confluent hypergeometric ₁F₁(a; b; x) by direct Taylor summation with
/// compensated accumulation. Terminates exactly at n = −a for a = 0, −1, ….
pub fn kummer_1f1(a: f64, b: f64, x: f64, ctl: SeriesControl) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && x.is_finite()) {
        return Err(Error::domain(format!(
            "non-finite argument ({a}, {b}, {x})"
        )));
    }
    let terminates_at = non_positive_integer(a);
    if let Some(m) = non_positive_integer(b) {
        match terminates_at {
            Some(n) if n <= m => {}
            _ => {
                return Err(Error::domain(format!(
                    "1F1 undefined: b = {b} is a non-positive integer"
                )))
            }
        }
    }

    let mut sum = 1.0f64;
    let mut comp = 0.0f64;
    let mut term = 1.0f64;
    let mut small_run = 0;
    for n in 0..ctl.max_terms as u64 {
        if terminates_at == Some(n) {
            return Ok(sum + comp);
        }
        let nf = n as f64;
        term *= (a + nf) * x / ((b + nf) * (nf + 1.0));
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        // Terms only shrink monotonically once n exceeds |x| and |a|.
        if nf + 1.0 > x.abs() + a.abs() && term.abs() <= ctl.rel_tol * sum.abs() {
            small_run += 1;
            if small_run >= 2 {
                return Ok(sum - comp);
            }
        } else {
            small_run = 0;
        }
        if !sum.is_finite() {
            break;
        }
    }
    Err(Error::convergence(format!(
        "1F1({a}; {b}; {x}) not converged within {} terms",
        ctl.max_terms
    )))
}
