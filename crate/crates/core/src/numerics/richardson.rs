/// Result of a Richardson table: extrapolated value and the size of the
/// last correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: f64,
    pub error: f64,
}

/// Richardson extrapolation of values `T(h_0), T(h_0/r), T(h_0/r²), ...`
/// whose error expansion has leading powers `orders[0], orders[1], ...`.
/// Uses as many orders as the sample count allows.
pub fn extrapolate(values: &[f64], ratio: f64, orders: &[f64]) -> Extrapolated {
    assert!(!values.is_empty(), "need at least one sample");
    let mut column = values.to_vec();
    let mut error = f64::INFINITY;
    for p in orders.iter().take(values.len() - 1) {
        let factor = ratio.powf(*p) - 1.0;
        let next: Vec<f64> = column
            .windows(2)
            .map(|w| w[1] + (w[1] - w[0]) / factor)
            .collect();
        error = (next[next.len() - 1] - column[column.len() - 1]).abs();
        column = next;
    }
    Extrapolated {
        value: column[column.len() - 1],
        error,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn removes_linear_and_cubic_terms() {
        let f = |h: f64| 2.0 + 0.3 * h - 5.0 * h.powi(3) + h.powi(5);
        let hs = [0.1, 0.05, 0.025, 0.0125];
        let vals: Vec<f64> = hs.iter().map(|&h| f(h)).collect();
        let e = extrapolate(&vals, 2.0, &[1.0, 3.0, 5.0]);
        assert!((e.value - 2.0).abs() < 1e-13);
    }
}
