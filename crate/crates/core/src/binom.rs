//! Binomial coefficients, linear and log-space.

/// C(n, k) as f64, exact for the integer range that fits a double.
pub(crate) fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// ln C(n, k); safe for n far beyond the overflow range of [`binomial`].
pub(crate) fn ln_binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    let mut acc = 0.0;
    for i in 0..k {
        acc += ((n - i) as f64).ln() - ((i + 1) as f64).ln();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values_exact() {
        assert_eq!(binomial(0, 0), 1.0);
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(10, 3), 120.0);
        assert_eq!(binomial(40, 20), 137846528820.0);
        assert_eq!(binomial(3, 5), 0.0);
    }

    #[test]
    fn log_matches_linear() {
        for n in [5u32, 17, 40, 61] {
            for k in 0..=n {
                let a = ln_binomial(n, k);
                let b = binomial(n, k).ln();
                assert!((a - b).abs() < 1e-10 * b.abs().max(1.0));
            }
        }
    }
}
