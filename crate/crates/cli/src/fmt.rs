//! Deterministic number formatting: every float is printed with 17
//! significant digits in scientific notation, so identical inputs yield
//! byte-identical files on any platform.

pub fn f(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        }
    } else {
        format!("{x:.16e}")
    }
}

#[cfg(test)]
mod tests {
    use super::f;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(f(0.25), "2.5000000000000000e-1");
        assert_eq!(f(-1.0), "-1.0000000000000000e0");
        assert_eq!(f(f64::NAN), "nan");
        // round-trips exactly
        let x = std::f64::consts::PI;
        assert_eq!(f(x).parse::<f64>().unwrap(), x);
    }
}
