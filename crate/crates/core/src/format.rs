//! Locale-free float formatting for tabular output.

/// Significant digits written to CSV cells.
pub const SIG_DIGITS: usize = 12;

/// Formats like C's `%.12g`: twelve significant digits, trailing zeros
/// trimmed, scientific notation outside `1e-4 <= |x| < 1e12`.
pub fn sig(x: f64) -> String {
    sig_digits(x, SIG_DIGITS)
}

pub fn sig_digits(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // Let the `e` formatter do the rounding, then read back the exponent.
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        format!("{}e{}{:02}", trim(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Empty cell for an undefined value.
pub fn opt(x: Option<f64>) -> String {
    x.map(sig).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (1.0 / 3.0, "0.333333333333"),
            (2.0, "2"),
            (-0.5, "-0.5"),
            (123456.789, "123456.789"),
            (1e-7, "1e-07"),
            (-2.5e-12, "-2.5e-12"),
            (1.5e15, "1.5e+15"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (999999999999.5, "1e+12"),
            (0.1 + 0.2, "0.3"),
        ];
        for (x, want) in cases {
            assert_eq!(sig(x), want, "{x:e}");
        }
    }

    #[test]
    fn round_trips_to_twelve_digits() {
        for x in [std::f64::consts::PI, -1.0 / 7.0, 6.02214076e23, 1.602e-19] {
            let back: f64 = sig(x).parse().unwrap();
            assert!(((back - x) / x).abs() < 1e-11, "{x} -> {}", sig(x));
        }
    }

    #[test]
    fn undefined_is_empty() {
        assert_eq!(opt(None), "");
        assert_eq!(opt(Some(0.25)), "0.25");
    }
}
