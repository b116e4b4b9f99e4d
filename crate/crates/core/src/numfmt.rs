//! Locale-free number formatting for reports and CSV output.

/// Formats like C's `%.{digits}g`: `digits` significant digits, trailing
/// zeros stripped, exponent form outside `[1e-4, 10^digits)`.
pub fn sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

/// Nine significant digits, the precision used for all CSV output.
pub fn sig9(x: f64) -> String {
    sig(x, 9)
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        assert_eq!(sig9(0.0), "0");
        assert_eq!(sig9(1.0), "1");
        assert_eq!(sig9(-0.25), "-0.25");
        assert_eq!(sig9(4.934802200544679), "4.9348022");
        assert_eq!(sig9(2.0 / 3.0), "0.666666667");
        assert_eq!(sig9(123456789.4), "123456789");
        assert_eq!(sig9(1234567890.0), "1.23456789e+09");
        assert_eq!(sig9(1.5e-5), "1.5e-05");
        assert_eq!(sig9(0.0001), "0.0001");
        assert_eq!(sig9(-141.646), "-141.646");
        assert_eq!(sig9(f64::INFINITY), "inf");
        assert_eq!(sig(9.9999999999, 3), "10");
    }
}
