//! Number formatting shared by reports and the command line.

/// Formats a real with 12 significant digits, trailing zeros trimmed.
/// Very large or very small magnitudes switch to scientific notation.
pub fn real(v: f64) -> String {
    real_digits(v, 12)
}

pub fn real_digits(v: f64, digits: usize) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    // Round to the requested significant digits first; the exponent of the
    // rounded value decides the notation.
    let sci = format!("{:.*e}", digits - 1, v);
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..12).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, v))
    } else {
        format!("{}e{}", trim(mant), exp)
    }
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        if t == "-0" {
            "0".into()
        } else {
            t.to_string()
        }
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::real;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(real(0.8), "0.8");
        assert_eq!(real(1.0), "1");
        assert_eq!(real(-0.0), "0");
        assert_eq!(real(4.643856189774724), "4.64385618977");
        assert_eq!(real(1.0 / 3.0), "0.333333333333");
        assert_eq!(real(123456.0), "123456");
        assert_eq!(real(2.5e-9), "2.5e-9");
        assert_eq!(real(-1.5e13), "-1.5e13");
        assert_eq!(real(0.99999999999999), "1");
    }
}
