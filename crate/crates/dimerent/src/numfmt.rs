//! Compact significant-digit float formatting for CSV and CLI output.
//!
//! Behaves like printf's `%g`: fixed notation while the exponent is small,
//! scientific otherwise, trailing zeros trimmed. Hand-rolled so the output
//! bytes depend only on the value and the digit count, never on locale or
//! formatter version.

/// Significant digits used for all emitted numbers.
pub(crate) const SIG_DIGITS: usize = 12;

/// Formats `x` with `sig` significant digits, `%g` style.
///
/// Exponents in `[-4, sig)` render fixed, others scientific with a bare
/// `e` exponent (no padding, no `+`). Zero renders as `"0"` for either
/// sign bit.
pub(crate) fn format_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }

    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("{:e} always has an exponent");
    let exp: i32 = exp.parse().expect("{:e} exponent is an integer");
    let neg = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();

    let body = if exp >= -4 && exp < sig as i32 {
        let mut s = if exp < 0 {
            let mut s = String::from("0.");
            for _ in 0..(-exp - 1) {
                s.push('0');
            }
            s.push_str(&digits);
            s
        } else {
            let split = (exp + 1) as usize;
            if split >= digits.len() {
                let mut s = digits.clone();
                s.push_str(&"0".repeat(split - digits.len()));
                s
            } else {
                format!("{}.{}", &digits[..split], &digits[split..])
            }
        };
        if s.contains('.') {
            while s.ends_with('0') {
                s.pop();
            }
            if s.ends_with('.') {
                s.pop();
            }
        }
        s
    } else {
        let mut m = digits.clone();
        while m.len() > 1 && m.ends_with('0') {
            m.pop();
        }
        if m.len() > 1 {
            m.insert(1, '.');
        }
        format!("{m}e{exp}")
    };

    if neg {
        format!("-{body}")
    } else {
        body
    }
}
