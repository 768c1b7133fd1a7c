//! Number formatting and parsing for deck text.

/// Shortest decimal text that parses back to exactly `v`.
///
/// Plain notation is used for magnitudes in `[1e-5, 1e16)`, scientific
/// notation with a lowercase `e` (and no `+`) elsewhere. Negative zero is
/// written as `0`. Returns `None` for NaN and infinities.
pub fn try_format_number(v: f64) -> Option<String> {
    if !v.is_finite() {
        return None;
    }
    if v == 0.0 {
        return Some("0".to_string());
    }
    let a = v.abs();
    Some(if (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    })
}

/// Parses a deck number, accepting Fortran `D` exponents (`1.0D-3`).
pub fn parse_number(s: &str) -> Option<f64> {
    let first = s.bytes().next()?;
    if !(first.is_ascii_digit() || matches!(first, b'+' | b'-' | b'.')) {
        // rejects "inf", "nan" and friends that `f64::from_str` would accept
        return None;
    }
    let v: f64 = if s.contains(['d', 'D']) {
        s.replace(['d', 'D'], "e").parse().ok()?
    } else {
        s.parse().ok()?
    };
    v.is_finite().then_some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(try_format_number(0.0).unwrap(), "0");
        assert_eq!(try_format_number(-0.0).unwrap(), "0");
        assert_eq!(try_format_number(0.02).unwrap(), "0.02");
        assert_eq!(
            try_format_number(4.188790204786391).unwrap(),
            "4.188790204786391"
        );
        assert_eq!(try_format_number(1.0).unwrap(), "1");
        assert_eq!(try_format_number(-2.5).unwrap(), "-2.5");
        assert_eq!(try_format_number(1e-25).unwrap(), "1e-25");
        assert_eq!(try_format_number(6.02e23).unwrap(), "6.02e23");
        assert_eq!(try_format_number(1.2e-7).unwrap(), "1.2e-7");
        assert!(try_format_number(f64::NAN).is_none());
        assert!(try_format_number(f64::INFINITY).is_none());
    }

    #[test]
    fn fortran_exponents() {
        assert_eq!(parse_number("1.0D-3"), Some(1.0e-3));
        assert_eq!(parse_number("2d2"), Some(200.0));
        assert_eq!(parse_number("-1.5E+2"), Some(-150.0));
        assert_eq!(parse_number(".5"), Some(0.5));
        for bad in ["", "inf", "NaN", "1e999", "x1", "1..2", "D3"] {
            assert_eq!(parse_number(bad), None, "{bad}");
        }
    }

    proptest! {
        #[test]
        fn shortest_round_trip(bits in any::<u64>()) {
            let v = f64::from_bits(bits);
            prop_assume!(v.is_finite());
            let s = try_format_number(v).unwrap();
            prop_assert!(!s.contains('+'));
            prop_assert!(!s.contains('E'));
            let back = parse_number(&s).unwrap();
            prop_assert!(back == v, "{} -> {} -> {}", v, s, back);
        }
    }
}
