//! Text encodings shared by every on-disk format.
//!
//! Reals are written with 17 significant digits so that a write/read cycle
//! reproduces the exact `f64`. Complex scalars use the `re+imi` form, e.g.
//! `3.0000000000000000e-1-4.0000000000000002e-1i`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A real with 17 significant digits.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", real(z.re), sign, real(z.im.abs()))
}

pub fn parse_real(s: &str) -> Result<f64> {
    let t = s.trim();
    t.parse::<f64>()
        .map_err(|_| Error::Parse(format!("not a real number: {t:?}")))
}

/// Parses `re+imi`, `re-imi`, a bare real, or a bare imaginary `imi`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a complex number: {t:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(t)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => {
            let re = body[..i].parse::<f64>().map_err(|_| bad())?;
            let im = match &body[i..] {
                "+" => 1.0,
                "-" => -1.0,
                rest => rest.parse::<f64>().map_err(|_| bad())?,
            };
            Ok(Complex64::new(re, im))
        }
        None => {
            let im = match body {
                "" | "+" => 1.0,
                "-" => -1.0,
                rest => rest.parse::<f64>().map_err(|_| bad())?,
            };
            Ok(Complex64::new(0.0, im))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_complex("0.3").unwrap(), Complex64::new(0.3, 0.0));
        assert_eq!(parse_complex("0.3+0.4i").unwrap(), Complex64::new(0.3, 0.4));
        assert_eq!(parse_complex("-1e-3-2.5e+2i").unwrap(), Complex64::new(-1e-3, -250.0));
        assert_eq!(parse_complex("-0.25i").unwrap(), Complex64::new(0.0, -0.25));
        assert_eq!(parse_complex("1-i").unwrap(), Complex64::new(1.0, -1.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(real(1.75), "1.7500000000000000e0");
        assert_eq!(complex(Complex64::new(0.5, -0.25)), "5.0000000000000000e-1-2.5000000000000000e-1i");
    }

    proptest! {
        #[test]
        fn complex_text_is_lossless(re in -1e6f64..1e6, im in -1e6f64..1e6) {
            let z = Complex64::new(re, im);
            let back = parse_complex(&complex(z)).unwrap();
            prop_assert_eq!(back.re.to_bits(), z.re.to_bits());
            prop_assert_eq!(back.im.to_bits(), z.im.to_bits());
        }
    }
}
