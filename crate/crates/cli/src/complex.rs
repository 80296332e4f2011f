//! Complex scalars on the command line.
//!
//! Grammar, whitespace ignored:
//!
//! ```text
//! complex := real | imag | real sign imag
//! imag    := [sign] [number] "i"
//! ```
//!
//! so `2+1i`, `-0.5i`, `0.3`, `1e-3-2i` and `i` are all accepted. The Unicode
//! minus sign is read as `-`. [`format_complex`] writes the same grammar and
//! round-trips exactly.

use std::fmt;
use std::str::FromStr;

use complex_susy::Complex64;
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {input:?} as a complex number ({reason}); expected RE+IMi, e.g. 2+1i or -0.5i")]
pub struct ParseComplexError {
    input: String,
    reason: &'static str,
}

fn number(s: &str, input: &str) -> Result<f64, ParseComplexError> {
    let err = |reason| ParseComplexError { input: input.to_string(), reason };
    let v = match s {
        "" | "+" => return Ok(1.0),
        "-" => return Ok(-1.0),
        _ => f64::from_str(s).map_err(|_| err("bad number"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(err("not finite"))
    }
}

pub fn parse_complex(input: &str) -> Result<Complex64, ParseComplexError> {
    let s: String =
        input.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '\u{2212}' { '-' } else { c }).collect();
    if s.is_empty() {
        return Err(ParseComplexError { input: input.to_string(), reason: "empty" });
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        let re = f64::from_str(&s)
            .ok()
            .filter(|v| v.is_finite())
            .ok_or(ParseComplexError { input: input.to_string(), reason: "bad real part" })?;
        return Ok(Complex64::new(re, 0.0));
    };
    // The imaginary part starts at the last sign that is not an exponent sign.
    let bytes = body.as_bytes();
    let split =
        (1..bytes.len()).rev().find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => {
            let re = &body[..i];
            if re.is_empty() || re.ends_with(['+', '-']) {
                return Err(ParseComplexError { input: input.to_string(), reason: "bad real part" });
            }
            let re = f64::from_str(re)
                .ok()
                .filter(|v| v.is_finite())
                .ok_or(ParseComplexError { input: input.to_string(), reason: "bad real part" })?;
            Ok(Complex64::new(re, number(&body[i..], input)?))
        }
        None => Ok(Complex64::new(0.0, number(body, input)?)),
    }
}

/// Shortest exact text form in the parser's grammar.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

/// Command-line complex value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexArg(pub Complex64);

impl FromStr for ComplexArg {
    type Err = ParseComplexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_complex(s).map(ComplexArg)
    }
}

impl fmt::Display for ComplexArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_complex(self.0))
    }
}

impl Serialize for ComplexArg {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_complex(&self.0, s)
    }
}

/// Serializes as `{"re": .., "im": ..}`.
pub fn serialize_complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}

pub fn complex_json(z: Complex64) -> serde_json::Value {
    serde_json::json!({ "re": z.re, "im": z.im })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn documented_forms() {
        assert_eq!(parse_complex("2+1i").unwrap(), c(2.0, 1.0));
        assert_eq!(parse_complex("-0.5i").unwrap(), c(0.0, -0.5));
        assert_eq!(parse_complex("\u{2212}0.5i").unwrap(), c(0.0, -0.5));
        assert_eq!(parse_complex("0.3").unwrap(), c(0.3, 0.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("0.6+0.3i").unwrap(), c(0.6, 0.3));
        assert_eq!(parse_complex("-0.6 + 0.3i").unwrap(), c(-0.6, 0.3));
        assert_eq!(parse_complex("1e-3-2e+1i").unwrap(), c(1e-3, -20.0));
        assert_eq!(parse_complex("2-i").unwrap(), c(2.0, -1.0));
        assert_eq!(parse_complex("1.5e2").unwrap(), c(150.0, 0.0));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1+", "1++2i", "+-2i", "1+2", "nan", "infi", "2ii", "1e+i"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_negative_zero_imaginary_part() {
        assert_eq!(format_complex(c(1.0, -0.0)), "1-0i");
        assert_eq!(parse_complex("1-0i").unwrap().im.to_bits(), (-0.0f64).to_bits());
    }

    proptest! {
        #[test]
        fn round_trip(re in proptest::num::f64::NORMAL | proptest::num::f64::ZERO,
                      im in proptest::num::f64::NORMAL | proptest::num::f64::ZERO) {
            let z = c(re, im);
            let back = parse_complex(&format_complex(z)).unwrap();
            prop_assert_eq!(back.re.to_bits(), re.to_bits());
            prop_assert_eq!(back.im.to_bits(), im.to_bits());
        }
    }
}
