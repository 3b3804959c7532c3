//! `x+yi` strings for complex coordinates.

use hypfeuer_core::DiskPoint;
use num_complex::Complex64;

use crate::error::InputError;

/// Parses `x`, `yi`, `x+yi` or `x-yi`; either part may use an exponent
/// (`1e-3-2.5e-4i`). Whitespace is ignored. Non-finite parts are rejected.
pub fn parse_complex(s: &str) -> Result<Complex64, InputError> {
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(InputError::Complex(s.into()));
    }
    let bad = || InputError::Complex(s.into());
    let Some(body) = text.strip_suffix('i') else {
        return Ok(Complex64::new(number(&text).ok_or_else(bad)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split =
        (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (number(&body[..k]).ok_or_else(bad)?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        coeff => number(coeff).ok_or_else(bad)?,
    };
    Ok(Complex64::new(re, im))
}

fn number(s: &str) -> Option<f64> {
    // Only plain decimal syntax; `inf`, `NaN` and friends are refused.
    if !s.bytes().all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-')) {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn real(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// Shortest round-trip form: `parse_complex(&format_complex(z)) == z`
/// bit for bit, signed zeros included.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", real(z.re), sign, real(z.im.abs()))
}

/// Three comma-separated complex numbers.
pub fn parse_triple(s: &str) -> Result<[Complex64; 3], InputError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(InputError::Arity(parts.len()));
    }
    Ok([parse_complex(parts[0])?, parse_complex(parts[1])?, parse_complex(parts[2])?])
}

pub fn parse_point(s: &str) -> Result<DiskPoint, InputError> {
    let z = parse_complex(s)?;
    DiskPoint::new(z).map_err(InputError::from)
}

/// Three disk points, e.g. `0.1+0.1i,0.5,0.3i`.
pub fn parse_triangle(s: &str) -> Result<[DiskPoint; 3], InputError> {
    let [a, b, c] = parse_triple(s)?;
    let point = |z: Complex64| DiskPoint::new(z).map_err(InputError::from);
    Ok([point(a)?, point(b)?, point(c)?])
}
