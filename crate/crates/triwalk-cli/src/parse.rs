//! Pure parsers for the command-line value syntaxes: exact π-fraction
//! angles, complex amplitude triples, and inclusive site windows.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Parses an angle in radians.
///
/// Accepts plain decimals (`1.5708`, `-0.3`) and exact fractions of π
/// written as `[±][coef]pi[/denominator]` — e.g. `pi`, `-pi/2`, `2pi/3`,
/// `-2pi/3`, `0.5pi`. Fractions are evaluated symbolically (one
/// multiplication and one division from the f64 π constant), so special
/// angles are detected without decimal-rounding slop.
pub fn parse_theta(input: &str) -> Result<f64, String> {
    let t: String = input.trim().to_ascii_lowercase().replace(' ', "");
    if t.is_empty() {
        return Err("empty angle".into());
    }
    let Some(pos) = t.find("pi") else {
        return t.parse::<f64>().map_err(|_| format!("invalid angle {input:?}"));
    };
    let (pre, post) = (&t[..pos], &t[pos + 2..]);
    let (sign, coef_str) = match pre.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, pre.strip_prefix('+').unwrap_or(pre)),
    };
    let coef: f64 = if coef_str.is_empty() {
        1.0
    } else {
        coef_str.parse().map_err(|_| format!("invalid π coefficient in {input:?}"))?
    };
    let den: f64 = if post.is_empty() {
        1.0
    } else {
        let d = post
            .strip_prefix('/')
            .ok_or_else(|| format!("expected '/denominator' after 'pi' in {input:?}"))?;
        let d: f64 = d.parse().map_err(|_| format!("invalid denominator in {input:?}"))?;
        if d == 0.0 {
            return Err(format!("zero denominator in {input:?}"));
        }
        d
    };
    Ok(sign * coef * PI / den)
}

/// Parses one complex number: `1`, `-0.5`, `i`, `-i`, `0.3i`, `1+2i`,
/// `0.5-0.5i`, including exponent notation in either part.
pub fn parse_complex(token: &str) -> Result<Complex64, String> {
    let t: String = token.trim().replace(' ', "");
    if t.is_empty() {
        return Err("empty component".into());
    }
    if !t.ends_with('i') {
        return t
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| format!("invalid component {token:?}"));
    }
    let body = &t[..t.len() - 1];
    let bytes = body.as_bytes();
    // Split before the last sign that is not a leading sign or an exponent
    // sign; everything after it is the imaginary part.
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        if (bytes[i] == b'+' || bytes[i] == b'-')
            && bytes[i - 1] != b'e'
            && bytes[i - 1] != b'E'
        {
            split = Some(i);
            break;
        }
    }
    let unit = |s: &str| -> Result<f64, String> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse().map_err(|_| format!("invalid component {token:?}")),
        }
    };
    match split {
        Some(i) => {
            let re: f64 =
                body[..i].parse().map_err(|_| format!("invalid component {token:?}"))?;
            Ok(Complex64::new(re, unit(&body[i..])?))
        }
        None => Ok(Complex64::new(0.0, unit(body)?)),
    }
}

/// Parses a comma-separated triple of complex numbers.
pub fn parse_triple(input: &str) -> Result<[Complex64; 3], String> {
    let parts: Vec<&str> = input.split(',').collect();
    if parts.len() != 3 {
        return Err(format!(
            "expected three comma-separated components, got {}",
            parts.len()
        ));
    }
    Ok([
        parse_complex(parts[0])?,
        parse_complex(parts[1])?,
        parse_complex(parts[2])?,
    ])
}

/// Parses an inclusive site window written `lo..hi` (e.g. `-10..10`).
pub fn parse_window(input: &str) -> Result<(i64, i64), String> {
    let t = input.trim();
    let (lo, hi) = t
        .split_once("..")
        .ok_or_else(|| format!("expected 'lo..hi' window, got {input:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("invalid window start {lo:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("invalid window end {hi:?}"))?;
    if lo > hi {
        return Err(format!("window start {lo} exceeds end {hi}"));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_pi_fractions_are_exact() {
        assert_eq!(parse_theta("pi").unwrap(), PI);
        assert_eq!(parse_theta("-pi").unwrap(), -PI);
        assert_eq!(parse_theta("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_theta("-2pi/3").unwrap(), -2.0 * PI / 3.0);
        assert_eq!(parse_theta("2pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_theta("0.5pi").unwrap(), 0.5 * PI);
        assert_eq!(parse_theta("0").unwrap(), 0.0);
        assert_eq!(parse_theta("1.25").unwrap(), 1.25);
        assert_eq!(parse_theta(" Pi/6 ").unwrap(), PI / 6.0);
    }

    #[test]
    fn theta_rejects_garbage() {
        assert!(parse_theta("").is_err());
        assert!(parse_theta("pie").is_err());
        assert!(parse_theta("pi/0").is_err());
        assert!(parse_theta("pi*2").is_err());
        assert!(parse_theta("two").is_err());
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex("-0.5").unwrap(), Complex64::new(-0.5, 0.0));
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("0.3i").unwrap(), Complex64::new(0.0, 0.3));
        assert_eq!(parse_complex("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert_eq!(parse_complex("2-i").unwrap(), Complex64::new(2.0, -1.0));
        assert_eq!(parse_complex("1e-2+3e-4i").unwrap(), Complex64::new(1e-2, 3e-4));
        assert!(parse_complex("1+2j").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn triples_and_windows() {
        let t = parse_triple("0,1,0").unwrap();
        assert_eq!(t[1], Complex64::new(1.0, 0.0));
        assert!(parse_triple("1,2").is_err());
        assert_eq!(parse_window("-10..10").unwrap(), (-10, 10));
        assert_eq!(parse_window("0..0").unwrap(), (0, 0));
        assert!(parse_window("5..-5").is_err());
        assert!(parse_window("1-3").is_err());
    }
}
