//! Parsing of complex literals from the command line, e.g. `2`, `0.5i`,
//! `-3+i`, `1.2e-1-0.7i`.

use num_complex::Complex64;

use crate::error::CliError;
use crate::Result;

pub fn parse_complex(input: &str) -> Result<Complex64> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(CliError::Config("empty complex literal".into()));
    }
    let bad = || CliError::Config(format!("cannot parse complex literal '{input}'"));
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // Find the sign separating real and imaginary parts: the last
        // '+'/'-' that is neither leading nor part of an exponent.
        let bytes = body.as_bytes();
        let mut split = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1).rev() {
            if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
                break;
            }
        }
        let (re_str, im_str) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("", body),
        };
        let re = if re_str.is_empty() {
            0.0
        } else {
            re_str.parse::<f64>().map_err(|_| bad())?
        };
        let im = match im_str {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other.parse::<f64>().map_err(|_| bad())?,
        };
        Ok(Complex64::new(re, im))
    } else {
        let re = s.parse::<f64>().map_err(|_| bad())?;
        Ok(Complex64::new(re, 0.0))
    }
}

/// A comma-separated list of complex literals.
pub fn parse_complex_list(input: &str) -> Result<Vec<Complex64>> {
    input.split(',').map(parse_complex).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn literals() {
        assert_eq!(parse_complex("2").unwrap(), c(2.0, 0.0));
        assert_eq!(parse_complex("-3.5").unwrap(), c(-3.5, 0.0));
        assert_eq!(parse_complex("0.5i").unwrap(), c(0.0, 0.5));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("-3+i").unwrap(), c(-3.0, 1.0));
        assert_eq!(parse_complex("2-3i").unwrap(), c(2.0, -3.0));
        assert_eq!(parse_complex("1e-2+2.5e-1i").unwrap(), c(0.01, 0.25));
        assert!(parse_complex("nonsense").is_err());
    }

    #[test]
    fn lists() {
        let panel = parse_complex_list("2,0.5i,-3+i").unwrap();
        assert_eq!(panel, vec![c(2.0, 0.0), c(0.0, 0.5), c(-3.0, 1.0)]);
    }
}
