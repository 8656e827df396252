//! Minimal JSON emission with fixed number formatting.
//!
//! Report files must be byte-deterministic, so floats are always written
//! as decimal with 17 significant digits instead of a shortest-roundtrip
//! representation.

use num_complex::Complex64;

/// A float as decimal with 17 significant digits; non-finite values
/// become `null`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".to_string()
    }
}

/// A complex value as a `{"re": …, "im": …}` object.
pub fn fmt_complex(v: Complex64) -> String {
    format!("{{\"re\": {}, \"im\": {}}}", fmt_f64(v.re), fmt_f64(v.im))
}

/// JSON string escaping for labels and notes.
pub fn fmt_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
