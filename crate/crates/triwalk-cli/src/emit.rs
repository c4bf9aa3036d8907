//! Deterministic output writers.
//!
//! CSV files use `.` decimal separators, LF line endings, and
//! 17-significant-digit floats (`{:.16e}`), which round-trip f64 exactly.
//! JSON goes through `serde_json`, whose float printing is also exact under
//! round-trip. All content is built in memory and written with one call, so
//! identical configurations produce byte-identical files.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value};
use triwalk::coin::Coin;
use triwalk::evolve::InitState;

/// 17-significant-digit decimal-exponent rendering of a float.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Renders an optional float as [`fmt17`] or the empty field.
pub fn fmt17_opt(v: Option<f64>) -> String {
    v.map(fmt17).unwrap_or_default()
}

/// Writes the full content to `output`, or to stdout when `output` is None.
pub fn write_out(output: Option<&Path>, content: &str) -> std::io::Result<()> {
    match output {
        Some(path) => std::fs::write(path, content.as_bytes()),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(content.as_bytes())?;
            lock.flush()
        }
    }
}

/// Builds a CSV body from a header and pre-rendered rows (LF endings,
/// trailing newline).
pub fn csv(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// Serializes a JSON value with a trailing newline.
pub fn json_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("finite floats serialize");
    s.push('\n');
    s
}

/// Coin descriptor object: `{family, theta, x, y, entries[3][3]}`.
pub fn coin_json(coin: &Coin) -> Value {
    json!({
        "family": format!("{:?}", coin.family()),
        "theta": coin.theta(),
        "x": coin.x(),
        "y": coin.y(),
        "entries": coin.entries(),
    })
}

/// Initial state as `[[re, im]; 3]`.
pub fn init_json(init: &InitState) -> Value {
    let pair = |c: Complex64| json!([c.re, c.im]);
    json!([pair(init.alpha()), pair(init.beta()), pair(init.gamma())])
}
