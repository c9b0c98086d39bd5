//! Deterministic text emission. Every float prints through [`fmt_f`] so
//! identical runs produce identical bytes; no timestamps, no locale.

use crate::config::{RunConfig, VERSION_STRING};

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

/// Shared '#'-prefixed header: version, resolved config, then
/// command-specific key/value lines, then the column names.
pub fn csv_header(config: &RunConfig, params: &[(&str, String)], columns: &str) -> String {
    let mut out = String::new();
    out.push_str("# ");
    out.push_str(VERSION_STRING);
    out.push('\n');
    out.push_str("# config ");
    out.push_str(&config.canonical_line());
    out.push('\n');
    for (key, value) in params {
        out.push_str("# ");
        out.push_str(key);
        out.push(' ');
        out.push_str(value);
        out.push('\n');
    }
    out.push_str("# ");
    out.push_str(columns);
    out.push('\n');
    out
}

pub fn write_file(path: &std::path::Path, content: &str) -> Result<(), crate::CliError> {
    std::fs::write(path, content).map_err(|e| {
        crate::CliError::config(format!("cannot write {}: {e}", path.display()))
    })
}
