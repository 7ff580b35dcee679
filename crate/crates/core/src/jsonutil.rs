//! Canonical JSON output: sorted keys, fixed float formatting.
//!
//! Every file the pipeline writes goes through [`to_canonical_json`] so that
//! reruns and different worker counts produce byte-identical output.

use serde::Serialize;

/// Serialize any value to pretty JSON with all object keys sorted.
///
/// `serde_json::Value` maps are backed by `BTreeMap` (the `preserve_order`
/// feature is off), so converting through `Value` sorts keys for us.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable value");
    let mut s = serde_json::to_string_pretty(&v).expect("json render");
    s.push('\n');
    s
}

/// Round a score to three decimals, the precision used in report output.
pub fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

/// Round a fraction to four decimals, the precision used in metric reports.
pub fn round4(x: f64) -> f64 {
    (x * 10000.0).round() / 10000.0
}

/// Round to nine decimals: drops accumulated float noise from audit
/// breakdowns while staying far inside the 1e-9 arithmetic tolerance.
pub fn round9(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

/// Format a fraction as a percentage with one decimal, Table-style.
pub fn pct(x: f64) -> String {
    format!("{:.1}%", x * 100.0)
}
