//! CSV and JSON rendering of result rows.

use serde::Serialize;
use serde_json::json;

/// Shortest decimal that round-trips to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:?}")
    }
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// Free text in a CSV cell: no separators or line breaks.
pub fn fmt_text(s: &str) -> String {
    s.chars().map(|c| if matches!(c, ',' | '\n' | '\r' | '"') { ';' } else { c }).collect()
}

pub trait Row: Serialize {
    const HEADER: &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

pub fn render_csv<R: Row>(meta: &serde_json::Value, rows: &[R]) -> String {
    let mut out = format!("# meta: {meta}\n");
    out.push_str(&R::HEADER.join(","));
    out.push('\n');
    for r in rows {
        out.push_str(&r.cells().join(","));
        out.push('\n');
    }
    out
}

pub fn render_json<R: Row>(meta: &serde_json::Value, rows: &[R]) -> String {
    let doc = json!({ "meta": meta, "columns": R::HEADER, "rows": rows });
    let mut s = serde_json::to_string_pretty(&doc).expect("rows serialize");
    s.push('\n');
    s
}

/// JSON cannot hold non-finite numbers; they become `null`.
pub fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_formatting() {
        for x in [0.1, 1.0, 1e-10, 2.0f64.ln(), 1.7e308, 5e-324, -0.0, 123456.789] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
        assert_eq!(fmt_f64(0.1), "0.1");
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_opt(None), "");
        assert_eq!(fmt_text("a,b\nc"), "a;b;c");
    }
}
