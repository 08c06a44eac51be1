//! Byte-stable JSON, CSV and SVG writers with atomic file replacement.

use crate::CliError;
use branching_core::Complex64;
use serde_json::Value;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

/// Floats always as `d.dddddddddddddddde±x` (17 significant digits), so a
/// rerun reproduces the file byte for byte and every value round-trips.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        // not representable in JSON
        "null".to_string()
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |out: &mut String, n: usize| out.push_str(&" ".repeat(n));
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&fmt_f64(n.as_f64().unwrap_or(f64::NAN)));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            // short scalar rows stay on one line
            out.push('[');
            for (k, x) in items.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                write_value(out, x, indent);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, x) in items.iter().enumerate() {
                pad(out, indent + 2);
                write_value(out, x, indent + 2);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, x)) in map.iter().enumerate() {
                pad(out, indent + 2);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, indent + 2);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

pub fn to_json_string(v: &Value) -> String {
    let mut s = String::new();
    write_value(&mut s, v, 0);
    s.push('\n');
    s
}

pub fn complex_json(z: Complex64) -> Value {
    serde_json::json!([z.re, z.im])
}

/// CSV with a header row; every float cell uses [`fmt_f64`].
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for (k, row) in rows.into_iter().enumerate() {
        let _ = write!(s, "{k}");
        for x in row {
            s.push(',');
            s.push_str(&fmt_f64(x));
        }
        s.push('\n');
    }
    s
}

/// A bare SVG document: axes through the origin, one polyline per series and
/// a dot at the origin.
pub fn svg_polylines(title: &str, series: &[(&str, &[Complex64])]) -> String {
    const SIZE: f64 = 480.0;
    const MARGIN: f64 = 24.0;
    let origin = Complex64::new(0.0, 0.0);
    let pts = series.iter().flat_map(|s| s.1.iter()).chain(std::iter::once(&origin));
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for z in pts.filter(|z| z.re.is_finite() && z.im.is_finite()) {
        x0 = x0.min(z.re);
        x1 = x1.max(z.re);
        y0 = y0.min(z.im);
        y1 = y1.max(z.im);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let px = |x: f64| MARGIN + (x - x0) * scale;
    let py = |y: f64| SIZE - MARGIN - (y - y0) * scale;
    let colours = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, "<title>{}</title>", xml_escape(title));
    let _ = writeln!(
        s,
        r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#999" stroke-width="0.5"/>"##,
        px(x0),
        py(0.0),
        px(x0 + span),
        py(0.0)
    );
    let _ = writeln!(
        s,
        r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#999" stroke-width="0.5"/>"##,
        px(0.0),
        py(y0),
        px(0.0),
        py(y0 + span)
    );
    for (k, (label, zs)) in series.iter().enumerate() {
        let mut points = String::new();
        for z in zs.iter() {
            let _ = write!(points, "{:.3},{:.3} ", px(z.re), py(z.im));
        }
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.2" points="{}"><title>{}</title></polyline>"#,
            colours[k % colours.len()],
            points.trim_end(),
            xml_escape(label)
        );
    }
    let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="2.5" fill="black"/>"#, px(0.0), py(0.0));
    s.push_str("</svg>\n");
    s
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_f64(-2.0), "-2.0000000000000000e0");
        let back: f64 = fmt_f64(std::f64::consts::PI).parse().unwrap();
        assert_eq!(back, std::f64::consts::PI);
    }

    #[test]
    fn json_is_valid_and_stable() {
        let v = json!({"b": [1.5, 2], "a": {"z": [[0.25, -1.0]]}, "s": "x\"y", "n": null});
        let s = to_json_string(&v);
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["b"][0], json!(1.5));
        assert_eq!(back["b"][1], json!(2));
        assert_eq!(s, to_json_string(&v));
    }

    #[test]
    fn csv_rows_are_numbered() {
        let s = csv(&["k", "x"], vec![vec![1.0], vec![2.0]]);
        assert_eq!(s.lines().collect::<Vec<_>>(), ["k,x", "0,1.0000000000000000e0", "1,2.0000000000000000e0"]);
    }

    #[test]
    fn svg_has_a_polyline_per_series() {
        let a = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 1.0)];
        let s = svg_polylines("t", &[("a", &a), ("b", &a)]);
        assert_eq!(s.matches("<polyline").count(), 2);
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sub/out.txt");
        write_atomic(&p, "one").unwrap();
        write_atomic(&p, "two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(p.parent().unwrap()).unwrap().count(), 1);
    }
}
