//! Small output helpers: CSV tables with a fixed numeric format and
//! JSON via serde.

use std::io::Write;

use serde::Serialize;

use crate::error::{Result, WqError};

/// Format a float with 17 significant digits (round-trip safe).
pub fn fmt17(x: f64) -> String {
    if x == 0.0 {
        return "0.0000000000000000e0".into();
    }
    format!("{:.16e}", x)
}

/// Write a CSV table: header row plus rows of 17-significant-digit floats,
/// comma separators, LF line endings.
pub fn write_csv<W: Write>(mut w: W, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let cols = header.len();
    writeln!(w, "{}", header.join(",")).map_err(io_err)?;
    for row in rows {
        if row.len() != cols {
            return Err(WqError::Domain(format!(
                "row has {} fields, header has {cols}",
                row.len()
            )));
        }
        let line: Vec<String> = row.iter().map(|&x| fmt17(x)).collect();
        writeln!(w, "{}", line.join(",")).map_err(io_err)?;
    }
    Ok(())
}

pub fn write_json<W: Write, T: Serialize>(w: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(w, value).map_err(|e| WqError::Domain(e.to_string()))
}

fn io_err(e: std::io::Error) -> WqError {
    WqError::Domain(format!("write failed: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt17_round_trips() {
        for &x in &[0.1, -3.0, 1.0 / 3.0, 1e-300, std::f64::consts::PI, 0.0] {
            let s = fmt17(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, x, "{s}");
        }
    }

    #[test]
    fn csv_shape() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &["a", "b"], &[vec![1.0, 2.0], vec![3.0, 4.5]]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.split('\n').collect();
        assert_eq!(lines[0], "a,b");
        assert_eq!(lines.len(), 4); // trailing newline
        assert!(!text.contains('\r'));
        assert!(lines[1].starts_with("1.0000000000000000e0,"));
    }
}
