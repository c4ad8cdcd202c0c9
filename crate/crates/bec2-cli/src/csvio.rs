//! Deterministic CSV assembly: UTF-8, LF line endings, comma separators,
//! shortest round-trip float formatting. Identical configurations produce
//! byte-identical files.

use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};

/// Shortest round-trip decimal; scientific notation outside a readable
/// magnitude window. Both forms parse back to the same bits.
pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if (1e-4..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub struct CsvFile {
    pub name: String,
    bytes: Vec<u8>,
    rows: usize,
}

impl CsvFile {
    pub fn new(name: &str, header: &str) -> Self {
        let mut bytes = Vec::new();
        bytes.extend_from_slice(header.as_bytes());
        bytes.push(b'\n');
        Self { name: name.to_string(), bytes, rows: 0 }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.bytes.extend_from_slice(fields.join(",").as_bytes());
        self.bytes.push(b'\n');
        self.rows += 1;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn sha256_hex(&self) -> String {
        let digest = Sha256::digest(&self.bytes);
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn write_to(&self, dir: &Path) -> std::io::Result<PathBuf> {
        let path = dir.join(&self.name);
        let mut f = std::fs::File::create(&path)?;
        f.write_all(&self.bytes)?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_roundtrip() {
        for v in [0.0, -0.0, 1.0, 0.1, -3.25, 1e-300, 2.5e19, f64::MIN_POSITIVE] {
            let s = fmt_f64(v);
            let back: f64 = s.parse().unwrap();
            assert!(back == v || (v == 0.0 && back == 0.0), "{v} -> {s} -> {back}");
        }
    }

    #[test]
    fn csv_bytes_are_stable() {
        let mut a = CsvFile::new("x.csv", "a,b");
        a.row(&[fmt_f64(1.5), fmt_f64(2.0)]);
        let mut b = CsvFile::new("x.csv", "a,b");
        b.row(&[fmt_f64(1.5), fmt_f64(2.0)]);
        assert_eq!(a.sha256_hex(), b.sha256_hex());
        assert_eq!(a.rows(), 1);
    }
}
