//! Plain-text rendering: seven significant digits, right-aligned columns.

use std::fmt::Write;

/// `x` to seven significant digits, switching to exponent form outside
/// `[1e-4, 1e7)`.
pub fn sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    // rounding can carry into the next decade
    let e = if format!("{:.6e}", x.abs()).ends_with(&format!("e{}", e + 1)) { e + 1 } else { e };
    if (-4..7).contains(&e) {
        format!("{:.*}", (6 - e) as usize, x)
    } else {
        format!("{x:.6e}")
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), sig)
}

#[derive(Debug, Default)]
pub struct TextTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl TextTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn row<S: Into<String>>(&mut self, cells: impl IntoIterator<Item = S>) {
        self.rows.push(cells.into_iter().map(Into::into).collect());
    }

    pub fn render(&self) -> String {
        let cols = self.header.len();
        let mut width = vec![0; cols];
        for r in core::iter::once(&self.header).chain(&self.rows) {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        for r in core::iter::once(&self.header).chain(&self.rows) {
            let line: Vec<String> = r.iter().zip(&width).map(|(c, w)| format!("{c:>w$}")).collect();
            writeln!(out, "{}", line.join("  ").trim_end()).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_significant_digits() {
        assert_eq!(sig(0.43150281), "0.4315028");
        assert_eq!(sig(944798.213), "944798.2");
        assert_eq!(sig(21864.97576), "21864.98");
        assert_eq!(sig(0.0072039244), "0.007203924");
        assert_eq!(sig(-151.437428), "-151.4374");
        assert_eq!(sig(9.99999999), "10.00000");
        assert_eq!(sig(12345678.0), "1.234568e7");
        assert_eq!(sig(3.2e-7), "3.200000e-7");
        assert_eq!(sig(0.0), "0");
    }

    #[test]
    fn columns_align() {
        let mut t = TextTable::new(["a", "long"]);
        t.row(["12345", "1"]);
        assert_eq!(t.render(), "    a  long\n12345     1\n");
    }
}
