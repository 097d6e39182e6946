//! Delimited-text output: `#`-prefixed comment lines carrying the resolved
//! configuration, a mandatory header row, then comma-separated data rows
//! with dot decimals. Floats print in Rust's shortest round-trip form, so a
//! fixed scenario and seed yield byte-identical tables.

use std::io::Write;

use crate::error::Result;

#[derive(Debug, Clone)]
pub struct Table {
    comments: Vec<String>,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

/// Shortest round-trip decimal form of a float.
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

/// Optional cell: empty string when absent.
pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

impl Table {
    pub fn new<S: Into<String>>(columns: Vec<S>) -> Self {
        Self {
            comments: Vec::new(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    pub fn comments(&mut self, lines: impl IntoIterator<Item = String>) {
        self.comments.extend(lines);
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_to(&self, out: &mut dyn Write) -> Result<()> {
        for line in &self.comments {
            writeln!(out, "# {line}")?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }

    pub fn to_string_lossy(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("write to vec");
        String::from_utf8(buf).expect("tables are utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_comments_header_rows() {
        let mut t = Table::new(vec!["a", "b"]);
        t.comment("units: hours");
        t.push_row(vec![fmt_f64(1.5), fmt_f64(0.25)]);
        t.push_row(vec![fmt_opt(None), fmt_opt(Some(2.0))]);
        assert_eq!(t.to_string_lossy(), "# units: hours\na,b\n1.5,0.25\n,2\n");
    }

    #[test]
    fn float_formatting_roundtrips() {
        for v in [0.1, 1.0 / 3.0, 37.043, 1e-12, 123456789.123] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }
}
