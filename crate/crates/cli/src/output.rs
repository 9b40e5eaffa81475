use std::io::Write;

use serde::Serialize;
use sphdesign::report::SCHEMA_VERSION;

use crate::Failure;

/// Optional value rounded to six decimals; missing values are empty cells.
pub fn fixed(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.6}")).unwrap_or_default()
}

/// A CSV table preceded by the schema comment line.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_csv(&self, out: &mut impl Write) -> Result<(), Failure> {
        writeln!(out, "# schema_version={SCHEMA_VERSION}")?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header).map_err(csv_error)?;
        for row in &self.rows {
            w.write_record(row).map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_pretty(&self, out: &mut impl Write) -> Result<(), Failure> {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: Vec<&str>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        writeln!(out, "{}", line(self.header.clone()))?;
        for row in &self.rows {
            writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
        }
        Ok(())
    }
}

fn csv_error(e: csv::Error) -> Failure {
    Failure::usage(anyhow::Error::new(e).context("writing CSV"))
}

/// `{"schema_version": 1, <key>: value}`.
#[derive(Serialize)]
pub struct Versioned<'a, T: Serialize> {
    pub schema_version: u32,
    #[serde(flatten)]
    pub body: &'a T,
}

pub fn write_json(out: &mut impl Write, value: &impl Serialize) -> Result<(), Failure> {
    let text =
        serde_json::to_string_pretty(value).map_err(|e| Failure::usage(anyhow::Error::new(e)))?;
    writeln!(out, "{text}")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_schema_line() {
        let mut t = Table::new(vec!["a", "b"]);
        t.push(vec!["1".into(), fixed(Some(2.0))]);
        t.push(vec!["x,y".into(), fixed(None)]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "# schema_version=1\na,b\n1,2.000000\n\"x,y\",\n"
        );
    }

    #[test]
    fn pretty_alignment() {
        let mut t = Table::new(vec!["n", "value"]);
        t.push(vec!["10".into(), "1.5".into()]);
        let mut buf = Vec::new();
        t.write_pretty(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), " n  value\n10    1.5\n");
    }
}
