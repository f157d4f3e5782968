//! Tables printed as versioned CSV or JSON.

use std::io::Write;

use serde_json::{Map, Value};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Default)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> std::io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "# schema={SCHEMA}")?;
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(&mut *out);
                w.write_record(&self.columns)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()?;
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let m: Map<String, Value> = self
                            .columns
                            .iter()
                            .zip(r)
                            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                            .collect();
                        Value::Object(m)
                    })
                    .collect();
                let doc = serde_json::json!({
                    "schema": SCHEMA,
                    "columns": self.columns,
                    "rows": rows,
                });
                serde_json::to_writer_pretty(&mut *out, &doc)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

/// Twelve significant digits, trailing zeros dropped; scientific notation
/// outside `[1e-5, 1e12)`.
pub fn float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mant))
    }
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn flag(b: bool) -> String {
    b.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(float(0.0625), "0.0625");
        assert_eq!(float(std::f64::consts::PI), "3.14159265359");
        assert_eq!(float(-0.760416666666666), "-0.760416666667");
        assert_eq!(float(1234567.0), "1234567");
        assert_eq!(float(1.5e-9), "1.5e-9");
        assert_eq!(float(2.0e15), "2e15");
        assert_eq!(float(0.0), "0");
    }

    #[test]
    fn csv_quotes_and_header() {
        let mut t = Table::new(&["a", "b"]);
        t.push(["1", "x,y"]);
        let mut buf = Vec::new();
        t.write(Format::Csv, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "# schema=1\na,b\n1,\"x,y\"\n"
        );
    }

    #[test]
    fn json_mirrors_columns() {
        let mut t = Table::new(&["n", "bound"]);
        t.push(["23", "3"]);
        let mut buf = Vec::new();
        t.write(Format::Json, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["rows"][0]["bound"], "3");
        assert_eq!(v["columns"][1], "bound");
    }
}
