use std::io::Write;

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// What a command produced, in every output format.
pub struct Report {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Printed below the table only.
    pub notes: Vec<String>,
    /// Some verification failed: exit 1.
    pub failed: bool,
    /// JSON Lines instead of a single document.
    pub json_lines: Option<Vec<Value>>,
}

impl Report {
    pub fn new(json: Value, header: &[&str]) -> Self {
        Report {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
            failed: false,
            json_lines: None,
        }
    }

    /// A bare integer result.
    pub fn value(v: Value) -> Self {
        let text = match &v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let mut r = Report::new(serde_json::json!({ "value": v }), &["value"]);
        r.rows.push(vec![text]);
        r
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => match &self.json_lines {
                Some(lines) => {
                    for l in lines {
                        writeln!(out, "{l}")?;
                    }
                    Ok(())
                }
                None => writeln!(out, "{}", serde_json::to_string_pretty(&self.json)?),
            },
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()
            }
            Format::Table => {
                if self.header == ["value"] && self.rows.len() == 1 {
                    writeln!(out, "{}", self.rows[0][0])?;
                } else {
                    write_table(&self.header, &self.rows, out)?;
                }
                for n in &self.notes {
                    writeln!(out, "{n}")?;
                }
                Ok(())
            }
        }
    }
}

fn write_table(header: &[String], rows: &[Vec<String>], out: &mut dyn Write) -> std::io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(header))?;
    writeln!(out, "{}", widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().join("  "))?;
    for r in rows {
        writeln!(out, "{}", line(r))?;
    }
    Ok(())
}
