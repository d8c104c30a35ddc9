//! Rendering of command results as aligned text, CSV, or JSON.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// A command's result: rows for text and CSV, a document for JSON.
pub struct Output {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Printed after the table, never in CSV.
    pub footer: Option<String>,
    pub json: Value,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = self.headers.join(",");
                s.push('\n');
                for row in &self.rows {
                    s.push_str(&row.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Table => self.render_table(),
        }
    }

    fn render_table(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut s = String::new();
        let line = |s: &mut String, cells: &mut dyn Iterator<Item = &str>| {
            let parts: Vec<String> = cells
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(s, "{}", parts.join("  ").trim_end());
        };
        line(&mut s, &mut self.headers.iter().map(String::as_str));
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        line(&mut s, &mut rule.iter().map(String::as_str));
        for row in &self.rows {
            line(&mut s, &mut row.iter().map(String::as_str));
        }
        if let Some(footer) = &self.footer {
            let _ = writeln!(s, "{footer}");
        }
        s
    }
}

pub fn emit(text: &str, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Output {
        Output {
            headers: vec!["index".into(), "word".into()],
            rows: vec![vec!["0".into(), "ε".into()], vec!["1".into(), "a1".into()]],
            footer: Some("count: 2".into()),
            json: json!({"count": 2}),
        }
    }

    #[test]
    fn csv_has_header_and_no_footer() {
        assert_eq!(sample().render(Format::Csv), "index,word\n0,ε\n1,a1\n");
    }

    #[test]
    fn table_aligns_columns() {
        let t = sample().render(Format::Table);
        assert_eq!(
            t,
            "index  word\n-----  ----\n0      ε\n1      a1\ncount: 2\n"
        );
    }

    #[test]
    fn json_is_pretty() {
        assert_eq!(sample().render(Format::Json), "{\n  \"count\": 2\n}\n");
    }
}
