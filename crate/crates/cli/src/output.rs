//! Rendering of reports and row sets as aligned text, CSV or JSON.

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// A flat record with a fixed column order.
pub trait Record: Serialize {
    const HEADERS: &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

pub fn list<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn opt<T: ToString>(value: Option<T>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

fn csv_text(headers: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

/// A single record: `key: value` lines, one CSV row, or one JSON object.
pub fn render_report<T: Record>(format: Format, report: &T) -> String {
    match format {
        Format::Table => {
            let width = T::HEADERS.iter().map(|h| h.len()).max().unwrap_or(0);
            T::HEADERS
                .iter()
                .zip(report.cells())
                .map(|(h, v)| format!("{h:<width$}  {v}\n"))
                .collect()
        }
        Format::Csv => csv_text(T::HEADERS, std::iter::once(report.cells())),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

/// Many records: an aligned table, CSV with header, or a JSON array with one
/// object per line.
pub fn render_rows<T: Record>(format: Format, rows: &[T]) -> String {
    match format {
        Format::Table => {
            let cells: Vec<Vec<String>> = rows.iter().map(Record::cells).collect();
            let mut widths: Vec<usize> = T::HEADERS.iter().map(|h| h.len()).collect();
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |row: Vec<String>| {
                let padded: Vec<String> = row
                    .into_iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c:<w$}"))
                    .collect();
                format!("{}\n", padded.join("  ").trim_end())
            };
            let mut out = line(T::HEADERS.iter().map(|h| h.to_string()).collect());
            for row in cells {
                out.push_str(&line(row));
            }
            out
        }
        Format::Csv => csv_text(T::HEADERS, rows.iter().map(Record::cells)),
        Format::Json => {
            if rows.is_empty() {
                return "[]\n".into();
            }
            let body: Vec<String> = rows
                .iter()
                .map(|r| format!("  {}", serde_json::to_string(r).expect("rows serialize")))
                .collect();
            format!("[\n{}\n]\n", body.join(",\n"))
        }
    }
}
