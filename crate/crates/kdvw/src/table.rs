//! Columnar text tables and key/value records.
//!
//! Tables carry one `# col col ...` header line and whitespace-separated
//! rows. Floats are written in the shortest form that parses back to the
//! same bits.

use std::fmt::Write as _;
use std::path::Path;

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut s = format!("# {}\n", self.columns.join(" "));
        for r in &self.rows {
            let cells: Vec<String> = r
                .iter()
                .map(|c| match c {
                    Cell::Num(v) => format!("{v:e}"),
                    Cell::Text(t) => t.clone(),
                })
                .collect();
            let _ = writeln!(s, "{}", cells.join(" "));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut lines = text.lines();
        let head = lines.next().and_then(|h| h.strip_prefix('#')).ok_or_else(|| CliError::Table("missing header".into()))?;
        let columns: Vec<String> = head.split_whitespace().map(str::to_string).collect();
        let mut rows = Vec::new();
        for (i, l) in lines.enumerate() {
            if l.trim().is_empty() {
                continue;
            }
            let row: Vec<Cell> = l
                .split_whitespace()
                .map(|c| c.parse::<f64>().map(Cell::Num).unwrap_or_else(|_| Cell::Text(c.to_string())))
                .collect();
            if row.len() != columns.len() {
                return Err(CliError::Table(format!("row {} has {} cells, header {}", i + 1, row.len(), columns.len())));
            }
            rows.push(row);
        }
        Ok(Table { columns, rows })
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Table(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// A numeric column by name.
    pub fn column(&self, name: &str) -> Result<Vec<f64>, CliError> {
        let j = self.columns.iter().position(|c| c == name).ok_or_else(|| CliError::Table(format!("no column '{name}'")))?;
        self.rows
            .iter()
            .map(|r| match &r[j] {
                Cell::Num(v) => Ok(*v),
                Cell::Text(t) => Err(CliError::Table(format!("'{t}' in numeric column '{name}'"))),
            })
            .collect()
    }
}

/// `key = value` lines in the given order.
pub fn render_record(pairs: &[(String, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
}

pub fn parse_record(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}

pub fn record_value(pairs: &[(String, String)], key: &str) -> Option<f64> {
    pairs.iter().find(|(k, _)| k == key).and_then(|(_, v)| v.parse().ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let mut t = Table::new(&["x", "u", "region"]);
        let vals = [0.1 + 0.2, -1.0 / 3.0, 1e-300, 6.02214076e23, -0.0];
        for v in vals {
            t.push(vec![v.into(), (v * 7.0).into(), "whitham".into()]);
        }
        let back = Table::parse(&t.render()).unwrap();
        for (a, b) in t.column("u").unwrap().iter().zip(back.column("u").unwrap()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert_eq!(back.rows[0][2], Cell::Text("whitham".into()));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Table::parse("# a b\n1 2\n3\n").is_err());
        assert!(Table::parse("1 2\n").is_err());
    }
}
