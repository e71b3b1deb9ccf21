use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde_json::{Map, Number, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Missing,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Float)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // 17 significant digits
            Cell::Float(v) if v.is_finite() => format!("{v:.16e}"),
            Cell::Float(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Missing => Value::Null,
        }
    }
}

/// A result table with a fixed column order.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> io::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// One object per row, keys in column order.
    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect();
                Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> io::Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => Ok(self.to_json()),
        }
    }

    /// A gnuplot script plotting every numeric column against the first.
    pub fn plot_script(&self, data: &Path) -> String {
        let name = data.display();
        let numeric = |i: usize| {
            self.rows.iter().any(|r| matches!(r[i], Cell::Float(_) | Cell::Int(_)))
        };
        let series: Vec<String> = (1..self.columns.len())
            .filter(|&i| numeric(i))
            .map(|i| format!("'{name}' using 1:{} with linespoints title '{}'", i + 1, self.columns[i]))
            .collect();
        let mut s = String::new();
        s.push_str("set datafile separator ','\n");
        s.push_str("set key autotitle columnhead\n");
        s.push_str(&format!("set xlabel '{}'\n", self.columns[0]));
        s.push_str(&format!("plot {}\n", series.join(", \\\n     ")));
        s
    }
}

/// Where a rendered table goes.
pub struct Sink {
    pub format: Format,
    pub out: Option<PathBuf>,
    pub plot: bool,
}

impl Sink {
    pub fn plot_path(out: &Path) -> PathBuf {
        let mut p = out.as_os_str().to_owned();
        p.push(".gp");
        PathBuf::from(p)
    }

    pub fn emit(&self, table: &Table) -> io::Result<()> {
        let text = table.render(self.format)?;
        match &self.out {
            Some(path) => {
                fs::write(path, text)?;
                if self.plot {
                    fs::write(Self::plot_path(path), table.plot_script(path))?;
                }
            }
            None => io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}
