//! Report assembly and serialization.

use serde_json::{Map, Value};

use crate::CliError;

pub const CONVENTIONS_VERSION: &str = "1";

/// A table cell.
#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Pairs(Vec<(u32, u32)>),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_owned())
    }
}

/// Rounds to 15 significant digits. Non-finite values are rejected.
pub fn number(x: f64) -> Result<Value, CliError> {
    if !x.is_finite() {
        return Err(CliError::Output(format!("non-finite value {x} in report")));
    }
    let rounded: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    // -0.0 and 0.0 print alike
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    Ok(Value::from(rounded))
}

impl Cell {
    fn json(&self) -> Result<Value, CliError> {
        Ok(match self {
            Cell::Num(x) => number(*x)?,
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Pairs(v) => Value::Array(v.iter().map(|&(a, b)| Value::from(vec![a, b])).collect()),
        })
    }

    fn csv(&self) -> Result<String, CliError> {
        Ok(match self {
            Cell::Num(_) | Cell::Int(_) | Cell::Bool(_) => self.json()?.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Pairs(v) => v.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(";"),
        })
    }
}

/// Everything a command produces.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub params: Vec<(&'static str, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub tolerances: Vec<(String, Cell)>,
    pub grid: Vec<(&'static str, Cell)>,
    pub runtime_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            params: Vec::new(),
            columns,
            rows: Vec::new(),
            tolerances: Vec::new(),
            grid: Vec::new(),
            runtime_ms: None,
        }
    }

    pub fn param(mut self, name: &'static str, value: impl Into<Cell>) -> Self {
        self.params.push((name, value.into()));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let object = |pairs: &mut dyn Iterator<Item = (String, &Cell)>| -> Result<Value, CliError> {
            let mut m = Map::new();
            for (k, v) in pairs {
                m.insert(k, v.json()?);
            }
            Ok(Value::Object(m))
        };
        let mut params = Map::new();
        params.insert("command".into(), Value::from(self.command));
        for (k, v) in &self.params {
            params.insert((*k).into(), v.json()?);
        }
        let mut meta = Map::new();
        meta.insert("params".into(), Value::Object(params));
        meta.insert("conventions-version".into(), Value::from(CONVENTIONS_VERSION));

        let data = self
            .rows
            .iter()
            .map(|row| object(&mut self.columns.iter().map(|c| c.to_string()).zip(row.iter())))
            .collect::<Result<Vec<_>, _>>()?;

        let mut diagnostics = Map::new();
        diagnostics.insert(
            "tolerances".into(),
            object(&mut self.tolerances.iter().map(|(k, v)| (k.clone(), v)))?,
        );
        diagnostics.insert(
            "grid".into(),
            if self.grid.is_empty() {
                Value::Null
            } else {
                object(&mut self.grid.iter().map(|(k, v)| (k.to_string(), v)))?
            },
        );
        if let Some(ms) = self.runtime_ms {
            diagnostics.insert("runtime_ms".into(), number(ms)?);
        }

        let mut top = Map::new();
        top.insert("meta".into(), Value::Object(meta));
        top.insert("data".into(), Value::Array(data));
        top.insert("diagnostics".into(), Value::Object(diagnostics));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).map_err(|e| CliError::Output(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
        let err = |e: csv::Error| CliError::Output(e.to_string());
        w.write_record(&self.columns).map_err(err)?;
        for row in &self.rows {
            let cells = row.iter().map(Cell::csv).collect::<Result<Vec<_>, _>>()?;
            w.write_record(&cells).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
    }
}
