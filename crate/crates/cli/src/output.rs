//! Section-based reports rendered as aligned text, CSV or JSON.

use num_complex::Complex64;
use serde_json::{Map, Number, Value as Json};

use crate::args::Format;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Num(f64),
    Text(String),
    Bool(bool),
    Null,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<usize> for Value {
    fn from(k: usize) -> Self {
        Value::Int(k as i64)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<Option<f64>> for Value {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Value::Null, Value::Num)
    }
}

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn fmt_num(x: f64) -> String {
    let r = round12(x);
    if r == 0.0 {
        "0".into()
    } else if !r.is_finite() || (1e-3..1e15).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

pub fn fmt_complex(z: Complex64) -> String {
    let (re, im) = (round12(z.re), round12(z.im));
    if im == 0.0 {
        fmt_num(re)
    } else if re == 0.0 {
        match im {
            1.0 => "i".into(),
            -1.0 => "-i".into(),
            _ => format!("{}i", fmt_num(im)),
        }
    } else if im < 0.0 {
        format!("{}-{}i", fmt_num(re), fmt_num(-im))
    } else {
        format!("{}+{}i", fmt_num(re), fmt_num(im))
    }
}

impl Value {
    fn text(&self) -> String {
        match self {
            Value::Int(k) => k.to_string(),
            Value::Num(x) => fmt_num(*x),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::Null => String::new(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Int(k) => Json::from(*k),
            Value::Num(x) => Number::from_f64(round12(*x)).map_or_else(|| Json::String(fmt_num(*x)), Json::Number),
            Value::Text(s) => Json::String(s.clone()),
            Value::Bool(b) => Json::Bool(*b),
            Value::Null => Json::Null,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Section {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: vec![],
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Two-column key/value section.
pub fn summary(entries: Vec<(&str, Value)>) -> Section {
    let mut s = Section::new("summary", &["key", "value"]);
    for (k, v) in entries {
        s.push(vec![k.into(), v]);
    }
    s
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Table => Ok(self.render_table()),
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        for (k, s) in self.sections.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            out.push_str(&format!("== {} ==\n", s.name));
            let cells: Vec<Vec<String>> = s.rows.iter().map(|r| r.iter().map(Value::text).collect()).collect();
            let widths: Vec<usize> = (0..s.columns.len())
                .map(|j| cells.iter().map(|r| r[j].len()).chain([s.columns[j].len()]).max().unwrap_or(0))
                .collect();
            let line = |fields: &[String]| {
                let padded: Vec<String> = fields.iter().zip(&widths).map(|(f, w)| format!("{f:>w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(&s.columns));
            for r in &cells {
                out.push_str(&line(r));
            }
        }
        out
    }

    fn render_csv(&self) -> Result<String, CliError> {
        let mut out = String::new();
        let many = self.sections.len() > 1;
        for s in &self.sections {
            if many {
                out.push_str(&format!("# {}\n", s.name));
            }
            let mut w = csv::Writer::from_writer(vec![]);
            w.write_record(&s.columns).map_err(|e| CliError::Io(e.to_string()))?;
            for r in &s.rows {
                w.write_record(r.iter().map(Value::text)).map_err(|e| CliError::Io(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
            out.push_str(&String::from_utf8_lossy(&bytes));
        }
        Ok(out)
    }

    fn render_json(&self) -> Result<String, CliError> {
        let mut sections = Map::new();
        for s in &self.sections {
            let rows: Vec<Json> = s
                .rows
                .iter()
                .map(|r| Json::Object(s.columns.iter().cloned().zip(r.iter().map(Value::json)).collect()))
                .collect();
            sections.insert(s.name.clone(), Json::Array(rows));
        }
        let mut top = Map::new();
        top.insert("command".into(), Json::String(self.command.clone()));
        top.insert("sections".into(), Json::Object(sections));
        serde_json::to_string_pretty(&Json::Object(top))
            .map(|s| s + "\n")
            .map_err(|e| CliError::Io(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt_num(std::f64::consts::PI), "3.14159265359");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(2.5e-9), "2.5e-9");
        assert_eq!(fmt_complex(Complex64::new(0.5, -0.25)), "0.5-0.25i");
        assert_eq!(fmt_complex(Complex64::new(0.0, 1.0616)), "1.0616i");
        assert_eq!(fmt_complex(Complex64::new(0.0, -1.0)), "-i");
        assert_eq!(fmt_num(1.83e-5), "1.83e-5");
    }

    fn sample() -> Report {
        let mut s = Section::new("zeros", &["k", "re"]);
        s.push(vec![1usize.into(), 0.5.into()]);
        s.push(vec![2usize.into(), Value::Null]);
        Report {
            command: "zeros".into(),
            sections: vec![s, summary(vec![("ok", true.into())])],
        }
    }

    #[test]
    fn renderings() {
        let r = sample();
        let csv = r.render(Format::Csv).unwrap();
        assert_eq!(csv, "# zeros\nk,re\n1,0.5\n2,\n# summary\nkey,value\nok,true\n");
        let json: Json = serde_json::from_str(&r.render(Format::Json).unwrap()).unwrap();
        assert_eq!(json["sections"]["zeros"][0]["re"], Json::from(0.5));
        assert!(json["sections"]["zeros"][1]["re"].is_null());
        let table = r.render(Format::Table).unwrap();
        assert!(table.starts_with("== zeros ==\nk   re\n1  0.5\n"));
    }
}
