use crate::error::CliError;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Renders a result; JSON keys come out sorted because `Value` maps are ordered.
pub fn render(v: &Value, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Other(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => render_csv(v),
    }
}

/// Rows are the array elements, the `terms` of an expansion report, or the
/// object itself; nested objects flatten to dotted column names.
fn rows(v: &Value) -> Vec<Map<String, Value>> {
    let flat = |x: &Value| {
        let mut m = Map::new();
        flatten("", x, &mut m);
        m
    };
    match v {
        Value::Array(items) => items.iter().map(flat).collect(),
        Value::Object(o) => match o.get("terms") {
            Some(Value::Array(items)) => items.iter().map(flat).collect(),
            _ => vec![flat(v)],
        },
        _ => vec![flat(v)],
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Map<String, Value>) {
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        _ => {
            let key = if prefix.is_empty() { "value".to_string() } else { prefix.to_string() };
            out.insert(key, v.clone());
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Number(n) => match n.as_i64() {
            Some(i) if !n.is_f64() => i.to_string(),
            _ => format!("{:.16e}", n.as_f64().unwrap_or(f64::NAN)),
        },
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_csv(v: &Value) -> Result<String, CliError> {
    let rows = rows(v);
    let mut header: Vec<String> = Vec::new();
    for r in &rows {
        for k in r.keys() {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    header.sort();
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Other(e.to_string());
    w.write_record(&header).map_err(err)?;
    for r in &rows {
        w.write_record(header.iter().map(|k| r.get(k).map(cell).unwrap_or_default())).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Other(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Other(e.to_string()))
}
