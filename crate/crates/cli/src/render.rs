//! Markdown, CSV and JSON renderings of a result value.
//!
//! All three carry the same numbers: exact fractions are written with their
//! `value` string and unknown dimensions as `?`.

use serde_json::{Map, Value};

use crate::output::is_eighths;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Md,
    Csv,
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("values serialize") + "\n",
        Format::Md => markdown(v),
        Format::Csv => csv_text(v),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "?".into(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        _ if is_eighths(v) => scalar(&v["value"]),
        Value::Array(a) => a.iter().map(scalar).collect::<Vec<_>>().join(", "),
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| format!("{k}={}", scalar(x)))
            .collect::<Vec<_>>()
            .join(", "),
    }
}

/// Arrays of objects that are not fraction values render as tables.
fn is_table(v: &Value) -> bool {
    v.as_array()
        .is_some_and(|a| !a.is_empty() && a.iter().all(|x| x.is_object() && !is_eighths(x)))
}

fn table_columns(rows: &[Value]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().into_iter().flat_map(Map::keys) {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    cols
}

fn markdown(v: &Value) -> String {
    let Some(obj) = v.as_object() else {
        return scalar(v) + "\n";
    };
    let mut out = String::new();
    let title = obj.get("kind").map_or("result".to_string(), scalar);
    out.push_str(&format!("# {title}\n\n| quantity | value |\n|---|---|\n"));
    let mut sections = String::new();
    for (k, x) in obj {
        if k == "kind" {
            continue;
        }
        if is_table(x) {
            let rows = x.as_array().expect("tables are arrays");
            let cols = table_columns(rows);
            sections.push_str(&format!(
                "\n## {k}\n\n| {} |\n|{}\n",
                cols.join(" | "),
                "---|".repeat(cols.len())
            ));
            for r in rows {
                let cells: Vec<String> = cols
                    .iter()
                    .map(|c| scalar(r.get(c).unwrap_or(&Value::Null)))
                    .collect();
                sections.push_str(&format!("| {} |\n", cells.join(" | ")));
            }
        } else if k == "provenance" || k == "violations" {
            sections.push_str(&format!("\n## {k}\n\n"));
            let items = x.as_array().map(Vec::as_slice).unwrap_or_default();
            if items.is_empty() {
                sections.push_str("none\n");
            }
            for item in items {
                sections.push_str(&format!("- {}\n", scalar(item)));
            }
        } else {
            out.push_str(&format!("| {k} | {} |\n", scalar(x)));
        }
    }
    out + &sections
}

fn csv_text(v: &Value) -> String {
    let mut w = csv::WriterBuilder::new()
        .flexible(false)
        .from_writer(Vec::new());
    match v.get("rows").and_then(Value::as_array) {
        Some(rows) => {
            let cols = table_columns(rows);
            if !cols.is_empty() {
                w.write_record(&cols).expect("in-memory write");
            }
            for r in rows {
                w.write_record(
                    cols.iter()
                        .map(|c| scalar(r.get(c).unwrap_or(&Value::Null))),
                )
                .expect("in-memory write");
            }
        }
        None => {
            w.write_record(["field", "key", "value"])
                .expect("in-memory write");
            for (field, key, value) in long_rows(v) {
                w.write_record([field, key, value])
                    .expect("in-memory write");
            }
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

/// `(field, key, value)` triples; `key` is a degree or index inside arrays.
fn long_rows(v: &Value) -> Vec<(String, String, String)> {
    let mut out = Vec::new();
    let Some(obj) = v.as_object() else {
        return vec![(String::new(), String::new(), scalar(v))];
    };
    for (name, x) in obj {
        match x {
            Value::Object(m) if !is_eighths(x) => {
                for (k, y) in m {
                    out.push((format!("{name}.{k}"), String::new(), scalar(y)));
                }
            }
            Value::Array(a) => {
                for (i, item) in a.iter().enumerate() {
                    match item.as_object() {
                        Some(m) if !is_eighths(item) => {
                            let key = m.get("degree").map_or(i.to_string(), scalar);
                            for (f, y) in m.iter().filter(|(f, _)| *f != "degree") {
                                out.push((format!("{name}.{f}"), key.clone(), scalar(y)));
                            }
                        }
                        _ => out.push((name.clone(), i.to_string(), scalar(item))),
                    }
                }
            }
            _ => out.push((name.clone(), String::new(), scalar(x))),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Value {
        json!({
            "kind": "space",
            "alpha": {"eighths": 3, "value": "3/8"},
            "ideal": {"i": 1, "j": 0, "k": 0},
            "tate": [1, 0, 1, 1],
            "borel": [{"degree": 0, "dim": 1}, {"degree": 1, "dim": null}],
            "provenance": ["rep_sphere(0, 0)"]
        })
    }

    #[test]
    fn markdown_layout() {
        let md = render(&sample(), Format::Md);
        assert!(md.starts_with("# space\n"));
        assert!(md.contains("| alpha | 3/8 |"));
        assert!(md.contains("| ideal | i=1, j=0, k=0 |"));
        assert!(md.contains("| tate | 1, 0, 1, 1 |"));
        assert!(md.contains("| 1 | ? |"));
        assert!(md.contains("- rep_sphere(0, 0)"));
    }

    #[test]
    fn csv_long_form() {
        let csv = render(&sample(), Format::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "field,key,value");
        assert!(lines.contains(&"alpha,,3/8"));
        assert!(lines.contains(&"ideal.j,,0"));
        assert!(lines.contains(&"tate,2,1"));
        assert!(lines.contains(&"borel.dim,1,?"));
        assert!(lines.contains(&"provenance,0,\"rep_sphere(0, 0)\""));
    }

    #[test]
    fn csv_rows() {
        let v = json!({"kind": "table", "rows": [{"n": 7, "alpha": {"eighths": 8, "value": "1"}}]});
        assert_eq!(render(&v, Format::Csv), "n,alpha\n7,1\n");
    }
}
