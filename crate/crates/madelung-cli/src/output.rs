//! Record-oriented output: CSV (comma-separated, `.` decimal point, header
//! row, LF endings) and JSON (array of records mirroring the CSV columns).
//! Numeric fields carry 15 significant digits.

use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Value,
    TableRow,
    TracePoint,
    CheckResult,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Value => "value",
            Kind::TableRow => "table_row",
            Kind::TracePoint => "trace_point",
            Kind::CheckResult => "check_result",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Field {
    Num(f64),
    Int(i64),
    /// Exact counts that may exceed u64; already rendered as digits.
    Count(String),
    Text(String),
    /// CSV: empty cell; JSON: null.
    Empty,
}

#[derive(Debug, Clone)]
pub struct OutputRecord {
    pub kind: Kind,
    pub fields: Vec<(&'static str, Field)>,
}

/// 15 significant digits; plain notation in a readable exponent range,
/// scientific outside it. Parsing the result and re-formatting it is
/// idempotent (15 < 17 round-trip digits for f64).
pub fn fmt_sig15(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let e = v.abs().log10().floor() as i32;
    if (-4..15).contains(&e) {
        let decimals = (14 - e).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.14e}")
    }
}

fn field_csv(f: &Field) -> String {
    match f {
        Field::Num(v) => fmt_sig15(*v),
        Field::Int(v) => v.to_string(),
        Field::Count(s) => s.clone(),
        Field::Text(s) => s.clone(),
        Field::Empty => String::new(),
    }
}

fn field_json(f: &Field) -> serde_json::Value {
    match f {
        Field::Num(v) => {
            // arbitrary_precision keeps the 15-digit literal as-is
            serde_json::from_str::<serde_json::Number>(&fmt_sig15(*v))
                .map(serde_json::Value::Number)
                .unwrap_or(serde_json::Value::Null)
        }
        Field::Int(v) => serde_json::Value::from(*v),
        Field::Count(s) => serde_json::from_str::<serde_json::Number>(s)
            .map(serde_json::Value::Number)
            .unwrap_or_else(|_| serde_json::Value::String(s.clone())),
        Field::Text(s) => serde_json::Value::String(s.clone()),
        Field::Empty => serde_json::Value::Null,
    }
}

pub fn write_csv(out: &mut dyn Write, records: &[OutputRecord]) -> io::Result<()> {
    let Some(first) = records.first() else {
        return Ok(());
    };
    let header: Vec<&str> = first.fields.iter().map(|(name, _)| *name).collect();
    writeln!(out, "{}", header.join(","))?;
    for rec in records {
        let row: Vec<String> = rec.fields.iter().map(|(_, f)| field_csv(f)).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// CSV with an explicit header even when there are no data rows.
pub fn write_csv_with_header(
    out: &mut dyn Write,
    header: &[&str],
    records: &[OutputRecord],
) -> io::Result<()> {
    writeln!(out, "{}", header.join(","))?;
    for rec in records {
        let row: Vec<String> = rec.fields.iter().map(|(_, f)| field_csv(f)).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn write_json(out: &mut dyn Write, records: &[OutputRecord]) -> io::Result<()> {
    let array: Vec<serde_json::Value> = records
        .iter()
        .map(|rec| {
            let mut map = serde_json::Map::new();
            map.insert(
                "kind".into(),
                serde_json::Value::String(rec.kind.name().into()),
            );
            for (name, f) in &rec.fields {
                map.insert((*name).into(), field_json(f));
            }
            serde_json::Value::Object(map)
        })
        .collect();
    writeln!(out, "{}", serde_json::to_string_pretty(&array)?)
}
