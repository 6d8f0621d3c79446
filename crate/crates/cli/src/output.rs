use std::io::Write;

use anyhow::Result;
use binsum_core::{Certificate, InstanceRecord};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
    Human,
}

/// Flat CSV layout of an [`InstanceRecord`].
#[derive(Debug, Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct CsvInstanceRow {
    pub r: u64,
    pub n: u64,
    pub classification: String,
    pub certificate_type: Option<String>,
    pub certificate_p: Option<u64>,
    pub certificate_index: Option<u64>,
    pub certificate_m_value: Option<u64>,
    pub value_numerator: Option<String>,
    pub value_denominator: Option<String>,
}

pub const CSV_INSTANCE_HEADER: &str =
    "r,n,classification,certificate_type,certificate_p,certificate_index,certificate_m_value,value_numerator,value_denominator";

impl From<&InstanceRecord> for CsvInstanceRow {
    fn from(rec: &InstanceRecord) -> Self {
        let (kind, p, index, m) = match rec.certificate {
            Some(Certificate::Sylvester { p, k0 }) => (Some("sylvester"), Some(p), Some(k0), None),
            Some(Certificate::Order { p, j }) => (Some("order"), Some(p), Some(j), None),
            Some(Certificate::Smooth { m_value }) => (Some("smooth"), None, None, Some(m_value)),
            None => (None, None, None, None),
        };
        Self {
            r: rec.r,
            n: rec.n,
            classification: rec.classification.clone(),
            certificate_type: kind.map(str::to_owned),
            certificate_p: p,
            certificate_index: index,
            certificate_m_value: m,
            value_numerator: rec.value_numerator.clone(),
            value_denominator: rec.value_denominator.clone(),
        }
    }
}

pub fn instance_human(rec: &InstanceRecord) -> String {
    let detail = match (&rec.certificate, &rec.value_numerator, &rec.value_denominator) {
        (Some(Certificate::Sylvester { p, k0 }), _, _) => format!("sylvester prime p={p} divides k0+r with k0={k0}"),
        (Some(Certificate::Order { p, j }), _, _) => format!("order certificate p={p} divides n+j with j={j}"),
        (Some(Certificate::Smooth { m_value }), _, _) => format!("smooth bound M_r(n)={m_value}"),
        (None, Some(num), Some(den)) => format!("S_r(n) = {num}/{den}"),
        _ => String::new(),
    };
    format!("r={} n={} {} {}", rec.r, rec.n, rec.classification, detail)
}

/// Writes instance records in the chosen format. The CSV header is only
/// emitted when `header` is set.
pub fn write_instances<W: Write>(out: &mut W, format: Format, records: &[InstanceRecord], header: bool) -> Result<()> {
    match format {
        Format::Jsonl => {
            for rec in records {
                out.write_all(rec.to_jsonl().as_bytes())?;
            }
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            if header {
                w.write_record(CSV_INSTANCE_HEADER.split(','))?;
            }
            for rec in records {
                w.serialize(CsvInstanceRow::from(rec))?;
            }
            w.flush()?;
        }
        Format::Human => {
            for rec in records {
                writeln!(out, "{}", instance_human(rec))?;
            }
        }
    }
    Ok(())
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        other => other.to_string(),
    }
}

/// Writes arbitrary serializable records. CSV flattens the top level
/// (columns in key order) and JSON-encodes nested values.
pub fn write_values<W: Write, T: Serialize>(out: &mut W, format: Format, records: &[T]) -> Result<()> {
    if format == Format::Jsonl {
        for rec in records {
            serde_json::to_writer(&mut *out, rec)?;
            out.write_all(b"\n")?;
        }
        return Ok(());
    }
    let values: Vec<Value> = records.iter().map(serde_json::to_value).collect::<Result<_, _>>()?;
    match format {
        Format::Jsonl => unreachable!(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if let Some(Value::Object(first)) = values.first() {
                w.write_record(first.keys())?;
            }
            for v in &values {
                if let Value::Object(map) = v {
                    w.write_record(map.values().map(csv_cell))?;
                }
            }
            w.flush()?;
        }
        Format::Human => {
            for v in &values {
                match v {
                    Value::Object(map) => {
                        let line: Vec<String> = map.iter().map(|(k, v)| format!("{k}={}", csv_cell(v))).collect();
                        writeln!(out, "{}", line.join(" "))?;
                    }
                    other => writeln!(out, "{other}")?,
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(json: &str) -> InstanceRecord {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn csv_rows() {
        let records = [
            rec(r#"{"r":3,"n":4,"classification":"certified_nonintegral","certificate":{"type":"sylvester","p":5,"k0":2}}"#),
            rec(r#"{"r":1,"n":5,"classification":"oracle_nonintegral","value_numerator":"43","value_denominator":"2"}"#),
        ];
        let mut buf = Vec::new();
        write_instances(&mut buf, Format::Csv, &records, true).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            format!(
                "{CSV_INSTANCE_HEADER}\n3,4,certified_nonintegral,sylvester,5,2,,,\n1,5,oracle_nonintegral,,,,,43,2\n"
            )
        );
    }

    #[test]
    fn human_lines() {
        let r = rec(r#"{"r":3,"n":4,"classification":"certified_nonintegral","certificate":{"type":"order","p":5,"j":1}}"#);
        assert_eq!(instance_human(&r), "r=3 n=4 certified_nonintegral order certificate p=5 divides n+j with j=1");
    }
}
