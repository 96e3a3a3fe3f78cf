//! CSV and JSON field input, canonical JSON output for fields and tables.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{BuildOptions, FieldSpec, JointField, RowSpec, SiteSpec};
use crate::marginal::MarginalTable;
use crate::rational::{parse_weight, to_json_string};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// Guesses from the first non-blank character: `{` means JSON.
    pub fn sniff(text: &str) -> Format {
        match text.trim_start().chars().next() {
            Some('{') => Format::Json,
            _ => Format::Csv,
        }
    }

    pub fn from_path(path: &str) -> Option<Format> {
        let lower = path.to_ascii_lowercase();
        if lower.ends_with(".json") {
            Some(Format::Json)
        } else if lower.ends_with(".csv") {
            Some(Format::Csv)
        } else {
            None
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonSite {
    name: String,
    alphabet: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRow {
    assignment: Vec<String>,
    weight: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonField {
    sites: Vec<JsonSite>,
    rows: Vec<JsonRow>,
}

/// Header `site1,...,siteN,weight`; alphabets follow first appearance in the body.
pub fn parse_csv(text: &str) -> Result<FieldSpec> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .clone();
    let cols: Vec<&str> = header.iter().collect();
    match cols.split_last() {
        Some((&"weight", names)) if !names.is_empty() => {}
        Some((&"weight", _)) => return Err(Error::EmptySpec),
        _ => return Err(Error::Parse("last CSV column must be `weight`".to_string())),
    }
    let names = &cols[..cols.len() - 1];
    let mut sites: Vec<SiteSpec> = names
        .iter()
        .map(|n| SiteSpec {
            name: n.to_string(),
            alphabet: Vec::new(),
        })
        .collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let fields: Vec<&str> = record.iter().collect();
        let (weight, labels) = fields
            .split_last()
            .ok_or_else(|| Error::Parse("empty CSV row".to_string()))?;
        for (site, label) in sites.iter_mut().zip(labels.iter()) {
            if !site.alphabet.iter().any(|l| l == label) {
                site.alphabet.push(label.to_string());
            }
        }
        rows.push(RowSpec {
            assignment: labels.iter().map(|s| s.to_string()).collect(),
            weight: parse_weight(weight)?,
        });
    }
    Ok(FieldSpec { sites, rows })
}

pub fn parse_json(text: &str) -> Result<FieldSpec> {
    let raw: JsonField = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(FieldSpec {
        sites: raw
            .sites
            .into_iter()
            .map(|s| SiteSpec {
                name: s.name,
                alphabet: s.alphabet,
            })
            .collect(),
        rows: raw
            .rows
            .into_iter()
            .map(|r| {
                Ok(RowSpec {
                    assignment: r.assignment,
                    weight: parse_weight(&r.weight)?,
                })
            })
            .collect::<Result<_>>()?,
    })
}

pub fn read_field(text: &str, format: Format, options: BuildOptions) -> Result<JointField> {
    let spec = match format {
        Format::Csv => parse_csv(text)?,
        Format::Json => parse_json(text)?,
    };
    JointField::build(&spec, options)
}

/// Input-format JSON of a field: declared alphabets and positive-mass rows.
pub fn field_to_json(field: &JointField) -> Value {
    let spec = field.to_spec();
    let doc = JsonField {
        sites: spec
            .sites
            .into_iter()
            .map(|s| JsonSite {
                name: s.name,
                alphabet: s.alphabet,
            })
            .collect(),
        rows: spec
            .rows
            .into_iter()
            .map(|r| JsonRow {
                assignment: r.assignment,
                weight: to_json_string(&r.weight),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("plain data")
}

/// `{scope: [names], entries: [{assignment: [labels], p: "p/q"}]}` over every cell.
pub fn table_to_json(field: &JointField, table: &MarginalTable) -> Value {
    let scope: Vec<&str> = table.scope().iter().map(|s| field.site_name(s)).collect();
    let entries: Vec<Value> = table
        .entries()
        .map(|(a, p)| {
            let labels: Vec<&str> = a.pairs().map(|(s, l)| field.label(s, l)).collect();
            serde_json::json!({ "assignment": labels, "p": to_json_string(&p) })
        })
        .collect();
    serde_json::json!({ "scope": scope, "entries": entries })
}

/// Pretty JSON with a trailing newline.
pub fn to_canonical_string(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
