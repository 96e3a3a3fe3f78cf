//! Field enumeration, property sweeps and witness mining.

mod checks;
mod enumerate;
mod property;
mod witness;

use serde_json::{json, Value};

pub use checks::{check_property, SweepConfig};
pub use enumerate::{
    enumerate_fields, random_field, random_positive_field, EnumerationBounds, FieldStream, ENUMERATION_CAP,
};
pub use property::{Expectation, PropertyId};
pub use witness::{Witness, WitnessDetail};

use crate::error::{Error, Result};
use crate::field::JointField;
use crate::info::{Analyzer, Neighbor};
use crate::report::{fmt_set, set_names};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MineConfig {
    /// Total witnesses kept before the scan stops.
    pub witness_cap: usize,
    pub sweep: SweepConfig,
}

impl Default for MineConfig {
    fn default() -> Self {
        MineConfig {
            witness_cap: 32,
            sweep: SweepConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MineResult {
    pub property: PropertyId,
    pub witnesses: Vec<Witness>,
    pub fields_scanned: usize,
}

impl MineResult {
    pub fn summary_json(&self) -> Value {
        json!({
            "property": self.property.name(),
            "expectation": self.property.expectation().as_str(),
            "fields_scanned": self.fields_scanned,
            "witnesses": self.witnesses.len(),
        })
    }
}

/// Scans the stream described by `bounds` in order, collecting witnesses
/// until `config.witness_cap` is reached or the stream ends.
pub fn mine(property: PropertyId, bounds: &EnumerationBounds, config: &MineConfig) -> Result<MineResult> {
    let stream = enumerate_fields(bounds)?;
    let mut witnesses = Vec::new();
    let mut fields_scanned = 0;
    for (index, field) in stream.enumerate() {
        if witnesses.len() >= config.witness_cap {
            break;
        }
        fields_scanned += 1;
        let analyzer = Analyzer::new(&field)?;
        let details = check_property(&analyzer, property, &config.sweep)?;
        let room = config.witness_cap - witnesses.len();
        for detail in details.into_iter().take(room) {
            witnesses.push(Witness {
                property,
                field_index: index,
                field: field.clone(),
                detail,
            });
        }
    }
    Ok(MineResult {
        property,
        witnesses,
        fields_scanned,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub property: PropertyId,
    pub passed: bool,
    pub witnesses: Vec<WitnessDetail>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub positive: bool,
    pub outcomes: Vec<PropertyOutcome>,
    /// Neighbor verdict for every site, in site order.
    pub neighbors: Vec<Neighbor>,
}

impl TheoremReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn to_json(&self, field: &JointField) -> Value {
        let outcomes: Vec<Value> = self
            .outcomes
            .iter()
            .map(|o| {
                json!({
                    "property": o.property.name(),
                    "passed": o.passed,
                    "witnesses": o.witnesses.iter().map(|w| w.to_json(field)).collect::<Vec<_>>(),
                })
            })
            .collect();
        let neighbors: Vec<Value> = self
            .neighbors
            .iter()
            .enumerate()
            .map(|(site, n)| {
                json!({
                    "site": field.site_name(site),
                    "neighbor": neighbor_json(field, n),
                })
            })
            .collect();
        json!({
            "positive": self.positive,
            "all_passed": self.all_passed(),
            "properties": outcomes,
            "neighbors": neighbors,
        })
    }

    pub fn to_text(&self, field: &JointField) -> String {
        let mut out = format!("positive: {}\n", self.positive);
        for o in &self.outcomes {
            let verdict = if o.passed { "pass" } else { "FAIL" };
            out.push_str(&format!("{:<22} {verdict}", o.property.name()));
            if !o.passed {
                out.push_str(&format!(" ({} witnesses)", o.witnesses.len()));
            }
            out.push('\n');
        }
        for (site, n) in self.neighbors.iter().enumerate() {
            let shown = match n {
                Neighbor::Unique(set) => fmt_set(&set_names(field, *set)),
                Neighbor::Empty => fmt_set(&[]),
                Neighbor::Ambiguous => "ambiguous".to_string(),
            };
            out.push_str(&format!("neighbor of {}: {shown}\n", field.site_name(site)));
        }
        out
    }
}

fn neighbor_json(field: &JointField, neighbor: &Neighbor) -> Value {
    match neighbor {
        Neighbor::Unique(set) => json!(set_names(field, *set)),
        Neighbor::Empty => json!([]),
        Neighbor::Ambiguous => json!("ambiguous"),
    }
}

/// Runs every MustHold property over one field.
pub fn check_theorems(field: &JointField, config: &SweepConfig) -> Result<TheoremReport> {
    if field.n() > config.max_sites {
        return Err(Error::InstanceTooLarge {
            what: "site count",
            size: field.n() as u128,
            limit: config.max_sites as u128,
        });
    }
    let analyzer = Analyzer::new(field)?;
    let mut outcomes = Vec::new();
    for property in PropertyId::MUST_HOLD {
        let witnesses = check_property(&analyzer, property, config)?;
        outcomes.push(PropertyOutcome {
            property,
            passed: witnesses.is_empty(),
            witnesses,
        });
    }
    let neighbors = (0..field.n())
        .map(|site| Ok(analyzer.es_family(site)?.neighbor))
        .collect::<Result<_>>()?;
    Ok(TheoremReport {
        positive: field.is_positive(),
        outcomes,
        neighbors,
    })
}
