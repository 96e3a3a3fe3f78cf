//! Per-site analysis reports.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::field::JointField;
use crate::info::{Analyzer, BesagVerdict, Neighbor};
use crate::site_set::SiteSet;

/// Text listings show at most this many sets per family.
pub const TEXT_LIST_CAP: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BesagReport {
    pub status: String,
    pub minimal_sets: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum NeighborReport {
    Set(Vec<String>),
    Word(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SiteReport {
    pub site: String,
    pub positive: bool,
    pub besag: BesagReport,
    pub si_complement: Vec<Vec<String>>,
    pub mi: Vec<Vec<String>>,
    pub es: Vec<Vec<String>>,
    pub neighbor: NeighborReport,
}

pub fn set_names(field: &JointField, set: SiteSet) -> Vec<String> {
    set.iter().map(|s| field.site_name(s).to_string()).collect()
}

fn names_of(field: &JointField, sets: &[SiteSet]) -> Vec<Vec<String>> {
    sets.iter().map(|s| set_names(field, *s)).collect()
}

pub fn analyze_site(analyzer: &Analyzer<'_>, site: usize) -> Result<SiteReport> {
    let field = analyzer.field();
    let others = SiteSet::complement_of(site, field.n());
    let besag = analyzer.reduction_family(site)?;
    let si = analyzer.si_family(site, others)?;
    let mi = analyzer.mi_family(site)?;
    let es = analyzer.es_family(site)?;
    let status = match besag.verdict {
        BesagVerdict::WellDefined(_) => "well-defined",
        BesagVerdict::Ambiguous(_) => "ambiguous",
    };
    let neighbor = match es.neighbor {
        Neighbor::Unique(s) => NeighborReport::Set(set_names(field, s)),
        Neighbor::Empty => NeighborReport::Set(Vec::new()),
        Neighbor::Ambiguous => NeighborReport::Word("ambiguous".to_string()),
    };
    Ok(SiteReport {
        site: field.site_name(site).to_string(),
        positive: field.is_positive(),
        besag: BesagReport {
            status: status.to_string(),
            minimal_sets: names_of(field, &besag.minimal_sets()),
        },
        si_complement: names_of(field, si.sets()),
        mi: names_of(field, mi.sets()),
        es: names_of(field, es.family.sets()),
        neighbor,
    })
}

/// Reports for the given sites, or for every site when `sites` is empty.
pub fn analyze(analyzer: &Analyzer<'_>, sites: &[usize]) -> Result<Vec<SiteReport>> {
    let all: Vec<usize> = (0..analyzer.field().n()).collect();
    let chosen = if sites.is_empty() { &all[..] } else { sites };
    chosen.iter().map(|&s| analyze_site(analyzer, s)).collect()
}

pub fn reports_to_json(reports: &[SiteReport]) -> serde_json::Value {
    serde_json::to_value(reports).expect("plain data")
}

pub(crate) fn fmt_set(set: &[String]) -> String {
    format!("{{{}}}", set.join(", "))
}

fn fmt_family(sets: &[Vec<String>]) -> String {
    let mut out: Vec<String> = sets.iter().take(TEXT_LIST_CAP).map(|s| fmt_set(s)).collect();
    if sets.len() > TEXT_LIST_CAP {
        out.push(format!("+{} more", sets.len() - TEXT_LIST_CAP));
    }
    out.join(" ")
}

pub fn reports_to_text(reports: &[SiteReport]) -> String {
    let mut out = String::new();
    if let Some(first) = reports.first() {
        let _ = writeln!(out, "positive: {}", first.positive);
    }
    for r in reports {
        let neighbor = match &r.neighbor {
            NeighborReport::Set(s) => fmt_set(s),
            NeighborReport::Word(w) => w.clone(),
        };
        let _ = writeln!(out, "site {}", r.site);
        let _ = writeln!(
            out,
            "  besag: {} {}",
            r.besag.status,
            fmt_family(&r.besag.minimal_sets)
        );
        let _ = writeln!(out, "  SI(i,i^c): {}", fmt_family(&r.si_complement));
        let _ = writeln!(out, "  MI: {}", fmt_family(&r.mi));
        let _ = writeln!(out, "  ES: {}", fmt_family(&r.es));
        let _ = writeln!(out, "  neighbor: {}", neighbor);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{builtin, FixtureId};

    #[test]
    fn table2_report() {
        let f = builtin(FixtureId::Table2).field;
        let a = Analyzer::new(&f).unwrap();
        let r = analyze(&a, &[]).unwrap();
        assert_eq!(r.len(), 2);
        assert!(!r[0].positive);
        assert_eq!(r[0].neighbor, NeighborReport::Set(vec!["Y".into()]));
        assert_eq!(r[1].neighbor, NeighborReport::Set(vec!["X".into()]));
        let json = reports_to_json(&r);
        assert_eq!(json[0]["neighbor"], serde_json::json!(["Y"]));
        assert_eq!(json[0]["besag"]["status"], "well-defined");
    }

    #[test]
    fn copy_report_words() {
        let f = builtin(FixtureId::Copy).field;
        let a = Analyzer::new(&f).unwrap();
        let r = analyze_site(&a, 2).unwrap();
        assert_eq!(r.neighbor, NeighborReport::Word("ambiguous".into()));
        assert_eq!(r.besag.status, "ambiguous");
        let f = builtin(FixtureId::Coins(2)).field;
        let a = Analyzer::new(&f).unwrap();
        let r = analyze_site(&a, 0).unwrap();
        assert_eq!(r.neighbor, NeighborReport::Set(Vec::new()));
        let text = reports_to_text(&[r]);
        assert!(text.contains("neighbor: {}"));
    }

    #[test]
    fn text_listing_is_capped() {
        let sets: Vec<Vec<String>> = (0..40).map(|k| vec![format!("S{k}")]).collect();
        let s = fmt_family(&sets);
        assert!(s.ends_with("+8 more"));
        assert_eq!(s.matches('{').count(), 32);
    }
}
