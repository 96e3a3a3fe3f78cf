//! Parsers for the `--given` and `--given-coarse` arguments.

use catfield::info::CoarseConstraint;
use catfield::{Error, JointField, PartialAssignment, Result};

/// Splits on commas that are not inside braces.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, ch) in text.char_indices() {
        match ch {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' | ';' if depth == 0 => {
                parts.push(&text[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts.into_iter().map(str::trim).filter(|p| !p.is_empty()).collect()
}

/// `"Y=1,Z=0"`; the empty string is the empty assignment.
pub fn parse_assignment(field: &JointField, text: &str) -> Result<PartialAssignment> {
    let mut pairs = Vec::new();
    for part in split_top_level(text) {
        let (name, label) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected NAME=LABEL, got `{part}`")))?;
        pairs.push((name.trim(), label.trim()));
    }
    let mut seen = Vec::new();
    for (name, _) in &pairs {
        if seen.contains(name) {
            return Err(Error::Parse(format!("site `{name}` assigned twice")));
        }
        seen.push(*name);
    }
    field.assignment_from_names(&pairs)
}

/// `"Y∈{0,1}"` or `"Y in {0,1}"`, several separated by commas.
pub fn parse_constraints(field: &JointField, text: &str) -> Result<CoarseConstraint> {
    let mut out = CoarseConstraint::new();
    let mut seen = Vec::new();
    for part in split_top_level(text) {
        let (name, set) = part
            .split_once('∈')
            .or_else(|| part.split_once(" in "))
            .ok_or_else(|| Error::Parse(format!("expected NAME∈{{L1,L2}}, got `{part}`")))?;
        let name = name.trim();
        let inner = set
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected a braced label set in `{part}`")))?;
        let site = field.site_index(name)?;
        if seen.contains(&site) {
            return Err(Error::Parse(format!("site `{name}` constrained twice")));
        }
        seen.push(site);
        let labels = inner
            .split(',')
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| field.label_index(site, l))
            .collect::<Result<Vec<_>>>()?;
        if labels.is_empty() {
            return Err(Error::EmptyConstraint(site));
        }
        out = out.with(site, labels);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use catfield::{builtin, FixtureId};

    #[test]
    fn assignments() {
        let f = builtin(FixtureId::Table1).field;
        let a = parse_assignment(&f, "Y=1, Z=0").unwrap();
        assert_eq!(a.display(&f).to_string(), "Y=1, Z=0");
        assert_eq!(parse_assignment(&f, "").unwrap(), PartialAssignment::empty());
        assert!(parse_assignment(&f, "Y").is_err());
        assert!(parse_assignment(&f, "Y=1,Y=0").is_err());
        assert!(parse_assignment(&f, "W=1").is_err());
        assert!(parse_assignment(&f, "Y=7").is_err());
    }

    #[test]
    fn constraints() {
        let f = builtin(FixtureId::Table1).field;
        let c = parse_constraints(&f, "Y∈{0,1}").unwrap();
        assert_eq!(c.iter().collect::<Vec<_>>(), vec![(1, &[0usize, 1][..])]);
        let d = parse_constraints(&f, "Y in {1}, Z in {0}").unwrap();
        assert_eq!(d.iter().count(), 2);
        assert!(parse_constraints(&f, "Y∈{}").is_err());
        assert!(parse_constraints(&f, "Y∈0").is_err());
        assert!(parse_constraints(&f, "Y=0").is_err());
    }
}
