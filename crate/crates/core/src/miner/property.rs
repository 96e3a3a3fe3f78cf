use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::miner::enumerate::EnumerationBounds;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    /// A lemma: violations are defects.
    MustHold,
    /// A refuted conjecture: witnesses are the expected outcome.
    ExpectViolation,
}

impl Expectation {
    pub fn as_str(self) -> &'static str {
        match self {
            Expectation::MustHold => "MustHold",
            Expectation::ExpectViolation => "ExpectViolation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyId {
    UnUnionClosure,
    UnIntersectionClosure,
    PartitionConstant,
    SiMonotoneA,
    SiMonotoneB,
    PropositionCoarse,
    CorollaryDependence,
    PositivityWellDef,
    MiDownwardClosure,
    TwoAgents,
}

impl PropertyId {
    pub const ALL: [PropertyId; 10] = [
        PropertyId::UnUnionClosure,
        PropertyId::UnIntersectionClosure,
        PropertyId::PartitionConstant,
        PropertyId::SiMonotoneA,
        PropertyId::SiMonotoneB,
        PropertyId::PropositionCoarse,
        PropertyId::CorollaryDependence,
        PropertyId::PositivityWellDef,
        PropertyId::MiDownwardClosure,
        PropertyId::TwoAgents,
    ];

    pub const MUST_HOLD: [PropertyId; 7] = [
        PropertyId::UnUnionClosure,
        PropertyId::PartitionConstant,
        PropertyId::SiMonotoneA,
        PropertyId::SiMonotoneB,
        PropertyId::PropositionCoarse,
        PropertyId::CorollaryDependence,
        PropertyId::PositivityWellDef,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyId::UnUnionClosure => "UN_UNION_CLOSURE",
            PropertyId::UnIntersectionClosure => "UN_INTERSECTION_CLOSURE",
            PropertyId::PartitionConstant => "PARTITION_CONSTANT",
            PropertyId::SiMonotoneA => "SI_MONOTONE_A",
            PropertyId::SiMonotoneB => "SI_MONOTONE_B",
            PropertyId::PropositionCoarse => "PROPOSITION_COARSE",
            PropertyId::CorollaryDependence => "COROLLARY_DEPENDENCE",
            PropertyId::PositivityWellDef => "POSITIVITY_WELLDEF",
            PropertyId::MiDownwardClosure => "MI_DOWNWARD_CLOSURE",
            PropertyId::TwoAgents => "TWO_AGENTS",
        }
    }

    pub fn expectation(self) -> Expectation {
        match self {
            PropertyId::UnIntersectionClosure | PropertyId::MiDownwardClosure | PropertyId::TwoAgents => {
                Expectation::ExpectViolation
            }
            _ => Expectation::MustHold,
        }
    }

    /// Bounds used by `mine` when the caller gives none.
    pub fn default_bounds(self) -> EnumerationBounds {
        match self {
            PropertyId::UnIntersectionClosure => EnumerationBounds::exhaustive(2, 2, &[0, 1]),
            PropertyId::MiDownwardClosure | PropertyId::TwoAgents => EnumerationBounds::exhaustive(3, 2, &[0, 1]),
            _ => EnumerationBounds::exhaustive(3, 2, &[0, 1, 2]),
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let want = s.trim().to_ascii_uppercase().replace('-', "_");
        PropertyId::ALL
            .into_iter()
            .find(|p| p.name() == want)
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in PropertyId::ALL {
            assert_eq!(p.name().parse::<PropertyId>().unwrap(), p);
        }
        assert_eq!("two-agents".parse::<PropertyId>().unwrap(), PropertyId::TwoAgents);
        assert!("NOPE".parse::<PropertyId>().is_err());
    }

    #[test]
    fn expectations() {
        let refuted: Vec<_> = PropertyId::ALL
            .into_iter()
            .filter(|p| p.expectation() == Expectation::ExpectViolation)
            .collect();
        assert_eq!(
            refuted,
            vec![
                PropertyId::UnIntersectionClosure,
                PropertyId::MiDownwardClosure,
                PropertyId::TwoAgents
            ]
        );
        assert!(PropertyId::MUST_HOLD
            .iter()
            .all(|p| p.expectation() == Expectation::MustHold));
    }
}
