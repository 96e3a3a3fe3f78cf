//! Information-structure objects of a field: uninformative events,
//! sufficient/minimal/efficiently sufficient site sets and neighbor verdicts.

mod analyzer;
mod coarse;
mod un;

pub use analyzer::{
    Analyzer, BesagStatus, BesagVerdict, CorollaryReport, DependenceBreak, EsResult, FamilyKind, MiMembership,
    Mismatch, Neighbor, SiteSetFamily, Sufficiency,
};
pub use coarse::{coarse_conditional, CoarseConstraint};
pub use un::{is_uninformative, partition_constant_check, site_partition, PartitionCheck, UnStatus, UnVerdict};
