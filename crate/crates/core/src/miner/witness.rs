//! Concrete counterexamples and violations, re-checkable in isolation.

use serde_json::{json, Value};

use crate::conditional::conditional;
use crate::error::Result;
use crate::event::Event;
use crate::field::{JointField, PartialAssignment};
use crate::info::{coarse_conditional, is_uninformative, partition_constant_check, Analyzer, CoarseConstraint};
use crate::io::field_to_json;
use crate::miner::property::PropertyId;
use crate::rational::to_json_string;
use crate::site_set::SiteSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessDetail {
    /// Every cell uninformative for `a` given `b`, their union informative.
    UnUnion { a: Event, b: Event, cells: Vec<Event> },
    /// `c1` and `c2` uninformative, `c1 ∩ c2` informative.
    UnIntersection { a: Event, b: Event, c1: Event, c2: Event },
    /// Cells share a conditional value that differs from `P(a | b)`.
    PartitionConstant { a: Event, b: Event, cells: Vec<Event> },
    /// A chain `reduced ⊆ middle ⊆ scope` with `reduced ∈ SI(target, scope)`.
    SiChain {
        target: usize,
        reduced: SiteSet,
        middle: SiteSet,
        scope: SiteSet,
    },
    /// Coarse conditioning on `constraints` moves the conditional away from `P(target | given)`.
    Coarse {
        target: usize,
        given: PartialAssignment,
        constraints: CoarseConstraint,
    },
    /// `P(target | scope)` factors through `reduced` yet differs from `P(target | reduced)`.
    Dependence {
        target: usize,
        scope: SiteSet,
        reduced: SiteSet,
    },
    /// Reduction sets of the full conditional differ from `SI(target, target^c)`.
    ReductionFamily { target: usize },
    /// Positive field whose target lacks a unique neighbor set matching `ES`.
    Positivity { target: usize },
    /// `minimal ∈ MI(target)` has a proper subset outside `MI(target)`.
    MiDownward {
        target: usize,
        minimal: SiteSet,
        subset: SiteSet,
    },
    /// The partition by `partition_site` leaves `{target = label}` unchanged
    /// with no information but changes it given `{given_site = given_label}`.
    TwoAgents {
        target: usize,
        label: usize,
        partition_site: usize,
        given_site: usize,
        given_label: usize,
    },
}

fn event_json(field: &JointField, e: &Event) -> Value {
    json!(e.labels(field))
}

fn set_json(field: &JointField, s: SiteSet) -> Value {
    json!(s.iter().map(|k| field.site_name(k)).collect::<Vec<_>>())
}

fn assignment_json(field: &JointField, a: &PartialAssignment) -> Value {
    json!(a
        .pairs()
        .map(|(s, l)| vec![field.site_name(s), field.label(s, l)])
        .collect::<Vec<_>>())
}

impl WitnessDetail {
    pub fn to_json(&self, field: &JointField) -> Value {
        match self {
            WitnessDetail::UnUnion { a, b, cells } | WitnessDetail::PartitionConstant { a, b, cells } => json!({
                "A": event_json(field, a),
                "B": event_json(field, b),
                "cells": cells.iter().map(|c| event_json(field, c)).collect::<Vec<_>>(),
            }),
            WitnessDetail::UnIntersection { a, b, c1, c2 } => json!({
                "A": event_json(field, a),
                "B": event_json(field, b),
                "C1": event_json(field, c1),
                "C2": event_json(field, c2),
            }),
            WitnessDetail::SiChain {
                target,
                reduced,
                middle,
                scope,
            } => json!({
                "target": field.site_name(*target),
                "J": set_json(field, *reduced),
                "H": set_json(field, *middle),
                "I": set_json(field, *scope),
            }),
            WitnessDetail::Coarse {
                target,
                given,
                constraints,
            } => {
                let cons: Vec<Value> = constraints
                    .iter()
                    .map(|(s, ls)| {
                        json!([
                            field.site_name(s),
                            ls.iter().map(|&l| field.label(s, l)).collect::<Vec<_>>()
                        ])
                    })
                    .collect();
                let coarse = coarse_conditional(field, *target, given, constraints)
                    .ok()
                    .flatten()
                    .map(|d| d.iter().map(to_json_string).collect::<Vec<_>>());
                json!({
                    "target": field.site_name(*target),
                    "given": assignment_json(field, given),
                    "constraints": cons,
                    "coarse": coarse,
                })
            }
            WitnessDetail::Dependence { target, scope, reduced } => json!({
                "target": field.site_name(*target),
                "I": set_json(field, *scope),
                "J": set_json(field, *reduced),
            }),
            WitnessDetail::ReductionFamily { target } | WitnessDetail::Positivity { target } => json!({
                "target": field.site_name(*target),
            }),
            WitnessDetail::MiDownward {
                target,
                minimal,
                subset,
            } => json!({
                "target": field.site_name(*target),
                "minimal": set_json(field, *minimal),
                "non_minimal_subset": set_json(field, *subset),
            }),
            WitnessDetail::TwoAgents {
                target,
                label,
                partition_site,
                given_site,
                given_label,
            } => json!({
                "A": [field.site_name(*target), field.label(*target, *label)],
                "partition": field.site_name(*partition_site),
                "given": [field.site_name(*given_site), field.label(*given_site, *given_label)],
            }),
        }
    }

    /// Re-evaluates the claim this detail refutes, using only the library's
    /// direct operations. `true` means the detail still demonstrates a violation.
    pub fn revalidate(&self, field: &JointField, property: PropertyId) -> Result<bool> {
        let member = |a: &Event, b: &Event, c: &Event| -> Result<bool> { Ok(is_uninformative(field, a, b, c)?.is_member()) };
        Ok(match (property, self) {
            (PropertyId::UnUnionClosure, WitnessDetail::UnUnion { a, b, cells }) => {
                let disjoint = cells
                    .iter()
                    .enumerate()
                    .all(|(k, c)| cells[k + 1..].iter().all(|d| c.is_disjoint(d)));
                let mut all = true;
                for c in cells {
                    all &= member(a, b, c)?;
                }
                let union = cells.iter().fold(Event::empty(field), |acc, c| acc.union(c));
                disjoint && all && !member(a, b, &union)?
            }
            (PropertyId::UnIntersectionClosure, WitnessDetail::UnIntersection { a, b, c1, c2 }) => {
                member(a, b, c1)? && member(a, b, c2)? && !member(a, b, &c1.intersection(c2))?
            }
            (PropertyId::PartitionConstant, WitnessDetail::PartitionConstant { a, b, cells }) => {
                !partition_constant_check(field, a, b, cells)?.constant_matches_prior()
            }
            (
                PropertyId::SiMonotoneA | PropertyId::SiMonotoneB,
                WitnessDetail::SiChain {
                    target,
                    reduced,
                    middle,
                    scope,
                },
            ) => {
                let an = Analyzer::new(field)?;
                let chain = reduced.is_subset(*middle) && middle.is_subset(*scope);
                let premise = an.is_sufficient(*target, *reduced, *scope)?.sufficient;
                let conclusion = if property == PropertyId::SiMonotoneA {
                    an.is_sufficient(*target, *reduced, *middle)?.sufficient
                } else {
                    an.is_sufficient(*target, *middle, *scope)?.sufficient
                };
                chain && premise && !conclusion
            }
            (
                PropertyId::PropositionCoarse,
                WitnessDetail::Coarse {
                    target,
                    given,
                    constraints,
                },
            ) => {
                let an = Analyzer::new(field)?;
                let scope = given.scope.union(constraints.scope());
                let premise = an.is_sufficient(*target, given.scope, scope)?.sufficient;
                let direct = conditional(field, *target, given.scope)?;
                let coarse = coarse_conditional(field, *target, given, constraints)?;
                match (coarse, direct.row(given)) {
                    (Some(c), Some(d)) => premise && c.as_slice() != d,
                    _ => false,
                }
            }
            (PropertyId::CorollaryDependence, WitnessDetail::Dependence { target, scope, reduced }) => {
                let an = Analyzer::new(field)?;
                an.dependence_break(*target, *scope, *reduced).is_none()
                    && !an.is_sufficient(*target, *reduced, *scope)?.sufficient
            }
            (PropertyId::CorollaryDependence, WitnessDetail::ReductionFamily { target }) => {
                let an = Analyzer::new(field)?;
                let others = SiteSet::complement_of(*target, field.n());
                an.reduction_family(*target)?.reduction_family.sets() != an.si_family(*target, others)?.sets()
            }
            (PropertyId::PositivityWellDef, WitnessDetail::Positivity { target }) => {
                let an = Analyzer::new(field)?;
                let besag = an.reduction_family(*target)?;
                let es = an.es_family(*target)?;
                field.is_positive() && (!besag.is_well_defined() || es.family.sets() != besag.minimal_sets().as_slice())
            }
            (
                PropertyId::MiDownwardClosure,
                WitnessDetail::MiDownward {
                    target,
                    minimal,
                    subset,
                },
            ) => {
                let an = Analyzer::new(field)?;
                subset.is_proper_subset(*minimal)
                    && an.mi_membership(*target, *minimal)?.minimal
                    && !an.mi_membership(*target, *subset)?.minimal
            }
            (
                PropertyId::TwoAgents,
                WitnessDetail::TwoAgents {
                    target,
                    label,
                    partition_site,
                    given_site,
                    given_label,
                },
            ) => {
                let a = Event::site_equals(field, *target, *label);
                let cells = crate::info::site_partition(field, *partition_site);
                let first = partition_constant_check(field, &a, &Event::omega(field), &cells)?;
                let b2 = Event::site_equals(field, *given_site, *given_label);
                let second = partition_constant_check(field, &a, &b2, &cells)?;
                first.per_cell.iter().all(|v| v.is_member()) && second.per_cell.iter().any(|v| !v.is_member())
            }
            _ => false,
        })
    }
}

/// A detail together with the field it lives in and its stream position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub property: PropertyId,
    pub field_index: usize,
    pub field: JointField,
    pub detail: WitnessDetail,
}

impl Witness {
    pub fn revalidate(&self) -> Result<bool> {
        self.detail.revalidate(&self.field, self.property)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "property": self.property.name(),
            "field": field_to_json(&self.field),
            "detail": self.detail.to_json(&self.field),
        })
    }
}
