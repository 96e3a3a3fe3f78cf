//! Event-level uninformativeness: `C` is uninformative for `A` given `B` when
//! `P(B, C) = 0` or `P(A | B, C) = P(A | B)`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::event::{event_weight, Event};
use crate::field::JointField;
use crate::rational::{ratio, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnStatus {
    /// `P(B, C) = 0`.
    MemberZero,
    /// `P(A | B, C) = P(A | B)`.
    MemberEqual,
    Informative,
}

impl UnStatus {
    pub fn is_member(self) -> bool {
        !matches!(self, UnStatus::Informative)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            UnStatus::MemberZero => "member-zero",
            UnStatus::MemberEqual => "member-equal",
            UnStatus::Informative => "informative",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnVerdict {
    pub status: UnStatus,
    /// `P(A | B, C)`, undefined when `P(B, C) = 0`.
    pub left_value: Option<Rational>,
    /// `P(A | B)`.
    pub right_value: Option<Rational>,
}

impl UnVerdict {
    pub fn is_member(&self) -> bool {
        self.status.is_member()
    }
}

pub fn is_uninformative(field: &JointField, a: &Event, b: &Event, c: &Event) -> Result<UnVerdict> {
    a.check(field)?;
    b.check(field)?;
    c.check(field)?;
    let wb = event_weight(field, b);
    if wb.is_zero() {
        return Err(Error::ConditioningEventNull);
    }
    let ab = a.intersection(b);
    let right = ratio(&event_weight(field, &ab), &wb);
    let bc = b.intersection(c);
    let wbc = event_weight(field, &bc);
    if wbc.is_zero() {
        return Ok(UnVerdict {
            status: UnStatus::MemberZero,
            left_value: None,
            right_value: Some(right),
        });
    }
    let left = ratio(&event_weight(field, &ab.intersection(c)), &wbc);
    let status = if left == right {
        UnStatus::MemberEqual
    } else {
        UnStatus::Informative
    };
    Ok(UnVerdict {
        status,
        left_value: Some(left),
        right_value: Some(right),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCheck {
    /// All cells with `P(B, C_k) > 0` share one value of `P(A | B, C_k)`.
    pub holds: bool,
    /// The shared value when `holds`.
    pub c: Option<Rational>,
    /// `P(A | B)`.
    pub prior: Rational,
    pub per_cell: Vec<UnVerdict>,
}

impl PartitionCheck {
    /// The conclusion of the partition lemma for this instance.
    pub fn constant_matches_prior(&self) -> bool {
        !self.holds || self.c.as_ref() == Some(&self.prior)
    }
}

/// Checks that `cells` partition the outcome space, then compares the
/// per-cell conditionals of `A` given `B`.
pub fn partition_constant_check(
    field: &JointField,
    a: &Event,
    b: &Event,
    cells: &[Event],
) -> Result<PartitionCheck> {
    a.check(field)?;
    b.check(field)?;
    for c in cells {
        c.check(field)?;
    }
    let describe = |o: usize| {
        field
            .decode(o)
            .iter()
            .enumerate()
            .map(|(s, &l)| format!("{}={}", field.site_name(s), field.label(s, l)))
            .collect::<Vec<_>>()
            .join(", ")
    };
    for (k, ck) in cells.iter().enumerate() {
        for (l, cl) in cells.iter().enumerate().skip(k + 1) {
            if let Some(o) = ck.intersection(cl).outcomes().next() {
                return Err(Error::NotAPartition(format!(
                    "cells {k} and {l} overlap at ({})",
                    describe(o)
                )));
            }
        }
    }
    let covered = cells.iter().fold(Event::empty(field), |acc, c| acc.union(c));
    if let Some(o) = covered.complement().outcomes().next() {
        return Err(Error::NotAPartition(format!("({}) is in no cell", describe(o))));
    }
    let per_cell = cells
        .iter()
        .map(|c| is_uninformative(field, a, b, c))
        .collect::<Result<Vec<_>>>()?;
    let prior = event_conditional_prior(field, a, b)?;
    let mut values = per_cell.iter().filter_map(|v| v.left_value.as_ref());
    let first = values.next().cloned();
    let holds = values.all(|v| Some(v) == first.as_ref());
    Ok(PartitionCheck {
        holds,
        c: if holds { first } else { None },
        prior,
        per_cell,
    })
}

fn event_conditional_prior(field: &JointField, a: &Event, b: &Event) -> Result<Rational> {
    crate::event::event_conditional(field, a, b)?.ok_or(Error::ConditioningEventNull)
}

/// The partition of the outcome space induced by the value of one site.
pub fn site_partition(field: &JointField, site: usize) -> Vec<Event> {
    (0..field.alphabet_size(site))
        .map(|l| Event::site_equals(field, site, l))
        .collect()
}
