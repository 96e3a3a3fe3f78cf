//! Events as sets of full assignments.

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::JointField;
use crate::rational::{ratio, Rational};

/// A subset of the outcome space, one bit per full assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Event {
    bits: FixedBitSet,
}

impl Event {
    pub fn empty(field: &JointField) -> Self {
        Event {
            bits: FixedBitSet::with_capacity(field.outcome_count()),
        }
    }

    /// The sure event: every full assignment, including zero-mass ones.
    pub fn omega(field: &JointField) -> Self {
        let mut bits = FixedBitSet::with_capacity(field.outcome_count());
        bits.insert_range(..);
        Event { bits }
    }

    pub fn from_outcomes(field: &JointField, outcomes: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut e = Event::empty(field);
        for o in outcomes {
            if o >= field.outcome_count() {
                return Err(Error::MalformedEvent(format!(
                    "outcome index {o} outside a space of {}",
                    field.outcome_count()
                )));
            }
            e.bits.insert(o);
        }
        Ok(e)
    }

    /// Builds an event from full assignments written as labels.
    pub fn from_labels<S: AsRef<str>>(field: &JointField, members: &[Vec<S>]) -> Result<Self> {
        let mut e = Event::empty(field);
        for m in members {
            let idx = field
                .outcome_of_labels(m)
                .map_err(|err| Error::MalformedEvent(err.to_string()))?;
            e.bits.insert(idx);
        }
        Ok(e)
    }

    /// `{X_site = label}`.
    pub fn site_equals(field: &JointField, site: usize, label: usize) -> Self {
        Event::site_in(field, site, &[label])
    }

    /// `{X_site in labels}`.
    pub fn site_in(field: &JointField, site: usize, labels: &[usize]) -> Self {
        let mut e = Event::empty(field);
        let stride = field.strides()[site];
        let m = field.alphabet_size(site);
        for o in 0..field.outcome_count() {
            if labels.contains(&((o / stride) % m)) {
                e.bits.insert(o);
            }
        }
        e
    }

    /// Event selected by a predicate on full label vectors.
    pub fn filter(field: &JointField, mut pred: impl FnMut(&[usize]) -> bool) -> Self {
        let mut e = Event::empty(field);
        let mut full = vec![0; field.n()];
        for o in 0..field.outcome_count() {
            field.decode_into(o, &mut full);
            if pred(&full) {
                e.bits.insert(o);
            }
        }
        e
    }

    pub fn space_size(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, outcome: usize) -> bool {
        self.bits.contains(outcome)
    }

    pub fn insert(&mut self, outcome: usize) {
        self.bits.insert(outcome);
    }

    pub fn outcomes(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn intersection(&self, other: &Event) -> Event {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Event { bits }
    }

    pub fn union(&self, other: &Event) -> Event {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Event { bits }
    }

    pub fn difference(&self, other: &Event) -> Event {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Event { bits }
    }

    pub fn complement(&self) -> Event {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Event { bits }
    }

    pub fn is_disjoint(&self, other: &Event) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Member outcomes as label vectors.
    pub fn labels(&self, field: &JointField) -> Vec<Vec<String>> {
        self.outcomes()
            .map(|o| {
                field
                    .decode(o)
                    .iter()
                    .enumerate()
                    .map(|(s, &l)| field.label(s, l).to_string())
                    .collect()
            })
            .collect()
    }

    pub(crate) fn check(&self, field: &JointField) -> Result<()> {
        if self.bits.len() != field.outcome_count() {
            return Err(Error::MalformedEvent(format!(
                "event spans {} outcomes, field has {}",
                self.bits.len(),
                field.outcome_count()
            )));
        }
        Ok(())
    }
}

/// Unnormalized mass of an event, over the field's common total.
pub fn event_weight(field: &JointField, event: &Event) -> BigUint {
    event.outcomes().map(|o| field.weight(o)).sum()
}

pub fn probability(field: &JointField, event: &Event) -> Result<Rational> {
    event.check(field)?;
    Ok(ratio(&event_weight(field, event), field.total()))
}

/// `P(A | B)`, or `None` when `P(B) = 0`.
pub fn event_conditional(field: &JointField, a: &Event, b: &Event) -> Result<Option<Rational>> {
    a.check(field)?;
    b.check(field)?;
    let wb = event_weight(field, b);
    if wb.is_zero() {
        return Ok(None);
    }
    let wab = event_weight(field, &a.intersection(b));
    Ok(Some(ratio(&wab, &wb)))
}
