use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{JointField, PartialAssignment};
use crate::rational::{ratio, Rational};
use crate::site_set::SiteSet;

/// Per-site label sets `X_h in N_h`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CoarseConstraint {
    allowed: BTreeMap<usize, Vec<usize>>,
}

impl CoarseConstraint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, site: usize, labels: impl IntoIterator<Item = usize>) -> Self {
        let mut ls: Vec<usize> = labels.into_iter().collect();
        ls.sort_unstable();
        ls.dedup();
        self.allowed.insert(site, ls);
        self
    }

    pub fn scope(&self) -> SiteSet {
        self.allowed.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[usize])> {
        self.allowed.iter().map(|(&s, l)| (s, l.as_slice()))
    }

    pub fn admits(&self, full: &[usize]) -> bool {
        self.allowed.iter().all(|(&s, ls)| ls.contains(&full[s]))
    }
}

/// `P(X_i = . | x_J, X_h in N_h for h in H)` over the target's alphabet, or
/// `None` when the conditioning event is null.
pub fn coarse_conditional(
    field: &JointField,
    target: usize,
    given: &PartialAssignment,
    constraints: &CoarseConstraint,
) -> Result<Option<Vec<Rational>>> {
    field.check_site(target)?;
    field.check_sites(given.scope)?;
    field.check_sites(constraints.scope())?;
    for (s, l) in given.pairs() {
        if l >= field.alphabet_size(s) {
            return Err(Error::UnknownLabel {
                site: field.site_name(s).to_string(),
                label: l.to_string(),
            });
        }
    }
    for (s, ls) in constraints.iter() {
        if ls.is_empty() {
            return Err(Error::EmptyConstraint(s));
        }
        if let Some(&l) = ls.iter().find(|&&l| l >= field.alphabet_size(s)) {
            return Err(Error::UnknownLabel {
                site: field.site_name(s).to_string(),
                label: l.to_string(),
            });
        }
    }
    if let Some(s) = given.scope.intersection(constraints.scope()).iter().next() {
        return Err(Error::OverlappingScopes(s));
    }
    let m = field.alphabet_size(target);
    let mut num = vec![BigUint::zero(); m];
    let mut den = BigUint::zero();
    let mut full = vec![0; field.n()];
    for o in field.support() {
        field.decode_into(o, &mut full);
        if given.matches(&full) && constraints.admits(&full) {
            num[full[target]] += field.weight(o);
            den += field.weight(o);
        }
    }
    if den.is_zero() {
        return Ok(None);
    }
    Ok(Some(num.iter().map(|w| ratio(w, &den)).collect()))
}
