use num_traits::{One, Zero};

use crate::error::Result;
use crate::field::{JointField, PartialAssignment};
use crate::marginal::{marginal, MarginalTable};
use crate::rational::{ratio, Rational};
use crate::site_set::SiteSet;

/// `P(x_i | x_S)` on its exact domain `M_i x D_S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalTable {
    target: usize,
    given: MarginalTable,
    /// Indexed by scope cell; `None` outside the support.
    rows: Vec<Option<Vec<Rational>>>,
}

impl ConditionalTable {
    pub fn target(&self) -> usize {
        self.target
    }

    pub fn scope(&self) -> SiteSet {
        self.given.scope()
    }

    /// Marginal of the conditioning scope; its support is the domain's second factor.
    pub fn given(&self) -> &MarginalTable {
        &self.given
    }

    /// Distribution over the target's alphabet, or `None` if `x_S` has zero mass.
    pub fn row(&self, given: &PartialAssignment) -> Option<&[Rational]> {
        let cell = self.given.cell_of(given)?;
        self.rows[cell].as_deref()
    }

    pub fn value(&self, target_label: usize, given: &PartialAssignment) -> Option<&Rational> {
        self.row(given).and_then(|r| r.get(target_label))
    }

    /// Every domain point `(x_i, x_S)` with its value, `x_S` in canonical order.
    pub fn domain(&self) -> impl Iterator<Item = (usize, PartialAssignment, &Rational)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(cell, row)| {
            row.iter().flat_map(move |r| {
                let a = self.given.assignment(cell);
                r.iter()
                    .enumerate()
                    .map(move |(l, v)| (l, a.clone(), v))
            })
        })
    }

    pub fn domain_size(&self) -> usize {
        self.rows.iter().flatten().map(Vec::len).sum()
    }
}

/// Conditional distribution of `target` given the sites in `scope`.
///
/// When `target` is itself in `scope` the table is the agreement indicator.
pub fn conditional(field: &JointField, target: usize, scope: SiteSet) -> Result<ConditionalTable> {
    field.check_site(target)?;
    field.check_sites(scope)?;
    let given = marginal(field, scope)?;
    let joint = marginal(field, scope.with(target))?;
    let m = field.alphabet_size(target);
    let mut full = vec![0; field.n()];
    let rows = (0..given.len())
        .map(|cell| {
            if !given.in_support(cell) {
                return None;
            }
            given.decode_into(cell, &mut full);
            let own = full[target];
            Some(
                (0..m)
                    .map(|l| {
                        if scope.contains(target) {
                            if l == own {
                                Rational::one()
                            } else {
                                Rational::zero()
                            }
                        } else {
                            full[target] = l;
                            ratio(joint.weight(joint.cell_of_full(&full)), given.weight(cell))
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    Ok(ConditionalTable { target, given, rows })
}
