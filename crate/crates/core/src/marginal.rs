//! Marginal tables and the all-subsets marginal lattice.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{JointField, PartialAssignment};
use crate::rational::{ratio, Rational};
use crate::site_set::SiteSet;

/// Exact marginal over a site set, dense over the product of the scope's alphabets.
///
/// Cells are ordered mixed-radix with the lowest scope site most significant,
/// matching the joint's own ordering. Probabilities are `weight / total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarginalTable {
    scope: SiteSet,
    sites: Vec<usize>,
    radices: Vec<usize>,
    strides: Vec<usize>,
    weights: Vec<BigUint>,
    total: BigUint,
}

impl MarginalTable {
    fn zeroed(field: &JointField, scope: SiteSet) -> Self {
        let sites = scope.members();
        let radices: Vec<usize> = sites.iter().map(|&s| field.alphabet_size(s)).collect();
        let mut strides = vec![1; sites.len()];
        for k in (0..sites.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * radices[k + 1];
        }
        let cells = radices.iter().product();
        MarginalTable {
            scope,
            sites,
            radices,
            strides,
            weights: vec![BigUint::zero(); cells],
            total: field.total().clone(),
        }
    }

    pub fn scope(&self) -> SiteSet {
        self.scope
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    pub fn weight(&self, cell: usize) -> &BigUint {
        &self.weights[cell]
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn prob(&self, cell: usize) -> Rational {
        ratio(&self.weights[cell], &self.total)
    }

    /// Cell addressed by the scope entries of a full label vector.
    pub fn cell_of_full(&self, full: &[usize]) -> usize {
        self.sites
            .iter()
            .zip(&self.strides)
            .map(|(&s, &st)| full[s] * st)
            .sum()
    }

    pub fn cell_of(&self, assignment: &PartialAssignment) -> Option<usize> {
        if assignment.scope != self.scope {
            return None;
        }
        Some(
            assignment
                .labels
                .iter()
                .zip(&self.strides)
                .map(|(l, st)| l * st)
                .sum(),
        )
    }

    /// Writes the cell's labels into the scope positions of `full`.
    pub fn decode_into(&self, cell: usize, full: &mut [usize]) {
        for ((&s, &st), &m) in self.sites.iter().zip(&self.strides).zip(&self.radices) {
            full[s] = (cell / st) % m;
        }
    }

    pub fn assignment(&self, cell: usize) -> PartialAssignment {
        PartialAssignment {
            scope: self.scope,
            labels: self
                .strides
                .iter()
                .zip(&self.radices)
                .map(|(&st, &m)| (cell / st) % m)
                .collect(),
        }
    }

    /// Cells with positive probability: the support `D_S`.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(c, _)| c)
    }

    pub fn in_support(&self, cell: usize) -> bool {
        !self.weights[cell].is_zero()
    }

    /// `(assignment, probability)` for every cell in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (PartialAssignment, Rational)> + '_ {
        (0..self.len()).map(|c| (self.assignment(c), self.prob(c)))
    }

    /// Sums out `site`, which must be in scope. Child cells keep the joint ordering.
    fn sum_out(&self, site: usize) -> MarginalTable {
        let pos = self.sites.iter().position(|&s| s == site).expect("site in scope");
        let stride = self.strides[pos];
        let block = stride * self.radices[pos];
        let mut sites = self.sites.clone();
        let mut radices = self.radices.clone();
        sites.remove(pos);
        radices.remove(pos);
        let mut strides = vec![1; sites.len()];
        for k in (0..sites.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * radices[k + 1];
        }
        let mut weights = vec![BigUint::zero(); self.weights.len() / self.radices[pos]];
        for (cell, w) in self.weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let child = (cell / block) * stride + cell % stride;
            weights[child] += w;
        }
        MarginalTable {
            scope: self.scope.without(site),
            sites,
            radices,
            strides,
            weights,
            total: self.total.clone(),
        }
    }
}

/// Marginal over `scope` by direct summation over the joint's support.
pub fn marginal(field: &JointField, scope: SiteSet) -> Result<MarginalTable> {
    field.check_sites(scope)?;
    let mut table = MarginalTable::zeroed(field, scope);
    let mut full = vec![0; field.n()];
    for outcome in field.support() {
        field.decode_into(outcome, &mut full);
        let cell = table.cell_of_full(&full);
        table.weights[cell] += field.weight(outcome);
    }
    Ok(table)
}

/// Size limits for computations over all `2^n` site subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeLimits {
    pub max_sites: usize,
    /// Cap on the summed size of all tables, `prod(m_i + 1)`.
    pub max_cells: u128,
}

impl Default for LatticeLimits {
    fn default() -> Self {
        LatticeLimits {
            max_sites: 14,
            max_cells: 1 << 24,
        }
    }
}

impl LatticeLimits {
    pub fn check_sites(&self, n: usize) -> Result<()> {
        if n > self.max_sites {
            return Err(Error::InstanceTooLarge {
                what: "site count",
                size: n as u128,
                limit: self.max_sites as u128,
            });
        }
        Ok(())
    }

    pub fn check(&self, field: &JointField) -> Result<()> {
        self.check_sites(field.n())?;
        let cells = field
            .alphabet_sizes()
            .iter()
            .fold(1u128, |acc, &m| acc.saturating_mul(m as u128 + 1));
        if cells > self.max_cells {
            return Err(Error::InstanceTooLarge {
                what: "lattice cell count",
                size: cells,
                limit: self.max_cells,
            });
        }
        Ok(())
    }
}

/// Marginal tables for every subset of sites, indexed by bitmask.
#[derive(Debug, Clone)]
pub struct Lattice {
    tables: Vec<MarginalTable>,
}

impl Lattice {
    /// One top-down sweep: each subset's table is obtained from the table of
    /// the subset plus its lowest missing site, by summing that site out.
    pub fn new(field: &JointField, limits: LatticeLimits) -> Result<Self> {
        limits.check(field)?;
        let n = field.n();
        let full = SiteSet::full(n);
        let count = 1usize << n;
        let mut tables: Vec<Option<MarginalTable>> = vec![None; count];
        let mut joint = MarginalTable::zeroed(field, full);
        joint.weights = field.weights().to_vec();
        tables[count - 1] = Some(joint);
        for mask in (0..count - 1).rev() {
            let set = SiteSet::from_bits(mask as u64);
            let missing = (!mask).trailing_zeros() as usize;
            let parent = tables[set.with(missing).bits() as usize]
                .as_ref()
                .expect("parent computed first");
            tables[mask] = Some(parent.sum_out(missing));
        }
        Ok(Lattice {
            tables: tables.into_iter().map(|t| t.expect("filled")).collect(),
        })
    }

    pub fn get(&self, scope: SiteSet) -> &MarginalTable {
        &self.tables[scope.bits() as usize]
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &MarginalTable> {
        self.tables.iter()
    }
}

/// All `2^n` marginals under the default limits.
pub fn marginal_lattice(field: &JointField) -> Result<Lattice> {
    Lattice::new(field, LatticeLimits::default())
}
