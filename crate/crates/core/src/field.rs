//! Joint distribution tables over finitely many categorical sites.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{integer_weights, ratio, Rational};
use crate::site_set::{SiteSet, MAX_SITES};

/// Largest outcome space (product of alphabet sizes) a field may span.
pub const MAX_OUTCOMES: u128 = 1 << 22;

/// Declared site: a name and its ordered alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteSpec {
    pub name: String,
    pub alphabet: Vec<String>,
}

/// One weighted full assignment, labels listed in site order.
#[derive(Debug, Clone, PartialEq)]
pub struct RowSpec {
    pub assignment: Vec<String>,
    pub weight: Rational,
}

/// Raw, unnormalized description of a field.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FieldSpec {
    pub sites: Vec<SiteSpec>,
    pub rows: Vec<RowSpec>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Drop labels whose marginal is zero instead of rejecting the spec.
    pub prune_unreachable: bool,
}

/// A finite categorical random field with exact masses.
///
/// Outcomes are full assignments of label indices, ordered mixed-radix with
/// site 0 most significant and labels in alphabet order. Masses are kept as
/// coprime integer weights over a common total, so `mass(x) = weight(x) / total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointField {
    names: Vec<String>,
    alphabets: Vec<Vec<String>>,
    strides: Vec<usize>,
    weights: Vec<BigUint>,
    total: BigUint,
}

/// Values on a subset of sites. `labels` follows the ascending order of `scope`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialAssignment {
    pub scope: SiteSet,
    pub labels: Vec<usize>,
}

impl PartialAssignment {
    pub fn empty() -> Self {
        PartialAssignment {
            scope: SiteSet::EMPTY,
            labels: Vec::new(),
        }
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        let mut sorted = pairs.to_vec();
        sorted.sort();
        sorted.dedup_by_key(|p| p.0);
        PartialAssignment {
            scope: sorted.iter().map(|p| p.0).collect(),
            labels: sorted.iter().map(|p| p.1).collect(),
        }
    }

    /// Restriction of a full label vector to `scope`.
    pub fn restrict(full: &[usize], scope: SiteSet) -> Self {
        PartialAssignment {
            scope,
            labels: scope.iter().map(|s| full[s]).collect(),
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.scope.iter().zip(self.labels.iter().copied())
    }

    pub fn get(&self, site: usize) -> Option<usize> {
        self.pairs().find(|&(s, _)| s == site).map(|(_, l)| l)
    }

    /// Whether a full outcome agrees with this assignment on its scope.
    pub fn matches(&self, full: &[usize]) -> bool {
        self.pairs().all(|(s, l)| full[s] == l)
    }

    pub fn display<'a>(&'a self, field: &'a JointField) -> impl fmt::Display + 'a {
        DisplayAssignment { a: self, field }
    }
}

struct DisplayAssignment<'a> {
    a: &'a PartialAssignment,
    field: &'a JointField,
}

impl fmt::Display for DisplayAssignment<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (s, l)) in self.a.pairs().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}={}", self.field.site_name(s), self.field.label(s, l))?;
        }
        Ok(())
    }
}

impl JointField {
    /// Builds a field from a spec, normalizing weights to total mass one.
    pub fn build(spec: &FieldSpec, options: BuildOptions) -> Result<Self> {
        if spec.sites.is_empty() {
            return Err(Error::EmptySpec);
        }
        if spec.sites.len() > MAX_SITES {
            return Err(Error::InstanceTooLarge {
                what: "site count",
                size: spec.sites.len() as u128,
                limit: MAX_SITES as u128,
            });
        }
        let mut seen = HashSet::new();
        for site in &spec.sites {
            if !seen.insert(site.name.as_str()) {
                return Err(Error::DuplicateSite(site.name.clone()));
            }
            if site.alphabet.is_empty() {
                return Err(Error::EmptyAlphabet(site.name.clone()));
            }
            let mut labels = HashSet::new();
            for label in &site.alphabet {
                if !labels.insert(label.as_str()) {
                    return Err(Error::DuplicateLabel {
                        site: site.name.clone(),
                        label: label.clone(),
                    });
                }
            }
        }
        let sizes: Vec<usize> = spec.sites.iter().map(|s| s.alphabet.len()).collect();
        let strides = strides_for(&sizes)?;
        let outcomes = sizes.iter().product::<usize>();

        let mut cells: Vec<Option<usize>> = Vec::with_capacity(spec.rows.len());
        let mut used = HashSet::new();
        for row in &spec.rows {
            if row.assignment.len() != spec.sites.len() {
                return Err(Error::ArityMismatch {
                    expected: spec.sites.len(),
                    got: row.assignment.len(),
                });
            }
            let mut idx = 0;
            for (k, (site, label)) in spec.sites.iter().zip(&row.assignment).enumerate() {
                let l = site
                    .alphabet
                    .iter()
                    .position(|a| a == label)
                    .ok_or_else(|| Error::UnknownLabel {
                        site: site.name.clone(),
                        label: label.clone(),
                    })?;
                idx += l * strides[k];
            }
            if !used.insert(idx) {
                return Err(Error::DuplicateAssignment(row.assignment.join(", ")));
            }
            cells.push(Some(idx));
        }

        let raw: Vec<Rational> = spec.rows.iter().map(|r| r.weight.clone()).collect();
        let ints = integer_weights(&raw)
            .ok_or_else(|| Error::InvalidWeight("negative weight".to_string()))?;
        let mut weights = vec![BigUint::zero(); outcomes];
        for (cell, w) in cells.into_iter().zip(ints) {
            weights[cell.expect("indexed")] = w;
        }
        let total: BigUint = weights.iter().sum();
        if total.is_zero() {
            return Err(Error::ZeroTotalWeight);
        }

        let field = JointField {
            names: spec.sites.iter().map(|s| s.name.clone()).collect(),
            alphabets: spec.sites.iter().map(|s| s.alphabet.clone()).collect(),
            strides,
            weights,
            total,
        };
        let dead = field.zero_marginal_labels();
        if dead.is_empty() {
            return Ok(field);
        }
        if !options.prune_unreachable {
            let (s, l) = dead[0];
            return Err(Error::ZeroMarginalLabel {
                site: field.names[s].clone(),
                label: field.alphabets[s][l].clone(),
            });
        }
        Ok(field.pruned(&dead))
    }

    /// Builds directly from label-index weights over the full outcome grid.
    /// Labels are named `0..m` and sites `X1..Xn`.
    pub fn from_grid(sizes: &[usize], weights: &[BigUint]) -> Result<Self> {
        let spec = FieldSpec {
            sites: sizes
                .iter()
                .enumerate()
                .map(|(k, &m)| SiteSpec {
                    name: format!("X{}", k + 1),
                    alphabet: (0..m).map(|l| l.to_string()).collect(),
                })
                .collect(),
            rows: Vec::new(),
        };
        if spec.sites.is_empty() {
            return Err(Error::EmptySpec);
        }
        let strides = strides_for(sizes)?;
        let outcomes: usize = sizes.iter().product();
        if weights.len() != outcomes {
            return Err(Error::ArityMismatch {
                expected: outcomes,
                got: weights.len(),
            });
        }
        let rats: Vec<Rational> = weights
            .iter()
            .map(|w| Rational::from_integer(w.clone().into()))
            .collect();
        let weights = integer_weights(&rats).expect("nonnegative");
        let total: BigUint = weights.iter().sum();
        if total.is_zero() {
            return Err(Error::ZeroTotalWeight);
        }
        let field = JointField {
            names: spec.sites.iter().map(|s| s.name.clone()).collect(),
            alphabets: spec.sites.into_iter().map(|s| s.alphabet).collect(),
            strides,
            weights,
            total,
        };
        if let Some(&(s, l)) = field.zero_marginal_labels().first() {
            return Err(Error::ZeroMarginalLabel {
                site: field.names[s].clone(),
                label: field.alphabets[s][l].clone(),
            });
        }
        Ok(field)
    }

    /// Renames sites and labels without touching masses.
    pub fn relabeled(mut self, names: &[&str], alphabets: &[&[&str]]) -> Self {
        assert_eq!(names.len(), self.n());
        assert_eq!(alphabets.len(), self.n());
        for (k, a) in alphabets.iter().enumerate() {
            assert_eq!(a.len(), self.alphabets[k].len());
            self.alphabets[k] = a.iter().map(|s| s.to_string()).collect();
        }
        self.names = names.iter().map(|s| s.to_string()).collect();
        self
    }

    fn zero_marginal_labels(&self) -> Vec<(usize, usize)> {
        let mut hit: Vec<Vec<bool>> = self.alphabets.iter().map(|a| vec![false; a.len()]).collect();
        let mut full = vec![0; self.n()];
        for (idx, w) in self.weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            self.decode_into(idx, &mut full);
            for (s, &l) in full.iter().enumerate() {
                hit[s][l] = true;
            }
        }
        let mut dead = Vec::new();
        for (s, labels) in hit.iter().enumerate() {
            for (l, &h) in labels.iter().enumerate() {
                if !h {
                    dead.push((s, l));
                }
            }
        }
        dead
    }

    fn pruned(&self, dead: &[(usize, usize)]) -> Self {
        let keep: Vec<Vec<usize>> = self
            .alphabets
            .iter()
            .enumerate()
            .map(|(s, a)| (0..a.len()).filter(|l| !dead.contains(&(s, *l))).collect())
            .collect();
        let alphabets: Vec<Vec<String>> = keep
            .iter()
            .enumerate()
            .map(|(s, ls)| ls.iter().map(|&l| self.alphabets[s][l].clone()).collect())
            .collect();
        let sizes: Vec<usize> = alphabets.iter().map(Vec::len).collect();
        let strides = strides_for(&sizes).expect("smaller than original");
        let mut weights = vec![BigUint::zero(); sizes.iter().product()];
        let mut full = vec![0; self.n()];
        for (idx, w) in self.weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            self.decode_into(idx, &mut full);
            let new_idx: usize = full
                .iter()
                .enumerate()
                .map(|(s, &l)| keep[s].iter().position(|&k| k == l).expect("live label") * strides[s])
                .sum();
            weights[new_idx] = w.clone();
        }
        JointField {
            names: self.names.clone(),
            alphabets,
            strides,
            weights,
            total: self.total.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn all_sites(&self) -> SiteSet {
        SiteSet::full(self.n())
    }

    pub fn site_names(&self) -> &[String] {
        &self.names
    }

    pub fn site_name(&self, site: usize) -> &str {
        &self.names[site]
    }

    pub fn site_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownSite(name.to_string()))
    }

    pub fn alphabet(&self, site: usize) -> &[String] {
        &self.alphabets[site]
    }

    pub fn alphabet_size(&self, site: usize) -> usize {
        self.alphabets[site].len()
    }

    pub fn alphabet_sizes(&self) -> Vec<usize> {
        self.alphabets.iter().map(Vec::len).collect()
    }

    pub fn label(&self, site: usize, label: usize) -> &str {
        &self.alphabets[site][label]
    }

    pub fn label_index(&self, site: usize, label: &str) -> Result<usize> {
        self.alphabets[site]
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel {
                site: self.names[site].clone(),
                label: label.to_string(),
            })
    }

    pub fn check_site(&self, site: usize) -> Result<()> {
        if site < self.n() {
            Ok(())
        } else {
            Err(Error::SiteOutOfRange { site, n: self.n() })
        }
    }

    pub fn check_sites(&self, set: SiteSet) -> Result<()> {
        match set.iter().find(|&s| s >= self.n()) {
            Some(site) => Err(Error::SiteOutOfRange { site, n: self.n() }),
            None => Ok(()),
        }
    }

    /// Number of full assignments, i.e. the product of alphabet sizes.
    pub fn outcome_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    pub fn weight(&self, outcome: usize) -> &BigUint {
        &self.weights[outcome]
    }

    /// Common denominator of all masses.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn mass(&self, outcome: usize) -> Rational {
        ratio(&self.weights[outcome], &self.total)
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn encode(&self, full: &[usize]) -> usize {
        full.iter().zip(&self.strides).map(|(l, s)| l * s).sum()
    }

    pub fn decode(&self, outcome: usize) -> Vec<usize> {
        let mut full = vec![0; self.n()];
        self.decode_into(outcome, &mut full);
        full
    }

    pub fn decode_into(&self, outcome: usize, full: &mut [usize]) {
        for (k, &stride) in self.strides.iter().enumerate() {
            full[k] = (outcome / stride) % self.alphabets[k].len();
        }
    }

    /// Outcome index of a full assignment given by labels.
    pub fn outcome_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        if labels.len() != self.n() {
            return Err(Error::ArityMismatch {
                expected: self.n(),
                got: labels.len(),
            });
        }
        let mut idx = 0;
        for (s, l) in labels.iter().enumerate() {
            idx += self.label_index(s, l.as_ref())? * self.strides[s];
        }
        Ok(idx)
    }

    /// Outcomes with positive mass, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(i, _)| i)
    }

    /// Strict positivity: every full assignment has positive mass.
    pub fn is_positive(&self) -> bool {
        self.weights.iter().all(|w| !w.is_zero())
    }

    /// Builds a partial assignment from `(site name, label)` pairs.
    pub fn assignment_from_names<S: AsRef<str>>(&self, pairs: &[(S, S)]) -> Result<PartialAssignment> {
        let mut out = Vec::with_capacity(pairs.len());
        for (name, label) in pairs {
            let s = self.site_index(name.as_ref())?;
            out.push((s, self.label_index(s, label.as_ref())?));
        }
        Ok(PartialAssignment::from_pairs(&out))
    }

    /// Back to a spec whose rows are the positive-mass outcomes, weighted by mass.
    pub fn to_spec(&self) -> FieldSpec {
        FieldSpec {
            sites: self
                .names
                .iter()
                .zip(&self.alphabets)
                .map(|(name, alphabet)| SiteSpec {
                    name: name.clone(),
                    alphabet: alphabet.clone(),
                })
                .collect(),
            rows: self
                .support()
                .map(|idx| RowSpec {
                    assignment: self
                        .decode(idx)
                        .iter()
                        .enumerate()
                        .map(|(s, &l)| self.alphabets[s][l].clone())
                        .collect(),
                    weight: self.mass(idx),
                })
                .collect(),
        }
    }
}

/// Mixed-radix strides with site 0 most significant.
pub(crate) fn strides_for(sizes: &[usize]) -> Result<Vec<usize>> {
    let mut product: u128 = 1;
    for &m in sizes {
        product = product.saturating_mul(m as u128);
    }
    if product > MAX_OUTCOMES {
        return Err(Error::InstanceTooLarge {
            what: "outcome space",
            size: product,
            limit: MAX_OUTCOMES,
        });
    }
    let mut strides = vec![1; sizes.len()];
    for k in (0..sizes.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * sizes[k + 1];
    }
    Ok(strides)
}
