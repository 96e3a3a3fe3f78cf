//! Sufficient, minimal and efficiently sufficient information sets, Besag
//! reduction sets and the functional-dependence check, all evaluated exactly
//! against a precomputed marginal lattice.
//!
//! Conditionals are never divided out. Two conditionals `a/b` and `c/d` are
//! compared as `a * d == c * b` over the lattice's integer weights.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{JointField, PartialAssignment};
use crate::marginal::{Lattice, LatticeLimits};
use crate::rational::{ratio, Rational};
use crate::site_set::SiteSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Sufficient,
    Minimal,
    EfficientlySufficient,
    Reduction,
}

/// A collection of site sets, kept in canonical order without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SiteSetFamily {
    pub kind: FamilyKind,
    sets: Vec<SiteSet>,
}

impl SiteSetFamily {
    pub fn new(kind: FamilyKind, mut sets: Vec<SiteSet>) -> Self {
        sets.sort();
        sets.dedup();
        SiteSetFamily { kind, sets }
    }

    pub fn sets(&self) -> &[SiteSet] {
        &self.sets
    }

    pub fn contains(&self, set: SiteSet) -> bool {
        self.sets.binary_search(&set).is_ok()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Members with no proper subset in the family.
    pub fn minimal_elements(&self) -> Vec<SiteSet> {
        self.sets
            .iter()
            .copied()
            .filter(|s| !self.sets.iter().any(|t| t.is_proper_subset(*s)))
            .collect()
    }
}

/// A point `(x_i, x_I)` of `E_{i;I}` where `P(x_i | x_I) != P(x_i | x_J)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub target: usize,
    pub target_label: usize,
    pub point: PartialAssignment,
    pub full_value: Rational,
    pub reduced_value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sufficiency {
    pub sufficient: bool,
    pub witness: Option<Mismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiMembership {
    pub minimal: bool,
    /// Smallest (then lexicographically first) proper subset reproducing `P(i | I)`.
    pub reducing_subset: Option<SiteSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Neighbor {
    /// `ES(i)` has exactly one nonempty element.
    Unique(SiteSet),
    /// `ES(i) = {{}}`: the site is isolated.
    Empty,
    Ambiguous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EsResult {
    pub family: SiteSetFamily,
    pub neighbor: Neighbor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BesagVerdict {
    WellDefined(SiteSet),
    Ambiguous(Vec<SiteSet>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BesagStatus {
    pub verdict: BesagVerdict,
    pub reduction_family: SiteSetFamily,
}

impl BesagStatus {
    pub fn minimal_sets(&self) -> Vec<SiteSet> {
        match &self.verdict {
            BesagVerdict::WellDefined(s) => vec![*s],
            BesagVerdict::Ambiguous(v) => v.clone(),
        }
    }

    pub fn is_well_defined(&self) -> bool {
        matches!(self.verdict, BesagVerdict::WellDefined(_))
    }
}

/// Two domain points agreeing on `J` whose conditionals differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependenceBreak {
    pub first: PartialAssignment,
    pub second: PartialAssignment,
    pub target_label: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryReport {
    pub target: usize,
    pub scope: SiteSet,
    /// Subsets `J` of the scope through which `P(x_i | x_I)` factors.
    pub dependence_sets: Vec<SiteSet>,
    /// Dependence sets whose reduced conditional nonetheless differs somewhere.
    pub violations: Vec<(SiteSet, Mismatch)>,
}

impl CorollaryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lattice-backed view of one field.
#[derive(Debug, Clone)]
pub struct Analyzer<'f> {
    field: &'f JointField,
    lattice: Lattice,
    zero: BigUint,
}

impl<'f> Analyzer<'f> {
    pub fn new(field: &'f JointField) -> Result<Self> {
        Self::with_limits(field, LatticeLimits::default())
    }

    pub fn with_limits(field: &'f JointField, limits: LatticeLimits) -> Result<Self> {
        Ok(Analyzer {
            field,
            lattice: Lattice::new(field, limits)?,
            zero: BigUint::zero(),
        })
    }

    pub fn field(&self) -> &'f JointField {
        self.field
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Numerator and denominator of `P(x_i = label | x_S)` with `x_S` read from `full`.
    /// `full[target]` may be scratch when `target` is not in `scope`.
    fn parts(&self, target: usize, label: usize, scope: SiteSet, full: &mut [usize]) -> (&BigUint, &BigUint) {
        let given = self.lattice.get(scope);
        let den = given.weight(given.cell_of_full(full));
        if scope.contains(target) {
            let num = if full[target] == label { den } else { &self.zero };
            return (num, den);
        }
        let joint = self.lattice.get(scope.with(target));
        let saved = full[target];
        full[target] = label;
        let num = joint.weight(joint.cell_of_full(full));
        full[target] = saved;
        (num, den)
    }

    /// Exact `P(x_i = label | x_S)` for an `x_S` on the support, `None` otherwise.
    pub fn conditional_value(&self, target: usize, label: usize, given: &PartialAssignment) -> Option<Rational> {
        let mut full = vec![0; self.field.n()];
        for (s, l) in given.pairs() {
            full[s] = l;
        }
        let (num, den) = self.parts(target, label, given.scope, &mut full);
        if den.is_zero() {
            None
        } else {
            Some(ratio(num, den))
        }
    }

    fn check_target(&self, target: usize, sets: &[SiteSet]) -> Result<()> {
        self.field.check_site(target)?;
        for s in sets {
            self.field.check_sites(*s)?;
        }
        Ok(())
    }

    /// First point of `E_{i;I}`, target label major, where `P(i|I)` and `P(i|J)` differ.
    fn first_mismatch(&self, target: usize, reduced: SiteSet, scope: SiteSet) -> Option<Mismatch> {
        let table = self.lattice.get(scope);
        let mut full = vec![0; self.field.n()];
        for label in 0..self.field.alphabet_size(target) {
            for cell in table.support() {
                table.decode_into(cell, &mut full);
                let (a, b) = self.parts(target, label, scope, &mut full);
                let (c, d) = self.parts(target, label, reduced, &mut full);
                if a * d != c * b {
                    return Some(Mismatch {
                        target,
                        target_label: label,
                        point: table.assignment(cell),
                        full_value: ratio(a, b),
                        reduced_value: ratio(c, d),
                    });
                }
            }
        }
        None
    }

    /// Whether `P(i | I) = P(i | J)` on all of `E_{i;I}`.
    pub fn is_sufficient(&self, target: usize, reduced: SiteSet, scope: SiteSet) -> Result<Sufficiency> {
        self.check_target(target, &[reduced, scope])?;
        if !reduced.is_subset(scope) {
            return Err(Error::NotASubset {
                sub: self.set_names(reduced),
                sup: self.set_names(scope),
            });
        }
        let witness = self.first_mismatch(target, reduced, scope);
        Ok(Sufficiency {
            sufficient: witness.is_none(),
            witness,
        })
    }

    /// `SI(i, I)`: every `J` inside `I` that is sufficient for `i` given `I`.
    pub fn si_family(&self, target: usize, scope: SiteSet) -> Result<SiteSetFamily> {
        self.check_target(target, &[scope])?;
        let sets = scope
            .subsets()
            .filter(|&j| self.first_mismatch(target, j, scope).is_none())
            .collect();
        Ok(SiteSetFamily::new(FamilyKind::Sufficient, sets))
    }

    /// Minimality of `I` for `i`; `I` may not contain `i`.
    pub fn mi_membership(&self, target: usize, scope: SiteSet) -> Result<MiMembership> {
        self.mi_membership_with(target, scope, false)
    }

    pub fn mi_membership_with(&self, target: usize, scope: SiteSet, allow_target: bool) -> Result<MiMembership> {
        self.check_target(target, &[scope])?;
        if scope.contains(target) && !allow_target {
            return Err(Error::TargetInScope(target));
        }
        let reducing = scope
            .subsets_canonical()
            .into_iter()
            .filter(|&j| j != scope)
            .find(|&j| self.first_mismatch(target, j, scope).is_none());
        Ok(MiMembership {
            minimal: reducing.is_none(),
            reducing_subset: reducing,
        })
    }

    /// `MI(i)` restricted to subsets of the other sites.
    pub fn mi_family(&self, target: usize) -> Result<SiteSetFamily> {
        self.field.check_site(target)?;
        let others = SiteSet::complement_of(target, self.field.n());
        let mut sets = Vec::new();
        for s in others.subsets() {
            if self.mi_membership(target, s)?.minimal {
                sets.push(s);
            }
        }
        Ok(SiteSetFamily::new(FamilyKind::Minimal, sets))
    }

    /// `ES(i) = MI(i) ∩ SI(i, i^c)` by the definitions, with the neighbor verdict.
    pub fn es_family(&self, target: usize) -> Result<EsResult> {
        self.field.check_site(target)?;
        let others = SiteSet::complement_of(target, self.field.n());
        let mut sets = Vec::new();
        for s in self.si_family(target, others)?.sets() {
            if self.mi_membership(target, *s)?.minimal {
                sets.push(*s);
            }
        }
        let family = SiteSetFamily::new(FamilyKind::EfficientlySufficient, sets);
        // SI(i, i^c) always holds i^c, and its minimal elements are minimal
        // information sets, so the family is never empty.
        let neighbor = match family.sets() {
            [only] if only.is_empty() => Neighbor::Empty,
            [only] => Neighbor::Unique(*only),
            [] => Neighbor::Empty,
            _ => Neighbor::Ambiguous,
        };
        Ok(EsResult { family, neighbor })
    }

    /// A pair of support points of `scope` agreeing on `reduced` with different
    /// conditional distributions for `target`, if one exists.
    pub fn dependence_break(&self, target: usize, scope: SiteSet, reduced: SiteSet) -> Option<DependenceBreak> {
        let table = self.lattice.get(scope);
        let key_table = self.lattice.get(reduced);
        let m = self.field.alphabet_size(target);
        let mut reps: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut u = vec![0; self.field.n()];
        let mut v = vec![0; self.field.n()];
        for cell in table.support() {
            table.decode_into(cell, &mut u);
            let key = key_table.cell_of_full(&u);
            let Some(rep) = reps.get(&key) else {
                reps.insert(key, u.clone());
                continue;
            };
            v.copy_from_slice(rep);
            for label in 0..m {
                let (a, b) = self.parts(target, label, scope, &mut u);
                let (c, d) = self.parts(target, label, scope, &mut v);
                if a * d != c * b {
                    return Some(DependenceBreak {
                        first: PartialAssignment::restrict(&v, scope),
                        second: PartialAssignment::restrict(&u, scope),
                        target_label: label,
                    });
                }
            }
        }
        None
    }

    /// Reduction sets of the full conditional of `target`, and whether the
    /// inclusion-minimal one is unique.
    pub fn reduction_family(&self, target: usize) -> Result<BesagStatus> {
        self.field.check_site(target)?;
        let others = SiteSet::complement_of(target, self.field.n());
        let sets = others
            .subsets()
            .filter(|&j| self.dependence_break(target, others, j).is_none())
            .collect();
        let reduction_family = SiteSetFamily::new(FamilyKind::Reduction, sets);
        let minimal = reduction_family.minimal_elements();
        let verdict = if minimal.len() == 1 {
            BesagVerdict::WellDefined(minimal[0])
        } else {
            BesagVerdict::Ambiguous(minimal)
        };
        Ok(BesagStatus {
            verdict,
            reduction_family,
        })
    }

    /// For every `J` inside `I` through which `P(x_i | x_I)` factors, checks that
    /// `P(x_i | x_I) = P(x_i | x_J)` on `E_{i;I}`.
    pub fn dependence_corollary_check(&self, target: usize, scope: SiteSet) -> Result<CorollaryReport> {
        self.check_target(target, &[scope])?;
        let mut dependence_sets = Vec::new();
        let mut violations = Vec::new();
        for j in scope.subsets_canonical() {
            if self.dependence_break(target, scope, j).is_some() {
                continue;
            }
            dependence_sets.push(j);
            if let Some(m) = self.first_mismatch(target, j, scope) {
                violations.push((j, m));
            }
        }
        Ok(CorollaryReport {
            target,
            scope,
            dependence_sets,
            violations,
        })
    }

    fn set_names(&self, s: SiteSet) -> String {
        let names: Vec<&str> = s.iter().map(|k| self.field.site_name(k)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{builtin, FixtureId};

    fn set(xs: &[usize]) -> SiteSet {
        xs.iter().copied().collect()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn table1_sufficiency_witness() {
        let f = builtin(FixtureId::Table1).field;
        let a = Analyzer::new(&f).unwrap();
        let r = a.is_sufficient(0, set(&[1]), set(&[1, 2])).unwrap();
        assert!(!r.sufficient);
        let w = r.witness.unwrap();
        assert_eq!(f.label(0, w.target_label), "1");
        assert_eq!(w.point.display(&f).to_string(), "Y=1, Z=1");
        assert_eq!(w.full_value, q(1, 1));
        assert_eq!(w.reduced_value, q(1, 2));
    }

    #[test]
    fn sufficiency_identity_and_subset_error() {
        let f = builtin(FixtureId::Chain).field;
        let a = Analyzer::new(&f).unwrap();
        for s in f.all_sites().subsets() {
            assert!(a.is_sufficient(1, s, s).unwrap().sufficient);
        }
        assert!(matches!(
            a.is_sufficient(1, set(&[0]), set(&[2])),
            Err(Error::NotASubset { .. })
        ));
        assert!(matches!(
            a.is_sufficient(5, set(&[]), set(&[])),
            Err(Error::SiteOutOfRange { .. })
        ));
    }

    #[test]
    fn copy_families() {
        let f = builtin(FixtureId::Copy).field;
        let a = Analyzer::new(&f).unwrap();
        assert!(a.is_sufficient(2, set(&[0]), set(&[0, 1])).unwrap().sufficient);
        let si = a.si_family(2, set(&[0, 1])).unwrap();
        assert_eq!(si.sets(), &[set(&[0]), set(&[1]), set(&[0, 1])]);
        let mi = a.mi_family(2).unwrap();
        assert!(mi.contains(set(&[0])) && mi.contains(set(&[1])));
        assert!(!mi.contains(set(&[0, 1])));
        let es = a.es_family(2).unwrap();
        assert_eq!(es.family.sets(), &[set(&[0]), set(&[1])]);
        assert_eq!(es.neighbor, Neighbor::Ambiguous);
        let besag = a.reduction_family(2).unwrap();
        assert_eq!(besag.verdict, BesagVerdict::Ambiguous(vec![set(&[0]), set(&[1])]));
    }

    #[test]
    fn table1_families() {
        let f = builtin(FixtureId::Table1).field;
        let a = Analyzer::new(&f).unwrap();
        assert_eq!(a.si_family(0, set(&[1, 2])).unwrap().sets(), &[set(&[1, 2])]);
        assert_eq!(a.si_family(0, set(&[])).unwrap().sets(), &[set(&[])]);
        let yz = a.mi_membership(0, set(&[1, 2])).unwrap();
        assert!(yz.minimal);
        let y = a.mi_membership(0, set(&[1])).unwrap();
        assert!(!y.minimal);
        assert_eq!(y.reducing_subset, Some(SiteSet::EMPTY));
        assert!(a.mi_membership(0, SiteSet::EMPTY).unwrap().minimal);
        let mi = a.mi_family(0).unwrap();
        assert!(mi.contains(set(&[1, 2])) && mi.contains(SiteSet::EMPTY));
        assert!(!mi.contains(set(&[1])));
        let es = a.es_family(0).unwrap();
        assert_eq!(es.neighbor, Neighbor::Unique(set(&[1, 2])));
    }

    #[test]
    fn target_in_scope_needs_flag() {
        let f = builtin(FixtureId::Table1).field;
        let a = Analyzer::new(&f).unwrap();
        assert_eq!(a.mi_membership(0, set(&[0])), Err(Error::TargetInScope(0)));
        let own = a.mi_membership_with(0, set(&[0]), true).unwrap();
        assert!(own.minimal);
        assert!(a.si_family(0, set(&[0, 1])).unwrap().contains(set(&[0])));
    }

    #[test]
    fn table2_neighbors() {
        let f = builtin(FixtureId::Table2).field;
        let a = Analyzer::new(&f).unwrap();
        assert_eq!(a.es_family(0).unwrap().neighbor, Neighbor::Unique(set(&[1])));
        assert_eq!(a.es_family(1).unwrap().neighbor, Neighbor::Unique(set(&[0])));
    }

    #[test]
    fn chain_and_coins() {
        let f = builtin(FixtureId::Chain).field;
        let a = Analyzer::new(&f).unwrap();
        let b = a.reduction_family(1).unwrap();
        assert_eq!(b.verdict, BesagVerdict::WellDefined(set(&[0, 2])));
        assert_eq!(a.es_family(0).unwrap().neighbor, Neighbor::Unique(set(&[1])));

        let f = builtin(FixtureId::Coins(3)).field;
        let a = Analyzer::new(&f).unwrap();
        for i in 0..3 {
            assert_eq!(
                a.reduction_family(i).unwrap().verdict,
                BesagVerdict::WellDefined(SiteSet::EMPTY)
            );
            assert_eq!(a.es_family(i).unwrap().neighbor, Neighbor::Empty);
        }
    }

    #[test]
    fn corollary_reports() {
        let f = builtin(FixtureId::Table1).field;
        let a = Analyzer::new(&f).unwrap();
        let r = a.dependence_corollary_check(0, set(&[1, 2])).unwrap();
        assert_eq!(r.dependence_sets, vec![set(&[1, 2])]);
        assert!(r.passed());

        let f = builtin(FixtureId::Copy).field;
        let a = Analyzer::new(&f).unwrap();
        let r = a.dependence_corollary_check(2, set(&[0, 1])).unwrap();
        assert_eq!(r.dependence_sets, vec![set(&[0]), set(&[1]), set(&[0, 1])]);
        assert!(r.passed());
    }

    #[test]
    fn lattice_conditionals_match_direct() {
        let f = builtin(FixtureId::Table1).field;
        let a = Analyzer::new(&f).unwrap();
        for s in f.all_sites().subsets() {
            for i in 0..3 {
                let t = crate::conditional::conditional(&f, i, s).unwrap();
                for (l, given, v) in t.domain() {
                    assert_eq!(a.conditional_value(i, l, &given).as_ref(), Some(v));
                }
            }
        }
    }
}
