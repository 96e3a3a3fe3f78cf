//! Per-field evaluation of each property over a bounded family of events,
//! partitions, site-set chains and coarse constraints.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::event::{event_weight, Event};
use crate::field::JointField;
use crate::info::{
    coarse_conditional, is_uninformative, partition_constant_check, site_partition, Analyzer, CoarseConstraint,
    SiteSetFamily,
};
use crate::miner::property::PropertyId;
use crate::miner::witness::WitnessDetail;
use crate::site_set::SiteSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    /// Largest field (in sites) the theorem checks accept.
    pub max_sites: usize,
    /// Witnesses kept per property per field.
    pub witness_cap: usize,
    /// `J ⊆ H ⊆ I` chains examined per field for the monotonicity properties.
    pub chain_cap: usize,
    /// Largest constrained site set `H` in the coarse-conditioning check.
    pub coarse_max_sites: usize,
    /// Outcome spaces up to this size use every event as `A` and `B`.
    pub all_events_limit: usize,
    /// Outcome spaces up to this size also test unions of single outcomes.
    pub atomic_limit: usize,
    /// Outcome spaces up to this size use every event as `C` in the intersection search.
    pub intersection_limit: usize,
    /// Extra random partitions per field, seeded from the field's contents.
    pub random_partitions: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_sites: 8,
            witness_cap: 8,
            chain_cap: 200_000,
            coarse_max_sites: 1,
            all_events_limit: 4,
            atomic_limit: 6,
            intersection_limit: 8,
            random_partitions: 2,
        }
    }
}

fn fingerprint(field: &JointField) -> u64 {
    let mut h = DefaultHasher::new();
    field.alphabet_sizes().hash(&mut h);
    field.weights().hash(&mut h);
    h.finish()
}

fn mask_event(field: &JointField, mask: u64) -> Event {
    Event::from_outcomes(field, (0..field.outcome_count()).filter(|o| mask >> o & 1 == 1)).expect("in range")
}

fn cylinders(field: &JointField) -> Vec<Event> {
    (0..field.n())
        .flat_map(|s| (0..field.alphabet_size(s)).map(move |l| (s, l)))
        .map(|(s, l)| Event::site_equals(field, s, l))
        .collect()
}

fn a_candidates(field: &JointField, cfg: &SweepConfig) -> Vec<Event> {
    let n = field.outcome_count();
    if n <= cfg.all_events_limit {
        (0..1u64 << n).map(|m| mask_event(field, m)).collect()
    } else {
        cylinders(field)
    }
}

fn b_candidates(field: &JointField, cfg: &SweepConfig) -> Vec<Event> {
    let n = field.outcome_count();
    let mut out = vec![Event::omega(field)];
    let rest = if n <= cfg.all_events_limit {
        (1..(1u64 << n) - 1).map(|m| mask_event(field, m)).collect()
    } else {
        cylinders(field)
    };
    out.extend(rest.into_iter().filter(|e| event_weight(field, e) > 0u8.into()));
    out
}

fn partitions(field: &JointField, cfg: &SweepConfig) -> Vec<Vec<Event>> {
    let mut out: Vec<Vec<Event>> = (0..field.n()).map(|s| site_partition(field, s)).collect();
    let n = field.outcome_count();
    if n <= cfg.atomic_limit {
        out.push((0..n).map(|o| mask_event(field, 1 << o)).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(fingerprint(field));
    for _ in 0..cfg.random_partitions {
        let k = rng.gen_range(2..=4usize.min(n.max(2)));
        let mut cells = vec![Event::empty(field); k];
        for o in 0..n {
            cells[rng.gen_range(0..k)].insert(o);
        }
        cells.retain(|c| !c.is_empty());
        if cells.len() >= 2 {
            out.push(cells);
        }
    }
    out
}

/// Sub-collections (two or more cells) of the given cell indices.
fn collections(members: &[usize]) -> Vec<Vec<usize>> {
    if members.len() > 10 {
        return vec![members.to_vec()];
    }
    (0..1u32 << members.len())
        .filter(|m| m.count_ones() >= 2)
        .map(|m| {
            members
                .iter()
                .enumerate()
                .filter(|(k, _)| m >> k & 1 == 1)
                .map(|(_, &c)| c)
                .collect()
        })
        .collect()
}

fn un_union(field: &JointField, cfg: &SweepConfig) -> Result<Vec<WitnessDetail>> {
    let mut out = Vec::new();
    let parts = partitions(field, cfg);
    for a in a_candidates(field, cfg) {
        for b in b_candidates(field, cfg) {
            for cells in &parts {
                let mut members = Vec::new();
                for (k, c) in cells.iter().enumerate() {
                    if is_uninformative(field, &a, &b, c)?.is_member() {
                        members.push(k);
                    }
                }
                for coll in collections(&members) {
                    let union = coll.iter().fold(Event::empty(field), |acc, &k| acc.union(&cells[k]));
                    if !is_uninformative(field, &a, &b, &union)?.is_member() {
                        out.push(WitnessDetail::UnUnion {
                            a: a.clone(),
                            b: b.clone(),
                            cells: coll.iter().map(|&k| cells[k].clone()).collect(),
                        });
                        if out.len() >= cfg.witness_cap {
                            return Ok(out);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn partition_constant(field: &JointField, cfg: &SweepConfig) -> Result<Vec<WitnessDetail>> {
    let mut out = Vec::new();
    let parts = partitions(field, cfg);
    for a in a_candidates(field, cfg) {
        for b in b_candidates(field, cfg) {
            for cells in &parts {
                if !partition_constant_check(field, &a, &b, cells)?.constant_matches_prior() {
                    out.push(WitnessDetail::PartitionConstant {
                        a: a.clone(),
                        b: b.clone(),
                        cells: cells.clone(),
                    });
                    if out.len() >= cfg.witness_cap {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn un_intersection(field: &JointField, cfg: &SweepConfig) -> Result<Vec<WitnessDetail>> {
    let mut out = Vec::new();
    let n = field.outcome_count();
    let small = n <= cfg.intersection_limit;
    let cs: Vec<Event> = if small {
        (0..1u64 << n).map(|m| mask_event(field, m)).collect()
    } else {
        cylinders(field)
            .into_iter()
            .flat_map(|e| {
                let c = e.complement();
                [e, c]
            })
            .collect()
    };
    for a in a_candidates(field, cfg) {
        for b in b_candidates(field, cfg) {
            let member: Vec<bool> = cs
                .iter()
                .map(|c| Ok(is_uninformative(field, &a, &b, c)?.is_member()))
                .collect::<Result<_>>()?;
            for i in 0..cs.len() {
                if !member[i] {
                    continue;
                }
                for j in i + 1..cs.len() {
                    if !member[j] {
                        continue;
                    }
                    let meet_member = if small {
                        member[i & j]
                    } else {
                        is_uninformative(field, &a, &b, &cs[i].intersection(&cs[j]))?.is_member()
                    };
                    if !meet_member {
                        out.push(WitnessDetail::UnIntersection {
                            a: a.clone(),
                            b: b.clone(),
                            c1: cs[i].clone(),
                            c2: cs[j].clone(),
                        });
                        if out.len() >= cfg.witness_cap {
                            return Ok(out);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

struct SiCache<'a, 'f> {
    an: &'a Analyzer<'f>,
    memo: HashMap<(usize, SiteSet), SiteSetFamily>,
}

impl SiCache<'_, '_> {
    fn get(&mut self, target: usize, scope: SiteSet) -> Result<&SiteSetFamily> {
        if !self.memo.contains_key(&(target, scope)) {
            let fam = self.an.si_family(target, scope)?;
            self.memo.insert((target, scope), fam);
        }
        Ok(&self.memo[&(target, scope)])
    }
}

fn si_monotone(an: &Analyzer<'_>, cfg: &SweepConfig, property: PropertyId) -> Result<Vec<WitnessDetail>> {
    let field = an.field();
    let mut cache = SiCache {
        an,
        memo: HashMap::new(),
    };
    let mut out = Vec::new();
    let mut steps = 0usize;
    for target in 0..field.n() {
        for scope in field.all_sites().subsets() {
            let si = cache.get(target, scope)?.sets().to_vec();
            for reduced in si {
                for extra in scope.difference(reduced).subsets() {
                    steps += 1;
                    if steps > cfg.chain_cap {
                        return Ok(out);
                    }
                    let middle = reduced.union(extra);
                    let holds = if property == PropertyId::SiMonotoneA {
                        cache.get(target, middle)?.contains(reduced)
                    } else {
                        cache.get(target, scope)?.contains(middle)
                    };
                    if !holds {
                        out.push(WitnessDetail::SiChain {
                            target,
                            reduced,
                            middle,
                            scope,
                        });
                        if out.len() >= cfg.witness_cap {
                            return Ok(out);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn constraint_choices(field: &JointField, h: SiteSet) -> Vec<CoarseConstraint> {
    let mut out = vec![CoarseConstraint::new()];
    for site in h.iter() {
        let m = field.alphabet_size(site);
        let mut next = Vec::new();
        for c in &out {
            for mask in 1u32..(1 << m) {
                let labels = (0..m).filter(|l| mask >> l & 1 == 1);
                next.push(c.clone().with(site, labels));
            }
        }
        out = next;
    }
    out
}

fn proposition(an: &Analyzer<'_>, cfg: &SweepConfig) -> Result<Vec<WitnessDetail>> {
    let field = an.field();
    let all = field.all_sites();
    let mut cache = SiCache {
        an,
        memo: HashMap::new(),
    };
    let mut out = Vec::new();
    for target in 0..field.n() {
        for reduced in SiteSet::complement_of(target, field.n()).subsets() {
            for h in all.difference(reduced).subsets() {
                if h.is_empty() || h.len() > cfg.coarse_max_sites {
                    continue;
                }
                if !cache.get(target, reduced.union(h))?.contains(reduced) {
                    continue;
                }
                let choices = constraint_choices(field, h);
                let table = an.lattice().get(reduced);
                for cell in table.support() {
                    let given = table.assignment(cell);
                    let direct: Vec<_> = (0..field.alphabet_size(target))
                        .map(|l| an.conditional_value(target, l, &given).expect("on support"))
                        .collect();
                    for cons in &choices {
                        if let Some(coarse) = coarse_conditional(field, target, &given, cons)? {
                            if coarse != direct {
                                out.push(WitnessDetail::Coarse {
                                    target,
                                    given: given.clone(),
                                    constraints: cons.clone(),
                                });
                                if out.len() >= cfg.witness_cap {
                                    return Ok(out);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn corollary(an: &Analyzer<'_>, cfg: &SweepConfig) -> Result<Vec<WitnessDetail>> {
    let field = an.field();
    let mut out = Vec::new();
    for target in 0..field.n() {
        for scope in field.all_sites().subsets() {
            let report = an.dependence_corollary_check(target, scope)?;
            for (reduced, _) in report.violations {
                out.push(WitnessDetail::Dependence { target, scope, reduced });
                if out.len() >= cfg.witness_cap {
                    return Ok(out);
                }
            }
        }
        let others = SiteSet::complement_of(target, field.n());
        if an.reduction_family(target)?.reduction_family.sets() != an.si_family(target, others)?.sets() {
            out.push(WitnessDetail::ReductionFamily { target });
            if out.len() >= cfg.witness_cap {
                return Ok(out);
            }
        }
    }
    Ok(out)
}

fn positivity(an: &Analyzer<'_>) -> Result<Vec<WitnessDetail>> {
    let field = an.field();
    if !field.is_positive() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for target in 0..field.n() {
        let besag = an.reduction_family(target)?;
        let es = an.es_family(target)?;
        if !besag.is_well_defined() || es.family.sets() != besag.minimal_sets().as_slice() {
            out.push(WitnessDetail::Positivity { target });
        }
    }
    Ok(out)
}

fn mi_downward(an: &Analyzer<'_>, cfg: &SweepConfig) -> Result<Vec<WitnessDetail>> {
    let field = an.field();
    let mut out = Vec::new();
    for target in 0..field.n() {
        let mi = an.mi_family(target)?;
        for &minimal in mi.sets() {
            for subset in minimal.subsets_canonical() {
                if subset != minimal && !mi.contains(subset) {
                    out.push(WitnessDetail::MiDownward {
                        target,
                        minimal,
                        subset,
                    });
                    if out.len() >= cfg.witness_cap {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn two_agents(field: &JointField, cfg: &SweepConfig) -> Result<Vec<WitnessDetail>> {
    let mut out = Vec::new();
    let omega = Event::omega(field);
    for target in 0..field.n() {
        for label in 0..field.alphabet_size(target) {
            let a = Event::site_equals(field, target, label);
            for partition_site in (0..field.n()).filter(|&y| y != target) {
                let cells = site_partition(field, partition_site);
                let first = partition_constant_check(field, &a, &omega, &cells)?;
                if !first.per_cell.iter().all(|v| v.is_member()) {
                    continue;
                }
                for given_site in (0..field.n()).filter(|&z| z != target && z != partition_site) {
                    for given_label in 0..field.alphabet_size(given_site) {
                        let b2 = Event::site_equals(field, given_site, given_label);
                        let second = partition_constant_check(field, &a, &b2, &cells)?;
                        if second.per_cell.iter().any(|v| !v.is_member()) {
                            out.push(WitnessDetail::TwoAgents {
                                target,
                                label,
                                partition_site,
                                given_site,
                                given_label,
                            });
                            if out.len() >= cfg.witness_cap {
                                return Ok(out);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Violations (for lemmas) or counterexamples (for refuted claims) in one field.
pub fn check_property(an: &Analyzer<'_>, property: PropertyId, cfg: &SweepConfig) -> Result<Vec<WitnessDetail>> {
    let field = an.field();
    match property {
        PropertyId::UnUnionClosure => un_union(field, cfg),
        PropertyId::UnIntersectionClosure => un_intersection(field, cfg),
        PropertyId::PartitionConstant => partition_constant(field, cfg),
        PropertyId::SiMonotoneA | PropertyId::SiMonotoneB => si_monotone(an, cfg, property),
        PropertyId::PropositionCoarse => proposition(an, cfg),
        PropertyId::CorollaryDependence => corollary(an, cfg),
        PropertyId::PositivityWellDef => positivity(an),
        PropertyId::MiDownwardClosure => mi_downward(an, cfg),
        PropertyId::TwoAgents => two_agents(field, cfg),
    }
}
