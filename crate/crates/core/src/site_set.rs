use std::cmp::Ordering;
use std::fmt;

/// Maximum number of sites a field may carry; site sets are single-word bitmasks.
pub const MAX_SITES: usize = 64;

/// A set of site indices (0-based), stored as a bitmask.
///
/// Ordering is by cardinality first, then lexicographic on the ascending
/// member list. This is the canonical order used for every reported family.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SiteSet(u64);

impl SiteSet {
    pub const EMPTY: SiteSet = SiteSet(0);

    pub fn from_bits(bits: u64) -> Self {
        SiteSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(site: usize) -> Self {
        SiteSet(1 << site)
    }

    /// All sites `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            SiteSet(u64::MAX)
        } else {
            SiteSet((1u64 << n) - 1)
        }
    }

    /// All sites `0..n` except `site` (written `i^c` in the usual notation).
    pub fn complement_of(site: usize, n: usize) -> Self {
        SiteSet::full(n).without(site)
    }

    pub fn contains(self, site: usize) -> bool {
        site < 64 && self.0 & (1 << site) != 0
    }

    pub fn with(self, site: usize) -> Self {
        SiteSet(self.0 | (1 << site))
    }

    pub fn without(self, site: usize) -> Self {
        SiteSet(self.0 & !(1 << site))
    }

    pub fn union(self, other: SiteSet) -> Self {
        SiteSet(self.0 | other.0)
    }

    pub fn intersection(self, other: SiteSet) -> Self {
        SiteSet(self.0 & other.0)
    }

    pub fn difference(self, other: SiteSet) -> Self {
        SiteSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: SiteSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: SiteSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Largest member + 1, or 0 when empty.
    pub fn bound(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let site = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(site)
            }
        })
    }

    pub fn members(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of `self`, in increasing bitmask order (starts at the empty set).
    pub fn subsets(self) -> impl Iterator<Item = SiteSet> {
        let sup = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == sup {
                None
            } else {
                Some((cur.wrapping_sub(sup)) & sup)
            };
            Some(SiteSet(cur))
        })
    }

    /// Every subset of `self` sorted in canonical order.
    pub fn subsets_canonical(self) -> Vec<SiteSet> {
        let mut all: Vec<SiteSet> = self.subsets().collect();
        all.sort();
        all
    }
}

impl Ord for SiteSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for SiteSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for SiteSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        iter.into_iter().fold(SiteSet::EMPTY, SiteSet::with)
    }
}

impl fmt::Debug for SiteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for SiteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
