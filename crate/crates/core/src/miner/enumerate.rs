//! Deterministic streams of small fields: an exhaustive sweep over weight
//! grids followed by seeded pseudo-random fields.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::JointField;

/// Largest number of raw weight vectors the exhaustive part may visit.
pub const ENUMERATION_CAP: u128 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub max_sites: usize,
    pub max_alphabet: usize,
    pub weight_grid: Vec<u32>,
    pub random_count: usize,
    pub seed: u64,
    /// Run the exhaustive part before the random part.
    pub exhaustive: bool,
}

impl EnumerationBounds {
    pub fn exhaustive(max_sites: usize, max_alphabet: usize, weight_grid: &[u32]) -> Self {
        EnumerationBounds {
            max_sites,
            max_alphabet,
            weight_grid: weight_grid.to_vec(),
            random_count: 0,
            seed: 0,
            exhaustive: true,
        }
    }

    pub fn random_only(max_sites: usize, max_alphabet: usize, weight_grid: &[u32], count: usize, seed: u64) -> Self {
        EnumerationBounds {
            max_sites,
            max_alphabet,
            weight_grid: weight_grid.to_vec(),
            random_count: count,
            seed,
            exhaustive: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_sites == 0 {
            return Err(Error::InvalidBounds("max_sites must be at least 1".into()));
        }
        if self.max_alphabet == 0 {
            return Err(Error::InvalidBounds("max_alphabet must be at least 1".into()));
        }
        if !self.weight_grid.iter().any(|&w| w > 0) {
            return Err(Error::InvalidBounds("weight grid needs a nonzero element".into()));
        }
        Ok(())
    }

    /// Alphabet sizes a site may take. Single-label sites only appear when
    /// `max_alphabet` is 1.
    fn alphabet_range(&self) -> std::ops::RangeInclusive<usize> {
        if self.max_alphabet >= 2 {
            2..=self.max_alphabet
        } else {
            1..=1
        }
    }

    /// Raw weight vectors the exhaustive part visits.
    pub fn projected_size(&self) -> u128 {
        if !self.exhaustive {
            return 0;
        }
        let g = self.weight_grid.len() as u128;
        let mut total: u128 = 0;
        for n in 1..=self.max_sites {
            for sizes in alphabet_tuples(n, self.alphabet_range()) {
                let cells: u128 = sizes.iter().map(|&m| m as u128).product();
                let vectors = u32::try_from(cells)
                    .ok()
                    .and_then(|c| g.checked_pow(c))
                    .unwrap_or(u128::MAX);
                total = total.saturating_add(vectors);
            }
        }
        total
    }
}

fn alphabet_tuples(n: usize, range: std::ops::RangeInclusive<usize>) -> Vec<Vec<usize>> {
    let (lo, hi) = (*range.start(), *range.end());
    let mut out = Vec::new();
    let mut cur = vec![lo; n];
    loop {
        out.push(cur.clone());
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < hi {
                cur[k] += 1;
                for c in cur.iter_mut().skip(k + 1) {
                    *c = lo;
                }
                break;
            }
        }
    }
}

/// Iterator over the fields described by an [`EnumerationBounds`].
pub struct FieldStream {
    bounds: EnumerationBounds,
    shapes: Vec<Vec<usize>>,
    shape: usize,
    digits: Option<Vec<usize>>,
    seen: HashSet<(Vec<usize>, Vec<BigUint>)>,
    rng: ChaCha8Rng,
    emitted_random: usize,
}

pub fn enumerate_fields(bounds: &EnumerationBounds) -> Result<FieldStream> {
    bounds.validate()?;
    let projected = bounds.projected_size();
    if projected > ENUMERATION_CAP {
        return Err(Error::BoundsTooLarge {
            projected,
            cap: ENUMERATION_CAP,
        });
    }
    let shapes = if bounds.exhaustive {
        (1..=bounds.max_sites)
            .flat_map(|n| alphabet_tuples(n, bounds.alphabet_range()))
            .collect()
    } else {
        Vec::new()
    };
    let digits = shapes.first().map(|s| vec![0; s.iter().product()]);
    Ok(FieldStream {
        bounds: bounds.clone(),
        shapes,
        shape: 0,
        digits,
        seen: HashSet::new(),
        rng: ChaCha8Rng::seed_from_u64(bounds.seed),
        emitted_random: 0,
    })
}

impl FieldStream {
    fn advance(&mut self) {
        let Some(digits) = self.digits.as_mut() else {
            return;
        };
        let g = self.bounds.weight_grid.len();
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < g {
                return;
            }
            *d = 0;
        }
        self.shape += 1;
        self.digits = self.shapes.get(self.shape).map(|s| vec![0; s.iter().product()]);
    }

    fn next_exhaustive(&mut self) -> Option<JointField> {
        while let Some(digits) = self.digits.clone() {
            let sizes = self.shapes[self.shape].clone();
            self.advance();
            let raw: Vec<BigUint> = digits
                .iter()
                .map(|&d| BigUint::from(self.bounds.weight_grid[d]))
                .collect();
            let g = raw.iter().fold(BigUint::zero(), |acc, w| acc.gcd(w));
            if g.is_zero() {
                continue;
            }
            let normalized: Vec<BigUint> = raw.iter().map(|w| w / &g).collect();
            if !self.seen.insert((sizes.clone(), normalized.clone())) {
                continue;
            }
            if let Ok(field) = JointField::from_grid(&sizes, &normalized) {
                return Some(field);
            }
        }
        None
    }

    fn next_random(&mut self) -> Option<JointField> {
        if self.emitted_random >= self.bounds.random_count {
            return None;
        }
        self.emitted_random += 1;
        Some(random_field(
            &mut self.rng,
            self.bounds.max_sites,
            self.bounds.alphabet_range(),
            &self.bounds.weight_grid,
        ))
    }
}

impl Iterator for FieldStream {
    type Item = JointField;

    fn next(&mut self) -> Option<JointField> {
        self.next_exhaustive().or_else(|| self.next_random())
    }
}

/// A random valid field: weights drawn from `grid`, redrawn until every
/// label has positive marginal.
pub fn random_field<R: Rng>(
    rng: &mut R,
    max_sites: usize,
    alphabet: std::ops::RangeInclusive<usize>,
    grid: &[u32],
) -> JointField {
    let top = *grid.iter().max().expect("nonempty grid");
    loop {
        let n = rng.gen_range(1..=max_sites);
        let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(alphabet.clone())).collect();
        let cells: usize = sizes.iter().product();
        for _ in 0..64 {
            let w: Vec<BigUint> = (0..cells)
                .map(|_| BigUint::from(grid[rng.gen_range(0..grid.len())]))
                .collect();
            if let Ok(f) = JointField::from_grid(&sizes, &w) {
                return f;
            }
        }
        if top > 0 {
            let w = vec![BigUint::from(top); cells];
            return JointField::from_grid(&sizes, &w).expect("constant weights are valid");
        }
    }
}

/// A random strictly positive field with weights in `1..=max_weight`.
pub fn random_positive_field<R: Rng>(rng: &mut R, max_sites: usize, max_alphabet: usize, max_weight: u32) -> JointField {
    let n = rng.gen_range(1..=max_sites);
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(2..=max_alphabet.max(2))).collect();
    let cells: usize = sizes.iter().product();
    let w: Vec<BigUint> = (0..cells)
        .map(|_| BigUint::from(rng.gen_range(1..=max_weight.max(1))))
        .collect();
    JointField::from_grid(&sizes, &w).expect("positive weights are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    #[test]
    fn single_coin_grid() {
        let fields: Vec<_> = enumerate_fields(&EnumerationBounds::exhaustive(1, 2, &[0, 1]))
            .unwrap()
            .collect();
        assert_eq!(fields.len(), 1);
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(fields[0].mass(0), half);
        assert_eq!(fields[0].mass(1), half);
    }

    #[test]
    fn scale_duplicates_collapse() {
        let a: Vec<_> = enumerate_fields(&EnumerationBounds::exhaustive(1, 2, &[1, 2]))
            .unwrap()
            .collect();
        // (1,1) and (2,2) coincide; (1,2) and (2,1) remain.
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn deterministic_streams() {
        let mut b = EnumerationBounds::exhaustive(2, 2, &[0, 1, 2]);
        b.random_count = 20;
        b.seed = 7;
        let x: Vec<_> = enumerate_fields(&b).unwrap().collect();
        let y: Vec<_> = enumerate_fields(&b).unwrap().collect();
        assert_eq!(x, y);
        b.random_count = 0;
        let z: Vec<_> = enumerate_fields(&b).unwrap().collect();
        assert_eq!(z.len() + 20, x.len());
        assert_eq!(&x[..z.len()], &z[..]);
    }

    #[test]
    fn tiny_corpus_size() {
        // Normalized weight vectors over {0,1,2} without zero-marginal labels.
        let b = EnumerationBounds::exhaustive(3, 2, &[0, 1, 2]);
        assert_eq!(b.projected_size(), 9 + 81 + 6561);
        let count = enumerate_fields(&b).unwrap().count();
        assert!(count > 1000 && count < 6651, "{count}");
    }

    #[test]
    fn bounds_errors() {
        let b = EnumerationBounds::exhaustive(3, 3, &[0, 1, 2]);
        assert!(matches!(enumerate_fields(&b), Err(Error::BoundsTooLarge { .. })));
        let b = EnumerationBounds::exhaustive(2, 2, &[0]);
        assert!(matches!(enumerate_fields(&b), Err(Error::InvalidBounds(_))));
        let b = EnumerationBounds::exhaustive(0, 2, &[1]);
        assert!(matches!(enumerate_fields(&b), Err(Error::InvalidBounds(_))));
    }

    #[test]
    fn random_fields_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let f = random_field(&mut rng, 4, 2..=3, &[0, 1, 2, 3]);
            assert!(f.n() >= 1 && f.n() <= 4);
            let p = random_positive_field(&mut rng, 4, 3, 9);
            assert!(p.is_positive());
        }
    }
}
