//! Ordinary matroids on the unsigned set `[n]`, given by their bases and
//! checked with the greedy (flavor `A`) Maximality Property.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;

use crate::axioms::greatest_index;
use crate::error::{Error, Result};
use crate::ground::SignedElement;
use crate::ordering::{enumerate_orderings, AdmissibleOrdering, Flavor, GaleKey};

/// A subset of `[n]`, bit `i-1` for element `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UnsignedSet(u32);

impl UnsignedSet {
    pub const EMPTY: Self = Self(0);

    pub fn from_mask(mask: u32) -> Self {
        Self(mask)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let mut mask = 0u32;
        for i in elements {
            if i == 0 || i > 32 {
                return Err(Error::InvalidElement(format!("index {i} outside 1..=32")));
            }
            if mask & 1 << (i - 1) != 0 {
                return Err(Error::InvalidInput(format!("element {i} repeated")));
            }
            mask |= 1 << (i - 1);
        }
        Ok(Self(mask))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && i <= 32 && self.0 & 1 << (i - 1) != 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |b| self.0 >> b & 1 == 1).map(|b| b + 1)
    }

    pub fn max_index(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// `[n] ∖ self`.
    #[must_use]
    pub fn complement(self, n: usize) -> Self {
        Self(!self.0 & full_mask(n))
    }

    #[must_use]
    pub fn symmetric_difference(self, other: Self) -> Self {
        Self(self.0 ^ other.0)
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl fmt::Display for UnsignedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().join(" "))
    }
}

/// A nonempty family of equal-size subsets of `[n]`, a candidate matroid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrdinaryMatroid {
    n: usize,
    rank: usize,
    bases: Vec<UnsignedSet>,
}

impl OrdinaryMatroid {
    pub fn new<I: IntoIterator<Item = UnsignedSet>>(n: usize, bases: I) -> Result<Self> {
        if n > 32 {
            return Err(Error::InvalidInput(format!("ground size {n} exceeds 32")));
        }
        let mut bases: Vec<UnsignedSet> = bases.into_iter().collect();
        bases.sort_unstable();
        bases.dedup();
        let Some(first) = bases.first() else {
            return Err(Error::InvalidInput("empty basis family".into()));
        };
        let rank = first.len();
        for b in &bases {
            if b.len() != rank {
                return Err(Error::InvalidRank(format!(
                    "basis {b} has size {} but {first} has size {rank}",
                    b.len()
                )));
            }
            if b.max_index() > n {
                return Err(Error::InvalidElement(format!("basis {b} lies outside [{n}]")));
            }
        }
        Ok(Self { n, rank, bases })
    }

    /// Convenience constructor from digit strings, `"-"` for the empty set.
    pub fn from_digits(n: usize, bases: &[&str]) -> Result<Self> {
        let sets = bases
            .iter()
            .map(|b| {
                UnsignedSet::from_elements(
                    b.chars()
                        .filter(|&c| c != '-')
                        .map(|c| c.to_digit(10).map_or(0, |d| d as usize)),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, sets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[UnsignedSet] {
        &self.bases
    }

    pub fn contains(&self, set: UnsignedSet) -> bool {
        self.bases.binary_search(&set).is_ok()
    }

    /// Subset of some basis.
    pub fn is_independent(&self, set: UnsignedSet) -> bool {
        self.bases.iter().any(|&b| set.is_subset(b))
    }
}

impl fmt::Display for OrdinaryMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.bases.iter().join(", "))
    }
}

fn unsigned_key(ord: &AdmissibleOrdering, set: UnsignedSet) -> GaleKey {
    let mut key: GaleKey = set
        .iter()
        .map(|i| ord.rank_of(SignedElement::plain(i)))
        .collect();
    key.sort_unstable_by(|a, b| b.cmp(a));
    key
}

/// Gale comparison of equal-size subsets of `[n]` under a linear order.
pub fn gale_cmp_unsigned(
    ord: &AdmissibleOrdering,
    a: UnsignedSet,
    b: UnsignedSet,
) -> Result<Option<Ordering>> {
    if a.len() != b.len() {
        return Err(Error::InvalidComparison {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(ord.compare_keys(&unsigned_key(ord, a), &unsigned_key(ord, b)))
}

/// The unique Gale-maximal basis under a linear order of `[n]`.
///
/// # Panics
///
/// If `ord` is not a flavor-`A` ordering of `[n]`.
pub fn max_basis(m: &OrdinaryMatroid, ord: &AdmissibleOrdering) -> Option<UnsignedSet> {
    assert!(
        ord.flavor() == Flavor::A && ord.n() == m.n,
        "ordinary matroids are ordered by linear orders of [n]"
    );
    let keys: Vec<GaleKey> = m.bases.iter().map(|&b| unsigned_key(ord, b)).collect();
    greatest_index(ord, &keys).map(|i| m.bases[i])
}

/// First linear order with no unique maximal basis.
pub fn ordinary_maximality_witness(m: &OrdinaryMatroid) -> Option<AdmissibleOrdering> {
    enumerate_orderings(m.n, Flavor::A).find(|ord| max_basis(m, ord).is_none())
}

/// The greedy characterization: a unique Gale-maximal basis for every
/// linear order of `[n]`.
pub fn is_ordinary_matroid(m: &OrdinaryMatroid) -> bool {
    ordinary_maximality_witness(m).is_none()
}

/// Every ordinary matroid on `[n]`, by filtering all nonempty equal-size
/// families through [`is_ordinary_matroid`]. Practical for `n ≤ 4`.
pub fn all_ordinary_matroids(n: usize) -> Result<Vec<OrdinaryMatroid>> {
    if n > 5 {
        return Err(Error::InvalidInput(format!(
            "exhaustive enumeration is limited to n ≤ 5, got {n}"
        )));
    }
    let mut out = Vec::new();
    for k in 0..=n {
        let sets: Vec<UnsignedSet> = (0..n)
            .combinations(k)
            .map(|c| UnsignedSet(c.iter().fold(0, |m, &i| m | 1 << i)))
            .collect();
        for pick in 1u64..1 << sets.len() {
            let chosen = sets
                .iter()
                .enumerate()
                .filter(|(i, _)| pick >> i & 1 == 1)
                .map(|(_, &s)| s);
            let m = OrdinaryMatroid::new(n, chosen)?;
            if is_ordinary_matroid(&m) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn om(n: usize, bases: &[&str]) -> OrdinaryMatroid {
        OrdinaryMatroid::from_digits(n, bases).unwrap()
    }

    /// Classical basis exchange: for bases A ≠ B and x ∈ A ∖ B there is
    /// y ∈ B ∖ A with A - x + y a basis.
    fn basis_exchange(m: &OrdinaryMatroid) -> bool {
        m.bases().iter().all(|&a| {
            m.bases().iter().all(|&b| {
                (a.mask() & !b.mask()).count_ones() == 0
                    || UnsignedSet(a.mask() & !b.mask()).iter().all(|x| {
                        UnsignedSet(b.mask() & !a.mask()).iter().any(|y| {
                            m.contains(UnsignedSet(a.mask() & !(1 << (x - 1)) | 1 << (y - 1)))
                        })
                    })
            })
        })
    }

    #[test]
    fn examples() {
        assert!(is_ordinary_matroid(&om(2, &["1", "2"])));
        assert!(is_ordinary_matroid(&om(4, &["13"])));
        let bad = om(4, &["12", "34"]);
        assert!(!is_ordinary_matroid(&bad));
        // Witness found by the scan: under any order placing 1 and 3 (or
        // 2 and 4) as the top two, {1,2} and {3,4} are incomparable.
        let w = ordinary_maximality_witness(&bad).unwrap();
        assert!(max_basis(&bad, &w).is_none());
    }

    #[test]
    fn greedy_agrees_with_basis_exchange_on_four_elements() {
        let n = 4;
        let mut matroids = 0;
        for k in 0..=n {
            let sets: Vec<UnsignedSet> = (0..n)
                .combinations(k)
                .map(|c| UnsignedSet(c.iter().fold(0, |m, &i| m | 1 << i)))
                .collect();
            for pick in 1u64..1 << sets.len() {
                let fam = sets
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| pick >> i & 1 == 1)
                    .map(|(_, &s)| s);
                let m = OrdinaryMatroid::new(n, fam).unwrap();
                let greedy = is_ordinary_matroid(&m);
                assert_eq!(greedy, basis_exchange(&m), "{m}");
                matroids += greedy as usize;
            }
        }
        // Labelled matroids on a 4-element set.
        assert_eq!(matroids, 68);
        assert_eq!(all_ordinary_matroids(4).unwrap().len(), 68);
    }

    #[test]
    fn unsigned_set_basics() {
        let s = UnsignedSet::from_elements([1, 3]).unwrap();
        assert_eq!(s.to_string(), "{1 3}");
        assert_eq!(s.complement(4), UnsignedSet::from_elements([2, 4]).unwrap());
        assert!(UnsignedSet::from_elements([1, 1]).is_err());
        assert_eq!(UnsignedSet::EMPTY.to_string(), "{}");
    }
}
