//! Admissible orderings of the signed ground set and the Gale order they
//! induce on equal-size admissible sets.
//!
//! A `C_n`-admissible ordering is determined by its top `n` elements, listed
//! largest first: the listing `t_1 ≻ … ≻ t_n ≻ t_n* ≻ … ≻ t_1*`. A
//! `D_n`-admissible ordering is the same listing with `t_n` and `t_n*` made
//! incomparable; it is stored canonically with `t_n` unstarred. Flavor `A`
//! is an ordinary linear order of the unsigned set `[n]`.

use std::cmp::Ordering;
use std::fmt;

use arrayvec::ArrayVec;
use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ground::{AdmissibleSet, SignedElement, MAX_N};
use crate::perm::SignedPermutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Linear orders of `[n]` (ordinary matroids).
    A,
    /// Symplectic: linear orders of `[n] ∪ [n]*` compatible with the star.
    C,
    /// Orthogonal: as `C` with the middle pair incomparable.
    D,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::A => "A",
            Flavor::C => "C",
            Flavor::D => "D",
        })
    }
}

/// Descending element ranks of a set under an ordering; the comparison key
/// for the Gale order.
pub type GaleKey = ArrayVec<u8, MAX_N>;

#[derive(Clone)]
pub struct AdmissibleOrdering {
    flavor: Flavor,
    top: Vec<SignedElement>,
    /// Rank by element code, larger is higher. Starred codes are unused for `A`.
    rank: [u8; 2 * MAX_N],
}

impl PartialEq for AdmissibleOrdering {
    fn eq(&self, other: &Self) -> bool {
        self.flavor == other.flavor && self.top == other.top
    }
}

impl Eq for AdmissibleOrdering {}

impl std::hash::Hash for AdmissibleOrdering {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.flavor.hash(state);
        self.top.hash(state);
    }
}

impl fmt::Debug for AdmissibleOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AdmissibleOrdering({}: {})", self.flavor, self)
    }
}

impl AdmissibleOrdering {
    /// Builds an ordering from its top elements, largest first.
    ///
    /// For `C`/`D` the top must contain each index of `[n]` exactly once
    /// (starred or not); for `A` it must be a permutation of `[n]`, unstarred.
    pub fn new(flavor: Flavor, top: Vec<SignedElement>) -> Result<Self> {
        let n = top.len();
        if n > MAX_N {
            return Err(Error::InvalidInput(format!("ground size {n} exceeds {MAX_N}")));
        }
        let mut seen = vec![false; n];
        for e in &top {
            if e.index() > n || std::mem::replace(&mut seen[e.index() - 1], true) {
                return Err(Error::InvalidInput(format!(
                    "top sequence {} is not a signed arrangement of [{n}]",
                    top.iter().join(" ")
                )));
            }
            if flavor == Flavor::A && e.is_starred() {
                return Err(Error::InvalidInput(format!(
                    "flavor A orders the unsigned set [{n}], got {e}"
                )));
            }
        }
        let mut top = top;
        if flavor == Flavor::D {
            if let Some(last) = top.last_mut() {
                *last = SignedElement::plain(last.index());
            }
        }
        let mut rank = [0u8; 2 * MAX_N];
        for (j, &e) in top.iter().enumerate() {
            match flavor {
                Flavor::A => rank[e.code() as usize] = (n - 1 - j) as u8,
                Flavor::C | Flavor::D => {
                    rank[e.code() as usize] = (2 * n - 1 - j) as u8;
                    rank[e.star().code() as usize] = j as u8;
                }
            }
        }
        Ok(Self { flavor, top, rank })
    }

    /// `1 ≻ 2 ≻ … ≻ n (≻ n* ≻ … ≻ 1*)`.
    pub fn natural(n: usize, flavor: Flavor) -> Self {
        Self::new(flavor, (1..=n).map(SignedElement::plain).collect()).expect("valid top")
    }

    /// The ordering whose top sequence is `g(1), …, g(n)`.
    pub fn from_signed_permutation(g: &SignedPermutation, flavor: Flavor) -> Result<Self> {
        Self::new(flavor, g.images().to_vec())
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn n(&self) -> usize {
        self.top.len()
    }

    pub fn top(&self) -> &[SignedElement] {
        &self.top
    }

    /// All comparable positions listed from largest to smallest. For `D` the
    /// two middle entries are the incomparable pair.
    pub fn listing(&self) -> Vec<SignedElement> {
        match self.flavor {
            Flavor::A => self.top.clone(),
            Flavor::C | Flavor::D => self
                .top
                .iter()
                .copied()
                .chain(self.top.iter().rev().map(|e| e.star()))
                .collect(),
        }
    }

    pub fn rank_of(&self, e: SignedElement) -> u8 {
        self.rank[e.code() as usize]
    }

    fn rank_cmp(&self, a: u8, b: u8) -> Option<Ordering> {
        if a == b {
            return Some(Ordering::Equal);
        }
        if self.flavor == Flavor::D {
            let n = self.n() as u8;
            if a.min(b) + 1 == n && a.max(b) == n {
                return None;
            }
        }
        Some(a.cmp(&b))
    }

    /// Compares two elements; `None` only for the middle pair of a `D` ordering.
    pub fn compare_elements(&self, a: SignedElement, b: SignedElement) -> Option<Ordering> {
        self.rank_cmp(self.rank_of(a), self.rank_of(b))
    }

    /// Element ranks of `set`, sorted descending.
    pub fn gale_key(&self, set: AdmissibleSet) -> GaleKey {
        let mut key: GaleKey = set.iter().map(|e| self.rank_of(e)).collect();
        key.sort_unstable_by(|a, b| b.cmp(a));
        key
    }

    /// Gale comparison of two precomputed keys of equal length.
    pub fn compare_keys(&self, a: &[u8], b: &[u8]) -> Option<Ordering> {
        debug_assert_eq!(a.len(), b.len());
        let (mut le, mut ge) = (true, true);
        for (&x, &y) in a.iter().zip(b) {
            match self.rank_cmp(x, y) {
                Some(Ordering::Equal) => {}
                Some(Ordering::Less) => ge = false,
                Some(Ordering::Greater) => le = false,
                None => return None,
            }
            if !le && !ge {
                return None;
            }
        }
        match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }

    /// Gale order on admissible `k`-sets: `A ⪯ B` iff, listing both in
    /// decreasing order, every entry of `A` is below the matching entry of `B`.
    /// `None` means incomparable.
    pub fn gale_cmp(&self, a: AdmissibleSet, b: AdmissibleSet) -> Result<Option<Ordering>> {
        if a.len() != b.len() {
            return Err(Error::InvalidComparison {
                left: a.len(),
                right: b.len(),
            });
        }
        Ok(self.compare_keys(&self.gale_key(a), &self.gale_key(b)))
    }

    /// `A ⪯ B` in the Gale order.
    pub fn gale_leq(&self, a: AdmissibleSet, b: AdmissibleSet) -> Result<bool> {
        Ok(matches!(
            self.gale_cmp(a, b)?,
            Some(Ordering::Less | Ordering::Equal)
        ))
    }

    /// The image ordering `g·≺`, with `g(x) ≻' g(y)` iff `x ≻ y`.
    pub fn act(&self, g: &SignedPermutation) -> Result<Self> {
        if g.n() != self.n() {
            return Err(Error::InvalidInput(format!(
                "permutation of [{}] acting on an ordering of [{}]",
                g.n(),
                self.n()
            )));
        }
        Self::new(self.flavor, self.top.iter().map(|&e| g.apply(e)).collect())
    }

    /// Restriction to the unstarred elements `[n]`, a linear order.
    pub fn restrict_to_unsigned(&self) -> Self {
        let mut plain: Vec<SignedElement> = (1..=self.n()).map(SignedElement::plain).collect();
        plain.sort_by_key(|&e| std::cmp::Reverse(self.rank_of(e)));
        Self::new(Flavor::A, plain).expect("permutation of [n]")
    }

    /// Forgets the middle relation of a `C` ordering.
    pub fn to_d(&self) -> Self {
        Self::new(Flavor::D, self.top.clone()).expect("valid top")
    }
}

impl fmt::Display for AdmissibleOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        match self.flavor {
            Flavor::A | Flavor::C => write!(f, "{}", self.listing().iter().join(" > ")),
            Flavor::D if n == 0 => Ok(()),
            Flavor::D => {
                let listing = self.listing();
                let upper = listing[..n - 1].iter().join(" > ");
                let lower = listing[n + 1..].iter().join(" > ");
                let middle = format!("({} | {})", listing[n - 1], listing[n]);
                let parts: Vec<String> = [upper, middle, lower]
                    .into_iter()
                    .filter(|p| !p.is_empty())
                    .collect();
                write!(f, "{}", parts.join(" > "))
            }
        }
    }
}

/// Lazily enumerates every admissible ordering of the given flavor:
/// `2^n·n!` for `C`, `2^(n-1)·n!` for `D`, `n!` for `A`.
pub fn enumerate_orderings(n: usize, flavor: Flavor) -> impl Iterator<Item = AdmissibleOrdering> {
    let sign_patterns: u64 = match flavor {
        Flavor::A => 1,
        Flavor::C => 1 << n,
        Flavor::D => 1 << n.saturating_sub(1),
    };
    (1..=n).permutations(n).flat_map(move |perm| {
        (0..sign_patterns).map(move |signs| {
            let top = perm
                .iter()
                .enumerate()
                .map(|(pos, &i)| SignedElement::new(i, (signs >> pos) & 1 == 1).unwrap())
                .collect();
            AdmissibleOrdering::new(flavor, top).expect("enumerated tops are valid")
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn s(text: &str) -> AdmissibleSet {
        AdmissibleSet::parse_compact(text).unwrap()
    }
    fn el(text: &str) -> SignedElement {
        text.parse().unwrap()
    }
    fn ord(flavor: Flavor, top: &str) -> AdmissibleOrdering {
        AdmissibleOrdering::new(flavor, top.split_whitespace().map(el).collect()).unwrap()
    }

    #[test]
    fn listing_shape() {
        let o = ord(Flavor::C, "2* 1 3");
        let names: Vec<String> = o.listing().iter().map(ToString::to_string).collect();
        assert_eq!(names, ["2*", "1", "3", "3*", "1*", "2"]);
        assert_eq!(ord(Flavor::D, "1 2").to_string(), "1 > (2 | 2*) > 1*");
        assert_eq!(ord(Flavor::D, "1 2*"), ord(Flavor::D, "1 2"));
    }

    #[test]
    fn gale_examples() {
        let o = ord(Flavor::C, "1 2");
        assert_eq!(o.gale_cmp(s("1*2*"), s("12")).unwrap(), Some(Ordering::Less));
        assert!(o.gale_leq(s("1*2*"), s("12")).unwrap());
        assert_eq!(o.gale_cmp(s("12*"), s("12*")).unwrap(), Some(Ordering::Equal));
        assert!(o.gale_cmp(s("1"), s("12")).is_err());
        // 1 > (2 | 2*) > 1*: 12* lists as (1, 2*), 1*2 as (2, 1*); both
        // positions of 12* dominate. Frozen from the relation oracle below.
        let d = ord(Flavor::D, "1 2");
        assert_eq!(d.gale_cmp(s("12*"), s("1*2")).unwrap(), Some(Ordering::Greater));
        assert_eq!(d.gale_cmp(s("12"), s("12*")).unwrap(), None);
    }

    #[test]
    fn ordering_counts() {
        assert_eq!(enumerate_orderings(2, Flavor::C).count(), 8);
        assert_eq!(enumerate_orderings(2, Flavor::D).count(), 4);
        assert_eq!(enumerate_orderings(1, Flavor::D).count(), 1);
        assert_eq!(enumerate_orderings(3, Flavor::A).count(), 6);
        let d1 = enumerate_orderings(1, Flavor::D).next().unwrap();
        assert_eq!(d1.compare_elements(el("1"), el("1*")), None);
    }

    /// Oracle: the strict relation of an ordering as an explicit set of pairs
    /// read off the listing, with the middle pair removed for `D`.
    fn relation(o: &AdmissibleOrdering) -> HashSet<(SignedElement, SignedElement)> {
        let listing = o.listing();
        let n = o.n();
        let mut rel = HashSet::new();
        for (i, &hi) in listing.iter().enumerate() {
            for &lo in &listing[i + 1..] {
                rel.insert((lo, hi));
            }
        }
        if o.flavor() == Flavor::D && n > 0 {
            rel.remove(&(listing[n], listing[n - 1]));
        }
        rel
    }

    fn oracle_leq(
        rel: &HashSet<(SignedElement, SignedElement)>,
        a: AdmissibleSet,
        b: AdmissibleSet,
    ) -> bool {
        // Sort by counting how many members lie below each element.
        let sorted = |x: AdmissibleSet| {
            let mut v: Vec<SignedElement> = x.iter().collect();
            v.sort_by_key(|&e| x.iter().filter(|&f| rel.contains(&(f, e))).count());
            v
        };
        sorted(a)
            .iter()
            .zip(sorted(b).iter())
            .all(|(&x, &y)| x == y || rel.contains(&(x, y)))
    }

    #[test]
    fn gale_matches_relation_oracle() {
        for n in 1..=3 {
            for flavor in [Flavor::C, Flavor::D] {
                for o in enumerate_orderings(n, flavor) {
                    let rel = relation(&o);
                    for k in 0..=n {
                        let sets = crate::ground::enumerate_admissible_sets(n, k).unwrap();
                        for &a in &sets {
                            for &b in &sets {
                                assert_eq!(
                                    o.gale_leq(a, b).unwrap(),
                                    oracle_leq(&rel, a, b),
                                    "{o} {a} {b}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn orderings_are_star_compatible_and_counted() {
        // Oracle: every linear order of the 2n elements, filtered by
        // `i ≺ j ⇒ j* ≺ i*`; D orderings are C orderings with the middle
        // relation forgotten.
        for n in 1..=3usize {
            let elems: Vec<SignedElement> = (1..=n)
                .flat_map(|i| [SignedElement::plain(i), SignedElement::starred(i)])
                .collect();
            let mut c_relations = HashSet::new();
            let mut d_relations = HashSet::new();
            for listing in elems.iter().copied().permutations(2 * n) {
                let pos = |e: SignedElement| listing.iter().position(|&x| x == e).unwrap();
                let ok = elems.iter().all(|&a| {
                    elems
                        .iter()
                        .all(|&b| pos(a) <= pos(b) || pos(b.star()) > pos(a.star()))
                });
                if !ok {
                    continue;
                }
                let mut rel: Vec<(SignedElement, SignedElement)> = Vec::new();
                for i in 0..2 * n {
                    for j in i + 1..2 * n {
                        rel.push((listing[j], listing[i]));
                    }
                }
                rel.sort();
                c_relations.insert(rel.clone());
                rel.retain(|&p| p != (listing[n], listing[n - 1]));
                d_relations.insert(rel);
            }
            let to_sorted = |o: &AdmissibleOrdering| {
                let mut v: Vec<_> = relation(o).into_iter().collect();
                v.sort();
                v
            };
            let c: HashSet<_> = enumerate_orderings(n, Flavor::C).map(|o| to_sorted(&o)).collect();
            let d: HashSet<_> = enumerate_orderings(n, Flavor::D).map(|o| to_sorted(&o)).collect();
            assert_eq!(c, c_relations);
            assert_eq!(d, d_relations);
            assert_eq!(2 * d.len(), c.len());
        }
    }

    #[test]
    fn every_c_ordering_has_admissible_top() {
        for o in enumerate_orderings(4, Flavor::C) {
            let listing = o.listing();
            let top = AdmissibleSet::from_elements(listing[..4].iter().copied()).unwrap();
            assert_eq!(top.len(), 4);
            for j in 0..4 {
                assert_eq!(listing[7 - j], listing[j].star());
            }
        }
    }

    #[test]
    fn action_on_orderings() {
        let g = SignedPermutation::from_images(vec![el("2*"), el("1")]).unwrap();
        let o = ord(Flavor::C, "1 2");
        let image = o.act(&g).unwrap();
        assert_eq!(image, ord(Flavor::C, "2* 1"));
        // Action transports the Gale order.
        for a in crate::ground::enumerate_admissible_sets(2, 1).unwrap() {
            for b in crate::ground::enumerate_admissible_sets(2, 1).unwrap() {
                assert_eq!(
                    o.gale_cmp(a, b).unwrap(),
                    image.gale_cmp(g.act_set(a), g.act_set(b)).unwrap()
                );
            }
        }
        // D_n acts simply transitively on D orderings.
        let n = 3;
        let base = AdmissibleOrdering::natural(n, Flavor::D);
        let images: HashSet<_> = SignedPermutation::all_even(n)
            .map(|g| base.act(&g).unwrap())
            .collect();
        assert_eq!(images.len(), enumerate_orderings(n, Flavor::D).count());
    }

    #[test]
    fn restriction_to_unsigned() {
        let o = ord(Flavor::D, "2* 3 1");
        let r = o.restrict_to_unsigned();
        assert_eq!(r.flavor(), Flavor::A);
        assert_eq!(r.to_string(), "3 > 1 > 2");
    }
}
