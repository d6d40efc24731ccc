//! The signed ground set `[n] ∪ [n]*` and its admissible subsets.
//!
//! Element `i` is stored at bit `2(i-1)` of a mask and `i*` at bit `2(i-1)+1`,
//! so the star involution is a flip of the low bit and admissibility is a
//! single mask test.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Largest supported ground size; masks are 64 bits wide.
pub const MAX_N: usize = 32;

const UNSTARRED_BITS: u64 = 0x5555_5555_5555_5555;

/// An element `i` or `i*` of the signed ground set. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedElement {
    index: u8,
    starred: bool,
}

impl SignedElement {
    pub fn new(index: usize, starred: bool) -> Result<Self> {
        if index == 0 || index > MAX_N {
            return Err(Error::InvalidElement(format!(
                "index {index} outside 1..={MAX_N}"
            )));
        }
        Ok(Self {
            index: index as u8,
            starred,
        })
    }

    pub fn plain(index: usize) -> Self {
        Self::new(index, false).expect("index in range")
    }

    pub fn starred(index: usize) -> Self {
        Self::new(index, true).expect("index in range")
    }

    /// Decodes a bit position of the mask encoding.
    pub(crate) fn from_code(code: u32) -> Self {
        Self {
            index: (code / 2 + 1) as u8,
            starred: code % 2 == 1,
        }
    }

    pub(crate) fn code(self) -> u32 {
        2 * (self.index as u32 - 1) + self.starred as u32
    }

    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn is_starred(self) -> bool {
        self.starred
    }

    /// The involution `i ↦ i*`, `i* ↦ i`.
    #[must_use]
    pub fn star(self) -> Self {
        Self {
            index: self.index,
            starred: !self.starred,
        }
    }

    pub(crate) fn bit(self) -> u64 {
        1 << self.code()
    }
}

impl fmt::Display for SignedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.starred {
            write!(f, "{}*", self.index)
        } else {
            write!(f, "{}", self.index)
        }
    }
}

impl FromStr for SignedElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (digits, starred) = match s.strip_suffix('*') {
            Some(rest) => (rest, true),
            None => (s, false),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidElement(format!("cannot parse `{s}`")));
        }
        let index: usize = digits
            .parse()
            .map_err(|_| Error::InvalidElement(format!("cannot parse `{s}`")))?;
        Self::new(index, starred)
    }
}

/// Parity of the number of starred elements in a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    #[must_use]
    pub fn opposite(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn of_count(count: usize) -> Self {
        if count % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// `true` iff the mask contains no element together with its star.
pub(crate) fn mask_is_admissible(mask: u64) -> bool {
    mask & (mask >> 1) & UNSTARRED_BITS == 0
}

/// Elements in the order of their bit codes: `1, 1*, 2, 2*, ...`.
pub(crate) fn mask_elements(mask: u64) -> impl Iterator<Item = SignedElement> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let code = rest.trailing_zeros();
        rest &= rest - 1;
        Some(SignedElement::from_code(code))
    })
}

/// Returns `true` iff no element of `elements` appears together with its star.
pub fn is_admissible(elements: &[SignedElement]) -> bool {
    let mask = elements.iter().fold(0u64, |m, e| m | e.bit());
    mask_is_admissible(mask)
}

/// A subset `K` of `[n] ∪ [n]*` with `K ∩ K* = ∅`.
///
/// The ground size is not stored; collections carry it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AdmissibleSet(u64);

impl AdmissibleSet {
    pub const EMPTY: Self = Self(0);

    pub fn try_from_mask(mask: u64) -> Result<Self> {
        if mask_is_admissible(mask) {
            Ok(Self(mask))
        } else {
            Err(Error::NotAdmissible(format_mask(mask)))
        }
    }

    /// Builds a set from elements. Repeated elements are rejected, as is any
    /// element appearing together with its star.
    pub fn from_elements<I: IntoIterator<Item = SignedElement>>(elements: I) -> Result<Self> {
        let mut mask = 0u64;
        for e in elements {
            if mask & e.bit() != 0 {
                return Err(Error::NotAdmissible(format!("{e} repeated")));
            }
            mask |= e.bit();
        }
        Self::try_from_mask(mask)
    }

    /// Parses the compact notation used throughout the tests,
    /// e.g. `"12*3"`. Only single-digit indices are supported.
    pub fn parse_compact(s: &str) -> Result<Self> {
        let mut elems = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            let d = c
                .to_digit(10)
                .ok_or_else(|| Error::InvalidElement(format!("cannot parse `{s}`")))?;
            let starred = chars.next_if_eq(&'*').is_some();
            elems.push(SignedElement::new(d as usize, starred)?);
        }
        Self::from_elements(elems)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: SignedElement) -> bool {
        self.0 & e.bit() != 0
    }

    pub fn iter(self) -> impl Iterator<Item = SignedElement> {
        mask_elements(self.0)
    }

    /// `K*`, the elementwise star.
    #[must_use]
    pub fn star(self) -> Self {
        let plain = self.0 & UNSTARRED_BITS;
        let starred = self.0 & !UNSTARRED_BITS;
        Self((plain << 1) | (starred >> 1))
    }

    /// Adds `e`, failing if `e*` is already present.
    pub fn with(self, e: SignedElement) -> Result<Self> {
        Self::try_from_mask(self.0 | e.bit())
    }

    #[must_use]
    pub fn without(self, e: SignedElement) -> Self {
        Self(self.0 & !e.bit())
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[must_use]
    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    /// Raw symmetric difference; the result need not be admissible.
    pub fn symmetric_difference_mask(self, other: Self) -> u64 {
        self.0 ^ other.0
    }

    /// Largest index occurring in the set, or 0 for the empty set.
    pub fn max_index(self) -> usize {
        if self.0 == 0 {
            0
        } else {
            (63 - self.0.leading_zeros() as usize) / 2 + 1
        }
    }

    pub fn star_count(self) -> usize {
        (self.0 & !UNSTARRED_BITS).count_ones() as usize
    }

    pub fn parity(self) -> Parity {
        Parity::of_count(self.star_count())
    }
}

impl fmt::Display for AdmissibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_mask(self.0))
    }
}

pub(crate) fn format_mask(mask: u64) -> String {
    format!("{{{}}}", mask_elements(mask).join(" "))
}

/// All admissible `k`-subsets of `[n] ∪ [n]*`; there are `C(n,k)·2^k` of them.
pub fn enumerate_admissible_sets(n: usize, k: usize) -> Result<Vec<AdmissibleSet>> {
    if n > MAX_N {
        return Err(Error::InvalidRank(format!("ground size {n} exceeds {MAX_N}")));
    }
    if k > n {
        return Err(Error::InvalidRank(format!("k = {k} exceeds n = {n}")));
    }
    let mut out = Vec::new();
    for indices in (0..n).combinations(k) {
        for signs in 0u64..(1 << k) {
            let mask = indices
                .iter()
                .enumerate()
                .fold(0u64, |m, (pos, &i)| m | 1 << (2 * i + ((signs >> pos) & 1) as usize));
            out.push(AdmissibleSet(mask));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> AdmissibleSet {
        AdmissibleSet::parse_compact(text).unwrap()
    }

    #[test]
    fn star_is_fixed_point_free_involution() {
        let two = SignedElement::plain(2);
        assert_eq!(two.star(), SignedElement::starred(2));
        assert_eq!(SignedElement::starred(2).star(), two);
        let seven = SignedElement::plain(7);
        assert_eq!(seven.star().star(), seven);
        for i in 1..=MAX_N {
            for starred in [false, true] {
                let e = SignedElement::new(i, starred).unwrap();
                assert_ne!(e.star(), e);
                assert_eq!(e.star().star(), e);
            }
        }
    }

    #[test]
    fn admissibility_examples() {
        let one = SignedElement::plain(1);
        let two_star = SignedElement::starred(2);
        assert!(is_admissible(&[one, two_star]));
        assert!(!is_admissible(&[one, one.star()]));
        assert!(is_admissible(&[]));
    }

    #[test]
    fn compact_notation_and_display() {
        let a = s("12*3");
        assert_eq!(a.len(), 3);
        assert_eq!(a.to_string(), "{1 2* 3}");
        assert_eq!(a.star(), s("1*23*"));
        assert_eq!(AdmissibleSet::EMPTY.to_string(), "{}");
        assert!(AdmissibleSet::parse_compact("11*").is_err());
        assert!(AdmissibleSet::parse_compact("112").is_err());
    }

    #[test]
    fn element_parsing() {
        assert_eq!("3*".parse::<SignedElement>().unwrap(), SignedElement::starred(3));
        assert_eq!("12".parse::<SignedElement>().unwrap(), SignedElement::plain(12));
        assert!("*".parse::<SignedElement>().is_err());
        assert!("0".parse::<SignedElement>().is_err());
        assert!("2**".parse::<SignedElement>().is_err());
    }

    #[test]
    fn parity_counts_stars() {
        assert_eq!(s("123").parity(), Parity::Even);
        assert_eq!(s("12*3").parity(), Parity::Odd);
        assert_eq!(s("1*2*3*").parity(), Parity::Odd);
    }

    #[test]
    fn enumeration_counts() {
        let two_two = enumerate_admissible_sets(2, 2).unwrap();
        let mut expected = vec![s("12"), s("12*"), s("1*2"), s("1*2*")];
        expected.sort();
        let mut got = two_two.clone();
        got.sort();
        assert_eq!(got, expected);
        assert_eq!(enumerate_admissible_sets(3, 3).unwrap().len(), 8);
        assert!(enumerate_admissible_sets(2, 3).is_err());
    }

    #[test]
    fn enumeration_matches_filtered_brute_force() {
        // Oracle: every k-subset of the 2n codes, filtered by admissibility.
        for n in 0..=4usize {
            for k in 0..=n {
                let mut brute: Vec<u64> = (0..2 * n)
                    .combinations(k)
                    .map(|c| c.iter().fold(0u64, |m, &b| m | 1 << b))
                    .filter(|&m| mask_is_admissible(m))
                    .collect();
                brute.sort();
                let mut got: Vec<u64> = enumerate_admissible_sets(n, k)
                    .unwrap()
                    .into_iter()
                    .map(AdmissibleSet::mask)
                    .collect();
                got.sort();
                assert_eq!(got, brute, "n={n} k={k}");
            }
        }
        // (3, 2): frozen from the oracle above.
        assert_eq!(enumerate_admissible_sets(3, 2).unwrap().len(), 12);
    }

    #[test]
    fn max_index() {
        assert_eq!(s("12*3").max_index(), 3);
        assert_eq!(s("1*").max_index(), 1);
        assert_eq!(AdmissibleSet::EMPTY.max_index(), 0);
    }
}
