//! Signed permutations: permutations of `[n] ∪ [n]*` commuting with the star.
//!
//! These form the hyperoctahedral group `C_n`; the elements with an even
//! number of sign changes form `D_n`.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ground::{AdmissibleSet, SignedElement, MAX_N};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    /// `images[i - 1]` is the image of the unstarred element `i`.
    images: Vec<SignedElement>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).map(SignedElement::plain).collect(),
        }
    }

    /// Builds the permutation sending `i ↦ images[i-1]` (and `i* ↦ images[i-1]*`).
    pub fn from_images(images: Vec<SignedElement>) -> Result<Self> {
        let n = images.len();
        if n > MAX_N {
            return Err(Error::InvalidInput(format!("ground size {n} exceeds {MAX_N}")));
        }
        let mut seen = vec![false; n];
        for e in &images {
            if e.index() > n || std::mem::replace(&mut seen[e.index() - 1], true) {
                return Err(Error::InvalidInput(format!(
                    "images {} do not define a signed permutation of [{n}]",
                    images.iter().join(" ")
                )));
            }
        }
        Ok(Self { images })
    }

    /// Builds a permutation from disjoint cycles in cycle notation, e.g.
    /// `(1,2*)(1*,2)`. The result must commute with the star.
    pub fn from_cycles(n: usize, cycles: &[&[SignedElement]]) -> Result<Self> {
        let mut map: Vec<SignedElement> = (1..=n)
            .flat_map(|i| [SignedElement::plain(i), SignedElement::starred(i)])
            .collect();
        let slot = |e: SignedElement| 2 * (e.index() - 1) + e.is_starred() as usize;
        let mut touched = vec![false; 2 * n];
        for cycle in cycles {
            for (pos, &e) in cycle.iter().enumerate() {
                if e.index() > n || std::mem::replace(&mut touched[slot(e)], true) {
                    return Err(Error::InvalidInput(format!(
                        "cycles are not disjoint permutations of [{n}] ∪ [{n}]*"
                    )));
                }
                map[slot(e)] = cycle[(pos + 1) % cycle.len()];
            }
        }
        for i in 1..=n {
            let plain = map[slot(SignedElement::plain(i))];
            let starred = map[slot(SignedElement::starred(i))];
            if starred != plain.star() {
                return Err(Error::InvalidInput(format!(
                    "cycles do not commute with the star at {i}"
                )));
            }
        }
        Self::from_images((1..=n).map(|i| map[slot(SignedElement::plain(i))]).collect())
    }

    /// The transposition `(i, i*)`, a sign change at `i`.
    pub fn star_swap(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::InvalidElement(format!("index {i} outside [{n}]")));
        }
        let mut g = Self::identity(n);
        g.images[i - 1] = SignedElement::starred(i);
        Ok(g)
    }

    /// The Coxeter generators `s_1, ..., s_n` of `D_n`:
    /// `s_j = (j, j+1)(j*, (j+1)*)` for `j < n` and `s_n = (n-1, n*)((n-1)*, n)`.
    pub fn d_generators(n: usize) -> Vec<Self> {
        if n < 2 {
            return Vec::new();
        }
        let mut gens = Vec::with_capacity(n);
        for j in 1..n {
            let mut g = Self::identity(n);
            g.images.swap(j - 1, j);
            gens.push(g);
        }
        let mut last = Self::identity(n);
        last.images[n - 2] = SignedElement::starred(n);
        last.images[n - 1] = SignedElement::starred(n - 1);
        gens.push(last);
        gens
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[SignedElement] {
        &self.images
    }

    /// Image of an element; indices beyond `n` are fixed.
    pub fn apply(&self, e: SignedElement) -> SignedElement {
        match self.images.get(e.index() - 1) {
            Some(&img) if e.is_starred() => img.star(),
            Some(&img) => img,
            None => e,
        }
    }

    pub fn act_set(&self, set: AdmissibleSet) -> AdmissibleSet {
        let mask = set.iter().fold(0u64, |m, e| m | self.apply(e).bit());
        AdmissibleSet::try_from_mask(mask).expect("signed permutations preserve admissibility")
    }

    /// `self ∘ other`: apply `other` first.
    #[must_use]
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.n().max(other.n());
        Self {
            images: (1..=n)
                .map(|i| self.apply(other.apply(SignedElement::plain(i))))
                .collect(),
        }
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        let mut images = vec![SignedElement::plain(1); self.n()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img.index() - 1] = SignedElement::new(i + 1, img.is_starred()).unwrap();
        }
        Self { images }
    }

    pub fn sign_changes(&self) -> usize {
        self.images.iter().filter(|e| e.is_starred()).count()
    }

    /// Membership in `D_n`.
    pub fn is_even(&self) -> bool {
        self.sign_changes() % 2 == 0
    }

    /// All `2^n·n!` signed permutations of `[n]`.
    pub fn all(n: usize) -> impl Iterator<Item = Self> {
        (1..=n).permutations(n).flat_map(move |perm| {
            (0u64..1 << n).map(move |signs| Self {
                images: perm
                    .iter()
                    .enumerate()
                    .map(|(pos, &i)| SignedElement::new(i, (signs >> pos) & 1 == 1).unwrap())
                    .collect(),
            })
        })
    }

    /// The `2^(n-1)·n!` elements of `D_n`.
    pub fn all_even(n: usize) -> impl Iterator<Item = Self> {
        Self::all(n).filter(Self::is_even)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().join(" "))
    }
}
