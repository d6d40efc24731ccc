//! Lagrangian pairs of Lagrangian orthogonal matroids.
//!
//! Two Lagrangian orthogonal matroids of opposite parity form a Lagrangian
//! pair when, for every `D_n`-admissible ordering, their maximal bases differ
//! by a single swap `{i, i*}`. This module checks that definition together
//! with five equivalent characterizations, and implements the constructions
//! around it: exploded sums, projections, star-swaps and unions.
//!
//! Conditions (5) and (6) compare pairs of bases under the product of the
//! Gale order. Read without restriction they always hold (the pair of maximal
//! bases is extremal), so the extremal pair is drawn from the pairs that are
//! themselves Lagrangian pairs of sets, i.e. the flags through a common
//! admissible `(n-1)`-set, and must dominate every pair in `𝓑₁ × 𝓑₂`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::axioms::{
    max_member, maximal_members, maximality_witness, BasisCollection,
};
use crate::error::{Error, Result};
use crate::ground::{AdmissibleSet, Parity, SignedElement};
use crate::ordering::{enumerate_orderings, AdmissibleOrdering, Flavor, GaleKey};
use crate::perm::SignedPermutation;

/// `A △ B = {i, i*}` for some `i`.
pub fn is_lagrangian_pair_of_sets(a: AdmissibleSet, b: AdmissibleSet) -> bool {
    let diff = a.mask() ^ b.mask();
    diff.count_ones() == 2 && diff.trailing_zeros() % 2 == 0 && diff >> diff.trailing_zeros() == 0b11
}

/// Which end of the Gale order the extremal pair of conditions (5)/(6) sits
/// at. Both orientations agree with the definition on every pair over
/// `[2]` and `[3]` (reversing a `D` ordering gives a `D` ordering), see the
/// calibration test; we use the maximal end like the rest of the theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairOrientation {
    Max,
    Min,
}

pub const PAIR_ORIENTATION: PairOrientation = PairOrientation::Max;

/// The six characterizations, in the order they are listed in the theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    Definition,
    Concordance,
    ExplodedSum,
    Intersections,
    UnorderedPair,
    OrderedPair,
}

impl Condition {
    pub const ALL: [Condition; 6] = [
        Condition::Definition,
        Condition::Concordance,
        Condition::ExplodedSum,
        Condition::Intersections,
        Condition::UnorderedPair,
        Condition::OrderedPair,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Condition::Definition => "cond1",
            Condition::Concordance => "cond2",
            Condition::ExplodedSum => "cond3",
            Condition::Intersections => "cond4",
            Condition::UnorderedPair => "cond5",
            Condition::OrderedPair => "cond6",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Condition::Definition => "maximal bases form a Lagrangian pair of sets",
            Condition::Concordance => "maximal bases lie in intersecting cosets",
            Condition::ExplodedSum => "exploded sum is a Lagrangian orthogonal matroid",
            Condition::Intersections => "(n-1)-intersections form a covering orthogonal matroid",
            Condition::UnorderedPair => "unique extremal unordered pair",
            Condition::OrderedPair => "unique extremal ordered pair",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Why a condition fails: the ordering where it breaks (if any) and the
/// bases involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub ordering: Option<AdmissibleOrdering>,
    pub bases: Vec<AdmissibleSet>,
    pub note: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.note)?;
        if let Some(o) = &self.ordering {
            write!(f, "; ordering {o}")?;
        }
        if !self.bases.is_empty() {
            let names: Vec<String> = self.bases.iter().map(ToString::to_string).collect();
            write!(f, "; bases {}", names.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangianPairReport {
    pub verdicts: [bool; 6],
    /// `Some` exactly for the failing conditions.
    pub witnesses: [Option<Witness>; 6],
}

impl LagrangianPairReport {
    pub fn verdict(&self, c: Condition) -> bool {
        self.verdicts[c as usize]
    }

    pub fn witness(&self, c: Condition) -> Option<&Witness> {
        self.witnesses[c as usize].as_ref()
    }

    /// All six verdicts coincide, as the equivalence theorem demands.
    pub fn consistent(&self) -> bool {
        self.verdicts.iter().all(|&v| v == self.verdicts[0])
    }

    pub fn all_true(&self) -> bool {
        self.verdicts.iter().all(|&v| v)
    }

    pub fn all_false(&self) -> bool {
        self.verdicts.iter().all(|&v| !v)
    }
}

/// Checks the standing hypotheses: two Lagrangian orthogonal matroids over
/// the same `[n]` with opposite parity.
pub fn validate_pair(b1: &BasisCollection, b2: &BasisCollection) -> Result<()> {
    if b1.n() != b2.n() {
        return Err(Error::InvalidPairInput(format!(
            "ground sizes {} and {} differ",
            b1.n(),
            b2.n()
        )));
    }
    for (name, b) in [("first", b1), ("second", b2)] {
        if b.rank() != b.n() {
            return Err(Error::InvalidPairInput(format!(
                "{name} collection has rank {} on [{}], expected full rank",
                b.rank(),
                b.n()
            )));
        }
        if let Some(w) = maximality_witness(b, Flavor::D) {
            return Err(Error::InvalidPairInput(format!(
                "{name} collection is not an orthogonal matroid (no unique maximum under {w})"
            )));
        }
    }
    let (p1, p2) = (b1.parity(), b2.parity());
    if p1.is_none() || p2.is_none() || p1 == p2 {
        return Err(Error::InvalidPairInput("parities are not opposite".into()));
    }
    Ok(())
}

fn maxima(
    b1: &BasisCollection,
    b2: &BasisCollection,
    ord: &AdmissibleOrdering,
) -> (AdmissibleSet, AdmissibleSet) {
    (
        max_member(b1, ord).expect("orthogonal matroid has a maximum"),
        max_member(b2, ord).expect("orthogonal matroid has a maximum"),
    )
}

fn definition(b1: &BasisCollection, b2: &BasisCollection) -> Option<Witness> {
    enumerate_orderings(b1.n(), Flavor::D).find_map(|ord| {
        let (m1, m2) = maxima(b1, b2, &ord);
        (!is_lagrangian_pair_of_sets(m1, m2)).then(|| Witness {
            note: "maximal bases are not a Lagrangian pair of sets".into(),
            ordering: Some(ord),
            bases: vec![m1, m2],
        })
    })
}

/// Condition (1): for every `D_n`-admissible ordering the maximal bases are
/// a Lagrangian pair of sets.
pub fn cond1_definition(b1: &BasisCollection, b2: &BasisCollection) -> Result<bool> {
    validate_pair(b1, b2)?;
    Ok(definition(b1, b2).is_none())
}

/// Pairs `(g[n], g{1,…,n-1,n*})` over `g ∈ D_n`: the (even, odd) coset
/// representatives `aP^n`, `bP^{n-1}` whose intersection is nonempty.
pub fn intersecting_cosets(n: usize) -> HashSet<(AdmissibleSet, AdmissibleSet)> {
    let even_base = AdmissibleSet::from_elements((1..=n).map(SignedElement::plain)).unwrap();
    let odd_base = if n == 0 {
        even_base
    } else {
        even_base
            .without(SignedElement::plain(n))
            .with(SignedElement::starred(n))
            .unwrap()
    };
    SignedPermutation::all_even(n)
        .map(|g| (g.act_set(even_base), g.act_set(odd_base)))
        .collect()
}

fn concordance(b1: &BasisCollection, b2: &BasisCollection) -> Option<Witness> {
    let n = b1.n();
    let cosets = intersecting_cosets(n);
    let (even, odd) = if b1.parity() == Some(Parity::Even) {
        (b1, b2)
    } else {
        (b2, b1)
    };
    // Each w ∈ D_n corresponds to the ordering w·(1 ≻ … ≻ n).
    SignedPermutation::all_even(n).find_map(|w| {
        let ord = AdmissibleOrdering::from_signed_permutation(&w, Flavor::D).unwrap();
        let (me, mo) = maxima(even, odd, &ord);
        (!cosets.contains(&(me, mo))).then(|| Witness {
            note: "matroid-map images are disjoint cosets".into(),
            ordering: Some(ord),
            bases: vec![me, mo],
        })
    })
}

/// Condition (2): `μ₁(w) ∩ μ₂(w) ≠ ∅` for all `w ∈ D_n`, with cosets of
/// `P^n` and `P^{n-1}` represented by their orbit points.
pub fn cond2_concordance(b1: &BasisCollection, b2: &BasisCollection) -> Result<bool> {
    validate_pair(b1, b2)?;
    Ok(concordance(b1, b2).is_none())
}

/// `(𝓑₁ + (n+1)) ∪ (𝓑₂ + (n+1)*)` on the ground set `[n+1]`.
pub fn exploded_sum(b1: &BasisCollection, b2: &BasisCollection) -> Result<BasisCollection> {
    if b1.n() != b2.n() || b1.rank() != b1.n() || b2.rank() != b2.n() {
        return Err(Error::InvalidPairInput(
            "exploded sum needs two full-rank collections over the same [n]".into(),
        ));
    }
    let (p1, p2) = (b1.parity(), b2.parity());
    if p1.is_none() || p2.is_none() || p1 == p2 {
        return Err(Error::InvalidPairInput("parities are not opposite".into()));
    }
    let n = b1.n();
    let top = SignedElement::plain(n + 1);
    let lifted = b1
        .bases()
        .iter()
        .map(|b| b.with(top))
        .chain(b2.bases().iter().map(|b| b.with(top.star())))
        .collect::<Result<Vec<_>>>()?;
    BasisCollection::new(n + 1, lifted)
}

fn exploded(b1: &BasisCollection, b2: &BasisCollection) -> Option<Witness> {
    let sum = exploded_sum(b1, b2).expect("validated pair");
    maximality_witness(&sum, Flavor::D).map(|ord| Witness {
        note: "exploded sum has no unique maximal basis".into(),
        bases: maximal_members(&sum, &ord),
        ordering: Some(ord),
    })
}

/// Condition (3): the exploded sum is a Lagrangian orthogonal matroid.
pub fn cond3_exploded(b1: &BasisCollection, b2: &BasisCollection) -> Result<bool> {
    validate_pair(b1, b2)?;
    Ok(exploded(b1, b2).is_none())
}

/// `𝓑₄`: the intersections `B₁ ∩ B₂` of size exactly `n - 1`.
pub fn intersection_collection(
    b1: &BasisCollection,
    b2: &BasisCollection,
) -> Option<BasisCollection> {
    let n = b1.n();
    let sets: Vec<AdmissibleSet> = b1
        .bases()
        .iter()
        .flat_map(|&x| b2.bases().iter().map(move |&y| x.intersection(y)))
        .filter(|s| s.len() + 1 == n)
        .collect();
    BasisCollection::new(n, sets).ok()
}

fn intersections(b1: &BasisCollection, b2: &BasisCollection) -> Option<Witness> {
    let Some(b4) = intersection_collection(b1, b2) else {
        return Some(Witness {
            ordering: None,
            bases: Vec::new(),
            note: "no intersection of size n-1".into(),
        });
    };
    if let Some(ord) = maximality_witness(&b4, Flavor::D) {
        return Some(Witness {
            note: "(n-1)-intersections have no unique maximum".into(),
            bases: maximal_members(&b4, &ord),
            ordering: Some(ord),
        });
    }
    b1.bases()
        .iter()
        .chain(b2.bases())
        .find(|&&b| !b4.bases().iter().any(|x| x.is_subset(b)))
        .map(|&b| Witness {
            ordering: None,
            bases: vec![b],
            note: "basis contains no (n-1)-intersection".into(),
        })
}

/// Condition (4): `𝓑₄` is an orthogonal matroid of rank `n-1` and every
/// basis of `𝓑₁ ∪ 𝓑₂` contains a member of it.
pub fn cond4_intersections(b1: &BasisCollection, b2: &BasisCollection) -> Result<bool> {
    validate_pair(b1, b2)?;
    Ok(intersections(b1, b2).is_none())
}

/// Candidate extremal pairs (flags) that dominate every pair of bases.
fn extremal_pairs(
    b1: &BasisCollection,
    b2: &BasisCollection,
    ord: &AdmissibleOrdering,
    unordered: bool,
    orientation: PairOrientation,
) -> Vec<(AdmissibleSet, AdmissibleSet)> {
    // Bases of 𝓑₁ take indices 0..n1, those of 𝓑₂ follow.
    let all: Vec<AdmissibleSet> = b1.bases().iter().chain(b2.bases()).copied().collect();
    let keys: Vec<GaleKey> = all.iter().map(|&s| ord.gale_key(s)).collect();
    let (n1, m) = (b1.len(), all.len());
    let leq: Vec<bool> = (0..m * m)
        .map(|t| {
            let (x, y) = match orientation {
                PairOrientation::Max => (t / m, t % m),
                PairOrientation::Min => (t % m, t / m),
            };
            matches!(
                ord.compare_keys(&keys[x], &keys[y]),
                Some(Ordering::Less | Ordering::Equal)
            )
        })
        .collect();
    let le = |x: usize, y: usize| leq[x * m + y];
    let mut out = Vec::new();
    for c1 in 0..n1 {
        for c2 in n1..m {
            if !is_lagrangian_pair_of_sets(all[c1], all[c2]) {
                continue;
            }
            let dominates = (0..n1).all(|a1| {
                (n1..m).all(|a2| {
                    let straight = le(a1, c1) && le(a2, c2);
                    straight || (unordered && le(a1, c2) && le(a2, c1))
                })
            });
            if dominates {
                out.push((all[c1], all[c2]));
            }
        }
    }
    out
}

fn unique_pair(
    b1: &BasisCollection,
    b2: &BasisCollection,
    unordered: bool,
    orientation: PairOrientation,
) -> Option<Witness> {
    enumerate_orderings(b1.n(), Flavor::D).find_map(|ord| {
        let found = extremal_pairs(b1, b2, &ord, unordered, orientation);
        (found.len() != 1).then(|| Witness {
            note: format!(
                "{} extremal {} pairs",
                found.len(),
                if unordered { "unordered" } else { "ordered" }
            ),
            bases: found.iter().flat_map(|&(x, y)| [x, y]).collect(),
            ordering: Some(ord),
        })
    })
}

/// Condition (5), with an explicit orientation; see [`PAIR_ORIENTATION`].
pub fn cond5_unordered_with(
    b1: &BasisCollection,
    b2: &BasisCollection,
    orientation: PairOrientation,
) -> Result<bool> {
    validate_pair(b1, b2)?;
    Ok(unique_pair(b1, b2, true, orientation).is_none())
}

/// Condition (6), with an explicit orientation; see [`PAIR_ORIENTATION`].
pub fn cond6_ordered_with(
    b1: &BasisCollection,
    b2: &BasisCollection,
    orientation: PairOrientation,
) -> Result<bool> {
    validate_pair(b1, b2)?;
    Ok(unique_pair(b1, b2, false, orientation).is_none())
}

/// Condition (5): for every ordering a unique unordered flag `{B₁, B₂}`
/// dominates every unordered pair of bases.
pub fn cond5_unordered(b1: &BasisCollection, b2: &BasisCollection) -> Result<bool> {
    cond5_unordered_with(b1, b2, PAIR_ORIENTATION)
}

/// Condition (6): for every ordering a unique flag `(B₁, B₂)` dominates
/// every pair of bases in the product order.
pub fn cond6_ordered(b1: &BasisCollection, b2: &BasisCollection) -> Result<bool> {
    cond6_ordered_with(b1, b2, PAIR_ORIENTATION)
}

/// Evaluates all six conditions, never stopping early.
pub fn check_pair(b1: &BasisCollection, b2: &BasisCollection) -> Result<LagrangianPairReport> {
    validate_pair(b1, b2)?;
    let witnesses = [
        definition(b1, b2),
        concordance(b1, b2),
        exploded(b1, b2),
        intersections(b1, b2),
        unique_pair(b1, b2, true, PAIR_ORIENTATION),
        unique_pair(b1, b2, false, PAIR_ORIENTATION),
    ];
    Ok(LagrangianPairReport {
        verdicts: witnesses.each_ref().map(Option::is_none),
        witnesses,
    })
}

/// `𝓑₁ ∪ 𝓑₂` for a verified Lagrangian pair.
pub fn union_matroid(b1: &BasisCollection, b2: &BasisCollection) -> Result<BasisCollection> {
    validate_pair(b1, b2)?;
    if let Some(w) = definition(b1, b2) {
        return Err(Error::InvalidPairInput(format!("not a Lagrangian pair: {w}")));
    }
    b1.union(b2)
}

/// Result of projecting away one index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    /// `{B ∖ {i} : i ∈ B}`, relabelled onto `[n-1]`.
    pub with_element: BasisCollection,
    /// `{B ∖ {i*} : i* ∈ B}`, relabelled onto `[n-1]`.
    pub with_star: BasisCollection,
    /// `relabel[j - 1]` is the original index of new index `j`.
    pub relabel: Vec<usize>,
}

/// Removes index `i` from a set that does not contain it, shifting higher
/// indices down by one.
fn drop_index(set: AdmissibleSet, i: usize) -> AdmissibleSet {
    let cut = 2 * (i - 1);
    let low = set.mask() & ((1u64 << cut) - 1);
    let high = set.mask() >> (cut + 2);
    AdmissibleSet::try_from_mask(low | high << cut).expect("shifting preserves admissibility")
}

/// Splits a Lagrangian collection along index `i` into the bases through
/// `i` and through `i*`, each with that element removed.
pub fn project(b: &BasisCollection, i: usize) -> Result<Projection> {
    let n = b.n();
    if i == 0 || i > n {
        return Err(Error::InvalidElement(format!("index {i} outside [{n}]")));
    }
    if b.rank() != n {
        return Err(Error::InvalidRank(format!(
            "projection needs rank n = {n}, got {}",
            b.rank()
        )));
    }
    let side = |e: SignedElement| -> Result<BasisCollection> {
        let sets: Vec<AdmissibleSet> = b
            .bases()
            .iter()
            .filter(|s| s.contains(e))
            .map(|&s| drop_index(s.without(e), i))
            .collect();
        if sets.is_empty() {
            return Err(Error::EmptyProjection(e.to_string()));
        }
        BasisCollection::new(n - 1, sets)
    };
    Ok(Projection {
        with_element: side(SignedElement::plain(i))?,
        with_star: side(SignedElement::starred(i))?,
        relabel: (1..=n).filter(|&j| j != i).collect(),
    })
}

/// `(i, i*)𝓑`, the elementwise star-swap at `i`.
pub fn transposition_pair(b: &BasisCollection, i: usize) -> Result<BasisCollection> {
    b.act(&SignedPermutation::star_swap(b.n(), i)?)
}
