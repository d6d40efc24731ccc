//! Quotients of ordinary matroids and the map `Φ(B) = B ∪ ([n] ∖ B)*` into
//! Lagrangian orthogonal matroids.

use std::fmt;

use itertools::Itertools;

use crate::axioms::BasisCollection;
use crate::error::{Error, Result};
use crate::ground::{AdmissibleSet, SignedElement};
use crate::ordering::{enumerate_orderings, Flavor};
use crate::ordinary::{is_ordinary_matroid, max_basis, OrdinaryMatroid, UnsignedSet};
use crate::pairs::check_pair;

/// Ground sizes up to this bound are handled by subset enumeration.
const MAX_CIRCUIT_N: usize = 20;

/// The circuits of a matroid: minimal subsets contained in no basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircuitSet {
    n: usize,
    /// Sorted.
    circuits: Vec<UnsignedSet>,
}

impl CircuitSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn circuits(&self) -> &[UnsignedSet] {
        &self.circuits
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    /// Whether `set` is a union of circuits (the empty union included).
    pub fn is_union_of_circuits(&self, set: UnsignedSet) -> bool {
        let covered = self
            .circuits
            .iter()
            .filter(|c| c.is_subset(set))
            .fold(0u32, |m, c| m | c.mask());
        covered == set.mask()
    }
}

impl fmt::Display for CircuitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.circuits.iter().join(", "))
    }
}

/// Minimal dependent sets, by enumerating all subsets of `[n]`.
///
/// # Panics
///
/// If `n` exceeds 20.
pub fn circuits(m: &OrdinaryMatroid) -> CircuitSet {
    let n = m.n();
    assert!(n <= MAX_CIRCUIT_N, "circuit enumeration is limited to n ≤ {MAX_CIRCUIT_N}");
    let independent: Vec<bool> = (0u32..1 << n)
        .map(|s| m.is_independent(UnsignedSet::from_mask(s)))
        .collect();
    let circuits = (0u32..1 << n)
        .filter(|&s| {
            !independent[s as usize]
                && (0..n).all(|b| s >> b & 1 == 0 || independent[(s & !(1 << b)) as usize])
        })
        .map(UnsignedSet::from_mask)
        .sorted()
        .collect();
    CircuitSet { n, circuits }
}

fn same_ground(m1: &OrdinaryMatroid, m2: &OrdinaryMatroid) -> Result<()> {
    if m1.n() != m2.n() {
        return Err(Error::InvalidInput(format!(
            "ground sizes {} and {} differ",
            m1.n(),
            m2.n()
        )));
    }
    Ok(())
}

/// `M₂` is a quotient of `M₁`: every circuit of `M₁` is a union of circuits
/// of `M₂`.
pub fn is_quotient(m1: &OrdinaryMatroid, m2: &OrdinaryMatroid) -> Result<bool> {
    same_ground(m1, m2)?;
    let c2 = circuits(m2);
    Ok(circuits(m1).circuits().iter().all(|&c| c2.is_union_of_circuits(c)))
}

/// `M₂` is a quotient of `M₁` by the greedy criterion: for every linear
/// order of `[n]` the maximal basis of `M₂` lies inside that of `M₁`.
pub fn is_quotient_gale(m1: &OrdinaryMatroid, m2: &OrdinaryMatroid) -> Result<bool> {
    same_ground(m1, m2)?;
    for ord in enumerate_orderings(m1.n(), Flavor::A) {
        let (Some(b1), Some(b2)) = (max_basis(m1, &ord), max_basis(m2, &ord)) else {
            return Err(Error::InvalidInput(format!(
                "no unique maximal basis under {ord}; not a matroid"
            )));
        };
        if !b2.is_subset(b1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Φ(B) = B ∪ ([n] ∖ B)*`.
///
/// # Panics
///
/// If `B` is not a subset of `[n]`.
pub fn phi(b: UnsignedSet, n: usize) -> AdmissibleSet {
    assert!(b.max_index() <= n, "{b} is not a subset of [{n}]");
    AdmissibleSet::from_elements((1..=n).map(|i| SignedElement::new(i, !b.contains(i)).unwrap()))
        .expect("one of i, i* for each i")
}

/// `Φ(𝓑)`, a Lagrangian orthogonal matroid whenever `𝓑` is a matroid.
pub fn phi_matroid(m: &OrdinaryMatroid) -> Result<BasisCollection> {
    if !is_ordinary_matroid(m) {
        return Err(Error::InvalidInput(format!("{m} is not a matroid")));
    }
    BasisCollection::new(m.n(), m.bases().iter().map(|&b| phi(b, m.n())))
}

fn rank_gap_one(m1: &OrdinaryMatroid, m2: &OrdinaryMatroid) -> Result<()> {
    same_ground(m1, m2)?;
    if m1.rank() != m2.rank() + 1 {
        return Err(Error::InvalidInput(format!(
            "ranks {} and {} do not differ by one",
            m1.rank(),
            m2.rank()
        )));
    }
    Ok(())
}

/// Compares the circuit definition of "`M₂` is a quotient of `M₁`" with
/// the six-condition pair check on `Φ(M₁)`, `Φ(M₂)`. Returns whether they
/// agree; every condition of the report must match the quotient verdict.
pub fn quotient_pair_theorem_check(m1: &OrdinaryMatroid, m2: &OrdinaryMatroid) -> Result<bool> {
    rank_gap_one(m1, m2)?;
    let quotient = is_quotient(m1, m2)?;
    let report = check_pair(&phi_matroid(m1)?, &phi_matroid(m2)?)?;
    Ok(report.verdicts.iter().all(|&v| v == quotient))
}

/// The exchange characterization of elementary quotients: for all
/// `B₁ ∈ 𝓑₁`, `B₂ ∈ 𝓑₂` and `i ∈ B₁ △ B₂` either
/// (1) `B₁ △ {i} ∈ 𝓑₂` and `B₂ △ {i} ∈ 𝓑₁`, or
/// (2) some `j ∈ B₁ △ B₂`, `j ≠ i`, has `B₁ △ {i,j} ∈ 𝓑₁` and
/// `B₂ △ {i,j} ∈ 𝓑₂`;
/// and every pair `(B₁, B₂)` admits some `i` satisfying (1).
pub fn elementary_quotient_corollary_check(
    m1: &OrdinaryMatroid,
    m2: &OrdinaryMatroid,
) -> Result<bool> {
    rank_gap_one(m1, m2)?;
    let flip = |s: UnsignedSet, bits: u32| UnsignedSet::from_mask(s.mask() ^ bits);
    let case1 = |b1: UnsignedSet, b2: UnsignedSet, i: usize| {
        let bit = 1 << (i - 1);
        m2.contains(flip(b1, bit)) && m1.contains(flip(b2, bit))
    };
    let ok = m1.bases().iter().all(|&b1| {
        m2.bases().iter().all(|&b2| {
            let diff = b1.symmetric_difference(b2);
            let each = diff.iter().all(|i| {
                case1(b1, b2, i)
                    || diff.iter().filter(|&j| j != i).any(|j| {
                        let bits = 1 << (i - 1) | 1 << (j - 1);
                        m1.contains(flip(b1, bits)) && m2.contains(flip(b2, bits))
                    })
            });
            each && diff.iter().any(|i| case1(b1, b2, i))
        })
    });
    Ok(ok)
}
