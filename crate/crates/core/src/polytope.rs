//! The geometric side: δ-vectors of admissible sets, the root systems `C_n`
//! and `D_n`, exact edge detection on the convex hull of a collection, and
//! the edge-parallelism matroid test.
//!
//! Edge test: for distinct vertices `u, v` with `d = u - v`, the segment
//! `[u, v]` is an edge iff the line through `u` and `v` misses the convex hull
//! of the remaining vertices. This is decided as exact feasibility of
//! `Σ λ_w (w - u) = t·d, Σ λ_w = 1, λ ≥ 0`, the linear-programming dual of
//! finding a functional maximized exactly on `{u, v}`.

use std::fmt;

use itertools::Itertools;

use crate::axioms::BasisCollection;
use crate::error::{Error, Result};
use crate::ground::AdmissibleSet;
use crate::lp;
use crate::ordering::Flavor;

/// `δ_B = Σ_{j ∈ B} ε_j` with `ε_{i*} = -ε_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeltaVector(Vec<i8>);

impl DeltaVector {
    pub fn coords(&self) -> &[i8] {
        &self.0
    }
}

impl fmt::Display for DeltaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(", "))
    }
}

pub fn delta_vector(set: AdmissibleSet, n: usize) -> DeltaVector {
    let mut coords = vec![0i8; n.max(set.max_index())];
    for e in set.iter() {
        coords[e.index() - 1] = if e.is_starred() { -1 } else { 1 };
    }
    DeltaVector(coords)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root(Vec<i8>);

impl Root {
    pub fn coords(&self) -> &[i8] {
        &self.0
    }
}

/// `D_n`: the `2n(n-1)` vectors `±ε_a ± ε_b` with `a ≠ b`.
/// `C_n`: those together with the `2n` long roots `±2ε_j`.
pub fn roots(n: usize, flavor: Flavor) -> Result<Vec<Root>> {
    if flavor == Flavor::A {
        return Err(Error::InvalidInput("roots are defined for flavors C and D".into()));
    }
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0i8; n];
                v[a] = sa;
                v[b] = sb;
                out.push(Root(v));
            }
        }
    }
    if flavor == Flavor::C {
        for j in 0..n {
            for s in [2, -2] {
                let mut v = vec![0i8; n];
                v[j] = s;
                out.push(Root(v));
            }
        }
    }
    Ok(out)
}

/// `d = λ r` for a single nonzero rational `λ`, tested by vanishing
/// 2×2 minors.
pub fn is_parallel(d: &[i64], r: &Root) -> bool {
    let r = r.coords();
    if d.len() != r.len() || d.iter().all(|&x| x == 0) {
        return false;
    }
    (0..d.len()).all(|i| (i + 1..d.len()).all(|j| d[i] * r[j] as i64 == d[j] * r[i] as i64))
        && d.iter().zip(r).all(|(&x, &y)| (x == 0) == (y == 0))
}

/// Whether `d` is parallel to some root of the flavor. Equivalent to
/// scanning [`roots`], but closed-form.
pub fn is_root_direction(d: &[i64], flavor: Flavor) -> bool {
    let support: Vec<i64> = d.iter().copied().filter(|&x| x != 0).collect();
    match support.as_slice() {
        [_] => flavor == Flavor::C,
        [x, y] => x.abs() == y.abs(),
        _ => false,
    }
}

/// The vertex set `{δ_B : B ∈ 𝓑}` with its labels.
#[derive(Debug, Clone)]
pub struct Polytope {
    n: usize,
    vertices: Vec<DeltaVector>,
    labels: Vec<AdmissibleSet>,
}

impl Polytope {
    pub fn from_collection(c: &BasisCollection) -> Self {
        let n = c.n();
        Self {
            n,
            vertices: c.bases().iter().map(|&b| delta_vector(b, n)).collect(),
            labels: c.bases().to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[DeltaVector] {
        &self.vertices
    }

    pub fn labels(&self) -> &[AdmissibleSet] {
        &self.labels
    }

    fn difference(&self, i: usize, j: usize) -> Vec<i64> {
        self.vertices[i]
            .0
            .iter()
            .zip(&self.vertices[j].0)
            .map(|(&a, &b)| (a - b) as i64)
            .collect()
    }

    /// Whether vertices `i ≠ j` span a 1-dimensional face.
    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        assert!(i != j, "an edge needs two distinct vertices");
        let u = &self.vertices[i].0;
        let d = self.difference(i, j);
        let others: Vec<usize> = (0..self.vertices.len()).filter(|&w| w != i && w != j).collect();
        if others.is_empty() {
            return true;
        }
        // Variables: λ_w for each other vertex, then t⁺ and t⁻.
        let mut a: Vec<Vec<i64>> = (0..self.n)
            .map(|c| {
                let mut row: Vec<i64> = others
                    .iter()
                    .map(|&w| (self.vertices[w].0[c] - u[c]) as i64)
                    .collect();
                row.push(-d[c]);
                row.push(d[c]);
                row
            })
            .collect();
        let mut sum_row = vec![1i64; others.len()];
        sum_row.extend([0, 0]);
        a.push(sum_row);
        let mut b = vec![0i64; self.n];
        b.push(1);
        !lp::feasible(&a, &b)
    }

    /// All edges as index pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertices.len())
            .tuple_combinations()
            .filter(|&(i, j)| self.is_edge(i, j))
            .collect()
    }

    /// An edge not parallel to any root of the flavor, if one exists. Pairs
    /// whose direction is already a root direction are not tested for
    /// being edges.
    pub fn non_root_edge(&self, flavor: Flavor) -> Option<(usize, usize)> {
        (0..self.vertices.len())
            .tuple_combinations()
            .filter(|&(i, j)| !is_root_direction(&self.difference(i, j), flavor))
            .find(|&(i, j)| self.is_edge(i, j))
    }
}

/// Gelfand–Serganova criterion: every edge of the δ-polytope is parallel to
/// a root of the flavor (`C` for symplectic, `D` for orthogonal).
pub fn gs_is_matroid(c: &BasisCollection, flavor: Flavor) -> bool {
    assert!(flavor != Flavor::A, "flavor must be C or D");
    Polytope::from_collection(c).non_root_edge(flavor).is_none()
}

/// The offending edge, as a pair of bases, when [`gs_is_matroid`] fails.
pub fn gs_witness(c: &BasisCollection, flavor: Flavor) -> Option<(AdmissibleSet, AdmissibleSet)> {
    let p = Polytope::from_collection(c);
    p.non_root_edge(flavor).map(|(i, j)| (p.labels[i], p.labels[j]))
}
