//! Totally isotropic subspaces of the orthogonal space `F^{2n}` and the
//! matroids they represent.
//!
//! The bilinear form is the hyperbolic one: columns are indexed
//! `1, …, n, 1*, …, n*` and `e_i` pairs with `e_{i*}`. Fields are `ℚ` and
//! `GF(p)` with `p` odd.

mod field;
mod matrix;

use rand::seq::SliceRandom;
use rand::Rng;

pub use field::{Field, PrimeField, Rationals};
pub use matrix::Matrix;

use crate::axioms::BasisCollection;
use crate::error::{Error, Result};
use crate::ground::{enumerate_admissible_sets, AdmissibleSet, SignedElement};
use crate::ordering::{AdmissibleOrdering, Flavor};
use crate::pairs::{check_pair, LagrangianPairReport};

/// Column of `e` in the `1, …, n, 1*, …, n*` layout.
pub fn column_of(e: SignedElement, n: usize) -> usize {
    e.index() - 1 + if e.is_starred() { n } else { 0 }
}

/// Inverse of [`column_of`].
pub fn element_of(col: usize, n: usize) -> SignedElement {
    SignedElement::new(col % n + 1, col >= n).expect("column within 2n")
}

/// The hyperbolic Gram matrix: `Q[i][i*] = Q[i*][i] = 1`, zero elsewhere.
pub fn gram_matrix<F: Field>(field: &F, n: usize) -> Matrix<F> {
    let mut q = Matrix::zeros(field.clone(), 2 * n, 2 * n);
    for i in 0..n {
        q[(i, n + i)] = field.one();
        q[(n + i, i)] = field.one();
    }
    q
}

/// `B(x, y) = x Q yᵀ = Σ x_i y_{i*} + x_{i*} y_i`.
pub fn bilinear<F: Field>(field: &F, n: usize, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
    (0..n).fold(field.zero(), |acc, i| {
        let a = field.mul(&x[i], &y[n + i]);
        let b = field.mul(&x[n + i], &y[i]);
        field.add(&acc, &field.add(&a, &b))
    })
}

/// `M·Q·Mᵀ = 0`. Errors unless `M` has `2n` columns and full row rank.
pub fn is_totally_isotropic<F: Field>(m: &Matrix<F>, n: usize) -> Result<bool> {
    if m.cols() != 2 * n {
        return Err(Error::InvalidInput(format!(
            "matrix has {} columns, expected 2n = {}",
            m.cols(),
            2 * n
        )));
    }
    if m.rank() != m.rows() {
        return Err(Error::InvalidInput(format!(
            "matrix with {} rows has rank {}",
            m.rows(),
            m.rank()
        )));
    }
    Ok(m.mul(&gram_matrix(m.field(), n)).mul(&m.transpose()).is_zero())
}

/// A full-rank `k × 2n` matrix with totally isotropic row space.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotropicMatrix<F: Field> {
    n: usize,
    matrix: Matrix<F>,
}

impl<F: Field> IsotropicMatrix<F> {
    pub fn new(n: usize, matrix: Matrix<F>) -> Result<Self> {
        if !is_totally_isotropic(&matrix, n)? {
            return Err(Error::InvalidInput("row space is not totally isotropic".into()));
        }
        Ok(Self { n, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the row space.
    pub fn k(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn field(&self) -> &F {
        self.matrix.field()
    }

    /// The same subspace with rows replaced by `g · rows`, `g` invertible.
    pub fn change_basis(&self, g: &Matrix<F>) -> Result<Self> {
        if g.rows() != self.k() || g.cols() != self.k() || g.rank() != self.k() {
            return Err(Error::InvalidInput("row change must be invertible k × k".into()));
        }
        Self::new(self.n, g.mul(&self.matrix))
    }
}

/// All admissible `k`-sets whose columns are linearly independent.
pub fn represented_matroid<F: Field>(m: &IsotropicMatrix<F>) -> BasisCollection {
    let (n, k) = (m.n, m.k());
    let bases = enumerate_admissible_sets(n, k)
        .expect("k ≤ n for a totally isotropic subspace")
        .into_iter()
        .filter(|s| {
            let cols: Vec<usize> = s.iter().map(|e| column_of(e, n)).collect();
            m.matrix.select_columns(&cols).rank() == k
        });
    BasisCollection::new(n, bases).expect("a full-rank matrix has a basis among admissible sets")
}

/// Pivot columns of the row-reduced matrix with columns listed in
/// decreasing order under `ord`. The two middle elements of a `D` ordering
/// are taken in listing order.
///
/// # Panics
///
/// If `ord` is a flavor-`A` ordering or orders a different ground size.
pub fn max_basis_by_pivots<F: Field>(
    m: &IsotropicMatrix<F>,
    ord: &AdmissibleOrdering,
) -> AdmissibleSet {
    let listing = ord.listing();
    max_basis_by_listing(m, &listing, ord)
}

fn max_basis_by_listing<F: Field>(
    m: &IsotropicMatrix<F>,
    listing: &[SignedElement],
    ord: &AdmissibleOrdering,
) -> AdmissibleSet {
    assert!(ord.flavor() != Flavor::A && ord.n() == m.n, "need a C or D ordering of [n]");
    let cols: Vec<usize> = listing.iter().map(|&e| column_of(e, m.n)).collect();
    let (_, pivots) = m.matrix.select_columns(&cols).rref();
    AdmissibleSet::from_elements(pivots.iter().map(|&p| listing[p]))
        .expect("independent columns of an isotropic space form an admissible set")
}

/// As [`max_basis_by_pivots`] but with the middle pair of a `D` ordering
/// swapped in the column listing.
pub fn max_basis_by_pivots_swapped<F: Field>(
    m: &IsotropicMatrix<F>,
    ord: &AdmissibleOrdering,
) -> AdmissibleSet {
    let mut listing = ord.listing();
    let n = m.n;
    if n > 0 {
        listing.swap(n - 1, n);
    }
    max_basis_by_listing(m, &listing, ord)
}

/// The two Lagrangian subspaces containing an `(n-1)`-dimensional totally
/// isotropic subspace `U`.
///
/// `U^⊥/U` is a hyperbolic plane; with `x, y` spanning a complement of `U`
/// in `U^⊥`, the isotropic lines are the roots of
/// `a s² + 2b st + c t²`, `a = B(x,x)`, `b = B(x,y)`, `c = B(y,y)`.
pub fn lagrangian_extensions<F: Field>(
    u: &IsotropicMatrix<F>,
) -> Result<(IsotropicMatrix<F>, IsotropicMatrix<F>)> {
    let n = u.n;
    let f = u.field().clone();
    if n == 0 || u.k() + 1 != n {
        return Err(Error::InvalidInput(format!(
            "need an (n-1)-dimensional subspace, got dimension {} with n = {n}",
            u.k()
        )));
    }
    let perp = u.matrix.mul(&gram_matrix(&f, n)).kernel();
    let mut spanned = u.matrix.clone();
    let mut complement: Vec<Vec<F::Elem>> = Vec::new();
    for i in 0..perp.rows() {
        let row = Matrix::from_rows(f.clone(), 2 * n, vec![perp.row(i).to_vec()])?;
        let grown = spanned.stack(&row);
        if grown.rank() > spanned.rows() {
            spanned = grown;
            complement.push(perp.row(i).to_vec());
        }
    }
    if complement.len() != 2 {
        return Err(Error::InvariantViolation(format!(
            "U^⊥/U has dimension {}, expected 2",
            complement.len()
        )));
    }
    let (x, y) = (&complement[0], &complement[1]);
    let a = bilinear(&f, n, x, x);
    let b = bilinear(&f, n, x, y);
    let c = bilinear(&f, n, y, y);
    let disc = f.sub(&f.mul(&b, &b), &f.mul(&a, &c));
    if f.is_zero(&disc) {
        return Err(Error::InvariantViolation("induced form is degenerate".into()));
    }
    let root = f.sqrt(&disc).ok_or(Error::NonSplitForm)?;
    let lines: [(F::Elem, F::Elem); 2] = if f.is_zero(&a) {
        [(f.one(), f.zero()), (f.neg(&c), f.add(&b, &b))]
    } else {
        let minus_b = f.neg(&b);
        [
            (f.add(&minus_b, &root), a.clone()),
            (f.sub(&minus_b, &root), a.clone()),
        ]
    };
    let extend = |(s, t): &(F::Elem, F::Elem)| -> Result<IsotropicMatrix<F>> {
        let v: Vec<F::Elem> = x
            .iter()
            .zip(y)
            .map(|(xi, yi)| f.add(&f.mul(s, xi), &f.mul(t, yi)))
            .collect();
        let row = Matrix::from_rows(f.clone(), 2 * n, vec![v])?;
        IsotropicMatrix::new(n, u.matrix.stack(&row))
    };
    Ok((extend(&lines[0])?, extend(&lines[1])?))
}

/// `dim(U₁ ∩ U₂)`.
pub fn intersection_dimension<F: Field>(u1: &IsotropicMatrix<F>, u2: &IsotropicMatrix<F>) -> usize {
    u1.k() + u2.k() - u1.matrix.stack(&u2.matrix).rank()
}

/// The matroids represented by a Lagrangian pair of subspaces, after
/// checking that both are Lagrangian and meet in dimension `n-1`.
pub fn represented_pair<F: Field>(
    u1: &IsotropicMatrix<F>,
    u2: &IsotropicMatrix<F>,
) -> Result<(BasisCollection, BasisCollection)> {
    let n = u1.n;
    if u2.n != n || u1.k() != n || u2.k() != n {
        return Err(Error::InvalidPairInput(
            "both subspaces must be Lagrangian in the same space".into(),
        ));
    }
    let d = intersection_dimension(u1, u2);
    if d + 1 != n {
        return Err(Error::InvalidPairInput(format!(
            "intersection has dimension {d}, expected n-1 = {}",
            n.saturating_sub(1)
        )));
    }
    Ok((represented_matroid(u1), represented_matroid(u2)))
}

/// Six-condition report on the matroids represented by a Lagrangian pair
/// of subspaces.
pub fn pair_representation_report<F: Field>(
    u1: &IsotropicMatrix<F>,
    u2: &IsotropicMatrix<F>,
) -> Result<LagrangianPairReport> {
    let (m1, m2) = represented_pair(u1, u2)?;
    check_pair(&m1, &m2)
}

/// Whether a Lagrangian pair of subspaces represents a Lagrangian pair of
/// matroids. Represented matroids that fail the standing hypotheses of a
/// pair count as `false`.
pub fn pair_representation_check<F: Field>(
    u1: &IsotropicMatrix<F>,
    u2: &IsotropicMatrix<F>,
) -> Result<bool> {
    let (m1, m2) = represented_pair(u1, u2)?;
    match check_pair(&m1, &m2) {
        Ok(report) => Ok(report.all_true()),
        Err(Error::InvalidPairInput(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn random_invertible<F: Field, R: Rng + ?Sized>(field: &F, k: usize, rng: &mut R) -> Matrix<F> {
    loop {
        let rows = (0..k)
            .map(|_| (0..k).map(|_| field.random_elem(rng)).collect())
            .collect();
        let g = Matrix::from_rows(field.clone(), k, rows).unwrap();
        if g.rank() == k {
            return g;
        }
    }
}

/// Grows a totally isotropic subspace one vector at a time, sampling from
/// `U^⊥` until the new vector is isotropic and independent of `U`.
/// Acceptance is roughly `1/p` per draw, so this is for finite fields.
fn grow_isotropic<F: Field, R: Rng + ?Sized>(
    field: &F,
    n: usize,
    k: usize,
    rng: &mut R,
) -> Matrix<F> {
    let mut u = Matrix::zeros(field.clone(), 0, 2 * n);
    while u.rows() < k {
        let perp = u.mul(&gram_matrix(field, n)).kernel();
        let coeffs: Vec<F::Elem> = (0..perp.rows()).map(|_| field.random_elem(rng)).collect();
        let v: Vec<F::Elem> = (0..2 * n)
            .map(|j| {
                coeffs.iter().enumerate().fold(field.zero(), |acc, (i, c)| {
                    field.add(&acc, &field.mul(c, &perp[(i, j)]))
                })
            })
            .collect();
        if !field.is_zero(&bilinear(field, n, &v, &v)) {
            continue;
        }
        let grown = u.stack(&Matrix::from_rows(field.clone(), 2 * n, vec![v]).unwrap());
        if grown.rank() == grown.rows() {
            u = grown;
        }
    }
    u
}

/// A random Lagrangian in a random coordinate chart: the row space of
/// `[I | S]` with `S` skew-symmetric, with a random set of coordinates
/// `i ↔ i*` exchanged, then cut down to `k` random combinations.
fn chart_isotropic<F: Field, R: Rng + ?Sized>(
    field: &F,
    n: usize,
    k: usize,
    rng: &mut R,
) -> Matrix<F> {
    let mut lag = Matrix::zeros(field.clone(), n, 2 * n);
    for i in 0..n {
        lag[(i, i)] = field.one();
        for j in i + 1..n {
            let s = field.random_elem(rng);
            lag[(j, n + i)] = field.neg(&s);
            lag[(i, n + j)] = s;
        }
    }
    let mut cols: Vec<usize> = (0..2 * n).collect();
    for i in 0..n {
        if rng.gen_bool(0.5) {
            cols.swap(i, n + i);
        }
    }
    let lag = lag.select_columns(&cols);
    loop {
        let rows = (0..k)
            .map(|_| (0..n).map(|_| field.random_elem(rng)).collect())
            .collect();
        let r = Matrix::from_rows(field.clone(), n, rows).unwrap();
        if r.rank() == k {
            return r.mul(&lag);
        }
    }
}

/// A random `k`-dimensional totally isotropic subspace of `F^{2n}`.
///
/// Finite fields use rejection sampling by isotropic growth; over `ℚ`,
/// where a random vector is almost never isotropic, a random Lagrangian
/// is drawn from a coordinate chart and cut down. Either way the rows are
/// finally mixed by a random invertible matrix and the columns by a random
/// permutation of the indices.
pub fn random_isotropic<F: Field, R: Rng + ?Sized>(
    field: &F,
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<IsotropicMatrix<F>> {
    if k > n {
        return Err(Error::InvalidRank(format!("isotropic dimension {k} exceeds n = {n}")));
    }
    let base = if field.is_finite() {
        grow_isotropic(field, n, k, rng)
    } else {
        chart_isotropic(field, n, k, rng)
    };
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let cols: Vec<usize> = perm.iter().copied().chain(perm.iter().map(|&i| n + i)).collect();
    let mixed = random_invertible(field, k, rng).mul(&base.select_columns(&cols));
    IsotropicMatrix::new(n, mixed)
}
