//! Exact phase-one simplex over the rationals.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

type Q = Ratio<i128>;

/// Decides whether `A x = b, x ≥ 0` has a solution.
///
/// Phase one with artificial variables and Bland's rule, so it terminates
/// without cycling. Entries stay small for the point sets used here
/// (bounded by subdeterminants of the input).
pub fn feasible(a: &[Vec<i64>], b: &[i64]) -> bool {
    let rows = a.len();
    if rows == 0 {
        return true;
    }
    let vars = a[0].len();
    let cols = vars + rows;
    // tableau[i] = [A | I | b], rows sign-normalized so that b ≥ 0.
    let mut tableau: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, &rhs))| {
            let sign = if rhs < 0 { -1 } else { 1 };
            let mut r: Vec<Q> = row.iter().map(|&v| Q::from_integer((sign * v) as i128)).collect();
            r.extend((0..rows).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r.push(Q::from_integer((sign * rhs) as i128));
            r
        })
        .collect();
    let mut basis: Vec<usize> = (vars..cols).collect();
    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost: Vec<Q> = (0..=cols)
        .map(|j| {
            if (vars..cols).contains(&j) {
                Q::zero()
            } else {
                -tableau.iter().map(|r| r[j]).sum::<Q>()
            }
        })
        .collect();

    loop {
        let Some(enter) = (0..cols).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<usize> = None;
        for i in 0..rows {
            if !tableau[i][enter].is_positive() {
                continue;
            }
            let ratio = tableau[i][cols] / tableau[i][enter];
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let best = tableau[l][cols] / tableau[l][enter];
                    if ratio < best || (ratio == best && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        // The phase-one objective is bounded below by zero.
        let leave = leave.expect("phase one is bounded");
        let pivot = tableau[leave][enter];
        for v in tableau[leave].iter_mut() {
            *v /= pivot;
        }
        let pivot_row = tableau[leave].clone();
        for (i, row) in tableau.iter_mut().enumerate() {
            if i == leave || row[enter].is_zero() {
                continue;
            }
            let factor = row[enter];
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= factor * p;
            }
        }
        let factor = cost[enter];
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            *v -= factor * p;
        }
        basis[leave] = enter;
    }
    // cost[cols] holds minus the objective value.
    cost[cols].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_systems() {
        // x + y = 1
        assert!(feasible(&[vec![1, 1]], &[1]));
        // x + y = -1 with x, y ≥ 0
        assert!(!feasible(&[vec![1, 1]], &[-1]));
        // x - y = 0, x + y = 2
        assert!(feasible(&[vec![1, -1], vec![1, 1]], &[0, 2]));
        // x = 1, x = 2
        assert!(!feasible(&[vec![1], vec![1]], &[1, 2]));
        // redundant rows
        assert!(feasible(&[vec![1, 2], vec![2, 4]], &[3, 6]));
        assert!(feasible(&[], &[]));
    }

    #[test]
    fn convex_hull_membership() {
        // Is (0,0) a convex combination of (1,1), (-1,1), (0,-1)?
        let pts = [(1, 1), (-1, 1), (0, -1)];
        let a = vec![
            pts.iter().map(|p| p.0).collect::<Vec<i64>>(),
            pts.iter().map(|p| p.1).collect(),
            vec![1, 1, 1],
        ];
        assert!(feasible(&a, &[0, 0, 1]));
        assert!(!feasible(&a, &[0, 2, 1]));
    }
}
