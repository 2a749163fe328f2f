//! Exact nonnegative feasibility for small linear systems.
//!
//! Decides whether `A x = b, x >= 0` has a solution using the phase-one
//! simplex method over the rationals with Bland's rule, so the answer is exact
//! and the iteration always terminates.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::RatMatrix;

/// Returns some `x >= 0` with `a * x = b`, or `None` when no such `x` exists.
pub fn nonnegative_solution(a: &RatMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.rows();
    let vars = a.cols();
    assert_eq!(b.len(), rows, "right-hand side has wrong length");

    // Tableau columns: original variables, then one artificial per row, then rhs.
    let width = vars + rows + 1;
    let mut t = vec![BigRational::zero(); rows * width];
    for i in 0..rows {
        let flip = b[i].is_negative();
        for j in 0..vars {
            let x = a.get(i, j).clone();
            t[i * width + j] = if flip { -x } else { x };
        }
        t[i * width + vars + i] = BigRational::from_integer(1.into());
        t[i * width + width - 1] = if flip { -b[i].clone() } else { b[i].clone() };
    }
    let mut basis: Vec<usize> = (vars..vars + rows).collect();

    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost = vec![BigRational::zero(); width];
    for i in 0..rows {
        for j in 0..vars {
            cost[j] -= &t[i * width + j];
        }
        cost[width - 1] -= &t[i * width + width - 1];
    }

    while let Some(enter) = (0..vars + rows).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            let coef = &t[i * width + enter];
            if !coef.is_positive() {
                continue;
            }
            let ratio = &t[i * width + width - 1] / coef;
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so a leaving row always exists.
        let (r, _) = leave.expect("phase-one simplex cannot be unbounded");
        let inv = t[r * width + enter].recip();
        for j in 0..width {
            let x = &t[r * width + j] * &inv;
            t[r * width + j] = x;
        }
        for i in 0..rows {
            if i == r || t[i * width + enter].is_zero() {
                continue;
            }
            let factor = t[i * width + enter].clone();
            for j in 0..width {
                let delta = &factor * &t[r * width + j];
                t[i * width + j] -= delta;
            }
        }
        let factor = cost[enter].clone();
        for j in 0..width {
            let delta = &factor * &t[r * width + j];
            cost[j] -= delta;
        }
        basis[r] = enter;
    }

    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); vars];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < vars {
            x[bv] = t[i * width + width - 1].clone();
        }
    }
    Some(x)
}
