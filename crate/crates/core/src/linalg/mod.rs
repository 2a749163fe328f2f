//! Exact integer and rational linear algebra.
//!
//! Everything here works on arbitrary-precision entries; nothing rounds.
//! Empty matrices are legal inputs everywhere.

mod feasibility;
mod group;
mod matrix;
mod snf;

pub use feasibility::nonnegative_solution;
pub use group::AbelianGroup;
pub use matrix::{IntMatrix, RatMatrix};
pub use snf::{smith_normal_form, SnfFactorization};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The cokernel `Z^rows / M Z^cols` as free rank plus invariant factors.
pub fn cokernel_invariants(m: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(m);
    let torsion = snf.nonzero_factors().into_iter().filter(|d| !d.is_one()).collect();
    AbelianGroup {
        free_rank: m.rows() - snf.rank(),
        torsion,
    }
}

/// A Z-basis of `{x : M x = 0}`, one basis vector per column.
///
/// The basis is saturated: it spans the full kernel lattice, not a
/// finite-index sublattice.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let free: Vec<usize> = (snf.rank()..m.cols()).collect();
    snf.right.select_columns(&free)
}

/// Rank over the rationals (equivalently, the number of nonzero SNF entries).
pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

/// One exact solution of `M x = b` over Q, or `None` if the system is inconsistent.
pub fn solve_rational(m: &RatMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(b.len(), m.rows(), "right-hand side has wrong length");
    let mut aug = RatMatrix::zeros(m.rows(), m.cols() + 1);
    for (i, bi) in b.iter().enumerate() {
        for j in 0..m.cols() {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols(), bi.clone());
    }
    let (rref, pivots) = aug.row_echelon();
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); m.cols()];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rref.get(r, m.cols()).clone();
    }
    Some(x)
}

/// The unique solution of a square nonsingular system, `None` if singular.
pub fn solve_unique(m: &RatMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    if m.rows() != m.cols() {
        return None;
    }
    let inv = m.inverse()?;
    Some(inv.mul_vec(b))
}

/// One integer solution of `M x = v`, or `None` if `v` is outside the integer
/// column span of `M`.
pub fn solve_integer(m: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(v.len(), m.rows(), "right-hand side has wrong length");
    let snf = smith_normal_form(m);
    solve_with_snf(&snf, v)
}

/// Same as [`solve_integer`] with a precomputed factorization of `M`.
pub fn solve_with_snf(snf: &SnfFactorization, v: &[BigInt]) -> Option<Vec<BigInt>> {
    // U M V = D, so M x = v  <=>  D (V^-1 x) = U v.
    let w = snf.left.mul_vec(v);
    let r = snf.rank();
    if w[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![BigInt::zero(); snf.right.rows()];
    for i in 0..r {
        let d = snf.diagonal.get(i, i);
        let (q, rem) = w[i].div_rem(d);
        if !rem.is_zero() {
            return None;
        }
        y[i] = q;
    }
    Some(snf.right.mul_vec(&y))
}

/// True iff `v` lies in the integer span of the columns of `generators`.
pub fn lattice_membership(v: &[BigInt], generators: &IntMatrix) -> bool {
    assert_eq!(
        v.len(),
        generators.rows(),
        "vector length must equal generator row count"
    );
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    solve_integer(generators, v).is_some()
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let inv = m.to_rational().inverse()?;
    let mut out = IntMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let x = inv.get(i, j);
            if !x.is_integer() {
                return None;
            }
            out.set(i, j, x.to_integer());
        }
    }
    Some(out)
}

/// gcd of a list of integers (0 for the empty list).
pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}
