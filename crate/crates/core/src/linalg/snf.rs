use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// A Smith normal form factorization `left * source * right = diagonal`.
///
/// `left` and `right` are unimodular; their inverses are tracked alongside so
/// callers can move between bases without re-solving.
#[derive(Clone, Debug)]
pub struct SnfFactorization {
    pub left: IntMatrix,
    pub left_inverse: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
    pub right_inverse: IntMatrix,
    rank: usize,
}

impl SnfFactorization {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Diagonal entries `d_1 | d_2 | ... | d_min(rows, cols)`, zeros trailing.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.diagonal.rows().min(self.diagonal.cols());
        (0..k).map(|i| self.diagonal.get(i, i).clone()).collect()
    }

    /// The nonzero diagonal entries.
    pub fn nonzero_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.diagonal.get(i, i).clone()).collect()
    }
}

/// Working state: the matrix being reduced plus the four transformation matrices.
struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_columns(i, j);
    }

    fn swap_columns(&mut self, i: usize, j: usize) {
        self.a.swap_columns(i, j);
        self.v.swap_columns(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_column_multiple(src, dst, &-k);
    }

    /// col[dst] += k * col[src]
    fn add_column(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_column_multiple(dst, src, k);
        self.v.add_column_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_column(i);
    }

    /// Position of a nonzero entry of minimal absolute value in the trailing block.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    let unit = ax.is_one();
                    best = Some((i, j, ax));
                    if unit {
                        break;
                    }
                }
            }
            if best.as_ref().is_some_and(|(_, _, b)| b.is_one()) {
                break;
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Smallest nonzero entry among column t (rows >= t) and row t (cols >= t).
    fn min_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        let mut consider = |i: usize, j: usize, x: &BigInt| {
            if x.is_zero() {
                return;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        };
        for i in t..self.a.rows() {
            consider(i, t, self.a.get(i, t));
        }
        for j in t + 1..self.a.cols() {
            consider(t, j, self.a.get(t, j));
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn reduce(mut self) -> SnfFactorization {
        let rows = self.a.rows();
        let cols = self.a.cols();
        let mut rank = 0;
        for t in 0..rows.min(cols) {
            let Some((pi, pj)) = self.min_entry(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_columns(t, pj);
            loop {
                let pivot = self.a.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..rows {
                    if self.a.get(i, t).is_zero() {
                        continue;
                    }
                    let q = self.a.get(i, t).div_floor(&pivot);
                    self.add_row(i, t, &-q);
                    if !self.a.get(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..cols {
                    if self.a.get(t, j).is_zero() {
                        continue;
                    }
                    let q = self.a.get(t, j).div_floor(&pivot);
                    self.add_column(j, t, &-q);
                    if !self.a.get(t, j).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    if let Some((i, j)) = self.min_in_cross(t) {
                        self.swap_rows(t, i);
                        self.swap_columns(t, j);
                    }
                    continue;
                }
                // Row and column are clear; enforce divisibility of the rest.
                let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.a.get(i, j).is_multiple_of(&pivot)));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
            rank += 1;
        }
        SnfFactorization {
            left: self.u,
            left_inverse: self.u_inv,
            diagonal: self.a,
            right: self.v,
            right_inverse: self.v_inv,
            rank,
        }
    }
}

/// Smith normal form of an integer matrix of any shape, including empty ones.
///
/// Pivots on the entry of least absolute value to keep intermediate growth down.
pub fn smith_normal_form(m: &IntMatrix) -> SnfFactorization {
    Reducer {
        a: m.clone(),
        u: IntMatrix::identity(m.rows()),
        u_inv: IntMatrix::identity(m.rows()),
        v: IntMatrix::identity(m.cols()),
        v_inv: IntMatrix::identity(m.cols()),
    }
    .reduce()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn check(mat: &IntMatrix) -> SnfFactorization {
        let snf = smith_normal_form(mat);
        assert_eq!(&(&snf.left * mat) * &snf.right, snf.diagonal);
        assert_eq!(&snf.left * &snf.left_inverse, IntMatrix::identity(mat.rows()));
        assert_eq!(&snf.right * &snf.right_inverse, IntMatrix::identity(mat.cols()));
        snf
    }

    #[test]
    fn identity_is_fixed() {
        let snf = check(&IntMatrix::identity(3));
        assert_eq!(snf.diagonal, IntMatrix::identity(3));
    }

    #[test]
    fn zero_matrix() {
        let snf = check(&IntMatrix::zeros(2, 2));
        assert_eq!(snf.diagonal, IntMatrix::zeros(2, 2));
        assert_eq!(snf.rank(), 0);
    }

    #[test]
    fn coprime_diagonal_merges() {
        // diag(2,3): gcd 1, product 6
        let snf = check(&m(2, &[&[2, 0], &[0, 3]]));
        assert_eq!(snf.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (4, 0)] {
            let snf = check(&IntMatrix::zeros(r, c));
            assert_eq!(snf.rank(), 0);
            assert!(snf.invariant_factors().is_empty());
        }
    }

    #[test]
    fn negative_pivots_become_positive() {
        let snf = check(&m(2, &[&[-4, 6], &[2, -8]]));
        // gcd of entries 2, |det| = 20 -> diag(2, 10)
        assert_eq!(snf.invariant_factors(), vec![BigInt::from(2), BigInt::from(10)]);
    }
}
