use knset::fan::determinant;
use knset::linalg::{
    cokernel_invariants, kernel_basis, lattice_membership, rank, smith_normal_form, solve_integer, unimodular_inverse,
};
use knset::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-5i64..=5, r * c)
            .prop_map(move |xs| IntMatrix::from_vec(r, c, xs.into_iter().map(BigInt::from).collect()))
    })
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(-4i64..=4, r * c)
            .prop_map(move |xs| IntMatrix::from_vec(r, c, xs.into_iter().map(BigInt::from).collect()))
    })
}

/// Random unimodular matrix built from elementary row operations.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut u = IntMatrix::identity(n);
        for (i, j, k, negate) in ops {
            if i != j {
                for c in 0..n {
                    let x = u.get(j, c) * BigInt::from(k);
                    *u.get_mut(i, c) += x;
                }
            } else if negate {
                for c in 0..n {
                    let x = -u.get(i, c).clone();
                    u.set(i, c, x);
                }
            }
        }
        u
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// gcd of all k x k minors.
fn determinantal_divisor(m: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in combinations(m.rows(), k) {
        for cols in combinations(m.cols(), k) {
            g = g.gcd(&determinant(&m.select_rows(&rows).select_columns(&cols)));
        }
    }
    g
}

fn is_unimodular(m: &IntMatrix) -> bool {
    m.rows() == m.cols() && determinant(m).abs().is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn snf_factorization(m in matrix()) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(&(&snf.left * &m) * &snf.right, snf.diagonal.clone());
        prop_assert!(is_unimodular(&snf.left));
        prop_assert!(is_unimodular(&snf.right));
        prop_assert_eq!(&snf.left * &snf.left_inverse, IntMatrix::identity(m.rows()));
        prop_assert_eq!(&snf.right * &snf.right_inverse, IntMatrix::identity(m.cols()));
        let d = &snf.diagonal;
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    prop_assert!(d.get(i, j).is_zero());
                }
            }
        }
        let factors = snf.invariant_factors();
        for w in factors.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }

    #[test]
    fn rank_matches_rational_rank(m in matrix()) {
        prop_assert_eq!(rank(&m), m.to_rational().rank());
    }

    #[test]
    fn kernel_is_saturated(m in matrix()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.cols(), m.cols() - m.to_rational().rank());
        prop_assert!((&m * &k).is_zero());
        if k.cols() > 0 {
            prop_assert_eq!(cokernel_invariants(&k).torsion, Vec::<BigInt>::new());
        }
    }

    #[test]
    fn invariant_factors_from_minors(m in small_matrix()) {
        let snf = smith_normal_form(&m);
        let factors = snf.invariant_factors();
        let mut product = BigInt::one();
        for (k, d) in factors.iter().enumerate() {
            product *= d;
            prop_assert_eq!(&product, &determinantal_divisor(&m, k + 1));
        }
    }

    #[test]
    fn cokernel_is_unimodular_invariant(
        (m, u, v) in matrix().prop_flat_map(|m| {
            let (r, c) = (m.rows(), m.cols());
            (Just(m), unimodular(r), unimodular(c))
        })
    ) {
        prop_assert!(is_unimodular(&u));
        let moved = &(&u * &m) * &v;
        prop_assert_eq!(cokernel_invariants(&moved), cokernel_invariants(&m));
        prop_assert_eq!(unimodular_inverse(&u).map(|w| &w * &u), Some(IntMatrix::identity(u.rows())));
    }

    #[test]
    fn integer_solutions_check_out(m in matrix(), x in prop::collection::vec(-3i64..=3, 6)) {
        let x: Vec<BigInt> = x[..m.cols()].iter().copied().map(BigInt::from).collect();
        let b = m.mul_vec(&x);
        let y = solve_integer(&m, &b).expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&y), b.clone());
        prop_assert!(lattice_membership(&b, &m));
    }
}

#[test]
fn torsion_example() {
    let m = IntMatrix::from_i64_rows(2, &[vec![2, 4], vec![6, 8]]);
    let g = cokernel_invariants(&m);
    assert_eq!(g.free_rank, 0);
    assert_eq!(g.torsion, vec![BigInt::from(2), BigInt::from(4)]);
    assert!(!lattice_membership(&[BigInt::from(1), BigInt::from(0)], &m));
}
