mod common;

use knset::fixtures::{cut_cube, cut_cube_complex, simplex, square};
use knset::linalg::{kernel_basis, lattice_membership};
use knset::polytope::{cokernel_matrix, jacobian_rank_check, lift_point, sample_on_z, Tolerances};
use knset::{HPolytope, IntMatrix, PolytopeError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn int_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_i64_rows().unwrap()
}

/// Polygons circumscribed about a circle of radius 40 with random primitive normals.
fn polygon() -> impl Strategy<Value = HPolytope> {
    prop::collection::vec((-5i64..=5, -5i64..=5), 3..=8).prop_filter_map("not a bounded polygon", |normals| {
        let mut a: Vec<Vec<i64>> = Vec::new();
        for (x, y) in normals {
            let g = num_integer::gcd(x, y);
            if g == 0 || a.contains(&vec![x / g, y / g]) {
                continue;
            }
            a.push(vec![x / g, y / g]);
        }
        let b: Vec<i64> = a
            .iter()
            .map(|r| (40.0 * ((r[0] * r[0] + r[1] * r[1]) as f64).sqrt()).ceil() as i64)
            .collect();
        HPolytope::from_inequalities(2, &a, &b).ok()
    })
}

/// The cube `[0,10]^3` with some corners cut off by planes with normal `(+-1,+-1,+-1)`.
fn truncated_cube() -> impl Strategy<Value = HPolytope> {
    prop::collection::vec(prop::option::of(1i64..=4), 8).prop_map(|depths| {
        let mut a = vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![-1, 0, 0],
            vec![0, -1, 0],
            vec![0, 0, -1],
        ];
        let mut b = vec![0, 0, 0, 10, 10, 10];
        for (corner, depth) in depths.into_iter().enumerate() {
            let Some(d) = depth else { continue };
            let signs: Vec<i64> = (0..3).map(|k| if corner >> k & 1 == 0 { 1 } else { -1 }).collect();
            let far = signs.iter().filter(|&&s| s < 0).count() as i64 * 10;
            a.push(signs);
            b.push(far - d);
        }
        HPolytope::from_inequalities(3, &a, &b).unwrap()
    })
}

fn check_polytope(p: &HPolytope) {
    let q = cokernel_matrix(p, None).unwrap();
    let c = q.matrix();
    let a = p.normals();
    assert!((&c * a).is_zero());
    assert_eq!(c.rows(), p.facet_count() - p.dimension());
    assert_eq!(c.to_rational().rank(), c.rows());
    let saturated = kernel_basis(&a.transpose());
    assert_eq!(saturated.cols(), c.rows());
    for row in 0..c.rows() {
        assert!(lattice_membership(c.row(row), &saturated));
    }
    let nerve = p.facet_nerve().unwrap();
    let fan_complex = p.normal_fan().unwrap().underlying_complex();
    let (mut x, mut y) = (nerve.maximal_faces().to_vec(), fan_complex.maximal_faces().to_vec());
    x.sort();
    y.sort();
    assert_eq!(x, y);
    assert_eq!(p.moment_map_target().unwrap(), q.target());
}

fn is_unimodular_polytope(p: &HPolytope) -> bool {
    p.normal_fan().unwrap().is_regular()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn polygons(p in polygon()) {
        check_polytope(&p);
        prop_assert_eq!(p.vertices().len(), p.facet_count());
    }

    #[test]
    fn truncated_cubes(p in truncated_cube()) {
        prop_assert!(p.is_simple());
        check_polytope(&p);
        // smooth truncations: C spans the whole saturated kernel
        if is_unimodular_polytope(&p) {
            let c = cokernel_matrix(&p, None).unwrap().matrix();
            let saturated = kernel_basis(&p.normals().transpose());
            for col in saturated.columns() {
                prop_assert!(lattice_membership(&col, &c.transpose()));
            }
        }
    }

    #[test]
    fn samples_sit_on_the_quadrics(seed in any::<u64>()) {
        let p = cut_cube();
        let q = cokernel_matrix(&p, None).unwrap();
        for pt in sample_on_z(&p, &q, 20, seed).unwrap() {
            prop_assert!(p.embed(&pt.source_x).iter().all(|y| !y.is_negative()));
            prop_assert!(pt.max_residual() < 1e-9);
            prop_assert!(jacobian_rank_check(&pt, &q, Tolerances::default()).unwrap());
        }
    }

    #[test]
    fn residuals_ignore_phases(phases in prop::collection::vec(0.0..std::f64::consts::TAU, 8), other in prop::collection::vec(0.0..std::f64::consts::TAU, 8)) {
        let p = cut_cube();
        let q = cokernel_matrix(&p, None).unwrap();
        let x = vec![BigRational::new(3.into(), 2.into()), BigRational::from_integer(1.into()), BigRational::new(7.into(), 3.into())];
        let a = lift_point(&p, &q, &x, &phases);
        let b = lift_point(&p, &q, &x, &other);
        for (ra, rb) in a.residuals.iter().zip(&b.residuals) {
            prop_assert!((ra - rb).abs() < 1e-12);
            prop_assert!(ra.abs() < 1e-9);
        }
        for (wa, wb) in a.squared_moduli().iter().zip(b.squared_moduli()) {
            prop_assert!((wa - wb).abs() < 1e-12);
        }
    }
}

#[test]
fn cut_cube_vertices_and_nerve() {
    let p = cut_cube();
    let mut points: Vec<Vec<i64>> = p
        .vertices()
        .iter()
        .map(|v| {
            v.point
                .iter()
                .map(|x| {
                    assert!(x.is_integer());
                    i64::try_from(x.to_integer()).unwrap()
                })
                .collect()
        })
        .collect();
    points.sort();
    let mut expected = vec![
        vec![0, 0, 0],
        vec![0, 0, 3],
        vec![0, 3, 0],
        vec![3, 3, 0],
        vec![3, 1, 0],
        vec![3, 1, 3],
        vec![2, 0, 0],
        vec![2, 0, 3],
        vec![0, 3, 2],
        vec![3, 3, 2],
        vec![0, 2, 3],
        vec![3, 2, 3],
    ];
    expected.sort();
    assert_eq!(points, expected);
    assert!(p.is_simple());
    let mut nerve = p.facet_nerve().unwrap().maximal_faces().to_vec();
    let mut fixture = cut_cube_complex().maximal_faces().to_vec();
    nerve.sort();
    fixture.sort();
    assert_eq!(nerve, fixture);
    check_polytope(&p);
}

#[test]
fn cut_cube_quadrics() {
    let p = cut_cube();
    let order: Vec<usize> = (1..=8).collect();
    let q = cokernel_matrix(&p, Some(&order)).unwrap();
    assert_eq!(
        int_rows(&q.matrix()),
        vec![
            vec![1, 0, 0, 1, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 1, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 1, 0, 0],
            vec![1, -1, 0, 0, 0, 0, 1, 0],
            vec![0, 1, 1, 0, 0, 0, 0, 1],
        ]
    );
    assert_eq!(q.target(), [3, 3, 3, 2, 5].map(BigInt::from).to_vec());
    assert_eq!(
        q.render_equations(),
        vec![
            "|z_1|^2+|z_4|^2-3=0",
            "|z_2|^2+|z_5|^2-3=0",
            "|z_3|^2+|z_6|^2-3=0",
            "|z_1|^2-|z_2|^2+|z_7|^2-2=0",
            "|z_2|^2+|z_3|^2+|z_8|^2-5=0",
        ]
    );
    assert_eq!(cokernel_matrix(&p, None).unwrap(), q);
}

#[test]
fn other_facet_orders_give_equivalent_systems() {
    let p = cut_cube();
    // vertex (3,1,3) lies on facets 4, 6, 7
    let order = [4, 6, 7, 1, 2, 3, 5, 8];
    let q = cokernel_matrix(&p, Some(&order)).unwrap();
    assert_eq!(q.permutation, order.to_vec());
    assert!((&q.matrix() * p.normals()).is_zero());
    let default = cokernel_matrix(&p, None).unwrap().matrix();
    for row in 0..q.equation_count() {
        assert!(lattice_membership(q.matrix().row(row), &default.transpose()));
    }
    assert!(matches!(
        cokernel_matrix(&p, Some(&[1, 2, 4, 3, 5, 6, 7, 8])),
        Err(PolytopeError::BadFacetOrder(_))
    ));
}

#[test]
fn simplices_give_spheres() {
    for n in 1..=4 {
        let p = simplex(n);
        let q = cokernel_matrix(&p, None).unwrap();
        assert_eq!(int_rows(&q.matrix()), vec![vec![1; n + 1]]);
        assert_eq!(q.target(), vec![BigInt::from(1)]);
        let terms: Vec<String> = (1..=n + 1).map(|k| format!("|z_{k}|^2")).collect();
        assert_eq!(q.render_equations(), vec![format!("{}-1=0", terms.join("+"))]);
        check_polytope(&p);
    }
}

#[test]
fn square_and_cube() {
    for p in [square(), common::cube()] {
        check_polytope(&p);
        assert!(is_unimodular_polytope(&p));
    }
}

#[test]
fn samples_are_reproducible() {
    let p = cut_cube();
    let q = cokernel_matrix(&p, None).unwrap();
    let a = sample_on_z(&p, &q, 5, 7).unwrap();
    let b = sample_on_z(&p, &q, 5, 7).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.z, y.z);
    }
    let zero = vec![BigRational::zero(); 3];
    let origin = lift_point(&p, &q, &zero, &[0.0; 8]);
    assert!(origin.max_residual() < 1e-12);
}
