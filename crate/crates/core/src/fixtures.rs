//! Standard examples used by tests, benches and documentation.

use crate::fan::{validate_fan, Fan};
use crate::polytope::HPolytope;
use crate::simplicial::SimplicialComplex;

/// A cube `[0,3]^3` with two non-adjacent edges cut off, facets in the order
/// `x, y, z, 3-x, 3-y, 3-z, 2-x+y, 5-y-z`.
pub fn cut_cube() -> HPolytope {
    HPolytope::from_inequalities(
        3,
        &[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![-1, 0, 0],
            vec![0, -1, 0],
            vec![0, 0, -1],
            vec![-1, 1, 0],
            vec![0, -1, -1],
        ],
        &[0, 0, 0, 3, 3, 3, 2, 5],
    )
    .expect("cut cube is a valid polytope")
}

/// The dual complex of [`cut_cube`], written out by its facets.
pub fn cut_cube_complex() -> SimplicialComplex {
    SimplicialComplex::from_maximal_faces(
        8,
        &[
            vec![1, 2, 3],
            vec![1, 2, 6],
            vec![1, 3, 5],
            vec![1, 5, 8],
            vec![1, 6, 8],
            vec![2, 3, 7],
            vec![2, 6, 7],
            vec![3, 4, 5],
            vec![3, 4, 7],
            vec![4, 5, 8],
            vec![4, 6, 7],
            vec![4, 6, 8],
        ],
    )
    .expect("valid complex")
}

/// `{x : x_i >= 0, 1 - sum x_i >= 0}`.
pub fn simplex(n: usize) -> HPolytope {
    let mut a: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    a.push(vec![-1; n]);
    let mut b = vec![0; n];
    b.push(1);
    HPolytope::from_inequalities(n, &a, &b).expect("simplex is a valid polytope")
}

/// `[0,3]^2` with facets `x, y, 3-x, 3-y`.
pub fn square() -> HPolytope {
    HPolytope::from_inequalities(2, &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]], &[0, 0, 3, 3])
        .expect("square is a valid polytope")
}

/// Rays `e1, e2, -e1-e2` with the three 2-dimensional cones.
pub fn cp2_fan() -> Fan {
    validate_fan(2, &cp2_rays(), &[vec![1, 2], vec![2, 3], vec![3, 1]]).expect("valid fan")
}

/// The same rays with only the three rays as cones.
pub fn three_ray_fan() -> Fan {
    validate_fan(2, &cp2_rays(), &[vec![1], vec![2], vec![3]]).expect("valid fan")
}

fn cp2_rays() -> Vec<Vec<i64>> {
    vec![vec![1, 0], vec![0, 1], vec![-1, -1]]
}

pub fn three_points() -> SimplicialComplex {
    SimplicialComplex::from_maximal_faces(3, &[vec![1], vec![2], vec![3]]).expect("valid complex")
}

/// Boundary of the octahedron; `{1,2}`, `{3,4}`, `{5,6}` are the missing diagonals.
pub fn octahedron_boundary() -> SimplicialComplex {
    let mut faces = Vec::new();
    for a in [1, 2] {
        for b in [3, 4] {
            for c in [5, 6] {
                faces.push(vec![a, b, c]);
            }
        }
    }
    SimplicialComplex::from_maximal_faces(6, &faces).expect("valid complex")
}

/// Six-vertex real projective plane.
pub fn rp2() -> SimplicialComplex {
    SimplicialComplex::from_maximal_faces(
        6,
        &[
            vec![1, 2, 3],
            vec![1, 3, 4],
            vec![1, 4, 5],
            vec![1, 5, 6],
            vec![1, 2, 6],
            vec![2, 3, 5],
            vec![2, 4, 5],
            vec![2, 4, 6],
            vec![3, 4, 6],
            vec![3, 5, 6],
        ],
    )
    .expect("valid complex")
}
