#![allow(dead_code)]

use knset::{SimplicialComplex, VertexSet};
use proptest::prelude::*;

/// A complex on `[m]`, `1 <= m <= max_m`, generated by a few random faces.
pub fn complex(max_m: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_m).prop_flat_map(|m| {
        let top = (1u64 << m) - 1;
        prop::collection::vec(1..=top, 1..=6).prop_map(move |faces| {
            SimplicialComplex::from_sets(m, faces.into_iter().map(VertexSet::from_bits)).unwrap()
        })
    })
}

/// Like [`complex`], but with faces of at most three vertices so that every
/// vertex appears and the complexes stay small.
pub fn sparse_complex(max_m: usize) -> impl Strategy<Value = SimplicialComplex> {
    (2..=max_m).prop_flat_map(|m| {
        prop::collection::vec(prop::collection::btree_set(1..=m, 1..=3), 1..=8).prop_map(move |faces| {
            let mut faces: Vec<Vec<usize>> = faces.into_iter().map(|f| f.into_iter().collect()).collect();
            faces.extend((1..=m).map(|v| vec![v]));
            SimplicialComplex::from_maximal_faces(m, &faces).unwrap()
        })
    })
}

/// The unit cube `[0,1]^3`.
pub fn cube() -> knset::HPolytope {
    let a = vec![
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
        vec![-1, 0, 0],
        vec![0, -1, 0],
        vec![0, 0, -1],
    ];
    knset::HPolytope::from_inequalities(3, &a, &[0, 0, 0, 1, 1, 1]).unwrap()
}
