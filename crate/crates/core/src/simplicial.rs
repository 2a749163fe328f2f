//! Abstract simplicial complexes on `[m]` and their reduced integer cohomology.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{rank, smith_normal_form, AbelianGroup, IntMatrix};
use crate::subset::{VertexSet, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex {vertex} out of range 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },
    #[error("at most {MAX_VERTICES} vertices are supported, got {0}")]
    TooManyVertices(usize),
}

/// A simplicial complex on the vertex set `[m]`, stored by its maximal faces.
///
/// The empty face is always present. Vertices that lie in no face ("ghost
/// vertices") are allowed. `labels[i]` is the original name of vertex `i + 1`,
/// which differs from `i + 1` after restricting to a full subcomplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<VertexSet>,
    labels: Vec<usize>,
}

impl SimplicialComplex {
    /// The smallest complex on `[m]` containing every listed face (1-based labels).
    pub fn from_maximal_faces(m: usize, faces: &[Vec<usize>]) -> Result<Self, ComplexError> {
        if m > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(m));
        }
        let mut sets = Vec::with_capacity(faces.len());
        for face in faces {
            if let Some(&v) = face.iter().find(|&&v| v == 0 || v > m) {
                return Err(ComplexError::VertexOutOfRange { vertex: v, m });
            }
            sets.push(VertexSet::from_labels(face));
        }
        Self::from_sets(m, sets)
    }

    pub fn from_sets(m: usize, faces: impl IntoIterator<Item = VertexSet>) -> Result<Self, ComplexError> {
        if m > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(m));
        }
        let full = VertexSet::full(m);
        let mut sets: Vec<VertexSet> = Vec::new();
        for s in faces {
            if !s.is_subset(full) {
                let vertex = s.difference(full).iter().next().unwrap_or(0);
                return Err(ComplexError::VertexOutOfRange { vertex, m });
            }
            sets.push(s);
        }
        Ok(SimplicialComplex {
            m,
            facets: maximal_only(sets),
            labels: (1..=m).collect(),
        })
    }

    /// The full simplex on `[m]`.
    pub fn simplex(m: usize) -> Self {
        Self::from_sets(m, [VertexSet::full(m)]).expect("m within range")
    }

    /// The boundary of the simplex on `[m]`.
    pub fn simplex_boundary(m: usize) -> Self {
        let full = VertexSet::full(m);
        Self::from_sets(m, full.iter().map(|v| full.without(v))).expect("m within range")
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.m
    }

    /// Maximal faces, sorted by size then label list.
    pub fn maximal_faces(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Original labels of the vertices `1..=m`.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn ground_set(&self) -> VertexSet {
        VertexSet::full(self.m)
    }

    pub fn is_face(&self, s: VertexSet) -> bool {
        s.is_empty() || self.facets.iter().any(|f| s.is_subset(*f))
    }

    /// Dimension (largest face size minus one); -1 when only the empty face exists.
    pub fn dimension(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize).max().unwrap_or(0) - 1
    }

    /// All faces including the empty one, sorted by size then label list.
    pub fn faces(&self) -> Vec<VertexSet> {
        let mut all = BTreeSet::new();
        all.insert(VertexSet::EMPTY);
        for f in &self.facets {
            all.extend(f.subsets());
        }
        let mut v: Vec<VertexSet> = all.into_iter().collect();
        v.sort_by_cached_key(|s| s.graded_key());
        v
    }

    /// Faces grouped by size: entry `k` holds the faces with `k` vertices.
    pub fn faces_by_size(&self) -> Vec<Vec<VertexSet>> {
        let faces = self.faces();
        let top = faces.last().map_or(0, |f| f.len());
        let mut out = vec![Vec::new(); top + 1];
        for f in faces {
            out[f.len()].push(f);
        }
        out
    }

    /// Face counts `f_{-1}, f_0, f_1, ...` (index `k` counts faces with `k` vertices).
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_size().iter().map(Vec::len).collect()
    }

    /// Restriction to `subset`: faces contained in `subset`, vertices renumbered
    /// `1..=|subset|` in increasing order. Original labels are carried along.
    pub fn full_subcomplex(&self, subset: VertexSet) -> SimplicialComplex {
        let subset = subset.intersection(self.ground_set());
        let positions: Vec<usize> = subset.labels();
        let relabel = |face: VertexSet| -> VertexSet {
            face.iter()
                .map(|v| positions.binary_search(&v).expect("face inside subset") + 1)
                .collect()
        };
        let restricted = self.facets.iter().map(|f| relabel(f.intersection(subset)));
        SimplicialComplex {
            m: positions.len(),
            facets: maximal_only(restricted.collect()),
            labels: positions.iter().map(|&v| self.labels[v - 1]).collect(),
        }
    }

    /// Inclusion-minimal non-faces; these generate the Stanley–Reisner ideal.
    pub fn minimal_non_faces(&self) -> Vec<VertexSet> {
        let ground = self.ground_set();
        let mut found = BTreeSet::new();
        for face in self.faces() {
            for v in ground.difference(face).iter() {
                let candidate = face.with(v);
                if self.is_face(candidate) {
                    continue;
                }
                if candidate.iter().all(|w| self.is_face(candidate.without(w))) {
                    found.insert(candidate);
                }
            }
        }
        let mut out: Vec<VertexSet> = found.into_iter().collect();
        out.sort_by_cached_key(|s| s.graded_key());
        out
    }

    /// Coboundary matrices of the augmented cochain complex.
    ///
    /// Entry `k` maps cochains on faces with `k` vertices to cochains on faces
    /// with `k + 1` vertices; the sign for removing the vertex in position `j`
    /// (0-based, increasing order) is `(-1)^j`.
    pub fn coboundary_matrices(&self) -> Vec<IntMatrix> {
        let by_size = self.faces_by_size();
        let index: Vec<HashMap<VertexSet, usize>> = by_size
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, f)| (*f, i)).collect())
            .collect();
        (0..by_size.len().saturating_sub(1))
            .map(|k| {
                let mut d = IntMatrix::zeros(by_size[k + 1].len(), by_size[k].len());
                for (row, face) in by_size[k + 1].iter().enumerate() {
                    for (j, v) in face.iter().enumerate() {
                        let col = index[k][&face.without(v)];
                        let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                        d.set(row, col, sign);
                    }
                }
                d
            })
            .collect()
    }

    /// Reduced integer cohomology, computed from the augmented cochain complex
    /// via Smith normal forms. The complex with only the empty face has
    /// `H^-1 = Z`.
    pub fn reduced_cohomology(&self) -> CohomologyTable {
        let by_size = self.faces_by_size();
        let d = self.coboundary_matrices();
        let snfs: Vec<_> = d.iter().map(smith_normal_form).collect();
        let mut groups = BTreeMap::new();
        for k in 0..by_size.len() {
            let dim = by_size[k].len();
            let outgoing = if k < d.len() { snfs[k].rank() } else { 0 };
            let (incoming, torsion) = if k > 0 {
                let f = &snfs[k - 1];
                let tors: Vec<BigInt> = f.nonzero_factors().into_iter().filter(|x| !x.is_one()).collect();
                (f.rank(), tors)
            } else {
                (0, Vec::new())
            };
            let group = AbelianGroup {
                free_rank: dim - outgoing - incoming,
                torsion,
            };
            if !group.is_zero() {
                groups.insert(k as isize - 1, group);
            }
        }
        CohomologyTable { groups }
    }

    /// Euler characteristic of the geometric realization, `sum (-1)^k f_k` over
    /// nonempty faces.
    pub fn euler_characteristic(&self) -> isize {
        self.f_vector()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &f)| if k % 2 == 1 { f as isize } else { -(f as isize) })
            .sum()
    }

    /// Betti numbers over Q of the augmented complex, by direct rank count.
    /// Used as an independent check on [`Self::reduced_cohomology`].
    pub fn reduced_betti_by_rank(&self) -> Vec<usize> {
        let by_size = self.faces_by_size();
        let ranks: Vec<usize> = self.coboundary_matrices().iter().map(rank).collect();
        (0..by_size.len())
            .map(|k| {
                let out = ranks.get(k).copied().unwrap_or(0);
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                by_size[k].len() - out - inc
            })
            .collect()
    }
}

fn maximal_only(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut kept: Vec<VertexSet> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept.retain(|s| !s.is_empty());
    kept.sort_by_cached_key(|s| s.graded_key());
    kept
}

/// Reduced cohomology groups indexed by degree `>= -1`; missing degrees are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    groups: BTreeMap<isize, AbelianGroup>,
}

impl CohomologyTable {
    pub fn new(groups: BTreeMap<isize, AbelianGroup>) -> Self {
        let groups = groups.into_iter().filter(|(_, g)| !g.is_zero()).collect();
        CohomologyTable { groups }
    }

    pub fn get(&self, degree: isize) -> AbelianGroup {
        self.groups.get(&degree).cloned().unwrap_or_default()
    }

    /// Nonzero groups in increasing degree.
    pub fn iter(&self) -> impl Iterator<Item = (isize, &AbelianGroup)> {
        self.groups.iter().map(|(k, g)| (*k, g))
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(m: usize, faces: &[&[usize]]) -> SimplicialComplex {
        let f: Vec<Vec<usize>> = faces.iter().map(|f| f.to_vec()).collect();
        SimplicialComplex::from_maximal_faces(m, &f).unwrap()
    }

    fn vs(labels: &[usize]) -> VertexSet {
        VertexSet::from_labels(labels)
    }

    #[test]
    fn triangle_boundary_construction() {
        let k = complex(3, &[&[1, 2], &[2, 3], &[1, 3], &[1]]);
        assert_eq!(k.maximal_faces().len(), 3);
        assert!(k.is_face(vs(&[1, 2])));
        assert!(!k.is_face(vs(&[1, 2, 3])));
        assert_eq!(k.dimension(), 1);
    }

    #[test]
    fn out_of_range_vertex() {
        let err = SimplicialComplex::from_maximal_faces(3, &[vec![1, 4]]).unwrap_err();
        assert_eq!(err, ComplexError::VertexOutOfRange { vertex: 4, m: 3 });
        assert!(SimplicialComplex::from_maximal_faces(3, &[vec![0]]).is_err());
    }

    #[test]
    fn empty_complex() {
        let k = complex(0, &[]);
        assert_eq!(k.faces(), vec![VertexSet::EMPTY]);
        let h = k.reduced_cohomology();
        assert_eq!(h.get(-1), AbelianGroup::free(1));
        assert_eq!(h.iter().count(), 1);
    }

    #[test]
    fn ghost_vertices_use_empty_convention() {
        let k = complex(3, &[]);
        let h = k.reduced_cohomology();
        assert_eq!(h.get(-1), AbelianGroup::free(1));
        assert_eq!(k.minimal_non_faces(), vec![vs(&[1]), vs(&[2]), vs(&[3])]);
    }

    #[test]
    fn restriction_relabels() {
        let k = complex(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        let r = k.full_subcomplex(vs(&[1, 3]));
        assert_eq!(r.vertex_count(), 2);
        assert_eq!(r.labels(), &[1, 3]);
        assert_eq!(r.maximal_faces(), &[vs(&[1, 2])]);

        let points = complex(3, &[&[1], &[2], &[3]]);
        let r = points.full_subcomplex(vs(&[1, 3]));
        assert_eq!(r.maximal_faces(), &[vs(&[1]), vs(&[2])]);
    }

    #[test]
    fn cohomology_of_small_complexes() {
        let points = complex(3, &[&[1], &[2], &[3]]);
        let h = points.reduced_cohomology();
        assert_eq!(h.get(0), AbelianGroup::free(2));
        assert_eq!(h.iter().count(), 1);

        let circle = SimplicialComplex::simplex_boundary(3);
        let h = circle.reduced_cohomology();
        assert_eq!(h.get(1), AbelianGroup::free(1));
        assert_eq!(h.iter().count(), 1);

        let ball = SimplicialComplex::simplex(4);
        assert!(ball.reduced_cohomology().is_zero());
    }

    #[test]
    fn minimal_non_faces_simple_cases() {
        assert!(SimplicialComplex::simplex(4).minimal_non_faces().is_empty());
        assert_eq!(
            SimplicialComplex::simplex_boundary(3).minimal_non_faces(),
            vec![vs(&[1, 2, 3])]
        );
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let k = SimplicialComplex::simplex_boundary(5);
        let d = k.coboundary_matrices();
        for w in d.windows(2) {
            assert!((&w[1] * &w[0]).is_zero());
        }
    }
}
