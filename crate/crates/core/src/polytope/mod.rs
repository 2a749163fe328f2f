//! Convex polytopes `P = {x : <a_i, x> + b_i >= 0}` given by integer
//! inequalities, their normal fans, and the quadric presentation of the
//! associated moment-angle manifold.

mod quadrics;
mod sampling;

pub use quadrics::{cokernel_matrix, QuadricSystem};
pub use sampling::{jacobian_rank_check, lift_point, sample_on_z, SampledPoint, Tolerances};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fan::{Fan, FanError, MAX_LATTICE_RANK};
use crate::linalg::{gcd_all, solve_unique, IntMatrix, RatMatrix};
use crate::parallel;
use crate::simplicial::SimplicialComplex;
use crate::subset::{VertexSet, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolytopeError {
    #[error("dimension {0} is outside 1..={MAX_LATTICE_RANK}")]
    BadDimension(usize),
    #[error("at most {MAX_VERTICES} inequalities are supported, got {0}")]
    TooManyInequalities(usize),
    #[error("inequality {row} has {found} coefficients, expected {expected}")]
    ShapeMismatch { row: usize, expected: usize, found: usize },
    #[error("A has {rows} rows but b has {len} entries")]
    RhsLength { rows: usize, len: usize },
    #[error("normal vector of inequality {0} is not primitive")]
    NonPrimitiveNormal(usize),
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("polytope is empty")]
    EmptyPolytope,
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("inequality {0} is redundant")]
    RedundantInequality(usize),
    #[error("polytope is not simple")]
    NotSimple,
    #[error("invalid facet order: {0}")]
    BadFacetOrder(String),
    #[error("point violates the quadric system (max residual {0:e})")]
    PreconditionViolated(f64),
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// A vertex of `P` with the set of facets it lies on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub point: Vec<BigRational>,
    pub facets: VertexSet,
}

/// A full-dimensional bounded polytope with `m` irredundant facets.
#[derive(Clone, Debug)]
pub struct HPolytope {
    n: usize,
    a: IntMatrix,
    b: Vec<BigInt>,
    vertices: Vec<Vertex>,
}

impl HPolytope {
    /// Validates `{x : A x + b >= 0}` and enumerates its vertices.
    pub fn from_inequalities(n: usize, a: &[Vec<i64>], b: &[i64]) -> Result<Self, PolytopeError> {
        let rows: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        let b: Vec<BigInt> = b.iter().map(|&x| x.into()).collect();
        Self::new(n, rows, b)
    }

    pub fn new(n: usize, a: Vec<Vec<BigInt>>, b: Vec<BigInt>) -> Result<Self, PolytopeError> {
        if n == 0 || n > MAX_LATTICE_RANK {
            return Err(PolytopeError::BadDimension(n));
        }
        let m = a.len();
        if m > MAX_VERTICES {
            return Err(PolytopeError::TooManyInequalities(m));
        }
        if b.len() != m {
            return Err(PolytopeError::RhsLength { rows: m, len: b.len() });
        }
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(PolytopeError::ShapeMismatch {
                    row: i + 1,
                    expected: n,
                    found: row.len(),
                });
            }
            if !gcd_all(row).is_one() {
                return Err(PolytopeError::NonPrimitiveNormal(i + 1));
            }
        }
        let a = IntMatrix::from_rows(n, &a);
        if !rows_positively_span(&a) {
            return Err(PolytopeError::Unbounded);
        }

        let vertices = enumerate_vertices(&a, &b);
        if vertices.is_empty() {
            return Err(PolytopeError::EmptyPolytope);
        }
        let all: Vec<&Vec<BigRational>> = vertices.iter().map(|v| &v.point).collect();
        if affine_rank(&all) < n {
            return Err(PolytopeError::NotFullDimensional);
        }
        for i in 0..m {
            for j in 0..i {
                if a.row(i) == a.row(j) && b[i] == b[j] {
                    return Err(PolytopeError::RedundantInequality(i + 1));
                }
            }
            let on_facet: Vec<&Vec<BigRational>> = vertices
                .iter()
                .filter(|v| v.facets.contains(i + 1))
                .map(|v| &v.point)
                .collect();
            if on_facet.is_empty() || affine_rank(&on_facet) + 1 < n {
                return Err(PolytopeError::RedundantInequality(i + 1));
            }
        }
        Ok(HPolytope { n, a, b, vertices })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn facet_count(&self) -> usize {
        self.a.rows()
    }

    /// The `m x n` matrix of facet normals.
    pub fn normals(&self) -> &IntMatrix {
        &self.a
    }

    pub fn offsets(&self) -> &[BigInt] {
        &self.b
    }

    /// Vertices with their facet incidences, in lexicographic order of coordinates.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// `i_P(x) = A x + b`, the affine embedding into the positive orthant.
    pub fn embed(&self, x: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(x.len(), self.n);
        (0..self.a.rows())
            .map(|i| {
                let dot: BigRational = self
                    .a
                    .row(i)
                    .iter()
                    .zip(x)
                    .map(|(c, xi)| BigRational::from_integer(c.clone()) * xi)
                    .sum();
                dot + BigRational::from_integer(self.b[i].clone())
            })
            .collect()
    }

    /// Exactly `n` facets meet at every vertex.
    pub fn is_simple(&self) -> bool {
        self.vertices.iter().all(|v| v.facets.len() == self.n)
    }

    fn require_simple(&self) -> Result<(), PolytopeError> {
        if self.is_simple() {
            Ok(())
        } else {
            Err(PolytopeError::NotSimple)
        }
    }

    /// The normal fan: rays `a_1..a_m`, one maximal cone per vertex.
    pub fn normal_fan(&self) -> Result<Fan, PolytopeError> {
        self.require_simple()?;
        let rays: Vec<Vec<BigInt>> = (0..self.a.rows()).map(|i| self.a.row(i).to_vec()).collect();
        let cones: Vec<Vec<usize>> = self.vertices.iter().map(|v| v.facets.labels()).collect();
        Ok(Fan::new(self.n, rays, &cones)?)
    }

    /// Complex on the facets whose faces are the sets of facets with a common point.
    pub fn facet_nerve(&self) -> Result<SimplicialComplex, PolytopeError> {
        self.require_simple()?;
        // Every nonempty face of P contains a vertex, so the vertex incidences are the maximal faces.
        Ok(
            SimplicialComplex::from_sets(self.facet_count(), self.vertices.iter().map(|v| v.facets))
                .expect("facet count within range"),
        )
    }

    /// `C b`, the value at which the moment map cuts out the moment-angle manifold.
    pub fn moment_map_target(&self) -> Result<Vec<BigInt>, PolytopeError> {
        Ok(cokernel_matrix(self, None)?.target())
    }
}

/// True iff the cone spanned by the rows is all of R^n, i.e. `{d : A d >= 0} = 0`.
fn rows_positively_span(a: &IntMatrix) -> bool {
    let n = a.cols();
    let at = a.transpose().to_rational();
    (0..n).all(|k| {
        [1i64, -1].iter().all(|&s| {
            let mut target = vec![BigRational::zero(); n];
            target[k] = BigRational::from_integer(s.into());
            crate::linalg::nonnegative_solution(&at, &target).is_some()
        })
    })
}

/// Brute force over n-subsets of the inequalities: solve, keep feasible points.
fn enumerate_vertices(a: &IntMatrix, b: &[BigInt]) -> Vec<Vertex> {
    let n = a.cols();
    let m = a.rows();
    let subsets: Vec<Vec<usize>> = combinations(m, n);
    let arat = a.to_rational();
    let brat: Vec<BigRational> = b.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let candidates = parallel::map(&subsets, |rows| {
        let sub = RatMatrix::from_rows(n, &rows.iter().map(|&i| arat.row(i).to_vec()).collect::<Vec<_>>());
        let rhs: Vec<BigRational> = rows.iter().map(|&i| -brat[i].clone()).collect();
        let x = solve_unique(&sub, &rhs)?;
        let slack = arat.mul_vec(&x);
        let mut facets = VertexSet::EMPTY;
        for i in 0..m {
            let s = &slack[i] + &brat[i];
            if s.is_negative() {
                return None;
            }
            if s.is_zero() {
                facets.insert(i + 1);
            }
        }
        Some(Vertex { point: x, facets })
    });
    let mut unique: BTreeMap<Vec<BigRational>, VertexSet> = BTreeMap::new();
    for v in candidates.into_iter().flatten() {
        unique.insert(v.point, v.facets);
    }
    unique
        .into_iter()
        .map(|(point, facets)| Vertex { point, facets })
        .collect()
}

/// All `k`-element subsets of `0..m` in lexicographic order.
pub(crate) fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + m - k) else {
            break;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Dimension of the affine hull of a nonempty point set.
fn affine_rank(points: &[&Vec<BigRational>]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let dim = first.len();
    let diffs: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(x, y)| x - y).collect())
        .collect();
    if diffs.is_empty() {
        return 0;
    }
    RatMatrix::from_rows(dim, &diffs).rank()
}
