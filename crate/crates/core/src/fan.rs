//! Rational simplicial fans.
//!
//! A [`Fan`] is a list of primitive ray generators `a_1..a_m` in `Z^n` plus its
//! maximal cones, each given by the indices of its generators. Only simplicial
//! fans are accepted, which keeps every face-lattice question a question about
//! subsets of generators.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{
    cokernel_invariants, gcd_all, nonnegative_solution, rank, smith_normal_form, solve_rational, AbelianGroup,
    IntMatrix, RatMatrix,
};
use crate::parallel;
use crate::simplicial::SimplicialComplex;
use crate::subset::{VertexSet, MAX_VERTICES};

/// Largest supported lattice rank.
pub const MAX_LATTICE_RANK: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("lattice rank {0} is outside 1..={MAX_LATTICE_RANK}")]
    BadLatticeRank(usize),
    #[error("at most {MAX_VERTICES} rays are supported, got {0}")]
    TooManyRays(usize),
    #[error("ray {ray} has {found} coordinates, expected {expected}")]
    DimensionMismatch { ray: usize, expected: usize, found: usize },
    #[error("ray {0} is zero")]
    ZeroRay(usize),
    #[error("cone refers to ray {index}, but there are only {m} rays")]
    RayIndexOutOfRange { index: usize, m: usize },
    #[error("ray {0} does not belong to any cone")]
    UnusedRay(usize),
    #[error("cone {0} contains a line")]
    ContainsLine(VertexSet),
    #[error("cone {0} is not simplicial (its generators are linearly dependent)")]
    NonSimplicialCone(VertexSet),
    #[error("cones {0} and {1} intersect outside their common face")]
    BadIntersection(VertexSet, VertexSet),
    #[error("the rays do not span the ambient space")]
    RaysDoNotSpan,
}

/// Settings for the randomized point-location cross-check in [`Fan::is_complete_with`].
#[derive(Clone, Copy, Debug)]
pub struct CompletenessCheck {
    pub samples: usize,
    pub seed: u64,
}

impl Default for CompletenessCheck {
    fn default() -> Self {
        CompletenessCheck {
            samples: 64,
            seed: 0x6b6e_7365_7400_0001,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    n: usize,
    rays: Vec<Vec<BigInt>>,
    cones: Vec<VertexSet>,
    rescaled_rays: Vec<usize>,
}

/// Validates a simplicial fan given by integer rays and maximal cones (1-based indices).
pub fn validate_fan(n: usize, rays: &[Vec<i64>], maximal_cones: &[Vec<usize>]) -> Result<Fan, FanError> {
    let rays: Vec<Vec<BigInt>> = rays
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    Fan::new(n, rays, maximal_cones)
}

impl Fan {
    pub fn new(n: usize, rays: Vec<Vec<BigInt>>, maximal_cones: &[Vec<usize>]) -> Result<Fan, FanError> {
        if n == 0 || n > MAX_LATTICE_RANK {
            return Err(FanError::BadLatticeRank(n));
        }
        let m = rays.len();
        if m > MAX_VERTICES {
            return Err(FanError::TooManyRays(m));
        }
        let mut primitive = Vec::with_capacity(m);
        let mut rescaled_rays = Vec::new();
        for (i, ray) in rays.into_iter().enumerate() {
            if ray.len() != n {
                return Err(FanError::DimensionMismatch {
                    ray: i + 1,
                    expected: n,
                    found: ray.len(),
                });
            }
            let g = gcd_all(&ray);
            if g.is_zero() {
                return Err(FanError::ZeroRay(i + 1));
            }
            if g.is_one() {
                primitive.push(ray);
            } else {
                rescaled_rays.push(i + 1);
                primitive.push(ray.into_iter().map(|x| x / &g).collect());
            }
        }

        let mut cones = Vec::new();
        for cone in maximal_cones {
            if let Some(&index) = cone.iter().find(|&&i| i == 0 || i > m) {
                return Err(FanError::RayIndexOutOfRange { index, m });
            }
            cones.push(VertexSet::from_labels(cone));
        }
        // Listed faces of other cones are absorbed.
        let mut maximal: Vec<VertexSet> = Vec::new();
        let mut sorted = cones;
        sorted.sort_by_key(|c| std::cmp::Reverse(c.len()));
        for c in sorted {
            if !c.is_empty() && !maximal.iter().any(|k| c.is_subset(*k)) {
                maximal.push(c);
            }
        }
        maximal.sort_by_cached_key(|c| c.graded_key());

        let used = maximal.iter().fold(VertexSet::EMPTY, |acc, c| acc.union(*c));
        if let Some(unused) = VertexSet::full(m).difference(used).iter().next() {
            return Err(FanError::UnusedRay(unused));
        }

        let fan = Fan {
            n,
            rays: primitive,
            cones: maximal,
            rescaled_rays,
        };
        for &cone in &fan.cones {
            if fan.cone_contains_line(cone) {
                return Err(FanError::ContainsLine(cone));
            }
            if rank(&fan.generator_matrix(cone)) < cone.len() {
                return Err(FanError::NonSimplicialCone(cone));
            }
        }
        let pairs: Vec<(usize, usize)> = (0..fan.cones.len())
            .flat_map(|i| (i + 1..fan.cones.len()).map(move |j| (i, j)))
            .collect();
        let bad = parallel::map(&pairs, |&(i, j)| !fan.meet_in_common_face(fan.cones[i], fan.cones[j]));
        if let Some(k) = bad.iter().position(|&b| b) {
            let (i, j) = pairs[k];
            return Err(FanError::BadIntersection(fan.cones[i], fan.cones[j]));
        }
        Ok(fan)
    }

    /// Lattice rank `n`.
    pub fn dimension(&self) -> usize {
        self.n
    }

    /// Number of rays `m`.
    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    /// Primitive ray generators.
    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    /// Maximal cones as sets of ray indices.
    pub fn maximal_cones(&self) -> &[VertexSet] {
        &self.cones
    }

    /// 1-based indices of input rays that were divided by their gcd.
    pub fn rescaled_rays(&self) -> &[usize] {
        &self.rescaled_rays
    }

    /// `m x n` matrix whose rows are the rays.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.n, &self.rays)
    }

    /// `|cone| x n` matrix whose rows are the cone's generators.
    pub fn generator_matrix(&self, cone: VertexSet) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = cone.iter().map(|i| self.rays[i - 1].clone()).collect();
        IntMatrix::from_rows(self.n, &rows)
    }

    fn cone_contains_line(&self, cone: VertexSet) -> bool {
        // A nonzero nonnegative combination of the generators summing to 0.
        let k = cone.len();
        let mut rows = self.generator_matrix(cone).transpose().to_rational();
        let mut data: Vec<Vec<BigRational>> = (0..rows.rows()).map(|i| rows.row(i).to_vec()).collect();
        data.push(vec![BigRational::one(); k]);
        rows = RatMatrix::from_rows(k, &data);
        let mut rhs = vec![BigRational::zero(); self.n];
        rhs.push(BigRational::one());
        nonnegative_solution(&rows, &rhs).is_some()
    }

    /// For simplicial cones `s` and `t`, checks that `s ∩ t` is the cone on
    /// their common generators: no point of the intersection may use a
    /// generator of `s` outside `t` with positive weight.
    fn meet_in_common_face(&self, s: VertexSet, t: VertexSet) -> bool {
        let only_s = s.difference(t);
        if only_s.is_empty() || t.difference(s).is_empty() {
            return true;
        }
        let cols = s.len() + t.len();
        let mut data = vec![vec![BigRational::zero(); cols]; self.n + 1];
        for (c, i) in s.iter().enumerate() {
            for (r, x) in self.rays[i - 1].iter().enumerate() {
                data[r][c] = BigRational::from_integer(x.clone());
            }
            if only_s.contains(i) {
                data[self.n][c] = BigRational::one();
            }
        }
        for (c, j) in t.iter().enumerate() {
            for (r, x) in self.rays[j - 1].iter().enumerate() {
                data[r][s.len() + c] = BigRational::from_integer(-x.clone());
            }
        }
        let mut rhs = vec![BigRational::zero(); self.n];
        rhs.push(BigRational::one());
        nonnegative_solution(&RatMatrix::from_rows(cols, &data), &rhs).is_none()
    }

    /// The complex `K_Σ` on `[m]` whose faces are the g-subsets.
    pub fn underlying_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_sets(self.ray_count(), self.cones.iter().copied()).expect("cone indices validated")
    }

    /// Every maximal cone is generated by part of a Z-basis of the lattice.
    pub fn is_regular(&self) -> bool {
        self.cones.iter().all(|&c| {
            let snf = smith_normal_form(&self.generator_matrix(c));
            snf.rank() == c.len() && snf.nonzero_factors().iter().all(One::is_one)
        })
    }

    /// Determinants of the full-dimensional maximal cones.
    pub fn cone_determinants(&self) -> Vec<BigInt> {
        self.cones
            .iter()
            .filter(|c| c.len() == self.n)
            .map(|&c| determinant(&self.generator_matrix(c)))
            .collect()
    }

    /// Whether `v` is a nonnegative combination of the generators of `cone`.
    pub fn contains_point(&self, cone: VertexSet, v: &[BigRational]) -> bool {
        assert_eq!(v.len(), self.n, "point has wrong dimension");
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let g = self.generator_matrix(cone).transpose().to_rational();
        match solve_rational(&g, v) {
            Some(coeffs) => coeffs.iter().all(|c| !c.is_negative()),
            None => false,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.is_complete_with(CompletenessCheck::default())
    }

    /// Completeness via the wall condition: all maximal cones are
    /// full-dimensional, each codimension-one face lies in exactly two of
    /// them, and the cones are connected through shared walls. Pseudo-random
    /// rational points must additionally each land in some cone.
    pub fn is_complete_with(&self, check: CompletenessCheck) -> bool {
        self.walls_close_up() && self.random_points_covered(check)
    }

    fn walls_close_up(&self) -> bool {
        let n = self.n;
        if self.cones.is_empty() || self.cones.iter().any(|c| c.len() != n) {
            return false;
        }
        for &c in &self.cones {
            for v in c.iter() {
                let wall = c.without(v);
                let count = self.cones.iter().filter(|d| wall.is_subset(**d)).count();
                if count != 2 {
                    return false;
                }
            }
        }
        // Connectivity through shared walls.
        let s = self.cones.len();
        let mut seen = vec![false; s];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for (j, cone) in self.cones.iter().enumerate() {
                if !seen[j] && self.cones[i].intersection(*cone).len() + 1 == n {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    fn random_points_covered(&self, check: CompletenessCheck) -> bool {
        let points: Vec<Vec<BigRational>> = {
            let mut rng = ChaCha8Rng::seed_from_u64(check.seed);
            (0..check.samples)
                .map(|_| {
                    (0..self.n)
                        .map(|_| {
                            let num: i64 = rng.random_range(-1000..=1000);
                            let den: i64 = rng.random_range(1..=97);
                            BigRational::new(num.into(), den.into())
                        })
                        .collect()
                })
                .collect()
        };
        parallel::map(&points, |p| self.cones.iter().any(|&c| self.contains_point(c, p)))
            .into_iter()
            .all(|x| x)
    }

    /// Structure of the kernel `G` of `(C*)^m -> (C*)^n`: the free rank of the
    /// result is the dimension of its torus part, the torsion its finite part.
    pub fn group_structure(&self) -> Result<AbelianGroup, FanError> {
        let a = self.ray_matrix();
        if rank(&a) < self.n {
            return Err(FanError::RaysDoNotSpan);
        }
        // Characters of G are the cokernel of the dual map Z^n -> Z^m, whose matrix has the rays as rows.
        Ok(cokernel_invariants(&a))
    }
}

/// Determinant of a square integer matrix by exact elimination over Q.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.to_rational();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            det = -det;
            for j in 0..n {
                let x = a.get(p, j).clone();
                let y = a.get(c, j).clone();
                a.set(p, j, y);
                a.set(c, j, x);
            }
        }
        let pivot = a.get(c, c).clone();
        det *= &pivot;
        for i in c + 1..n {
            let f = a.get(i, c) / &pivot;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = a.get(i, j) - &f * a.get(c, j);
                a.set(i, j, v);
            }
        }
    }
    det.to_integer()
}
