use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{HPolytope, PolytopeError, QuadricSystem};
use crate::parallel;

/// Floating-point cutoffs for the numeric membership checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Largest accepted absolute quadric residual.
    pub residual: f64,
    /// Singular values at most `singular_value * sigma_max` count as zero.
    pub singular_value: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual: 1e-9,
            singular_value: 1e-7,
        }
    }
}

/// A point of the moment-angle manifold lifted from a rational point of `P`.
#[derive(Clone, Debug)]
pub struct SampledPoint {
    pub z: Vec<Complex<f64>>,
    pub source_x: Vec<BigRational>,
    pub residuals: Vec<f64>,
}

impl SampledPoint {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |acc, r| acc.max(r.abs()))
    }

    pub fn squared_moduli(&self) -> Vec<f64> {
        self.z.iter().map(|z| z.norm_sqr()).collect()
    }
}

/// Lifts `x` in `P` to `z_k = sqrt(y_k) e^{i theta_k}` with `y = A x + b`.
pub fn lift_point(p: &HPolytope, q: &QuadricSystem, x: &[BigRational], phases: &[f64]) -> SampledPoint {
    assert_eq!(phases.len(), p.facet_count());
    let y = p.embed(x);
    let z: Vec<Complex<f64>> = y
        .iter()
        .zip(phases)
        .map(|(yk, &theta)| {
            let r = yk.to_f64().unwrap_or(f64::NAN).max(0.0).sqrt();
            Complex::from_polar(r, theta)
        })
        .collect();
    let moduli: Vec<f64> = z.iter().map(|w| w.norm_sqr()).collect();
    SampledPoint {
        residuals: q.residuals(&moduli),
        z,
        source_x: x.to_vec(),
    }
}

/// `count` reproducible samples. Point `i` uses its own stream of a ChaCha8
/// generator seeded with `seed`: integer weights in `1..=1000` on the vertices
/// give a rational point of `P`, then each coordinate gets a uniform phase.
pub fn sample_on_z(
    p: &HPolytope,
    q: &QuadricSystem,
    count: usize,
    seed: u64,
) -> Result<Vec<SampledPoint>, PolytopeError> {
    p.require_simple()?;
    let m = p.facet_count();
    let n = p.dimension();
    Ok(parallel::map_range(count, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let weights: Vec<BigInt> = p
            .vertices()
            .iter()
            .map(|_| BigInt::from(rng.random_range(1..=1000u32)))
            .collect();
        let total: BigInt = weights.iter().sum();
        let mut x = vec![BigRational::zero(); n];
        for (w, v) in weights.iter().zip(p.vertices()) {
            for (xi, vi) in x.iter_mut().zip(&v.point) {
                *xi += vi * w;
            }
        }
        let x: Vec<BigRational> = x.into_iter().map(|xi| xi / &total).collect();
        let phases: Vec<f64> = (0..m).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect();
        lift_point(p, q, &x, &phases)
    }))
}

/// True iff the real `(m-n) x 2m` Jacobian of the quadric system at `pt` has
/// full row rank. Residuals are recomputed from `pt.z`; a point off the
/// system is a precondition violation.
pub fn jacobian_rank_check(pt: &SampledPoint, q: &QuadricSystem, tol: Tolerances) -> Result<bool, PolytopeError> {
    let residual = q
        .residuals(&pt.squared_moduli())
        .iter()
        .fold(0.0f64, |acc, r| acc.max(r.abs()));
    if residual.is_nan() || residual > tol.residual {
        return Err(PolytopeError::PreconditionViolated(residual));
    }
    let rows = q.equation_count();
    let m = q.variable_count();
    if rows == 0 {
        return Ok(true);
    }
    let jac = DMatrix::from_fn(rows, 2 * m, |j, col| {
        let k = col / 2;
        let c = q.c[j][k].to_f64().unwrap_or(f64::NAN);
        let part = if col % 2 == 0 { pt.z[k].re } else { pt.z[k].im };
        2.0 * c * part
    });
    let sv = jac.singular_values();
    let max = sv.max();
    if max <= 0.0 {
        return Ok(false);
    }
    let rank = sv.iter().filter(|&&s| s > tol.singular_value * max).count();
    Ok(rank == rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::cokernel_matrix;

    fn interval() -> HPolytope {
        HPolytope::from_inequalities(1, &[vec![1], vec![-1]], &[0, 1]).unwrap()
    }

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn barycenter_of_interval() {
        let p = interval();
        let q = cokernel_matrix(&p, None).unwrap();
        let pt = lift_point(&p, &q, &[half()], &[0.3, 2.0]);
        for w in pt.squared_moduli() {
            assert!((w - 0.5).abs() < 1e-12);
        }
        assert!(pt.max_residual() < 1e-12);
        assert!(jacobian_rank_check(&pt, &q, Tolerances::default()).unwrap());
    }

    #[test]
    fn vertex_lift_has_zero_coordinates() {
        let p = HPolytope::from_inequalities(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]], &[0, 0, 1]).unwrap();
        let q = cokernel_matrix(&p, None).unwrap();
        for v in p.vertices() {
            let pt = lift_point(&p, &q, &v.point, &[1.0, 2.0, 3.0]);
            let zeros = pt.z.iter().filter(|z| z.norm() == 0.0).count();
            assert_eq!(zeros, 2);
            assert!(jacobian_rank_check(&pt, &q, Tolerances::default()).unwrap());
        }
    }

    #[test]
    fn origin_is_not_on_the_sphere() {
        let p = interval();
        let q = cokernel_matrix(&p, None).unwrap();
        let pt = SampledPoint {
            z: vec![Complex::new(0.0, 0.0); 2],
            source_x: vec![BigRational::zero()],
            residuals: vec![],
        };
        assert!(matches!(
            jacobian_rank_check(&pt, &q, Tolerances::default()),
            Err(PolytopeError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn sampling_is_reproducible() {
        let p = interval();
        let q = cokernel_matrix(&p, None).unwrap();
        let a = sample_on_z(&p, &q, 5, 7).unwrap();
        let b = sample_on_z(&p, &q, 5, 7).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.z, y.z);
            assert_eq!(x.source_x, y.source_x);
        }
        let c = sample_on_z(&p, &q, 5, 8).unwrap();
        assert_ne!(a[0].z, c[0].z);
    }
}
